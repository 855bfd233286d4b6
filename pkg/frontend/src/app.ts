/**
 * Workbench shell: canvas + inspector on the left, event launcher, trace
 * tree, lineage and rule editor on the right.  All state derives from
 * service responses; previews (dry runs) render into their own pane and
 * never touch the committed canvas.
 */

import { ApiClient, ApiError, type EventRequest } from "./api.js";
import { renderGraph } from "./graphView.js";
import { renderLineage } from "./lineageView.js";
import { mountRuleEditor, type RuleEditorHandle } from "./ruleEditor.js";
import { renderTrace } from "./traceView.js";
import {
  eventsForKind,
  type ClassKind,
  type EventSigDoc,
  type GraphDoc,
  type TraceEntryDoc,
} from "./model.js";

interface Selection {
  id: string;
  kind: ClassKind;
}

function section(title: string, className: string): HTMLElement {
  const wrap = document.createElement("section");
  wrap.className = className;
  const heading = document.createElement("h2");
  heading.textContent = title;
  wrap.appendChild(heading);
  return wrap;
}

export class Workbench {
  readonly root: HTMLElement;
  readonly canvasPane: HTMLElement;
  readonly previewPane: HTMLElement;
  readonly inspectorPane: HTMLElement;
  readonly tracePane: HTMLElement;
  readonly lineagePane: HTMLElement;
  readonly rulePane: HTMLElement;
  readonly banner: HTMLElement;
  readonly eventSelect: HTMLSelectElement;
  readonly dryRunToggle: HTMLInputElement;
  readonly launchButton: HTMLButtonElement;
  readonly undoButton: HTMLButtonElement;

  selection: Selection | null = null;
  graphs: GraphDoc[] = [];
  events: EventSigDoc[] = [];
  lastTrace: TraceEntryDoc[] = [];
  ruleEditor: RuleEditorHandle | null = null;
  private pending = false;

  constructor(
    readonly api: ApiClient,
    readonly sessionId: string,
    mount: HTMLElement,
  ) {
    this.root = document.createElement("div");
    this.root.className = "workbench";
    mount.appendChild(this.root);

    this.banner = document.createElement("div");
    this.banner.className = "banner hidden";
    this.root.appendChild(this.banner);

    const left = document.createElement("div");
    left.className = "left-column";
    const right = document.createElement("div");
    right.className = "right-column";
    this.root.append(left, right);

    const canvasSection = section("Graph class", "canvas-section");
    this.canvasPane = document.createElement("div");
    this.canvasPane.className = "canvas-pane";
    canvasSection.appendChild(this.canvasPane);
    left.appendChild(canvasSection);

    const previewSection = section("Preview (not committed)", "preview-section");
    this.previewPane = document.createElement("div");
    this.previewPane.className = "preview-pane";
    previewSection.appendChild(this.previewPane);
    left.appendChild(previewSection);

    const inspectorSection = section("Inspector", "inspector-section");
    this.inspectorPane = document.createElement("div");
    this.inspectorPane.className = "inspector-pane";
    inspectorSection.appendChild(this.inspectorPane);
    left.appendChild(inspectorSection);

    const launcher = section("Launch evolution", "launcher-section");
    this.eventSelect = document.createElement("select");
    this.eventSelect.className = "event-select";
    this.dryRunToggle = document.createElement("input");
    this.dryRunToggle.type = "checkbox";
    this.dryRunToggle.checked = true;
    const toggleLabel = document.createElement("label");
    toggleLabel.append(this.dryRunToggle, document.createTextNode(" preview only"));
    this.launchButton = document.createElement("button");
    this.launchButton.className = "launch";
    this.launchButton.textContent = "Launch";
    this.undoButton = document.createElement("button");
    this.undoButton.className = "undo";
    this.undoButton.textContent = "Undo";
    launcher.append(this.eventSelect, toggleLabel, this.launchButton, this.undoButton);
    right.appendChild(launcher);

    const traceSection = section("Propagation trace", "trace-section");
    this.tracePane = document.createElement("div");
    this.tracePane.className = "trace-pane";
    traceSection.appendChild(this.tracePane);
    right.appendChild(traceSection);

    const lineageSection = section("Version lineage", "lineage-section");
    this.lineagePane = document.createElement("div");
    this.lineagePane.className = "lineage-pane";
    lineageSection.appendChild(this.lineagePane);
    right.appendChild(lineageSection);

    const ruleSection = section("Evolution rules", "rules-section");
    this.rulePane = document.createElement("div");
    this.rulePane.className = "rule-pane";
    ruleSection.appendChild(this.rulePane);
    right.appendChild(ruleSection);

    this.launchButton.addEventListener("click", () => void this.launchSelected());
    this.undoButton.addEventListener("click", () => void this.undo());
  }

  static async start(api: ApiClient, mount: HTMLElement): Promise<Workbench> {
    const sessions = await api.listSessions();
    if (sessions.length === 0) {
      throw new Error("no session on the service; start it with a document");
    }
    const workbench = new Workbench(api, sessions[0], mount);
    await workbench.refresh();
    workbench.ruleEditor = mountRuleEditor(
      workbench.rulePane, api, workbench.sessionId,
      () => workbench.refresh(),
    );
    await workbench.ruleEditor.load();
    return workbench;
  }

  async refresh(): Promise<void> {
    this.graphs = await this.api.graphs(this.sessionId);
    this.events = await this.api.events(this.sessionId);
    this.renderCanvas();
    this.renderLauncher();
    renderLineage(this.lineagePane, await this.api.lineage(this.sessionId));
  }

  /** Committed graphs only; previews render elsewhere. */
  renderCanvas(): void {
    this.canvasPane.textContent = "";
    const originals = this.graphs.filter((g) => !g.id.includes("@v"));
    for (const graph of originals.length > 0 ? originals : this.graphs) {
      const holder = document.createElement("div");
      holder.className = "graph-holder";
      this.canvasPane.appendChild(holder);
      renderGraph(holder, graph, {
        selected: this.selection?.id ?? null,
        onSelect: (id, kind) => this.select(id, kind),
      });
    }
    if (this.graphs.length === 0) {
      this.canvasPane.textContent = "no graphs in this workspace";
    }
  }

  select(id: string, kind: ClassKind): void {
    this.selection = { id, kind };
    this.renderCanvas();
    this.renderLauncher();
    this.renderInspector();
  }

  highlight(classId: string): void {
    for (const el of this.canvasPane.querySelectorAll<SVGGElement>("g[data-id]")) {
      el.classList.toggle("highlighted", el.dataset.id === classId);
    }
  }

  renderLauncher(): void {
    const previous = this.eventSelect.value;
    this.eventSelect.textContent = "";
    const kind = this.selection?.kind;
    const list = kind ? eventsForKind(this.events, kind) : [];
    for (const sig of list) {
      const option = document.createElement("option");
      option.value = sig.name;
      option.textContent = `${sig.name}(${sig.params.join(", ")})`;
      this.eventSelect.appendChild(option);
    }
    if (list.some((sig) => sig.name === previous)) {
      this.eventSelect.value = previous;
    }
    this.launchButton.disabled = this.pending || list.length === 0;
  }

  renderInspector(): void {
    this.inspectorPane.textContent = "";
    if (!this.selection) return;
    for (const graph of this.graphs) {
      const record =
        graph.id === this.selection.id ? graph :
        graph.nodes.find((n) => n.id === this.selection!.id) ??
        graph.relations.find((r) => r.id === this.selection!.id);
      if (!record) continue;
      const dl = document.createElement("dl");
      dl.className = "inspector-fields";
      for (const [key, value] of Object.entries(record)) {
        if (key === "nodes" || key === "relations") continue;
        const dt = document.createElement("dt");
        dt.textContent = key;
        const dd = document.createElement("dd");
        dd.textContent = Array.isArray(value)
          ? value.map((v) => (typeof v === "object" ? JSON.stringify(v) : v)).join(", ")
          : String(value);
        dl.append(dt, dd);
      }
      this.inspectorPane.appendChild(dl);
      return;
    }
  }

  showBanner(text: string): void {
    this.banner.textContent = text;
    this.banner.classList.remove("hidden");
  }

  clearBanner(): void {
    this.banner.textContent = "";
    this.banner.classList.add("hidden");
  }

  async launchSelected(): Promise<void> {
    if (!this.selection) return;
    await this.launchEvent({
      name: this.eventSelect.value,
      target: this.selection.id,
      dryRun: this.dryRunToggle.checked,
    });
  }

  async launchEvent(event: EventRequest): Promise<TraceEntryDoc[]> {
    if (this.pending) return [];
    this.pending = true;
    this.launchButton.disabled = true;
    this.clearBanner();
    try {
      const response = await this.api.applyEvent(this.sessionId, event);
      this.lastTrace = response.trace;
      renderTrace(this.tracePane, response.trace, {
        onSelectTarget: (id) => this.highlight(id),
      });
      if (event.dryRun) {
        this.renderPreview(response.resultingGraphs);
      } else {
        this.previewPane.textContent = "";
        await this.refresh();
      }
      return response.trace;
    } catch (err) {
      if (err instanceof ApiError && typeof err.detail === "object" && err.detail) {
        this.lastTrace = err.detail.trace;
        renderTrace(this.tracePane, err.detail.trace, {
          onSelectTarget: (id) => this.highlight(id),
        });
        this.showBanner(`propagation aborted: ${err.detail.cause}`);
        return err.detail.trace;
      }
      this.showBanner(err instanceof Error ? err.message : String(err));
      return [];
    } finally {
      this.pending = false;
      this.renderLauncher();
    }
  }

  renderPreview(graphs: GraphDoc[]): void {
    this.previewPane.textContent = "";
    for (const graph of graphs) {
      const holder = document.createElement("div");
      holder.className = "preview-holder";
      const caption = document.createElement("div");
      caption.className = "preview-caption";
      caption.textContent = `${graph.id} (after)`;
      holder.appendChild(caption);
      this.previewPane.appendChild(holder);
      renderGraph(holder, graph, {});
    }
    if (graphs.length === 0) {
      this.previewPane.textContent = "preview: no graph changes";
    }
  }

  async undo(): Promise<void> {
    this.clearBanner();
    try {
      await this.api.undo(this.sessionId);
      await this.refresh();
    } catch (err) {
      this.showBanner(err instanceof ApiError && err.status === 409
        ? "nothing to undo"
        : String(err));
    }
  }
}

export async function main(): Promise<void> {
  const mount = document.getElementById("app");
  if (!mount) throw new Error("#app mount point missing");
  // same origin by default; ?service=http://host:port points elsewhere
  const base = new URLSearchParams(window.location.search).get("service") ?? "";
  const api = new ApiClient(base);
  await Workbench.start(api, mount);
}
