/**
 * Collapsible trace tree.  Entries nest by depth; each row shows the
 * strategy/rule, the event target, and a status badge.  Clicking a row
 * reports the target so the canvas can highlight it.
 */

import type { EntryStatus, TraceEntryDoc } from "./model.js";

export interface TraceNode {
  entry: TraceEntryDoc;
  children: TraceNode[];
}

export interface TraceViewOptions {
  onSelectTarget?: (classId: string) => void;
}

const BADGE_LABEL: Record<EntryStatus, string> = {
  "executed": "executed",
  "skipped-duplicate": "if-needed",
  "skipped-condition": "condition",
  "no-strategy": "no strategy",
  "no-matching-rule": "no matching rule",
  "unknown-target": "unknown target",
};

/** Rebuild the raise nesting from the flat depth-tagged entry list. */
export function buildTree(entries: TraceEntryDoc[]): TraceNode[] {
  const roots: TraceNode[] = [];
  const stack: TraceNode[] = [];
  for (const entry of entries) {
    const node: TraceNode = { entry, children: [] };
    while (stack.length > 0 && stack[stack.length - 1].entry.depth >= entry.depth) {
      stack.pop();
    }
    if (stack.length === 0) {
      roots.push(node);
    } else {
      stack[stack.length - 1].children.push(node);
    }
    stack.push(node);
  }
  return roots;
}

function renderNode(node: TraceNode, options: TraceViewOptions): HTMLLIElement {
  const li = document.createElement("li");
  li.className = `trace-entry status-${node.entry.status}`;
  li.dataset.seq = String(node.entry.seq);
  li.dataset.depth = String(node.entry.depth);

  const row = document.createElement("div");
  row.className = "trace-row";

  if (node.children.length > 0) {
    const toggle = document.createElement("button");
    toggle.className = "trace-toggle";
    toggle.textContent = "▾";
    toggle.addEventListener("click", (ev) => {
      ev.stopPropagation();
      const collapsed = li.classList.toggle("collapsed");
      toggle.textContent = collapsed ? "▸" : "▾";
    });
    row.appendChild(toggle);
  }

  const label = document.createElement("span");
  label.className = "trace-label";
  const e = node.entry;
  label.textContent = e.rule !== null
    ? `Strategy ${e.strategy}, rule ${e.rule} on ${e.event.target}`
    : `${e.event.name} on ${e.event.target}`;
  row.appendChild(label);

  const badge = document.createElement("span");
  badge.className = `badge badge-${e.status}`;
  badge.textContent = BADGE_LABEL[e.status];
  row.appendChild(badge);

  row.addEventListener("click", () => options.onSelectTarget?.(e.event.target));
  li.appendChild(row);

  if (node.children.length > 0) {
    const ul = document.createElement("ul");
    ul.className = "trace-children";
    for (const child of node.children) {
      ul.appendChild(renderNode(child, options));
    }
    li.appendChild(ul);
  }
  return li;
}

export function renderTrace(
  container: HTMLElement,
  entries: TraceEntryDoc[],
  options: TraceViewOptions = {},
): void {
  container.textContent = "";
  const tree = buildTree(entries);
  if (tree.length === 0) {
    const empty = document.createElement("p");
    empty.className = "trace-empty";
    empty.textContent = "no activations";
    container.appendChild(empty);
    return;
  }
  const ul = document.createElement("ul");
  ul.className = "trace-tree";
  for (const node of tree) {
    ul.appendChild(renderNode(node, options));
  }
  container.appendChild(ul);
}
