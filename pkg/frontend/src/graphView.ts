/**
 * SVG rendering of one graph class: nodes as boxes, relations as arrows
 * styled by nature (composition = diamond tail, inheritance = hollow
 * triangle head, association = plain arrow).  Clicking a box or an edge
 * label selects that class.
 */

import { layoutGraph, NODE_HEIGHT, NODE_WIDTH, type Point } from "./layout.js";
import type { GraphDoc, RelationDoc } from "./model.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface GraphViewOptions {
  onSelect?: (id: string, kind: "node" | "relation") => void;
  selected?: string | null;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, String(value));
  }
  return el;
}

function markerFor(nature: string): string {
  if (nature === "composition") return "url(#tail-diamond)";
  if (nature === "inheritance") return "url(#head-triangle)";
  return "url(#head-arrow)";
}

function edgeEndpoints(from: Point, to: Point): { a: Point; b: Point } {
  const cx = (p: Point) => ({ x: p.x + NODE_WIDTH / 2, y: p.y + NODE_HEIGHT / 2 });
  const a = cx(from);
  const b = cx(to);
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const len = Math.hypot(dx, dy) || 1;
  const trim = (p: Point, sign: number) => ({
    x: p.x + (sign * dx * (NODE_WIDTH / 2 + 4)) / len,
    y: p.y + (sign * dy * (NODE_HEIGHT / 2 + 4)) / len,
  });
  return { a: trim(a, 1), b: trim(b, -1) };
}

function defs(): SVGDefsElement {
  const d = svgEl("defs");
  const arrow = svgEl("marker", {
    id: "head-arrow", markerWidth: 10, markerHeight: 10, refX: 8, refY: 3,
    orient: "auto", markerUnits: "strokeWidth",
  });
  arrow.appendChild(svgEl("path", { d: "M0,0 L8,3 L0,6 Z", fill: "#444" }));
  const triangle = svgEl("marker", {
    id: "head-triangle", markerWidth: 12, markerHeight: 12, refX: 10, refY: 4,
    orient: "auto", markerUnits: "strokeWidth",
  });
  triangle.appendChild(svgEl("path", {
    d: "M0,0 L10,4 L0,8 Z", fill: "white", stroke: "#444", "stroke-width": 1,
  }));
  const diamond = svgEl("marker", {
    id: "tail-diamond", markerWidth: 14, markerHeight: 10, refX: 1, refY: 4,
    orient: "auto", markerUnits: "strokeWidth",
  });
  diamond.appendChild(svgEl("path", {
    d: "M1,4 L6,0 L11,4 L6,8 Z", fill: "#444",
  }));
  d.append(arrow, triangle, diamond);
  return d;
}

function renderEdge(
  rel: RelationDoc,
  positions: Map<string, Point>,
  options: GraphViewOptions,
): SVGGElement | null {
  if (rel.source === null || rel.destination === null) return null;
  const from = positions.get(rel.source);
  const to = positions.get(rel.destination);
  if (!from || !to) return null;
  const group = svgEl("g", { class: `edge nature-${rel.nature}` });
  group.dataset.id = rel.id;
  const { a, b } = edgeEndpoints(from, to);
  const line = svgEl("line", {
    x1: a.x, y1: a.y, x2: b.x, y2: b.y, stroke: "#444", "stroke-width": 1.5,
  });
  if (rel.nature === "composition") {
    line.setAttribute("marker-start", markerFor(rel.nature));
    line.setAttribute("marker-end", "url(#head-arrow)");
  } else {
    line.setAttribute("marker-end", markerFor(rel.nature));
  }
  if (rel.nature === "association") {
    line.setAttribute("stroke-dasharray", "none");
  }
  const label = svgEl("text", {
    x: (a.x + b.x) / 2, y: (a.y + b.y) / 2 - 6,
    "text-anchor": "middle", "font-size": 11, class: "edge-label",
  });
  label.textContent = rel.id;
  if (options.selected === rel.id) group.classList.add("selected");
  group.addEventListener("click", () => options.onSelect?.(rel.id, "relation"));
  group.append(line, label);
  return group;
}

export function renderGraph(
  container: HTMLElement,
  graph: GraphDoc,
  options: GraphViewOptions = {},
): SVGSVGElement {
  container.textContent = "";
  const { positions, width, height } = layoutGraph(graph);
  const svg = svgEl("svg", {
    width, height, viewBox: `0 0 ${width} ${height}`, class: "graph-canvas",
  });
  svg.dataset.graphId = graph.id;
  svg.appendChild(defs());

  for (const rel of graph.relations) {
    const edge = renderEdge(rel, positions, options);
    if (edge) svg.appendChild(edge);
  }

  for (const node of graph.nodes) {
    const p = positions.get(node.id);
    if (!p) continue;
    const group = svgEl("g", { class: "node" });
    group.dataset.id = node.id;
    const rect = svgEl("rect", {
      x: p.x, y: p.y, width: NODE_WIDTH, height: NODE_HEIGHT, rx: 6,
      fill: options.selected === node.id ? "#cfe3ff" : "#f3f4f6",
      stroke: "#333", "stroke-width": 1.2,
    });
    const text = svgEl("text", {
      x: p.x + NODE_WIDTH / 2, y: p.y + NODE_HEIGHT / 2 + 4,
      "text-anchor": "middle", "font-size": 13,
    });
    text.textContent = node.id;
    if (options.selected === node.id) group.classList.add("selected");
    group.addEventListener("click", () => options.onSelect?.(node.id, "node"));
    group.append(rect, text);
    svg.appendChild(group);
  }

  if (graph.nodes.length === 0) {
    const hint = svgEl("text", {
      x: width / 2, y: height / 2, "text-anchor": "middle",
      "font-size": 13, fill: "#888", class: "empty-hint",
    });
    hint.textContent = "empty graph — add nodes via the rule engine";
    svg.appendChild(hint);
  }

  container.appendChild(svg);
  return svg;
}
