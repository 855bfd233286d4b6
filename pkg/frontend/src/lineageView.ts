/** Version lineage as indented chains: each root class followed by its
 * successive versions. */

import type { LineageEdge } from "./model.js";

export function renderLineage(container: HTMLElement, edges: LineageEdge[]): void {
  container.textContent = "";
  if (edges.length === 0) {
    const empty = document.createElement("p");
    empty.className = "lineage-empty";
    empty.textContent = "no versions yet";
    container.appendChild(empty);
    return;
  }
  const children = new Map(edges.map((e) => [e.parent, e.child]));
  const allChildren = new Set(edges.map((e) => e.child));
  const roots = edges.map((e) => e.parent).filter((p) => !allChildren.has(p));

  const list = document.createElement("ul");
  list.className = "lineage-tree";
  for (const root of roots) {
    const li = document.createElement("li");
    li.className = "lineage-chain";
    const chain: string[] = [root];
    let current = root;
    while (children.has(current)) {
      current = children.get(current)!;
      chain.push(current);
    }
    li.textContent = chain.join(" → ");
    li.dataset.root = root;
    list.appendChild(li);
  }
  container.appendChild(list);
}
