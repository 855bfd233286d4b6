/**
 * Deterministic layered layout: relation sources push their destinations one
 * layer to the right (longest-path layering), so before/after renderings of
 * the same workspace are directly comparable.
 */

import type { GraphDoc } from "./model.js";

export interface Point {
  x: number;
  y: number;
}

export interface Layout {
  positions: Map<string, Point>;
  width: number;
  height: number;
}

export const NODE_WIDTH = 110;
export const NODE_HEIGHT = 46;
const H_GAP = 90;
const V_GAP = 36;
const MARGIN = 30;

export function layoutGraph(graph: GraphDoc): Layout {
  const ids = graph.nodes.map((n) => n.id);
  const layer = new Map<string, number>(ids.map((id) => [id, 0]));
  const edges = graph.relations
    .filter((r) => r.source !== null && r.destination !== null)
    .map((r) => ({ from: r.source as string, to: r.destination as string }));

  // longest-path layering; iteration is bounded so cycles terminate
  for (let pass = 0; pass < ids.length + 1; pass++) {
    let moved = false;
    for (const edge of edges) {
      if (edge.from === edge.to) continue;
      const want = (layer.get(edge.from) ?? 0) + 1;
      if ((layer.get(edge.to) ?? 0) < want && want <= ids.length) {
        layer.set(edge.to, want);
        moved = true;
      }
    }
    if (!moved) break;
  }

  const byLayer = new Map<number, string[]>();
  for (const id of ids) {
    const l = layer.get(id) ?? 0;
    const bucket = byLayer.get(l) ?? [];
    bucket.push(id); // document order within a layer
    byLayer.set(l, bucket);
  }

  const positions = new Map<string, Point>();
  const layers = [...byLayer.keys()].sort((a, b) => a - b);
  let maxRows = 1;
  for (const l of layers) {
    const bucket = byLayer.get(l)!;
    maxRows = Math.max(maxRows, bucket.length);
    bucket.forEach((id, row) => {
      positions.set(id, {
        x: MARGIN + layers.indexOf(l) * (NODE_WIDTH + H_GAP),
        y: MARGIN + row * (NODE_HEIGHT + V_GAP),
      });
    });
  }

  return {
    positions,
    width: MARGIN * 2 + Math.max(1, layers.length) * (NODE_WIDTH + H_GAP) - H_GAP,
    height: MARGIN * 2 + maxRows * (NODE_HEIGHT + V_GAP) - V_GAP,
  };
}
