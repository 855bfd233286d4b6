import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type {
  ApplyResponse,
  EventSigDoc,
  GraphDoc,
  LineageEdge,
} from "../src/model.js";

interface GoldenFixtures {
  graph_initial: GraphDoc;
  events: { events: EventSigDoc[] };
  apply_delete_preview: ApplyResponse;
  apply_delete_commit: ApplyResponse;
  graph_after_delete: GraphDoc;
  apply_version_commit: ApplyResponse;
  lineage_after_version: { lineage: LineageEdge[] };
  graphs_after_version: { graphs: GraphDoc[] };
  rules_text: string;
}

const here = dirname(fileURLToPath(import.meta.url));

export const golden: GoldenFixtures = JSON.parse(
  readFileSync(join(here, "fixtures", "golden.json"), "utf-8"),
);

/** Executed (rule, target) pairs of the worked deletion example. */
export const GOLDEN_DELETION_EXECUTED: Array<[string, string]> = [
  ["R2", "C2"], ["R3", "GR0"], ["R4", "RC1"], ["R5", "GR0"], ["R6", "C1"],
  ["R6", "C2"], ["R4", "h2"], ["R5", "GR0"], ["R6", "C2"], ["R6", "C3"],
  ["R1", "RC1"],
];
