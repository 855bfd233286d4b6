/**
 * Wire formats of the evolution service, mirrored field-for-field.
 * The UI never invents state: everything shown derives from these payloads.
 */

export type ClassKind = "graph" | "node" | "relation";

export type EntryStatus =
  | "executed"
  | "skipped-duplicate"
  | "skipped-condition"
  | "no-strategy"
  | "no-matching-rule"
  | "unknown-target";

export interface MemberDoc {
  memberKind: "attribute" | "method";
  name: string;
  signature: string;
}

export interface NodeDoc {
  id: string;
  kind: "node";
  afferent: string[];
  efferent: string[];
  members: MemberDoc[];
  versionable: boolean;
  strategy: string | null;
}

export interface RelationDoc {
  id: string;
  kind: "relation";
  nature: string;
  source: string | null;
  destination: string | null;
  exclusive: boolean;
  dependent: boolean;
  predominant: boolean;
  card: number | string;
  reverseCard: number | string;
  members: MemberDoc[];
  strategy: string | null;
}

export interface GraphDoc {
  id: string;
  kind: "graph";
  members: MemberDoc[];
  strategy: string | null;
  nodes: NodeDoc[];
  relations: RelationDoc[];
}

export interface EventWire {
  name: string;
  target: string;
  args: unknown[];
}

export interface TraceEntryDoc {
  seq: number;
  depth: number;
  event: EventWire;
  strategy: string | null;
  rule: string | null;
  status: EntryStatus;
}

export interface ApplyResponse {
  trace: TraceEntryDoc[];
  changedClassIds: string[];
  resultingGraphs: GraphDoc[];
}

export interface LineageEdge {
  parent: string;
  child: string;
}

export interface StrategyDoc {
  id: string;
  appliesTo: ClassKind;
  creationRules: string[];
  destructionRules: string[];
  modificationRules: string[];
}

export interface StrategiesResponse {
  strategies: StrategyDoc[];
  bindings: {
    perClass: Record<string, string>;
    perKindDefault: Record<string, string>;
  };
}

export interface EventSigDoc {
  name: string;
  params: string[];
  targetKind: ClassKind | null;
  freshTarget: boolean;
}

export interface AbortDetail {
  cause: string;
  trace: TraceEntryDoc[];
}

/** Events the launcher offers for a selected class, filtered by kind. */
export function eventsForKind(events: EventSigDoc[], kind: ClassKind): EventSigDoc[] {
  return events.filter((e) => e.targetKind === kind || e.targetKind === null);
}
