"""The shipped rule set and strategy templates.

R1..R6 implement structural change propagation (relation creation, node and
relation deletion with graph/node repair and 1-in/1-out bridging); R7..R9
implement version propagation (node version, relation derivation, graph
snapshot).  S1/S2/S3 are the per-kind strategy templates grouping them.
"""

from __future__ import annotations

from .engine import Engine
from .rules import PropagationStrategy
from .schema import ClassKind

BUILTIN_RULES_TEXT = """\
rule R1 : relation {
  on add-relation(R, N1, N2, G)
  when belong(N1, G)
  when belong(N2, G)
  do {
    exec instantiate-relation(R, N1, N2, G);
  }
}

rule R2 : node {
  on delete-node(N)
  when not shared(N)
  let G = graph-of(N)
  do {
    raise modify-graph(G, N);
    exec delete-node(N);
  }
}

rule R3 : graph {
  on modify-graph(G, N: node)
  when belong(N, G)
  let af = afferent(N)
  let ef = efferent(N)
  do {
    for r in af {
      raise delete-relation(r);
      raise modify-node(r.source, efferent, r);
    }
    for r in ef {
      raise delete-relation(r);
      raise modify-node(r.destination, afferent, r);
    }
    for b in bridge(af, ef) {
      raise add-relation(b, b.source, b.destination, G);
    }
  }
}

rule R4 : relation direction=forward mode=extended {
  on delete-relation(R)
  let G = graph-of(R)
  do {
    raise modify-graph(G, R);
    exec delete-relation(R);
  }
}

rule R5 : graph {
  on modify-graph(G, R: relation)
  when belong(R, G)
  let N1 = R.source
  let N2 = R.destination
  do {
    raise modify-node(N1, efferent, R);
    raise modify-node(N2, afferent, R);
  }
}

rule R6 : node {
  on modify-node(N, side, R)
  when belong(R, N.afferent) or belong(R, N.efferent)
  do {
    exec detach(N, side, R);
  }
}

rule R7 : node {
  on create-version-node(N)
  when versionable(N)
  let G = graph-of(N)
  do {
    exec create-version-node(N);
    raise create-version-graph(G, N);
  }
}

rule R8 : relation direction=forward mode=extended {
  on create-version-relation(r, N, N1)
  when version-exists(N)
  do {
    exec derive-relation(r);
    raise create-version-node(N1);
    exec assign-version-endpoints(version-of(r), version-of(N), version-of(N1));
  }
}

rule R9 : graph {
  on create-version-graph(G, N)
  when belong(N, G)
  let rs = propagable-relations(N)
  do {
    for r in rs {
      raise create-version-relation(r, N, far(r, N));
    }
    exec create-version-graph(G);
  }
}
"""

BUILTIN_STRATEGIES_TEXT = """\
strategy S1 : graph {
  creation rules = [R9];
  destruction rules = [];
  modification rules = [R3, R5];
}

strategy S2 : node {
  creation rules = [R7];
  destruction rules = [R2];
  modification rules = [R6];
}

strategy S3 : relation {
  creation rules = [R1, R8];
  destruction rules = [R4];
  modification rules = [];
}

bind S1 to kind graph;

bind S2 to kind node;

bind S3 to kind relation;
"""

BUILTIN_TEXT = BUILTIN_RULES_TEXT + "\n" + BUILTIN_STRATEGIES_TEXT


def builtin_document():
    """The shipped transcription of R1..R9 plus the per-kind strategies."""
    from .dsl import parse_document

    return parse_document(BUILTIN_TEXT)


def install_builtins(engine: Engine) -> None:
    """Install all built-in rules, strategies and kind defaults."""
    from .document import apply_items

    apply_items(engine, builtin_document().items)


_VERSION_RULES = {
    ClassKind.NODE: ("R7", "S2"),
    ClassKind.RELATION: ("R8", "S3"),
    ClassKind.GRAPH: ("R9", "S1"),
}


def install_default_version_rules(engine: Engine) -> None:
    """Install exactly the version-propagation rules R7/R8/R9, wiring each into
    the kind-default strategy's creation category (creating minimal per-kind
    strategies when the engine has none)."""
    from .document import rules_from_document
    from .dsl import parse_document

    doc = parse_document(BUILTIN_RULES_TEXT)
    by_id = {r.id: r for r in rules_from_document(doc)}
    for kind, (rule_id, default_sid) in _VERSION_RULES.items():
        engine.add_rule(by_id[rule_id])
        sid = engine.registry.per_kind.get(kind)
        if sid is None:
            sid = default_sid
            if sid not in engine.strategies:
                engine.add_strategy(PropagationStrategy(sid, kind))
            engine.registry.bind_kind(kind, engine.strategies[sid])
        strategy = engine.strategies[sid]
        if rule_id not in strategy.rule_ids():
            strategy.creation_rules.append(rule_id)
