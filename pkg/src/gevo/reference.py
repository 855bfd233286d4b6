"""Naive reference interpreter used as an independent oracle.

Breadth-first event queue instead of depth-first re-entry, no duplicate
suppression, and a hard step cap.  Raised events are enqueued, exec actions
run immediately.  Final states are comparable with the engine's whenever this
interpreter terminates cleanly with the same executed multiset.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .engine import Engine, _Reject
from .errors import GevoError
from .events import Event
from .rules import ExecAction, ForEachAction, RaiseAction
from .schema import Workspace


@dataclass
class ReferenceOutcome:
    status: str                  # "completed" | "aborted" | "step-capped"
    executed: Counter            # multiset of (rule id, target key)
    ws: Workspace
    steps: int = 0
    # True when breadth-first ordering read a version binding before the
    # enqueued versioning ran; such runs are order-sensitive and not a
    # meaningful comparison target
    order_sensitive: bool = False


def run_reference(engine: Engine, event: Event, step_cap: int = 10_000) -> ReferenceOutcome:
    """Interpret one root event on a copy of the engine's state."""
    twin = engine.clone()
    executed: Counter = Counter()
    queue: deque[Event] = deque([event])
    steps = 0
    twin.versions.begin_propagation()

    def run_actions(actions, env):
        for action in actions:
            if isinstance(action, RaiseAction):
                sig = twin.event_sig(action.event)
                if sig is None:
                    raise GevoError(f"undeclared event {action.event!r}")
                values = [twin.eval_expr(a, env) for a in action.args]
                queue.append(twin._make_event(sig, values))
            elif isinstance(action, ExecAction):
                args = [twin.eval_expr(a, env) for a in action.args]
                twin.run_primitive(action.primitive, args)
            elif isinstance(action, ForEachAction):
                for item in twin.eval_expr(action.collection, env):
                    inner = dict(env)
                    inner[action.var] = item
                    run_actions(action.body, inner)

    twin.fallback_version_reads.clear()
    try:
        while queue:
            steps += 1
            if steps > step_cap:
                return ReferenceOutcome("step-capped", executed, twin.ws, steps)
            current = queue.popleft()
            sig = twin.event_sig(current.name)
            if current.target not in twin.ws.classes:
                if not (sig is not None and sig.fresh_target):
                    continue
            sid = twin.resolve_strategy(current.target)
            if sid is None:
                continue
            for rule in twin.select_rules(twin.strategies[sid], current):
                if not twin.check_mode_direction(rule, current):
                    continue
                outcome = twin.eval_condition(rule, current)
                if isinstance(outcome, _Reject):
                    continue
                executed[(rule.id, current.target.display())] += 1
                run_actions(rule.actions, outcome)
        stale = any(cid in twin.versions.current
                    for cid in twin.fallback_version_reads)
        twin._commit()
    except GevoError:
        return ReferenceOutcome("aborted", executed, twin.ws, steps)
    return ReferenceOutcome("completed", executed, twin.ws, steps,
                            order_sensitive=stale)
