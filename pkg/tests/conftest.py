import pytest

import gevo
from gevo.schema import ClassId, ClassKind


def nid(name, version=0):
    return ClassId(name, version, ClassKind.NODE)


def rid(name, version=0):
    return ClassId(name, version, ClassKind.RELATION)


def gid(name, version=0):
    return ClassId(name, version, ClassKind.GRAPH)


@pytest.fixture
def gr0_engine():
    """The shipped example workspace: GR0 with C1-RC1->C2-h2->C3."""
    return gevo.example_engine()


@pytest.fixture
def gr0_after_deletion(gr0_engine):
    gr0_engine.dispatch(gevo.parse_event_expr(gr0_engine, "delete-node(C2)"))
    return gr0_engine
