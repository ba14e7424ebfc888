from __future__ import annotations

import random

import pytest

from toricfano.classify import run_classification
from toricfano.enumeration import fano_oracle, reflexive_classes
from toricfano.intlin import UnimodularMap, identity

HEXAGON = ((-1, -1), (-1, 0), (0, -1), (0, 1), (1, 0), (1, 1))

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)


def random_unimodular(rng: random.Random, d: int, steps: int = 12, bound: int = 2) -> UnimodularMap:
    """Random product of elementary integer row operations."""
    m = [list(r) for r in identity(d)]
    for _ in range(steps):
        op = rng.randrange(3)
        i = rng.randrange(d)
        if op == 0 and d > 1:
            j = rng.choice([k for k in range(d) if k != i])
            c = rng.choice([x for x in range(-bound, bound + 1) if x])
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        elif op == 1 and d > 1:
            j = rng.randrange(d)
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-a for a in m[i]]
    return UnimodularMap(tuple(tuple(r) for r in m))


@pytest.fixture(scope="session")
def reflexive2():
    return reflexive_classes(2)


@pytest.fixture(scope="session")
def classified(reflexive2):
    """Classification results and counters for d = 1, 2, 3."""
    out = {1: run_classification(1, None)}
    out[2] = run_classification(2, list(reflexive_classes(1)))
    out[3] = run_classification(3, list(reflexive2))
    return out


@pytest.fixture(scope="session")
def fano_lists(classified):
    return {d: classified[d][0] for d in classified}


@pytest.fixture(scope="session")
def oracle_lists():
    return {d: fano_oracle(d) for d in (1, 2, 3)}
