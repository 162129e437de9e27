from functools import lru_cache

import pytest

from cayley_gkz.cohomology import build_ring
from cayley_gkz.frobenius import assemble_B, extract_solutions
from cayley_gkz.gkz import build_cayley_gkz
from cayley_gkz.instances import builtin_instance, instance_from_json

# small instances beyond the two built-ins; all smooth on both sides
CORPUS = {
    "p1-two-parts": {"nabla_parts": [[[1]], [[-1]]]},
    "p2": {"nabla_parts": [[[1, 0], [0, 1], [-1, -1]]]},
    "p1xp1-two-parts": {"nabla_parts": [[[1, 0], [-1, 0]], [[0, 1], [0, -1]]]},
    "surface-two-parts": {"nabla_parts": [[[-1, -1], [0, -1], [0, 1]], [[1, 0], [1, 1], [1, 2]]]},
}


@lru_cache(maxsize=None)
def instance(name):
    if name in CORPUS:
        return instance_from_json(dict(CORPUS[name], name=name))
    return builtin_instance(name)


@lru_cache(maxsize=None)
def pipeline(name, degmax):
    """(npd, g, ring, B, sols) for an instance, cached across tests."""
    npd = instance(name).npd
    g = build_cayley_gkz(npd)
    ring = build_ring(npd.fan)
    B = assemble_B(ring, npd, g, degmax)
    return npd, g, ring, B, extract_solutions(B)


@pytest.fixture(scope="session")
def p1():
    return pipeline("p1-elliptic", 4)


@pytest.fixture(scope="session")
def p3():
    return pipeline("p3-8planes", 2)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
