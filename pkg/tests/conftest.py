import json
import random

import pytest

from sdpkit.catalog import named_candidate, named_system
from sdpkit.groups import cyclic_group
from sdpkit.system import random_system, trivial_system


@pytest.fixture(scope="session")
def s3_system():
    return named_system("S3")


@pytest.fixture(scope="session")
def s4_system():
    return named_system("S4")


@pytest.fixture(scope="session")
def s3_candidate():
    return named_candidate("S3")


@pytest.fixture
def z2():
    return cyclic_group(2)


@pytest.fixture
def klein_trivial():
    return trivial_system([cyclic_group(2), cyclic_group(2)])


def small_random_system(seed, orders=(2, 3, 2), bias=0.5):
    rng = random.Random(seed)
    return random_system([cyclic_group(n) for n in orders], rng, trivial_bias=bias)


def broken_332():
    """(Z2,Z2,Z2) whose H_3-action on H_2 sends the generator to 1: violates A[3,3,2]."""
    S = trivial_system([cyclic_group(2)] * 3)
    d = S.to_dict()
    d["phi"]["3,2"] = [[0, 1], [0, 0]]
    from sdpkit.system import system_from_dict
    return system_from_dict(d)


@pytest.fixture
def write_json(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return p
    return write


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
