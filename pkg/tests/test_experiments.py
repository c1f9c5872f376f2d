import json

import pytest

from sdpkit.errors import SdpError
from sdpkit.experiments import (assoc_experiment, hom_experiment, identities_experiment, identity_checks,
                                parse_shape, soundness_experiment, vacuous_experiment)

from conftest import broken_332


def test_shape_parsing():
    assert parse_shape("2|3,V4") == [["2", "3"], ["V4"]]
    for bad in ("", "2,,3", "Q8", "99"):
        with pytest.raises(SdpError):
            parse_shape(bad)


def test_assoc_experiment_deterministic():
    a = json.dumps(assoc_experiment(7, 30).to_dict(samples=True))
    b = json.dumps(assoc_experiment(7, 30).to_dict(samples=True))
    assert a == b


def test_assoc_experiment_both_verdicts():
    rep = assoc_experiment(0, 100)
    m = rep.matrix()
    assert rep.ok and m["both_pass"] > 0 and m["both_fail"] > 0
    assert m["elementary_only"] == m["brute_only"] == 0


def test_empty_experiment():
    rep = assoc_experiment(0, 0)
    assert rep.ok and sum(rep.matrix().values()) == 0


def test_hom_experiment():
    d = hom_experiment(1, 60).to_dict()
    assert d["ok"] and d["agreement"]["both_pass"] > 0 and d["agreement"]["both_fail"] > 0
    assert d["commutator_checked"] > 0


def test_other_experiments():
    assert vacuous_experiment(2, 10)["ok"]
    assert soundness_experiment(2, 5)["ok"]
    d = identities_experiment(2, 20)
    assert d["ok"] and d["non_associative_samples"] > 0


def test_identities_on_non_associative_system():
    assert all(r.holds for r in identity_checks(broken_332()).values())
