import random

import pytest

from isolord.groups import cyclic
from isolord.suites import (
    SUITES,
    UnknownSuite,
    insert_relator,
    positive_cone_words,
    random_word,
    reduced_cone_words,
    run_suite,
)
from isolord import engine


def test_unknown_suite(K):
    with pytest.raises(UnknownSuite):
        run_suite(K, "nonsense")


def test_property_a_counts(K):
    report = run_suite(K, "propertyA", {"length": 8})
    assert report.passed
    assert report.checked == 510


def test_chain_on_centerless(H):
    report = run_suite(H, "chain")
    assert report.passed
    assert report.checked >= H.m + H.n + 1


def test_convexity(K):
    assert run_suite(K, "convexity", {"radius": 6, "k": 3}).passed


@pytest.mark.parametrize(
    "suite,params",
    [
        ("propertyC", {"radius": 3}),
        ("commute", {}),
        ("minimal", {"radius": 4}),
        ("rightinv", {"samples": 50}),
        ("welldefined", {"samples": 50}),
        ("oracle-agreement", {"radius": 5}),
        ("oracle-sign", {"samples": 50}),
        ("cross-pipeline", {"samples": 50}),
        ("nf-agreement", {"samples": 50}),
    ],
)
def test_suites_pass_on_K(K, suite, params):
    report = run_suite(K, suite, params)
    assert report.passed, report.text()


def test_tower_only_suites(T, K, H):
    assert run_suite(T, "assoc-independence", {"samples": 50}).passed
    assert run_suite(T, "permuted").passed
    # a two-leaf tower has a single association tree
    assert run_suite(K, "assoc-independence", {"samples": 20}).counts["association trees"] == 1
    with pytest.raises(ValueError):
        run_suite(H, "assoc-independence")


def test_every_suite_is_registered():
    assert len(SUITES) == 14


def test_determinism(K):
    a = run_suite(K, "cross-pipeline", {"samples": 40, "seed": 7}).machine()
    b = run_suite(K, "cross-pipeline", {"samples": 40, "seed": 7}).machine()
    a.pop("runtime"), b.pop("runtime")
    assert a == b


def test_machine_output(K):
    report = run_suite(K, "propertyA", {"length": 3})
    data = report.machine()
    assert data["suite"] == "propertyA" and data["seed"] == 0 and data["status"] == "PASS"
    assert '"checked": 14' in report.json()
    assert report.text().startswith("propertyA: PASS, 14 checks")


def test_failures_are_reported(K):
    report = run_suite(K, "propertyA", {"length": 1})
    report.fail("made up", K.cone_generators[0])
    assert report.status == "FAIL"
    assert "made up [x*y^-2]" in report.text()


def test_generators():
    rng = random.Random(0)
    w = random_word(rng, ["x", "y"], 10, 5)
    assert w.length <= 10
    assert sum(1 for _ in reduced_cone_words(cyclic("t"), 3)) == 7
    from isolord.catalog import two_cyclic

    K = two_cyclic()
    assert sum(1 for _ in positive_cone_words(K, 3)) == 14
    u = insert_relator(random.Random(1), K, w)
    assert engine.equal(K, u, w)
