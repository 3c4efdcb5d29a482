import json

import pytest

from fcw import verify


def test_report_shape():
    rep = verify.run_suite("lemma31", verify.suite_params("lemma31"), samples=20, seed=1)
    data = json.loads(rep.to_json())
    assert list(data) == ["suite", "params", "samples", "seed", "pass", "fail", "unknown",
                          "counterexamples"]
    assert data["pass"] == 20 and rep.ok
    assert "millis" in json.loads(rep.to_json(timing=True))


def test_seeds_change_samples_but_not_outcome():
    p = verify.suite_params("lemma43", r=2)
    a = verify.run_suite("lemma43", p, samples=30, seed=1)
    b = verify.run_suite("lemma43", p, samples=30, seed=2)
    assert a.passed == b.passed == 30


def test_parallel_runs_match_serial():
    p = verify.suite_params("lemma51", m=1)
    one = verify.run_suite("lemma51", p, samples=24, seed=9, jobs=1).to_json()
    three = verify.run_suite("lemma51", p, samples=24, seed=9, jobs=3).to_json()
    assert one == three


@pytest.mark.parametrize("suite,params", [
    ("lemma31", {}),
    ("lemma51", {"m": 1}),
    ("remark48", {"r": 2, "A": "b,c;b,c"}),
    ("example54", {"m": 0, "a": 0}),
])
def test_mutation_is_detected(suite, params):
    rep = verify.run_suite(suite, params, samples=60, seed=4, mutate="drop-relator")
    assert rep.failed > 0
    assert rep.counterexamples


def test_parameter_checks():
    assert verify.suite_params("remark48") == {"r": 2, "A": "b,c;b,c"}
    assert verify.suite_params("example54", m=2, a=True) == {"m": 2, "a": 1}
    with pytest.raises(verify.SuiteError):
        verify.suite_params("nope")
    with pytest.raises(verify.SuiteError):
        verify.suite_params("cor47", r=1)


def test_configurations():
    assert verify.configurations(1) == ["b", "c", "b,c^2"]
    assert len(verify.configurations(2)) == 6
    assert len(verify.configurations(3)) == 10
