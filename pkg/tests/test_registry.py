import json

import pytest

from ellipsum import SamplingRanges, UnknownIdentity, VerificationReport, check_identity, get_identity, list_identities
from ellipsum.expansion import KarlssonMintonConfig
from ellipsum.identities.common import condition_estimate, tracked_sum
from ellipsum.identities.registry import trial_rng


def test_registry_contents():
    ids = [i.id for i in list_identities()]
    assert ids == sorted(ids)
    assert len(ids) == len(set(ids))
    for ident in list_identities():
        assert ident.kind in ("equality", "convergence")
        assert ident.anchor and ident.summary


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        get_identity("no-such-identity")


def test_trial_streams_are_independent():
    a = trial_rng(5, "x", 0).random()
    assert a == trial_rng(5, "x", 0).random()
    assert a != trial_rng(5, "x", 1).random()
    assert a != trial_rng(5, "y", 0).random()
    assert a != trial_rng(6, "x", 0).random()


def test_worker_count_does_not_change_results():
    one = check_identity("theta-structural", trials=30, seed=4).to_dict(include_time=False)
    many = check_identity("theta-structural", trials=30, seed=4, workers=4).to_dict(include_time=False)
    assert json.dumps(one, sort_keys=True) == json.dumps(many, sort_keys=True)


def test_prefix_stability():
    # trial i does not depend on how many trials run
    short = check_identity("frenkel-turaev-10v9", trials=5, seed=2)
    long = check_identity("frenkel-turaev-10v9", trials=20, seed=2)
    assert short.max_residual <= long.max_residual


def test_perturbation_fails_equality_entry():
    rep = check_identity("frenkel-turaev-10v9", trials=10, seed=1, perturb=1e-6)
    assert not rep.passed
    assert rep.failure_count == 10
    assert rep.failures[0]["params"]["n"] >= 0


def test_tolerance_override_keeps_sampling_fixed():
    base = check_identity("jackson-8phi7", trials=20, seed=3)
    tight = check_identity("jackson-8phi7", trials=20, seed=3, tolerance=1e-30)
    assert tight.max_residual == base.max_residual
    assert not tight.passed or tight.max_residual == 0


def test_report_roundtrip():
    rep = check_identity("degeneration-first", trials=3, seed=0)
    again = VerificationReport.from_dict(rep.to_dict())
    assert again == rep
    assert rep.kind == "convergence"
    assert "median_empirical_order" in rep.details


def test_ranges_roundtrip():
    r = SamplingRanges(modulus=(0.5, 1.2), n_max=4)
    assert SamplingRanges.from_dict(r.to_dict()) == r
    with pytest.raises(ValueError):
        SamplingRanges.from_dict({"bogus": 1})


def test_tracked_sum_records_cancellation():
    from ellipsum.identities.common import _CANCELLATION
    box = {}
    token = _CANCELLATION.set(box)
    try:
        assert tracked_sum([1.0, -0.999], "s") == pytest.approx(0.001)
        tracked_sum([1.0, 1.0], "t")
    finally:
        _CANCELLATION.reset(token)
    assert box["s"] == pytest.approx(1999.0)
    assert box["t"] == 1.0
    assert condition_estimate(box) == pytest.approx(1999.0)


def test_karlsson_minton_degrees():
    cfg = KarlssonMintonConfig(b=[[0.5], [0.7, 0.9]], v=[[2], [1, 1]], w={(0, 1): 1},
                               alpha={(0, 1): [0.3]}, u={(0, 1): [1]})
    assert cfg.degrees() == [2 + 1 + 2, 2 + 1 + 2]
    assert cfg.s == [1, 2]
    assert cfg.r == {(0, 1): 1}
