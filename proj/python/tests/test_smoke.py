import numpy as np
import pytest

import agcurv


def test_zero_structure_is_einstein():
    for n in (1, 2, 3):
        report = agcurv.classify(n, agcurv.zero_structure(n))
        assert report["flags"]["einstein"]
        assert report["constants"]["lambda"] == pytest.approx(-2 * n, abs=1e-12)
        assert report["constants"]["mu"] == pytest.approx(0.0, abs=1e-12)


def test_random_admissible_validates():
    s = agcurv.random_admissible(3, 5)
    assert s["A22"].shape == (3, 3, 3, 3)
    assert s["A22"].dtype == np.complex128
    report = agcurv.validate(3, s, 1e-12)
    assert report["admissible"]
    assert report["curvature_consistent"]


def test_bundle_scalars():
    n = 2
    b = agcurv.build(n, agcurv.zero_structure(n), (1.0, 0.5, 0.1))
    assert b["s"] == pytest.approx(-2 * n * (2 * n + 1))
    assert b["G"].shape == (5, 5, 5, 5)
    ricci = b["ricci"]
    assert ricci[0, 0] == pytest.approx(-2 * n)
    np.testing.assert_allclose(b["R"], -b["R"].transpose(0, 1, 3, 2), atol=1e-12)


def test_bundle_matches_numpy_contraction():
    n = 2
    b = agcurv.build(n, agcurv.random_admissible(n, 7))
    g = np.zeros((2 * n + 1, 2 * n + 1))
    g[0, 0] = 1.0
    for a in range(1, n + 1):
        g[a, a + n] = g[a + n, a] = 1.0
    ginv = np.linalg.inv(g)
    ricci = np.einsum("ik,ijkl->jl", ginv, b["R"])
    np.testing.assert_allclose(ricci, b["ricci"], atol=1e-10)


def test_ghs_value_is_scale_invariant():
    n = 2
    b = agcurv.build(n, agcurv.random_admissible(n, 1), (1.0, 0.2, 0.0))
    rng = np.random.default_rng(0)
    half = rng.normal(size=n) + 1j * rng.normal(size=n)
    X = np.concatenate([[0.0], half, np.conj(half)])
    v = agcurv.ghs_value(b["G"], X)
    assert agcurv.ghs_value(b["G"], 3.0 * X) == pytest.approx(v)
    with pytest.raises(ValueError):
        agcurv.ghs_value(b["G"], np.ones(2 * n + 1))


def test_shape_error_names_field():
    s = agcurv.zero_structure(2)
    with pytest.raises(ValueError, match="structure.B3u"):
        agcurv.validate(3, {**agcurv.zero_structure(3), "B3u": s["B3u"]})


def test_audit_batch_is_deterministic():
    a = agcurv.audit_batch(2, 5, 3)
    b = agcurv.audit_batch(2, 5, 3)
    assert a == b
    assert a["schema"] == agcurv.SCHEMA
    assert len(a["trial_results"]) == 5


def test_audit_single_instance():
    report = agcurv.audit(2, agcurv.zero_structure(2), (1.0, 1.0, 0.0))
    for theorem in ("2.5", "2.6", "3.1"):
        assert report["audit"][theorem]["verdict"] == "pass"


def test_hypersurface_sigma():
    h = agcurv.consistent_hypersurface(3, 2)
    report = agcurv.extract_sigma(h)
    assert report["consistent"]
    h["Bna_b"] = [[[0.0, 0.0]] * 2] * 2
    assert not agcurv.extract_sigma(h)["consistent"]
