import math

import numpy as np
import pytest

import opnormlab as onl


def test_version():
    assert onl.__version__ == "0.1.0"


def test_spectral_norm_diag():
    a = np.diag([3.0, 4.0]).astype(complex)
    assert onl.spectral_norm(a) == pytest.approx(4.0, abs=1e-12)
    s = onl.singular_values(a)
    assert s.tolist() == pytest.approx([4.0, 3.0], abs=1e-12)


def test_schatten_norms():
    a = np.diag([3.0, 4.0]).astype(complex)
    assert onl.schatten_norm(a, "1") == pytest.approx(7.0, abs=1e-12)
    assert onl.schatten_norm(a, "2") == pytest.approx(5.0, abs=1e-12)
    assert onl.schatten_norm(a, "inf") == pytest.approx(4.0, abs=1e-12)


def test_min_norm_single_pair():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
    b = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    v = onl.min_norm([(a, b)])
    ref = np.linalg.svd(a, compute_uv=False)[0] * np.linalg.svd(b, compute_uv=False)[0]
    assert v == pytest.approx(ref, rel=1e-10)


def test_gap_rows():
    rows = onl.gap_experiment(4, 1)
    assert [r["n"] for r in rows] == [2, 3, 4]
    for r in rows:
        assert r["h_upper"] == 1.0
        assert r["ratio"] == pytest.approx(math.sqrt(r["n"]), abs=1e-9)
        assert r["certificate"]["consistent"]


def test_opposite_changes_min_norm():
    rows = onl.gap_experiment(2, 1)
    assert rows[0]["min_flipped"] == pytest.approx(math.sqrt(2.0), abs=1e-9)


def test_diamond_transpose():
    assert onl.diamond_norm(onl.transpose_map(2)) == pytest.approx(2.0, abs=1e-4)


def test_choi_kraus_roundtrip():
    rng = np.random.default_rng(11)
    pairs = [
        (
            rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)),
            rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)),
        )
        for _ in range(2)
    ]
    j = onl.choi(pairs)
    back = onl.kraus_from_choi(j, 2, 2)
    assert np.allclose(onl.choi(back), j, atol=1e-10)


def test_interpolation_single_pair():
    a = np.array([[1.0, 2.0], [0.5, -1.0]], dtype=complex)
    b = np.array([[0.3, 1.0], [2.0, 0.1]], dtype=complex)
    rep = onl.interpolation_check([(a, b)], restarts=8, seed=3)
    assert rep["verdict"] == "holds"
    ref = onl.spectral_norm(a) * onl.spectral_norm(b)
    assert rep["s2"] == pytest.approx(ref, rel=1e-6)
    assert rep["lower1"] == pytest.approx(ref, rel=1e-6)
    assert rep["lower_inf"] == pytest.approx(ref, rel=1e-6)


def test_sdp_spectral():
    rng = np.random.default_rng(23)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    out = onl.spectral_norm_via_sdp(a)
    assert out["status"] == "optimal"
    assert out["value"] == pytest.approx(onl.spectral_norm(a), abs=1e-6)


def test_cocycle_report():
    rep = onl.cocycle_report(4, seed=5)
    assert rep["cocycle"] and rep["antisymmetric"]
    assert rep["witness_found"] and rep["witness_identity_residual"] <= 1e-10
    assert rep["polarization"]
    assert rep["span_pair_equal"] and rep["span_quartic_equal"]


def test_shape_error():
    with pytest.raises(ValueError):
        onl.min_norm([])
