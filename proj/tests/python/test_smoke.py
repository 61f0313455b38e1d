import json

import pytest

import spinconn


def test_canonical_algebra_is_consistent():
    alg = spinconn.canonical_algebra()
    assert alg["metric"][0][0] == 1.0
    assert alg["metric"][1][1] == -1.0

    H = alg["chirality"]
    for i in range(4):
        for j in range(4):
            acc = sum(H[i][k] * H[k][j] for k in range(4))
            assert acc == (1.0 if i == j else 0.0)

    d_lo, d_hi = alg["d_lo"], alg["d_hi"]
    for i in range(4):
        for j in range(4):
            acc = sum(d_hi[i][k] * d_lo[k][j] for k in range(4))
            assert acc == (1.0 if i == j else 0.0)

    assert len(alg["gamma"]) == 4
    g0 = alg["gamma"][0]
    assert g0[0][2] == 1.0 and g0[2][0] == 1.0


def test_minkowski_verify_passes():
    cfg = json.dumps({"spacetime": "minkowski", "points": {"count": 3}})
    rep = json.loads(spinconn.verify_json(cfg))
    assert rep["all_pass"] is True
    names = {c["name"] for c in rep["checks"]}
    assert "curvature-relation" in names
    assert "metricity-gamma" in names


def test_schwarzschild_christoffel_value():
    cfg = json.dumps(
        {
            "spacetime": {"name": "schwarzschild", "params": {"rs": 1.0}},
            "frame": "coordinate",
        }
    )
    G = spinconn.christoffel(cfg, [0.0, 2.0, 1.5707963267948966, 0.0])
    assert G[1][0][0] == pytest.approx(0.0625, abs=1e-9)
    assert G[0][0][1] == pytest.approx(0.25, abs=1e-9)


def test_spin_connection_variants_agree():
    cfg = json.dumps(
        {
            "spacetime": {"name": "schwarzschild", "params": {"rs": 1.0}},
            "frame": "tetrad",
        }
    )
    point = [0.1, 2.2, 1.3, 0.4]
    a = spinconn.spin_connection(cfg, point, "decorated")
    b = spinconn.spin_connection(cfg, point, "compact")
    worst = max(
        abs(a[i][j][k] - b[i][j][k])
        for i in range(4)
        for j in range(4)
        for k in range(4)
    )
    assert worst < 1e-6


def test_curvature_residual_small():
    cfg = json.dumps(
        {
            "spacetime": {"name": "schwarzschild", "params": {"rs": 1.0}},
            "frame": "tetrad",
        }
    )
    assert spinconn.curvature_residual(cfg, [0.0, 2.0, 1.2, 0.3]) < 1e-5


def test_bad_config_raises():
    with pytest.raises(spinconn.ConfigError):
        spinconn.verify_json("{not json")
    with pytest.raises(spinconn.ConfigError):
        spinconn.verify_json(json.dumps({"spacetime": "minkowski", "bogus": 1}))
    with pytest.raises(spinconn.Error):
        spinconn.verify_json(json.dumps({"spacetime": "nowhere"}))


def test_inspect_json_roundtrips():
    cfg = json.dumps({"spacetime": "minkowski"})
    out = json.loads(spinconn.inspect_json(cfg, [0.0, 0.0, 0.0, 0.0], "algebra"))
    assert out["gamma_identity_residual"] < 1e-12
