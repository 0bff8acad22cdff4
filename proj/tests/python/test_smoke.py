import math

import pytest

import taydom

FIB = {"d": 2, "constant": ["1", "1"]}


def test_generate_fibonacci():
    seq = taydom.generate('{"d": 2, "constant": ["1", "1"]}', ["0", "1"], 10)
    assert seq == ["0", "1", "1", "2", "3", "5", "8", "13", "21", "34", "55"]


def test_characteristic_roots_and_radius():
    roots, rho = taydom.characteristic_roots('{"d": 2, "constant": ["1", "1"]}')
    assert rho == pytest.approx((1 + math.sqrt(5)) / 2)
    assert len(roots) == 2

    seq = taydom.generate('{"d": 2, "constant": ["1", "1"]}', ["0", "1"], 500)
    zero, est = taydom.radius_estimate(seq, 250)
    assert not zero
    assert est == pytest.approx(rho, rel=1e-2)


def test_certify_turan_pipeline():
    rep = taydom.certify({"recurrence": FIB, "init": ["0", "1"]}, method="turan", horizon=200)
    assert rep["certificate"]["N"] == 1
    assert rep["verification"]["pass"] is True
    assert rep["verification"]["worst_ratio"] <= 1.0


def test_poincare_certificate_exact_parameters():
    doc = {
        "recurrence": {
            "d": 1,
            "constant": ["1"],
            "perturbation": [{"type": "closed", "num": ["1"], "den": ["0", "1"], "geom": "1"}],
        },
        "init": ["1"],
    }
    rep = taydom.certify(doc, method="poincare", horizon=300)
    assert rep["certificate"]["N"] == 1
    assert rep["certificate"]["R"] == {"exact": "1/16"}
    assert rep["verification"]["pass"] is True


def test_poly_roots_double_root():
    roots = taydom.poly_roots(["4", "-4", "1"])  # (x-2)^2
    assert len(roots) == 1
    (z, mult), = roots
    assert mult == 2
    assert z.real == pytest.approx(2.0)


def test_count_zeros_and_schema_error():
    count, residual, reliable = taydom.count_zeros(["1", "2"], "3/5")
    assert (count, reliable) == (1, True)
    assert residual < 0.05

    with pytest.raises(taydom.SchemaError):
        taydom.generate('{"d": 2}', ["0", "1"], 10)


def test_dfinite_master_oracle():
    doc = {
        "operator": {"n": 1, "p": [[], ["1"]]},
        "g": {"a": "0", "b": "1", "cuts": [], "pieces": [{"poly": ["1"]}]},
    }
    rep = taydom.dfinite(doc)
    assert rep["master_oracle_residual_zero"] is True
    assert rep["analysis"]["tau"] == 2
    assert rep["vanishing_bound"]["bound"] == 1
    assert rep["stieltjes"]["R_star"] == {"exact": "1"}
    assert rep["moments"]["values"][:3] == ["1", "1/2", "1/3"]


def test_abel_expansion():
    rep = taydom.abel({"p": ["1"], "q": [], "a": "0", "b": "1", "K": 8, "x_star": "1", "y": "1/10"})
    assert rep["defining_identity_ok"] is True
    # v_3 = x^2 for y' = y^2
    v3 = rep["expansion"]["v"][3]["v"]
    assert v3 == ["0", "0", "1"]
    # G_1(1/10) ~ 1/11
    num, den = rep["return_map"].split("/")
    assert int(num) / int(den) == pytest.approx(1 / 11, abs=1e-8)


def test_bautin_witness():
    doc = {
        "parametric": {
            "d": 1,
            "nparams": 1,
            "stages": [{"terms": [{"u": [1], "coeff": {"nvars": 1, "terms": [{"beta": [1], "c": "1"}]}}]}],
        },
        "init": [{"nvars": 1, "terms": [{"beta": [0], "c": "1"}]}],
        "K": 12,
    }
    rep = taydom.bautin(doc)
    assert rep["claimed_index"] == 0
    assert rep["a0_profile"]["K1"] == "1"
    assert rep["coefficient_identity_ok"] is True
