import gfl


def test_analyze_exact():
    rep = gfl.analyze("3:2,0")
    assert rep["mode"] == "exact"
    degrees = {d["d"]: d for d in rep["degrees"]}
    assert degrees[2]["invariant_factors"] == ["3"]
    assert degrees[2]["torsion_order"] == "3"
    assert degrees[1]["invariant_factors"] == []
    assert rep["aggregate"]["product_formula"]["holds"]
    assert rep["aggregate"]["product_formula"]["k_theory_index"] == str(3**12)
    assert rep["aggregate"]["invariant_violations"] == []


def test_analyze_formula_level():
    rep = gfl.analyze("5:8,7,4,2,1,0")
    assert rep["mode"] == "formula-level"
    assert rep["reduced"]["values"] == [8, 4, 2]
    d5 = next(d for d in rep["degrees"] if d["d"] == 5)
    assert d5["annihilator"]["exponent"] == 3


def test_reduce_and_bounds():
    red = gfl.reduce_sequence("5:8,7,4,2,1,0")
    assert red["indices"] == [0, 2, 3]
    assert red["values"] == [8, 4, 2]
    assert red["epsilons"] == [6, 3]
    assert gfl.reduce_sequence("2:2,1,0") is None
    assert gfl.lambda_bound("3:2,0", 1, 2) == 1
    assert gfl.theorem_lower_bound("3:2,0", 2) == "3"
    assert gfl.gamma_annihilator("3:4,2,0", 2)["exponent"] == 2
    assert gfl.chow_annihilator("5:6,0", 2)["exponent"] == 1


def test_arith():
    assert gfl.vp(3, "9") == 2
    assert gfl.vp(2, "0") is None
    assert gfl.binomial(9, 2) == "36"
    assert gfl.p_coeff(3, 2, 2) == "9"
    assert gfl.index_of_tensor_power("3:2,0", 5) == "9"


def test_identity_and_witness():
    assert gfl.verify_degree2_identity()
    w = gfl.torsion_witness("3:2,0", 1, 2)
    assert w["lambda"] == 1
    assert w["annihilator"] == "3"
    assert w["checks"]["annihilator_kills"] and w["checks"]["order_attained"]
    assert w["class_order"] == "3"


def test_certificates():
    cert = gfl.indecomposability_certificate(2, 3, 1)
    assert cert["verdict"] == "indecomposable"
    assert gfl.indecomposability_certificate(2, 3, 2)["verdict"] == "inconclusive"
    assert gfl.decomposable_upper_bound_exponent(2, 3, 2) == "14"
    assert gfl.euler_phi_ktheory_valuation(2, 3, 1) == "14"


def test_checked_valuations():
    ok = gfl.decomposable_chow_element_a(2, 3, 2, 1)
    assert ok["matches"] and ok["direct_valuation"] == 2
    finding = gfl.decomposable_chow_element_b(2, 3, 2, 2)
    assert not finding["matches"]
    assert finding["direct_valuation"] == 2  # direct evaluation is the oracle


def test_errors():
    import pytest

    with pytest.raises(ValueError):
        gfl.analyze("4:2,0")  # 4 is not prime
    with pytest.raises(RuntimeError):
        gfl.verify_product_formula("5:8,7,4,2,1,0")  # over the lattice cap
