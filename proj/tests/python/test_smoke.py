import pytest

import finosc


def test_field_arithmetic():
    F = finosc.field(9)
    assert F.q == 9
    assert F.modulus_string() == "x^2 + 1"
    assert F.mul(F.generator(), F.inv(F.generator())) == 1
    assert F.quad_char(F.generator()) == -1
    F3 = finosc.Field.make(3, 1)
    assert F3.half(1) == 2
    with pytest.raises(ValueError):
        finosc.Field.make(4, 1)


def test_gauss_sum_and_k_constant():
    assert finosc.gauss_sum(3) == "1 + 2*z"
    K, closed, match = finosc.k_constant(3, "odd:1", 1)
    assert K == "1 + 2*z"
    assert match
    K0, _, _ = finosc.k_constant(3, "odd:3", 0)
    assert K0 == "27"


def test_form_invariants():
    inv = finosc.form_invariants(3, "minus:4")
    assert inv["witt_index"] == 1
    assert inv["aniso_dim"] == 2
    assert inv["type"] == "minus"


def test_orbit_census_three_way():
    c = finosc.orbit_census("sp", 3, 1, 1, oracle=True)
    assert c["descriptor_count"] == c["closed_form"] == c["burnside"] == 2
    c = finosc.orbit_census("o", 3, 1, 4, form="plus:4", oracle=True)
    assert c["descriptor_count"] == c["closed_form"] == c["burnside"] == 40


def test_group_orders_and_binomials():
    assert finosc.group_order("sp", 1, 3) == 24
    assert finosc.group_order("plus", 2, 3) == 1152
    assert finosc.gaussian_binomial(2, 1, 3) == 4


def test_identities():
    assert finosc.product_identity_check(5, 7, 0)
    assert finosc.tranche_identity_check(3, 3, 1, 4)
    r = finosc.end_dimension_identity("plus", 2, 0, 3)
    assert r["pass"] and r["lhs"] == 8
    r = finosc.end_dimension_identity("sp", 2, 0, 3)
    assert r["pass"] and r["lhs"] == 40


def test_appendix_identity():
    star_ok, const_ok = finosc.appendix_identity_check(3, "odd:1", 2)
    assert star_ok and const_ok


def test_act_reflection():
    # f over lambda=(1) divided by q acts as the reflection u -> -u; raw f
    # maps the basis vector 1 to q * (-1 mod 3) = 3 * basis(2)
    image = finosc.act(3, 1, "odd:1", "f:1", 1)
    assert image == [(2, "3")]
