from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import exponents, polynomials
from extremereg.errors import (
    InhomogeneousError,
    ParseError,
    PreconditionError,
    RingMismatchError,
    ZeroPolynomialError,
)
from extremereg.polyring import (
    GF,
    INHOMOGENEOUS,
    QQ,
    Cmp,
    Ideal,
    Polynomial,
    PolynomialRing,
    compare_monomials,
    format_polynomial,
    parse_polynomial,
    poly_arith,
    ring_map,
    weighted_degree,
)

RQ = PolynomialRing("x y z", QQ)
RP = PolynomialRing("x y z", GF(101))
RL = PolynomialRing("x y z", QQ, order="lex")
RW = PolynomialRing("x y z", QQ, order="weighted", weights=(3, 1, 2))
RINGS = [RQ, RP, RL, RW]


# -- naive model: dict exps -> Fraction, reduced mod p at the end ---------------


def model(f):
    return {e: c for c, e in f.terms}


def model_mul(a, b, p):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    if p is not None:
        out = {e: c % p for e, c in out.items()}
    return {e: c for e, c in out.items() if c}


# -- examples ---------------------------------------------------------------------


def test_cancellation():
    x, y = RQ("x"), RQ("y")
    assert (x + y) + (x - y) == 2 * x
    assert poly_arith(x + y, x - y, "add") == RQ("2x")


def test_identity():
    f = RQ("3x^2 y - 1/2 z^3")
    assert f * 1 == f
    assert f * RQ.one() == f


def test_difference_of_squares():
    R = PolynomialRing("a b y z", QQ)
    got = poly_arith(R("a*z + b*y"), R("a*z - b*y"), "mul")
    assert got == R("a^2 z^2 - b^2 y^2")


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        RQ("x") + RP("x")
    with pytest.raises(RingMismatchError):
        poly_arith(RQ("x"), RL("x"), "mul")


def test_grevlex_example():
    assert compare_monomials((2, 1, 1), (1, 3, 0), RQ) == Cmp.LT
    assert compare_monomials((1, 3, 0), (2, 1, 1), RQ) == Cmp.GT


def test_equal_and_lex():
    assert compare_monomials((1, 2, 0), (1, 2, 0), RQ) == Cmp.EQ
    assert compare_monomials((1, 0, 0), (0, 1, 0), RL) == Cmp.GT
    # lex ignores degree
    assert compare_monomials((1, 0, 0), (0, 5, 5), RL) == Cmp.GT


def test_compare_length_mismatch():
    with pytest.raises(PreconditionError):
        compare_monomials((1, 2), (1, 2, 3), RQ)


def test_terms_sorted_descending():
    f = RQ("z^3 + x*y*z + x^3 + y^2 z")
    keys = [RQ.codec.encode(e) for _, e in f.terms]
    assert keys == sorted(keys, reverse=True)
    assert f.leading_monomial == (3, 0, 0)


def test_ring_map_identity_and_inclusion():
    x = RQ("x")
    assert ring_map(x, RQ, RQ.gens()) == x
    S = PolynomialRing("a b", QQ)
    R = PolynomialRing("a b y z", QQ)
    f = S("a^2 + b^2")
    assert ring_map(f, R, [R("a"), R("b")]) == R("a^2 + b^2")


def test_ring_map_rees_like_substitution():
    Q = PolynomialRing(["x", "y_1", "z"], QQ, var_degrees=(1, 3, 2))
    R = PolynomialRing(["x", "y_1", "u_1", "z", "v"], QQ)
    f = Q("y_1^2 - z*x^4")
    img = ring_map(f, R, [R("x"), R("y_1*u_1^2"), R("z*v")])
    assert img == R("y_1^2 u_1^4 - z v x^4")


def test_ring_map_errors():
    with pytest.raises(PreconditionError):
        ring_map(RQ("x"), RQ, [RQ("x")])
    with pytest.raises(RingMismatchError):
        ring_map(RQ("x"), RQ, [RQ("x"), RQ("y"), RL("z")])


def test_weighted_degree_examples():
    R = PolynomialRing("a b y z", QQ)
    assert weighted_degree(R("a z + b y")) == 2
    Q = PolynomialRing(["x", "y_1", "z"], QQ, var_degrees=(1, 3, 2))
    assert weighted_degree(Q("y_1^2")) == 6
    assert weighted_degree(Q("y_1^2 - z x^4")) == 6
    assert weighted_degree(R("a^2 + b")) == INHOMOGENEOUS
    with pytest.raises(ZeroPolynomialError):
        weighted_degree(R.zero())


def test_ideal_rejects_bad_generators():
    with pytest.raises(InhomogeneousError):
        Ideal(RQ, [RQ("x^2 + y")])
    with pytest.raises(PreconditionError):
        Ideal(RQ, [RQ.zero()])


def test_ring_descriptor_invariants():
    with pytest.raises(PreconditionError):
        PolynomialRing("x x")
    with pytest.raises(PreconditionError):
        PolynomialRing("x y", var_degrees=(1, 0))
    with pytest.raises(PreconditionError):
        GF(15)
    with pytest.raises(PreconditionError):
        PolynomialRing("x 1y")


def test_prime_field_negative_printing():
    f = RP("x - 2y")
    assert format_polynomial(f) == "x - 2*y"
    assert RP("100 x") == RP("-x")


def test_parse_rational_coefficients_and_parens():
    f = RQ("(x + y)^2 - 2/3 x y")
    assert f == RQ("x^2 + 4/3*x*y + y^2")


@pytest.mark.parametrize(
    "text, col",
    [("x + + y", 5), ("x ^ y", 5), ("w", 1), ("(x + y", 7), ("3/0 x", 3), ("x $ y", 3), ("", 1)],
)
def test_parse_errors_carry_column(text, col):
    with pytest.raises(ParseError) as ei:
        parse_polynomial(text, RQ, line=7)
    assert ei.value.line == 7
    assert ei.value.col == col


def test_exponent_limit():
    with pytest.raises(ParseError):
        RQ("x^20000")


# -- properties ------------------------------------------------------------------


@settings(max_examples=1000)
@given(st.sampled_from(RINGS).flatmap(lambda R: st.tuples(*[polynomials(R)] * 3)))
def test_ring_axioms(fgh):
    f, g, h = fgh
    zero = f.ring.zero()
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f + g == g + f
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert f + (-f) == zero
    assert f - g == f + (-g)


@settings(max_examples=1000)
@given(st.sampled_from([RQ, RP]).flatmap(lambda R: st.tuples(polynomials(R), polynomials(R))))
def test_multiplication_matches_naive_model(fg):
    f, g = fg
    assert model(f * g) == model_mul(model(f), model(g), f.ring.field.p)


@settings(max_examples=1000)
@given(st.sampled_from(RINGS), exponents(3, 6), exponents(3, 6), exponents(3, 6))
def test_order_axioms(R, a, b, u):
    ab = compare_monomials(a, b, R)
    ba = compare_monomials(b, a, R)
    assert ab == -ba
    assert (ab == Cmp.EQ) == (a == b)
    au = tuple(x + y for x, y in zip(a, u))
    bu = tuple(x + y for x, y in zip(b, u))
    assert compare_monomials(au, bu, R) == ab
    assert compare_monomials(a, (0, 0, 0), R) in (Cmp.GT, Cmp.EQ)


@settings(max_examples=1000)
@given(st.sampled_from(RINGS), exponents(3, 5), exponents(3, 5), exponents(3, 5))
def test_order_transitive(R, a, b, c):
    if compare_monomials(a, b, R) == Cmp.LT and compare_monomials(b, c, R) == Cmp.LT:
        assert compare_monomials(a, c, R) == Cmp.LT


@settings(max_examples=1000)
@given(st.data())
def test_ring_map_is_homomorphism(data):
    S = PolynomialRing("a b", QQ)
    f = data.draw(polynomials(S, max_terms=3, max_exp=2))
    g = data.draw(polynomials(S, max_terms=3, max_exp=2))
    imgs = [data.draw(polynomials(RQ, max_terms=2, max_exp=2)) for _ in range(2)]
    phi = lambda p: ring_map(p, RQ, imgs)
    assert phi(f + g) == phi(f) + phi(g)
    assert phi(f * g) == phi(f) * phi(g)
    assert phi(S.one()) == RQ.one()


@settings(max_examples=1000)
@given(st.sampled_from(RINGS).flatmap(polynomials))
def test_print_parse_roundtrip_and_canonical(f):
    text = format_polynomial(f)
    g = parse_polynomial(text, f.ring)
    assert g == f
    assert format_polynomial(g) == text
    # re-normalizing changes nothing
    assert Polynomial(f.ring, f.terms) == f
    assert all(c for c, _ in f.terms)
    assert len({e for _, e in f.terms}) == len(f.terms)


@settings(max_examples=1000)
@given(st.text(alphabet="xyzw0123456789+-*/^() ", max_size=25))
def test_parser_fuzz_never_crashes(text):
    try:
        f = parse_polynomial(text, RQ)
    except ParseError as exc:
        assert exc.line == 1 and exc.col >= 1
    else:
        assert isinstance(f, Polynomial)


@settings(max_examples=300)
@given(st.sampled_from([RQ, RP]).flatmap(polynomials))
def test_homogeneity_is_decided(f):
    if f.is_zero():
        return
    degs = {sum(e) for _, e in f.terms}
    wd = f.weighted_degree()
    assert (wd == INHOMOGENEOUS) == (len(degs) > 1)
    if wd != INHOMOGENEOUS:
        assert wd == degs.pop()


def test_weighted_order_uses_weights_then_revlex():
    # weights (3,1,2): x has weight 3, so x > z > y in degree-one monomials
    assert compare_monomials((1, 0, 0), (0, 0, 1), RW) == Cmp.GT
    assert compare_monomials((0, 0, 1), (0, 1, 0), RW) == Cmp.GT
    # equal weight: y^2 z (4) vs x y (4); grevlex tiebreak puts z-heavy lower
    assert compare_monomials((0, 2, 1), (1, 1, 0), RW) == Cmp.LT


def test_coefficient_field_coercion():
    assert QQ(Fraction(1, 3)) == Fraction(1, 3)
    assert GF(7)(Fraction(1, 3)) == 5
    assert GF(7).inv(3) == 5


def test_field_change_lifts_residues_symmetrically():
    R = PolynomialRing("a b", GF())
    I = Ideal(R, [R("a^2 - 3 b^2")])
    J = I.with_field(QQ)
    assert J.gens[0] == J.ring("a^2 - 3 b^2")
    assert J.with_field(GF()) == I
