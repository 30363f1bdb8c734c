import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import F, homogeneous_polynomials, ideal
from oracles import hilbert_function
from extremereg.errors import PreconditionError
from extremereg.invariants import (
    betti_by_ranks,
    betti_table,
    dimension_and_degree,
    free_resolution,
    hilbert_series,
    monomial_numerator,
    projective_dimension,
    projective_dimension_lower_bound,
    regularity,
    regularity_lower_bound,
)
from extremereg.polyring import QQ, Ideal, PolynomialRing


def table(I, tag="quotient", **kw):
    return betti_table(free_resolution(I, tag, **kw))


def test_koszul_linear():
    bt = table(ideal("a b".split(), ["a", "b"]))
    assert bt.entries == {(0, 0): 1, (1, 1): 2, (2, 2): 1}
    assert projective_dimension(bt) == 2
    assert projective_dimension(table(ideal("a b".split(), ["a", "b"]), "ideal")) == 1
    assert regularity(table(ideal("a b".split(), ["a", "b"]), "ideal")) == 1


def test_koszul_quadrics():
    I = ideal("a b".split(), ["a^2", "b^2"])
    bt = table(I)
    assert bt.entries == {(0, 0): 1, (1, 2): 2, (2, 4): 1}
    assert regularity(bt) == 2
    assert regularity(table(I, "ideal")) == 3


def test_a2_ab():
    I = ideal("a b".split(), ["a^2", "a b"])
    bt = table(I)
    assert bt.entries == {(0, 0): 1, (1, 2): 2, (2, 3): 1}
    assert projective_dimension(bt) == 2
    hs = hilbert_series(I)
    assert hs.numerator == [1, 0, -2, 1]
    assert hs.denominator_exponent == 2
    assert dimension_and_degree(hs) == (1, 1)


def test_zero_ideal_and_unit_ideal():
    R = PolynomialRing("a b", F)
    I = Ideal(R, [])
    assert table(I).entries == {(0, 0): 1}
    hs = hilbert_series(I)
    assert hs.numerator == [1]
    assert dimension_and_degree(hs) == (2, 1)
    unit = Ideal(R, [R.one()])
    with pytest.raises(PreconditionError):
        dimension_and_degree(hilbert_series(unit))


def test_linear_quotient_series():
    hs = hilbert_series(ideal("a b".split(), ["a", "b"]))
    assert hs.numerator == [1, -2, 1]
    assert dimension_and_degree(hs) == (0, 1)


def test_amplifier_degree_via_hilbert():
    hs = hilbert_series(ideal("a b y z".split(), ["y^2", "z^2", "a z + b y"]))
    assert dimension_and_degree(hs) == (2, 2)


def test_betti_table_rejects_nonminimal():
    res = free_resolution(ideal("a b".split(), ["a", "b"]), minimize=False)
    with pytest.raises(PreconditionError):
        betti_table(res)


def test_empty_table_errors():
    R = PolynomialRing("a b", F)
    res = free_resolution(Ideal(R, []), "ideal")
    with pytest.raises(PreconditionError):
        regularity(betti_table(res))
    with pytest.raises(PreconditionError):
        projective_dimension(betti_table(res))


def test_truncated_tables_need_acknowledgement():
    I = ideal("a b y z".split(), ["y^3", "z^3", "a z^2 + b y z"])
    bt = table(I, degree_cap=4)
    assert bt.is_truncated
    with pytest.raises(PreconditionError):
        regularity(bt)
    with pytest.raises(PreconditionError):
        projective_dimension(bt)
    full = table(I)
    assert regularity_lower_bound(bt) <= regularity(full)
    assert projective_dimension_lower_bound(bt) <= projective_dimension(full)
    assert all(full[(i, j)] == b for (i, j), b in bt.entries.items() if j <= 4)


def test_printing():
    bt = table(ideal("a b".split(), ["a^2", "b^2"]))
    assert bt.format_rows().splitlines() == ["0 0 1", "1 2 2", "2 4 1"]
    grid = bt.format_grid().splitlines()
    assert grid[1].split() == ["total:", "1", "2", "1"]
    assert grid[2].split() == ["0:", "1", ".", "."]
    assert grid[3].split() == ["1:", ".", "2", "."]
    assert grid[4].split() == ["2:", ".", ".", "1"]
    hs = hilbert_series(ideal("a b".split(), ["a^2", "a b"]))
    assert hs.format() == "1 - 2*t^2 + t^3"


def test_monomial_numerator_small():
    import numpy as np

    # (x^2, y^3) in two variables: (1 - t^2)(1 - t^3)
    E = np.array([[2, 0], [0, 3]])
    assert monomial_numerator(E, (1, 1)) == [1, 0, -1, -1, 0, 1]
    # weighted grading deg y = 2
    assert monomial_numerator(E, (1, 2)) == [1, 0, -1, 0, 0, 0, -1, 0, 1]


def check_resolution(I):
    """Shared exactness and consistency checks."""
    res = free_resolution(I)
    assert res.compositions_vanish()
    assert not res.has_constant_entries()
    assert res.is_graded()
    bt = betti_table(res)
    assert projective_dimension(bt) <= I.ring.nvars
    assert bt.alternating_sum() == _trim(hilbert_series(I).numerator)
    frame = free_resolution(I, minimize=False)
    assert frame.compositions_vanish()
    assert betti_by_ranks(frame) == bt.entries
    if any(not g.is_constant() for g in I.gens):
        bi = betti_table(free_resolution(I, "ideal"))
        assert regularity(bi) == regularity(bt) + 1
        assert projective_dimension(bi) == projective_dimension(bt) - 1
    return bt


def _trim(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


@pytest.mark.parametrize(
    "vars, gens",
    [
        ("a b", ["a", "b"]),
        ("a b", ["a^2", "b^2"]),
        ("a b", ["a^2", "a*b", "b^3"]),
        ("a b c", ["a*b", "b*c", "a*c"]),
        ("a b c d", ["a*d - b*c", "a*c - b^2", "b*d - c^2"]),
        ("a b y z", ["y^2", "z^2", "a*z + b*y"]),
    ],
)
def test_resolution_consistency(vars, gens):
    check_resolution(ideal(vars.split(), gens))


def test_twisted_cubic():
    bt = check_resolution(ideal("a b c d".split(), ["a*d - b*c", "a*c - b^2", "b*d - c^2"]))
    assert bt.entries == {(0, 0): 1, (1, 2): 3, (2, 3): 2}


def test_field_agreement():
    gens = ["a*d - b*c", "a*c - b^2", "b*d - c^2"]
    assert table(ideal("a b c d".split(), gens, QQ)).entries == table(ideal("a b c d".split(), gens)).entries


def test_hilbert_weighted_grading_rejected():
    with pytest.raises(PreconditionError):
        hilbert_series(ideal("a y".split(), ["y"], var_degrees=(1, 2)))


# -- properties ------------------------------------------------------------------

R3 = PolynomialRing("x y z", F)


def small_ideals(ring, max_gens=3, max_deg=3):
    return st.lists(
        st.integers(1, max_deg).flatmap(lambda d: homogeneous_polynomials(ring, d)),
        min_size=1,
        max_size=max_gens,
    ).map(lambda gs: Ideal(ring, gs))


@settings(max_examples=150)
@given(small_ideals(R3))
def test_random_resolutions(I):
    check_resolution(I)


@settings(max_examples=150)
@given(small_ideals(R3))
def test_hilbert_series_matches_bruteforce(I):
    hs = hilbert_series(I)
    # expand numerator / (1 - t)^3 up to degree 7
    series = [0] * 8
    for k, c in enumerate(hs.numerator):
        for D in range(k, 8):
            series[D] += c * _binom(D - k + 2, 2)
    for D in range(8):
        assert series[D] == hilbert_function(I, D)


def _binom(n, k):
    from math import comb

    return comb(n, k)
