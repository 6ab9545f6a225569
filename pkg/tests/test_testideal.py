"""Mixed test ideals, Skoda peeling, F-thresholds and jumping data."""

import random
from fractions import Fraction

import pytest

from pfractal import (
    FThresholdResult,
    IdealFamily,
    IdealGens,
    NotStabilizedError,
    PAdicRational,
    Polynomial,
    Ring,
    TauConfig,
    UnboundedError,
    ZeroRegionError,
    bracket_power,
    f_threshold,
    FrobLevel,
    ideal_contains,
    ideal_equal,
    ideal_key,
    ideal_power,
    ideal_product,
    jumping_scan,
    p_adic_level,
    parse_polynomial,
    reduce_to_single,
    skoda_reduce,
    tau_mixed,
    tau_principal,
    v_number,
)


def _ideal(ring, *texts):
    return IdealGens(ring, [parse_polynomial(t, ring) for t in texts])


def _tau_key(fam, c):
    from pfractal import buchberger
    return ideal_key(buchberger(tau_mixed(fam, c)))


# ------------------------------------------------------------- p-adic plumbing

def test_p_adic_rational():
    r = PAdicRational.from_fraction(3, Fraction(5, 27))
    assert (r.num, r.e) == (5, 3)
    assert r.value == Fraction(5, 27)
    norm = PAdicRational(3, 9, 2)
    assert (norm.num, norm.e) == (1, 0)
    assert PAdicRational.from_fraction(3, 2).e == 0
    with pytest.raises(ValueError):
        PAdicRational.from_fraction(3, Fraction(1, 2))
    with pytest.raises(ValueError):
        PAdicRational(3, -1, 0)


def test_p_adic_level():
    assert p_adic_level((Fraction(1, 3), Fraction(5, 9)), 3) == 2
    assert p_adic_level((Fraction(2), Fraction(0)), 3) == 0
    assert p_adic_level((Fraction(1, 3), Fraction(1, 2)), 3) is None


def test_family_validation(F3xy):
    with pytest.raises(ValueError):
        IdealFamily(F3xy, [])
    with pytest.raises(ValueError):
        IdealFamily(F3xy, [IdealGens.zero(F3xy)])
    fam = IdealFamily(F3xy, [_ideal(F3xy, "x+y"), _ideal(F3xy, "x", "y")])
    assert fam.gen_counts == (1, 2)
    assert not fam.all_principal
    with pytest.raises(ValueError):
        fam.point((Fraction(1), Fraction(-1)))
    with pytest.raises(ValueError):
        fam.point((Fraction(1),))


# ------------------------------------------------------------------ tau values

def test_tau_principal_pure_power(F3xy):
    f = parse_polynomial("x^3*y^2 + x^2*y^3", F3xy)
    assert ideal_equal(tau_principal(f, Fraction(1, 3)), _ideal(F3xy, "x", "y"))
    assert ideal_equal(tau_principal(f, Fraction(0)), _ideal(F3xy, "1"))
    assert ideal_equal(tau_principal(f, PAdicRational(3, 1, 1)),
                       _ideal(F3xy, "x", "y"))
    with pytest.raises(ValueError):
        tau_principal(f, Fraction(1, 2))
    with pytest.raises(ValueError):
        tau_principal(f, PAdicRational(5, 1, 1))


@pytest.mark.parametrize("c,key", [
    ((Fraction(1, 3), Fraction(2, 3)), "x;y"),
    ((Fraction(2, 3), Fraction(1, 3)), "1"),
    ((Fraction(0), Fraction(2, 3)), "1"),
    ((Fraction(1, 3), Fraction(1)), "x*y"),
    ((Fraction(1), Fraction(2, 3)), "x+y"),
    ((Fraction(1), Fraction(1)), "x^2*y+x*y^2"),
    ((Fraction(0), Fraction(0)), "1"),
])
def test_tau_staircase_points(staircase, c, key):
    assert _tau_key(staircase, c) == key


@pytest.mark.parametrize("k", [1, 2, 3])
def test_tau_near_diagonal_corner(staircase, k):
    c = Fraction(3 ** k - 1, 3 ** k)
    assert _tau_key(staircase, (c, c)) == "x;y"


def test_tau_non_p_adic_point(staircase):
    # denominators coprime to 3 go through chain stabilization
    assert _tau_key(staircase, (Fraction(1, 2), Fraction(1, 2))) == "1"


def test_confirm_window_tradeoff(staircase):
    """At (9/10, 9/10) levels 1 and 2 agree on a value that level 3 enlarges.

    The default window of 2 accepts the early value; that is the documented
    meaning of the heuristic, not a silent wrong answer, and a wider window
    finds the true ideal.
    """
    from pfractal import buchberger
    c = (Fraction(9, 10), Fraction(9, 10))
    early = tau_mixed(staircase, c, TauConfig(confirm_window=2))
    assert ideal_key(buchberger(early)) == "x^2*y+x*y^2"
    true = tau_mixed(staircase, c, TauConfig(confirm_window=3, e_max=12))
    assert ideal_key(buchberger(true)) == "x;y"
    assert ideal_contains(true, early)


def test_degree_guard_catches_premature_acceptance(F3xy):
    """Same situation as a single principal ideal: the guard can tell.

    For ((x+y)xy) at 9/10 the bound is floor(3 * 9/10) = 2, and the
    window-2 value is the generator itself of degree 3.
    """
    fam = IdealFamily(F3xy, [_ideal(F3xy, "x^2*y + x*y^2")])
    c = (Fraction(9, 10),)
    with pytest.raises(AssertionError):
        tau_mixed(fam, c, TauConfig(confirm_window=2, degree_check=True))
    guarded = tau_mixed(fam, c,
                        TauConfig(confirm_window=3, e_max=12, degree_check=True))
    assert ideal_equal(guarded, _ideal(F3xy, "x", "y"))


def test_tau_not_stabilized_reports_level(staircase):
    cfg = TauConfig(e_max=1, confirm_window=2)
    with pytest.raises(NotStabilizedError) as info:
        tau_mixed(staircase, (Fraction(1, 2), Fraction(1, 2)), cfg)
    assert info.value.e_max == 1


def test_tau_rejects_bad_point(staircase):
    with pytest.raises(ValueError):
        tau_mixed(staircase, (Fraction(-1, 3), Fraction(0)))
    with pytest.raises(TypeError):
        tau_mixed(staircase, (0.5, 0.5))


# ----------------------------------------------------------------------- skoda

def test_skoda_reduce_basic(staircase):
    factor, residual = skoda_reduce(staircase, (Fraction(7, 3), Fraction(1, 2)))
    assert ideal_equal(factor, _ideal(staircase.ring, "(x+y)^2"))
    assert residual == (Fraction(1, 3), Fraction(1, 2))


def test_skoda_reduce_noop_below_gen_count(staircase):
    factor, residual = skoda_reduce(staircase, (Fraction(2, 3), Fraction(1, 2)))
    assert factor.has_unit_generator()
    assert residual == (Fraction(2, 3), Fraction(1, 2))


def test_skoda_identity_on_tau(staircase):
    """tau(a^(c+1)) = a * tau(a^c) for principal members, c >= 0."""
    from pfractal import buchberger
    f1 = staircase.ring.polynomial("x+y")
    for c in (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(5, 9)):
        lhs = tau_mixed(staircase, (c + 1, Fraction(1, 3)))
        inner = tau_mixed(staircase, (c, Fraction(1, 3)))
        rhs = IdealGens(staircase.ring, [f1 * g for g in inner.gens])
        assert ideal_equal(lhs, rhs)


def test_skoda_two_generator_member(F3xy):
    """For a = (x,y) with 2 generators the peel starts at c = 2."""
    fam = IdealFamily(F3xy, [_ideal(F3xy, "x", "y")])
    m = _ideal(F3xy, "x", "y")
    lhs = tau_mixed(fam, (Fraction(2),))
    rhs = IdealGens(F3xy, ideal_product(m, tau_mixed(fam, (Fraction(1),))).gens)
    assert ideal_equal(lhs, rhs)
    factor, residual = skoda_reduce(fam, (Fraction(5, 2),))
    assert residual == (Fraction(3, 2),)
    assert ideal_equal(factor, m)


def test_reduce_to_single(staircase):
    J, lam = reduce_to_single(staircase, (2, 3), Fraction(1, 9))
    f1 = staircase.ring.polynomial("x+y")
    f2 = staircase.ring.polynomial("x*y")
    expect = IdealGens(staircase.ring, [f1 * f1 * f2 * f2 * f2])
    assert ideal_equal(J, expect)
    assert lam == Fraction(1, 9)
    with pytest.raises(ValueError):
        reduce_to_single(staircase, (0, 0), Fraction(1))
    with pytest.raises(ValueError):
        reduce_to_single(staircase, (-1, 1), Fraction(1))


# ------------------------------------------------------------------- v numbers

def test_v_number_staircase(staircase, maximal):
    assert v_number(staircase, (1, 1), maximal, 1) == 1
    assert v_number(staircase, (1, 1), maximal, 2) == 5
    assert v_number(staircase, (1, 1), maximal, 3) == 17


def test_v_number_zero_region(staircase):
    unit = IdealGens.unit(staircase.ring)
    with pytest.raises(ZeroRegionError):
        v_number(staircase, (1, 1), unit, 1)


def test_v_number_unbounded(F3xy):
    fam = IdealFamily(F3xy, [_ideal(F3xy, "x")])
    I = _ideal(F3xy, "y")
    with pytest.raises(UnboundedError):
        v_number(fam, (1,), I, 1, search_cap=64)


def test_v_number_level_shift(staircase, maximal):
    """V(e+1) against I equals V(e) against I^[p] divided in the same grid."""
    lvl = FrobLevel(3, 1)
    for e in (1, 2):
        direct = v_number(staircase, (1, 1), maximal, e + 1)
        shifted = v_number(staircase, (1, 1), bracket_power(maximal, lvl), e)
        # a^(m r) not in I^[p^(e+1)] iff a^(m r) not in (I^[p])^[p^e]
        assert direct == shifted


def test_f_threshold_staircase(staircase, maximal):
    res = f_threshold(staircase, (1, 1), maximal, 3)
    assert isinstance(res, FThresholdResult)
    assert [str(v) for v in res.values] == ["1/3", "5/9", "17/27"]
    assert res.lower == Fraction(17, 27)
    assert res.values[0] < res.values[1] < res.values[2]
    assert res.lower <= res.upper


def test_f_threshold_monotone_values(staircase, maximal):
    """The normalized sequence V_e / p^e never decreases."""
    res = f_threshold(staircase, (1, 1), maximal, 4)
    for a, b in zip(res.values, res.values[1:]):
        assert a <= b


# ---------------------------------------------------------------- jumping scan

def test_jumping_scan_principal_line(staircase):
    ring = staircase.ring
    jumps = jumping_scan(staircase, (1, 1), 2, Fraction(1))
    keys = [(str(j.lo), str(j.hi), j.key_before, j.key_after) for j in jumps]
    assert keys == [
        ("5/9", "2/3", "1", "x;y"),
        ("8/9", "1", "x;y", "x^2*y+x*y^2"),
    ]


def test_jumping_scan_single_axis(F3xy):
    fam = IdealFamily(F3xy, [_ideal(F3xy, "x^2")])
    jumps = jumping_scan(fam, (1,), 2, Fraction(1))
    # tau((x^2)^c) jumps at multiples of 1/2 in the 1/9 grid: first at 4/9->5/9
    assert jumps[0].key_before == "1"
    assert jumps[0].key_after == "x"
    assert jumps[0].hi == Fraction(5, 9)
    assert jumps[-1].key_after == "x^2"
    assert jumps[-1].hi == Fraction(1)


def test_jumping_scan_requires_positive_direction(staircase):
    with pytest.raises(ValueError):
        jumping_scan(staircase, (0, 0), 1, Fraction(1))


# -------------------------------------------------------------- random suites

def _random_poly(ring, rng, deg=3, nterms=3):
    terms = {}
    for _ in range(rng.randint(1, nterms)):
        e = tuple(rng.randint(0, deg) for _ in range(ring.arity))
        terms[e] = rng.randint(1, ring.p - 1)
    return Polynomial(ring, terms)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_tau_antitone_random(p):
    """c <= c' pointwise implies tau(a^c') contained in tau(a^c)."""
    ring = Ring(p, ["x", "y"])
    rng = random.Random(600 + p)
    for _ in range(25):
        f = _random_poly(ring, rng)
        if f.is_constant:
            continue
        fam = IdealFamily(ring, [IdealGens(ring, [f])])
        e1 = rng.randint(0, 2)
        a = Fraction(rng.randint(0, p ** e1), p ** e1)
        b = a + Fraction(rng.randint(0, 4), p ** rng.randint(0, 2))
        small = tau_mixed(fam, (a,))
        big = tau_mixed(fam, (b,))
        assert ideal_contains(small, big)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_tau_principal_representation_free(p):
    """tau(f^(m/q)) from (m, q) equals tau at the reduced fraction."""
    ring = Ring(p, ["x", "y"])
    rng = random.Random(700 + p)
    for _ in range(25):
        f = _random_poly(ring, rng)
        if f.is_constant:
            continue
        m = rng.randint(0, p ** 2)
        lam = Fraction(m, p ** 2)
        via_fraction = tau_principal(f, lam)
        via_parts = tau_principal(f, PAdicRational(p, m, 2))
        assert ideal_equal(via_fraction, via_parts)


def test_tau_config_validation():
    with pytest.raises(ValueError):
        TauConfig(e_start=0)
    with pytest.raises(ValueError):
        TauConfig(e_max=2, e_start=3)
    with pytest.raises(ValueError):
        TauConfig(confirm_window=0)
