"""Generalized test ideals of ideal families, F-thresholds and jumping data.

The mixed test ideal tau(a_1^c_1 ... a_n^c_n) is the stable member of the
increasing chain of bracket roots of a_1^ceil(c_1 q) ... a_n^ceil(c_n q) as
q = p^e grows.  Principal ideals with p-power-denominator exponents admit an
exact shortcut (a single bracket root, no stabilization loop), and Skoda's
theorem peels off integer units of any coordinate that reaches the generator
count of its ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import (
    IdealGens,
    Polynomial,
    Ring,
    as_fraction,
    ideal_power,
    ideal_product,
    poly_pow,
)
from .frobenius import FrobLevel, bracket_power, ideal_bracket_root, poly_bracket_root
from .groebner import DEFAULT_LIMITS, GroebnerLimits, buchberger, ideal_key, reduces_to_zero


class NotStabilizedError(RuntimeError):
    """The bracket-root chain did not confirm stabilization within e_max levels."""

    def __init__(self, e_max: int, last_key: str | None = None):
        detail = f"; last basis key {last_key!r}" if last_key is not None else ""
        super().__init__(f"test ideal chain not stabilized by level e_max={e_max}{detail}")
        self.e_max = e_max
        self.last_key = last_key


class UnboundedError(RuntimeError):
    """A containment search hit its cap; the target ideal misses the radical condition."""


class ZeroRegionError(ValueError):
    """The target ideal is the unit ideal, so no power of the family escapes it."""


@dataclass(frozen=True)
class PAdicRational:
    """A non-negative rational num / p^e, stored normalized (p does not divide num unless e = 0)."""

    p: int
    num: int
    e: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"p must be at least 2, got {self.p}")
        if self.num < 0 or self.e < 0:
            raise ValueError("numerator and level must be non-negative")
        num, e = self.num, self.e
        while e > 0 and num % self.p == 0:
            num //= self.p
            e -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "e", e)

    @classmethod
    def from_fraction(cls, p: int, value) -> "PAdicRational":
        value = as_fraction(value)
        if value < 0:
            raise ValueError(f"expected a non-negative rational, got {value}")
        den = value.denominator
        e = 0
        while den % p == 0:
            den //= p
            e += 1
        if den != 1:
            raise ValueError(f"denominator of {value} is not a power of {p}")
        return cls(p, value.numerator, e)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.p ** self.e)

    def __str__(self) -> str:
        return str(self.value)


class IdealFamily:
    """A finite ordered family of nonzero ideals in one ring.

    gen_counts records the number of stored generators of each member; the
    Skoda reduction threshold for coordinate i is gen_counts[i].
    """

    __slots__ = ("ring", "ideals", "gen_counts")

    def __init__(self, ring: Ring, ideals: Sequence[IdealGens]):
        members = tuple(ideals)
        if not members:
            raise ValueError("family needs at least one ideal")
        for I in members:
            if I.ring != ring:
                raise ValueError("family member from a different ring")
            if I.is_zero:
                raise ValueError("family members must be nonzero ideals")
        self.ring = ring
        self.ideals = members
        self.gen_counts = tuple(len(I.gens) for I in members)

    @property
    def n(self) -> int:
        return len(self.ideals)

    @property
    def all_principal(self) -> bool:
        return all(c == 1 for c in self.gen_counts)

    def point(self, coords) -> tuple[Fraction, ...]:
        """Validate and coerce an exponent point for this family."""
        pt = tuple(as_fraction(c) for c in coords)
        if len(pt) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(pt)}")
        if any(c < 0 for c in pt):
            raise ValueError("exponent coordinates must be non-negative")
        return pt

    def __repr__(self) -> str:
        return f"IdealFamily({self.ring!r}, n={self.n})"


@dataclass(frozen=True)
class TauConfig:
    e_start: int = 1
    e_max: int = 10
    confirm_window: int = 2
    degree_check: bool = False
    limits: GroebnerLimits = field(default_factory=GroebnerLimits)

    def __post_init__(self):
        if self.e_start < 1 or self.e_max < self.e_start:
            raise ValueError("need 1 <= e_start <= e_max")
        if self.confirm_window < 1:
            raise ValueError("confirm_window must be at least 1")


DEFAULT_TAU_CONFIG = TauConfig()


@lru_cache(maxsize=4096)
def _cached_pow(f: Polynomial, n: int) -> Polynomial:
    return poly_pow(f, n)


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def p_adic_level(point: Sequence[Fraction], p: int) -> int | None:
    """Smallest s with all coordinates of the form m / p^s, or None."""
    s = 0
    for c in point:
        den = c.denominator
        e = 0
        while den % p == 0:
            den //= p
            e += 1
        if den != 1:
            return None
        s = max(s, e)
    return s


def skoda_reduce(fam: IdealFamily, s) -> tuple[IdealGens, tuple[Fraction, ...]]:
    """Split tau(a^s) = factor * tau(a^residual) by peeling integer units.

    One unit of a_i comes off while s_i >= gen_counts[i], so the residual
    satisfies residual_i < gen_counts[i].  The factor is the product of the
    peeled ideal powers (the unit ideal when nothing peels).
    """
    point = fam.point(s)
    factor = IdealGens.unit(fam.ring)
    residual = []
    for coord, m_i, a_i in zip(point, fam.gen_counts, fam.ideals):
        if coord >= m_i:
            k = _floor(coord - m_i) + 1
            factor = ideal_product(factor, ideal_power(a_i, k))
            residual.append(coord - k)
        else:
            residual.append(coord)
    return factor, tuple(residual)


def reduce_to_single(fam: IdealFamily, r: Sequence[int], lam) -> tuple[IdealGens, Fraction]:
    """Rewrite tau(a_1^(lam r_1) ... a_n^(lam r_n)) as tau(J^lam) with J the weighted product."""
    if len(r) != fam.n:
        raise ValueError(f"expected {fam.n} weights, got {len(r)}")
    if any((not isinstance(x, int)) or x < 0 for x in r):
        raise ValueError("weights must be non-negative integers")
    if not any(r):
        raise ValueError("at least one weight must be positive")
    lam = as_fraction(lam)
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    J = IdealGens.unit(fam.ring)
    for a_i, r_i in zip(fam.ideals, r):
        if r_i:
            J = ideal_product(J, ideal_power(a_i, r_i))
    return J, lam


def tau_principal(f: Polynomial, lam) -> IdealGens:
    """tau(f^lam) for a principal ideal and lam = m / p^e: one exact bracket root.

    Valid for every representation of lam with a p-power denominator; the
    chain is already stable at level e, so no search is needed.
    """
    if f.is_zero:
        raise ValueError("principal test ideal of the zero polynomial")
    p = f.ring.p
    if not isinstance(lam, PAdicRational):
        lam = PAdicRational.from_fraction(p, lam)
    elif lam.p != p:
        raise ValueError(f"exponent is {lam.p}-adic but the ring has characteristic {p}")
    level = FrobLevel(p, lam.e)
    return poly_bracket_root(poly_pow(f, lam.num), level)


def _product_of_powers(fam: IdealFamily, exponents: Sequence[int]) -> IdealGens:
    prod = IdealGens.unit(fam.ring)
    for a_i, m_i in zip(fam.ideals, exponents):
        if m_i:
            prod = ideal_product(prod, ideal_power(a_i, m_i))
    return prod


def _principal_power_product(fam: IdealFamily, exponents: Sequence[int]) -> Polynomial:
    g = fam.ring.one()
    for a_i, m_i in zip(fam.ideals, exponents):
        if m_i:
            g = g * _cached_pow(a_i.gens[0], m_i)
    return g


def _degree_bound_check(fam: IdealFamily, point, result):
    total = sum(point, Fraction(0))
    d = max(max(g.degree() for g in a.gens) for a in fam.ideals)
    bound = _floor(Fraction(d) * total)
    gens = result.basis if hasattr(result, "basis") else result.gens
    for g in gens:
        if g.degree() > bound:
            raise AssertionError(
                f"generator degree {g.degree()} exceeds bound {bound} for exponent {point}"
            )


def tau_mixed(fam: IdealFamily, c, cfg: TauConfig = DEFAULT_TAU_CONFIG) -> IdealGens:
    """The mixed test ideal tau(a_1^c_1 ... a_n^c_n).

    Order of attack: Skoda peeling first, then the exact principal shortcut
    when every member is principal and every exponent has a p-power
    denominator, finally the stabilization loop over Frobenius levels with a
    confirmation window.  Raises NotStabilizedError when the window is not
    confirmed by level e_max.
    """
    point = fam.point(c)
    p = fam.ring.p

    factor, residual = skoda_reduce(fam, point)
    if not factor.has_unit_generator():
        core = tau_mixed(fam, residual, cfg)
        result = ideal_product(factor, core)
        if cfg.degree_check and p_adic_level(point, p) is not None:
            _degree_bound_check(fam, point, result)
        return result

    s = p_adic_level(point, p)
    if s is not None and fam.all_principal:
        scale = p ** s
        g = _principal_power_product(fam, [int(ci * scale) for ci in point])
        result = poly_bracket_root(g, FrobLevel(p, s))
        if cfg.degree_check:
            _degree_bound_check(fam, point, result)
        return result

    prev_key: str | None = None
    streak = 0
    last: IdealGens | None = None
    for e in range(cfg.e_start, cfg.e_max + 1):
        q = p ** e
        exponents = [_ceil(ci * q) for ci in point]
        prod = _product_of_powers(fam, exponents)
        J = ideal_bracket_root(prod, FrobLevel(p, e))
        key = ideal_key(J, cfg.limits)
        if key == prev_key:
            streak += 1
        else:
            prev_key = key
            streak = 1
        last = J
        if streak >= cfg.confirm_window:
            if cfg.degree_check:
                # checked on the reduced basis: a violation means the window
                # accepted a value below the true (larger) stabilized ideal
                _degree_bound_check(fam, point, buchberger(J, cfg.limits))
            return J
    raise NotStabilizedError(cfg.e_max, prev_key)


def _containment_prober(fam: IdealFamily, r: Sequence[int], gb, limits: GroebnerLimits):
    def contained(m: int) -> bool:
        prod = _product_of_powers(fam, [m * r_i for r_i in r])
        return all(reduces_to_zero(g, gb) for g in prod.gens)

    return contained


def _search_first_true(contained, what: str, cap: int) -> int:
    """Least positive m with contained(m), for a monotone predicate; cap guarded."""
    hi = 1
    while not contained(hi):
        if hi > cap:
            raise UnboundedError(
                f"{what}: containment still fails at m={hi}; radical condition violated?"
            )
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if contained(mid):
            hi = mid
        else:
            lo = mid
    return hi


def v_number(fam: IdealFamily, r: Sequence[int], I: IdealGens, e: int, *,
             search_cap: int = 1_000_000, limits: GroebnerLimits = DEFAULT_LIMITS) -> int:
    """Largest m with a_1^(m r_1) ... a_n^(m r_n) not inside the e-th bracket power of I.

    Containment is monotone in m, so an exponential probe followed by binary
    search finds the boundary.  Raises ZeroRegionError when I is the unit
    ideal (even m = 0 is contained) and UnboundedError when no containment
    shows up below the cap.
    """
    if len(r) != fam.n:
        raise ValueError(f"expected {fam.n} weights, got {len(r)}")
    if any((not isinstance(x, int)) or x < 0 for x in r):
        raise ValueError("weights must be non-negative integers")
    level = FrobLevel(fam.ring.p, e)
    gb = buchberger(bracket_power(I, level), limits)
    contained = _containment_prober(fam, r, gb, limits)
    if contained(0):
        raise ZeroRegionError("target ideal is the unit ideal; every power is contained")
    return _search_first_true(contained, "v-number search", search_cap) - 1


@dataclass(frozen=True)
class FThresholdResult:
    values: tuple[Fraction, ...]
    lower: Fraction
    upper: Fraction


def f_threshold(fam: IdealFamily, r: Sequence[int], I: IdealGens, e_max: int, *,
                search_cap: int = 1_000_000,
                limits: GroebnerLimits = DEFAULT_LIMITS) -> FThresholdResult:
    """The non-decreasing sequence v_e / p^e for e = 1..e_max, with limit bracket.

    The limit lies in [values[-1], l*s] where s counts the generators of the
    weighted product ideal and l is the least power with a^(l r) inside I.
    """
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    p = fam.ring.p
    values = tuple(
        Fraction(v_number(fam, r, I, e, search_cap=search_cap, limits=limits), p ** e)
        for e in range(1, e_max + 1)
    )
    J, _ = reduce_to_single(fam, list(r), 1)
    s_count = len(J.gens)
    gb_i = buchberger(I, limits)
    contained = _containment_prober(fam, r, gb_i, limits)
    l_min = _search_first_true(contained, "threshold bound search", search_cap)
    return FThresholdResult(values, values[-1], Fraction(l_min * s_count))


@dataclass(frozen=True)
class JumpRecord:
    lo: Fraction
    hi: Fraction
    key_before: str
    key_after: str


def jumping_scan(fam: IdealFamily, r: Sequence[int], k: int, bound,
                 cfg: TauConfig = DEFAULT_TAU_CONFIG) -> list[JumpRecord]:
    """Locate jumps of t -> tau(J^t), J the weighted product, on the level-k grid.

    Scans t = m / p^k for m = 0..ceil(bound * p^k) and reports each cell
    ((m-1)/p^k, m/p^k] where the canonical key changes.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    bound = as_fraction(bound)
    if bound < 0:
        raise ValueError("bound must be non-negative")
    J, _ = reduce_to_single(fam, list(r), 1)
    single = IdealFamily(fam.ring, (J,))
    q = fam.ring.p ** k
    top = _ceil(bound * q)
    jumps: list[JumpRecord] = []
    prev_key: str | None = None
    for m in range(top + 1):
        key = ideal_key(tau_mixed(single, (Fraction(m, q),), cfg), cfg.limits)
        if m > 0 and key != prev_key:
            jumps.append(JumpRecord(Fraction(m - 1, q), Fraction(m, q), prev_key, key))
        prev_key = key
    return jumps
