"""Constancy regions of mixed test ideals: sampling, rasters and fractal structure.

chi(fam, I, c) is 1 exactly when tau(a^c) is not contained in I; the sets
where chi = 1 are down-sets in the exponent orthant, and the constancy
region of a test ideal value is a finite boolean combination of them.  The
scaling operators phi -> phi((t + b) / q) act on sampled grids here, and the
self-similarity of chi under them is checked point by point.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .algebra import IdealGens, Polynomial, as_fraction, ideal_power, ideal_product
from .frobenius import FrobLevel, bracket_power, poly_bracket_root
from .groebner import (
    DEFAULT_LIMITS,
    GroebnerLimits,
    ReducedGB,
    buchberger,
    ideal_colon,
    ideal_key,
    reduces_to_zero,
)
from .testideal import (
    DEFAULT_TAU_CONFIG,
    IdealFamily,
    NotStabilizedError,
    TauConfig,
    _cached_pow,
    _principal_power_product,
    p_adic_level,
    tau_mixed,
)


class ResolutionMismatchError(ValueError):
    """A grid operation asked for a finer level than the samples provide."""


class CellNotStabilized(NotStabilizedError):
    """Raster evaluation hit a cell whose test ideal chain did not stabilize."""

    def __init__(self, e_max: int, cell: tuple[int, ...], point: tuple[Fraction, ...]):
        super().__init__(e_max)
        self.cell = cell
        self.point = point
        self.args = (f"cell {cell} at point {tuple(str(c) for c in point)}: {self.args[0]}",)


@dataclass(frozen=True)
class Box:
    """An axis box [0, l_1] x ... x [0, l_n] with positive rational sides."""

    sides: tuple[Fraction, ...]

    def __init__(self, sides):
        coerced = tuple(as_fraction(s) for s in sides)
        if not coerced or any(s <= 0 for s in coerced):
            raise ValueError("box sides must be positive rationals")
        object.__setattr__(self, "sides", coerced)

    @property
    def n(self) -> int:
        return len(self.sides)

    def shape(self, p: int, k: int) -> tuple[int, ...]:
        """Grid points per axis at step 1 / p^k; corners must land on the grid."""
        q = p ** k
        counts = []
        for s in self.sides:
            top = s * q
            if top.denominator != 1:
                raise ValueError(f"box side {s} not representable at level {k}")
            counts.append(int(top) + 1)
        return tuple(counts)


def _flat_index(idx: tuple[int, ...], shape: tuple[int, ...]) -> int:
    flat = 0
    for i, n in zip(idx, shape):
        flat = flat * n + i
    return flat


@dataclass(frozen=True)
class GridFunction:
    """Row-major exact samples of a function on the level-k grid of a box."""

    p: int
    box: Box
    k: int
    values: tuple

    def __post_init__(self):
        expected = 1
        for n in self.shape:
            expected *= n
        if len(self.values) != expected:
            raise ValueError(f"expected {expected} samples, got {len(self.values)}")

    @property
    def shape(self) -> tuple[int, ...]:
        return self.box.shape(self.p, self.k)

    def value_at(self, idx: Sequence[int]):
        return self.values[_flat_index(tuple(idx), self.shape)]

    def point_at(self, idx: Sequence[int]) -> tuple[Fraction, ...]:
        q = self.p ** self.k
        return tuple(Fraction(i, q) for i in idx)

    def fingerprint(self) -> str:
        blob = ";".join(str(v) for v in self.values)
        header = f"k={self.k};shape={self.shape};"
        return hashlib.sha256((header + blob).encode()).hexdigest()


class _ChiOracle:
    """Call-scoped evaluator for chi with memoized Frobenius data.

    For an all-principal family at a point with p-power denominators,
    tau(a^c) equals the bracket root of the weighted product g at the common
    level s, and containment in I is equivalent to membership of g in the
    s-th bracket power of I.  That turns one chi sample into a single normal
    form against a cached basis.  Other inputs fall back to a full tau.
    """

    def __init__(self, fam: IdealFamily, cfg: TauConfig = DEFAULT_TAU_CONFIG):
        self.fam = fam
        self.cfg = cfg
        self.p = fam.ring.p
        self._bracket_gb: dict[tuple[IdealGens, int], ReducedGB] = {}
        self._plain_gb: dict[IdealGens, ReducedGB] = {}
        self._tau: dict[tuple[Fraction, ...], IdealGens] = {}

    def tau(self, point: tuple[Fraction, ...]) -> IdealGens:
        hit = self._tau.get(point)
        if hit is None:
            hit = tau_mixed(self.fam, point, self.cfg)
            self._tau[point] = hit
        return hit

    def _gb_bracket(self, I: IdealGens, s: int) -> ReducedGB:
        key = (I, s)
        hit = self._bracket_gb.get(key)
        if hit is None:
            hit = buchberger(bracket_power(I, FrobLevel(self.p, s)), self.cfg.limits)
            self._bracket_gb[key] = hit
        return hit

    def _gb_plain(self, I: IdealGens) -> ReducedGB:
        hit = self._plain_gb.get(I)
        if hit is None:
            hit = buchberger(I, self.cfg.limits)
            self._plain_gb[I] = hit
        return hit

    def chi(self, I: IdealGens, point: tuple[Fraction, ...]) -> int:
        point = self.fam.point(point)
        s = p_adic_level(point, self.p)
        if s is not None and self.fam.all_principal:
            scale = self.p ** s
            g = _principal_power_product(self.fam, [int(ci * scale) for ci in point])
            return 0 if reduces_to_zero(g, self._gb_bracket(I, s)) else 1
        gb = self._gb_plain(I)
        tau = self.tau(point)
        return 0 if all(reduces_to_zero(g, gb) for g in tau.gens) else 1


def chi(fam: IdealFamily, I: IdealGens, c, cfg: TauConfig = DEFAULT_TAU_CONFIG) -> int:
    """Indicator of tau(a^c) not contained in I (1 outside, 0 inside)."""
    return _ChiOracle(fam, cfg).chi(I, fam.point(c))


@dataclass(frozen=True)
class RegionRaster:
    """Test ideal identity per cell of a level-k grid over a box.

    cells holds palette indices in row-major order; the palette lists the
    canonical keys in order of first appearance, with the reduced basis of
    each entry kept alongside for display.
    """

    p: int
    box: Box
    k: int
    shape: tuple[int, ...]
    cells: tuple[int, ...]
    palette: tuple[str, ...]
    palette_bases: tuple[tuple[Polynomial, ...], ...]

    def cell(self, idx: Sequence[int]) -> int:
        return self.cells[_flat_index(tuple(idx), self.shape)]

    def key_at(self, idx: Sequence[int]) -> str:
        return self.palette[self.cell(idx)]

    def point_at(self, idx: Sequence[int]) -> tuple[Fraction, ...]:
        q = self.p ** self.k
        return tuple(Fraction(i, q) for i in idx)


def rasterize(fam: IdealFamily, box: Box, k: int,
              cfg: TauConfig = DEFAULT_TAU_CONFIG) -> RegionRaster:
    """Evaluate tau on every grid point of the box at level k.

    Cells are scanned row-major with the last index fastest; the palette is
    assigned in first-encounter order, so the output is deterministic.
    """
    if box.n != fam.n:
        raise ValueError(f"box has {box.n} axes but the family has {fam.n} ideals")
    if k < 0:
        raise ValueError("k must be non-negative")
    p = fam.ring.p
    shape = box.shape(p, k)
    q = p ** k
    oracle = _ChiOracle(fam, cfg)
    palette: list[str] = []
    bases: list[tuple[Polynomial, ...]] = []
    index_of: dict[str, int] = {}
    key_cache: dict[IdealGens, tuple[str, tuple[Polynomial, ...]]] = {}
    cells = []
    for idx in product(*map(range, shape)):
        point = tuple(Fraction(i, q) for i in idx)
        try:
            tau = oracle.tau(point)
        except NotStabilizedError as err:
            raise CellNotStabilized(err.e_max, idx, point) from err
        cached = key_cache.get(tau)
        if cached is None:
            gb = buchberger(tau, cfg.limits)
            cached = (ideal_key(gb), gb.basis)
            key_cache[tau] = cached
        key, basis = cached
        slot = index_of.get(key)
        if slot is None:
            slot = len(palette)
            index_of[key] = slot
            palette.append(key)
            bases.append(basis)
        cells.append(slot)
    return RegionRaster(p, box, k, shape, tuple(cells), tuple(palette), tuple(bases))


def region_membership(fam: IdealFamily, c, others: Sequence[IdealGens], J: IdealGens,
                      cfg: TauConfig = DEFAULT_TAU_CONFIG) -> bool:
    """Whether c lies in the region cut out by escaping every ideal in others while staying inside J."""
    oracle = _ChiOracle(fam, cfg)
    point = fam.point(c)
    return all(oracle.chi(I, point) == 1 for I in others) and oracle.chi(J, point) == 0


def fractal_operator(phi: GridFunction, q: int, b: Sequence[int]) -> GridFunction:
    """The grid action of phi -> phi((t + b) / q), extending phi by zero off its box.

    q must be a power of phi.p and b an integer vector with 0 <= b_i < q.
    The result is sampled at level k - e on the same box, which is exact:
    every requested source point is a grid point of phi.
    """
    p = phi.p
    e = 0
    qq = 1
    while qq < q:
        qq *= p
        e += 1
    if qq != q:
        raise ValueError(f"{q} is not a power of {p}")
    b = tuple(b)
    if len(b) != phi.box.n:
        raise ValueError(f"shift has {len(b)} coordinates, expected {phi.box.n}")
    if any((not isinstance(x, int)) or x < 0 or x >= q for x in b):
        raise ValueError(f"shift must have integer coordinates in [0, {q})")
    if phi.k < e:
        raise ResolutionMismatchError(f"need sample level >= {e}, have {phi.k}")
    k_out = phi.k - e
    out_shape = phi.box.shape(p, k_out)
    src_shape = phi.shape
    step = p ** k_out
    zero = phi.values[0] * 0 if phi.values else 0
    values = []
    for idx in product(*map(range, out_shape)):
        src = tuple(i + b_i * step for i, b_i in zip(idx, b))
        if all(s < n for s, n in zip(src, src_shape)):
            values.append(phi.values[_flat_index(src, src_shape)])
        else:
            values.append(zero)
    return GridFunction(p, phi.box, k_out, tuple(values))


def sample_chi(fam: IdealFamily, I: IdealGens, box: Box, k: int,
               cfg: TauConfig = DEFAULT_TAU_CONFIG) -> GridFunction:
    """chi(fam, I, -) sampled on the level-k grid of the box."""
    p = fam.ring.p
    shape = box.shape(p, k)
    q = p ** k
    oracle = _ChiOracle(fam, cfg)
    values = tuple(
        oracle.chi(I, tuple(Fraction(i, q) for i in idx))
        for idx in product(*map(range, shape))
    )
    return GridFunction(p, box, k, values)


def verify_fractal_identity(fam: IdealFamily, I: IdealGens, e: int, b: Sequence[int],
                            box: Box, k: int, cfg: TauConfig = DEFAULT_TAU_CONFIG,
                            limits: GroebnerLimits = DEFAULT_LIMITS) -> bool:
    """Sample both sides of the rescaling identity for chi and compare.

    Left side: chi of I at (t + b) / p^e.  Right side: chi of the colon of
    the e-th bracket power of I by the product of a_i^(b_i - l_i + 1),
    evaluated at t + l - 1, where l_i counts the stored generators of a_i.
    Requires b_i >= l_i - 1.  Both sides run over the level-k grid of the
    box; True means every sample agreed.
    """
    if e < 0:
        raise ValueError("e must be non-negative")
    b = tuple(b)
    l = fam.gen_counts
    if len(b) != fam.n:
        raise ValueError(f"shift has {len(b)} coordinates, expected {fam.n}")
    if any((not isinstance(x, int)) or x < l_i - 1 or x < 0 for x, l_i in zip(b, l)):
        raise ValueError("need integer shifts with b_i >= gen_counts[i] - 1 and b_i >= 0")
    p = fam.ring.p
    q = p ** e
    level = FrobLevel(p, e)
    shifted = IdealGens.unit(fam.ring)
    for a_i, b_i, l_i in zip(fam.ideals, b, l):
        power = b_i - l_i + 1
        if power:
            shifted = ideal_product(shifted, ideal_power(a_i, power))
    colon = ideal_colon(bracket_power(I, level), shifted, limits)
    offset = tuple(Fraction(l_i - 1) for l_i in l)
    oracle = _ChiOracle(fam, cfg)
    shape = box.shape(p, k)
    gq = p ** k
    for idx in product(*map(range, shape)):
        t = tuple(Fraction(i, gq) for i in idx)
        lhs = oracle.chi(I, tuple((t_i + b_i) / q for t_i, b_i in zip(t, b)))
        rhs = oracle.chi(colon, tuple(t_i + o_i for t_i, o_i in zip(t, offset)))
        if lhs != rhs:
            return False
    return True


def fractal_span_census(fam: IdealFamily, I: IdealGens, box: Box, e_max: int, *,
                        ref_level: int = 2,
                        cfg: TauConfig = DEFAULT_TAU_CONFIG) -> list[str]:
    """Fingerprints of all distinct rescalings of chi up to level e_max.

    Every operator with q = p^0 .. p^e_max and shift b in [0, q)^n is applied
    to one high-resolution sample of chi, then compared on the common
    reference grid.  A finite, eventually constant census witnesses the
    finite-dimensional span of the rescalings.
    """
    if e_max < 0 or ref_level < 0:
        raise ValueError("levels must be non-negative")
    p = fam.ring.p
    base = sample_chi(fam, I, box, ref_level + e_max, cfg)
    seen: dict[tuple, str] = {}
    out: list[str] = []
    for e in range(e_max + 1):
        q = p ** e
        for b in product(range(q), repeat=fam.n):
            moved = fractal_operator(base, q, b)
            reduced = _downsample(moved, ref_level)
            vals = reduced.values
            if vals not in seen:
                fp = reduced.fingerprint()
                seen[vals] = fp
                out.append(fp)
    return out


def _downsample(phi: GridFunction, k_out: int) -> GridFunction:
    if k_out > phi.k:
        raise ResolutionMismatchError(f"cannot refine level {phi.k} to {k_out}")
    factor = phi.p ** (phi.k - k_out)
    if factor == 1:
        return phi
    out_shape = phi.box.shape(phi.p, k_out)
    src_shape = phi.shape
    values = tuple(
        phi.values[_flat_index(tuple(i * factor for i in idx), src_shape)]
        for idx in product(*map(range, out_shape))
    )
    return GridFunction(phi.p, phi.box, k_out, values)


@dataclass(frozen=True)
class DigitPoint:
    """A point with coordinates given by base-p digit strings after the radix point."""

    p: int
    digits: tuple[str, ...]

    def __post_init__(self):
        for ds in self.digits:
            if not ds or any(not ("0" <= ch < str(self.p)) for ch in ds):
                raise ValueError(f"bad base-{self.p} digit string {ds!r}")

    def value(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(ds, self.p), self.p ** len(ds)) for ds in self.digits)

    def labels(self) -> tuple[str, ...]:
        return tuple("0." + ds for ds in self.digits)

    def __str__(self) -> str:
        return "(" + ", ".join(self.labels()) + ")"


def staircase_boundary(depth: int) -> list[DigitPoint]:
    """Corner points of the base-3 staircase, generated by the two digit maps.

    Seed (0.1, 0.2); one map rewrites the pair of digit tails (1, 2) to
    (01, 22), the other to (21, 12).  Depth d yields 2^d points whose digit
    strings have d + 1 digits.
    """
    if not isinstance(depth, int) or depth < 0:
        raise ValueError("depth must be a non-negative integer")
    points = [DigitPoint(3, ("1", "2"))]
    for _ in range(depth):
        nxt = []
        for pt in points:
            xd, yd = pt.digits
            nxt.append(DigitPoint(3, (xd[:-1] + "01", yd + "2")))
            nxt.append(DigitPoint(3, (xd[:-1] + "21", yd[:-1] + "12")))
        points = nxt
    return points
