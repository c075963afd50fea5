"""Lattice-region enumeration and brute-force vector-partition counting.

Every generating-function claim in the catalog is adjudicated against the
counting oracles in this module: region enumeration is exhaustive over the
truncation window, and the partition counters are direct dynamic programs
over multisets of parts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .series import (APPROX, EXACT, Caps, Series, SeriesError, geometric_factor,
                     unit_binomial_pow)

# ordering constraint names
ORDER_NONE = "none"
ORDER_ALL_BELOW_LAST = "all_below_last"            # a_i <= a_n for i < n
ORDER_ALL_BELOW_LAST_STRICT = "all_below_last_strict"  # a_i < a_n
ORDER_STRICT_CHAIN = "strict_chain"                # a_1 < a_2 < ... < a_n
ORDER_UPPER_TRIANGLE = "upper_triangle"            # 2D a_1 <= a_2
ORDER_UPPER_TRIANGLE_STRICT = "upper_triangle_strict"  # 2D a_1 < a_2

_ORDERS = (ORDER_NONE, ORDER_ALL_BELOW_LAST, ORDER_ALL_BELOW_LAST_STRICT,
           ORDER_STRICT_CHAIN, ORDER_UPPER_TRIANGLE, ORDER_UPPER_TRIANGLE_STRICT)


class RegionError(ValueError):
    pass


def euler_phi(n: int) -> int:
    """Euler totient by trial division (desk scale: n <= 1e4)."""
    out, k, p = n, n, 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            out -= out // p
        p += 1
    if k > 1:
        out -= out // k
    return out


def moebius(n: int) -> int:
    if n == 1:
        return 1
    out, k, p = 1, n, 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            out = -out
        p += 1
    if k > 1:
        out = -out
    return out


@dataclass(frozen=True)
class LatticeRegion:
    """Declarative description of which integer vectors index product factors."""

    arity: int
    lower: tuple = None  # per-component 0 or 1
    order: str = ORDER_NONE
    coprime: bool = False
    base_powers: int | None = None  # every component a power of this base

    def __post_init__(self):
        lower = self.lower if self.lower is not None else (1,) * self.arity
        object.__setattr__(self, "lower", tuple(int(b) for b in lower))
        if len(self.lower) != self.arity:
            raise RegionError("lower-bound arity mismatch")
        if self.order not in _ORDERS:
            raise RegionError(f"unknown ordering {self.order!r}")
        if self.order in (ORDER_UPPER_TRIANGLE, ORDER_UPPER_TRIANGLE_STRICT) and self.arity != 2:
            raise RegionError("upper-triangle orderings are 2D only")
        if self.base_powers is not None and self.base_powers < 2:
            raise RegionError("base must be >= 2")

    def contains(self, vec) -> bool:
        if len(vec) != self.arity:
            return False
        if all(v == 0 for v in vec):
            return False  # the origin never indexes a factor
        if any(v < lo for v, lo in zip(vec, self.lower)):
            return False
        if self.order == ORDER_ALL_BELOW_LAST:
            if any(v > vec[-1] for v in vec[:-1]):
                return False
        elif self.order == ORDER_ALL_BELOW_LAST_STRICT:
            if any(v >= vec[-1] for v in vec[:-1]):
                return False
        elif self.order == ORDER_STRICT_CHAIN:
            if any(a >= b for a, b in zip(vec, vec[1:])):
                return False
        elif self.order == ORDER_UPPER_TRIANGLE:
            if vec[0] > vec[1]:
                return False
        elif self.order == ORDER_UPPER_TRIANGLE_STRICT:
            if vec[0] >= vec[1]:
                return False
        if self.base_powers is not None:
            for v in vec:
                if v < 1 or not _is_base_power(v, self.base_powers):
                    return False
        if self.coprime and gcd(*vec, 0) != 1:
            return False
        return True

    def to_json(self) -> dict:
        return {"arity": self.arity, "lower": list(self.lower), "order": self.order,
                "coprime": self.coprime, "base_powers": self.base_powers}

    @classmethod
    def from_json(cls, doc: dict) -> "LatticeRegion":
        return cls(arity=doc["arity"], lower=tuple(doc.get("lower", [1] * doc["arity"])),
                   order=doc.get("order", ORDER_NONE), coprime=doc.get("coprime", False),
                   base_powers=doc.get("base_powers"))


def _is_base_power(v: int, base: int) -> bool:
    while v % base == 0:
        v //= base
    return v == 1


def _component_values(lo: int, hi: int, base: int | None):
    if base is None:
        return range(lo, hi + 1)
    vals, p = [], 1
    while p <= hi:
        if p >= lo:
            vals.append(p)
        p *= base
    return vals


def enumerate_region(region: LatticeRegion, bounds) -> list:
    """All region members within per-component bounds, lex sorted.

    `bounds` gives the maximum admissible value per component (derived by the
    caller from the truncation caps and the variable mapping); components may
    not be unbounded, so a bound <= 0 with lower bound 0 still terminates.
    """
    bounds = tuple(int(b) for b in bounds)
    if len(bounds) != region.arity:
        raise RegionError("bounds arity mismatch")
    axes = [_component_values(lo, hi, region.base_powers)
            for lo, hi in zip(region.lower, bounds)]
    out = [vec for vec in itertools.product(*axes) if region.contains(vec)]
    out.sort()
    return out


# -- counting oracles -----------------------------------------------------------

UNRESTRICTED = "unrestricted"
DISTINCT = "distinct"
DISTINCT_PARITY_DIFF = "distinct_parity_diff"


def _box(target):
    return itertools.product(*(range(t + 1) for t in target))


def count_partitions(target, parts, mode=UNRESTRICTED, k: int | None = None) -> int:
    """Count vector partitions of `target` into the given nonzero parts.

    Modes: `unrestricted` (multisets), `distinct` (subsets),
    `distinct_parity_diff` (even-size minus odd-size subsets), and
    `exactly_k` via ``mode=('exactly', k)`` or the `k` argument, which counts
    multisets of size k drawn from parts plus the zero vector, i.e. at most k
    nonzero parts (the convention the partition grids use, where the
    zero-vector target has one partition for every k).
    """
    target = tuple(int(t) for t in target)
    if isinstance(mode, tuple):
        mode, k = mode
    parts = [tuple(p) for p in parts
             if all(c >= 0 for c in p) and any(c > 0 for c in p)
             and all(c <= t for c, t in zip(p, target))]
    parts.sort()
    if mode == "exactly" or mode == "exactly_k":
        if k is None:
            raise ValueError("exactly-k mode needs k")
        return count_exactly_k(target, parts, k)
    dp = {e: 0 for e in _box(target)}
    dp[(0,) * len(target)] = 1
    if mode == UNRESTRICTED:
        for part in parts:
            for expo in sorted(dp):
                prev = tuple(e - p for e, p in zip(expo, part))
                if all(c >= 0 for c in prev) and dp[prev]:
                    dp[expo] += dp[prev]
    elif mode in (DISTINCT, DISTINCT_PARITY_DIFF):
        sign = 1 if mode == DISTINCT else -1
        for part in parts:
            for expo in sorted(dp, reverse=True):
                prev = tuple(e - p for e, p in zip(expo, part))
                if all(c >= 0 for c in prev) and dp[prev]:
                    dp[expo] += sign * dp[prev]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return dp[target]


def count_exactly_k(target, parts, k: int) -> int:
    """Multisets of size <= k of nonzero parts summing to target."""
    target = tuple(int(t) for t in target)
    parts = [tuple(p) for p in parts
             if all(c >= 0 for c in p) and any(c > 0 for c in p)
             and all(c <= t for c, t in zip(p, target))]
    parts.sort()
    zero = (0,) * len(target)
    box = sorted(_box(target))
    # dp[t] = list over part-count 0..k
    dp = {e: [0] * (k + 1) for e in box}
    dp[zero][0] = 1
    for part in parts:
        for expo in box:
            prev = tuple(e - p for e, p in zip(expo, part))
            if any(x < 0 for x in prev):
                continue
            cell, prev_cell = dp[expo], dp[prev]
            for c in range(1, k + 1):
                if prev_cell[c - 1]:
                    cell[c] += prev_cell[c - 1]
    return sum(dp[target])


# -- weights and product specs ---------------------------------------------------


@dataclass(frozen=True)
class WeightExpr:
    """Per-factor exponent: the factor is (1 + sign*X) ** (direction * w).

    w = prod of component^power (rational powers force approx mode), times
    phi(component)/component when `phi_over` names a component index.
    """

    sign: int = -1
    direction: int = 1
    powers: tuple = ()
    phi_over: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "powers", tuple(Fraction(p) for p in self.powers))
        if self.sign not in (1, -1) or self.direction not in (1, -1):
            raise RegionError("sign and direction must be +-1")

    def needs_approx(self) -> bool:
        return any(p.denominator != 1 for p in self.powers)

    def weight(self, vec, mode: str):
        if mode == EXACT and self.needs_approx():
            raise SeriesError("irrational weight requires approx mode")
        if mode == EXACT:
            w = Fraction(1)
            for v, p in zip(vec, self.powers):
                w *= Fraction(v) ** int(p)
        else:
            w = 1.0
            for v, p in zip(vec, self.powers):
                w *= float(v) ** float(p)
        if self.phi_over is not None:
            v = vec[self.phi_over]
            w = w * euler_phi(v) / v if mode == APPROX else w * Fraction(euler_phi(v), v)
        return w

    def to_json(self) -> dict:
        return {"sign": self.sign, "direction": self.direction,
                "powers": [str(p) for p in self.powers], "phi_over": self.phi_over}

    @classmethod
    def from_json(cls, doc: dict) -> "WeightExpr":
        return cls(sign=doc.get("sign", -1), direction=doc.get("direction", 1),
                   powers=tuple(Fraction(p) for p in doc.get("powers", [])),
                   phi_over=doc.get("phi_over"))


GEOMETRIC = "geometric"
MULTIPLICITY = "multiplicity"
SQUARE = "square"
ODD_ONLY = "odd_only"
DISTINCT_BINOMIAL = "distinct_binomial"


@dataclass(frozen=True)
class LocalFactorFamily:
    """Per-lattice-point factor given as a weighted multiplicity sum."""

    kind: str
    exponent: Fraction = Fraction(1)  # for distinct_binomial: (1 + sign X)^exponent
    sign: int = 1

    def defining_terms(self, max_mult: int, mode: str):
        """Coefficients [c_0..c_max] of the defining sum in X."""
        one = Fraction(1) if mode == EXACT else 1.0
        if self.kind == GEOMETRIC:
            return [one] * (max_mult + 1)
        if self.kind == MULTIPLICITY:
            return [one if n == 0 else n * one for n in range(max_mult + 1)]
        if self.kind == SQUARE:
            return [one if n == 0 else n * n * one for n in range(max_mult + 1)]
        if self.kind == ODD_ONLY:
            return [one if n == 0 else (n * one if n % 2 else 0 * one)
                    for n in range(max_mult + 1)]
        raise RegionError(f"no defining sum for {self.kind!r}")

    def series(self, mono, names, caps: Caps, mode: str, closed_form: bool = True) -> Series:
        """The local factor as a series; closed form or truncated defining sum."""
        if self.kind == DISTINCT_BINOMIAL:
            return unit_binomial_pow(mono, self.exponent, names, caps, mode, sign=self.sign)
        if not closed_form:
            kmax = _max_multiple(mono, caps)
            coeffs = self.defining_terms(kmax, mode)
            terms = {tuple(e * n for e in mono): c
                     for n, c in enumerate(coeffs) if c != 0}
            return Series(names, caps, mode, terms)
        one = Series.one(names, caps, mode)
        x = Series.monomial(mono, names, caps, mode)
        inv = (one - x).inverse()
        if self.kind == GEOMETRIC:
            return geometric_factor(mono, names, caps, mode)
        if self.kind == MULTIPLICITY:
            return one + x * inv * inv
        if self.kind == SQUARE:
            return one + x * (one + x) * inv.pow(3)
        if self.kind == ODD_ONLY:
            x2 = x * x
            inv2 = (one - x2).inverse()
            return one + x * (one + x2) * inv2 * inv2
        raise RegionError(f"unknown family {self.kind!r}")

    def to_json(self) -> dict:
        return {"family": self.kind, "exponent": str(self.exponent), "sign": self.sign}

    @classmethod
    def from_json(cls, doc: dict) -> "LocalFactorFamily":
        return cls(kind=doc["family"], exponent=Fraction(doc.get("exponent", 1)),
                   sign=doc.get("sign", 1))


def _max_multiple(mono, caps: Caps) -> int:
    k = 0
    while caps.admits(tuple(e * (k + 1) for e in mono)):
        k += 1
    return k


@dataclass(frozen=True)
class ProductSpec:
    """A lattice product: region, per-point factor, and variable mapping.

    `mapping` assigns each region component either a variable index (int) or a
    scalar value (Fraction) folded into the factor's coefficient; components
    mapped to the same variable merge additively (y^(a+b) style).
    """

    region: LatticeRegion
    factor: object  # WeightExpr | LocalFactorFamily
    mapping: tuple = None  # per component: int index | Fraction scalar
    names: tuple = ()

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        mapping = self.mapping
        if mapping is None:
            mapping = tuple(range(self.region.arity))
        norm = []
        for m in mapping:
            if isinstance(m, int) and not isinstance(m, bool):
                if not 0 <= m < len(names):
                    raise RegionError(f"variable index {m} out of range")
                norm.append(m)
            elif m is None:
                norm.append(None)
            else:
                norm.append(Fraction(m))
        object.__setattr__(self, "mapping", tuple(norm))
        if len(self.mapping) != self.region.arity:
            raise RegionError("mapping arity mismatch")

    def image(self, vec, mode: str):
        """(monomial exponent vector, scalar) contributed by a region vector."""
        expo = [0] * len(self.names)
        scalar = Fraction(1) if mode == EXACT else 1.0
        for v, m in zip(vec, self.mapping):
            if isinstance(m, int):
                expo[m] += v
            elif m is None:
                continue
            else:
                scalar = scalar * (m if mode == EXACT else float(m)) ** v
        return tuple(expo), scalar

    def component_bounds(self, caps: Caps):
        """Upper bounds per component so the image monomial can fit the caps."""
        bounds = []
        for m in self.mapping:
            if isinstance(m, int):
                limit = caps.limits[m]
                if caps.total is not None:
                    limit = min(limit, caps.total)
                bounds.append(limit)
            else:
                bounds.append(None)
        # unbounded (scalar/dropped) components are capped by an ordering
        # constraint against a bounded one, else the region is infinite
        known = [b for b in bounds if b is not None]
        if not known:
            raise RegionError("region with no capped progress direction")
        fallback = max(known)
        order = self.region.order
        for i, b in enumerate(bounds):
            if b is not None:
                continue
            if order in (ORDER_ALL_BELOW_LAST, ORDER_ALL_BELOW_LAST_STRICT) \
                    and i < len(bounds) - 1 and bounds[-1] is not None:
                bounds[i] = bounds[-1]
            elif order == ORDER_STRICT_CHAIN and any(
                    bounds[j] is not None for j in range(i + 1, len(bounds))):
                bounds[i] = next(bounds[j] for j in range(i + 1, len(bounds))
                                 if bounds[j] is not None)
            elif order in (ORDER_UPPER_TRIANGLE, ORDER_UPPER_TRIANGLE_STRICT) \
                    and i == 0 and bounds[1] is not None:
                bounds[i] = bounds[1]
            else:
                raise RegionError("region with no capped progress direction")
        if order == ORDER_STRICT_CHAIN:
            # earlier components sit strictly below later ones
            for i in range(len(bounds) - 2, -1, -1):
                bounds[i] = min(bounds[i], bounds[i + 1] - 1)
        return tuple(bounds)

    def vectors(self, caps: Caps) -> list:
        vecs = enumerate_region(self.region, self.component_bounds(caps))
        out = []
        for vec in vecs:
            expo, _ = self.image(vec, APPROX)
            if all(e == 0 for e in expo):
                raise RegionError(f"region vector {vec} feeds no capped variable")
            if caps.admits(expo):
                out.append(vec)
        return out

    def to_json(self) -> dict:
        factor = self.factor.to_json()
        key = "weight" if isinstance(self.factor, WeightExpr) else "factor"
        return {"region": self.region.to_json(), key: factor,
                "mapping": [m if isinstance(m, int) or m is None else str(m)
                            for m in self.mapping],
                "vars": list(self.names)}

    @classmethod
    def from_json(cls, doc: dict) -> "ProductSpec":
        region = LatticeRegion.from_json(doc["region"])
        if "weight" in doc:
            factor = WeightExpr.from_json(doc["weight"])
        else:
            factor = LocalFactorFamily.from_json(doc["factor"])
        mapping = tuple(m if isinstance(m, int) or m is None else Fraction(m)
                        for m in doc["mapping"])
        return cls(region=region, factor=factor, mapping=mapping,
                   names=tuple(doc["vars"]))


def product_series(spec: ProductSpec, caps: Caps, mode: str = EXACT,
                   closed_form_factors: bool = True) -> Series:
    """Expand the truncated lattice product factor by factor.

    Weight-expression factors with equal image monomials are grouped (their
    exponents add) before the binomial expansion; the result is independent
    of factor order either way.
    """
    names = spec.names
    out = Series.one(names, caps, mode)
    if isinstance(spec.factor, WeightExpr):
        w = spec.factor
        grouped: dict = {}
        for vec in spec.vectors(caps):
            expo, scalar = spec.image(vec, mode)
            weight = w.weight(vec, mode) * w.direction
            key = (expo, scalar)
            grouped[key] = grouped.get(key, 0) + weight
        for (expo, scalar), weight in sorted(grouped.items()):
            if weight == 0:
                continue
            out = out * unit_binomial_pow(expo, weight, names, caps, mode,
                                          sign=w.sign, scalar=scalar)
        return out
    family = spec.factor
    for vec in spec.vectors(caps):
        expo, scalar = spec.image(vec, mode)
        if scalar != 1:
            raise RegionError("scalar mappings require a weight factor")
        out = out * family.series(expo, names, caps, mode,
                                  closed_form=closed_form_factors)
    return out


# -- partition grids --------------------------------------------------------------


@dataclass
class PartitionGrid:
    """Tabulated coefficients with row and column sums (arity <= 3)."""

    axis_names: tuple
    ranges: tuple  # per-axis max index
    cells: dict = field(default_factory=dict)

    @classmethod
    def from_series(cls, series: Series, caps: Caps | None = None) -> "PartitionGrid":
        if len(series.names) > 3:
            raise RegionError("grids support arity <= 3 only")
        caps = caps or series.caps
        grid = cls(axis_names=series.names, ranges=tuple(caps.limits))
        for expo in itertools.product(*(range(r + 1) for r in grid.ranges)):
            value = series.terms.get(expo)
            if value:
                grid.cells[expo] = value
        return grid

    def cell(self, *expo):
        return self.cells.get(tuple(expo), 0)

    def row_sums(self):
        """Sums over the first axis, per value of the remaining axes."""
        out: dict = {}
        for expo, value in self.cells.items():
            out[expo[1:]] = out.get(expo[1:], 0) + value
        return out

    def col_sums(self):
        """Sums over the trailing axes, per value of the first axis."""
        out: dict = {}
        for expo, value in self.cells.items():
            out[(expo[0],)] = out.get((expo[0],), 0) + value
        return out

    def _format_cell(self, value) -> str:
        if isinstance(value, Fraction):
            return str(value.numerator) if value.denominator == 1 else \
                f"{value.numerator}/{value.denominator}"
        if isinstance(value, float):
            return repr(value)
        return str(value)

    def to_csv(self) -> str:
        """CSV: header row = first axis values, first column = second axis values."""
        if len(self.axis_names) == 1:
            lines = [",".join(str(a) for a in range(self.ranges[0] + 1))]
            lines.append(",".join(self._format_cell(self.cell(a))
                                  for a in range(self.ranges[0] + 1)))
            return "\n".join(lines) + "\n"
        if len(self.axis_names) == 2:
            return self._csv_2d(lambda a, b: self.cell(a, b))
        blocks = []
        for c in range(self.ranges[2] + 1):
            blocks.append(f"# {self.axis_names[2]}={c}\n"
                          + self._csv_2d(lambda a, b, c=c: self.cell(a, b, c)))
        return "".join(blocks)

    def _csv_2d(self, get) -> str:
        header = [""] + [str(a) for a in range(self.ranges[0] + 1)]
        lines = [",".join(header)]
        for b in range(self.ranges[1] + 1):
            row = [str(b)] + [self._format_cell(get(a, b))
                              for a in range(self.ranges[0] + 1)]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "axes": list(self.axis_names),
            "ranges": list(self.ranges),
            "cells": [{"e": list(e), "v": self._format_cell(v)}
                      for e, v in sorted(self.cells.items())],
            "row_sums": [{"e": list(e), "v": self._format_cell(v)}
                         for e, v in sorted(self.row_sums().items())],
            "col_sums": [{"e": list(e), "v": self._format_cell(v)}
                         for e, v in sorted(self.col_sums().items())],
        }


def grid(source, caps: Caps | None = None, mode: str = EXACT) -> PartitionGrid:
    """Tabulate a Series or ProductSpec as a PartitionGrid."""
    if isinstance(source, ProductSpec):
        if caps is None:
            raise RegionError("grid from a ProductSpec needs caps")
        source = product_series(source, caps, mode)
    return PartitionGrid.from_series(source, caps)


# -- exact radial-line specials ----------------------------------------------------


def coprime_geometric_value(q: Fraction, k: int) -> Fraction:
    """Closed value of sum over j >= 1 coprime to k of q^j.

    Evaluates sum_{d | k} mu(d) q^d / (1 - q^d): the convergent geometric sum
    for |q| < 1 and its rational continuation otherwise.
    """
    q = Fraction(q)
    out = Fraction(0)
    for d in range(1, k + 1):
        if k % d == 0 and moebius(d) != 0:
            qd = q ** d
            if qd == 1:
                raise SeriesError("geometric value has a pole at q^d = 1")
            out += moebius(d) * qd / (1 - qd)
    return out


def quadrant_radial_series(q: Fraction, cap: int, names=("z",), reciprocal=False) -> Series:
    """prod over coprime (j,k), j,k >= 1 of (1 - q^j z^k)^(1/k), exactly.

    The infinite j-range is folded through `coprime_geometric_value`;
    `reciprocal=True` gives the (1/(1-...)) direction.
    """
    caps = Caps.of([cap])
    log_terms: dict = {}
    for n in range(1, cap + 1):
        total = Fraction(0)
        for k in range(1, n + 1):
            if n % k == 0:
                h = n // k
                total += coprime_geometric_value(Fraction(q) ** h, k) / n
        if total:
            log_terms[(n,)] = -total
    log_series = Series(names, caps, EXACT, log_terms)
    if reciprocal:
        log_series = -log_series
    return log_series.exp()


def pyramid_radial_series(q: Fraction, cap: int, names=("z",), reciprocal=False,
                          strict: bool = False) -> Series:
    """prod over coprime (j,k), j <= k (or j < k) of (1 - q^j z^k)^(1/k), exactly.

    The j-range is finite, so this is a plain formal evaluation.
    """
    caps = Caps.of([cap])
    log_terms: dict = {}
    for n in range(1, cap + 1):
        total = Fraction(0)
        for k in range(1, n + 1):
            if n % k == 0:
                h = n // k
                top = k - 1 if strict else k
                s = sum((Fraction(q) ** (j * h) for j in range(1, top + 1)
                         if gcd(j, k) == 1), Fraction(0))
                total += s / Fraction(n)
        if total:
            log_terms[(n,)] = -total
    log_series = Series(names, caps, EXACT, log_terms)
    if reciprocal:
        log_series = -log_series
    return log_series.exp()
