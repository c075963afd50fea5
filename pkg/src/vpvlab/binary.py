"""Binary and n-ary vector-partition counting and transform identities.

Power-of-two part systems: the 1D binary partition function, the 0/1-digit
indicator for two-component base-n partitions into distinct parts, the
two-variable beta grid with its four computation routes, and the 2D/3D
distinct-to-unrestricted product transforms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import determinants
from .lattice import PartitionGrid, count_partitions, DISTINCT
from .series import Caps, EXACT, Series, SeriesError, geometric_factor, unit_binomial


FULL_QUADRANT = "full_quadrant"
LOWER_DIAGONAL = "lower_diagonal"
PYRAMID_3D = "pyramid_3d"


@dataclass(frozen=True)
class BinaryGridSpec:
    dimension: int
    flavor: str = FULL_QUADRANT
    base: int = 2

    def __post_init__(self):
        if self.base < 2:
            raise SeriesError("base must be >= 2")
        if self.flavor not in (FULL_QUADRANT, LOWER_DIAGONAL, PYRAMID_3D):
            raise SeriesError(f"unknown flavor {self.flavor!r}")
        if self.flavor == PYRAMID_3D and self.dimension != 3:
            raise SeriesError("pyramid flavor is 3D")
        if self.flavor != PYRAMID_3D and self.dimension != 2:
            raise SeriesError("quadrant/diagonal flavors are 2D")


def _powers_upto(cap: int, base: int = 2):
    out, p = [], 1
    while p <= cap:
        out.append(p)
        p *= base
    return out


def binary_count(n: int) -> int:
    """b(n): partitions of n into powers of 2, computed two ways.

    Route one is the plain product over 1/(1 - q^(2^k)); route two is the
    multiplicity-capped product (1+x)(1+x^2)^2 (1+x^4)^3 ...; the two must
    agree (2^(m-1) used at most m times).
    """
    if n < 0:
        raise SeriesError("n must be >= 0")
    caps = Caps.of([n])
    names = ("q",)
    one_way = Series.one(names, caps)
    for p in _powers_upto(n):
        one_way = one_way * geometric_factor((p,), names, caps)
    other = Series.one(names, caps)
    for k, p in enumerate(_powers_upto(n)):
        factor = unit_binomial((p,), names, caps, sign=1)
        for _ in range(k + 1):
            other = other * factor
    if one_way != other:
        raise AssertionError("binary partition routes disagree")
    return int(one_way.coefficient((n,)))


def binary_count_series(cap: int) -> Series:
    caps = Caps.of([cap])
    names = ("q",)
    out = Series.one(names, caps)
    for p in _powers_upto(cap):
        out = out * geometric_factor((p,), names, caps)
    return out


def repunits(base: int, limit: int):
    """All sums 1 + base + ... + base^(m-1) up to limit."""
    out, value, power = [], 0, 1
    while True:
        value += power
        if value > limit:
            return out
        out.append(value)
        power *= base


def _digits_zero_one(n: int, base: int) -> bool:
    while n:
        if n % base > 1:
            return False
        n //= base
    return True


def b_indicator(a: int, b: int, base: int = 2) -> int:
    """1 iff base-`base` digits of a and b are all 0/1 and a+b is a repunit.

    Equals the coefficient of p^a q^b in 1 + sum_k prod_{j<=k}
    (p^(base^j) + q^(base^j)); endpoint terms with a zero component are
    admitted, matching the expanded polynomials.
    """
    if a < 0 or b < 0 or base < 2:
        raise SeriesError("need a, b >= 0 and base >= 2")
    if a == 0 and b == 0:
        return 1  # the empty product contributes the constant term
    if not (_digits_zero_one(a, base) and _digits_zero_one(b, base)):
        return 0
    return 1 if (a + b) in repunits(base, a + b) else 0


def b_indicator_series(caps: Caps, base: int = 2) -> Series:
    """1 + sum_k prod_{j<=k} (p^(base^j) + q^(base^j)) truncated to caps."""
    names = ("p", "q")
    out = Series.one(names, caps)
    limit = max(caps.limits)
    chain = Series.one(names, caps)
    power = 1
    total = 0
    while total + power <= 2 * limit:
        term = Series(names, caps, EXACT, {(power, 0): 1, (0, power): 1})
        chain = chain * term
        out = out + chain
        total += power
        power *= base
    return out


def beta2_product_series(caps: Caps) -> Series:
    """prod over k >= 0 of 1/(1 - q t^(2^k)) truncated to caps (q, t)."""
    names = ("q", "t")
    out = Series.one(names, caps)
    for p in _powers_upto(caps.limits[1]):
        out = out * geometric_factor((1, p), names, caps)
    return out


def beta2_distinct_series(caps: Caps) -> Series:
    """prod over 0 <= j <= k of (1 + q^(2^j) t^(2^k))."""
    names = ("q", "t")
    out = Series.one(names, caps)
    for k, pt in enumerate(_powers_upto(caps.limits[1])):
        for j, pq in enumerate(_powers_upto(caps.limits[0])):
            if j <= k:
                out = out * unit_binomial((pq, pt), names, caps, sign=1)
    return out


def beta2_grid(caps: Caps) -> PartitionGrid:
    """The beta grid, cross-checked over all four computation routes.

    Product route, distinct-product route, determinant route (column
    polynomials A_k), and the enumeration oracle must agree cell by cell.
    """
    series = beta2_product_series(caps)
    distinct = beta2_distinct_series(caps)
    if series != distinct:
        raise AssertionError("beta2 product routes disagree")
    cap_q, cap_t = caps.limits
    for k in range(1, cap_t + 1):
        ak = determinants.binary_Ak(k, cap_q)
        column = {e[0]: c for e, c in series.terms.items() if e[1] == k}
        if column != {e[0]: c for e, c in ak.terms.items()}:
            raise AssertionError(f"determinant route disagrees at t^{k}")
    parts = [(1, p) for p in _powers_upto(cap_t)]
    for j, k in itertools.product(range(cap_q + 1), range(cap_t + 1)):
        oracle = count_partitions((j, k), parts)
        got = series.terms.get((j, k), Fraction(0))
        if oracle != got:
            raise AssertionError(f"oracle disagrees at ({j},{k})")
    return PartitionGrid.from_series(series, caps)


def beta2_oracle(j: int, k: int, distinct_route: bool = False) -> int:
    """beta_2(j,k) by direct enumeration over either part system."""
    if distinct_route:
        parts = [(a, b) for a in _powers_upto(j or 1) for b in _powers_upto(k or 1)
                 if a <= b]
        return count_partitions((j, k), parts, DISTINCT)
    parts = [(1, p) for p in _powers_upto(k or 1)]
    return count_partitions((j, k), parts)


def _distinct_product(caps: Caps, names, exponents) -> Series:
    """prod (1 + X)^e over (monomial, e) pairs."""
    out = Series.one(names, caps)
    for mono, e in exponents:
        factor = unit_binomial(mono, names, caps, sign=1)
        for _ in range(e):
            out = out * factor
    return out


def _inverse_product(caps: Caps, names, exponents) -> Series:
    out = Series.one(names, caps)
    for mono, e in exponents:
        factor = geometric_factor(mono, names, caps)
        for _ in range(e):
            out = out * factor
    return out


def binary_transform_pair(spec: BinaryGridSpec, caps: Caps):
    """Both sides of the named distinct/unrestricted transform.

    full_quadrant: prod (1+y^(2^m) z^(2^n)) vs
        1/(1-yz) * prod_k 1/((1-y^(2^k) z)(1-y z^(2^k)))
    lower_diagonal: prod_{j<=k} (1+x^(2^j) y^(2^k)) vs prod_k 1/(1-x y^(2^k))
    pyramid_3d: prod_{i,k<=j} (1+x^(2^i) y^(2^j) z^(2^k)) vs
        1/(1-xyz) * prod_j [prod_{i<=j} 1/(1-x^(2^i) y^(2^j) z)
                            * prod_{1<=k<=j} 1/(1-x y^(2^j) z^(2^k))]
    """
    base = spec.base
    if spec.flavor == FULL_QUADRANT:
        names = ("y", "z")
        ypows = _powers_upto(caps.limits[0], base)
        zpows = _powers_upto(caps.limits[1], base)
        distinct = _distinct_product(
            caps, names, [((a, b), 1) for a in ypows for b in zpows])
        rhs = geometric_factor((1, 1), names, caps)
        for p in ypows[1:]:
            rhs = rhs * geometric_factor((p, 1), names, caps)
        for p in zpows[1:]:
            rhs = rhs * geometric_factor((1, p), names, caps)
        return distinct, rhs
    if spec.flavor == LOWER_DIAGONAL:
        names = ("x", "y")
        xpows = _powers_upto(caps.limits[0], base)
        ypows = _powers_upto(caps.limits[1], base)
        distinct = _distinct_product(
            caps, names,
            [((a, b), 1) for i, a in enumerate(xpows)
             for k, b in enumerate(ypows) if i <= k])
        rhs = Series.one(names, caps)
        for p in ypows:
            rhs = rhs * geometric_factor((1, p), names, caps)
        return distinct, rhs
    # PYRAMID_3D
    names = ("x", "y", "z")
    xpows = _powers_upto(caps.limits[0], base)
    ypows = _powers_upto(caps.limits[1], base)
    zpows = _powers_upto(caps.limits[2], base)
    lhs_parts = [((a, b, c), 1)
                 for i, a in enumerate(xpows)
                 for j, b in enumerate(ypows)
                 for k, c in enumerate(zpows)
                 if i <= j and k <= j]
    distinct = _distinct_product(caps, names, lhs_parts)
    rhs = geometric_factor((1, 1, 1), names, caps)
    for j, b in enumerate(ypows):
        if j == 0:
            continue
        for i, a in enumerate(xpows):
            if i <= j and a <= caps.limits[0]:
                rhs = rhs * geometric_factor((a, b, 1), names, caps)
        for k, c in enumerate(zpows):
            if 1 <= k <= j and c <= caps.limits[2]:
                rhs = rhs * geometric_factor((1, b, c), names, caps)
    return distinct, rhs


def unrestricted_b2_series(caps: Caps) -> Series:
    """B_2(y,z) = prod 1/(1 - y^(2^m) z^(2^n))."""
    names = ("y", "z")
    out = Series.one(names, caps)
    for a in _powers_upto(caps.limits[0]):
        for b in _powers_upto(caps.limits[1]):
            out = out * geometric_factor((a, b), names, caps)
    return out


def distinct_b2_series(caps: Caps) -> Series:
    """bold B_2(y,z) = prod (1 + y^(2^m) z^(2^n))."""
    names = ("y", "z")
    out = Series.one(names, caps)
    for a in _powers_upto(caps.limits[0]):
        for b in _powers_upto(caps.limits[1]):
            out = out * unit_binomial((a, b), names, caps, sign=1)
    return out


def min_plus_one_transform(caps: Caps):
    """thm: prod (1+X)^(min(m,n)+1) == prod 1/(1-X) over the binary grid."""
    names = ("y", "z")
    lhs = _distinct_product(
        caps, names,
        [((a, b), min(m, n) + 1)
         for m, a in enumerate(_powers_upto(caps.limits[0]))
         for n, b in enumerate(_powers_upto(caps.limits[1]))])
    return lhs, unrestricted_b2_series(caps)


def triangular_transform(caps: Caps):
    """prod (1+X)^T(min+1) == prod (1-X)^-(min+1) with T triangular numbers."""
    names = ("y", "z")
    pairs = [(a, b, min(m, n))
             for m, a in enumerate(_powers_upto(caps.limits[0]))
             for n, b in enumerate(_powers_upto(caps.limits[1]))]
    lhs = _distinct_product(
        caps, names, [((a, b), (m + 1) * (m + 2) // 2) for a, b, m in pairs])
    rhs = _inverse_product(caps, names, [((a, b), m + 1) for a, b, m in pairs])
    return lhs, rhs
