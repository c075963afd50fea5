"""Exact truncated multivariate formal power series.

A :class:`Series` is a sparse association from exponent vectors to nonzero
coefficients, truncated by per-variable caps (optionally plus a total-degree
cap).  In ``exact`` mode coefficients are `fractions.Fraction` and every
operation is exact; ``approx`` mode stores 64-bit floats and exists only to
host irrational weights.  A single series never mixes modes, and operations on
two series require identical variable names, caps and mode.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

EXACT = "exact"
APPROX = "approx"

Coeff = Union[Fraction, float]
Expo = tuple  # tuple[int, ...]


class SeriesError(ValueError):
    """Raised on contract violations: incompatible operands, bad exponents."""


@dataclass(frozen=True)
class Caps:
    """Truncation window: per-variable maxima plus an optional total cap."""

    limits: tuple
    total: int | None = None

    def __post_init__(self):
        if any(c < 0 for c in self.limits):
            raise SeriesError("caps must be non-negative")
        if self.total is not None and self.total < 0:
            raise SeriesError("total cap must be non-negative")

    def admits(self, expo: Expo) -> bool:
        if any(e > c for e, c in zip(expo, self.limits)):
            return False
        return self.total is None or sum(expo) <= self.total

    def max_order(self) -> int:
        """Largest total degree any retained term can have."""
        box = sum(self.limits)
        return box if self.total is None else min(box, self.total)

    @staticmethod
    def of(limits: Sequence[int], total: int | None = None) -> "Caps":
        return Caps(tuple(int(c) for c in limits), total)


def _as_coeff(value, mode: str) -> Coeff:
    if mode == EXACT:
        if isinstance(value, float):
            raise SeriesError("float coefficient in exact mode")
        return value if isinstance(value, Fraction) else Fraction(value)
    return float(value)


class Series:
    """Truncated multivariate formal power series with sparse storage."""

    __slots__ = ("names", "caps", "mode", "terms")

    def __init__(self, names, caps: Caps, mode: str, terms: Mapping[Expo, Coeff],
                 _trusted: bool = False):
        names = tuple(names)
        if mode not in (EXACT, APPROX):
            raise SeriesError(f"unknown mode {mode!r}")
        if len(caps.limits) != len(names):
            raise SeriesError("caps arity does not match variable names")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "caps", caps)
        object.__setattr__(self, "mode", mode)
        if _trusted:
            object.__setattr__(self, "terms", dict(terms))
            return
        clean: dict[Expo, Coeff] = {}
        for expo, value in terms.items():
            expo = tuple(int(e) for e in expo)
            if len(expo) != len(names):
                raise SeriesError(f"exponent {expo} does not match arity {len(names)}")
            if any(e < 0 for e in expo):
                raise SeriesError(f"negative exponent in {expo}")
            if not caps.admits(expo):
                continue
            value = _as_coeff(value, mode)
            if value != 0:
                acc = clean.get(expo)
                new = value if acc is None else acc + value
                if new == 0:
                    clean.pop(expo, None)
                else:
                    clean[expo] = new
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("Series is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, names, caps: Caps, mode: str = EXACT) -> "Series":
        return cls(names, caps, mode, {}, _trusted=True)

    @classmethod
    def constant(cls, value, names, caps: Caps, mode: str = EXACT) -> "Series":
        return cls(names, caps, mode, {(0,) * len(tuple(names)): value})

    @classmethod
    def one(cls, names, caps: Caps, mode: str = EXACT) -> "Series":
        return cls.constant(1, names, caps, mode)

    @classmethod
    def monomial(cls, expo, names, caps: Caps, mode: str = EXACT, coeff=1) -> "Series":
        return cls(names, caps, mode, {tuple(expo): coeff})

    @classmethod
    def variable(cls, name: str, names, caps: Caps, mode: str = EXACT) -> "Series":
        names = tuple(names)
        expo = tuple(1 if n == name else 0 for n in names)
        if sum(expo) != 1:
            raise SeriesError(f"unknown variable {name!r}")
        return cls.monomial(expo, names, caps, mode)

    @classmethod
    def from_terms(cls, terms: Iterable, names, caps: Caps, mode: str = EXACT) -> "Series":
        """Normalize a (monomial, coefficient) list into a Series."""
        acc: dict[Expo, list] = {}
        data = {}
        for expo, value in terms:
            expo = tuple(expo)
            acc.setdefault(expo, []).append(value)
        for expo, values in acc.items():
            total = values[0]
            for v in values[1:]:
                total = total + v
            data[expo] = total
        return cls(names, caps, mode, data)

    # -- helpers -----------------------------------------------------------

    def _check_compatible(self, other: "Series"):
        if not isinstance(other, Series):
            raise SeriesError(f"expected Series, got {type(other).__name__}")
        if (self.names != other.names or self.caps != other.caps
                or self.mode != other.mode):
            raise SeriesError("incompatible series (names/caps/mode differ)")

    def _lift(self, scalar) -> "Series":
        return Series.constant(scalar, self.names, self.caps, self.mode)

    def _coerce(self, other):
        if isinstance(other, Series):
            self._check_compatible(other)
            return other
        if isinstance(other, (int, Fraction)) or (self.mode == APPROX and isinstance(other, float)):
            return self._lift(other)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Coeff:
        zero = Fraction(0) if self.mode == EXACT else 0.0
        return self.terms.get((0,) * len(self.names), zero)

    def min_order(self) -> int:
        """Smallest total degree among stored terms (0 for the zero series)."""
        return min((sum(e) for e in self.terms), default=0)

    def __eq__(self, other):
        if isinstance(other, Series):
            return (self.names == other.names and self.caps == other.caps
                    and self.mode == other.mode and self.terms == other.terms)
        return NotImplemented

    def __hash__(self):
        return hash((self.names, self.caps, self.mode,
                     tuple(sorted(self.terms.items()))))

    def __repr__(self):
        shown = sorted(self.terms.items())[:6]
        body = " + ".join(f"{c}*{e}" for e, c in shown) or "0"
        more = "" if len(self.terms) <= 6 else f" (+{len(self.terms) - 6} terms)"
        return f"<Series[{','.join(self.names)}] {body}{more}>"

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for expo, value in other.terms.items():
            new = terms.get(expo, 0) + value
            if new == 0:
                terms.pop(expo, None)
            else:
                terms[expo] = new
        return Series(self.names, self.caps, self.mode, terms, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.names, self.caps, self.mode,
                      {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) or (self.mode == APPROX and isinstance(other, float)):
            return self.scale(other)
        if not isinstance(other, Series):
            return NotImplemented
        self._check_compatible(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        caps = self.caps
        out: dict[Expo, Coeff] = {}
        limits = caps.limits
        total = caps.total
        for ea, ca in a.items():
            for eb, cb in b.items():
                expo = tuple(x + y for x, y in zip(ea, eb))
                if any(e > c for e, c in zip(expo, limits)):
                    continue
                if total is not None and sum(expo) > total:
                    continue
                new = out.get(expo, 0) + ca * cb
                if new == 0:
                    out.pop(expo, None)
                else:
                    out[expo] = new
        return Series(self.names, self.caps, self.mode, out, _trusted=True)

    __rmul__ = __mul__

    def scale(self, scalar) -> "Series":
        scalar = _as_coeff(scalar, self.mode)
        if scalar == 0:
            return Series.zero(self.names, self.caps, self.mode)
        return Series(self.names, self.caps, self.mode,
                      {e: c * scalar for e, c in self.terms.items()}, _trusted=True)

    def inverse(self) -> "Series":
        """Multiplicative inverse; requires a nonzero constant term."""
        c0 = self.constant_term()
        if c0 == 0:
            raise SeriesError("division by a series with zero constant term")
        inv0 = (Fraction(1) / c0) if self.mode == EXACT else 1.0 / c0
        u = Series.one(self.names, self.caps, self.mode) - self.scale(inv0)
        out = Series.one(self.names, self.caps, self.mode)
        power = Series.one(self.names, self.caps, self.mode)
        for _ in range(self.caps.max_order()):
            power = power * u
            if power.is_zero():
                break
            out = out + power
        return out.scale(inv0)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    # -- transcendental operations -------------------------------------------

    def exp(self) -> "Series":
        """exp of a series with zero constant term: sum of a^k / k!."""
        if self.constant_term() != 0:
            raise SeriesError("exp needs zero constant term")
        out = Series.one(self.names, self.caps, self.mode)
        term = Series.one(self.names, self.caps, self.mode)
        k = 0
        bound = self.caps.max_order()
        while k < bound:
            k += 1
            term = term * self
            if self.mode == EXACT:
                term = term.scale(Fraction(1, k))
            else:
                term = term.scale(1.0 / k)
            if term.is_zero():
                break
            out = out + term
        return out

    def log(self) -> "Series":
        """log of a series with constant term 1 (Mercator expansion)."""
        if self.constant_term() != 1:
            raise SeriesError("log needs constant term 1")
        u = self - Series.one(self.names, self.caps, self.mode)
        out = Series.zero(self.names, self.caps, self.mode)
        power = Series.one(self.names, self.caps, self.mode)
        for k in range(1, self.caps.max_order() + 1):
            power = power * u
            if power.is_zero():
                break
            coeff = Fraction(-1 if k % 2 == 0 else 1, k) if self.mode == EXACT \
                else (-1.0 if k % 2 == 0 else 1.0) / k
            out = out + power.scale(coeff)
        return out

    def pow(self, exponent) -> "Series":
        """Raise a unit series (constant term 1) to a series-valued power.

        Constant exponents take the binomial route (exact for any Fraction);
        series exponents evaluate exp(exponent * log(base)).
        """
        if isinstance(exponent, (int, Fraction)) or \
                (self.mode == APPROX and isinstance(exponent, float)):
            if isinstance(exponent, int) and exponent >= 0 and self.constant_term() != 1:
                out = Series.one(self.names, self.caps, self.mode)
                for _ in range(exponent):
                    out = out * self
                return out
            if self.constant_term() != 1:
                raise SeriesError("pow needs base with constant term 1")
            u = self - Series.one(self.names, self.caps, self.mode)
            out = Series.one(self.names, self.caps, self.mode)
            power = Series.one(self.names, self.caps, self.mode)
            binom = Fraction(1) if self.mode == EXACT else 1.0
            r = Fraction(exponent) if self.mode == EXACT else float(exponent)
            for k in range(1, self.caps.max_order() + 1):
                power = power * u
                if power.is_zero():
                    break
                binom = binom * (r - (k - 1)) / k
                if binom == 0:
                    break
                out = out + power.scale(binom)
            return out
        exponent = self._coerce(exponent)
        if exponent is None:
            raise SeriesError("unsupported exponent type")
        if self.constant_term() != 1:
            raise SeriesError("pow needs base with constant term 1")
        return (exponent * self.log()).exp()

    __pow__ = pow

    def derivative(self, name: str) -> "Series":
        idx = self.names.index(name)
        out: dict[Expo, Coeff] = {}
        for expo, value in self.terms.items():
            if expo[idx] == 0:
                continue
            new = list(expo)
            new[idx] -= 1
            out[tuple(new)] = value * expo[idx]
        return Series(self.names, self.caps, self.mode, out, _trusted=True)

    # -- reindexing ----------------------------------------------------------

    def substitute(self, assignments: Mapping[str, tuple], names, caps: Caps) -> "Series":
        """Map each variable to scalar * monomial-over-new-variables.

        ``assignments[name] = (scalar, {new_name: exponent, ...})`` must cover
        every variable of this series.  The hyperdiagonal is the special case
        of every variable going to the same new variable.
        """
        names = tuple(names)
        missing = [n for n in self.names if n not in assignments]
        if missing:
            raise SeriesError(f"missing assignment for {missing}")
        images = []
        for n in self.names:
            scalar, mono = assignments[n]
            expo = [0] * len(names)
            for target, power in mono.items():
                if target not in names:
                    raise SeriesError(f"unknown target variable {target!r}")
                expo[names.index(target)] += int(power)
            images.append((_as_coeff(scalar, self.mode), tuple(expo)))
        out: dict[Expo, Coeff] = {}
        for expo, value in self.terms.items():
            new_expo = [0] * len(names)
            coeff = value
            for e, (scalar, image) in zip(expo, images):
                if e == 0:
                    continue
                coeff = coeff * scalar ** e
                for i, p in enumerate(image):
                    new_expo[i] += p * e
            key = tuple(new_expo)
            if not caps.admits(key) or coeff == 0:
                continue
            new = out.get(key, 0) + coeff
            if new == 0:
                out.pop(key, None)
            else:
                out[key] = new
        return Series(names, caps, self.mode, out, _trusted=True)

    def evaluate_var(self, name: str, value) -> "Series":
        """Substitute one variable by a scalar, exactly accumulating coefficients."""
        if name not in self.names:
            raise SeriesError(f"unknown variable {name!r}")
        idx = self.names.index(name)
        value = _as_coeff(value, self.mode)
        names = self.names[:idx] + self.names[idx + 1:]
        caps = Caps(self.caps.limits[:idx] + self.caps.limits[idx + 1:], self.caps.total)
        out: dict[Expo, Coeff] = {}
        for expo, coeff in self.terms.items():
            key = expo[:idx] + expo[idx + 1:]
            coeff = coeff * value ** expo[idx]
            new = out.get(key, 0) + coeff
            if new == 0:
                out.pop(key, None)
            else:
                out[key] = new
        return Series(names, caps, self.mode, out, _trusted=True)

    def coefficient(self, expo) -> Coeff:
        """Stored coefficient at `expo`; querying outside caps is an error."""
        expo = tuple(int(e) for e in expo)
        if len(expo) != len(self.names):
            raise SeriesError("monomial arity mismatch")
        if not self.caps.admits(expo):
            raise SeriesError(f"monomial {expo} outside caps (unanswerable query)")
        zero = Fraction(0) if self.mode == EXACT else 0.0
        return self.terms.get(expo, zero)

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        """Canonical JSON form with terms sorted lexicographically."""
        terms = []
        for expo in sorted(self.terms):
            coeff = self.terms[expo]
            if self.mode == EXACT:
                terms.append({"e": list(expo), "n": str(coeff.numerator),
                              "d": str(coeff.denominator)})
            else:
                terms.append({"e": list(expo), "v": coeff})
        doc = {"vars": list(self.names), "caps": list(self.caps.limits),
               "mode": self.mode, "terms": terms}
        if self.caps.total is not None:
            doc["total_cap"] = self.caps.total
        return doc

    def dumps(self, indent=None) -> str:
        return json.dumps(self.to_json(), indent=indent)

    @classmethod
    def from_json(cls, doc: dict) -> "Series":
        caps = Caps.of(doc["caps"], doc.get("total_cap"))
        mode = doc["mode"]
        terms = {}
        for item in doc["terms"]:
            expo = tuple(item["e"])
            if mode == EXACT:
                terms[expo] = Fraction(int(item["n"]), int(item["d"]))
            else:
                terms[expo] = float(item["v"])
        return cls(doc["vars"], caps, mode, terms)


# -- stock factors -------------------------------------------------------------


def unit_binomial(mono, names, caps: Caps, mode: str = EXACT, sign=1, scalar=1) -> Series:
    """The factor 1 + sign * scalar * X for a monomial X."""
    expo = tuple(mono)
    one = (0,) * len(tuple(names))
    return Series(names, caps, mode, {one: 1, expo: sign * _as_coeff(scalar, mode)})


def unit_binomial_pow(mono, exponent, names, caps: Caps, mode: str = EXACT,
                      sign=1, scalar=1) -> Series:
    """(1 + sign*scalar*X)^exponent expanded directly by the binomial series."""
    names = tuple(names)
    expo = tuple(mono)
    if all(e == 0 for e in expo):
        raise SeriesError("unit binomial needs a nonconstant monomial")
    if not caps.admits(expo):
        return Series.one(names, caps, mode)
    scalar = _as_coeff(sign * scalar if mode == EXACT else float(sign) * scalar, mode)
    r = _as_coeff(exponent, mode)
    terms: dict[Expo, Coeff] = {(0,) * len(names): _as_coeff(1, mode)}
    binom = _as_coeff(1, mode)
    power = _as_coeff(1, mode)
    k = 0
    while True:
        k += 1
        key = tuple(e * k for e in expo)
        if not caps.admits(key):
            break
        binom = binom * (r - (k - 1)) / k
        power = power * scalar
        if binom == 0:
            break
        terms[key] = binom * power
    return Series(names, caps, mode, terms)


def geometric_factor(mono, names, caps: Caps, mode: str = EXACT) -> Series:
    """1/(1 - X) = sum of X^n for a monomial X, truncated to caps."""
    names = tuple(names)
    expo = tuple(mono)
    if all(e == 0 for e in expo):
        raise SeriesError("geometric factor needs a nonconstant monomial")
    terms: dict[Expo, Coeff] = {}
    k = 0
    while True:
        key = tuple(e * k for e in expo)
        if not caps.admits(key):
            break
        terms[key] = _as_coeff(1, mode)
        k += 1
    return Series(names, caps, mode, terms)


def polylog(s, mono, names, caps: Caps, mode: str = EXACT) -> Series:
    """Truncated polylogarithm Li_s(X) = sum over k >= 1 of X^k / k^s.

    Integer s <= 0 goes through the closed rational forms (chained through the
    Euler operator below -3); rational s is only available in approx mode.
    """
    names = tuple(names)
    expo = tuple(mono)
    if all(e == 0 for e in expo):
        raise SeriesError("polylog needs a nonconstant argument")
    if isinstance(s, Fraction) and s.denominator == 1:
        s = int(s)
    if not isinstance(s, int):
        if mode == EXACT:
            raise SeriesError("rational polylog order requires approx mode")
        s = float(s)
        terms: dict[Expo, Coeff] = {}
        k = 0
        while True:
            k += 1
            key = tuple(e * k for e in expo)
            if not caps.admits(key):
                break
            terms[key] = k ** (-s)
        return Series(names, caps, mode, terms)
    if s >= 1:
        terms = {}
        k = 0
        while True:
            k += 1
            key = tuple(e * k for e in expo)
            if not caps.admits(key):
                break
            terms[key] = (Fraction(1, k ** s) if mode == EXACT else k ** float(-s))
        return Series(names, caps, mode, terms)
    x = Series.monomial(expo, names, caps, mode)
    one = Series.one(names, caps, mode)
    inv = (one - x).inverse()
    if s == 0:
        return x * inv
    if s == -1:
        return x * inv * inv
    if s == -2:
        return x * (one + x) * inv * inv * inv
    if s == -3:
        x2 = x * x
        return x * (one + x.scale(4) + x2) * inv.pow(4)
    # below -3: apply the Euler operator X d/dX repeatedly
    out = polylog(-3, expo, names, caps, mode)
    order = -3
    while order > s:
        bumped: dict[Expo, Coeff] = {}
        for key, value in out.terms.items():
            k = _multiple_of(key, expo)
            bumped[key] = value * k
        out = Series(names, caps, mode, bumped, _trusted=True)
        order -= 1
    return out


def _multiple_of(key: Expo, expo: Expo) -> int:
    for k, e in zip(key, expo):
        if e:
            return k // e
    raise SeriesError("zero monomial")


# -- comparison helpers ---------------------------------------------------------


def max_rel_error(a: Series, b: Series) -> float:
    """max over monomials of |a-b| / max(1, |a|, |b|)."""
    worst = 0.0
    for expo in set(a.terms) | set(b.terms):
        ca = float(a.terms.get(expo, 0))
        cb = float(b.terms.get(expo, 0))
        err = abs(ca - cb) / max(1.0, abs(ca), abs(cb))
        worst = max(worst, err)
    return worst


def first_mismatch(a: Series, b: Series, tolerance: float = 0.0):
    """First (lex) monomial where the two series differ, or None.

    Exact series compare bit-exactly; a nonzero tolerance applies the relative
    criterion used for approx mode.
    """
    for expo in sorted(set(a.terms) | set(b.terms)):
        ca = a.terms.get(expo, Fraction(0) if a.mode == EXACT else 0.0)
        cb = b.terms.get(expo, Fraction(0) if b.mode == EXACT else 0.0)
        if tolerance == 0.0:
            if ca != cb:
                return expo, ca, cb
        else:
            if abs(float(ca) - float(cb)) > tolerance * max(1.0, abs(float(ca)), abs(float(cb))):
                return expo, ca, cb
    return None


def series_equal(a: Series, b: Series, tolerance: float = 0.0) -> bool:
    return first_mismatch(a, b, tolerance) is None


def to_approx(a: Series) -> Series:
    """Float copy of an exact series (for exact-vs-approx agreement checks)."""
    if a.mode == APPROX:
        return a
    return Series(a.names, a.caps, APPROX,
                  {e: float(c) for e, c in a.terms.items()}, _trusted=True)


def binomial(r, k: int):
    """Generalized binomial coefficient with Fraction upper argument."""
    r = Fraction(r)
    out = Fraction(1)
    for i in range(k):
        out = out * (r - i) / (i + 1)
    return out


def exact_sqrt_is_rational(n: int) -> bool:
    root = math.isqrt(n)
    return root * root == n
