"""Closed-form right sides as expression trees, plus finite Euler sums.

Trees are JSON-serializable so custom identities can be supplied as
documents; every node evaluates to a Series under given caps and mode.
Evaluation errors carry the node path for diagnosis.
"""

from __future__ import annotations

from fractions import Fraction

from .series import Caps, EXACT, Series, SeriesError, polylog


class ExprError(SeriesError):
    def __init__(self, message, path=""):
        super().__init__(f"{message} (at node {path or 'root'})")


def _frac(value):
    if isinstance(value, str) and "/" in value:
        return Fraction(value)
    return Fraction(value)


def _mono_expo(mono: dict, names) -> tuple:
    expo = [0] * len(names)
    for name, power in mono.items():
        if name not in names:
            raise SeriesError(f"unknown variable {name!r}")
        expo[names.index(name)] += int(power)
    return tuple(expo)


# -- node constructors (plain dicts keep the JSON form primary) -----------------


def const(value) -> dict:
    return {"op": "const", "value": str(Fraction(value))}


def var(name: str, power: int = 1) -> dict:
    return mono({name: power})


def mono(exps: dict) -> dict:
    return {"op": "mono", "exps": {k: int(v) for k, v in exps.items()}}


def unit_binomial(exps: dict, sign: int = -1, scalar=1) -> dict:
    """1 + sign * scalar * X."""
    return {"op": "unit_binomial", "sign": sign, "scalar": str(Fraction(scalar)),
            "exps": {k: int(v) for k, v in exps.items()}}


def add(*args) -> dict:
    return {"op": "add", "args": list(args)}


def sub(a, b) -> dict:
    return add(a, mul(const(-1), b))


def neg(a) -> dict:
    return mul(const(-1), a)


def mul(*args) -> dict:
    return {"op": "mul", "args": list(args)}


def div_unit(numer, denom) -> dict:
    return {"op": "div_unit", "num": numer, "den": denom}


def pow_expr(base, exponent) -> dict:
    return {"op": "pow", "base": base, "exponent": exponent}


def exp_expr(arg) -> dict:
    return {"op": "exp", "arg": arg}


def log_expr(arg) -> dict:
    return {"op": "log", "arg": arg}


def polylog_expr(s, exps: dict) -> dict:
    return {"op": "polylog", "s": str(Fraction(s)),
            "exps": {k: int(v) for k, v in exps.items()}}


def partial_sum(factors, driver_var: str, driver_power) -> dict:
    """sum over k>=1 of prod_i (sum_{j<=k} x_i^j / j^b_i) * d^k / k^b.

    `factors` is a list of (variable name or None, b_i); a None variable means
    the factor is the finite Euler sum S_{-b_i}(k) over the constant base 1.
    The driver variable's cap bounds the outer sum.
    """
    return {"op": "partial_sum",
            "factors": [{"var": v, "b": str(Fraction(b))} for v, b in factors],
            "driver": {"var": driver_var, "b": str(Fraction(driver_power))}}


# -- evaluation ------------------------------------------------------------------


def build_closed_form(node: dict, names, caps: Caps, mode: str = EXACT,
                      _path: str = "") -> Series:
    """Evaluate an expression tree to a truncated Series."""
    names = tuple(names)
    if not isinstance(node, dict) or "op" not in node:
        raise ExprError("malformed node", _path)
    op = node["op"]
    try:
        if op == "const":
            value = _frac(node["value"])
            return Series.constant(value if mode == EXACT else float(value),
                                   names, caps, mode)
        if op == "mono":
            expo = _mono_expo(node["exps"], names)
            return Series.monomial(expo, names, caps, mode)
        if op == "unit_binomial":
            expo = _mono_expo(node["exps"], names)
            scalar = _frac(node.get("scalar", 1))
            sign = int(node.get("sign", -1))
            coeff = sign * (scalar if mode == EXACT else float(scalar))
            terms = {(0,) * len(names): 1, expo: coeff}
            return Series(names, caps, mode, terms)
        if op == "add":
            out = Series.zero(names, caps, mode)
            for i, arg in enumerate(node["args"]):
                out = out + build_closed_form(arg, names, caps, mode, f"{_path}.add[{i}]")
            return out
        if op == "mul":
            out = Series.one(names, caps, mode)
            for i, arg in enumerate(node["args"]):
                out = out * build_closed_form(arg, names, caps, mode, f"{_path}.mul[{i}]")
            return out
        if op == "div_unit":
            numer = build_closed_form(node["num"], names, caps, mode, _path + ".num")
            denom = build_closed_form(node["den"], names, caps, mode, _path + ".den")
            return numer * denom.inverse()
        if op == "pow":
            base = build_closed_form(node["base"], names, caps, mode, _path + ".base")
            exponent = node["exponent"]
            if isinstance(exponent, (str, int)):
                value = _frac(exponent)
                return base.pow(value if mode == EXACT else
                                (value if value.denominator == 1 else float(value)))
            return base.pow(build_closed_form(exponent, names, caps, mode,
                                              _path + ".exponent"))
        if op == "exp":
            return build_closed_form(node["arg"], names, caps, mode, _path + ".arg").exp()
        if op == "log":
            return build_closed_form(node["arg"], names, caps, mode, _path + ".arg").log()
        if op == "polylog":
            s = _frac(node["s"])
            expo = _mono_expo(node["exps"], names)
            return polylog(s if s.denominator != 1 else int(s), expo, names, caps, mode)
        if op == "partial_sum":
            return _partial_sum(node, names, caps, mode)
    except ExprError:
        raise
    except SeriesError as err:
        raise ExprError(str(err), _path + "." + op) from err
    raise ExprError(f"unknown op {op!r}", _path)


def _power_coeff(j: int, b: Fraction, mode: str):
    """1 / j^b as a coefficient (rational b only in approx mode)."""
    if b.denominator == 1:
        e = int(b)
        value = Fraction(1, j ** e) if e >= 0 else Fraction(j ** (-e))
        return value if mode == EXACT else float(value)
    if mode == EXACT:
        raise SeriesError("rational power-sum exponent requires approx mode")
    return float(j) ** float(-b)


def _partial_sum(node: dict, names, caps: Caps, mode: str) -> Series:
    driver = node["driver"]
    dvar = driver["var"]
    db = _frac(driver["b"])
    if dvar not in names:
        raise SeriesError(f"unknown driver variable {dvar!r}")
    didx = names.index(dvar)
    kmax = caps.limits[didx]
    if caps.total is not None:
        kmax = min(kmax, caps.total)
    out = Series.zero(names, caps, mode)
    partials = []
    for spec in node["factors"]:
        partials.append([spec["var"], _frac(spec["b"]),
                         Series.zero(names, caps, mode)])
    for k in range(1, kmax + 1):
        term = Series.monomial(tuple(k if i == didx else 0 for i in range(len(names))),
                               names, caps, mode).scale(_power_coeff(k, db, mode))
        for spec in partials:
            fvar, fb, acc = spec
            if fvar is None:
                inc = Series.constant(_power_coeff(k, fb, mode), names, caps, mode)
            else:
                if fvar not in names:
                    raise SeriesError(f"unknown factor variable {fvar!r}")
                fidx = names.index(fvar)
                expo = tuple(k if i == fidx else 0 for i in range(len(names)))
                inc = Series.monomial(expo, names, caps, mode) \
                    .scale(_power_coeff(k, fb, mode))
            spec[2] = acc + inc
            term = term * spec[2]
        out = out + term
    return out


# -- finite Euler sums -------------------------------------------------------------

_EULER_CLOSED = {
    1: lambda n: Fraction(n, 2) + Fraction(n * n, 2),
    2: lambda n: Fraction(n, 6) + Fraction(n * n, 2) + Fraction(n ** 3, 3),
    3: lambda n: Fraction(n * n, 4) + Fraction(n ** 3, 2) + Fraction(n ** 4, 4),
    4: lambda n: Fraction(-n, 30) + Fraction(n ** 3, 3) + Fraction(n ** 4, 2)
    + Fraction(n ** 5, 5),
}


def finite_euler_sum(p: int, n: int) -> Fraction:
    """Closed form of sum_{k=1}^{n} k^p for p in 1..4 (checked against it)."""
    if p not in _EULER_CLOSED:
        raise SeriesError("p must be in 1..4")
    if n < 0:
        raise SeriesError("n must be >= 0")
    return _EULER_CLOSED[p](n)


def finite_euler_sum_direct(p: int, n: int) -> int:
    return sum(k ** p for k in range(1, n + 1))


def geometric_moment(p: int, n: int, names=("z",), cap: int | None = None) -> Series:
    """sum_{k=1}^{n} k^p z^k as a truncated series (direct summation)."""
    if p not in (1, 2, 3, 4):
        raise SeriesError("p must be in 1..4")
    cap = cap if cap is not None else n
    caps = Caps.of([cap])
    terms = {(k,): Fraction(k ** p) for k in range(1, min(n, cap) + 1)}
    return Series(tuple(names), caps, EXACT, terms)


def geometric_moment_closed(p: int, n: int, names=("z",), cap: int | None = None) -> Series:
    """The rational closed forms of the z-weighted moments, expanded to caps."""
    cap = cap if cap is not None else n
    caps = Caps.of([cap])
    names = tuple(names)
    one = Series.one(names, caps)

    def zp(power, coeff=1):
        if power > cap:
            return Series.zero(names, caps)
        return Series.monomial((power,), names, caps, coeff=Fraction(coeff))

    inv = (one - zp(1)).inverse()
    if p == 1:
        numer = zp(1) + zp(n + 1, -(1 + n)) + zp(n + 2, n)
        return numer * inv.pow(2)
    if p == 2:
        numer = (zp(n + 3, -n ** 2) + zp(n + 2, 2 * n * n + 2 * n - 1)
                 + zp(n + 1, -(n * n + 2 * n + 1)) + zp(2) + zp(1))
        return numer * inv.pow(3)
    if p == 3:
        numer = (zp(n + 4, n ** 3) + zp(n + 2, 3 * n ** 3 + 6 * n ** 2 - 4)
                 + zp(n + 3, -(3 * n ** 3 + 3 * n ** 2 - 3 * n + 1))
                 + zp(n + 1, -(n + 1) ** 3) + zp(3) + zp(2, 4) + zp(1))
        return numer * inv.pow(4)
    if p == 4:
        # sign of the z^(n+2) coefficient corrected against direct summation
        numer = (zp(n + 5, n ** 4)
                 + zp(n + 4, -4 * n ** 4 - 4 * n ** 3 + 6 * n ** 2 - 4 * n + 1)
                 + zp(n + 3, 6 * n ** 4 + 12 * n ** 3 - 6 * n ** 2 - 12 * n + 11)
                 + zp(n + 2, -(4 * n ** 4 + 12 * n ** 3 + 6 * n ** 2 - 12 * n - 11))
                 + zp(n + 1, (n + 1) ** 4) + zp(4, -1) + zp(3, -11) + zp(2, -11)
                 + zp(1, -1))
        return numer.scale(-1) * inv.pow(5)
    raise SeriesError("p must be in 1..4")
