"""Exact-valuation arithmetic in Z_p and its totally ramified extensions.

A context fixes a prime p, a ramification index e and a working precision
K.  Elements of Q_p(pi), where pi^e = p, are stored as a unit part times a
power of pi.  The unit part is a coefficient vector (a_0, ..., a_{e-1})
representing sum a_i * pi^i with integer a_i, each kept modulo the power
of p that is still meaningful at the carried precision.  Because the
candidate valuations e*vp(a_i) + i are pairwise distinct mod e, the
valuation of a nonzero element is read off exactly as their minimum; no
approximation is involved.  Products reduce pi^e to p on overflow, so a
carry in base-pi digit arithmetic jumps e positions.

Precision is absolute and counted in pi-units: a number with ``prec`` K is
known modulo pi^K.  A value whose digits all vanish below its precision is
flagged ``is_zero``; such a value has no exact valuation and any query for
one raises, forcing callers to branch explicitly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from random import Random
from typing import Iterable, Sequence

from .errors import ContextMismatch, DomainError, PrecisionExhausted

__all__ = [
    "PrimeContext",
    "PadicNumber",
    "ZeroAtPrecision",
    "ctx_new",
    "equals_to_precision",
    "sample",
]


def _vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


class ZeroAtPrecision:
    """Marker returned by ``valuation`` for values flagged as zero.

    ``bound`` is the one thing actually known: the valuation is at least
    this many p-units.  The marker deliberately supports no ordering, so
    code that needs a number must branch on ``is_zero`` first.
    """

    __slots__ = ("bound",)

    def __init__(self, bound: Fraction):
        self.bound = bound

    def __repr__(self) -> str:
        return f"ZeroAtPrecision(>= {self.bound})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ZeroAtPrecision) and self.bound == other.bound

    def __hash__(self) -> int:
        return hash(("ZeroAtPrecision", self.bound))


class PrimeContext:
    """Fixed arena for arithmetic: prime p, ramification e, precision K.

    K counts pi-units, so K = 60*e carries sixty base-p digits worth of
    information regardless of e.  Contexts are compared by identity;
    mixing numbers from two contexts is an error even if the parameters
    agree.
    """

    __slots__ = ("p", "e", "K", "_pp")

    def __init__(self, p: int, e: int, K: int | None = None):
        if not _is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if e < 1:
            raise ValueError(f"ramification index must be >= 1, got {e}")
        if K is None:
            K = 60 * e
        if K < 2 * e:
            raise ValueError(f"precision K={K} too small, need at least 2*e={2 * e}")
        self.p = p
        self.e = e
        self.K = K
        self._pp: dict[int, int] = {}

    def _ppow(self, m: int) -> int:
        pw = self._pp.get(m)
        if pw is None:
            pw = self.p ** m
            self._pp[m] = pw
        return pw

    def __repr__(self) -> str:
        return f"PrimeContext(p={self.p}, e={self.e}, K={self.K})"

    # -- constructors -------------------------------------------------

    def zero(self, prec: int | None = None) -> "PadicNumber":
        return PadicNumber(self, 0, (), self.K if prec is None else prec, True)

    def one(self, prec: int | None = None) -> "PadicNumber":
        if prec is None:
            return self.from_int(1)
        if prec < 1:
            raise ValueError("one() needs at least one digit of precision")
        vec = [0] * self.e
        vec[0] = 1
        return PadicNumber(self, 0, _vec_reduce(self, vec, prec), prec, False)

    def from_int(self, n: int) -> "PadicNumber":
        return self.from_rational(n, 1)

    def from_rational(self, num: int, den: int = 1) -> "PadicNumber":
        """Exact image of num/den at full precision K.

        The denominator may be divisible by p; the result then has
        negative valuation.
        """
        if den == 0:
            raise ValueError("zero denominator")
        if num == 0:
            return self.zero()
        frac = Fraction(num, den)
        num, den = frac.numerator, frac.denominator
        a = _vp(num, self.p)
        b = _vp(den, self.p)
        val = self.e * (a - b)
        rel = self.K - val
        m = _ceil_div(rel, self.e)
        mod = self._ppow(m)
        u = (num // self._ppow(a)) * pow(den // self._ppow(b), -1, mod) % mod
        vec = [0] * self.e
        vec[0] = u
        return PadicNumber(self, val, _vec_reduce(self, vec, rel), self.K, False)

    def uniformizer(self) -> "PadicNumber":
        return self.pi_pow(1)

    def pi_pow(self, t: int) -> "PadicNumber":
        """pi^t, carried at relative precision K."""
        vec = [0] * self.e
        vec[0] = 1
        return PadicNumber(self, t, _vec_reduce(self, vec, self.K), self.K + t, False)

    def from_digits(self, val: int, digits: Sequence[int], prec: int | None = None) -> "PadicNumber":
        """Number pi^val * sum digits[k] pi^k from base-p digits, low order first."""
        if prec is None:
            prec = val + len(digits)
        rel = prec - val
        if rel < 1:
            raise ValueError("a nonzero literal needs at least one digit below precision")
        if len(digits) != rel:
            raise ValueError(f"expected {rel} digits for val={val}, prec={prec}, got {len(digits)}")
        if any(d < 0 or d >= self.p for d in digits):
            raise ValueError("digit out of range")
        if rel > 0 and digits[0] == 0:
            raise ValueError("leading digit must be nonzero (valuation is exact)")
        vec = [0] * self.e
        for k, d in enumerate(digits):
            f, r = divmod(k, self.e)
            vec[r] += d * self._ppow(f)
        return PadicNumber(self, val, _vec_reduce(self, vec, rel), prec, False)

    # -- parsing ------------------------------------------------------

    _FORM = re.compile(r"^(pi|p)\^(-?\d+|inf)\*\(([0-9 ]*); prec=(-?\d+)\)$")

    def parse(self, text: str) -> "PadicNumber":
        """Inverse of ``render``; accepts only the exact printed form."""
        m = self._FORM.match(text.strip())
        if m is None:
            raise ValueError(f"not a valid p-adic literal: {text!r}")
        token, val_s, digit_s, prec_s = m.groups()
        want = "p" if self.e == 1 else "pi"
        if token != want:
            raise ValueError(f"uniformizer token {token!r} does not match context (expected {want!r})")
        prec = int(prec_s)
        if val_s == "inf":
            if digit_s.strip():
                raise ValueError("zero literal must carry no digits")
            return self.zero(prec)
        val = int(val_s)
        digits = [int(t) for t in digit_s.split()] if digit_s.strip() else []
        return self.from_digits(val, digits, prec)

    def from_json(self, obj: dict) -> "PadicNumber":
        if obj.get("p") != self.p or obj.get("e") != self.e:
            raise ValueError("context parameters in JSON object do not match")
        if obj["val"] is None:
            return self.zero(obj["prec"])
        return self.from_digits(obj["val"], obj["digits"], obj["prec"])


def ctx_new(p: int, e: int = 1, K: int | None = None) -> PrimeContext:
    return PrimeContext(p, e, K)


# -- coefficient-vector helpers ---------------------------------------
#
# A vector is a list of e integers for sum vec[i]*pi^i, meaningful modulo
# pi^rel for whatever rel the caller tracks.  Vectors are kept reduced:
# vec[i] canonical in [0, p^ceil((rel-i)/e)).


def _vec_reduce(ctx: PrimeContext, vec: Sequence[int], rel: int) -> tuple:
    e = ctx.e
    out = []
    for i in range(e):
        m = _ceil_div(rel - i, e)
        out.append(vec[i] % ctx._ppow(m) if m > 0 else 0)
    return tuple(out)


def _vec_val(ctx: PrimeContext, vec: Sequence[int], rel: int) -> int | None:
    """min(e*vp(a_i) + i) over nonzero entries, or None if that is >= rel."""
    best = None
    for i, a in enumerate(vec):
        if a == 0:
            continue
        t = ctx.e * _vp(a, ctx.p) + i
        if best is None or t < best:
            best = t
    if best is None or best >= rel:
        return None
    return best


def _vec_mul(ctx: PrimeContext, a: Sequence[int], b: Sequence[int]) -> list:
    e = ctx.e
    if e == 1:
        return [a[0] * b[0]]
    p = ctx.p
    c = [0] * e
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj:
                continue
            k = i + j
            if k < e:
                c[k] += ai * bj
            else:
                c[k - e] += p * ai * bj
    return c


def _vec_shift(ctx: PrimeContext, vec: Sequence[int], t: int) -> list:
    """Multiply by pi^t.  Downward shifts must stay integral."""
    if t == 0:
        return list(vec)
    e = ctx.e
    out = [0] * e
    for i, ai in enumerate(vec):
        if not ai:
            continue
        f, r = divmod(i + t, e)
        if f >= 0:
            out[r] += ai * ctx._ppow(f)
        else:
            q, rem = divmod(ai, ctx._ppow(-f))
            if rem:
                raise PrecisionExhausted("non-integral shift; internal valuation accounting broke")
            out[r] += q
    return out


def _vec_inv(ctx: PrimeContext, u: Sequence[int], rel: int) -> tuple:
    """Inverse of a unit vector modulo pi^rel, by Newton doubling."""
    w = [0] * ctx.e
    w[0] = pow(u[0] % ctx.p, -1, ctx.p)
    k = 1
    while k < rel:
        k = min(2 * k, rel)
        uk = _vec_reduce(ctx, u, k)
        uw = _vec_mul(ctx, uk, _vec_reduce(ctx, w, k))
        corr = [-x for x in uw]
        corr[0] += 2
        w = _vec_reduce(ctx, _vec_mul(ctx, w, corr), k)
    return _vec_reduce(ctx, w, rel)


class PadicNumber:
    """Immutable element of Q_p(pi) at finite absolute precision.

    Nonzero values are pi^val times a unit part; ``val`` is exact and
    strictly below ``prec``.  Zero-flagged values only promise that the
    valuation is at least ``prec``.  Instances are never mutated after
    construction; all operations return fresh objects.

    ``==`` is bit-exact identity of the representation (same valuation,
    digits and precision), which is what deduplication and round-trip
    tests want.  Mathematical agreement at a precision is a different
    question; use :func:`equals_to_precision`.
    """

    __slots__ = ("ctx", "_val", "_unit", "_prec", "_is_zero")

    def __init__(self, ctx: PrimeContext, val: int, unit: tuple, prec: int, is_zero: bool):
        self.ctx = ctx
        self._val = val
        self._unit = unit
        self._prec = prec
        self._is_zero = is_zero

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self._is_zero

    @property
    def prec(self) -> int:
        return self._prec

    @property
    def val(self) -> int:
        """Exact valuation in pi-units.  Raises on zero-flagged values."""
        if self._is_zero:
            raise PrecisionExhausted(
                f"no exact valuation: value is zero at precision pi^{self._prec}")
        return self._val

    def valuation(self) -> Fraction | ZeroAtPrecision:
        """Valuation in p-units, or a ZeroAtPrecision marker."""
        if self._is_zero:
            return ZeroAtPrecision(Fraction(self._prec, self.ctx.e))
        return Fraction(self._val, self.ctx.e)

    def is_unit(self) -> bool:
        return not self._is_zero and self._val == 0

    def residue(self) -> int:
        """Image in the residue field F_p; needs valuation >= 0."""
        if self._is_zero:
            return 0
        if self._val < 0:
            raise DomainError("residue undefined for negative valuation")
        if self._val > 0:
            return 0
        return self._unit[0] % self.ctx.p

    def digits(self) -> tuple:
        """Base-p digits of the unit part, low order first, prec - val many."""
        if self._is_zero:
            return ()
        ctx = self.ctx
        rel = self._prec - self._val
        out = []
        for k in range(rel):
            f, r = divmod(k, ctx.e)
            out.append((self._unit[r] // ctx._ppow(f)) % ctx.p)
        return tuple(out)

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "PadicNumber") -> None:
        if self.ctx is not other.ctx:
            raise ContextMismatch("operands belong to different contexts")

    def __add__(self, other: "PadicNumber") -> "PadicNumber":
        self._check(other)
        ctx = self.ctx
        if self._is_zero and other._is_zero:
            return ctx.zero(min(self._prec, other._prec))
        if self._is_zero:
            return other._cap_prec(min(self._prec, other._prec))
        if other._is_zero:
            return self._cap_prec(min(self._prec, other._prec))
        prec = min(self._prec, other._prec)
        base = min(self._val, other._val)
        raw = _vec_shift(ctx, self._unit, self._val - base)
        rb = _vec_shift(ctx, other._unit, other._val - base)
        raw = [x + y for x, y in zip(raw, rb)]
        return _from_raw(ctx, base, raw, prec)

    def __neg__(self) -> "PadicNumber":
        if self._is_zero:
            return self
        ctx = self.ctx
        rel = self._prec - self._val
        vec = _vec_reduce(ctx, [-x for x in self._unit], rel)
        return PadicNumber(ctx, self._val, vec, self._prec, False)

    def __sub__(self, other: "PadicNumber") -> "PadicNumber":
        return self + (-other)

    def __mul__(self, other: "PadicNumber") -> "PadicNumber":
        self._check(other)
        ctx = self.ctx
        if self._is_zero or other._is_zero:
            if self._is_zero and other._is_zero:
                return ctx.zero(self._prec + other._prec)
            z, nz = (self, other) if self._is_zero else (other, self)
            return ctx.zero(z._prec + nz._val)
        rel = min(self._prec - self._val, other._prec - other._val)
        val = self._val + other._val
        vec = _vec_reduce(ctx, _vec_mul(ctx, self._unit, other._unit), rel)
        return PadicNumber(ctx, val, vec, val + rel, False)

    def inv(self) -> "PadicNumber":
        """Multiplicative inverse; precision drops by 2*val pi-units."""
        if self._is_zero:
            raise PrecisionExhausted("cannot invert a value that is zero at precision")
        ctx = self.ctx
        rel = self._prec - self._val
        vec = _vec_inv(ctx, self._unit, rel)
        return PadicNumber(ctx, -self._val, vec, rel - self._val, False)

    def __truediv__(self, other: "PadicNumber") -> "PadicNumber":
        return self * other.inv()

    def __pow__(self, n: int) -> "PadicNumber":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def pow_int(self, n: int) -> "PadicNumber":
        return self ** n

    def scale_pi(self, t: int) -> "PadicNumber":
        """Exact multiplication by pi^t: shifts valuation and precision."""
        if self._is_zero:
            return self.ctx.zero(self._prec + t)
        return PadicNumber(self.ctx, self._val + t, self._unit, self._prec + t, False)

    def _mul_int(self, n: int) -> "PadicNumber":
        """Exact multiplication by a nonzero integer; relative precision kept."""
        if n == 0:
            raise ValueError("scalar zero would erase the valuation bookkeeping")
        if n < 0:
            return (-self)._mul_int(-n)
        if n == 1:
            return self
        ctx = self.ctx
        k = _vp(n, ctx.p)
        m = n // ctx._ppow(k)
        if self._is_zero:
            return ctx.zero(self._prec + k * ctx.e)
        rel = self._prec - self._val
        vec = self._unit if m == 1 else _vec_reduce(ctx, [a * m for a in self._unit], rel)
        val = self._val + k * ctx.e
        return PadicNumber(ctx, val, vec, val + rel, False)

    def _div_int(self, n: int) -> "PadicNumber":
        """Exact division by a nonzero integer (infinite-precision scalar)."""
        if n == 0:
            raise ZeroDivisionError("division by integer zero")
        if n < 0:
            return (-self)._div_int(-n)
        if n == 1:
            return self
        ctx = self.ctx
        k = _vp(n, ctx.p)
        m = n // ctx._ppow(k)
        if self._is_zero:
            return ctx.zero(self._prec - k * ctx.e)
        rel = self._prec - self._val
        if m == 1:
            vec = self._unit
        else:
            minv = pow(m, -1, ctx._ppow(_ceil_div(rel, ctx.e)))
            vec = _vec_reduce(ctx, [a * minv for a in self._unit], rel)
        val = self._val - k * ctx.e
        return PadicNumber(ctx, val, vec, val + rel, False)

    def _lift_exact(self, prec: int) -> "PadicNumber":
        """Reinterpret as the exact representative with zero digits appended.

        This is not a claim of knowledge: Newton-type iterations use it
        on iterates, which are seeds for the next step, and re-measure
        closeness afterwards via the function value.
        """
        if self._is_zero or prec <= self._prec:
            return self
        return PadicNumber(self.ctx, self._val, self._unit, prec, False)

    def _cap_prec(self, prec: int) -> "PadicNumber":
        if prec >= self._prec:
            return self
        ctx = self.ctx
        if self._is_zero or self._val >= prec:
            return ctx.zero(prec)
        vec = _vec_reduce(ctx, self._unit, prec - self._val)
        return PadicNumber(ctx, self._val, vec, prec, False)

    # -- rendering -----------------------------------------------------

    def render(self) -> str:
        token = "p" if self.ctx.e == 1 else "pi"
        if self._is_zero:
            return f"{token}^inf*(; prec={self._prec})"
        body = " ".join(str(d) for d in self.digits())
        return f"{token}^{self._val}*({body}; prec={self._prec})"

    __str__ = render

    def __repr__(self) -> str:
        return self.render()

    def to_json(self) -> dict:
        return {
            "p": self.ctx.p,
            "e": self.ctx.e,
            "val": None if self._is_zero else self._val,
            "digits": list(self.digits()),
            "prec": self._prec,
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, PadicNumber):
            return NotImplemented
        return (
            self.ctx is other.ctx
            and self._is_zero == other._is_zero
            and self._prec == other._prec
            and (self._is_zero or (self._val == other._val and self._unit == other._unit))
        )

    def __hash__(self) -> int:
        return hash((id(self.ctx), self._is_zero, self._val if not self._is_zero else 0,
                     self._unit, self._prec))


def _from_raw(ctx: PrimeContext, base_val: int, raw: Sequence[int], prec: int) -> PadicNumber:
    """Normalize pi^base_val * (raw vector) known modulo pi^prec."""
    rel = prec - base_val
    if rel <= 0:
        return ctx.zero(prec)
    vec = _vec_reduce(ctx, raw, rel)
    v = _vec_val(ctx, vec, rel)
    if v is None:
        return ctx.zero(prec)
    val = base_val + v
    unit = _vec_reduce(ctx, _vec_shift(ctx, vec, -v), prec - val)
    return PadicNumber(ctx, val, unit, prec, False)


def equals_to_precision(a: PadicNumber, b: PadicNumber, pi_units: int) -> bool:
    """True when v(a - b) >= pi_units is provable at carried precision.

    Raises PrecisionExhausted when the difference is zero-flagged below
    the requested threshold, because then neither answer is safe.
    """
    a._check(b)
    d = a - b
    if d.is_zero:
        if d.prec >= pi_units:
            return True
        raise PrecisionExhausted(
            f"cannot decide agreement at pi^{pi_units}: difference is zero at pi^{d.prec}")
    return d.val >= pi_units


def sample(ctx: PrimeContext, rng: Random, *, valuation: int = 0,
           residue: int | None = None) -> PadicNumber:
    """Random element with exact valuation (pi-units) and optional residue.

    Digits above the leading one are uniform.  Reproducible: the same rng
    state always yields the same element.
    """
    if residue is not None:
        if residue == 0:
            raise ValueError("residue 0 conflicts with an exact valuation; "
                             "raise `valuation` instead")
        if not 0 < residue < ctx.p:
            raise ValueError(f"residue must lie in 1..{ctx.p - 1}")
    rel = ctx.K - valuation
    if rel < 1:
        raise ValueError("valuation leaves no digits below precision")
    first = residue if residue is not None else rng.randrange(1, ctx.p)
    digits = [first] + [rng.randrange(ctx.p) for _ in range(rel - 1)]
    return ctx.from_digits(valuation, digits, ctx.K)
