"""Truncated Laurent series in one variable over Q, with explicit validity windows.

A ``GradedSeries`` knows its coefficients exactly from ``-inf`` up to
``hi`` (``hi is None`` means the series is an exact Laurent polynomial).
Coefficients below ``lo`` are zero, coefficients above ``hi`` are unknown
and ``coeff`` raises ``TruncationError`` for them instead of guessing.
Every operation returns the tightest ``hi`` on which its result is exact.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .scalars import as_fraction

_ZERO = Fraction(0)


class TruncationError(ValueError):
    """A coefficient was requested outside the window where it is known."""


def _min_hi(*his):
    known = [h for h in his if h is not None]
    return min(known) if known else None


class GradedSeries:
    __slots__ = ("lo", "hi", "_c")

    def __init__(self, coeffs: Sequence = (), lo: int = 0, hi: int | None = None):
        c = [as_fraction(x) for x in coeffs]
        if hi is not None:
            if hi < lo - 1:
                # every stored coefficient lies above the window
                lo, c = hi + 1, []
            c = c[: hi - lo + 1]
            c += [_ZERO] * (hi - lo + 1 - len(c))
        # strip leading zeros so that lo is the valuation when possible
        k = 0
        while k < len(c) and c[k] == 0:
            k += 1
        if k == len(c):
            lo2 = lo if hi is None else min(lo + k, hi + 1)
            c = []
        else:
            lo2 = lo + k
            c = c[k:]
        if hi is None:
            while c and c[-1] == 0:
                c.pop()
        object.__setattr__(self, "lo", lo2)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "_c", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("GradedSeries is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_dict(cls, terms: Mapping[int, object], hi: int | None = None) -> GradedSeries:
        terms = {k: as_fraction(v) for k, v in terms.items() if v}
        if hi is not None:
            terms = {k: v for k, v in terms.items() if k <= hi}
        if not terms:
            return cls((), lo=0 if hi is None else min(0, hi + 1), hi=hi)
        lo = min(terms)
        top = max(terms) if hi is None else hi
        return cls([terms.get(k, _ZERO) for k in range(lo, top + 1)], lo=lo, hi=hi)

    @classmethod
    def monomial(cls, deg: int, coeff=1) -> GradedSeries:
        return cls([coeff], lo=deg)

    @classmethod
    def one(cls) -> GradedSeries:
        return cls([1], lo=0)

    @classmethod
    def zero(cls, hi: int | None = None) -> GradedSeries:
        return cls((), lo=0 if hi is None else min(0, hi + 1), hi=hi)

    @classmethod
    def geometric(cls, step: int, hi: int, coeff=1) -> GradedSeries:
        """1 / (1 - coeff * t^step) up to degree ``hi``."""
        if step <= 0:
            raise ValueError("step must be positive")
        c = as_fraction(coeff)
        terms = {step * j: c**j for j in range(hi // step + 1)} if hi >= 0 else {}
        return cls.from_dict(terms, hi=hi)

    @classmethod
    def binomial_power(cls, step: int, exponent: int, sign: int = 1) -> GradedSeries:
        """(1 + sign * t^step)^exponent for exponent >= 0, as an exact polynomial."""
        if exponent < 0:
            raise ValueError("use reciprocal for negative exponents")
        return cls.from_dict({step * j: comb(exponent, j) * sign**j for j in range(exponent + 1)})

    # -- access -----------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.hi is None

    @property
    def top(self) -> int:
        """Highest stored degree (``lo - 1`` if nothing is stored)."""
        return self.lo + len(self._c) - 1

    def coeff(self, k: int) -> Fraction:
        if self.hi is not None and k > self.hi:
            raise TruncationError(f"coefficient of t^{k} is beyond the known window (hi={self.hi})")
        if k < self.lo or k > self.top:
            return _ZERO
        return self._c[k - self.lo]

    __getitem__ = coeff

    def terms(self) -> dict[int, Fraction]:
        return {self.lo + i: c for i, c in enumerate(self._c) if c}

    def coeffs_between(self, lo: int, hi: int) -> list[Fraction]:
        return [self.coeff(k) for k in range(lo, hi + 1)]

    def valuation(self) -> int | None:
        for i, c in enumerate(self._c):
            if c:
                return self.lo + i
        return None

    def total(self) -> Fraction:
        """Sum of coefficients; only meaningful for exact polynomials."""
        if self.hi is not None:
            raise TruncationError("total dimension of a truncated series is unknown")
        return sum(self._c, _ZERO)

    # -- window manipulation ---------------------------------------------
    def truncate(self, hi: int) -> GradedSeries:
        new_hi = hi if self.hi is None else min(hi, self.hi)
        return GradedSeries(self._c, lo=self.lo, hi=new_hi) if self._c else GradedSeries.zero(new_hi)

    def shift(self, k: int) -> GradedSeries:
        """Multiply by t^k."""
        hi = None if self.hi is None else self.hi + k
        if not self._c:
            return GradedSeries.zero(hi)
        return GradedSeries(self._c, lo=self.lo + k, hi=hi)

    def dilate(self, c: int) -> GradedSeries:
        """Substitute t -> t^c for c >= 1."""
        if c < 1:
            raise ValueError("dilation factor must be >= 1")
        hi = None if self.hi is None else c * (self.hi + 1) - 1
        return GradedSeries.from_dict({c * k: v for k, v in self.terms().items()}, hi=hi)

    def reflect_sign(self) -> GradedSeries:
        """Substitute t -> -t."""
        return GradedSeries.from_dict(
            {k: (-v if k % 2 else v) for k, v in self.terms().items()}, hi=self.hi
        )

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: GradedSeries) -> GradedSeries:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        hi = _min_hi(self.hi, other.hi)
        terms = dict(self.terms())
        for k, v in other.terms().items():
            terms[k] = terms.get(k, _ZERO) + v
        return GradedSeries.from_dict(terms, hi=hi)

    def __neg__(self) -> GradedSeries:
        return self.scale(-1)

    def __sub__(self, other: GradedSeries) -> GradedSeries:
        return self + (-other)

    def scale(self, c) -> GradedSeries:
        c = as_fraction(c)
        if not self._c:
            return GradedSeries.zero(self.hi)
        return GradedSeries([c * x for x in self._c], lo=self.lo, hi=self.hi)

    def __mul__(self, other):
        if isinstance(other, GradedSeries):
            return series_product(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int) -> GradedSeries:
        if k < 0:
            raise ValueError("negative power; use series_reciprocal")
        out = GradedSeries.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return self.hi == other.hi and self.terms() == other.terms()

    def __hash__(self):
        return hash((self.hi, tuple(sorted(self.terms().items()))))

    def agrees_with(self, other: GradedSeries, lo: int, hi: int) -> bool:
        """Exact equality of coefficients on [lo, hi]; both must know that window."""
        return all(self.coeff(k) == other.coeff(k) for k in range(lo, hi + 1))

    def nonnegative_integral(self) -> bool:
        return all(c >= 0 and c.denominator == 1 for c in self._c)

    def __repr__(self):
        return f"GradedSeries({self.to_text()})"

    def to_text(self, var: str = "t") -> str:
        body = ""
        for k, c in self.terms().items():
            mag = abs(c)
            coef = "" if mag == 1 and k != 0 else str(mag)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not body:
                body = ("-" if c < 0 else "") + coef + mono
            else:
                body += (" - " if c < 0 else " + ") + coef + mono
        body = body or "0"
        if self.hi is not None:
            body += f" + O({var}^{self.hi + 1})"
        return body

    # -- serialisation ----------------------------------------------------
    def to_json(self) -> dict:
        lo = self.lo
        hi = self.hi if self.hi is not None else self.top
        return {
            "vars": 1,
            "min": lo,
            "max": hi,
            "exact": self.hi is None,
            "coeffs": [str(self.coeff(k)) for k in range(lo, hi + 1)],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> GradedSeries:
        if obj.get("vars", 1) != 1:
            raise ValueError("expected a univariate series")
        lo, hi = int(obj["min"]), int(obj["max"])
        coeffs = [Fraction(x) for x in obj["coeffs"]]
        if len(coeffs) != hi - lo + 1:
            raise ValueError("coefficient count does not match the window")
        return cls(coeffs, lo=lo, hi=None if obj.get("exact") else hi)


def series_product(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    """Exact product; known up to min(hi_a + lo_b, hi_b + lo_a)."""
    ta, tb = a.terms(), b.terms()
    hi = _min_hi(
        None if a.hi is None else a.hi + (b.lo if tb else b.hi + 1 if b.hi is not None else 0),
        None if b.hi is None else b.hi + (a.lo if ta else a.hi + 1 if a.hi is not None else 0),
    )
    out: dict[int, Fraction] = {}
    for i, x in ta.items():
        for j, y in tb.items():
            k = i + j
            if hi is not None and k > hi:
                continue
            out[k] = out.get(k, _ZERO) + x * y
    return GradedSeries.from_dict(out, hi=hi)


def series_reciprocal(a: GradedSeries, max_deg: int | None = None) -> GradedSeries:
    """1/a as a truncated Laurent series.

    The result is exact up to ``-v + (a.hi - v)`` where ``v`` is the valuation
    of ``a``; ``max_deg`` caps it (and is required when ``a`` is exact).
    """
    v = a.valuation()
    if v is None:
        raise ZeroDivisionError("reciprocal of a series with no known nonzero coefficient")
    if a.hi is None and len(a.terms()) == 1:
        return GradedSeries.monomial(-v, 1 / a.coeff(v))
    rel = None if a.hi is None else a.hi - v
    hi = _min_hi(None if rel is None else -v + rel, max_deg)
    if hi is None:
        raise ValueError("reciprocal of an exact polynomial needs max_deg")
    n = hi + v  # number of further terms after the leading one
    if n < 0:
        return GradedSeries.zero(hi)
    c0 = a.coeff(v)
    ac = [a.coeff(v + k) if (a.hi is None or v + k <= a.hi) else _ZERO for k in range(n + 1)]
    inv = [1 / c0]
    for k in range(1, n + 1):
        s = sum((ac[j] * inv[k - j] for j in range(1, k + 1) if ac[j]), _ZERO)
        inv.append(-s / c0)
    return GradedSeries(inv, lo=-v, hi=hi)


def product_all(items: Iterable[GradedSeries]) -> GradedSeries:
    out = GradedSeries.one()
    for s in items:
        out = out * s
    return out


def series_sum(items: Iterable[GradedSeries], hi: int | None = None) -> GradedSeries:
    out = GradedSeries.zero(hi)
    for s in items:
        out = out + s
    return out
