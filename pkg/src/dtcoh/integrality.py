"""BPS series, Levi sums, DT cohomology series and the integrality / Langlands checks.

Two independent routes compute the same graded dimensions for GL_n:

* the Levi sum: for every partition lam of n, the Weyl-invariant Molien series
  of the Levi contribution (``molien.graded_invariants``);
* the symmetric-algebra side: the coefficient of x^n in the plethystic
  exponential of the blocks BPS_n (x) H(BG_m)[-1], built here directly from
  Kunneth data without touching the Molien code.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Mapping

from .exact import GradedSeries
from .exact.series import series_reciprocal, series_sum
from .groups import Kind, Partition, levi_descriptor, partitions_of
from .molien import Parity, graded_invariants


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _require_prime(n: int, what: str) -> None:
    if not is_prime(n):
        raise ValueError(f"{what} requires prime n, got {n}")


# -- BPS data ----------------------------------------------------------------

def bps_poincare(kind, n: int) -> GradedSeries:
    """Poincare polynomial of the BPS cohomology for rank n."""
    kind = Kind.parse(kind)
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind == Kind.GL:
        # H(G_m^3) = (1+t)^3, shifted by [3]
        return GradedSeries.binomial_power(1, 3).shift(-3)
    if kind == Kind.GL_ADD:
        return GradedSeries.monomial(-3)
    if kind == Kind.SL:
        return GradedSeries.monomial(0, n**3)
    _require_prime(n, "PGL BPS cohomology")
    return GradedSeries.monomial(0, 1)


def block_series(kind, n: int, max_deg: int) -> GradedSeries:
    """BPS_n (x) H(BG_m)[-1], exact up to max_deg."""
    kind = Kind.parse(kind)
    if kind not in (Kind.GL, Kind.GL_ADD):
        raise ValueError("symmetric-algebra blocks exist only for gl and gl_add")
    bps = bps_poincare(kind, n)
    h_bgm = series_reciprocal(GradedSeries.from_dict({0: 1, 2: -1}), max_deg=max_deg - 1 - bps.lo)
    return (bps * h_bgm.shift(1)).truncate(max_deg)


# -- Levi side ---------------------------------------------------------------

def levi_contribution(kind, n: int, lam: Partition, max_deg: int, parity=Parity.SHIFTED) -> GradedSeries:
    if lam.n != n:
        raise ValueError(f"{lam} is not a partition of {n}")
    return graded_invariants(levi_descriptor(kind, lam), max_deg, parity)


def dt_cohomology(kind, n: int, max_deg: int, include_twisted: bool = False,
                  parity=Parity.SHIFTED) -> GradedSeries:
    """Sum of Levi contributions over all partitions of n (plus twisted PGL components)."""
    kind = Kind.parse(kind)
    if kind == Kind.PGL:
        _require_prime(n, "PGL DT cohomology")
    if include_twisted and kind != Kind.PGL:
        raise ValueError("twisted components exist only for pgl")
    total = series_sum(
        (levi_contribution(kind, n, lam, max_deg, parity) for lam in partitions_of(n)), hi=max_deg
    )
    if include_twisted:
        from .moduli import twisted_component_data

        _, contribution = twisted_component_data(n)
        total = total + contribution
    return total


# -- symmetric-algebra side --------------------------------------------------

@dataclass(frozen=True)
class BiGradedSeries:
    """Power series in x (up to x^max_n) whose coefficients are truncated Laurent series in t."""

    max_n: int
    rows: tuple[GradedSeries, ...]

    def coefficient(self, n: int) -> GradedSeries:
        if not 0 <= n <= self.max_n:
            raise ValueError(f"x^{n} is outside the computed range 0..{self.max_n}")
        return self.rows[n]

    def to_json(self) -> dict:
        return {"vars": 2, "x_max": self.max_n, "rows": [r.to_json() for r in self.rows]}


def parity_of_degree(k: int, parity=Parity.SHIFTED, centre_dim: int = 1) -> int:
    """Super-parity of a degree-k class of a block with centre of dimension centre_dim."""
    parity = Parity.parse(parity)
    offset = 0 if parity == Parity.SHIFTED else 3 * centre_dim
    return (k + offset) % 2


def plethystic_exponential(blocks: Mapping[int, GradedSeries], max_n: int, max_deg: int,
                           parity=Parity.SHIFTED) -> BiGradedSeries:
    """prod_{n,k} (1 - x^n t^k)^{-a_nk} (even) or (1 + x^n t^k)^{a_nk} (odd), truncated.

    Row n is exact up to min(max_deg, min_j (hi_j + L(n - j))), where L(m) is the
    lowest t-degree any product of blocks of total x-degree m can reach.
    """
    parity = Parity.parse(parity)
    for n in range(1, max_n + 1):
        if n not in blocks:
            raise ValueError(f"missing block for n={n}")
        for k, a in blocks[n].terms().items():
            if a < 0 or a.denominator != 1:
                raise ValueError(f"block {n} has a non-natural coefficient {a} at t^{k}")
    low = {n: (blocks[n].valuation() if blocks[n].valuation() is not None else blocks[n].lo)
           for n in range(1, max_n + 1)}
    reach = [0] * (max_n + 1)
    for m in range(1, max_n + 1):
        reach[m] = min(low[j] + reach[m - j] for j in range(1, m + 1))
    tops = [max_deg]
    for n in range(1, max_n + 1):
        cands = [max_deg]
        for j in range(1, n + 1):
            if blocks[j].hi is not None:
                cands.append(blocks[j].hi + reach[n - j])
        tops.append(min(cands))

    def useful(m: int, d: int) -> bool:
        return any(d + reach[big - m] <= tops[big] for big in range(m, max_n + 1))

    acc: dict[tuple[int, int], int] = {(0, 0): 1}
    for n in range(1, max_n + 1):
        for k, a in sorted(blocks[n].terms().items()):
            a = int(a)
            if not useful(n, k):
                continue
            odd = parity_of_degree(k, parity) == 1
            series = []
            j = 1
            while n * j <= max_n:
                c = comb(a, j) if odd else comb(a + j - 1, j)
                if c == 0:
                    break
                series.append((j, c))
                j += 1
            new = dict(acc)
            for (m, d), v in acc.items():
                for j, c in series:
                    key = (m + n * j, d + k * j)
                    if key[0] > max_n:
                        break
                    if not useful(*key):
                        continue
                    new[key] = new.get(key, 0) + v * c
            acc = new
    rows = []
    for n in range(max_n + 1):
        terms = {d: v for (m, d), v in acc.items() if m == n and d <= tops[n]}
        rows.append(GradedSeries.from_dict(terms, hi=tops[n]))
    return BiGradedSeries(max_n, tuple(rows))


# -- reports -----------------------------------------------------------------

@dataclass
class IntegralityResult:
    n: int
    levi_sum: GradedSeries
    pe_coeff: GradedSeries
    equal: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "levi_sum": self.levi_sum.to_json(),
            "pe_coeff": self.pe_coeff.to_json(),
            "equal": self.equal,
        }


@dataclass
class IntegralityReport:
    kind: Kind
    max_n: int
    window: tuple[int, int]
    parity: Parity
    results: list[IntegralityResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.equal for r in self.results)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "parity": self.parity.value,
            "window": {"min": self.window[0], "max": self.window[1]},
            "results": [r.to_json() for r in self.results],
        }


def verify_integrality(kind, max_n: int, window: tuple[int, int] = (-12, 30),
                       parity=Parity.SHIFTED) -> IntegralityReport:
    """Compare the Levi sum with [x^n] of the plethystic exponential for n <= max_n."""
    kind = Kind.parse(kind)
    parity = Parity.parse(parity)
    if kind not in (Kind.GL, Kind.GL_ADD):
        raise ValueError(f"integrality as a symmetric algebra is only defined for gl and gl_add, not {kind.value}")
    lo, hi = window
    depth = hi + 2 * (max_n - 1)
    blocks = {n: block_series(kind, n, depth) for n in range(1, max_n + 1)}
    pe = plethystic_exponential(blocks, max_n, hi, parity)
    report = IntegralityReport(kind, max_n, (lo, hi), parity)
    for n in range(1, max_n + 1):
        levi = dt_cohomology(kind, n, hi, parity=parity)
        coeff = pe.coefficient(n)
        equal = levi.agrees_with(coeff, lo, hi) and all(
            levi.coeff(k) == 0 for k in range(min(levi.lo, lo), lo)
        )
        report.results.append(IntegralityResult(n, levi, coeff, equal))
    return report


@dataclass
class LanglandsResult:
    n: int
    parity: Parity
    window: tuple[int, int]
    sl: GradedSeries
    pgl_twisted: GradedSeries
    pgl_untwisted: GradedSeries
    equal: bool
    twisted_difference_ok: bool

    @property
    def ok(self) -> bool:
        return self.equal and self.twisted_difference_ok

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "parity": self.parity.value,
            "window": {"min": self.window[0], "max": self.window[1]},
            "sl": self.sl.to_json(),
            "pgl_twisted": self.pgl_twisted.to_json(),
            "pgl_untwisted": self.pgl_untwisted.to_json(),
            "equal": self.equal,
            "twisted_difference_ok": self.twisted_difference_ok,
        }


def langlands_check(n: int, window: tuple[int, int] = (-12, 30), parity=Parity.SHIFTED) -> LanglandsResult:
    _require_prime(n, "the Langlands check")
    parity = Parity.parse(parity)
    lo, hi = window
    sl = dt_cohomology(Kind.SL, n, hi, parity=parity)
    pgl_t = dt_cohomology(Kind.PGL, n, hi, include_twisted=True, parity=parity)
    pgl_u = dt_cohomology(Kind.PGL, n, hi, parity=parity)
    lowest = min(sl.lo, pgl_t.lo, lo)
    equal = sl.agrees_with(pgl_t, lowest, hi)
    diff = sl - pgl_u
    expected = GradedSeries.monomial(0, n**3 - 1).truncate(hi)
    return LanglandsResult(n, parity, (lo, hi), sl, pgl_t, pgl_u, equal, diff == expected)


def bps_rank(l: int, k: int) -> int:  # noqa: E741
    """Number of degree-k monomials in l variables, checked against the split-off recursion."""
    if l < 1 or k < 0:
        raise ValueError("need l >= 1 and k >= 0")
    closed = comb(k + l - 1, k)
    fewer = l - 1
    recursion = sum(
        (comb(j + fewer - 1, j) if fewer else int(j == 0)) for j in range(k + 1)
    )
    if closed != recursion:
        raise ArithmeticError(f"rank recursion mismatch at l={l}, k={k}: {closed} != {recursion}")
    return closed


__all__ = [
    "BiGradedSeries", "IntegralityReport", "IntegralityResult", "LanglandsResult",
    "block_series", "bps_poincare", "bps_rank", "dt_cohomology", "is_prime",
    "langlands_check", "levi_contribution", "parity_of_degree", "plethystic_exponential",
    "verify_integrality",
]
