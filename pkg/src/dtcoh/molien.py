"""Cycle-index / Molien series for the Weyl-invariant part of each Levi contribution.

For a Levi L = L_{G, lam} with centre Z = Z(L) and relative Weyl group W, the
contribution is the W-invariant part of

    H(Z^3) (x) H(BZ), shifted by -2 dim Z,

whose generators are three copies of the cocharacter lattice in degree 1
(exterior) and one copy in degree 2 (polynomial). A cycle of length c in a
class of W contributes det(1 + t sigma) = 1 - (-t)^c to the exterior trace
and 1 / (1 - t^{2c}) to the polynomial trace.

Parity: under the ``shifted`` convention these traces are used as they are;
under ``unshifted`` the odd shift [3 dim Z] flips every block's parity, which
twists each trace by the sign of the permutation.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .exact import ExactMatrix, GradedSeries, charpoly_coeffs, mat_det, mat_kernel, solve
from .exact.series import product_all, series_reciprocal, series_sum
from .groups import (
    ComponentGroupData,
    CycleType,
    Kind,
    LeviDescriptor,
    Partition,
    component_action,
    fixed_components,
    levi_descriptor,
    weyl_cycle_types,
)

DEFAULT_DEPTH = 40


class Parity(str, enum.Enum):
    SHIFTED = "shifted"
    UNSHIFTED = "unshifted"

    @classmethod
    def parse(cls, value) -> Parity:
        if isinstance(value, Parity):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown parity convention {value!r}") from None


@dataclass(frozen=True)
class RepSpec:
    kind: Kind
    poly: str  # "perm" or "perm_minus_trivial"
    ext: str | None  # same choices, or None when there are no degree-1 generators
    component: ComponentGroupData | None
    shift: int
    sign_twist: bool


def rep_spec(levi: LeviDescriptor, parity=Parity.SHIFTED) -> RepSpec:
    parity = Parity.parse(parity)
    twist = parity == Parity.UNSHIFTED
    kind = levi.kind
    if kind == Kind.GL:
        return RepSpec(kind, "perm", "perm", None, -2 * levi.dim_centre, twist)
    if kind == Kind.GL_ADD:
        return RepSpec(kind, "perm", None, None, -2 * levi.dim_centre, twist)
    comp = component_action(levi.partition) if kind == Kind.SL else None
    return RepSpec(kind, "perm_minus_trivial", "perm_minus_trivial", comp, -2 * levi.dim_centre, twist)


def _exterior_trace(cycles, minus_trivial: bool) -> GradedSeries:
    """det(1 + t sigma) on the (reduced) permutation representation."""
    poly = product_all(
        GradedSeries.from_dict({0: 1, c: -((-1) ** c)}) for c in cycles
    )
    if minus_trivial:
        poly = _divide_by_one_plus_t(poly)
    return poly


def _divide_by_one_plus_t(p: GradedSeries) -> GradedSeries:
    terms = p.terms()
    if not terms:
        return p
    top = max(terms)
    q: dict[int, Fraction] = {}
    rem = Fraction(0)
    # synthetic division from the top degree down
    for k in range(top, min(terms) - 1, -1):
        cur = terms.get(k, Fraction(0)) - rem
        if k == min(terms):
            if cur != 0:
                raise ArithmeticError("polynomial is not divisible by 1 + t")
            break
        q[k - 1] = cur
        rem = cur
    return GradedSeries.from_dict(q)


def _polynomial_denominator(cycles, minus_trivial: bool) -> GradedSeries:
    den = product_all(GradedSeries.from_dict({0: 1, 2 * c: -1}) for c in cycles)
    if minus_trivial:
        # remove the factor 1 - t^2 of the trivial summand
        den = _divide_by_one_plus_t(_divide_by_one_minus_t(den))
    return den


def _divide_by_one_minus_t(p: GradedSeries) -> GradedSeries:
    return _divide_by_one_plus_t(p.reflect_sign()).reflect_sign()


def cycle_factor(tau: CycleType, spec: RepSpec, max_deg: int) -> GradedSeries:
    """Graded trace of a representative of tau, times t^shift, exact up to max_deg."""
    if max_deg < spec.shift:
        raise ValueError(f"window top {max_deg} is below the shift {spec.shift}")
    cycles = tau.cycles
    rel = max_deg - spec.shift
    den = _polynomial_denominator(cycles, spec.poly == "perm_minus_trivial")
    out = series_reciprocal(den, max_deg=rel)
    if spec.ext is not None:
        ext = _exterior_trace(cycles, spec.ext == "perm_minus_trivial")
        out = (ext**3 * out).truncate(rel)
    if spec.component is not None:
        out = out.scale(fixed_components(spec.component, tau))
    if spec.sign_twist:
        out = out.scale(tau.sign)
    return out.shift(spec.shift)


def graded_invariants(levi: LeviDescriptor, max_deg: int | None = None, parity=Parity.SHIFTED) -> GradedSeries:
    """Poincare series of the W-invariants: class-size weighted average of cycle factors."""
    spec = rep_spec(levi, parity)
    if max_deg is None:
        max_deg = spec.shift + DEFAULT_DEPTH
    total = series_sum(
        (cycle_factor(tau, spec, max_deg).scale(tau.class_size) for tau in weyl_cycle_types(levi.partition)),
        hi=max_deg,
    )
    return total.scale(Fraction(1, levi.weyl_order))


def character_of_degree(lam: Partition, d: int) -> dict[tuple, Fraction]:
    """Character of W on the degree-d piece of Q[u_1, ..., u_l][-2] (u_i of degree 2).

    Keys are the ``blocks`` of each cycle type.
    """
    if d % 2 or d < 0:
        raise ValueError("d must be a non-negative even integer")
    out = {}
    for tau in weyl_cycle_types(lam):
        if d < 2:
            out[tau.blocks] = Fraction(0)
            continue
        den = _polynomial_denominator(tau.cycles, False)
        out[tau.blocks] = series_reciprocal(den, max_deg=d - 2).coeff(d - 2)
    return out


def monomial_count(variables: int, degree: int) -> int:
    if variables == 0:
        return int(degree == 0)
    return comb(degree + variables - 1, variables - 1)


# -- brute-force oracle ------------------------------------------------------

MAX_BRUTEFORCE_ORDER = 10_000


def weyl_elements(lam: Partition):
    """Every element of prod_j S_{m_j} as a permutation (image tuple) of block positions."""
    ranges = list(lam.block_positions().values())
    for choice in itertools.product(*(itertools.permutations(r) for r in ranges)):
        perm = [0] * lam.l
        for rng, img in zip(ranges, choice):
            for a, b in zip(rng, img):
                perm[a] = b
        yield tuple(perm)


def _perm_matrix(perm) -> ExactMatrix:
    n = len(perm)
    rows = [[0] * n for _ in range(n)]
    for i, j in enumerate(perm):
        rows[j][i] = 1
    return ExactMatrix(rows, cols=n)


def _restrict(p: ExactMatrix, constraint: list[int]) -> ExactMatrix:
    """Matrix of p on the subspace {a : sum constraint_i a_i = 0}, in a kernel basis."""
    basis = mat_kernel(ExactMatrix([constraint]))
    k = len(basis)
    if k == 0:
        return ExactMatrix.zeros(0, 0)
    b = ExactMatrix.from_columns(basis, rows=p.rows)
    cols = []
    for v in basis:
        x = solve(b, p.apply(v))
        if x is None:
            raise ArithmeticError("subspace is not invariant")
        cols.append(x)
    return ExactMatrix.from_columns(cols, rows=k)


def _det_one_plus(m: ExactMatrix, scale_deg: int, sign: int) -> GradedSeries:
    """det(I + sign * t^scale_deg * m) as an exact polynomial."""
    e = charpoly_coeffs(m) if m.rows else [Fraction(1)]
    return GradedSeries.from_dict({scale_deg * k: ek * sign**k for k, ek in enumerate(e)})


def _component_fixed_points(lam: Partition, perm) -> int:
    """Fixed points of perm on (Z/g)^3, g = gcd(lam), by direct enumeration."""
    g = lam.gcd()
    if g == 1:
        return 1
    x0 = [p // g for p in lam.parts]
    sx = [0] * lam.l
    for i, j in enumerate(perm):
        sx[j] = x0[i]
    mult = None
    for a in range(g):
        diff = [s - a * x for s, x in zip(sx, x0)]
        # diff must be an integer multiple of lam
        ratios = {Fraction(dv, p) for dv, p in zip(diff, lam.parts)}
        if len(ratios) == 1 and next(iter(ratios)).denominator == 1:
            mult = a
            break
    if mult is None:
        raise ArithmeticError("permutation does not preserve the torsion subgroup")
    return sum(
        1
        for v in itertools.product(range(g), repeat=3)
        if all((mult * x - x) % g == 0 for x in v)
    )


def molien_bruteforce(kind, lam: Partition, max_deg: int | None = None, parity=Parity.SHIFTED) -> GradedSeries:
    """Same series as graded_invariants, by summing over every group element."""
    levi = levi_descriptor(kind, lam)
    parity = Parity.parse(parity)
    if levi.weyl_order > MAX_BRUTEFORCE_ORDER:
        raise ValueError(f"Weyl group of order {levi.weyl_order} is too large to enumerate")
    shift = -2 * levi.dim_centre
    if max_deg is None:
        max_deg = shift + DEFAULT_DEPTH
    rel = max_deg - shift
    total = GradedSeries.zero(max_deg)
    count = 0
    for perm in weyl_elements(lam):
        count += 1
        p = _perm_matrix(perm)
        if levi.kind == Kind.SL:
            m = _restrict(p, list(lam.parts))
        elif levi.kind == Kind.PGL:
            m = _restrict(p, [1] * lam.l)
        else:
            m = p
        term = series_reciprocal(_det_one_plus(m, 2, -1), max_deg=rel)
        if levi.kind != Kind.GL_ADD:
            term = (_det_one_plus(m, 1, 1) ** 3 * term).truncate(rel)
        if levi.kind == Kind.SL:
            term = term.scale(_component_fixed_points(lam, perm))
        if parity == Parity.UNSHIFTED and m.rows:
            term = term.scale(mat_det(m))
        total = total + term.shift(shift)
    assert count == levi.weyl_order
    return total.scale(Fraction(1, count))
