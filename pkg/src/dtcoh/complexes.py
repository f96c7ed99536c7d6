"""Based chain complexes, the T^3 complex of a local system, and the torsion scalar.

Indexing is homological: ``d(k)`` maps term k to term k - 1. Each term carries
its standard basis as the distinguished basis.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exact import ExactMatrix, mat_det, mat_inverse, mat_kernel, mat_rank, pivot_columns
from .exact.scalars import simplify
from .groups import Partition

_ZERO = Fraction(0)


class ComplexError(ValueError):
    """Malformed complex: bad shapes or d o d != 0."""


class NonCommutingError(ValueError):
    def __init__(self, pair: tuple[str, str]):
        self.pair = pair
        super().__init__(f"operators {pair[0]} and {pair[1]} do not commute")


@dataclass(frozen=True)
class BasedComplex:
    """C_m -> ... -> C_1 -> C_0 with standard bases; ``differentials[k-1]`` is d_k."""

    dims: tuple[int, ...]
    differentials: tuple[ExactMatrix, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        diffs = tuple(self.differentials)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "differentials", diffs)
        if any(d < 0 for d in dims):
            raise ComplexError("negative term dimension")
        if len(diffs) != max(len(dims) - 1, 0):
            raise ComplexError(f"{len(dims)} terms need {len(dims) - 1} differentials, got {len(diffs)}")
        for k, d in enumerate(diffs, start=1):
            if d.shape != (dims[k - 1], dims[k]):
                raise ComplexError(f"d_{k} has shape {d.shape}, expected {(dims[k - 1], dims[k])}")
        for k in range(1, len(diffs)):
            comp = diffs[k - 1] @ diffs[k]
            if not comp.is_zero():
                raise ComplexError(f"d_{k} o d_{k + 1} is not zero")

    @classmethod
    def from_cochain(cls, dims: Sequence[int], differentials: Sequence[ExactMatrix]) -> BasedComplex:
        """Adapter for C^0 -> C^1 -> ... -> C^m: term j of the result is C^{m-j}."""
        return cls(tuple(reversed(dims)), tuple(reversed(differentials)))

    @property
    def length(self) -> int:
        return len(self.dims) - 1

    def d(self, k: int) -> ExactMatrix:
        """d_k : C_k -> C_{k-1}; zero outside the stored range."""
        if 1 <= k <= self.length:
            return self.differentials[k - 1]
        src = self.dims[k] if 0 <= k < len(self.dims) else 0
        dst = self.dims[k - 1] if 0 <= k - 1 < len(self.dims) else 0
        return ExactMatrix.zeros(dst, src)

    def rank(self, k: int) -> int:
        return mat_rank(self.d(k)) if 1 <= k <= self.length else 0

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * d for k, d in enumerate(self.dims))

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "differentials": [d.to_json() for d in self.differentials]}

    @classmethod
    def from_json(cls, obj) -> BasedComplex:
        try:
            dims = [int(x) for x in obj["dims"]]
            diffs = []
            for k, m in enumerate(obj["differentials"], start=1):
                mat = ExactMatrix.from_json(m)
                if mat.rows == 0:  # a 0 x k matrix serialises as []
                    mat = ExactMatrix.zeros(0, dims[k])
                diffs.append(mat)
        except (KeyError, TypeError, IndexError) as exc:
            raise ComplexError(f"malformed complex: {exc}") from None
        return cls(tuple(dims), tuple(diffs))


def cohomology_ranks(c: BasedComplex) -> list[int]:
    """dim H_k = dim C_k - rank d_k - rank d_{k+1}."""
    ranks = [c.rank(k) for k in range(len(c.dims) + 1)]
    return [c.dims[k] - ranks[k] - ranks[k + 1] for k in range(len(c.dims))]


# -- torsion -----------------------------------------------------------------

def default_b(c: BasedComplex, k: int) -> list[tuple]:
    """Standard basis vectors at the greedy pivot columns of d_k."""
    dim = c.dims[k]
    return [tuple(Fraction(int(i == j)) for i in range(dim)) for j in pivot_columns(c.d(k))] if k >= 1 else []


def torsion(c: BasedComplex, h_reps: Mapping[int, Sequence[Sequence]] | None = None,
            b_choice: Mapping[int, Sequence[Sequence]] | None = None):
    """(-1)^N(C) [c : h] for the standard bases of the terms.

    [c : h] = prod_k det[d(b_{k+1}) h_k b_k / c_k]^{(-1)^{k+1}}, with b_k any
    vectors whose images form a basis of im d_k (greedy pivot columns unless
    ``b_choice`` supplies them) and h_k cycle representatives of a homology basis.
    """
    betti = cohomology_ranks(c)
    h_reps = dict(h_reps or {})
    b_choice = dict(b_choice or {})
    for k, b in enumerate(betti):
        reps = h_reps.get(k, [])
        if len(reps) != b:
            if b and not h_reps:
                raise ValueError(f"complex is not acyclic (H_{k} has dimension {b}); pass h_reps")
            raise ValueError(f"H_{k} has dimension {b} but {len(reps)} representatives were given")
        for v in reps:
            if len(v) != c.dims[k]:
                raise ValueError(f"representative of H_{k} has length {len(v)}, expected {c.dims[k]}")
            if any(c.d(k).apply(v)):
                raise ValueError(f"representative of H_{k} is not a cycle")

    bs = {}
    for k in range(len(c.dims)):
        b = [tuple(v) for v in b_choice.get(k, default_b(c, k))]
        r = c.rank(k)
        if len(b) != r:
            raise ValueError(f"b_{k} must have {r} vectors, got {len(b)}")
        if b and mat_rank(ExactMatrix.from_columns([c.d(k).apply(v) for v in b], rows=c.dims[k - 1])) != r:
            raise ValueError(f"images of b_{k} are not a basis of im d_{k}")
        bs[k] = b

    value = Fraction(1)
    for k, dim in enumerate(c.dims):
        boundaries = [c.d(k + 1).apply(v) for v in bs.get(k + 1, [])]
        cols = boundaries + [tuple(v) for v in h_reps.get(k, [])] + bs[k]
        if len(cols) != dim:
            raise ArithmeticError(f"term {k}: {len(cols)} basis vectors for dimension {dim}")
        if dim == 0:
            continue
        det = mat_det(ExactMatrix.from_columns(cols, rows=dim))
        if det == 0:
            raise ValueError(f"term {k}: boundaries, representatives and b_{k} are not a basis")
        value = value * det if (k + 1) % 2 == 0 else value / det

    alpha = beta = 0
    n_sign = 0
    for k in range(len(c.dims)):
        alpha = (alpha + c.dims[k]) % 2
        beta = (beta + betti[k]) % 2
        n_sign += alpha * beta
    return simplify(value if n_sign % 2 == 0 else -value)


def random_b_choice(c: BasedComplex, rng: random.Random) -> dict[int, list[tuple]]:
    """A valid alternative b: random invertible recombination of the default plus kernel noise."""
    out = {}
    for k in range(1, len(c.dims)):
        base = default_b(c, k)
        r = len(base)
        if not r:
            continue
        while True:
            g = ExactMatrix([[Fraction(rng.randint(-3, 3)) for _ in range(r)] for _ in range(r)])
            if mat_det(g) != 0:
                break
        kernel = mat_kernel(c.d(k))
        vecs = []
        for j in range(r):
            v = [sum((g[i, j] * base[i][x] for i in range(r)), _ZERO) for x in range(c.dims[k])]
            for z in kernel:
                coef = Fraction(rng.randint(-2, 2))
                v = [a + coef * b for a, b in zip(v, z)]
            vecs.append(tuple(v))
        out[k] = vecs
    return out


def _random_invertible(rng: random.Random, n: int) -> ExactMatrix:
    while True:
        m = ExactMatrix([[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)])
        if n == 0 or mat_det(m) != 0:
            return m


def random_acyclic_complex(rng: random.Random, max_dim: int = 6, max_len: int = 4) -> BasedComplex:
    """An exact complex C_k = A_k + B_k with d_k : B_k ~ A_{k-1}, in random bases."""
    length = rng.randint(1, max_len)
    while True:
        ranks = [0] + [rng.randint(0, max_dim // 2) for _ in range(length)] + [0]
        dims = [ranks[k] + ranks[k + 1] for k in range(length + 1)]
        if all(d <= max_dim for d in dims) and any(dims):
            break
    changes = [_random_invertible(rng, d) for d in dims]
    diffs = []
    for k in range(1, length + 1):
        # standard form: the last ranks[k] coordinates of C_k map onto the first ranks[k] of C_{k-1}
        std = [[Fraction(0)] * dims[k] for _ in range(dims[k - 1])]
        a_src = dims[k] - ranks[k]
        for i in range(ranks[k]):
            std[i][a_src + i] = Fraction(1)
        std_m = ExactMatrix(std, cols=dims[k])
        diffs.append(changes[k - 1] @ std_m @ mat_inverse(changes[k]) if dims[k] and dims[k - 1] else std_m)
    return BasedComplex(tuple(dims), tuple(diffs))


# -- operators and the T^3 complex --------------------------------------------

@dataclass(frozen=True)
class OperatorTriple:
    t1: ExactMatrix
    t2: ExactMatrix
    t3: ExactMatrix

    def __post_init__(self):
        ops = (self.t1, self.t2, self.t3)
        size = self.t1.rows
        if any(not t.is_square() or t.rows != size for t in ops):
            raise ValueError("operators must be square of equal size")
        names = ("T1", "T2", "T3")
        for i in range(3):
            for j in range(i + 1, 3):
                if ops[i] @ ops[j] != ops[j] @ ops[i]:
                    raise NonCommutingError((names[i], names[j]))

    @property
    def size(self) -> int:
        return self.t1.rows

    def to_json(self) -> dict:
        return {"operators": [t.to_json() for t in (self.t1, self.t2, self.t3)]}

    @classmethod
    def from_json(cls, obj) -> OperatorTriple:
        try:
            ops = [ExactMatrix.from_json(m) for m in obj["operators"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed operator triple: {exc}") from None
        if len(ops) != 3:
            raise ValueError("need exactly three operators")
        return cls(*ops)


def _unit(n: int, i: int, j: int) -> ExactMatrix:
    rows = [[_ZERO] * n for _ in range(n)]
    rows[i][j] = Fraction(1)
    return ExactMatrix(rows, cols=n)


def off_block_coordinates(lam: Partition) -> list[tuple[int, int]]:
    """Matrix positions outside the diagonal blocks, ordered by (block row, block col, i, j)."""
    starts = []
    pos = 0
    for p in lam.parts:
        starts.append(range(pos, pos + p))
        pos += p
    out = []
    for a, rows in enumerate(starts):
        for b, cols in enumerate(starts):
            if a != b:
                out.extend((i, j) for i in rows for j in cols)
    return out


def is_block_diagonal(x: ExactMatrix, lam: Partition) -> bool:
    return all(x[i, j] == 0 for i, j in off_block_coordinates(lam))


def adjoint_operator(x: ExactMatrix, lam: Partition | None = None) -> ExactMatrix:
    """Matrix of v -> X^{-1} v X - v on gl_n (row-major E_ij basis) or on the off-block part for lam."""
    if not x.is_square():
        raise ValueError("X must be square")
    n = x.rows
    x_inv = mat_inverse(x)  # ZeroDivisionError if singular
    if lam is None:
        coords = [(i, j) for i in range(n) for j in range(n)]
    else:
        if lam.n != n:
            raise ValueError(f"{lam} is not a partition of {n}")
        if not is_block_diagonal(x, lam):
            raise ValueError(f"X is not block diagonal for {lam}; the off-block part is not invariant")
        coords = off_block_coordinates(lam)
    index = {c: k for k, c in enumerate(coords)}
    columns = []
    for i, j in coords:
        img = x_inv @ _unit(n, i, j) @ x - _unit(n, i, j)
        col = [_ZERO] * len(coords)
        for a in range(n):
            for b in range(n):
                if img[a, b]:
                    if (a, b) not in index:
                        raise ArithmeticError("selected subspace is not invariant")
                    col[index[(a, b)]] = img[a, b]
        columns.append(col)
    return ExactMatrix.from_columns(columns, rows=len(coords))


def build_t3_complex(ops: OperatorTriple) -> BasedComplex:
    """V -> V^3 -> V^3 -> V, i.e. terms C_3 = V, C_2 = V^3, C_1 = V^3, C_0 = V.

    d_3(v) = (t3 v, -t2 v, t1 v); d_2 sends the three summands to
    (-t2, t1, 0), (-t3, 0, t1), (0, -t3, t2); d_1(v1, v2, v3) = t1 v1 + t2 v2 + t3 v3.
    """
    t1, t2, t3 = ops.t1, ops.t2, ops.t3
    n = ops.size
    z = ExactMatrix.zeros(n, n)
    d3 = ExactMatrix.blocks([[t3], [-t2], [t1]])
    d2 = ExactMatrix.blocks([[-t2, -t3, z], [t1, z, -t3], [z, t1, t2]])
    d1 = ExactMatrix.blocks([[t1, t2, t3]])
    if n == 0:
        return BasedComplex((0, 0, 0, 0), (ExactMatrix.zeros(0, 0),) * 3)
    return BasedComplex((n, 3 * n, 3 * n, n), (d1, d2, d3))


def potential_gradient(x: ExactMatrix, y: ExactMatrix, z: ExactMatrix):
    """Partial derivatives of x[y, z]: ([y, z], [z, x], [x, y])."""
    if not (x.shape == y.shape == z.shape) or not x.is_square():
        raise ValueError("need three square matrices of equal size")

    def br(a, b):
        return a @ b - b @ a

    return br(y, z), br(z, x), br(x, y)


# -- random inputs -------------------------------------------------------------

def random_commuting_triple(rng: random.Random, size: int) -> OperatorTriple:
    """Three polynomials in one random matrix."""
    a = ExactMatrix([[Fraction(rng.randint(-2, 2)) for _ in range(size)] for _ in range(size)])
    ident = ExactMatrix.identity(size)
    a2 = a @ a
    ops = []
    for _ in range(3):
        c0, c1, c2 = (Fraction(rng.randint(-2, 2)) for _ in range(3))
        ops.append(ident.scale(c0) + a.scale(c1) + a2.scale(c2))
    return OperatorTriple(*ops)


def random_block_scalars(rng: random.Random, lam: Partition) -> list[list[Fraction]]:
    """Three lists of nonzero block values, at least one list pairwise distinct."""
    while True:
        vals = [[Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5)) for _ in lam.parts]
                for _ in range(3)]
        if any(len(set(v)) == len(v) for v in vals):
            return vals


def block_scalar_matrix(values: Sequence[Fraction], lam: Partition) -> ExactMatrix:
    return ExactMatrix.diag([v for v, p in zip(values, lam.parts) for _ in range(p)])


def u_pm_complex(xs: Sequence[ExactMatrix], lam: Partition) -> BasedComplex:
    """T^3 complex of the off-block part u_- + u_+ for a block-diagonal triple."""
    return build_t3_complex(OperatorTriple(*(adjoint_operator(x, lam) for x in xs)))


def orientation_suite(rng: random.Random, lam: Partition, samples: int = 1) -> list:
    """Torsions of u_pm complexes for random generic block-scalar triples."""
    out = []
    for _ in range(samples):
        vals = random_block_scalars(rng, lam)
        xs = [block_scalar_matrix(v, lam) for v in vals]
        out.append(torsion(u_pm_complex(xs, lam)))
    return out


__all__ = [
    "BasedComplex", "ComplexError", "NonCommutingError", "OperatorTriple", "adjoint_operator",
    "block_scalar_matrix", "build_t3_complex", "cohomology_ranks", "default_b", "is_block_diagonal",
    "off_block_coordinates", "orientation_suite", "potential_gradient", "random_acyclic_complex",
    "random_b_choice", "random_block_scalars", "random_commuting_triple", "torsion", "u_pm_complex",
]
