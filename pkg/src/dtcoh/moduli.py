"""Points of Sym^n(G_m^3) for GL_n / SL_n, strata, cover fibres, the bad locus and twisted classes.

A torus coordinate is stored as r * exp(2 pi i theta) with r a positive rational
and theta a rational number of turns in [0, 1), so roots of unity, Weyl
permutations and determinant constraints are all exactly decidable.
"""
from __future__ import annotations

import random
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Sequence

from .exact import GradedSeries
from .exact.scalars import as_fraction
from .exact.snf import int_det
from .groups import Kind, Partition
from .integrality import is_prime


@dataclass(frozen=True, order=True)
class TorusElem:
    r: Fraction
    theta: Fraction

    def __post_init__(self):
        r = as_fraction(self.r)
        if r <= 0:
            raise ValueError(f"magnitude must be positive, got {r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "theta", as_fraction(self.theta) % 1)

    @classmethod
    def root_of_unity(cls, k: int, n: int) -> TorusElem:
        return cls(Fraction(1), Fraction(k, n))

    def __mul__(self, other: TorusElem) -> TorusElem:
        return TorusElem(self.r * other.r, self.theta + other.theta)

    def __pow__(self, k: int) -> TorusElem:
        return TorusElem(self.r**k, self.theta * k)

    def inverse(self) -> TorusElem:
        return TorusElem(1 / self.r, -self.theta)

    def is_one(self) -> bool:
        return self.r == 1 and self.theta == 0

    def __str__(self):
        if self.theta == 0:
            return str(self.r)
        return f"{self.r}*e(2pi i*{self.theta})"

    def to_json(self) -> dict:
        return {"r": str(self.r), "theta": str(self.theta)}

    @classmethod
    def from_json(cls, obj) -> TorusElem:
        return cls(Fraction(obj["r"]), Fraction(obj["theta"]))


ONE = TorusElem(Fraction(1), Fraction(0))
Triple = tuple[TorusElem, TorusElem, TorusElem]


def torus_product(items: Iterable[TorusElem]) -> TorusElem:
    out = ONE
    for x in items:
        out = out * x
    return out


@dataclass(frozen=True)
class SymPoint:
    """An unordered n-tuple of triples in G_m^3; SL points have coordinatewise product 1."""

    kind: Kind
    triples: tuple[Triple, ...]

    def __post_init__(self):
        kind = Kind.parse(self.kind)
        if kind not in (Kind.GL, Kind.SL):
            raise ValueError("points are modelled for gl and sl only")
        triples = tuple(sorted(tuple(t) for t in self.triples))
        if any(len(t) != 3 for t in triples):
            raise ValueError("every entry must be a triple")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "triples", triples)
        if kind == Kind.SL:
            for c in range(3):
                if not self.determinant(c).is_one():
                    raise ValueError(f"coordinate {c + 1} has determinant {self.determinant(c)}, not 1")

    @classmethod
    def from_coordinates(cls, kind, coords: Sequence[Sequence[TorusElem]]) -> SymPoint:
        """Build a point from three diagonal matrices given by their eigenvalue lists."""
        if len(coords) != 3 or len({len(c) for c in coords}) != 1:
            raise ValueError("need three eigenvalue lists of equal length")
        return cls(kind, tuple(zip(*coords)))

    @property
    def n(self) -> int:
        return len(self.triples)

    def coordinate(self, c: int) -> tuple[TorusElem, ...]:
        return tuple(t[c] for t in self.triples)

    def determinant(self, c: int) -> TorusElem:
        return torus_product(self.coordinate(c))

    def scaled(self, scalars: Sequence[TorusElem], kind=None) -> SymPoint:
        return SymPoint(
            kind or self.kind,
            tuple(tuple(x * s for x, s in zip(t, scalars)) for t in self.triples),
        )

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "triples": [[x.to_json() for x in t] for t in self.triples]}

    @classmethod
    def from_json(cls, obj) -> SymPoint:
        try:
            triples = [tuple(TorusElem.from_json(x) for x in t) for t in obj["triples"]]
            return cls(obj.get("kind", "gl"), tuple(triples))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed point: {exc}") from None


# -- strata and covers -------------------------------------------------------

def stratum_of(p: SymPoint) -> Partition:
    return Partition(tuple(Counter(p.triples).values()))


def is_generic(p: SymPoint) -> bool:
    """Some coordinate takes pairwise-distinct values on the distinct triples."""
    blocks = list(dict.fromkeys(p.triples))
    return any(len({t[c] for t in blocks}) == len(blocks) for c in range(3))


def theta_fiber(p: SymPoint, lam: Partition) -> list[tuple[Triple, ...]]:
    """Ordered centre points (x_1, ..., x_l), x_i repeated lam_i times, that expand to p."""
    if stratum_of(p) != lam:
        raise ValueError(f"point lies in stratum {stratum_of(p)}, not {lam}")
    counts = Counter(p.triples)
    by_size: dict[int, list[Triple]] = {}
    for t, m in sorted(counts.items()):
        by_size.setdefault(m, []).append(t)
    sizes = list(lam.multiplicities)
    out = []
    for choice in product(*(permutations(by_size[j]) for j in sizes)):
        out.append(tuple(x for group in choice for x in group))
    return out


def expand(centre: Sequence[Triple], lam: Partition) -> SymPoint:
    return SymPoint(Kind.GL, tuple(x for x, k in zip(centre, lam.parts) for _ in range(k)))


# -- bad locus and SL -> PGL fibres ----------------------------------------

def _require_prime(n: int) -> None:
    if not is_prime(n):
        raise ValueError(f"n must be prime, got {n}")


def special_multiset(n: int) -> tuple[TorusElem, ...]:
    """Eigenvalues of diag(1, w, ..., w^{n-1}) (n >= 3) or i*diag(1, -1) (n = 2)."""
    if n == 2:
        return tuple(sorted((TorusElem(1, Fraction(1, 4)), TorusElem(1, Fraction(3, 4)))))
    return tuple(sorted(TorusElem.root_of_unity(k, n) for k in range(n)))


def in_special_set(values: Sequence[TorusElem], n: int) -> bool:
    return tuple(sorted(values)) == special_multiset(n)


def in_centre(values: Sequence[TorusElem], n: int) -> bool:
    first = values[0]
    return all(v == first for v in values) and first.r == 1 and (first.theta * n).denominator == 1


def is_bad_point(p: SymPoint, n: int) -> bool:
    _require_prime(n)
    if p.kind != Kind.SL or p.n != n:
        raise ValueError(f"expected an SL_{n} point")
    coords = [p.coordinate(c) for c in range(3)]
    special = [in_special_set(v, n) for v in coords]
    return all(s or in_centre(v, n) for s, v in zip(special, coords)) and any(special)


def mu_n_orbit(p: SymPoint, n: int) -> set[SymPoint]:
    return {
        p.scaled([TorusElem.root_of_unity(k, n) for k in ks])
        for ks in product(range(n), repeat=3)
    }


def sl_pgl_fiber(p: SymPoint, n: int) -> int:
    """Size of the mu_n^3-orbit of an SL_n point."""
    _require_prime(n)
    if p.kind != Kind.SL or p.n != n:
        raise ValueError(f"expected an SL_{n} point")
    return len(mu_n_orbit(p, n))


def _int_root(m: int, k: int) -> int | None:
    if m < 0:
        return None
    lo, hi = 0, 1
    while hi**k <= m:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < m:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**k == m else None


def nth_roots(x: TorusElem, n: int) -> list[TorusElem]:
    """All n-th roots of x; the magnitude must be a perfect n-th power in Q."""
    num = _int_root(x.r.numerator, n)
    den = _int_root(x.r.denominator, n)
    if num is None or den is None:
        raise ValueError(f"{x.r} has no rational {n}-th root")
    r = Fraction(num, den)
    return [TorusElem(r, (x.theta + k) / n) for k in range(n)]


def eta2_fibre(q: SymPoint, n: int) -> list[tuple[SymPoint, tuple[TorusElem, ...]]]:
    """Pairs (SL point, scalar triple) whose product is q."""
    if q.kind != Kind.GL or q.n != n:
        raise ValueError(f"expected a GL_{n} point")
    roots = [nth_roots(q.determinant(c), n) for c in range(3)]
    out = set()
    for scalars in product(*roots):
        inv = [s.inverse() for s in scalars]
        out.add((q.scaled(inv, kind=Kind.SL), tuple(scalars)))
    return sorted(out, key=lambda pair: (pair[1], pair[0].triples))


def eta2_fiber_size(q: SymPoint, n: int) -> int:
    return len(eta2_fibre(q, n))


# -- twisted classes ---------------------------------------------------------

def twisted_normal_form(v: Sequence[int], n: int) -> tuple[tuple[int, int, int], list[list[int]]]:
    """Reduce v in (Z/n)^3 to (d, 0, 0) by integer row operations of determinant 1.

    Returns the normal form and M in SL_3(Z) with M v = (d, 0, 0) mod n.
    """
    if n < 1 or len(v) != 3:
        raise ValueError("need a triple and n >= 1")
    x = [int(a) % n for a in v]
    m = [[int(i == j) for j in range(3)] for i in range(3)]

    def add(src, dst, k):  # row dst += k * row src
        x[dst] += k * x[src]
        m[dst] = [a + k * b for a, b in zip(m[dst], m[src])]

    def rotate(i, j):  # (x_i, x_j) -> (x_j, -x_i), determinant 1
        x[i], x[j] = x[j], -x[i]
        m[i], m[j] = m[j], [-a for a in m[i]]

    for j in (1, 2):
        while x[j]:
            if x[0] == 0:
                rotate(0, j)
                continue
            add(0, j, -(x[j] // x[0]))
            if x[j]:
                rotate(0, j)
    if x[0] < 0:
        # negate rows 0 and 1; row 1 of x is already zero
        x[0], x[1] = -x[0], -x[1]
        m[0], m[1] = [-a for a in m[0]], [-a for a in m[1]]
    d = x[0] % n
    return (d, 0, 0), m


def check_witness(v: Sequence[int], n: int, form: Sequence[int], m: Sequence[Sequence[int]]) -> bool:
    image = [sum(a * b for a, b in zip(row, v)) for row in m]
    return int_det(m) == 1 and all((a - b) % n == 0 for a, b in zip(image, form))


def elementary_generators(n: int) -> list[list[list[int]]]:
    gens = []
    for i in range(3):
        for j in range(3):
            if i != j:
                g = [[int(a == b) for b in range(3)] for a in range(3)]
                g[i][j] = 1
                gens.append(g)
    return gens


def orbit_closure(start: Sequence[int], n: int) -> set[tuple[int, int, int]]:
    """Breadth-first closure of start under the elementary SL_3 generators mod n."""
    gens = elementary_generators(n)
    seen = {tuple(a % n for a in start)}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for g in gens:
            w = tuple(sum(a * b for a, b in zip(row, v)) % n for row in g)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def twisted_component_data(n: int) -> tuple[int, GradedSeries]:
    """Number of twisted PGL_n components and their contribution (one class in degree 0 each)."""
    _require_prime(n)
    nonzero = {v for v in product(range(n), repeat=3) if any(v)}
    orbit = orbit_closure((1, 0, 0), n)
    if orbit - {(0, 0, 0)} != nonzero:
        raise ArithmeticError(f"nonzero classes mod {n} do not form a single orbit")
    count = len(nonzero)
    assert count == n**3 - 1
    return count, GradedSeries.monomial(0, count)


# -- random points -----------------------------------------------------------

def random_torus_elem(rng: random.Random, power: int = 1) -> TorusElem:
    """A random torus element whose magnitude is a perfect power-th power."""
    base = Fraction(rng.randint(1, 5), rng.randint(1, 5))
    theta = Fraction(rng.randint(0, 23), 24)
    return TorusElem(base**power, theta)


def random_point(rng: random.Random, lam: Partition, kind=Kind.GL, generic: bool = True,
                 power: int = 1, attempts: int = 1000) -> SymPoint:
    """A random point in the stratum of lam (rejection-sampled until distinct and generic)."""
    kind = Kind.parse(kind)
    for _ in range(attempts):
        xs = [tuple(random_torus_elem(rng, power * lam.parts[-1]) for _ in range(3)) for _ in lam.parts]
        if kind == Kind.SL:
            last = lam.parts[-1]
            rest = [torus_product(x[c] ** k for x, k in zip(xs[:-1], lam.parts[:-1])) for c in range(3)]
            # x_l^{lam_l} must cancel the other blocks
            xs[-1] = tuple(
                nth_roots(rest[c].inverse(), last)[rng.randrange(last)] for c in range(3)
            )
        if len(set(xs)) != len(xs):
            continue
        p = SymPoint(kind, tuple(x for x, k in zip(xs, lam.parts) for _ in range(k)))
        if stratum_of(p) != lam or (generic and not is_generic(p)):
            continue
        return p
    raise RuntimeError(f"could not sample a point in stratum {lam}")


def random_good_sl_point(rng: random.Random, n: int) -> SymPoint:
    _require_prime(n)
    while True:
        lam = Partition((1,) * n)
        p = random_point(rng, lam, Kind.SL, generic=False)
        if not is_bad_point(p, n):
            return p


def bad_points(n: int) -> list[SymPoint]:
    """Every point with each coordinate special or central and at least one special."""
    _require_prime(n)
    special = special_multiset(n)
    centre = [tuple([TorusElem.root_of_unity(k, n)] * n) for k in range(n)]
    out = []
    for choice in product([special] + centre, repeat=3):
        if special not in choice:
            continue
        out.append(SymPoint.from_coordinates(Kind.SL, choice))
    return out


__all__ = [
    "ONE", "SymPoint", "TorusElem", "bad_points", "check_witness", "elementary_generators",
    "eta2_fibre", "eta2_fiber_size", "expand", "in_centre", "in_special_set", "is_bad_point",
    "is_generic", "mu_n_orbit", "nth_roots", "orbit_closure", "random_good_sl_point",
    "random_point", "random_torus_elem", "sl_pgl_fiber", "special_multiset", "stratum_of",
    "theta_fiber", "torus_product", "twisted_component_data", "twisted_normal_form",
]
