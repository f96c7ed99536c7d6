"""Exact model of exp on semisimple eigenvalue data.

An eigenvalue is a + 2 pi i s with a in Q(i) and s in Q. Differences against
2 pi i Z are then decidable: exp(lam) = exp(mu) exactly when the a parts agree
and s_lam - s_mu is an integer.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact.scalars import GaussianRational, as_fraction, parse_scalar, simplify
from .groups import Partition
from .moduli import TorusElem


@dataclass(frozen=True)
class LieEigenvalue:
    a: object  # Fraction or GaussianRational
    s: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", simplify(self.a))
        object.__setattr__(self, "s", as_fraction(self.s))

    def __sub__(self, other: LieEigenvalue) -> LieEigenvalue:
        return LieEigenvalue(self.a - other.a, self.s - other.s)

    def __str__(self):
        return f"{self.a} + 2pi i*{self.s}"

    def to_json(self) -> dict:
        a = self.a if isinstance(self.a, GaussianRational) else GaussianRational(self.a, 0)
        return {"a": {"re": str(a.re), "im": str(a.im)}, "s": str(self.s)}

    @classmethod
    def from_json(cls, obj) -> LieEigenvalue:
        try:
            return cls(parse_scalar(obj["a"]), Fraction(obj["s"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed eigenvalue: {exc}") from None


def exp_equal(lam: LieEigenvalue, mu: LieEigenvalue) -> bool:
    d = lam - mu
    return d.a == 0 and d.s.denominator == 1


def is_etale(e: Sequence[LieEigenvalue]) -> bool:
    """No two eigenvalues differ by a nonzero integer multiple of 2 pi i."""
    for i, x in enumerate(e):
        for y in e[i + 1:]:
            if exp_equal(x, y) and x != y:
                return False
    return True


def _class_sizes(e: Sequence[LieEigenvalue], same) -> Partition:
    reps: list[LieEigenvalue] = []
    sizes: list[int] = []
    for x in e:
        for k, r in enumerate(reps):
            if same(x, r):
                sizes[k] += 1
                break
        else:
            reps.append(x)
            sizes.append(1)
    return Partition(tuple(sizes))


def eig_partition(e: Sequence[LieEigenvalue]) -> Partition:
    return _class_sizes(e, lambda x, y: x == y)


def exp_partition(e: Sequence[LieEigenvalue]) -> Partition:
    return _class_sizes(e, exp_equal)


def exp_classes(e: Sequence[LieEigenvalue]) -> list[list[int]]:
    """Indices of e grouped by exp_equal, in order of first appearance."""
    groups: list[list[int]] = []
    for i, x in enumerate(e):
        for g in groups:
            if exp_equal(x, e[g[0]]):
                g.append(i)
                break
        else:
            groups.append([i])
    return groups


def check_stabiliser_preservation(e: Sequence[LieEigenvalue]) -> bool:
    """exp does not merge distinct eigenvalues, so diag(e) and exp(diag(e)) have the same centraliser."""
    return eig_partition(e) == exp_partition(e)


def unit_log(t: TorusElem) -> LieEigenvalue:
    if t.r != 1:
        raise ValueError(f"logarithm is only exact on the unit circle, got magnitude {t.r}")
    return LieEigenvalue(Fraction(0), t.theta)


def exp_of(lam: LieEigenvalue) -> TorusElem:
    """exp(2 pi i s) for a purely imaginary-lattice eigenvalue (a = 0)."""
    if lam.a != 0:
        raise ValueError("exp(a) for nonzero a leaves the exact lattice")
    return TorusElem(Fraction(1), lam.s)


def random_eigenlist(rng: random.Random, n: int) -> list[LieEigenvalue]:
    """Small random eigenvalue lists with plenty of exact coincidences."""
    a_choices = [Fraction(0), Fraction(1), Fraction(-1, 2), GaussianRational(0, 1), GaussianRational(1, 1)]
    out = []
    for _ in range(n):
        a = rng.choice(a_choices)
        s = Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3]))
        out.append(LieEigenvalue(a, s))
    return out


def random_etale_eigenlist(rng: random.Random, n: int, attempts: int = 10_000) -> list[LieEigenvalue]:
    for _ in range(attempts):
        e = random_eigenlist(rng, n)
        if is_etale(e):
            return e
    raise RuntimeError("could not sample an etale eigenvalue list")


def eigenlist_to_json(e: Sequence[LieEigenvalue]) -> list:
    return [x.to_json() for x in e]


def eigenlist_from_json(obj) -> list[LieEigenvalue]:
    if not isinstance(obj, list):
        raise ValueError("eigenvalue list must be a JSON array")
    return [LieEigenvalue.from_json(x) for x in obj]


__all__ = [
    "LieEigenvalue", "check_stabiliser_preservation", "eig_partition", "eigenlist_from_json",
    "eigenlist_to_json", "exp_classes", "exp_equal", "exp_of", "exp_partition", "is_etale",
    "random_eigenlist", "random_etale_eigenlist", "unit_log",
]
