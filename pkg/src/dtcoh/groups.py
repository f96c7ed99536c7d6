"""Partitions, Levi subgroups of GL_n / SL_n / PGL_n, relative Weyl groups and centres."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import factorial, gcd, prod
from typing import Iterator, Sequence

from .exact import ExactMatrix, mat_inverse, smith_normal_form
from .exact.snf import cokernel


class Kind(str, enum.Enum):
    GL = "gl"
    SL = "sl"
    PGL = "pgl"
    GL_ADD = "gl_add"

    @classmethod
    def parse(cls, value) -> Kind:
        if isinstance(value, Kind):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown group kind {value!r}; expected one of gl, sl, pgl, gl_add") from None


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @classmethod
    def of(cls, *parts: int) -> Partition:
        return cls(tuple(parts))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.parts)

    @cached_property
    def multiplicities(self) -> dict[int, int]:
        """Distinct part size j -> m_j, in decreasing order of j."""
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def block_positions(self) -> dict[int, list[int]]:
        """Part size j -> the (0-based) block positions of that size."""
        out: dict[int, list[int]] = {}
        for i, p in enumerate(self.parts):
            out.setdefault(p, []).append(i)
        return out

    def gcd(self) -> int:
        return gcd(*self.parts) if self.parts else 0

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"

    def to_json(self) -> list[int]:
        return list(self.parts)

    @classmethod
    def from_json(cls, obj) -> Partition:
        if not isinstance(obj, list) or not all(isinstance(x, int) for x in obj):
            raise ValueError(f"partition must be a JSON integer array, got {obj!r}")
        return cls(tuple(obj))


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partitions_cached(n: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions(n, n))


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n in lexicographically decreasing order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_partitions_cached(n))


def z_centralizer(mu: Sequence[int]) -> int:
    """Order of the centralizer of a permutation with cycle type mu."""
    counts: dict[int, int] = {}
    for c in mu:
        counts[c] = counts.get(c, 0) + 1
    return prod(c**a * factorial(a) for c, a in counts.items())


@dataclass(frozen=True)
class LeviDescriptor:
    kind: Kind
    partition: Partition
    dim_centre: int
    weyl_order: int

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "partition": self.partition.to_json(),
            "dim_centre": self.dim_centre,
            "weyl_order": self.weyl_order,
        }


def weyl_order(lam: Partition) -> int:
    return prod(factorial(m) for m in lam.multiplicities.values())


def levi_descriptor(kind, lam: Partition) -> LeviDescriptor:
    kind = Kind.parse(kind)
    dim = lam.l if kind in (Kind.GL, Kind.GL_ADD) else lam.l - 1
    return LeviDescriptor(kind, lam, dim, weyl_order(lam))


@dataclass(frozen=True)
class CycleType:
    """A conjugacy class of W = prod_j S_{m_j}: one partition of m_j per part size j."""

    partition: Partition
    blocks: tuple[tuple[int, tuple[int, ...]], ...]  # (part size j, cycle type of S_{m_j})
    class_size: int

    @property
    def cycles(self) -> tuple[int, ...]:
        """All cycle lengths, counted in blocks permuted."""
        return tuple(c for _, mu in self.blocks for c in mu)

    @property
    def sign(self) -> int:
        return (-1) ** sum(c - 1 for c in self.cycles)

    def is_identity(self) -> bool:
        return all(c == 1 for c in self.cycles)

    def representative(self) -> tuple[int, ...]:
        """A permutation of block positions in this class (as an image tuple)."""
        perm = list(range(self.partition.l))
        positions = self.partition.block_positions()
        for j, mu in self.blocks:
            pos = positions[j]
            k = 0
            for c in mu:
                cyc = pos[k : k + c]
                for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                    perm[a] = b
                k += c
        return tuple(perm)

    def to_json(self) -> dict:
        return {
            "blocks": [{"part": j, "cycles": list(mu)} for j, mu in self.blocks],
            "class_size": self.class_size,
        }


def weyl_cycle_types(lam: Partition) -> list[CycleType]:
    """Conjugacy classes of the relative Weyl group prod_j S_{m_j}, with exact sizes."""
    per_size = [
        [(j, p.parts) for p in partitions_of(m)] for j, m in lam.multiplicities.items()
    ]
    out = []

    def rec(i, acc):
        if i == len(per_size):
            size = prod(
                factorial(lam.multiplicities[j]) // z_centralizer(mu) for j, mu in acc
            )
            out.append(CycleType(lam, tuple(acc), size))
            return
        for item in per_size[i]:
            rec(i + 1, acc + [item])

    rec(0, [])
    return out


def centre_structure(kind, lam: Partition) -> tuple[int, int]:
    """(free rank, order of the torsion) of the character lattice of Z(L_{G, lam})."""
    kind = Kind.parse(kind)
    if kind == Kind.GL:
        return (lam.l, 1)
    if kind == Kind.SL:
        # characters of Z(L_SL) = Z^l / Z*(lam_1, ..., lam_l)
        free, torsion = cokernel([[p] for p in lam.parts])
    elif kind == Kind.PGL:
        # cocharacters of Z(L_GL)/G_m = Z^l / Z*(1, ..., 1)
        free, torsion = cokernel([[1] for _ in lam.parts])
    else:
        raise ValueError("centre_structure is defined for gl, sl and pgl")
    return (free, prod(torsion))


@dataclass(frozen=True)
class ComponentGroupData:
    """pi_0(Z(L_{SL_n, lam})) = Z/g together with the W-action on it."""

    partition: Partition
    g: int
    action: tuple[tuple[tuple[int, int], int], ...] = field(default=())  # ((p, p+1), multiplier)

    @property
    def is_trivial(self) -> bool:
        return all(a % self.g == 1 % self.g for _, a in self.action)

    def multiplier(self, swap: tuple[int, int]) -> int:
        for key, a in self.action:
            if key == swap:
                return a
        raise KeyError(f"{swap} is not an adjacent generator of W for {self.partition}")

    def to_json(self) -> dict:
        return {
            "partition": self.partition.to_json(),
            "g": self.g,
            "action": [{"swap": list(k), "multiplier": a} for k, a in self.action],
            "is_trivial": self.is_trivial,
        }


def weyl_generators(lam: Partition) -> list[tuple[int, int]]:
    """Adjacent swaps of equal-size blocks; they generate W."""
    return [
        (p, q)
        for pos in lam.block_positions().values()
        for p, q in zip(pos, pos[1:])
    ]


def component_action(lam: Partition) -> ComponentGroupData:
    """Torsion of Z^l / Z*lam and the induced action of each W generator, via SNF."""
    u, d, _ = smith_normal_form([[p] for p in lam.parts])
    g = d[0][0]
    u_inv = mat_inverse(ExactMatrix(u))
    # torsion generator x0 = U^{-1} e_1; its class has order g
    x0 = [int(u_inv[i, 0]) for i in range(lam.l)]
    action = []
    for p, q in weyl_generators(lam):
        sx = list(x0)
        sx[p], sx[q] = sx[q], sx[p]
        y = [sum(u[i][k] * sx[k] for k in range(lam.l)) for i in range(lam.l)]
        if any(y[1:]):
            raise ArithmeticError(f"W generator {(p, q)} moved torsion off torsion for {lam}")
        action.append(((p, q), y[0] % g if g > 1 else 0))
    data = ComponentGroupData(lam, g, tuple(action))
    return data


def adjacent_word(perm: Sequence[int]) -> list[tuple[int, int]]:
    """Write a permutation (image tuple) as a product of adjacent transpositions."""
    arr = list(perm)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(arr) - 1):
            if arr[i] > arr[i + 1]:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
                word.append((i, i + 1))
                changed = True
    return word


def class_multiplier(data: ComponentGroupData, tau: CycleType) -> int:
    """Image of a representative of tau in (Z/g)^x."""
    if tau.partition != data.partition:
        raise ValueError(f"cycle type of {tau.partition} used with component data of {data.partition}")
    a = 1
    for swap in adjacent_word(tau.representative()):
        a = a * data.multiplier(swap) % data.g if data.g > 1 else 0
    return a


def fixed_components(data: ComponentGroupData, tau: CycleType) -> int:
    """Fixed points of a class representative on (Z/g)^3."""
    a = class_multiplier(data, tau)
    return gcd(a - 1, data.g) ** 3
