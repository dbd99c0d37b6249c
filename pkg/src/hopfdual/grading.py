"""Weight-graded bases of exterior-power-times-module spaces.

Weights: each variable has weight +1, each exterior generator carries the
weight declared by the owning complex (+1 for ``dx``-type chains, -1 for
dual/polyvector cochains), and coefficient-module generators carry their own
weights.  A basis symbol is ``(multi_index, exponent, generator)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Dict, List, Tuple

Symbol = Tuple[Tuple[int, ...], Tuple[int, ...], int]


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> Tuple[Tuple[int, ...], ...]:
    """All exponent vectors of total ``degree``, in ascending lex order."""
    if degree < 0:
        return ()
    if nvars == 0:
        return ((),) if degree == 0 else ()
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort()
    return tuple(out)


def count_monomials(nvars: int, degree: int) -> int:
    if degree < 0:
        return 0
    if nvars == 0:
        return 1 if degree == 0 else 0
    return comb(degree + nvars - 1, nvars - 1)


@dataclass(frozen=True)
class SpaceDescriptor:
    nvars: int
    rank: int
    exterior_weight: int
    generator_weights: Tuple[int, ...] = (0,)


@dataclass(frozen=True)
class GradedBasis:
    exterior_degree: int
    weight: int
    elements: Tuple[Symbol, ...]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def index(self) -> Dict[Symbol, int]:
        return {s: i for i, s in enumerate(self.elements)}


@lru_cache(maxsize=4096)
def graded_slice(space: SpaceDescriptor, k: int, w: int) -> GradedBasis:
    """Deterministically ordered basis of the weight-``w`` part in exterior degree ``k``."""
    elems: List[Symbol] = []
    if 0 <= k <= space.rank:
        for I in combinations(range(space.rank), k):
            for s, g in enumerate(space.generator_weights):
                d = w - k * space.exterior_weight - g
                for e in monomials(space.nvars, d):
                    elems.append((I, e, s))
    elems.sort()
    return GradedBasis(k, w, tuple(elems))


def slice_dimension(space: SpaceDescriptor, k: int, w: int) -> int:
    """Closed-form count matching ``len(graded_slice(space, k, w))``."""
    if not 0 <= k <= space.rank:
        return 0
    return comb(space.rank, k) * sum(
        count_monomials(space.nvars, w - k * space.exterior_weight - g)
        for g in space.generator_weights
    )
