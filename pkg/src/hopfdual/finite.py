"""Finite-dimensional algebras, sparse vectors and quotient spaces over Q.

Vectors are ``{key: Fraction}`` dicts without zero entries; keys are basis
indices (or tuples of them for tensor powers).  A :class:`Quotient` turns a
span of relation vectors into a canonical reduction map, which is how the
balanced tensor products ``U (x)_A U`` etc. are realized.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

Vec = Dict[Hashable, Fraction]


class AlgebraError(ValueError):
    """Structure constants do not define a unital associative algebra."""


def vadd(u: Mapping, v: Mapping, c=1) -> Vec:
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, 0) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vscale(u: Mapping, c) -> Vec:
    if not c:
        return {}
    return {k: c * x for k, x in u.items()}


def vsum(vectors: Iterable[Mapping]) -> Vec:
    out: Vec = {}
    for v in vectors:
        for k, x in v.items():
            y = out.get(k, 0) + x
            if y:
                out[k] = y
            else:
                del out[k]
    return out


def tensor(*vs: Mapping) -> Vec:
    """Tensor product of vectors; keys become tuples."""
    out: Vec = {(): Fraction(1)}
    for v in vs:
        new: Vec = {}
        for k, x in out.items():
            for l, y in v.items():
                new[k + (l,)] = x * y
        out = new
    return out


def basis_vec(k) -> Vec:
    return {k: Fraction(1)}


class Quotient:
    """``V / span(relations)`` with a canonical normal form.

    Relation rows are kept fully reduced (each pivot key appears in exactly
    one row), so ``reduce`` is a single pass and its output is canonical.
    """

    def __init__(self, relations: Iterable[Mapping] = ()):
        self.rows: Dict[Hashable, Vec] = {}
        self.where: Dict[Hashable, set] = {}
        for r in relations:
            self.add(r)

    def reduce(self, v: Mapping) -> Vec:
        out = {k: Fraction(x) for k, x in v.items() if x}
        for k in [k for k in out if k in self.rows]:
            c = out.get(k)
            if c:
                out = vadd(out, self.rows[k], -c)
        return out

    def add(self, r: Mapping) -> bool:
        r = self.reduce(r)
        if not r:
            return False
        p = max(r)
        inv = 1 / r[p]
        r = {k: x * inv for k, x in r.items()}
        for q in list(self.where.get(p, ())):
            row = self.rows[q]
            c = row[p]
            new = vadd(row, r, -c)
            for k in row:
                if k not in new:
                    self.where[k].discard(q)
            for k in new:
                if k not in row:
                    self.where.setdefault(k, set()).add(q)
            self.rows[q] = new
        self.rows[p] = r
        for k in r:
            self.where.setdefault(k, set()).add(p)
        return True

    def equal(self, u: Mapping, v: Mapping) -> bool:
        return not self.reduce(vadd(u, v, -1))

    def is_zero(self, u: Mapping) -> bool:
        return not self.reduce(u)

    def basis(self, ambient: Iterable[Hashable]) -> List[Hashable]:
        """Ambient keys that survive as quotient basis vectors (non-pivots)."""
        return [k for k in ambient if k not in self.rows]

    @property
    def relation_rank(self) -> int:
        return len(self.rows)


def nullspace(columns: Sequence[Hashable], equations: Iterable[Mapping]) -> List[Vec]:
    """Basis of ``{x : eq . x = 0 for all eq}`` with ``x`` indexed by ``columns``."""
    Q = Quotient(equations)
    free = [c for c in columns if c not in Q.rows]
    out = []
    for f in free:
        v: Vec = {f: Fraction(1)}
        for p, row in Q.rows.items():
            c = row.get(f)
            if c:
                v[p] = -c
        out.append(v)
    return out


def solve(columns: Sequence, images: Sequence[Mapping], target: Mapping) -> Optional[Vec]:
    """Find ``x`` with ``sum_c x_c images[c] = target`` (unique solution or ``None``)."""
    from .linalg import solve_unique

    keys = sorted({k for im in images for k in im} | set(target), key=repr)
    A = [[im.get(k, 0) for im in images] for k in keys]
    b = [target.get(k, 0) for k in keys]
    if not A:
        return {c: Fraction(0) for c in columns} if not any(b) else None
    x = solve_unique(A, b)
    if x is None:
        return None
    return {c: v for c, v in zip(columns, x) if v}


@dataclass(frozen=True)
class FiniteAlgebra:
    """Unital associative algebra with basis ``e_0..e_{d-1}``.

    ``table[(i, j)]`` is the vector ``e_i e_j``; ``unit`` the unit vector.
    """

    name: str
    basis: Tuple[str, ...]
    table: Mapping[Tuple[int, int], Mapping[int, Fraction]]
    unit: Mapping[int, Fraction]

    def __post_init__(self):
        self.validate()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def mul(self, u: Mapping, v: Mapping) -> Vec:
        out: Vec = {}
        for i, x in u.items():
            for j, y in v.items():
                for k, z in self.table.get((i, j), {}).items():
                    w = out.get(k, 0) + x * y * z
                    if w:
                        out[k] = w
                    else:
                        out.pop(k, None)
        return out

    def e(self, i: int) -> Vec:
        return basis_vec(i)

    def one(self) -> Vec:
        return dict(self.unit)

    def validate(self) -> None:
        d = self.dim
        for i, j, k in product(range(d), repeat=3):
            a, b, c = self.e(i), self.e(j), self.e(k)
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise AlgebraError(
                    f"{self.name}: associativity fails on ({self.basis[i]}, {self.basis[j]}, {self.basis[k]})"
                )
        for i in range(d):
            if self.mul(self.one(), self.e(i)) != self.e(i) or self.mul(self.e(i), self.one()) != self.e(i):
                raise AlgebraError(f"{self.name}: unit law fails on {self.basis[i]}")

    def is_commutative(self) -> bool:
        return all(
            self.mul(self.e(i), self.e(j)) == self.mul(self.e(j), self.e(i))
            for i in range(self.dim)
            for j in range(self.dim)
        )

    def format(self, v: Mapping) -> str:
        if not v:
            return "0"
        parts = []
        for k in sorted(v):
            c = v[k]
            parts.append(f"{c}*{self.basis[k]}" if c != 1 else self.basis[k])
        return " + ".join(parts)

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        triples = []
        for (i, j), v in sorted(self.table.items()):
            for k, c in sorted(v.items()):
                triples.append([self.basis[i], self.basis[j], self.basis[k], str(c)])
        return {
            "kind": "finite-algebra",
            "name": self.name,
            "basis": list(self.basis),
            "structure_constants": triples,
            "unit": {self.basis[k]: str(c) for k, c in sorted(self.unit.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FiniteAlgebra":
        basis = tuple(data["basis"])
        if len(set(basis)) != len(basis):
            raise AlgebraError("duplicate basis names")
        index = {b: i for i, b in enumerate(basis)}
        table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for entry in data.get("structure_constants", []):
            if len(entry) != 4:
                raise AlgebraError(f"structure constant entry {entry!r} must be [a, b, c, value]")
            a, b, c, val = entry
            for name in (a, b, c):
                if name not in index:
                    raise AlgebraError(f"unknown basis element {name!r}")
            v = Fraction(str(val))
            slot = table.setdefault((index[a], index[b]), {})
            slot[index[c]] = slot.get(index[c], 0) + v
        table = {k: {i: x for i, x in v.items() if x} for k, v in table.items()}
        unit = {}
        for name, val in data.get("unit", {}).items():
            if name not in index:
                raise AlgebraError(f"unknown basis element {name!r} in unit")
            unit[index[name]] = Fraction(str(val))
        return cls(data.get("name", "A"), basis, table, unit)

    @classmethod
    def loads(cls, text: str) -> "FiniteAlgebra":
        return cls.from_json(json.loads(text))


def dual_numbers() -> FiniteAlgebra:
    """``Q[x]/(x^2)``."""
    one = Fraction(1)
    return FiniteAlgebra(
        "Q[x]/(x^2)",
        ("1", "x"),
        {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one}},
        {0: one},
    )


def upper_triangular2() -> FiniteAlgebra:
    """Upper-triangular 2x2 matrices, basis ``e11, e12, e22``."""
    one = Fraction(1)
    return FiniteAlgebra(
        "T2(Q)",
        ("e11", "e12", "e22"),
        {(0, 0): {0: one}, (0, 1): {1: one}, (1, 2): {1: one}, (2, 2): {2: one}},
        {0: one, 2: one},
    )
