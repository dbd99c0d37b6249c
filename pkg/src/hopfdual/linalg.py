"""Exact rank computations over the rationals.

Matrices are cleared of denominators row by row and then eliminated over the
integers: Bareiss on a dense copy for narrow matrices, and a sparse
Markowitz-style elimination (shortest row, sparsest column) otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Tuple

DENSE_THRESHOLD = 32


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in dict(self.entries).items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, rows: List[List]) -> "SparseMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        return cls(nr, nc, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols, {})

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not self.entries

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> List[Dict[int, Fraction]]:
        rows: List[Dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        right = other.row_dicts()
        acc: Dict[Tuple[int, int], Fraction] = {}
        for (i, k), v in self.entries.items():
            for j, u in right[k].items():
                acc[(i, j)] = acc.get((i, j), 0) + v * u
        return SparseMatrix(self.rows, other.cols, acc)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})


def _integer_rows(M: SparseMatrix) -> List[Dict[int, int]]:
    out = []
    for row in M.row_dicts():
        if not row:
            continue
        d = 1
        for v in row.values():
            d = lcm(d, v.denominator)
        irow = {j: int(v * d) for j, v in row.items()}
        g = 0
        for v in irow.values():
            g = gcd(g, v)
        out.append({j: v // g for j, v in irow.items()})
    return out


def bareiss_rank(rows: List[List[int]]) -> int:
    """Rank of a dense integer matrix by one-step fraction-free elimination."""
    A = [list(r) for r in rows]
    if not A:
        return 0
    nr, nc = len(A), len(A[0])
    prev = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if A[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        Ar = A[r]
        for i in range(r + 1, nr):
            Ai = A[i]
            a = Ai[c]
            if a:
                A[i] = [(p * Ai[j] - a * Ar[j]) // prev if j > c else 0 for j in range(nc)]
            else:
                A[i] = [(p * Ai[j]) // prev if j > c else 0 for j in range(nc)]
        prev = p
        r += 1
    return r


def sparse_rank(rows: Iterable[Mapping[int, int]]) -> int:
    """Rank of a sparse integer matrix given as ``{col: value}`` row maps."""
    R: Dict[int, Dict[int, int]] = {}
    colrows: Dict[int, set] = {}
    for idx, row in enumerate(rows):
        row = {j: v for j, v in row.items() if v}
        if not row:
            continue
        R[idx] = row
        for j in row:
            colrows.setdefault(j, set()).add(idx)
    rank = 0
    while R:
        ri = min(R, key=lambda k: (len(R[k]), k))
        prow = R.pop(ri)
        c = min(prow, key=lambda j: (len(colrows[j]), j))
        p = prow[c]
        for j in prow:
            colrows[j].discard(ri)
        for k in sorted(colrows[c]):
            row = R[k]
            a = row[c]
            g = gcd(p, a)
            pp, aa = p // g, a // g
            new: Dict[int, int] = {}
            for j, v in row.items():
                new[j] = pp * v
            for j, v in prow.items():
                new[j] = new.get(j, 0) - aa * v
            old_cols = set(row)
            new = {j: v for j, v in new.items() if v}
            cg = 0
            for v in new.values():
                cg = gcd(cg, v)
                if cg == 1:
                    break
            if cg > 1:
                new = {j: v // cg for j, v in new.items()}
            for j in old_cols - set(new):
                colrows[j].discard(k)
            for j in set(new) - old_cols:
                colrows.setdefault(j, set()).add(k)
            if new:
                R[k] = new
            else:
                del R[k]
        colrows.pop(c, None)
        rank += 1
    return rank


def rank(M: SparseMatrix, dense_threshold: int = DENSE_THRESHOLD) -> int:
    rows = _integer_rows(M)
    if not rows:
        return 0
    if M.cols <= dense_threshold and len(rows) <= dense_threshold:
        return bareiss_rank([[r.get(j, 0) for j in range(M.cols)] for r in rows])
    return sparse_rank(rows)


def rank_kernel(M: SparseMatrix, dense_threshold: int = DENSE_THRESHOLD) -> Tuple[int, int]:
    """Exact ``(rank, cols - rank)`` of ``M`` over the rationals."""
    r = rank(M, dense_threshold)
    return r, M.cols - r


def solve_unique(A: List[List[Fraction]], b: List[Fraction]) -> List[Fraction] | None:
    """Solve ``A x = b`` when the solution exists and is unique, else ``None``."""
    n = len(A[0]) if A else 0
    M = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(A, b)]
    piv_cols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] for row in M[r:]):
        return None
    if r < n:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = M[i][-1]
    return x
