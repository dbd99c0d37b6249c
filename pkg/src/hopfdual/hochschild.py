"""Hochschild (co)homology of polynomial algebras via the Koszul resolution.

``A = k[x_1..x_m]`` is resolved over ``A^e`` by ``A^e (x) Lambda^k(k^m)`` with
differential contracting against ``x_i (x) 1 - 1 (x) x_i``.  Bimodules are free
left ``A``-modules whose right action is ``m . x_i = x_i m + B_i m`` for
commuting matrices ``B_i``; symmetric bimodules have ``B_i = 0``.

Both complexes reduce to Koszul complexes ``M (x) Lambda^*`` with operators
``C_i = -B_i``.  Cochain generators weigh -1 and chain generators +1, so every
differential preserves weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, Optional, Sequence, Tuple

from .algebroid import StructureError, Verdict
from .grading import SpaceDescriptor, count_monomials
from .homology import BettiTable, DualityReport, GradedComplex, Window, _add, compare_tables
from .poly import Poly

Matrix = Tuple[Tuple[Poly, ...], ...]


def default_variables(m: int) -> Tuple[str, ...]:
    if m <= 3:
        return ("x", "y", "z")[:m]
    return tuple(f"x{i + 1}" for i in range(m))


@dataclass(frozen=True)
class Bimodule:
    """Free rank-``r`` bimodule over ``k[x_1..x_m]`` with right-action twist ``B``."""

    variables: Tuple[str, ...]
    rank: int
    generator_weights: Tuple[int, ...]
    twist: Tuple[Matrix, ...] = ()  # twist[i][t][s]: m_s . x_i = x_i m_s + sum_t B_i[t][s] m_t
    label: str = ""

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def symmetric(self) -> bool:
        return all(not c for B in self.twist for row in B for c in row)

    def check(self) -> Verdict:
        """Right multiplications commute and respect weights."""
        if len(self.generator_weights) != self.rank:
            return Verdict(False, ("weights",), "generator weight count differs from rank")
        if self.twist and len(self.twist) != self.nvars:
            return Verdict(False, ("twist",), "one twist matrix per variable required")
        for i, B in enumerate(self.twist):
            for t in range(self.rank):
                for s in range(self.rank):
                    c = B[t][s]
                    d = self.generator_weights[s] + 1 - self.generator_weights[t]
                    if c and not c.is_homogeneous(d):
                        return Verdict(False, (i, t, s), f"twist entry {c} is not homogeneous of degree {d}")
        for i, j in combinations(range(len(self.twist)), 2):
            P = _matmul(self.twist[i], self.twist[j])
            Q = _matmul(self.twist[j], self.twist[i])
            if P != Q:
                return Verdict(False, (i, j), "right multiplications do not commute")
        return Verdict(True)


def _matmul(P: Matrix, Q: Matrix) -> Matrix:
    r = len(P)
    out = []
    for t in range(r):
        row = []
        for s in range(r):
            acc = P[0][0] * 0 if r else None
            for u in range(r):
                if P[t][u] and Q[u][s]:
                    acc = acc + P[t][u] * Q[u][s]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def polynomial_algebra(m: int, variables: Optional[Sequence[str]] = None) -> Bimodule:
    v = tuple(variables) if variables else default_variables(m)
    return Bimodule(v, 1, (0,), (), "A")


def derivations(m: int, variables: Optional[Sequence[str]] = None) -> Bimodule:
    """``Der(A) = A d_1 + .. + A d_m`` as a symmetric bimodule, generators of weight -1."""
    v = tuple(variables) if variables else default_variables(m)
    return Bimodule(v, m, tuple([-1] * m), (), "Der")


def top_polyvectors(m: int, variables: Optional[Sequence[str]] = None) -> Bimodule:
    """``Lambda^m Der(A)``: rank one, generator weight ``-m``."""
    v = tuple(variables) if variables else default_variables(m)
    return Bimodule(v, 1, (-m,), (), "Lambda")


def tensor_twist(Lam: Bimodule, M: Bimodule) -> Bimodule:
    """``Lambda (x)_A M`` for a symmetric rank-one ``Lambda``."""
    if Lam.rank != 1 or not Lam.symmetric:
        raise StructureError("only symmetric rank-one twists are supported")
    g = Lam.generator_weights[0]
    return Bimodule(
        M.variables, M.rank, tuple(w + g for w in M.generator_weights), M.twist, f"{Lam.label}(x){M.label}"
    )


class KoszulComplex(GradedComplex):
    """``M (x) Lambda^*(k^n)`` with operators ``C_1..C_n`` (commuting ``r x r`` matrices).

    Cochain: ``(df)(e_J) = sum_p (-1)^p C_{J_p} f(e_{J - J_p})``.
    Chain: ``d(m e_I) = sum_p (-1)^p C_{I_p} m e_{I - I_p}``.
    """

    def __init__(
        self,
        variables: Sequence[str],
        ops: Sequence[Matrix],
        generator_weights: Sequence[int],
        direction: str,
        exterior_weight: Optional[int] = None,
    ):
        if direction not in ("cochain", "chain"):
            raise ValueError(f"unknown direction {direction!r}")
        n = len(ops)
        if exterior_weight is None:
            exterior_weight = -1 if direction == "cochain" else 1
        space = SpaceDescriptor(len(variables), n, exterior_weight, tuple(generator_weights))
        super().__init__(space, 0, n)
        self.kind = direction
        self.step = 1 if direction == "cochain" else -1
        self.variables = tuple(variables)
        self.ops = tuple(ops)
        self.rank_m = len(generator_weights)

    def _image(self, sym) -> Dict:
        I, a, s = sym
        out: Dict = {}
        if self.step > 0:
            Iset = set(I)
            for j in range(self.top):
                if j in Iset:
                    continue
                J = tuple(sorted(I + (j,)))
                sign = -1 if J.index(j) % 2 else 1
                self._apply(out, j, a, s, J, sign)
        else:
            for p, j in enumerate(I):
                rest = I[:p] + I[p + 1:]
                self._apply(out, j, a, s, rest, -1 if p % 2 else 1)
        return out

    def _apply(self, out, j, a, s, J, sign):
        C = self.ops[j]
        for t in range(self.rank_m):
            c = C[t][s]
            if c:
                for e, v in c.mul_monomial(a).terms.items():
                    _add(out, (J, e, t), sign * v)


def _neg_twist(M: Bimodule) -> Tuple[Matrix, ...]:
    z = Poly.zero(M.variables)
    if not M.twist:
        return tuple(tuple(tuple(z for _ in range(M.rank)) for _ in range(M.rank)) for _ in range(M.nvars))
    return tuple(tuple(tuple(-c for c in row) for row in B) for B in M.twist)


def _validated(M: Bimodule) -> Bimodule:
    v = M.check()
    if not v:
        raise StructureError(f"inconsistent module data: {v.detail}")
    return M


def hochschild_cochain_complex(M: Bimodule) -> KoszulComplex:
    _validated(M)
    return KoszulComplex(M.variables, _neg_twist(M), M.generator_weights, "cochain")


def hochschild_chain_complex(N: Bimodule) -> KoszulComplex:
    _validated(N)
    return KoszulComplex(N.variables, _neg_twist(N), N.generator_weights, "chain")


def hh_cohomology_table(M: Bimodule, window: Window, threads: int = 1, fixture: str = "") -> BettiTable:
    return hochschild_cochain_complex(M).table(window, threads, fixture)


def hh_homology_table(N: Bimodule, window: Window, threads: int = 1, fixture: str = "") -> BettiTable:
    return hochschild_chain_complex(N).table(window, threads, fixture)


def hkr_cohomology_count(m: int, i: int, w: int, generator_weights: Sequence[int] = (0,)) -> int:
    """Weight-``w`` polyvectors of degree ``i`` with coefficients in a symmetric module."""
    if not 0 <= i <= m:
        return 0
    return comb(m, i) * sum(count_monomials(m, w + i - g) for g in generator_weights)


def hkr_homology_count(m: int, i: int, w: int, generator_weights: Sequence[int] = (0,)) -> int:
    """Weight-``w`` Kähler ``i``-forms with coefficients in a symmetric module."""
    if not 0 <= i <= m:
        return 0
    return comb(m, i) * sum(count_monomials(m, w - i - g) for g in generator_weights)


@dataclass
class VdBDuality:
    report: DualityReport
    cohomology: BettiTable
    homology: BettiTable

    @property
    def passed(self) -> bool:
        return self.report.passed


def vdb_duality_report(M: Bimodule, window: Window = (-4, 8), threads: int = 1, fixture: str = "") -> VdBDuality:
    """Compare ``HH^i(A, M)`` with ``HH_{m-i}(A, Lambda (x) M)``."""
    if window[0] > window[1]:
        raise ValueError(f"inconsistent window {window}")
    m = M.nvars
    left = hh_cohomology_table(M, window, threads, fixture)
    right = hh_homology_table(tensor_twist(top_polyvectors(m, M.variables), M), window, threads, fixture)
    return VdBDuality(compare_tables(left, right, m, "vdb"), left, right)


def enveloping_ext_complex(m: int) -> KoszulComplex:
    """``Hom_{A^e}(K_*, A^e)`` with ``A^e = k[x_1..x_m, y_1..y_m]``."""
    xs = [f"x{i + 1}" for i in range(m)]
    ys = [f"y{i + 1}" for i in range(m)]
    v = tuple(xs + ys)
    ops = []
    for i in range(m):
        c = Poly.var(v, i) - Poly.var(v, m + i)
        ops.append(((c,),))
    return KoszulComplex(v, ops, (0,), "cochain")


def enveloping_ext_table(m: int, window: Window, threads: int = 1) -> BettiTable:
    return enveloping_ext_complex(m).table(window, threads, f"Ext_Ae(A,Ae) m={m}")


def ext_concentration(m: int, window: Window = (-4, 6)) -> Verdict:
    """``Ext^i_{A^e}(A, A^e)`` vanishes for ``i != m`` and is ``A`` shifted to weight ``-m`` at ``i = m``."""
    T = enveloping_ext_table(m, window)
    for (i, w), d in sorted(T.entries.items()):
        expected = count_monomials(m, w + m) if i == m else 0
        if d != expected:
            return Verdict(False, (i, w, d, expected), "unexpected Ext dimension")
    return Verdict(True, detail=f"rank one free, generator weight {-m}")


def hkr_check(M: Bimodule, window: Window) -> Verdict:
    """Both Hochschild tables agree with the closed-form polyvector and form counts."""
    if not M.symmetric:
        raise StructureError("HKR counts apply to symmetric bimodules")
    m = M.nvars
    co = hh_cohomology_table(M, window)
    ho = hh_homology_table(M, window)
    for (i, w), d in sorted(co.entries.items()):
        e = hkr_cohomology_count(m, i, w, M.generator_weights)
        if d != e:
            return Verdict(False, ("cohomology", i, w, d, e))
    for (i, w), d in sorted(ho.entries.items()):
        e = hkr_homology_count(m, i, w, M.generator_weights)
        if d != e:
            return Verdict(False, ("homology", i, w, d, e))
    return Verdict(True)
