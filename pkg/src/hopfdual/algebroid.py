"""Free Lie-Rinehart algebras over polynomial rings and their generator-level modules.

A section of ``L`` is a list of ``n`` polynomials (coefficients on the free
generators ``e_1..e_n``).  Module elements are lists of ``r`` polynomials on
the module generators.  Action matrices are indexed ``[target][source]``:
``e_j . m_s = sum_t theta[j][t][s] m_t`` for left modules and
``nu_s . e_j = sum_t R[j][t][s] nu_t`` for right modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import Poly

Matrix = Tuple[Tuple[Poly, ...], ...]


class StructureError(ValueError):
    """Input data violates a structural axiom (not a mathematical verdict)."""


@dataclass
class Verdict:
    passed: bool
    witness: Optional[tuple] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class LieRinehartPresentation:
    variables: Tuple[str, ...]
    rank: int
    anchor: Tuple[Tuple[Poly, ...], ...]  # anchor[j][l] = rho(e_j)(x_l)
    structure: Dict[Tuple[int, int], Tuple[Poly, ...]]  # (i, j), i < j -> coefficients of [e_i, e_j]
    generator_weights: Tuple[int, ...]
    shift: int  # weight change of the action of e_j relative to e_j's own weight
    generator_names: Tuple[str, ...] = ()

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> Poly:
        return Poly.zero(self.variables)

    def anchor_apply(self, j: int, f: Poly) -> Poly:
        """``rho(e_j)(f)``."""
        out = self.zero()
        for l, coeff in enumerate(self.anchor[j]):
            if coeff:
                d = f.derivative(l)
                if d:
                    out = out + coeff * d
        return out

    def bracket_coeffs(self, i: int, j: int) -> Tuple[Poly, ...]:
        """Coefficients of ``[e_i, e_j]`` on the generators (antisymmetric)."""
        if i == j:
            return tuple(self.zero() for _ in range(self.rank))
        if i < j:
            return self.structure.get((i, j), tuple(self.zero() for _ in range(self.rank)))
        return tuple(-c for c in self.bracket_coeffs(j, i))

    def section_anchor(self, u: Sequence[Poly], f: Poly) -> Poly:
        out = self.zero()
        for j, a in enumerate(u):
            if a:
                out = out + a * self.anchor_apply(j, f)
        return out

    def bracket(self, u: Sequence[Poly], v: Sequence[Poly]) -> List[Poly]:
        """Bracket of sections extended by the Leibniz rule."""
        out = [self.zero() for _ in range(self.rank)]
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for l, c in enumerate(self.bracket_coeffs(i, j)):
                    if c:
                        out[l] = out[l] + ab * c
        for j, b in enumerate(v):
            if b:
                out[j] = out[j] + self.section_anchor(u, b)
        for i, a in enumerate(u):
            if a:
                out[i] = out[i] - self.section_anchor(v, a)
        return out

    def generator(self, j: int) -> List[Poly]:
        one = Poly.constant(self.variables, 1)
        return [one if k == j else self.zero() for k in range(self.rank)]

    def check(self) -> Dict[str, Verdict]:
        """Verify antisymmetry, anchor morphism and Jacobi on generators."""
        n = self.rank
        report: Dict[str, Verdict] = {}
        bad = None
        for i in range(n):
            for j in range(n):
                if tuple(self.bracket(self.generator(i), self.generator(j))) != tuple(
                    -c for c in self.bracket(self.generator(j), self.generator(i))
                ):
                    bad = bad or (i, j)
        report["antisymmetry"] = Verdict(bad is None, bad)

        bad = None
        probes = [Poly.var(self.variables, l) for l in range(self.nvars)]
        for i, j in combinations(range(n), 2):
            br = self.bracket(self.generator(i), self.generator(j))
            for f in probes:
                lhs = self.section_anchor(br, f)
                rhs = self.anchor_apply(i, self.anchor_apply(j, f)) - self.anchor_apply(
                    j, self.anchor_apply(i, f)
                )
                if lhs != rhs:
                    bad = bad or (i, j, str(f))
        report["anchor_morphism"] = Verdict(bad is None, bad)

        bad = None
        for i, j, k in combinations(range(n), 3):
            e = self.generator
            total = [self.zero() for _ in range(n)]
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                t = self.bracket(e(a), self.bracket(e(b), e(c)))
                total = [x + y for x, y in zip(total, t)]
            if any(total):
                bad = (i, j, k)
                break
        report["jacobi"] = Verdict(bad is None, bad)
        return report


def _zero_matrix(variables, r) -> Matrix:
    z = Poly.zero(variables)
    return tuple(tuple(z for _ in range(r)) for _ in range(r))


@dataclass(frozen=True)
class LeftModule:
    """Free A-module of finite rank with a flat L-connection (a left V(L)-module)."""

    rank: int
    generator_weights: Tuple[int, ...]
    connection: Tuple[Matrix, ...]  # connection[j][t][s]
    names: Tuple[str, ...] = ()
    label: str = ""

    def act(self, L: LieRinehartPresentation, j: int, v: Sequence[Poly]) -> List[Poly]:
        """``e_j . v`` for a module element ``v``."""
        out = [L.anchor_apply(j, a) for a in v]
        th = self.connection[j]
        for s, a in enumerate(v):
            if not a:
                continue
            for t in range(self.rank):
                c = th[t][s]
                if c:
                    out[t] = out[t] + a * c
        return out

    def act_section(self, L, u: Sequence[Poly], v: Sequence[Poly]) -> List[Poly]:
        out = [L.zero() for _ in range(self.rank)]
        for j, a in enumerate(u):
            if a:
                w = self.act(L, j, v)
                out = [x + a * y for x, y in zip(out, w)]
        return out


@dataclass(frozen=True)
class RightModule:
    """Free A-module of finite rank with a right V(L)-action on generators.

    ``(a nu) . e_j = a (nu . e_j) - rho(e_j)(a) nu`` extends the generator data.
    """

    rank: int
    generator_weights: Tuple[int, ...]
    action: Tuple[Matrix, ...]  # action[j][t][s]
    names: Tuple[str, ...] = ()
    label: str = ""
    provenance: Tuple[str, ...] = ()

    def act(self, L: LieRinehartPresentation, j: int, v: Sequence[Poly]) -> List[Poly]:
        """``v . e_j``."""
        out = [-L.anchor_apply(j, a) for a in v]
        R = self.action[j]
        for s, a in enumerate(v):
            if not a:
                continue
            for t in range(self.rank):
                c = R[t][s]
                if c:
                    out[t] = out[t] + a * c
        return out

    def act_section(self, L, v: Sequence[Poly], u: Sequence[Poly]) -> List[Poly]:
        """``v . (sum_j u_j e_j) = sum_j (u_j v) . e_j``."""
        out = [L.zero() for _ in range(self.rank)]
        for j, a in enumerate(u):
            if a:
                w = self.act(L, j, [a * x for x in v])
                out = [x + y for x, y in zip(out, w)]
        return out


def _unit_vector(variables, r, s) -> List[Poly]:
    one = Poly.constant(variables, 1)
    z = Poly.zero(variables)
    return [one if t == s else z for t in range(r)]


def check_flatness(L: LieRinehartPresentation, M: LeftModule) -> Verdict:
    """Curvature test ``e_i e_j - e_j e_i = [e_i, e_j]`` on every generator."""
    if len(M.connection) != L.rank:
        raise StructureError(f"module has {len(M.connection)} connection matrices, L has rank {L.rank}")
    for th in M.connection:
        if len(th) != M.rank or any(len(row) != M.rank for row in th):
            raise StructureError("connection matrix shape does not match module rank")
    for i, j in combinations(range(L.rank), 2):
        br = L.bracket(L.generator(i), L.generator(j))
        curvature = []
        for s in range(M.rank):
            m = _unit_vector(L.variables, M.rank, s)
            lhs = M.act(L, i, M.act(L, j, m))
            lhs = [a - b for a, b in zip(lhs, M.act(L, j, M.act(L, i, m)))]
            rhs = M.act_section(L, br, m)
            curvature.append([a - b for a, b in zip(lhs, rhs)])
        if any(any(col) for col in curvature):
            mat = [[str(curvature[s][t]) for s in range(M.rank)] for t in range(M.rank)]
            return Verdict(False, (i + 1, j + 1, mat), "nonzero curvature")
    return Verdict(True)


def check_right_module(L: LieRinehartPresentation, N: RightModule) -> Verdict:
    """Compatibility with ``e_j a = a e_j + rho(e_j)(a)`` and flatness of the right action."""
    variables = L.variables
    probes = [Poly.constant(variables, 1)] + [Poly.var(variables, l) for l in range(L.nvars)]
    for s in range(N.rank):
        mu = _unit_vector(variables, N.rank, s)
        for j in range(L.rank):
            for a in probes:
                lhs = [a * x for x in N.act(L, j, mu)]
                rhs = N.act(L, j, [a * x for x in mu])
                ra = L.anchor_apply(j, a)
                rhs = [x + ra * y for x, y in zip(rhs, mu)]
                if lhs != rhs:
                    return Verdict(False, ("compatibility", s, j + 1, str(a)))
    for i, j in combinations(range(L.rank), 2):
        br = L.bracket(L.generator(i), L.generator(j))
        for s in range(N.rank):
            mu = _unit_vector(variables, N.rank, s)
            lhs = N.act(L, j, N.act(L, i, mu))
            lhs = [a - b for a, b in zip(lhs, N.act(L, i, N.act(L, j, mu)))]
            rhs = N.act_section(L, mu, br)
            if lhs != rhs:
                return Verdict(False, ("flatness", i + 1, j + 1, s))
    return Verdict(True)


def _homogeneous_or_zero(p: Poly, degree: int) -> bool:
    return p.is_zero() or (degree >= 0 and p.is_homogeneous(degree))


def check_action_weights(L: LieRinehartPresentation, weights: Sequence[int], mats: Sequence[Matrix]) -> Verdict:
    """Every entry ``[t][s]`` of an action matrix must have degree ``w_s + w(e_j) + shift - w_t``."""
    for j, mat in enumerate(mats):
        for t, row in enumerate(mat):
            for s, p in enumerate(row):
                deg = weights[s] + L.generator_weights[j] + L.shift - weights[t]
                if not _homogeneous_or_zero(p, deg):
                    return Verdict(False, (j + 1, t, s, str(p), deg))
    return Verdict(True)


def trivial_module(L: LieRinehartPresentation) -> LeftModule:
    """``A`` itself with the anchor action."""
    return LeftModule(1, (0,), tuple(_zero_matrix(L.variables, 1) for _ in range(L.rank)), ("1",), "A")


def tensor_left(L: LieRinehartPresentation, M1: LeftModule, M2: LeftModule) -> LeftModule:
    """``M1 (x)_A M2`` with ``D.(a (x) b) = D.a (x) b + a (x) D.b``."""
    r1, r2 = M1.rank, M2.rank
    z = L.zero()
    one = Poly.constant(L.variables, 1)
    conn = []
    for j in range(L.rank):
        th1, th2 = M1.connection[j], M2.connection[j]
        mat = [[z] * (r1 * r2) for _ in range(r1 * r2)]
        for a in range(r1):
            for s in range(r2):
                col = a * r2 + s
                for a2 in range(r1):
                    if th1[a2][a]:
                        mat[a2 * r2 + s][col] = mat[a2 * r2 + s][col] + th1[a2][a]
                for s2 in range(r2):
                    if th2[s2][s]:
                        mat[a * r2 + s2][col] = mat[a * r2 + s2][col] + th2[s2][s]
        conn.append(tuple(tuple(row) for row in mat))
    weights = tuple(g1 + g2 for g1 in M1.generator_weights for g2 in M2.generator_weights)
    names = tuple(f"{x}*{y}" for x in (M1.names or range(r1)) for y in (M2.names or range(r2)))
    del one
    return LeftModule(r1 * r2, weights, tuple(conn), names, f"{M1.label}(x){M2.label}")


def combined_right_module(L: LieRinehartPresentation, N: RightModule, M: LeftModule) -> RightModule:
    """``N (x)_A M`` as a right module: ``(n (x) m).D = n.D (x) m - n (x) D.m``.

    This is the translation-map action ``n D_+ (x) D_- m`` for
    ``D_+ (x) D_- = D (x) 1 - 1 (x) D``.
    """
    r1, r2 = N.rank, M.rank
    z = L.zero()
    acts = []
    for j in range(L.rank):
        R, th = N.action[j], M.connection[j]
        mat = [[z] * (r1 * r2) for _ in range(r1 * r2)]
        for a in range(r1):
            for s in range(r2):
                col = a * r2 + s
                for a2 in range(r1):
                    if R[a2][a]:
                        mat[a2 * r2 + s][col] = mat[a2 * r2 + s][col] + R[a2][a]
                for s2 in range(r2):
                    if th[s2][s]:
                        mat[a * r2 + s2][col] = mat[a * r2 + s2][col] - th[s2][s]
        acts.append(tuple(tuple(row) for row in mat))
    weights = tuple(g1 + g2 for g1 in N.generator_weights for g2 in M.generator_weights)
    names = tuple(f"{x}*{y}" for x in (N.names or range(r1)) for y in (M.names or range(r2)))
    return RightModule(r1 * r2, weights, tuple(acts), names, f"{N.label}(x){M.label}", (N.label, M.label))


def antipode_twist(L: LieRinehartPresentation, twist: RightModule, base: RightModule) -> LeftModule:
    """Left module ``_S Lambda``: ``D ._S l = l . S(D)`` with ``S(D) = -D + d(D)``.

    ``d(D) = 1 . D`` is read off the rank-one right module ``base`` that
    defines the full Hopf algebroid structure.
    """
    if base.rank != 1:
        raise StructureError("the base right module must have rank one")
    r = twist.rank
    conn = []
    for j in range(L.rank):
        counit = base.action[j][0][0]
        R = twist.action[j]
        mat = tuple(
            tuple((-R[t][s]) + (counit if t == s else L.zero()) for s in range(r)) for t in range(r)
        )
        conn.append(mat)
    return LeftModule(r, twist.generator_weights, tuple(conn), twist.names, f"S({twist.label})")
