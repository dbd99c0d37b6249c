"""Rinehart cochain and chain complexes, graded Betti tables and duality reports.

Cochains ``Hom_A(Lambda^k L, M)``: basis symbol ``(I, a, s)`` is the cochain
sending ``e_I`` to ``x^a m_s``; dual generators weigh -1 each.  Chains
``N (x)_A Lambda^k L``: ``(I, a, s)`` is ``x^a n_s (x) e_I``; generators weigh
their declared weight (+1 for ``dx``).  Both differentials move weight by the
presentation's ``shift`` (``t - 2`` for a degree-``t`` Poisson bracket).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .algebroid import (
    LeftModule,
    LieRinehartPresentation,
    RightModule,
    StructureError,
    Verdict,
    antipode_twist,
    check_flatness,
    check_right_module,
    combined_right_module,
    tensor_left,
    trivial_module,
)
from .grading import GradedBasis, SpaceDescriptor, graded_slice
from .linalg import SparseMatrix, rank_kernel
from .poly import Poly

Window = Tuple[int, int]


def _add(acc: Dict, key, value) -> None:
    v = acc.get(key, 0) + value
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class GradedComplex:
    """A complex split into finite weight slices ``C^k_w``.

    Subclasses provide ``space`` (a :class:`SpaceDescriptor`), ``step``
    (+1 cochain, -1 chain), ``shift`` and ``_image`` giving the image of one
    basis symbol as ``{target_symbol: coefficient}``.
    """

    kind = "complex"
    step = 1

    def __init__(self, space: SpaceDescriptor, shift: int, top: int):
        self.space = space
        self.shift = shift
        self.top = top
        self._rank_cache: Dict[Tuple[int, int], int] = {}

    def basis(self, k: int, w: int) -> GradedBasis:
        return graded_slice(self.space, k, w)

    def target(self, k: int, w: int) -> Tuple[int, int]:
        return k + self.step, w + self.shift

    def source(self, k: int, w: int) -> Tuple[int, int]:
        """Slice whose differential lands in ``(k, w)``."""
        return k - self.step, w - self.shift

    def differential(self, k: int, w: int) -> SparseMatrix:
        """Matrix of the differential out of slice ``(k, w)`` (rows = target basis)."""
        src = self.basis(k, w)
        tk, tw = self.target(k, w)
        tgt = self.basis(tk, tw)
        if not len(src) or not len(tgt):
            return SparseMatrix.zero(len(tgt), len(src))
        index = tgt.index()
        entries: Dict[Tuple[int, int], Fraction] = {}
        for col, sym in enumerate(src.elements):
            for tsym, c in self._image(sym).items():
                row = index.get(tsym)
                if row is None:
                    raise AssertionError(
                        f"differential of {sym} leaves weight slice ({tk}, {tw}) at {tsym}"
                    )
                _add(entries, (row, col), c)
        return SparseMatrix(len(tgt), len(src), entries)

    def _image(self, sym) -> Dict:
        raise NotImplementedError

    def rank_out(self, k: int, w: int) -> int:
        key = (k, w)
        if key not in self._rank_cache:
            tk, _ = self.target(k, w)
            if not 0 <= k <= self.top or not 0 <= tk <= self.top:
                r = 0
            else:
                r = rank_kernel(self.differential(k, w))[0]
            self._rank_cache[key] = r
        return self._rank_cache[key]

    def betti(self, k: int, w: int) -> int:
        dim = len(self.basis(k, w))
        return dim - self.rank_out(k, w) - self.rank_out(*self.source(k, w))

    def needed_ranks(self, window: Window) -> List[Tuple[int, int]]:
        keys = set()
        for k in range(self.top + 1):
            for w in range(window[0], window[1] + 1):
                keys.add((k, w))
                keys.add(self.source(k, w))
        return sorted(keys)

    def table(self, window: Window, threads: int = 1, fixture: str = "") -> "BettiTable":
        """Betti numbers for all degrees and weights in ``window``.

        The incoming and outgoing differentials of edge weights are taken from
        slices outside the window (the window is widened by ``|shift|``).
        """
        lo, hi = window
        if lo > hi:
            raise ValueError(f"inconsistent window {window}")
        keys = self.needed_ranks(window)
        todo = [k for k in keys if k not in self._rank_cache]
        if threads > 1 and len(todo) > 1:
            with ThreadPoolExecutor(max_workers=threads) as ex:
                for key, r in zip(todo, ex.map(lambda kw: self._compute_rank(*kw), todo)):
                    self._rank_cache[key] = r
        else:
            for key in todo:
                self.rank_out(*key)
        entries = {}
        for k in range(self.top + 1):
            for w in range(lo, hi + 1):
                entries[(k, w)] = self.betti(k, w)
        return BettiTable(self.kind, entries, window, self.top, fixture)

    def _compute_rank(self, k: int, w: int) -> int:
        tk, _ = self.target(k, w)
        if not 0 <= k <= self.top or not 0 <= tk <= self.top:
            return 0
        return rank_kernel(self.differential(k, w))[0]


class RinehartCochainComplex(GradedComplex):
    """``Hom_A(Lambda^* L, M)`` with the Chevalley-Eilenberg-Rinehart differential."""

    kind = "cochain"
    step = 1

    def __init__(self, L: LieRinehartPresentation, M: LeftModule):
        if len(M.connection) != L.rank:
            raise StructureError("module connection count does not match rank of L")
        space = SpaceDescriptor(L.nvars, L.rank, -1, tuple(M.generator_weights))
        super().__init__(space, L.shift, L.rank)
        self.L = L
        self.M = M
        self._anchor_cache: Dict = {}

    def _anchor_mono(self, j: int, exp) -> Poly:
        key = (j, exp)
        if key not in self._anchor_cache:
            self._anchor_cache[key] = self.L.anchor_apply(j, Poly.monomial(self.L.variables, exp))
        return self._anchor_cache[key]

    def _image(self, sym) -> Dict:
        I, a, s = sym
        L, M = self.L, self.M
        out: Dict = {}
        Iset = set(I)
        for j in range(L.rank):
            if j in Iset:
                continue
            J = tuple(sorted(I + (j,)))
            sign = -1 if J.index(j) % 2 else 1
            for e, c in self._anchor_mono(j, a).terms.items():
                _add(out, (J, e, s), sign * c)
            th = M.connection[j]
            for t in range(M.rank):
                if th[t][s]:
                    for e, c in th[t][s].mul_monomial(a).terms.items():
                        _add(out, (J, e, t), sign * c)
        for q, l in enumerate(I):
            rest = I[:q] + I[q + 1:]
            sign_l = -1 if q % 2 else 1
            rest_set = set(rest)
            free = [x for x in range(L.rank) if x not in rest_set]
            for x, y in combinations(free, 2):
                coeff = L.bracket_coeffs(x, y)[l]
                if not coeff:
                    continue
                J = tuple(sorted(rest + (x, y)))
                sign = sign_l * (-1 if (J.index(x) + J.index(y)) % 2 else 1)
                for e, c in coeff.mul_monomial(a).terms.items():
                    _add(out, (J, e, s), sign * c)
        return out


class RinehartChainComplex(GradedComplex):
    """``N (x)_A Lambda^* L`` with the Rinehart boundary for a right module ``N``."""

    kind = "chain"
    step = -1

    def __init__(self, L: LieRinehartPresentation, N: RightModule):
        if len(N.action) != L.rank:
            raise StructureError("module action count does not match rank of L")
        ext_w = L.generator_weights[0] if L.generator_weights else 1
        if any(g != ext_w for g in L.generator_weights):
            raise StructureError("chain complexes need a single generator weight")
        space = SpaceDescriptor(L.nvars, L.rank, ext_w, tuple(N.generator_weights))
        super().__init__(space, L.shift, L.rank)
        self.L = L
        self.N = N
        self._anchor_cache: Dict = {}

    def _anchor_mono(self, j: int, exp) -> Poly:
        key = (j, exp)
        if key not in self._anchor_cache:
            self._anchor_cache[key] = self.L.anchor_apply(j, Poly.monomial(self.L.variables, exp))
        return self._anchor_cache[key]

    def _image(self, sym) -> Dict:
        I, a, s = sym
        L, N = self.L, self.N
        out: Dict = {}
        for p, j in enumerate(I):
            rest = I[:p] + I[p + 1:]
            sign = -1 if p % 2 else 1
            # (x^a n_s) . e_j = x^a (n_s . e_j) - rho(e_j)(x^a) n_s
            R = N.action[j]
            for t in range(N.rank):
                if R[t][s]:
                    for e, c in R[t][s].mul_monomial(a).terms.items():
                        _add(out, (rest, e, t), sign * c)
            for e, c in self._anchor_mono(j, a).terms.items():
                _add(out, (rest, e, s), -sign * c)
        for p, q in combinations(range(len(I)), 2):
            x, y = I[p], I[q]
            rest = I[:p] + I[p + 1:q] + I[q + 1:]
            sign = -1 if (p + q) % 2 else 1
            coeffs = L.bracket_coeffs(x, y)
            for l, coeff in enumerate(coeffs):
                if not coeff or l in rest:
                    continue
                before = sum(1 for r in rest if r < l)
                J = tuple(sorted(rest + (l,)))
                sg = sign * (-1 if before % 2 else 1)
                for e, c in coeff.mul_monomial(a).terms.items():
                    _add(out, (J, e, s), sg * c)
        return out


# -- public operations ------------------------------------------------------


def cochain_differential(L: LieRinehartPresentation, M: LeftModule, i: int, w: int) -> SparseMatrix:
    return RinehartCochainComplex(L, M).differential(i, w)


def chain_differential(L: LieRinehartPresentation, N: RightModule, i: int, w: int) -> SparseMatrix:
    return RinehartChainComplex(L, N).differential(i, w)


def cohomology_table(L, M: LeftModule, window: Window, threads: int = 1, fixture: str = "") -> "BettiTable":
    return RinehartCochainComplex(L, M).table(window, threads, fixture)


def homology_table(L, N: RightModule, window: Window, threads: int = 1, fixture: str = "") -> "BettiTable":
    return RinehartChainComplex(L, N).table(window, threads, fixture)


@dataclass
class BettiTable:
    kind: str
    entries: Dict[Tuple[int, int], int]
    window: Window
    top: int
    fixture: str = ""

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.entries[key]

    def get(self, key, default=None):
        return self.entries.get(key, default)

    def __contains__(self, key) -> bool:
        return key in self.entries

    def nonzero(self) -> Dict[Tuple[int, int], int]:
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def translated(self, dw: int) -> "BettiTable":
        return BettiTable(
            self.kind,
            {(i, w + dw): d for (i, w), d in self.entries.items()},
            (self.window[0] + dw, self.window[1] + dw),
            self.top,
            self.fixture,
        )

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "window": list(self.window),
            "entries": [[i, w, d] for (i, w), d in sorted(self.entries.items())],
        }

    @classmethod
    def from_json(cls, data: dict, top: int | None = None, fixture: str = "") -> "BettiTable":
        entries = {(i, w): d for i, w, d in data["entries"]}
        if top is None:
            top = max((i for i, _ in entries), default=0)
        return cls(data["kind"], entries, tuple(data["window"]), top, fixture)


@dataclass
class DualityReport:
    left: BettiTable
    right: BettiTable
    n: int
    shift: Optional[int]
    candidates: List[int]
    verdicts: List[Tuple[int, int, int, int, bool]]
    label: str = ""

    @property
    def passed(self) -> bool:
        return self.shift is not None

    @property
    def mismatches(self) -> List[Tuple[int, int, int, int, bool]]:
        return [v for v in self.verdicts if not v[4]]

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "n": self.n,
            "passed": self.passed,
            "shift": self.shift,
            "candidate_shifts": self.candidates,
            "mismatches": [[i, w, a, b] for i, w, a, b, _ in self.mismatches],
            "compared": len(self.verdicts),
        }


def compare_tables(left: BettiTable, right: BettiTable, n: int, label: str = "", max_shift: Optional[int] = None) -> DualityReport:
    """Search a uniform shift ``s`` with ``left[i, w] == right[n - i, w + s]``.

    Pairs whose partner lies outside ``right`` are skipped; shifts are tried
    over ``[-2n, 2n]`` and the one closest to 0 is reported.
    """
    bound = 2 * n if max_shift is None else max_shift
    candidates = []
    for s in range(-bound, bound + 1):
        pairs = [(i, w) for (i, w) in left.entries if (n - i, w + s) in right.entries]
        if pairs and all(left[(i, w)] == right[(n - i, w + s)] for i, w in pairs):
            candidates.append(s)
    shift = min(candidates, key=lambda s: (abs(s), s)) if candidates else None
    s_used = 0 if shift is None else shift
    verdicts = []
    for (i, w) in sorted(left.entries):
        key = (n - i, w + s_used)
        if key in right.entries:
            a, b = left[(i, w)], right[key]
            verdicts.append((i, w, a, b, a == b))
    return DualityReport(left, right, n, shift, candidates, verdicts, label)


@dataclass
class PoissonDuality:
    twisted: DualityReport
    untwisted: Optional[DualityReport]
    cohomology: BettiTable
    twisted_homology: BettiTable
    untwisted_homology: Optional[BettiTable]
    modules: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.twisted.passed


def twisted_coefficients(L: LieRinehartPresentation, A_R: RightModule, twist: RightModule, M: LeftModule) -> RightModule:
    """``A_R (x) (_S Lambda (x) M)`` as a single right module."""
    S_twist = antipode_twist(L, twist, A_R)
    flat = check_flatness(L, S_twist)
    if not flat:
        raise StructureError(f"antipode twist is not flat: {flat.witness}")
    return combined_right_module(L, A_R, tensor_left(L, S_twist, M))


def duality_report(
    pi,
    M: Optional[LeftModule] = None,
    window: Window = (-6, 8),
    untwisted: bool = True,
    threads: int = 1,
) -> PoissonDuality:
    """Compare Poisson cohomology of ``M`` with twisted Poisson homology in complementary degree."""
    from .poisson import huebschmann_right_action, to_lie_rinehart, twist_module

    L = to_lie_rinehart(pi)
    M = M or trivial_module(L)
    flat = check_flatness(L, M)
    if not flat:
        raise StructureError(f"coefficient module is not flat: witness {flat.witness}")
    if window[0] > window[1]:
        raise ValueError(f"inconsistent window {window}")
    A_P = huebschmann_right_action(pi, L)
    Lam = twist_module(pi, L)
    N = twisted_coefficients(L, A_P, Lam, M)
    check = check_right_module(L, N)
    if not check:
        raise StructureError(f"combined module fails right-module check: {check.witness}")
    fixture = getattr(pi, "name", "")
    left = cohomology_table(L, M, window, threads, fixture)
    right = homology_table(L, N, window, threads, fixture)
    report = compare_tables(left, right, L.rank, "twisted")
    un_report = un_table = None
    if untwisted:
        N0 = combined_right_module(L, A_P, M)
        un_table = homology_table(L, N0, window, threads, fixture)
        un_report = compare_tables(left, un_table, L.rank, "untwisted")
    return PoissonDuality(
        report, un_report, left, right, un_table, {"A_P": A_P, "Lambda": Lam, "N": N, "M": M}
    )


def euler_strands(cx: GradedComplex, window: Window) -> List[Tuple[int, int, int]]:
    """Alternating sums along each differential strand through degree 0 at weights in ``window``.

    A strand is ``(0, w), (1, w + shift), ..``; returns ``(w, chi_dims, chi_betti)``.
    """
    out = []
    for w0 in range(window[0], window[1] + 1):
        chi_dim = chi_b = 0
        for k in range(cx.top + 1):
            w = w0 + k * cx.step * cx.shift if cx.step > 0 else w0 - k * cx.shift
            sign = -1 if k % 2 else 1
            chi_dim += sign * len(cx.basis(k, w))
            chi_b += sign * cx.betti(k, w)
        out.append((w0, chi_dim, chi_b))
    return out


def check_d_squared(cx: GradedComplex, window: Window) -> Verdict:
    """``d o d = 0`` on every composable pair of slices starting in ``window``."""
    for k in range(cx.top + 1):
        k2, _ = cx.target(k, 0)
        if not 0 <= k2 <= cx.top:
            continue
        for w in range(window[0], window[1] + 1):
            d1 = cx.differential(k, w)
            d2 = cx.differential(*cx.target(k, w))
            if not (d2 @ d1).is_zero():
                return Verdict(False, (k, w), "d o d != 0")
    return Verdict(True)
