"""Named builtin structures used by the CLI (``builtin:<name>``) and the tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

from .algebroid import LeftModule, LieRinehartPresentation
from .finite import FiniteAlgebra, dual_numbers, upper_triangular2
from .hochschild import Bimodule, derivations, polynomial_algebra
from .poisson import PoissonStructure, huebschmann_right_action, to_lie_rinehart
from .poly import Poly, parse_poly


@dataclass
class Structure:
    """A loaded input: a Poisson structure, finite algebra, Hochschild setup or V(L) model."""

    kind: str  # "poisson" | "finite-algebra" | "hochschild" | "vl"
    name: str
    payload: object
    module: Optional[Callable[[LieRinehartPresentation], LeftModule]] = None
    window: Optional[Tuple[int, int]] = None
    extra: Dict[str, object] = field(default_factory=dict)


POISSON = {
    "zero2": (("x", "y"), {}, 0),
    "symp2": (("x", "y"), {("x", "y"): "1"}, None),
    "aff1": (("x", "y"), {("x", "y"): "y"}, None),
    "so3": (("x", "y", "z"), {("x", "y"): "z", ("y", "z"): "x", ("z", "x"): "y"}, None),
    "quad": (("x", "y"), {("x", "y"): "x*y"}, None),
    "jfail": (("x", "y", "z"), {("x", "y"): "y", ("y", "z"): "z", ("z", "x"): "x"}, None),
}

VALID_POISSON = ("zero2", "symp2", "aff1", "so3", "quad")


def poisson(name: str, check_jacobi: bool = True) -> PoissonStructure:
    v, br, deg = POISSON[name]
    return PoissonStructure.from_brackets(v, br, degree=deg, check_jacobi=check_jacobi and name != "jfail", name=name)


def module_from_entries(
    L: LieRinehartPresentation,
    rank: int,
    weights,
    entries: Dict[Tuple[int, int, int], str],
    label: str = "M",
) -> LeftModule:
    """Left module from sparse ``{(j, t, s): text}`` connection entries."""
    z = Poly.zero(L.variables)
    conn = [[[z] * rank for _ in range(rank)] for _ in range(L.rank)]
    for (j, t, s), text in entries.items():
        conn[j][t][s] = parse_poly(text, L.variables) if isinstance(text, str) else text
    mats = tuple(tuple(tuple(row) for row in M) for M in conn)
    return LeftModule(rank, tuple(weights), mats, tuple(f"m{s}" for s in range(rank)), label)


def symp2_rank2_module(L: LieRinehartPresentation) -> LeftModule:
    """Rank-two flat module on the symplectic plane: ``dx.m0 = x m1``, ``dy.m0 = -y m1``."""
    return module_from_entries(L, 2, (2, 0), {(0, 1, 0): "x", (1, 1, 0): "-y"}, "M2")


def aff1_corrupted_module(L: LieRinehartPresentation) -> LeftModule:
    """The trivial module over ``aff1`` with one connection entry perturbed; not flat."""
    return module_from_entries(L, 1, (0,), {(1, 0, 0): "x"}, "corrupt")


def hochschild_fixture(m: int, module: str) -> Bimodule:
    if module == "A":
        return polynomial_algebra(m)
    if module == "Der":
        return derivations(m)
    raise KeyError(module)


def _vl(name: str):
    from .vl import VLModel

    pi = poisson(name)
    L = to_lie_rinehart(pi)
    return VLModel(L, huebschmann_right_action(pi, L), name)


def _registry() -> Dict[str, Callable[[], Structure]]:
    reg: Dict[str, Callable[[], Structure]] = {}
    for name in POISSON:
        reg[name] = lambda name=name: Structure("poisson", name, poisson(name, check_jacobi=False))
    reg["symp2-rank2"] = lambda: Structure("poisson", "symp2-rank2", poisson("symp2"), symp2_rank2_module)
    reg["aff1-corrupt"] = lambda: Structure("poisson", "aff1-corrupt", poisson("aff1"), aff1_corrupted_module)
    for m in (0, 1, 2):
        for mod in ("A", "Der"):
            if mod == "Der" and m == 0:
                continue
            key = f"hh{m}-{mod}"
            reg[key] = lambda m=m, mod=mod, key=key: Structure("hochschild", key, hochschild_fixture(m, mod))
    reg["Ae-dual-numbers"] = lambda: Structure("finite-algebra", "Ae-dual-numbers", dual_numbers())
    reg["Ae-uppertriangular2"] = lambda: Structure("finite-algebra", "Ae-uppertriangular2", upper_triangular2())
    for name in ("aff1", "so3", "zero2"):
        reg[f"VL-{name}"] = lambda name=name: Structure("vl", f"VL-{name}", _vl(name))
    return reg


REGISTRY = _registry()


def builtin(name: str) -> Structure:
    try:
        return REGISTRY[name]()
    except KeyError:
        raise KeyError(f"unknown builtin fixture {name!r}; known: {', '.join(sorted(REGISTRY))}") from None


def finite_algebra(name: str) -> FiniteAlgebra:
    return builtin(name).payload
