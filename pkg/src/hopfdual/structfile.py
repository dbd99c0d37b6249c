"""JSON structure files.

Three kinds are accepted::

    {"kind": "poisson", "name": "aff1", "variables": ["x", "y"],
     "brackets": [["x", "y", "y"]],
     "module": {"rank": 2, "generator_weights": [2, 0],
                "connection": [[["0", "0"], ["x", "0"]], [["0", "0"], ["-y", "0"]]]},
     "window": [-4, 8]}

    {"kind": "finite-algebra", "name": "...", "basis": [...],
     "structure_constants": [["a", "b", "c", "1/2"], ...], "unit": {"a": "1"}}

    {"kind": "hochschild", "variables": ["x", "y"],
     "module": "A" | "Der" | {"rank": r, "generator_weights": [...], "twist": [B_1, .., B_m]}}

``connection[j][t][s]`` is the coefficient of ``m_t`` in ``e_j . m_s``; a
twist matrix ``B_i[t][s]`` is the coefficient of ``m_t`` in ``m_s . x_i - x_i m_s``.
Polynomial entries are strings in the ``parse_poly`` grammar.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .algebroid import StructureError
from .finite import FiniteAlgebra
from .fixtures import Structure, builtin, module_from_entries
from .hochschild import Bimodule, default_variables, derivations, polynomial_algebra
from .poisson import PoissonStructure
from .poly import parse_poly


class InputError(ValueError):
    """Malformed or inconsistent structure file."""


def _require(data: Mapping, key: str, kind: type):
    if key not in data:
        raise InputError(f"missing field {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise InputError(f"field {key!r} must be of type {kind.__name__}")
    return value


def _variables(data: Mapping) -> tuple:
    v = _require(data, "variables", list)
    if not all(isinstance(x, str) and x.isidentifier() for x in v):
        raise InputError("variables must be identifier strings")
    if len(set(v)) != len(v):
        raise InputError("duplicate variable names")
    return tuple(v)


def _window(data: Mapping):
    w = data.get("window")
    if w is None:
        return None
    if not (isinstance(w, list) and len(w) == 2 and all(isinstance(x, int) for x in w)) or w[0] > w[1]:
        raise InputError(f"window must be [lo, hi] with lo <= hi, got {w!r}")
    return (w[0], w[1])


def _matrix(rows: Any, r: int, variables, where: str):
    if not (isinstance(rows, list) and len(rows) == r and all(isinstance(row, list) and len(row) == r for row in rows)):
        raise InputError(f"{where}: expected a {r}x{r} matrix")
    return [[parse_poly(str(c), variables) for c in row] for row in rows]


def parse_poisson(data: Mapping, check_jacobi: bool = True) -> Structure:
    variables = _variables(data)
    brackets = {}
    raw = data.get("brackets", [])
    if isinstance(raw, Mapping):
        raw = [[*k.split(","), v] for k, v in raw.items()]
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 3):
            raise InputError(f"bracket entry {entry!r} must be [xi, xj, polynomial]")
        a, b, text = entry
        brackets[(a.strip(), b.strip())] = parse_poly(str(text), variables)
    name = data.get("name", "poisson")
    pi = PoissonStructure.from_brackets(variables, brackets, degree=data.get("degree"), check_jacobi=check_jacobi, name=name)
    module = None
    block = data.get("module")
    if block is not None:
        r = _require(block, "rank", int)
        weights = _require(block, "generator_weights", list)
        if len(weights) != r:
            raise InputError("module: generator_weights length differs from rank")
        conn = _require(block, "connection", list)
        if len(conn) != len(variables):
            raise InputError(f"module: need {len(variables)} connection matrices, got {len(conn)}")
        mats = [_matrix(M, r, variables, f"module connection {j}") for j, M in enumerate(conn)]
        entries = {(j, t, s): mats[j][t][s] for j in range(len(mats)) for t in range(r) for s in range(r) if mats[j][t][s]}
        label = block.get("label", "M")
        module = lambda L, r=r, weights=weights, entries=entries, label=label: module_from_entries(
            L, r, weights, entries, label
        )
    return Structure("poisson", name, pi, module, _window(data))


def parse_hochschild(data: Mapping) -> Structure:
    if "variables" in data:
        variables = _variables(data)
    else:
        variables = default_variables(_require(data, "m", int))
    m = len(variables)
    block = data.get("module", "A")
    if block == "A":
        M = polynomial_algebra(m, variables)
    elif block == "Der":
        M = derivations(m, variables)
    elif isinstance(block, Mapping):
        r = _require(block, "rank", int)
        weights = tuple(_require(block, "generator_weights", list))
        if len(weights) != r:
            raise InputError("module: generator_weights length differs from rank")
        twist = block.get("twist", [])
        if twist and len(twist) != m:
            raise InputError(f"module: need {m} twist matrices")
        mats = tuple(tuple(tuple(row) for row in _matrix(B, r, variables, f"twist {i}")) for i, B in enumerate(twist))
        M = Bimodule(variables, r, weights, mats, block.get("label", "M"))
    else:
        raise InputError(f"unknown module {block!r}")
    v = M.check()
    if not v:
        raise StructureError(f"inconsistent bimodule: {v.detail}")
    return Structure("hochschild", data.get("name", f"hochschild m={m}"), M, None, _window(data))


def parse_structure(data: Mapping, check_jacobi: bool = True) -> Structure:
    if not isinstance(data, Mapping):
        raise InputError("structure file must contain a JSON object")
    kind = data.get("kind")
    if kind == "poisson":
        return parse_poisson(data, check_jacobi)
    if kind == "finite-algebra":
        for key in ("basis", "structure_constants"):
            _require(data, key, list)
        A = FiniteAlgebra.from_json(data)
        return Structure("finite-algebra", data.get("name", A.name), A)
    if kind == "hochschild":
        return parse_hochschild(data)
    raise InputError(f"unknown structure kind {kind!r}")


def load(source: str, check_jacobi: bool = True) -> Structure:
    """Load ``builtin:<name>`` or a JSON file path."""
    if source.startswith("builtin:"):
        try:
            return builtin(source[len("builtin:"):])
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_structure(data, check_jacobi)


def dump_poisson(pi: PoissonStructure, name: str = "") -> dict:
    from itertools import combinations

    from .poly import format_poly

    br = [
        [pi.variables[i], pi.variables[j], format_poly(pi.entry(i, j))]
        for i, j in combinations(range(pi.nvars), 2)
        if pi.entry(i, j)
    ]
    return {"kind": "poisson", "name": name or pi.name, "variables": list(pi.variables), "brackets": br}
