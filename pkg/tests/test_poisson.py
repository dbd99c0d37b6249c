import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfdual.algebroid import StructureError, antipode_twist, check_flatness, check_right_module
from hopfdual.fixtures import POISSON, poisson
from hopfdual.poisson import (
    JacobiError,
    PoissonStructure,
    Polyvector,
    VectorField,
    action_weights_ok,
    brute_force_jacobi,
    hamiltonian_field,
    huebschmann_right_action,
    jacobi_check,
    modular_field,
    polyvector_twist,
    schouten_bracket,
    twist_module,
)
from hopfdual.poly import Poly, parse_poly

XY = ("x", "y")


def P(t, v=XY):
    return parse_poly(t, v)


def expanded_jacobiator(pi, a, b, c):
    """``{a,{b,c}} + cyclic`` with the bracket expanded by hand from the matrix."""
    v = pi.variables
    m = len(v)

    def br(f, g):
        out = Poly.zero(v)
        for i in range(m):
            for j in range(m):
                out = out + pi.matrix[i][j] * f.derivative(i) * g.derivative(j)
        return out

    x = [Poly.var(v, i) for i in range(m)]
    return br(x[a], br(x[b], x[c])) + br(x[b], br(x[c], x[a])) + br(x[c], br(x[a], x[b]))


def test_schouten_examples():
    dx = VectorField(XY, [P("1"), P("0")])
    xdy = VectorField(XY, [P("0"), P("x")])
    assert schouten_bracket(dx, xdy) == VectorField(XY, [P("0"), P("1")])
    biv = Polyvector(XY, 2, {(0, 1): P("1")})
    assert schouten_bracket(biv, biv).is_zero()
    ybiv = Polyvector(XY, 2, {(0, 1): P("y")})
    assert schouten_bracket(ybiv, ybiv).is_zero()


def test_schouten_degree_zero_argument():
    X = VectorField(XY, [P("y"), P("x^2")])
    f = Polyvector.function(P("x*y"))
    assert schouten_bracket(X, f) == Polyvector.function(X.apply(P("x*y")))


def test_jacobi_examples():
    assert jacobi_check(poisson("aff1"))
    assert jacobi_check(poisson("so3"))
    bad = poisson("jfail", check_jacobi=False)
    v = jacobi_check(bad)
    assert not v
    assert v.witness == ("x", "y", "z")
    xyz = ("x", "y", "z")
    assert v.jacobiator == parse_poly("-x-y-z", xyz)
    assert v.jacobiator == expanded_jacobiator(bad, 0, 1, 2)


@pytest.mark.parametrize("name", list(POISSON))
def test_jacobi_routes_agree(name):
    pi = poisson(name, check_jacobi=False)
    ss = schouten_bracket(pi.bivector(), pi.bivector())
    assert bool(jacobi_check(pi)) == ss.is_zero() == brute_force_jacobi(pi)
    m = pi.nvars
    oracle = all(not expanded_jacobiator(pi, a, b, c) for a in range(m) for b in range(m) for c in range(m))
    assert oracle == bool(jacobi_check(pi))


def test_construction_rejects_jfail_and_bad_input():
    v, br, _ = POISSON["jfail"]
    with pytest.raises(JacobiError):
        PoissonStructure.from_brackets(v, br)
    with pytest.raises(StructureError, match="non-homogeneous"):
        PoissonStructure.from_brackets(XY, {("x", "y"): "x + x*y"})
    with pytest.raises(StructureError, match="mixed degrees"):
        PoissonStructure.from_brackets(("x", "y", "z"), {("x", "y"): "x", ("y", "z"): "1"})
    with pytest.raises(StructureError):
        PoissonStructure(XY, [[P("0"), P("x")], [P("x"), P("0")]])


def test_hamiltonian_examples():
    s = poisson("symp2")
    assert hamiltonian_field(s, P("x*y")) == VectorField(XY, [P("-x"), P("y")])
    a = poisson("aff1")
    assert hamiltonian_field(a, P("x")) == VectorField(XY, [P("0"), P("y")])
    assert hamiltonian_field(a, P("1")).is_zero()


def test_modular_examples(fx):
    assert modular_field(fx["symp2"]).is_zero()
    assert modular_field(fx["so3"]).is_zero()
    assert modular_field(fx["aff1"]) == VectorField(XY, [P("1"), P("0")])
    assert modular_field(fx["zero2"]).is_zero()


def test_modular_field_is_divergence_of_hamiltonian(fx):
    for pi in fx.values():
        phi = modular_field(pi)
        for f in [P("x^2*y" if pi.nvars == 2 else "x*y*z", pi.variables), Poly.var(pi.variables, 0)]:
            assert phi.apply(f) == hamiltonian_field(pi, f).divergence()


def test_lie_rinehart_examples(fx, lr):
    L = lr["symp2"]
    assert L.anchor[0] == (P("0"), P("1"))  # rho(dx) = {x, .} = d/dy
    assert all(not c for cs in L.structure.values() for c in cs)
    L = lr["aff1"]
    assert L.bracket_coeffs(0, 1) == (P("0"), P("1"))
    assert L.anchor[0] == (P("0"), P("y"))
    assert L.anchor[1] == (P("-y"), P("0"))
    L = lr["zero2"]
    assert all(not c for row in L.anchor for c in row)


def test_lie_rinehart_axioms(lr):
    for name, L in lr.items():
        assert all(L.check().values()), name


def test_huebschmann_rule(fx, lr):
    for name, pi in fx.items():
        L = lr[name]
        N = huebschmann_right_action(pi, L)
        probes = [Poly.constant(pi.variables, 1)] + [Poly.var(pi.variables, l) for l in range(pi.nvars)]
        for a in probes:
            for u in probes:
                for j in range(pi.nvars):
                    assert N.act(L, j, [a * u])[0] == pi.bracket(a * u, Poly.var(pi.variables, j))
        # 1 . dx_j = {1, x_j} = 0 on the generator
        assert all(not R[0][0] for R in N.action)
        assert check_right_module(L, N)


def test_twist_examples(fx, lr):
    assert all(not R[0][0] for R in twist_module(fx["zero2"]).action)
    assert all(not R[0][0] for R in twist_module(fx["symp2"]).action)
    T = twist_module(fx["aff1"])
    assert [R[0][0] for R in T.action] == [P("1"), P("0")]
    assert T.generator_weights == (-2,)


def test_twist_matches_modular_field(fx, lr):
    """The rank-one twist pairs the generator dx_j with phi(x_j)."""
    for name, pi in fx.items():
        T = twist_module(pi, lr[name])
        phi = modular_field(pi)
        for j in range(pi.nvars):
            assert T.action[j][0][0] == phi.apply(Poly.var(pi.variables, j))


def test_twist_constructions_agree(fx, lr):
    """Lie-derivative route on L* and the Schouten route on Lambda^m Der give the same module."""
    for name, pi in fx.items():
        L = lr[name]
        a, b = twist_module(pi, L), polyvector_twist(pi)
        assert a.action == b.action and a.generator_weights == b.generator_weights
        assert check_right_module(L, b)


def test_antipode_twisted_left_module(fx, lr):
    for name, pi in fx.items():
        L = lr[name]
        Lam = twist_module(pi, L)
        SL = antipode_twist(L, Lam, huebschmann_right_action(pi, L))
        assert check_flatness(L, SL)
        # with d(D) = 0 for A_P the left action is minus the right action
        assert all(SL.connection[j][0][0] == -Lam.action[j][0][0] for j in range(L.rank))


def test_action_homogeneity(fx, lr):
    for name, pi in fx.items():
        assert action_weights_ok(pi, huebschmann_right_action(pi, lr[name]))
        assert action_weights_ok(pi, twist_module(pi, lr[name]))


lin = st.integers(-2, 2)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(lin, lin, lin), min_size=3, max_size=3))
def test_random_linear_brackets_routes_agree(rows):
    xyz = ("x", "y", "z")
    ents = {}
    for (a, b), coeffs in zip([("x", "y"), ("y", "z"), ("z", "x")], rows):
        ents[(a, b)] = sum((Poly.var(xyz, i).scale(c) for i, c in enumerate(coeffs)), Poly.zero(xyz))
    pi = PoissonStructure.from_brackets(xyz, ents, check_jacobi=False)
    assert bool(jacobi_check(pi)) == brute_force_jacobi(pi) == schouten_bracket(pi.bivector(), pi.bivector()).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_two_variable_brackets_always_poisson(t, cs):
    mons = [Poly.monomial(XY, (i, t - i)) for i in range(t + 1)]
    p = sum((m.scale(c) for m, c in zip(mons, cs)), Poly.zero(XY))
    pi = PoissonStructure.from_brackets(XY, {("x", "y"): p}, check_jacobi=False)
    assert jacobi_check(pi)
    f, g = P("x^2+y"), P("x*y")
    assert pi.bracket(f, g) == -pi.bracket(g, f)
    assert hamiltonian_field(pi, f).apply(g) == pi.bracket(f, g)
