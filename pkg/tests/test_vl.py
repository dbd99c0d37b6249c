import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfdual.algebroid import RightModule
from hopfdual.fixtures import poisson
from hopfdual.poisson import huebschmann_right_action, modular_field, to_lie_rinehart, twist_module
from hopfdual.poly import Poly, parse_poly
from hopfdual.vl import MAX_LEN, Inadmissible, VLModel, vl_axiom_report


def model(name, base="A_P"):
    pi = poisson(name)
    L = to_lie_rinehart(pi)
    A_R = huebschmann_right_action(pi, L) if base == "A_P" else twist_module(pi, L)
    return pi, VLModel(L, A_R, name)


@pytest.mark.parametrize("name", ["aff1", "so3", "quad", "zero2"])
@pytest.mark.parametrize("base", ["A_P", "Lambda"])
def test_report_passes(name, base):
    _, V = model(name, base)
    rep = vl_axiom_report(V)
    assert [r.name for r in rep.results if not r.passed] == []
    suites = {r.suite for r in rep.results}
    assert suites == {"left-bialgebroid", "translation", "antipode", "module-structures"}


def test_anchor_is_hamiltonian_action():
    pi, V = model("so3")
    f = parse_poly("x^2*y + z", pi.variables)
    for j, xj in enumerate(pi.variables):
        g = V.act_on_A(V.e(j), f)
        assert g == pi.bracket(Poly.var(pi.variables, j), f)
    # a word acts as the composite of its letters
    g = V.act_on_A({(0, 1): V.one()}, f)
    x, y = (Poly.var(pi.variables, k) for k in range(2))
    assert g == pi.bracket(x, pi.bracket(y, f))


def test_generator_values():
    _, V = model("aff1")
    for j in range(V.n):
        assert V.eps(V.e(j)) == V.zero()
        assert V.delta(V.e(j)) == {((j,), ()): V.one(), ((), (j,)): V.one()}
        assert V.partial(V.e(j)) == V.zero()  # A_P: 1 . dx_j = {1, x_j} = 0
        assert V.S(V.e(j)) == {(j,): -V.one()}


def test_twisted_base_shifts_antipode():
    pi, V = model("aff1", "Lambda")
    # partial(e_j) is the modular field evaluated on x_j; for {x, y} = y that field is d/dx
    phi = modular_field(pi)
    for j in range(V.n):
        assert V.partial(V.e(j)) == phi.apply(Poly.var(pi.variables, j))
    assert V.partial(V.e(0)) == V.one()
    for j in range(V.n):
        assert V.S(V.S(V.e(j))) == V.e(j)


def test_commutation_relation():
    pi, V = model("so3")
    x, y, z = (Poly.var(pi.variables, k) for k in range(3))
    # e_1 e_0 = e_0 e_1 + [dy, dx] = e_0 e_1 - dz
    assert V.mul(V.e(1), V.e(0)) == {(0, 1): V.one(), (2,): -V.one()}
    # e_0 y = y e_0 + {x, y}
    assert V.mul(V.e(0), V.a(y)) == {(0,): y, (): z}


def test_inadmissible_beyond_length_two():
    _, V = model("aff1")
    with pytest.raises(Inadmissible):
        V.mul(V.e(0), {(0, 1): V.one()})
    assert len(max(V.words(), key=len)) == MAX_LEN


def test_bogus_base_is_detected():
    pi = poisson("aff1")
    L = to_lie_rinehart(pi)
    z = Poly.zero(pi.variables)
    bogus = RightModule(1, (0,), (((parse_poly("x", pi.variables),),), ((z,),)), ("1",), "bogus")
    rep = vl_axiom_report(VLModel(L, bogus, "bogus"))
    failed = {r.name for r in rep.results if not r.passed}
    assert {"S-relations", "S-involutive"} <= failed


def test_rank_one_base_required():
    pi = poisson("aff1")
    L = to_lie_rinehart(pi)
    z = Poly.zero(pi.variables)
    M = ((z, z), (z, z))
    with pytest.raises(ValueError):
        VLModel(L, RightModule(2, (0, 0), (M, M), ("a", "b"), "r2"))


@settings(max_examples=20, deadline=None)
@given(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
def test_linear_plane_brackets(a, b, c):
    # {x, y} = a x + b y + c: any bracket on the plane is Poisson
    from hopfdual.poisson import PoissonStructure

    v = ("x", "y")
    p = Poly.var(v, 0).scale(a) + Poly.var(v, 1).scale(b)
    if not p:
        return
    pi = PoissonStructure.from_brackets(v, {("x", "y"): p}, name="lin")
    L = to_lie_rinehart(pi)
    assert vl_axiom_report(VLModel(L, huebschmann_right_action(pi, L))).passed
