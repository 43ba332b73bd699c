"""Cartan calculus with polynomial coefficients."""

import random

from twoterm.calculus import (
    Form, VectorField, de_rham_d, eval_form, interior, interior_multi,
    koszul_d, lie_derivative, random_form, random_vf, vf_bracket, wedge,
)
from twoterm.symbolic import Poly


def q(i, n=3):
    return Poly.variable(i, n)


def ddq(i, n=3):
    return VectorField.coordinate(i, n)


def test_vf_apply():
    x = VectorField((q(1), Poly.zero(3), Poly.const(3, 2)))
    f = q(0) * q(2)
    # X(f) = q2 * q3 + 2 * q1
    assert x.apply(f) == q(1) * q(2) + 2 * q(0)


def test_vf_bracket_frozen_example():
    # X = q1 d2, Y = d1: [X, Y]^2 = X(0) - Y(q1) = -1, rest zero.
    n = 2
    x = VectorField((Poly.zero(n), Poly.variable(0, n)))
    y = VectorField.coordinate(0, n)
    b = vf_bracket(x, y)
    assert b == -VectorField.coordinate(1, n)


def test_vf_bracket_jacobi_random():
    rng = random.Random(11)
    for _ in range(5):
        x, y, z = (random_vf(rng, 2, 2) for _ in range(3))
        jac = (vf_bracket(vf_bracket(x, y), z)
               + vf_bracket(vf_bracket(y, z), x)
               + vf_bracket(vf_bracket(z, x), y))
        assert jac.is_zero()


def test_d_of_function_and_product_rule():
    f = q(0) ** 2 * q(1)
    df = de_rham_d(Form.function(f))
    assert df.comps == {(0,): 2 * q(0) * q(1), (1,): q(0) ** 2}
    g = q(2)
    dfg = de_rham_d(Form.function(f * g))
    assert dfg == df.scale(g) + de_rham_d(Form.function(g)).scale(f)


def test_d_frozen_example():
    # d(q1 dq2) = dq1 ^ dq2
    w = Form(3, 1, {(1,): q(0)})
    assert de_rham_d(w) == Form(3, 2, {(0, 1): 1})


def test_d_squared_zero_random():
    rng = random.Random(23)
    for deg in (0, 1, 2):
        for _ in range(4):
            w = random_form(rng, 3, deg)
            assert de_rham_d(de_rham_d(w)).is_zero()


def test_koszul_formula_matches_d():
    rng = random.Random(5)
    for deg in (1, 2):
        for _ in range(4):
            w = random_form(rng, 3, deg)
            assert koszul_d(w) == de_rham_d(w)


def test_wedge_signs_and_eval():
    a = Form.dq(0, 3)
    b = Form.dq(1, 3)
    assert wedge(a, b) == Form(3, 2, {(0, 1): 1})
    assert wedge(b, a) == Form(3, 2, {(0, 1): -1})
    assert wedge(a, a).is_zero()
    # determinant convention
    w = Form(3, 2, {(0, 1): 1})
    assert eval_form(w, [ddq(0), ddq(1)]) == Poly.const(3, 1)
    assert eval_form(w, [ddq(1), ddq(0)]) == Poly.const(3, -1)


def test_wedge_graded_commutativity_random():
    rng = random.Random(31)
    for da, db in [(1, 1), (1, 2), (2, 1)]:
        a = random_form(rng, 3, da)
        b = random_form(rng, 3, db)
        sign = (-1) ** (da * db)
        rhs = wedge(b, a)
        assert wedge(a, b) == (rhs if sign == 1 else -rhs)


def test_interior_first_slot_convention():
    w = Form(3, 2, {(0, 1): 1})
    # (i_{d1} w)(Y) = w(d1, Y) so i_{d1}(dq1^dq2) = dq2
    assert interior(ddq(0), w) == Form(3, 1, {(1,): 1})
    assert interior(ddq(1), w) == Form(3, 1, {(0,): -1})


def test_interior_multi_order():
    w = Form(3, 3, {(0, 1, 2): 1})
    # i_{X ^ Y} folds X first: result is w(X, Y, .)
    out = interior_multi([ddq(0), ddq(1)], w)
    assert out == Form(3, 1, {(2,): 1})
    out_swapped = interior_multi([ddq(1), ddq(0)], w)
    assert out_swapped == Form(3, 1, {(2,): -1})


def test_interior_agrees_with_eval():
    rng = random.Random(47)
    w = random_form(rng, 3, 2)
    x, y = random_vf(rng, 3, 1), random_vf(rng, 3, 1)
    assert eval_form(interior(x, w), [y]) == eval_form(w, [x, y])


def test_lie_derivative_frozen_example():
    # L_{d1}(q1 dq2) = dq2
    w = Form(2, 1, {(1,): Poly.variable(0, 2)})
    got = lie_derivative(VectorField.coordinate(0, 2), w)
    assert got == Form(2, 1, {(1,): 1})


def test_lie_derivative_commutes_with_d():
    rng = random.Random(3)
    for _ in range(4):
        x = random_vf(rng, 3, 1)
        w = random_form(rng, 3, 1)
        assert lie_derivative(x, de_rham_d(w)) == de_rham_d(lie_derivative(x, w))


def test_lie_derivative_bracket_law():
    # L_X i_Y - i_Y L_X = i_{[X,Y]} applied to a 2-form
    rng = random.Random(9)
    for _ in range(3):
        x = random_vf(rng, 3, 1)
        y = random_vf(rng, 3, 1)
        w = random_form(rng, 3, 2)
        lhs = lie_derivative(x, interior(y, w)) - interior(y, lie_derivative(x, w))
        assert lhs == interior(vf_bracket(x, y), w)


def test_form_coefficient_antisymmetry():
    w = Form(3, 2, {(0, 2): q(1)})
    assert w.coefficient((2, 0)) == -q(1)
    assert w.coefficient((0, 2)) == q(1)
    assert w.coefficient((1, 1)).is_zero()
