"""Representations up to homotopy: axioms, coadjoint, dual, tensor."""

import random

from fractions import Fraction

from twoterm.rep import (
    RepUH2, check_dual_pairing, check_rep, check_tensor_rep, coadjoint_TM,
    curvature, dual_rep, random_coadjoint, tensor_rep, trivial_rep,
)
from twoterm.report import all_passed
from twoterm.symbolic import Poly, mat_neg, mat_transpose, poly_identity


def test_curvature_scalar_frozen():
    # n=2, rank 1, Gamma_1 = (q2), Gamma_2 = (0):
    # R_12 = d1 Gamma_2 - d2 Gamma_1 + [Gamma_1, Gamma_2] = -1
    n = 2
    g1 = ((Poly.variable(1, n),),)
    g2 = ((Poly.zero(n),),)
    r = curvature((g1, g2), 0, 1)
    assert r == ((Poly.const(n, -1),),)


def test_coadjoint_flat_has_no_omega():
    n = 2
    zero = tuple(tuple(Poly.zero(n) for _ in range(n)) for _ in range(n))
    R = coadjoint_TM((zero, zero), n)
    assert R.omega == {}
    assert all_passed(check_rep(R))


def test_coadjoint_random_passes():
    rng = random.Random(101)
    for n in (2, 3):
        for _ in range(3):
            R = random_coadjoint(rng, n, max_degree=2)
            assert all_passed(check_rep(R)), check_rep(R)


def test_check_rep_catches_wrong_omega():
    rng = random.Random(55)
    R = random_coadjoint(rng, 2, max_degree=1)
    if not R.omega:
        # make sure there is something to tamper with
        R = random_coadjoint(rng, 2, max_degree=2)
    bad = RepUH2(R.n, R.r0, R.r1, R.boundary, R.gamma0, R.gamma1,
                 {k: mat_neg(v) for k, v in R.omega.items()})
    checks = {c.name: c for c in check_rep(bad)}
    assert not checks["curvature_level0"].passed
    assert checks["curvature_level0"].witness


def test_chain_compat_catches_mismatched_levels():
    # identity boundary with different connections on the two levels
    n = 2
    q1 = Poly.variable(0, n)
    g_a = (((q1,),), ((Poly.zero(n),),))
    g_b = (((Poly.zero(n),),), ((Poly.zero(n),),))
    R = RepUH2(n, 1, 1, ((Poly.const(n, 1),),), g_a, g_b)
    checks = {c.name: c for c in check_rep(R)}
    assert not checks["chain_compat"].passed


def test_dual_rep_structure_frozen():
    # for the flat identity rep on R^2 the dual boundary is -Id
    n = 2
    zero = tuple(tuple(Poly.zero(n) for _ in range(n)) for _ in range(n))
    R = coadjoint_TM((zero, zero), n)
    D = dual_rep(R)
    assert D.boundary == mat_neg(poly_identity(n, n))


def test_dual_rep_passes_and_is_involutive():
    rng = random.Random(7)
    R = random_coadjoint(rng, 2, max_degree=2)
    D = dual_rep(R)
    assert all_passed(check_rep(D)), check_rep(D)
    DD = dual_rep(D)
    assert DD.boundary == R.boundary
    assert DD.gamma0 == R.gamma0
    assert DD.gamma1 == R.gamma1
    assert DD.omega == R.omega


def test_dual_gamma_is_negative_transpose():
    rng = random.Random(13)
    R = random_coadjoint(rng, 2, max_degree=1)
    D = dual_rep(R)
    for i in range(R.n):
        assert D.gamma0[i] == mat_neg(mat_transpose(R.gamma1[i]))
        assert D.gamma1[i] == mat_neg(mat_transpose(R.gamma0[i]))


def test_dual_pairing_identities():
    rng = random.Random(29)
    for _ in range(3):
        R = random_coadjoint(rng, 2, max_degree=2)
        assert all_passed(check_dual_pairing(R)), check_dual_pairing(R)


def test_dual_pairing_detects_wrong_sign():
    rng = random.Random(31)
    R = random_coadjoint(rng, 2, max_degree=1)
    D = dual_rep(R)
    # flip the sign convention on the dual boundary
    wrong = RepUH2(D.n, D.r0, D.r1, mat_neg(D.boundary), D.gamma0, D.gamma1,
                   D.omega)
    checks = {c.name: c for c in check_dual_pairing(R, wrong)}
    assert not checks["dual_pairing_boundary"].passed


def test_tensor_with_flat_line_keeps_verdicts():
    rng = random.Random(41)
    R = random_coadjoint(rng, 2, max_degree=2)
    T = tensor_rep(R, trivial_rep(2))
    assert all_passed(check_tensor_rep(T)), check_tensor_rep(T)
    two = T.two_term()
    verdicts = {c.name: c.passed for c in check_rep(two)}
    assert verdicts == {c.name: c.passed for c in check_rep(R)}
    assert all(verdicts.values())


def test_tensor_of_curved_reps_three_term_axioms():
    rng = random.Random(43)
    E = random_coadjoint(rng, 2, max_degree=1)
    F = random_coadjoint(rng, 2, max_degree=1)
    T = tensor_rep(E, F)
    assert T.t0 == 4 and T.t1 == 8 and T.t2 == 4
    assert all_passed(check_tensor_rep(T)), check_tensor_rep(T)


def test_tensor_truncation_fails_when_correction_nonzero():
    # with both factors curved the two-term truncation misses the
    # boundary2 . omega2 correction, so plain check_rep must fail
    rng = random.Random(47)
    E = random_coadjoint(rng, 2, max_degree=1)
    F = random_coadjoint(rng, 2, max_degree=1)
    assert E.omega and F.omega, "fixture needs curvature"
    T = tensor_rep(E, F)
    checks = {c.name: c for c in check_rep(T.two_term())}
    assert not checks["curvature_level1"].passed


def test_boundary_squared_zero():
    rng = random.Random(53)
    E = random_coadjoint(rng, 2, max_degree=1)
    F = random_coadjoint(rng, 2, max_degree=1)
    T = tensor_rep(E, F)
    checks = {c.name: c for c in check_tensor_rep(T)}
    assert checks["boundary_squared"].passed


def test_nabla_leibniz_on_sections():
    rng = random.Random(59)
    R = random_coadjoint(rng, 2, max_degree=1)
    f = Poly.variable(0, 2) * Poly.variable(1, 2)
    v = (Poly.variable(0, 2), Poly.const(2, 3))
    for i in range(2):
        lhs = R.nabla0(i, tuple(f * c for c in v))
        rhs = tuple(f.partial(i) * c + f * d
                    for c, d in zip(v, R.nabla0(i, v)))
        assert lhs == rhs
