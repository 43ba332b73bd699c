"""Finite groupoid reps, twisted cochain differential, 2-group coherence."""

import random
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoterm.report import all_passed, failures
from twoterm.symbolic import rat_identity
from twoterm.twogroup import (
    Ext2Group, FinGroupoid, GpdCochain, GpdRepUH2, ObjCell, Simplex2,
    Simplex3, TwoCell, abelian_2gpd, build_extension, check_gpd_cocycle,
    check_gpd_rep, check_nerve, gpd_diff_D, nerve_levels, random_gpd_cochain,
    rep_from_f1, trivial_gpd_rep, verify_coherence,
)


def frac_vec(*values):
    return tuple(Fraction(v) for v in values)


@lru_cache(maxsize=None)
def group(name: str) -> FinGroupoid:
    if name == "trivial":
        return FinGroupoid.trivial(1)
    if name == "z2":
        return FinGroupoid.cyclic(2)
    if name == "z3":
        return FinGroupoid.cyclic(3)
    if name == "s3":
        return FinGroupoid.symmetric(3)
    raise KeyError(name)


@lru_cache(maxsize=None)
def scaled_z2_rep() -> GpdRepUH2:
    """Z/2 acting by 2 on a rank-1 identity complex; F2(g, g) = 3."""
    gpd = group("z2")
    f1 = [None, None]
    f1[gpd.identity[0]] = rat_identity(1)
    f1[1 - gpd.identity[0]] = ((Fraction(2),),)
    return rep_from_f1(gpd, tuple(f1))


def coboundary_cocycle(rep: GpdRepUH2, seed: int) -> GpdCochain:
    rng = random.Random(seed)
    return gpd_diff_D(rep, random_gpd_cochain(rng, rep, 1))


@lru_cache(maxsize=None)
def twisted_z2_extension() -> Ext2Group:
    """The most twisted small fixture: F2 != 0 and a nonzero (C2, C3)."""
    rep = scaled_z2_rep()
    return build_extension(rep.gpd, rep, coboundary_cocycle(rep, 11))


class TestFinGroupoid:
    def test_cyclic_groups(self):
        z3 = group("z3")
        assert z3.n_objects == 1
        assert len(z3.source) == 3
        assert z3.compose(1, 2) == 0
        assert z3.inverse[1] == 2

    def test_symmetric_group_is_nonabelian(self):
        s3 = group("s3")
        assert len(s3.source) == 6
        assert any(s3.compose(a, b) != s3.compose(b, a)
                   for a in s3.arrows for b in s3.arrows)

    def test_pair_groupoid(self):
        pg = FinGroupoid.pair(2)
        assert pg.n_objects == 2
        assert len(pg.source) == 4
        assert len(list(pg.chains(2))) == 8
        for g in pg.arrows:
            assert pg.compose(pg.inverse[g], g) == \
                pg.identity[pg.source[g]]

    def test_chain_counts(self):
        assert len(list(group("z2").chains(3))) == 8
        assert len(list(group("s3").chains(2))) == 36

    def test_associativity_violation_rejected(self):
        z3 = group("z3")
        table = dict(z3.table)
        table[(1, 1)] = 0
        with pytest.raises(ValueError, match="associativity"):
            FinGroupoid(1, z3.source, z3.target, table, z3.identity,
                        z3.inverse)

    def test_misplaced_identity_rejected(self):
        with pytest.raises(ValueError, match="identity"):
            FinGroupoid(2, (0, 1), (0, 1), {(0, 0): 0, (1, 1): 1},
                        (0, 0), (0, 1))


class TestGpdRep:
    def test_trivial_rep_passes(self):
        for name in ("trivial", "z2", "z3", "s3"):
            assert all_passed(check_gpd_rep(trivial_gpd_rep(group(name))))
        assert all_passed(
            check_gpd_rep(trivial_gpd_rep(FinGroupoid.pair(2), rank=2)))

    def test_scaled_rep_has_nonzero_f2(self):
        rep = scaled_z2_rep()
        assert all_passed(check_gpd_rep(rep))
        g = 1 - rep.gpd.identity[0]
        assert rep.f2_at(g, g) == ((Fraction(3),),)

    def test_strict_f1_with_spurious_f2_fails(self):
        gpd = group("z2")
        eye = rat_identity(1)
        rep = GpdRepUH2(gpd, (1,), (1,), (eye,), (eye, eye), (eye, eye),
                        f2={(1, 1): ((Fraction(1),),)}, validate=False)
        report = {c.name: c for c in check_gpd_rep(rep)}
        assert not report["f1_defect_is_f2"].passed
        assert "(1, 1)" in report["f1_defect_is_f2"].witness
        with pytest.raises(ValueError, match="f1_defect_is_f2"):
            GpdRepUH2(gpd, (1,), (1,), (eye,), (eye, eye), (eye, eye),
                      f2={(1, 1): ((Fraction(1),),)})

    def test_unital_and_invertible_are_enforced(self):
        gpd = group("z2")
        eye = rat_identity(1)
        two = ((Fraction(2),),)
        zero = ((Fraction(0),),)
        rep = GpdRepUH2(gpd, (1,), (1,), (eye,),
                        (two if g == gpd.identity[0] else eye
                         for g in gpd.arrows),
                        (eye, eye), validate=False)
        assert not {c.name: c for c in check_gpd_rep(rep)}["f1_unital"].passed
        rep = GpdRepUH2(gpd, (1,), (1,), (eye,),
                        (eye if g == gpd.identity[0] else zero
                         for g in gpd.arrows),
                        (eye, eye), validate=False)
        report = {c.name: c for c in check_gpd_rep(rep)}
        assert not report["f1_invertible"].passed

    def test_chain_compatibility_detected(self):
        gpd = group("z2")
        eye = rat_identity(1)
        three = ((Fraction(3),),)
        rep = GpdRepUH2(gpd, (1,), (1,), (((Fraction(2),),),),
                        (eye, eye), (eye, three), validate=False)
        report = {c.name: c for c in check_gpd_rep(rep)}
        assert not report["chain_compatible"].passed

    @settings(max_examples=25, deadline=None)
    @given(st.integers(-5, 5).filter(bool), st.integers(-5, 5).filter(bool))
    def test_any_invertible_unital_f1_completes(self, a, b):
        gpd = group("z3")
        f1 = [None] * 3
        f1[gpd.identity[0]] = rat_identity(1)
        rest = [g for g in gpd.arrows if g != gpd.identity[0]]
        f1[rest[0]] = ((Fraction(a),),)
        f1[rest[1]] = ((Fraction(b),),)
        rep = rep_from_f1(gpd, tuple(f1))
        assert all_passed(check_gpd_rep(rep))


class TestDifferential:
    def test_zero_cochain_maps_to_zero(self):
        rep = trivial_gpd_rep(group("z3"))
        assert gpd_diff_D(rep, GpdCochain.zero(rep, 1)).is_zero()

    def test_hand_example_degree_zero(self):
        # Z/2, identity complex, F1 = Id: for c = (v at the object,
        # m on the nonidentity arrow) the image is (boundary m on the
        # arrow, m(g) - m(g g) + m(g) = 2m on the pair (g, g)).
        rep = trivial_gpd_rep(group("z2"))
        g = 1 - rep.gpd.identity[0]
        c = GpdCochain(rep, 0, part0={0: frac_vec(1)},
                       part1={(g,): frac_vec(3)})
        image = gpd_diff_D(rep, c)
        assert image.degree == 1
        assert image.part0 == {(g,): frac_vec(3)}
        assert image.part1 == {(g, g): frac_vec(6)}

    def test_z2_diagonal_c2_is_a_cocycle(self):
        rep = trivial_gpd_rep(group("z2"))
        g = 1 - rep.gpd.identity[0]
        cocycle = GpdCochain(rep, 2, part0={(g, g): frac_vec(1)})
        assert all_passed(check_gpd_cocycle(rep, cocycle))

    def test_d_squared_is_zero(self):
        reps = [trivial_gpd_rep(group(n)) for n in ("trivial", "z2", "z3")]
        reps.append(scaled_z2_rep())
        rng = random.Random(5)
        for rep in reps:
            for degree in (0, 1):
                for _ in range(5):
                    c = random_gpd_cochain(rng, rep, degree)
                    assert gpd_diff_D(rep, gpd_diff_D(rep, c)).is_zero()

    def test_output_is_normalized(self):
        rep = trivial_gpd_rep(group("z3"))
        image = gpd_diff_D(rep, random_gpd_cochain(random.Random(2), rep, 1))
        gpd = rep.gpd
        for key in list(image.part0) + list(image.part1):
            assert not any(gpd.is_identity(g) for g in key)

    def test_coboundaries_are_cocycles_and_perturbations_fail(self):
        rep = trivial_gpd_rep(group("z3"))
        cocycle = coboundary_cocycle(rep, 7)
        assert not cocycle.is_zero()
        assert all_passed(check_gpd_cocycle(rep, cocycle))
        broken1 = dict(cocycle.part1)
        key = next(iter(sorted(broken1)))
        broken1[key] = tuple(x + 1 for x in broken1[key])
        report = check_gpd_cocycle(
            rep, GpdCochain(rep, 2, cocycle.part0, broken1))
        bad = failures(report)
        assert bad and "(" in bad[0].witness

    def test_normalization_is_rejected_on_construction(self):
        rep = trivial_gpd_rep(group("z2"))
        e = rep.gpd.identity[0]
        with pytest.raises(ValueError, match="normalized"):
            GpdCochain(rep, 2, part0={(e, 1 - e): frac_vec(1)})


class TestExtension:
    def test_trivial_data_formulas(self):
        rep = trivial_gpd_rep(group("z3"))
        ext = build_extension(rep.gpd, rep, GpdCochain.zero(rep, 2))
        a = ObjCell(1, frac_vec(2))
        b = ObjCell(2, frac_vec(5))
        assert ext.hmul_obj(a, b) == ObjCell(0, frac_vec(7))
        assert ext.inv_obj(a) == ObjCell(2, frac_vec(-2))
        assert ext.associator(a, b, a).m == frac_vec(0)

    def test_twisted_unit_and_inverse_frozen(self):
        rep = scaled_z2_rep()
        ext = build_extension(rep.gpd, rep, GpdCochain.zero(rep, 2))
        g = 1 - rep.gpd.identity[0]
        a = ObjCell(g, frac_vec(5))
        # F1(g) = 2 and F2(g, g) = 3 on the rank-1 fiber.
        assert ext.inv_obj(a) == ObjCell(g, frac_vec(-10))
        i_cell = ext.unit(a)
        assert i_cell.m == frac_vec(-15)
        assert ext.target2(i_cell) == ext.hmul_obj(a, ext.inv_obj(a))

    def test_vertical_structure(self):
        ext = twisted_z2_extension()
        g = 1 - ext.gpd.identity[0]
        bottom = TwoCell(g, frac_vec(1), frac_vec(4))
        top = TwoCell(g, ext.target2(bottom).xi, frac_vec(-1))
        stacked = ext.vmul(top, bottom)
        assert stacked.m == frac_vec(3)
        assert ext.vmul(ext.vinv(bottom), bottom) == \
            ext.two_identity(ext.source2(bottom))
        with pytest.raises(ValueError, match="vertical"):
            ext.vmul(bottom, bottom)

    def test_build_rejects_non_cocycle(self):
        rep = trivial_gpd_rep(group("z3"))
        bad = GpdCochain(rep, 2, part0={(1, 1): frac_vec(1)})
        with pytest.raises(ValueError, match="cocycle"):
            build_extension(rep.gpd, rep, bad)

    def test_build_rejects_broken_rep(self):
        gpd = group("z2")
        eye = rat_identity(1)
        rep = GpdRepUH2(gpd, (1,), (1,), (eye,), (eye, eye), (eye, eye),
                        f2={(1, 1): ((Fraction(1),),)}, validate=False)
        with pytest.raises(ValueError, match="f1_defect"):
            build_extension(gpd, rep, GpdCochain.zero(rep, 2))


class TestCoherence:
    @pytest.mark.parametrize("name", ["trivial", "z2", "z3", "s3"])
    def test_trivial_cocycle_extensions(self, name):
        rep = trivial_gpd_rep(group(name))
        ext = build_extension(rep.gpd, rep, GpdCochain.zero(rep, 2))
        assert all_passed(verify_coherence(ext))

    def test_z2_diagonal_cocycle(self):
        rep = trivial_gpd_rep(group("z2"))
        g = 1 - rep.gpd.identity[0]
        cocycle = GpdCochain(rep, 2, part0={(g, g): frac_vec(1)})
        ext = build_extension(rep.gpd, rep, cocycle)
        assert all_passed(verify_coherence(ext))

    def test_coboundary_cocycles(self):
        for name in ("z2", "z3", "s3"):
            rep = trivial_gpd_rep(group(name))
            ext = build_extension(rep.gpd, rep, coboundary_cocycle(rep, 3))
            assert all_passed(verify_coherence(ext))

    def test_twisted_rep_extension(self):
        report = verify_coherence(twisted_z2_extension())
        assert all_passed(report), failures(report)

    def test_cohomologous_cocycles_agree(self):
        rep = trivial_gpd_rep(group("z3"))
        first = coboundary_cocycle(rep, 19)
        shifted = first.add(coboundary_cocycle(rep, 23))
        for cocycle in (first, shifted):
            ext = build_extension(rep.gpd, rep, cocycle)
            assert all_passed(verify_coherence(ext))

    def test_negated_associator_breaks_pentagon(self):
        rep = trivial_gpd_rep(group("z3"))
        cocycle = coboundary_cocycle(rep, 3)
        assert cocycle.part1, "fixture needs a nonzero C3"
        ext = build_extension(rep.gpd, rep, cocycle)
        ext._assoc_c3_sign = -1
        report = {c.name: c for c in verify_coherence(ext)}
        assert not report["pentagon"].passed
        assert "quadruple" in report["pentagon"].witness

    def test_negated_associator_with_nonzero_f2(self):
        ext = Ext2Group(twisted_z2_extension().gpd,
                        twisted_z2_extension().rep,
                        twisted_z2_extension().cocycle)
        ext._assoc_c3_sign = -1
        report = {c.name: c for c in verify_coherence(ext)}
        assert not report["pentagon"].passed

    @settings(max_examples=20, deadline=None)
    @given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9),
           st.integers(-9, 9))
    def test_pentagon_beyond_basis_probes(self, p, q, r, s):
        # The verifier only probes zero and basis vectors; the laws are
        # affine in the fiber slots, so arbitrary values must agree too.
        ext = twisted_z2_extension()
        g = 1 - ext.gpd.identity[0]
        a, b = ObjCell(g, frac_vec(p)), ObjCell(g, frac_vec(q))
        c, d = ObjCell(g, frac_vec(r)), ObjCell(g, frac_vec(s))
        lhs = ext.vmul(ext.associator(a, b, ext.hmul_obj(c, d)),
                       ext.associator(ext.hmul_obj(a, b), c, d))
        rhs = ext.vmul(
            ext.hmul2(ext.two_identity(a), ext.associator(b, c, d)),
            ext.vmul(ext.associator(a, ext.hmul_obj(b, c), d),
                     ext.hmul2(ext.associator(a, b, c),
                               ext.two_identity(d))))
        assert lhs == rhs


class TestAbelian:
    def test_formulas(self):
        boundary = (((Fraction(1),),), ((Fraction(0),), (Fraction(1),)))
        ext = abelian_2gpd((1, 2), (1, 1), boundary)
        u = TwoCell(ext.gpd.identity[1], frac_vec(1, 2), frac_vec(3))
        v = TwoCell(ext.gpd.identity[1], frac_vec(4, 0), frac_vec(-1))
        assert ext.hmul2(u, v) == TwoCell(u.g, frac_vec(5, 2), frac_vec(2))
        assert ext.inv2(u) == TwoCell(u.g, frac_vec(-1, -2), frac_vec(-3))
        assert ext.target2(u) == ObjCell(u.g, frac_vec(1, 5))

    def test_coherence_is_strict(self):
        ext = abelian_2gpd((2,), (2,), (rat_identity(2),))
        assert all_passed(verify_coherence(ext))
        x = ObjCell(ext.gpd.identity[0], frac_vec(1, 2))
        assert ext.associator(x, x, x).m == frac_vec(0, 0)
        assert ext.unit(x).m == frac_vec(0, 0)


class TestNerve:
    def test_simplicial_identities(self):
        fixtures = [twisted_z2_extension()]
        rep = trivial_gpd_rep(group("z3"))
        fixtures.append(
            build_extension(rep.gpd, rep, coboundary_cocycle(rep, 3)))
        for ext in fixtures:
            report = check_nerve(nerve_levels(ext))
            assert all_passed(report), failures(report)

    def test_d1_on_trivial_data(self):
        rep = trivial_gpd_rep(group("z2"))
        ext = build_extension(rep.gpd, rep, GpdCochain.zero(rep, 2))
        nerve = nerve_levels(ext)
        g = 1 - rep.gpd.identity[0]
        el = Simplex2(g, g, frac_vec(2), frac_vec(3), frac_vec(5))
        assert nerve.face(2, 1, el) == ObjCell(rep.gpd.identity[0],
                                               frac_vec(10))

    def test_degeneracy_then_face_is_identity(self):
        nerve = nerve_levels(twisted_z2_extension())
        g = 1 - nerve.ext.gpd.identity[0]
        cell = ObjCell(g, frac_vec(7))
        up = nerve.degeneracy(1, 0, cell)
        assert nerve.face(2, 0, up) == cell
        assert nerve.face(2, 1, up) == cell

    def test_face_commutation_on_level_two(self):
        nerve = nerve_levels(twisted_z2_extension())
        for el in nerve.probe_elements(2):
            assert nerve.face(1, 0, nerve.face(2, 2, el)) == \
                nerve.face(1, 1, nerve.face(2, 0, el))

    def test_filler_agrees_with_coherence_cells(self):
        # The determined tetrahedron filler must match composing the four
        # triangle 2-cells with the associator inside the extension.
        ext = twisted_z2_extension()
        nerve = nerve_levels(ext)

        def triangle_cell(s2):
            base = ext.hmul_obj(ObjCell(s2.g1, s2.xi01),
                                ObjCell(s2.g2, s2.xi12))
            return TwoCell(base.g, base.xi, s2.m)

        for s3 in nerve.probe_elements(3):
            e01 = ObjCell(s3.g1, s3.xi01)
            e12 = ObjCell(s3.g2, s3.xi12)
            e23 = ObjCell(s3.g3, s3.xi23)
            lhs = ext.vmul(
                triangle_cell(nerve.face(3, 1, s3)),
                ext.hmul2(triangle_cell(nerve.face(3, 3, s3)),
                          ext.two_identity(e23)))
            rhs = ext.vmul(
                triangle_cell(nerve.face(3, 2, s3)),
                ext.vmul(
                    ext.hmul2(ext.two_identity(e01),
                              triangle_cell(nerve.face(3, 0, s3))),
                    ext.associator(e01, e12, e23)))
            assert lhs == rhs
