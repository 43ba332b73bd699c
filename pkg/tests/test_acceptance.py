"""End-to-end acceptance gates with explicit runtime budgets.

Every check here is an exact identity over the rationals; the random
instances are seeded, so failures are reproducible.  Each test asserts its
own wall-clock budget so performance regressions fail loudly.
"""

import random
from fractions import Fraction
from time import perf_counter

from twoterm.calculus import Form, VectorField
from twoterm.cohomology import (
    Cochain, check_extension, check_section_morphism, coboundary_iso,
    courant_cocycle, derivation_for, diff_D, extend, homological_check,
    is_cocycle, random_cochain, semidirect, trivialize_TM,
)
from twoterm.courant import (
    CourantSection, SeveraForm, check_jacobi_defect, jacobi_defect,
    random_courant_section,
)
from twoterm.graded import SuperPoly
from twoterm.lie2 import (
    check_homotopy_jacobi, killing_form, so3_structure, string_lie2,
)
from twoterm.rep import check_rep, coadjoint_TM, random_coadjoint
from twoterm.report import all_passed, failures
from twoterm.symbolic import Poly, random_poly
from twoterm.twogroup import (
    Ext2Group, FinGroupoid, GpdCochain, build_extension, check_gpd_cocycle,
    check_nerve, gpd_diff_D, nerve_levels, random_gpd_cochain,
    trivial_gpd_rep, verify_coherence,
)


def flat_connection(n):
    zero = tuple(tuple(Poly.zero(n) for _ in range(n)) for _ in range(n))
    return (zero,) * n


def top_form_twist(f: Poly) -> SeveraForm:
    n = f.nvars
    return SeveraForm(Form(n, 3, {(0, 1, 2): f}))


def corpus_groups():
    return [
        ("trivial", FinGroupoid.trivial(1)),
        ("z2", FinGroupoid.cyclic(2)),
        ("z3", FinGroupoid.cyclic(3)),
        ("s3", FinGroupoid.symmetric(3)),
    ]


def corpus_extensions():
    """Groups x cocycles: zero, the diagonal cocycle where it closes, and
    one coboundary per group (the trivial group's coboundary is zero)."""
    out = []
    for i, (name, gpd) in enumerate(corpus_groups()):
        rep = trivial_gpd_rep(gpd)
        cocycles = [("zero", GpdCochain.zero(rep, 2))]
        if name == "z2":
            g = next(a for a in gpd.arrows if not gpd.is_identity(a))
            cocycles.append(("diagonal", GpdCochain(
                rep, 2, part0={(g, g): (Fraction(1),)})))
        rng = random.Random(1000 + i)
        coboundary = gpd_diff_D(rep, random_gpd_cochain(rng, rep, 1))
        cocycles.append(("coboundary", coboundary))
        for label, cocycle in cocycles:
            assert all_passed(check_gpd_cocycle(rep, cocycle)), (name, label)
            out.append((f"{name}/{label}", gpd, rep, cocycle))
    return out


def test_string_so3_identities():
    start = perf_counter()
    struct = so3_structure()
    good = check_homotopy_jacobi(string_lie2(struct, killing_form(struct)))
    assert all_passed(good), failures(good)
    assert [c.name for c in good] == ["jacobi_k1", "jacobi_k2", "jacobi_k3",
                                      "jacobi_k4"]

    lopsided = ((1, 0, 0), (0, 1, 0), (0, 0, 2))
    bad = check_homotopy_jacobi(string_lie2(struct, lopsided))
    assert [c.passed for c in bad] == [True, True, True, False]
    witness = bad[3].witness
    assert witness is not None and "inputs (" in witness
    assert perf_counter() - start < 1.0


def test_courant_jacobiator():
    start = perf_counter()
    rng = random.Random(20)
    for _ in range(5):
        f = random_poly(rng, 3, 2, nterms=3)
        severa = top_form_twist(f)
        assert severa.closed
        for _ in range(20):
            triple = [random_courant_section(rng, 3, 2) for _ in range(3)]
            assert check_jacobi_defect(*triple, severa).passed

    # the four-variable twist q4 dq1 dq2 dq3 is not closed, so some triple
    # of basis sections must expose a nonzero residual
    q4 = Poly.variable(3, 4)
    severa = SeveraForm(Form(4, 3, {(0, 1, 2): q4}))
    assert not severa.closed
    basis = [CourantSection(VectorField.coordinate(i, 4), Form.zero(4, 1))
             for i in range(4)]
    basis += [CourantSection(VectorField.zero(4), Form.dq(i, 4))
              for i in range(4)]
    hits = [
        (i, j, k)
        for i in range(8) for j in range(i + 1, 8)
        for k in range(j + 1, 8)
        if not jacobi_defect(basis[i], basis[j], basis[k], severa).is_zero()
    ]
    assert hits, "expected a basis triple with nonzero residual"
    assert perf_counter() - start < 30.0


def test_twisted_extension_trivializes():
    start = perf_counter()
    rng = random.Random(30)
    gammas = flat_connection(3)
    for case in range(10):
        f = random_poly(rng, 3, 2, nterms=2)
        if f.is_zero():
            f = Poly.const(3, 1)
        R, cocycle = courant_cocycle(gammas, top_form_twist(f).H)
        assert all_passed(is_cocycle(R, cocycle)), case
        primitive = trivialize_TM(R, cocycle)
        assert diff_D(R, primitive) == cocycle, case
        morphism = coboundary_iso(R, primitive)
        report = check_section_morphism(extend(R, cocycle), semidirect(R),
                                        morphism, rng=rng)
        assert all_passed(report), (case, failures(report))
    assert perf_counter() - start < 30.0


def test_coadjoint_rep_soundness():
    start = perf_counter()
    rng = random.Random(40)
    for case in range(10):
        R = random_coadjoint(rng, 2, max_degree=2)
        report = check_rep(R)
        assert all_passed(report), (case, failures(report))
        for j in range(10):
            c = random_cochain(rng, R, j % 2, max_degree=1)
            assert diff_D(R, diff_D(R, c)).is_zero(), (case, j)
    assert perf_counter() - start < 30.0


def test_semidirect_matches_standard_derivation():
    start = perf_counter()
    E = semidirect(coadjoint_TM(flat_connection(3), 3))
    report = homological_check(E)
    assert all_passed(report), failures(report)

    # generator images: coordinates go to their odd duals, the odd duals
    # are closed, fiber duals go to the degree 2 generators, which close
    D = derivation_for(E)
    dims = (3, 6, 3)
    for i in range(3):
        q = SuperPoly.coordinate(i, *dims)
        assert D.apply(q) == SuperPoly.odd_gen(i, *dims)
        assert D.apply(SuperPoly.odd_gen(i, *dims)).is_zero()
    for a in range(3):
        theta = SuperPoly.odd_gen(3 + a, *dims)
        assert D.apply(theta) == SuperPoly.even_gen(a, *dims)
        assert D.apply(SuperPoly.even_gen(a, *dims)).is_zero()
    assert perf_counter() - start < 5.0


def test_integration_coherence_corpus():
    start = perf_counter()
    sabotaged = 0
    for name, gpd, rep, cocycle in corpus_extensions():
        ext = build_extension(gpd, rep, cocycle)
        report = verify_coherence(ext)
        assert all_passed(report), (name, failures(report))
        if cocycle.part1:
            twisted = Ext2Group(gpd, rep, cocycle)
            twisted._assoc_c3_sign = -1
            broken = {c.name: c for c in verify_coherence(twisted)}
            assert not broken["pentagon"].passed, name
            assert broken["pentagon"].witness, name
            sabotaged += 1
    # negating C3 is a no-op on extensions whose C3 vanishes; over the
    # trivial representation the Z/3 and S3 coboundaries supply nonzero C3
    assert sabotaged >= 2
    assert perf_counter() - start < 60.0


def test_nerve_corpus():
    start = perf_counter()
    for name, gpd, rep, cocycle in corpus_extensions():
        ext = build_extension(gpd, rep, cocycle)
        report = check_nerve(nerve_levels(ext))
        assert all_passed(report), (name, failures(report))
    assert perf_counter() - start < 30.0


def test_differential_square_zero():
    start = perf_counter()
    for i, (name, gpd) in enumerate(corpus_groups()):
        rep = trivial_gpd_rep(gpd)
        rng = random.Random(800 + i)
        for j in range(20):
            c = random_gpd_cochain(rng, rep, j % 2)
            assert gpd_diff_D(rep, gpd_diff_D(rep, c)).is_zero(), (name, j)

    rng = random.Random(801)
    for case in range(3):
        R = random_coadjoint(rng, 3, max_degree=2)
        for j in range(20):
            c = random_cochain(rng, R, j % 2, max_degree=1)
            assert diff_D(R, diff_D(R, c)).is_zero(), (case, j)
    assert perf_counter() - start < 30.0
