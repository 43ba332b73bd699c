"""Two-term L-infinity algebras (Lie 2-algebras) over Q.

A two-term L-infinity algebra lives on a graded vector space V_0 (+) V_{-1}
with a differential l1: V_{-1} -> V_0, a graded antisymmetric binary bracket
l2, and a totally antisymmetric ternary bracket l3: V_0^3 -> V_{-1}.  The
brackets satisfy one homotopy Jacobi identity per arity k:

    sum_{i+j=k+1} (-1)^{i(j-1)} sum_{(i,k-i)-unshuffles sigma}
        sgn(sigma) Ksgn(sigma) l_j( l_i(x_{sigma(1..i)}), x_{sigma(i+1..k)} ) = 0

with Ksgn the Koszul sign of sigma on the degree sequence.  For two terms
the identity is vacuous for k = 1 and automatically zero for k > 4, so
``check_homotopy_jacobi`` sweeps k = 1..4 over all basis tuples.

The same summation drives the section-level checks in ``cohomology``; the
residual evaluator here is deliberately generic over any elements carrying
a degree and supporting add/neg/is_zero.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .report import CheckResult
from .symbolic import koszul_sign, mat_vec, perm_sign, rat, rat_mat_inv, unshuffles


# ---------------------------------------------------------------------------
# generic homotopy Jacobi residual
# ---------------------------------------------------------------------------

def jacobi_residuals(bracket, elements, k: int):
    """Residuals of the k-th homotopy Jacobi identity on an ordered tuple.

    ``bracket(args)`` must implement the multibrackets: given a list of 1, 2
    or 3 graded elements it returns their bracket or None for zero.
    Returns a dict mapping output degree to the accumulated residual; an
    empty dict (or all-zero values) means the identity holds on this tuple.
    """
    elements = list(elements)
    assert len(elements) == k
    degrees = [x.degree for x in elements]
    acc: dict = {}
    for i in range(1, k + 1):
        j = k + 1 - i
        if i > 3 or j > 3:
            continue
        coeff = (-1) ** (i * (j - 1))
        for sigma in unshuffles(i, k - i):
            sign = coeff * perm_sign(sigma) * koszul_sign(sigma, degrees)
            inner = bracket([elements[s] for s in sigma[:i]])
            if inner is None:
                continue
            term = bracket([inner] + [elements[s] for s in sigma[i:]])
            if term is None:
                continue
            if sign == -1:
                term = term.neg()
            if term.degree in acc:
                acc[term.degree] = acc[term.degree].add(term)
            else:
                acc[term.degree] = term
    return {d: v for d, v in acc.items() if not v.is_zero()}


# ---------------------------------------------------------------------------
# finite-dimensional model
# ---------------------------------------------------------------------------

class L2Elt:
    """Homogeneous element: a degree (0 or -1) and a coefficient vector."""

    __slots__ = ("degree", "vec")

    def __init__(self, degree: int, vec):
        assert degree in (0, -1)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "vec", tuple(Fraction(v) for v in vec))

    def __setattr__(self, name, value):
        raise AttributeError("L2Elt is immutable")

    def add(self, other: "L2Elt") -> "L2Elt":
        assert other.degree == self.degree
        return L2Elt(self.degree, tuple(a + b for a, b in zip(self.vec, other.vec)))

    def neg(self) -> "L2Elt":
        return L2Elt(self.degree, tuple(-a for a in self.vec))

    def scale(self, c) -> "L2Elt":
        c = Fraction(c)
        return L2Elt(self.degree, tuple(c * a for a in self.vec))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.vec)

    def __eq__(self, other):
        return (isinstance(other, L2Elt) and other.degree == self.degree
                and other.vec == self.vec)

    def __repr__(self):
        return f"L2Elt(deg={self.degree}, {self.vec})"


class Lie2Algebra:
    """Structure constants of a two-term L-infinity algebra.

    Parameters
    ----------
    dim0, dim1:
        dimensions of V_0 (basis e1..e_{dim0}) and V_{-1} (basis f1..f_{dim1}).
    l1:
        dim0 x dim1 rational matrix, column a = l1(f_a).
    l2_00:
        {(i, j): vector in V_0} for i < j, the brackets l2(e_i, e_j).
    l2_01:
        {(i, a): vector in V_{-1}}, the mixed brackets l2(e_i, f_a).
    l3:
        {(i, j, k): vector in V_{-1}} on distinct indices in any order.

    Missing keys are zero.  Graded antisymmetry fills in the other argument
    orders: l2(f_a, e_i) = -l2(e_i, f_a), l2 vanishes on two V_{-1}
    arguments for degree reasons, and any ordering of an l3 key that was not
    supplied is filled in with the permutation sign from a stored one.
    Supplying several orderings of the same indices explicitly keeps them
    verbatim; that deliberately lets non-antisymmetric candidate data
    through, so that check_homotopy_jacobi can expose it (for the skeletal
    string-type algebras this is exactly how a non-invariant pairing
    surfaces: as a k = 4 failure).
    """

    def __init__(self, dim0: int, dim1: int, l1=None, l2_00=None, l2_01=None,
                 l3=None):
        self.dim0 = dim0
        self.dim1 = dim1
        if l1 is None:
            l1 = [[0] * dim1 for _ in range(dim0)]
        self.l1mat = tuple(tuple(rat(x) for x in row) for row in l1)
        assert len(self.l1mat) == dim0 and all(len(r) == dim1 for r in self.l1mat)

        def clean(table, keylen, dim, sort_key=True):
            out = {}
            for key, vec in (table or {}).items():
                key = tuple(int(i) for i in key)
                assert len(key) == keylen
                if sort_key:
                    assert list(key) == sorted(set(key)), f"key not increasing: {key}"
                vec = tuple(rat(v) for v in vec)
                assert len(vec) == dim
                if any(v != 0 for v in vec):
                    out[key] = vec
            return out

        self.l2_00 = clean(l2_00, 2, dim0)
        self.l2_01 = clean(l2_01, 2, dim1, sort_key=False)
        for (i, a) in self.l2_01:
            assert 0 <= i < dim0 and 0 <= a < dim1

        # full trilinear table; explicit keys win, the rest by antisymmetry
        explicit = {}
        for key, vec in (l3 or {}).items():
            key = tuple(int(i) for i in key)
            assert len(key) == 3 and len(set(key)) == 3
            assert all(0 <= i < dim0 for i in key)
            vec = tuple(rat(v) for v in vec)
            assert len(vec) == dim1
            explicit[key] = vec
        self.l3 = {k: v for k, v in explicit.items() if any(x != 0 for x in v)}
        from itertools import permutations as _perms
        for key in explicit:
            for perm in _perms(range(3)):
                pk = tuple(key[p] for p in perm)
                if pk in explicit:
                    continue
                s = perm_sign(perm)
                vec = tuple(s * v for v in explicit[key])
                if any(v != 0 for v in vec) and pk not in self.l3:
                    self.l3[pk] = vec

    # -- elements

    def basis0(self, i: int) -> L2Elt:
        return L2Elt(0, tuple(1 if j == i else 0 for j in range(self.dim0)))

    def basis1(self, a: int) -> L2Elt:
        return L2Elt(-1, tuple(1 if b == a else 0 for b in range(self.dim1)))

    def zero(self, degree: int) -> L2Elt:
        return L2Elt(degree, (0,) * (self.dim0 if degree == 0 else self.dim1))

    def basis_labels(self):
        return ([f"e{i + 1}" for i in range(self.dim0)]
                + [f"f{a + 1}" for a in range(self.dim1)])

    def basis_elements(self):
        return ([self.basis0(i) for i in range(self.dim0)]
                + [self.basis1(a) for a in range(self.dim1)])

    # -- brackets on elements

    def l1(self, x: L2Elt):
        if x.degree != -1:
            return None
        return L2Elt(0, mat_vec(self.l1mat, x.vec, Fraction(0)))

    def _l2_00_basis(self, i: int, j: int):
        if i == j:
            return None
        key, sign = ((i, j), 1) if i < j else ((j, i), -1)
        vec = self.l2_00.get(key)
        if vec is None:
            return None
        return tuple(sign * v for v in vec)

    def l2(self, x: L2Elt, y: L2Elt):
        dx, dy = x.degree, y.degree
        if dx == -1 and dy == -1:
            return None
        if dx == -1:  # graded antisymmetry: l2(m, x) = -l2(x, m)
            out = self.l2(y, x)
            return None if out is None else out.neg()
        if dy == 0:
            vec = [Fraction(0)] * self.dim0
            for i in range(self.dim0):
                if x.vec[i] == 0:
                    continue
                for j in range(self.dim0):
                    if y.vec[j] == 0:
                        continue
                    base = self._l2_00_basis(i, j)
                    if base is None:
                        continue
                    c = x.vec[i] * y.vec[j]
                    for t in range(self.dim0):
                        vec[t] += c * base[t]
            return L2Elt(0, vec)
        vec = [Fraction(0)] * self.dim1
        for i in range(self.dim0):
            if x.vec[i] == 0:
                continue
            for a in range(self.dim1):
                if y.vec[a] == 0:
                    continue
                base = self.l2_01.get((i, a))
                if base is None:
                    continue
                c = x.vec[i] * y.vec[a]
                for t in range(self.dim1):
                    vec[t] += c * base[t]
        return L2Elt(-1, vec)

    def l3_map(self, x: L2Elt, y: L2Elt, z: L2Elt):
        if not (x.degree == y.degree == z.degree == 0):
            return None
        vec = [Fraction(0)] * self.dim1
        for i in range(self.dim0):
            if x.vec[i] == 0:
                continue
            for j in range(self.dim0):
                if y.vec[j] == 0 or j == i:
                    continue
                for k in range(self.dim0):
                    if z.vec[k] == 0 or k == i or k == j:
                        continue
                    base = self.l3.get((i, j, k))
                    if base is None:
                        continue
                    c = x.vec[i] * y.vec[j] * z.vec[k]
                    for t in range(self.dim1):
                        vec[t] += c * base[t]
        return L2Elt(-1, vec)

    def bracket(self, args):
        if len(args) == 1:
            return self.l1(args[0])
        if len(args) == 2:
            return self.l2(args[0], args[1])
        if len(args) == 3:
            return self.l3_map(args[0], args[1], args[2])
        return None


def check_homotopy_jacobi(L: Lie2Algebra, max_level: int = 4):
    """Check homotopy Jacobi identities k = 1..max_level on all basis tuples.

    Multilinearity makes basis tuples sufficient.  Returns one CheckResult
    per k, the witness naming the first failing tuple and its residual.
    """
    labels = L.basis_labels()
    basis = L.basis_elements()
    out = []
    for k in range(1, max_level + 1):
        witness = None
        for combo in product(range(len(basis)), repeat=k):
            residual = jacobi_residuals(L.bracket, [basis[c] for c in combo], k)
            if residual:
                names = ", ".join(labels[c] for c in combo)
                parts = "; ".join(f"deg {d}: {v.vec}" for d, v in residual.items())
                witness = f"inputs ({names}) give residual {parts}"
                break
        out.append(CheckResult(f"jacobi_k{k}", witness is None, witness))
    return out


# ---------------------------------------------------------------------------
# the string-type example: Lie algebra + bilinear form
# ---------------------------------------------------------------------------

def lie_algebra_checks(c):
    """Validate structure constants c[i][j] = vector of [e_i, e_j]."""
    dim = len(c)
    for i in range(dim):
        assert len(c[i]) == dim
        for j in range(dim):
            assert len(c[i][j]) == dim
            for k in range(dim):
                assert rat(c[i][j][k]) == -rat(c[j][i][k]), \
                    f"structure constants not antisymmetric at ({i},{j},{k})"
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                for t in range(dim):
                    acc = Fraction(0)
                    for m in range(dim):
                        acc += (rat(c[i][j][m]) * rat(c[m][k][t])
                                + rat(c[j][k][m]) * rat(c[m][i][t])
                                + rat(c[k][i][m]) * rat(c[m][j][t]))
                    assert acc == 0, f"Jacobi fails at ({i},{j},{k}) comp {t}"


def killing_form(c):
    """Killing form K_ij = tr(ad_i ad_j) from structure constants."""
    dim = len(c)
    out = []
    for i in range(dim):
        row = []
        for j in range(dim):
            acc = Fraction(0)
            for a in range(dim):
                for b in range(dim):
                    acc += rat(c[i][b][a]) * rat(c[j][a][b])
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def string_lie2(struct, form) -> Lie2Algebra:
    """Skeletal Lie 2-algebra from a Lie algebra and a symmetric form.

    V_0 = the Lie algebra, V_{-1} = Q, l1 = 0, l2 = the Lie bracket on V_0
    and zero on mixed degrees, l3(x, y, z) = form([x, y], z).

    The structure constants must define a Lie algebra and the form must be
    symmetric; both are asserted.  Invariance of the form is deliberately
    not required: it is equivalent to the k = 4 homotopy Jacobi identity,
    which check_homotopy_jacobi will report honestly.
    """
    lie_algebra_checks(struct)
    dim = len(struct)
    assert len(form) == dim and all(len(r) == dim for r in form)
    for i in range(dim):
        for j in range(dim):
            assert rat(form[i][j]) == rat(form[j][i]), "form not symmetric"
    l2_00 = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            vec = tuple(rat(struct[i][j][t]) for t in range(dim))
            if any(v != 0 for v in vec):
                l2_00[(i, j)] = vec
    # l3 given verbatim on every ordering, so a non-invariant form really
    # produces the raw trilinear map form([x,y], z)
    l3 = {}
    for i in range(dim):
        for j in range(dim):
            if j == i:
                continue
            for k in range(dim):
                if k == i or k == j:
                    continue
                val = Fraction(0)
                for m in range(dim):
                    val += rat(struct[i][j][m]) * rat(form[m][k])
                l3[(i, j, k)] = (val,)
    return Lie2Algebra(dim, 1, l2_00=l2_00, l3=l3)


def so3_structure():
    """Structure constants of so(3): [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2."""
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        c[i][j][k] = 1
        c[j][i][k] = -1
    return c


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------

class Lie2Morphism:
    """Morphism data (f0, f1, f2) between two-term L-infinity algebras.

    f0: V_0 -> V'_0 and f1: V_{-1} -> V'_{-1} are rational matrices,
    f2: V_0 ^ V_0 -> V'_{-1} is given on basis pairs {(i, j): vector}, i < j.
    """

    def __init__(self, f0, f1, f2=None):
        self.f0 = tuple(tuple(rat(x) for x in row) for row in f0)
        self.f1 = tuple(tuple(rat(x) for x in row) for row in f1)
        self.f2 = {}
        for key, vec in (f2 or {}).items():
            key = tuple(int(t) for t in key)
            assert len(key) == 2 and key[0] < key[1]
            vec = tuple(rat(v) for v in vec)
            if any(v != 0 for v in vec):
                self.f2[key] = vec

    def apply0(self, x: L2Elt) -> L2Elt:
        assert x.degree == 0
        return L2Elt(0, mat_vec(self.f0, x.vec, Fraction(0)))

    def apply1(self, m: L2Elt) -> L2Elt:
        assert m.degree == -1
        return L2Elt(-1, mat_vec(self.f1, m.vec, Fraction(0)))

    def apply2(self, x: L2Elt, y: L2Elt) -> L2Elt:
        assert x.degree == 0 and y.degree == 0
        dim_out = len(self.f1)
        vec = [Fraction(0)] * dim_out
        for i in range(len(x.vec)):
            if x.vec[i] == 0:
                continue
            for j in range(len(y.vec)):
                if y.vec[j] == 0 or i == j:
                    continue
                key, sign = ((i, j), 1) if i < j else ((j, i), -1)
                base = self.f2.get(key)
                if base is None:
                    continue
                c = x.vec[i] * y.vec[j] * sign
                for t in range(dim_out):
                    vec[t] += c * base[t]
        return L2Elt(-1, vec)


def identity_morphism(L: Lie2Algebra) -> Lie2Morphism:
    eye0 = [[1 if i == j else 0 for j in range(L.dim0)] for i in range(L.dim0)]
    eye1 = [[1 if i == j else 0 for j in range(L.dim1)] for i in range(L.dim1)]
    return Lie2Morphism(eye0, eye1)


def check_morphism(L: Lie2Algebra, Lp: Lie2Algebra, mor: Lie2Morphism):
    """Verify the four morphism equations on all basis tuples."""
    out = []

    def diff(a, b):
        if a is None and b is None:
            return None
        if a is None:
            return b.neg()
        if b is None:
            return a
        return a.add(b.neg())

    # (1) chain map: f0 l1 = l1' f1
    witness = None
    for a in range(L.dim1):
        fa = L.basis1(a)
        lhs = mor.apply0(L.l1(fa))
        rhs = Lp.l1(mor.apply1(fa))
        d = diff(lhs, rhs)
        if d is not None and not d.is_zero():
            witness = f"f{a + 1}: residual {d.vec}"
            break
    out.append(CheckResult("morphism_chain_map", witness is None, witness))

    # (2) f0 l2(x,y) - l2'(f0 x, f0 y) = l1' f2(x,y)
    witness = None
    for i in range(L.dim0):
        for j in range(i + 1, L.dim0):
            x, y = L.basis0(i), L.basis0(j)
            lhs = diff(mor.apply0(L.l2(x, y)), Lp.l2(mor.apply0(x), mor.apply0(y)))
            rhs = Lp.l1(mor.apply2(x, y))
            d = diff(lhs, rhs)
            if d is not None and not d.is_zero():
                witness = f"(e{i + 1}, e{j + 1}): residual {d.vec}"
                break
        if witness:
            break
    out.append(CheckResult("morphism_l2_level0", witness is None, witness))

    # (3) f1 l2(x,m) - l2'(f0 x, f1 m) = f2(x, l1 m)
    witness = None
    for i in range(L.dim0):
        for a in range(L.dim1):
            x, m = L.basis0(i), L.basis1(a)
            lhs = diff(mor.apply1(L.l2(x, m)), Lp.l2(mor.apply0(x), mor.apply1(m)))
            rhs = mor.apply2(x, L.l1(m))
            d = diff(lhs, rhs)
            if d is not None and not d.is_zero():
                witness = f"(e{i + 1}, f{a + 1}): residual {d.vec}"
                break
        if witness:
            break
    out.append(CheckResult("morphism_l2_mixed", witness is None, witness))

    # (4) l3'(f0 x, f0 y, f0 z) - f1 l3(x,y,z)
    #     = sum over cyclic (x,y,z) of l2'(f2(x,y), f0 z) + f2(l2(x,y), z)
    witness = None
    for i in range(L.dim0):
        for j in range(i + 1, L.dim0):
            for k in range(j + 1, L.dim0):
                x, y, z = L.basis0(i), L.basis0(j), L.basis0(k)
                fx, fy, fz = (mor.apply0(v) for v in (x, y, z))
                lhs = diff(Lp.l3_map(fx, fy, fz), mor.apply1(L.l3_map(x, y, z)))
                rhs = None
                for (a, b, c) in ((x, y, z), (y, z, x), (z, x, y)):
                    t1 = Lp.l2(mor.apply2(a, b), mor.apply0(c))
                    t2 = mor.apply2(L.l2(a, b), c)
                    for t in (t1, t2):
                        if t is not None:
                            rhs = t if rhs is None else rhs.add(t)
                d = diff(lhs, rhs)
                if d is not None and not d.is_zero():
                    witness = (f"(e{i + 1}, e{j + 1}, e{k + 1}): "
                               f"residual {d.vec}")
                    break
            if witness:
                break
        if witness:
            break
    out.append(CheckResult("morphism_l3", witness is None, witness))
    return out


def change_basis(L: Lie2Algebra, Q0, Q1) -> Lie2Algebra:
    """Transport the brackets to new bases.

    Column i of Q0 expresses the new V_0 basis vector in the old basis (and
    Q1 likewise on V_{-1}); the transported structure constants are
    l'(..) = Q^{-1} l(Q .., Q ..).  The morphism (Q0, Q1, 0) from the
    transported algebra to the original is strict and check_morphism-exact.
    """
    Q0 = tuple(tuple(rat(x) for x in row) for row in Q0)
    Q1 = tuple(tuple(rat(x) for x in row) for row in Q1)
    inv0 = rat_mat_inv(Q0)
    inv1 = rat_mat_inv(Q1)

    def col(mat, i):
        return tuple(row[i] for row in mat)

    def to_new(elem: L2Elt) -> tuple:
        inv = inv0 if elem.degree == 0 else inv1
        return mat_vec(inv, elem.vec, Fraction(0))

    n0, n1 = L.dim0, L.dim1
    new0 = [L2Elt(0, col(Q0, i)) for i in range(n0)]
    new1 = [L2Elt(-1, col(Q1, a)) for a in range(n1)]

    l1_new = [[Fraction(0)] * n1 for _ in range(n0)]
    for a in range(n1):
        img = L.l1(new1[a])
        vec = to_new(img)
        for t in range(n0):
            l1_new[t][a] = vec[t]

    l2_00 = {}
    for i in range(n0):
        for j in range(i + 1, n0):
            vec = to_new(L.l2(new0[i], new0[j]))
            if any(v != 0 for v in vec):
                l2_00[(i, j)] = vec
    l2_01 = {}
    for i in range(n0):
        for a in range(n1):
            vec = to_new(L.l2(new0[i], new1[a]))
            if any(v != 0 for v in vec):
                l2_01[(i, a)] = vec
    l3 = {}
    for i in range(n0):
        for j in range(i + 1, n0):
            for k in range(j + 1, n0):
                vec = to_new(L.l3_map(new0[i], new0[j], new0[k]))
                if any(v != 0 for v in vec):
                    l3[(i, j, k)] = vec
    return Lie2Algebra(n0, n1, l1_new, l2_00, l2_01, l3)
