"""Two-term representations up to homotopy of the tangent algebroid on R^n.

The data is a two-term complex of trivial bundles E_{-1} -> E_0 over R^n
(the boundary is a polynomial matrix), a connection on each level given by
Christoffel matrices, and a curvature correction omega assigning to each
coordinate 2-plane a Hom(E_0, E_{-1})-valued polynomial matrix.  The axioms
checked by ``check_rep``:

  * the boundary is a chain map for the connections,
  * the level 0 curvature equals boundary . omega,
  * the level -1 curvature equals omega . boundary,
  * omega is closed for the induced connection on Hom(E_0, E_{-1}).

Connections act on coordinate fields as nabla_i v = d_i v + Gamma_i v, and
curvature in these terms is R_ij = d_i Gamma_j - d_j Gamma_i + [Gamma_i,
Gamma_j].  Everything is exact polynomial arithmetic.
"""

from __future__ import annotations

from itertools import combinations
from typing import NamedTuple

from .calculus import VectorField
from .report import CheckResult
from .symbolic import (
    Poly, mat_add, mat_is_zero, mat_kron, mat_mul, mat_neg, mat_sub,
    mat_transpose, mat_vec, poly_identity, poly_zeros, random_poly,
)


def _as_poly_mat(m, nvars):
    out = []
    for row in m:
        new = []
        for x in row:
            if not isinstance(x, Poly):
                x = Poly.const(nvars, x)
            assert x.nvars == nvars
            new.append(x)
        out.append(tuple(new))
    return tuple(out)


def mat_partial(m, i):
    return tuple(tuple(x.partial(i) for x in row) for row in m)


def curvature(gammas, i: int, j: int):
    """Curvature matrix R_ij of a Christoffel family."""
    gi, gj = gammas[i], gammas[j]
    zero = gi[0][0] - gi[0][0] if gi else None
    comm = mat_sub(mat_mul(gi, gj, zero), mat_mul(gj, gi, zero))
    return mat_add(mat_sub(mat_partial(gj, i), mat_partial(gi, j)), comm)


class RepUH2:
    """Two-term representation up to homotopy: (boundary, connections, omega).

    boundary: r0 x r1 polynomial matrix, E_{-1} -> E_0.
    gamma0, gamma1: n Christoffel matrices for the two levels.
    omega: {(i, j): r1 x r0 matrix} for i < j; other orders by antisymmetry.
    """

    def __init__(self, n: int, r0: int, r1: int, boundary, gamma0, gamma1,
                 omega=None):
        self.n = n
        self.r0 = r0
        self.r1 = r1
        self.boundary = _as_poly_mat(boundary, n)
        assert len(self.boundary) == r0
        assert all(len(row) == r1 for row in self.boundary)
        assert len(gamma0) == n and len(gamma1) == n
        self.gamma0 = tuple(_as_poly_mat(g, n) for g in gamma0)
        self.gamma1 = tuple(_as_poly_mat(g, n) for g in gamma1)
        for g in self.gamma0:
            assert len(g) == r0 and all(len(r) == r0 for r in g)
        for g in self.gamma1:
            assert len(g) == r1 and all(len(r) == r1 for r in g)
        self.omega = {}
        for key, m in (omega or {}).items():
            i, j = (int(key[0]), int(key[1]))
            assert 0 <= i < j < n
            m = _as_poly_mat(m, n)
            assert len(m) == r1 and all(len(r) == r0 for r in m)
            if not mat_is_zero(m):
                self.omega[(i, j)] = m

    # -- basic operators

    def zero_poly(self) -> Poly:
        return Poly.zero(self.n)

    def omega_at(self, i: int, j: int):
        if i == j:
            return poly_zeros(self.r1, self.r0, self.n)
        if i < j:
            return self.omega.get((i, j), poly_zeros(self.r1, self.r0, self.n))
        return mat_neg(self.omega_at(j, i))

    def omega_vf(self, x: VectorField, y: VectorField):
        """omega(X, Y) as an r1 x r0 matrix, bilinear in the fields."""
        out = poly_zeros(self.r1, self.r0, self.n)
        for (i, j), m in self.omega.items():
            c = x.comps[i] * y.comps[j] - x.comps[j] * y.comps[i]
            if c.is_zero():
                continue
            out = mat_add(out, tuple(tuple(c * e for e in row) for row in m))
        return out

    def nabla0(self, i: int, v):
        return tuple(a + b for a, b in zip(
            (c.partial(i) for c in v),
            mat_vec(self.gamma0[i], v, self.zero_poly())))

    def nabla1(self, i: int, m):
        return tuple(a + b for a, b in zip(
            (c.partial(i) for c in m),
            mat_vec(self.gamma1[i], m, self.zero_poly())))

    def nabla0_vf(self, x: VectorField, v):
        out = tuple(self.zero_poly() for _ in range(self.r0))
        for i in range(self.n):
            if x.comps[i].is_zero():
                continue
            step = self.nabla0(i, v)
            out = tuple(o + x.comps[i] * s for o, s in zip(out, step))
        return out

    def nabla1_vf(self, x: VectorField, m):
        out = tuple(self.zero_poly() for _ in range(self.r1))
        for i in range(self.n):
            if x.comps[i].is_zero():
                continue
            step = self.nabla1(i, m)
            out = tuple(o + x.comps[i] * s for o, s in zip(out, step))
        return out

    def apply_boundary(self, m):
        return mat_vec(self.boundary, m, self.zero_poly())


def check_rep(R: RepUH2):
    """Verify the four representation-up-to-homotopy axioms exactly."""
    zero = R.zero_poly()
    out = []

    witness = None
    for i in range(R.n):
        lhs = mat_add(mat_mul(R.boundary, R.gamma1[i], zero),
                      mat_partial(R.boundary, i))
        rhs = mat_mul(R.gamma0[i], R.boundary, zero)
        if not mat_is_zero(mat_sub(lhs, rhs)):
            witness = f"direction {i + 1}: boundary fails to intertwine nabla"
            break
    out.append(CheckResult("chain_compat", witness is None, witness))

    witness = None
    for i, j in combinations(range(R.n), 2):
        rhs = (mat_mul(R.boundary, R.omega_at(i, j), zero) if R.r1
               else poly_zeros(R.r0, R.r0, R.n))
        defect = mat_sub(curvature(R.gamma0, i, j), rhs)
        if not mat_is_zero(defect):
            witness = f"plane ({i + 1},{j + 1}): R0 - boundary.omega = {defect}"
            break
    out.append(CheckResult("curvature_level0", witness is None, witness))

    witness = None
    for i, j in combinations(range(R.n), 2) if R.r1 else ():
        defect = mat_sub(curvature(R.gamma1, i, j),
                         mat_mul(R.omega_at(i, j), R.boundary, zero))
        if not mat_is_zero(defect):
            witness = f"plane ({i + 1},{j + 1}): R1 - omega.boundary = {defect}"
            break
    out.append(CheckResult("curvature_level1", witness is None, witness))

    witness = None
    for i, j, k in combinations(range(R.n), 3) if R.r1 else ():
        total = poly_zeros(R.r1, R.r0, R.n)
        for (a, rest, sign) in ((i, (j, k), 1), (j, (i, k), -1), (k, (i, j), 1)):
            w = R.omega_at(*rest)
            term = mat_add(mat_partial(w, a),
                           mat_sub(mat_mul(R.gamma1[a], w, zero),
                                   mat_mul(w, R.gamma0[a], zero)))
            total = mat_add(total, term if sign == 1 else mat_neg(term))
        if not mat_is_zero(total):
            witness = f"triple ({i + 1},{j + 1},{k + 1}): d_nabla omega = {total}"
            break
    out.append(CheckResult("omega_closed", witness is None, witness))
    return out


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def coadjoint_TM(gammas, n: int) -> RepUH2:
    """Identity complex T*M -> T*M with the same connection on both levels
    and omega = its curvature.

    Any Christoffel family works: the curvature axioms become definitions
    and closedness of omega is the second Bianchi identity.
    """
    assert len(gammas) == n
    gam = tuple(_as_poly_mat(g, n) for g in gammas)
    omega = {}
    for i, j in combinations(range(n), 2):
        m = curvature(gam, i, j)
        if not mat_is_zero(m):
            omega[(i, j)] = m
    return RepUH2(n, n, n, poly_identity(n, n), gam, gam, omega)


def trivial_rep(n: int, r0: int = 1, r1: int = 0) -> RepUH2:
    """Flat rep with zero boundary, connections and omega.

    The default ranks (1, 0) give the unit for tensor_rep: a trivial line
    in degree 0 and nothing in degree -1.
    """
    return RepUH2(n, r0, r1, poly_zeros(r0, r1, n),
                  (poly_zeros(r0, r0, n),) * n, (poly_zeros(r1, r1, n),) * n)


def random_coadjoint(rng, n: int, max_degree: int = 2) -> RepUH2:
    gammas = []
    for _ in range(n):
        gammas.append(tuple(tuple(random_poly(rng, n, max_degree, nterms=2)
                                  for _ in range(n)) for _ in range(n)))
    return coadjoint_TM(tuple(gammas), n)


def dual_rep(R: RepUH2) -> RepUH2:
    """Dual representation on the shifted dual complex.

    The levels swap (the dual of E_0 sits in degree -1 and vice versa), the
    boundary dualizes with a sign, connections dualize in the usual way and
    the curvature correction transposes:

        boundary* = -boundary^T,  gamma0* = -gamma1^T,
        gamma1* = -gamma0^T,      omega*_ij = omega_ij^T.

    This is the unique structure for which the evaluation pairings satisfy
    the identities verified by check_dual_pairing, and it is involutive:
    dual_rep(dual_rep(R)) == R on the nose.
    """
    gamma0d = tuple(mat_neg(mat_transpose(g)) for g in R.gamma1)
    gamma1d = tuple(mat_neg(mat_transpose(g)) for g in R.gamma0)
    omegad = {key: mat_transpose(m) for key, m in R.omega.items()}
    return RepUH2(R.n, R.r1, R.r0, mat_neg(mat_transpose(R.boundary)),
                  gamma0d, gamma1d, omegad)


def check_dual_pairing(R: RepUH2, Rd: RepUH2 = None):
    """Verify the evaluation pairings between R and its dual.

    With eta ranging over the dual of E_0 (degree -1 in the dual) and zeta
    over the dual of E_{-1} (degree 0 in the dual), the component identities
    on basis (co)vectors are:

      1. <boundary* eta, m> + <eta, boundary m> = 0
      2. d_i <eta, v>  = <nabla*_i eta, v> + <eta, nabla_i v>
      3. d_i <zeta, m> = <nabla*_i zeta, m> + <zeta, nabla_i m>
      4. <omega*_ij zeta, v> = <zeta, omega_ij v>

    Basis elements have constant coefficients, so the derivative terms pick
    up exactly the Christoffel contributions.
    """
    if Rd is None:
        Rd = dual_rep(R)
    zero = R.zero_poly()
    out = []

    def pair(covec, vec):
        acc = zero
        for a, b in zip(covec, vec):
            acc = acc + a * b
        return acc

    def basis(r, t):
        return tuple(Poly.const(R.n, 1 if s == t else 0) for s in range(r))

    # 1. boundary pairing (eta in dual-of-E0 = level -1 of the dual)
    witness = None
    for a in range(R.r0):
        eta = basis(R.r0, a)
        img = mat_vec(Rd.boundary, eta, zero)  # in dual of E_{-1}
        for b in range(R.r1):
            m = basis(R.r1, b)
            resid = pair(img, m) + pair(eta, R.apply_boundary(m))
            if not resid.is_zero():
                witness = f"eta_{a + 1}, m_{b + 1}: residual {resid!r}"
                break
        if witness:
            break
    out.append(CheckResult("dual_pairing_boundary", witness is None, witness))

    # 2. Leibniz against E_0  (dual connection on level -1 of the dual)
    witness = None
    for i in range(R.n):
        for a in range(R.r0):
            eta = basis(R.r0, a)
            deta = Rd.nabla1(i, eta)
            for b in range(R.r0):
                v = basis(R.r0, b)
                resid = (pair(eta, v).partial(i) - pair(deta, v)
                         - pair(eta, R.nabla0(i, v)))
                if not resid.is_zero():
                    witness = f"i={i + 1}, eta_{a + 1}, v_{b + 1}: {resid!r}"
                    break
            if witness:
                break
        if witness:
            break
    out.append(CheckResult("dual_pairing_nabla_level0", witness is None, witness))

    # 3. Leibniz against E_{-1}
    witness = None
    for i in range(R.n):
        for a in range(R.r1):
            zeta = basis(R.r1, a)
            dzeta = Rd.nabla0(i, zeta)
            for b in range(R.r1):
                m = basis(R.r1, b)
                resid = (pair(zeta, m).partial(i) - pair(dzeta, m)
                         - pair(zeta, R.nabla1(i, m)))
                if not resid.is_zero():
                    witness = f"i={i + 1}, zeta_{a + 1}, m_{b + 1}: {resid!r}"
                    break
            if witness:
                break
        if witness:
            break
    out.append(CheckResult("dual_pairing_nabla_level1", witness is None, witness))

    # 4. omega pairing
    witness = None
    for i, j in combinations(range(R.n), 2):
        wd = Rd.omega_at(i, j)
        w = R.omega_at(i, j)
        for a in range(R.r1):
            zeta = basis(R.r1, a)
            img = mat_vec(wd, zeta, zero)
            for b in range(R.r0):
                v = basis(R.r0, b)
                resid = pair(img, v) - pair(zeta, mat_vec(w, v, zero))
                if not resid.is_zero():
                    witness = (f"plane ({i + 1},{j + 1}), zeta_{a + 1}, "
                               f"v_{b + 1}: {resid!r}")
                    break
            if witness:
                break
        if witness:
            break
    out.append(CheckResult("dual_pairing_omega", witness is None, witness))
    return out


# ---------------------------------------------------------------------------
# tensor product (a three-term structure)
# ---------------------------------------------------------------------------

class TensorRep(NamedTuple):
    """Tensor product of two 2-term reps, which is honestly three-term.

    Levels: t0 = E_0 (x) F_0, t1 = E_{-1} (x) F_0 (+) E_0 (x) F_{-1} (in that
    block order), t2 = E_{-1} (x) F_{-1}.  The boundary picks up a Koszul
    sign on the second slot of odd elements, connections do not (they are
    even operators), and the curvature corrections satisfy the three-term
    axioms

        R0 = boundary1 . omega1
        R1 = omega1 . boundary1 + boundary2 . omega2
        R2 = omega2 . boundary2

    checked by check_tensor_rep.  The plain two-term truncation (forgetting
    t2) is a rep up to homotopy exactly when boundary2 . omega2 = 0, e.g.
    when one factor is flat with zero boundary.
    """
    n: int
    t0: int
    t1: int
    t2: int
    boundary1: tuple
    boundary2: tuple
    gamma0: tuple
    gamma1: tuple
    gamma2: tuple
    omega1: dict
    omega2: dict

    def two_term(self) -> RepUH2:
        return RepUH2(self.n, self.t0, self.t1, self.boundary1,
                      self.gamma0, self.gamma1, self.omega1)


def _hstack(a, b):
    assert len(a) == len(b)
    return tuple(ra + rb for ra, rb in zip(a, b))


def _vstack(a, b):
    return tuple(a) + tuple(b)


def _block_diag(a, b, nvars):
    ra, ca = len(a), len(a[0]) if a else 0
    rb, cb = len(b), len(b[0]) if b else 0
    top = _hstack(a, poly_zeros(ra, cb, nvars))
    bot = _hstack(poly_zeros(rb, ca, nvars), b)
    return _vstack(top, bot)


def tensor_rep(E: RepUH2, F: RepUH2) -> TensorRep:
    assert E.n == F.n
    n = E.n
    zero = Poly.zero(n)
    eyeE0 = poly_identity(E.r0, n)
    eyeE1 = poly_identity(E.r1, n)
    eyeF0 = poly_identity(F.r0, n)
    eyeF1 = poly_identity(F.r1, n)

    t0 = E.r0 * F.r0
    t1 = E.r1 * F.r0 + E.r0 * F.r1
    t2 = E.r1 * F.r1

    boundary1 = _hstack(mat_kron(E.boundary, eyeF0, zero),
                        mat_kron(eyeE0, F.boundary, zero))
    boundary2 = _vstack(mat_neg(mat_kron(eyeE1, F.boundary, zero)),
                        mat_kron(E.boundary, eyeF1, zero))

    gamma0 = tuple(mat_add(mat_kron(E.gamma0[i], eyeF0, zero),
                           mat_kron(eyeE0, F.gamma0[i], zero))
                   for i in range(n))
    gamma1 = tuple(_block_diag(
        mat_add(mat_kron(E.gamma1[i], eyeF0, zero),
                mat_kron(eyeE1, F.gamma0[i], zero)),
        mat_add(mat_kron(E.gamma0[i], eyeF1, zero),
                mat_kron(eyeE0, F.gamma1[i], zero)), n)
        for i in range(n))
    gamma2 = tuple(mat_add(mat_kron(E.gamma1[i], eyeF1, zero),
                           mat_kron(eyeE1, F.gamma1[i], zero))
                   for i in range(n))

    omega1 = {}
    omega2 = {}
    for i, j in combinations(range(n), 2):
        wE = E.omega_at(i, j)
        wF = F.omega_at(i, j)
        m1 = _vstack(mat_kron(wE, eyeF0, zero), mat_kron(eyeE0, wF, zero))
        if not mat_is_zero(m1):
            omega1[(i, j)] = m1
        m2 = _hstack(mat_neg(mat_kron(eyeE1, wF, zero)),
                     mat_kron(wE, eyeF1, zero))
        if not mat_is_zero(m2):
            omega2[(i, j)] = m2

    return TensorRep(n, t0, t1, t2, boundary1, boundary2, gamma0, gamma1,
                     gamma2, omega1, omega2)


def check_tensor_rep(T: TensorRep):
    """Exact verification of the three-term axioms for a tensor product."""
    n = T.n
    zero = Poly.zero(n)
    out = []

    out.append(CheckResult(
        "boundary_squared",
        mat_is_zero(mat_mul(T.boundary1, T.boundary2, zero)),
        None if mat_is_zero(mat_mul(T.boundary1, T.boundary2, zero))
        else "boundary1 . boundary2 != 0"))

    witness = None
    for i in range(n):
        d1 = mat_sub(mat_add(mat_mul(T.boundary1, T.gamma1[i], zero),
                             mat_partial(T.boundary1, i)),
                     mat_mul(T.gamma0[i], T.boundary1, zero))
        d2 = mat_sub(mat_add(mat_mul(T.boundary2, T.gamma2[i], zero),
                             mat_partial(T.boundary2, i)),
                     mat_mul(T.gamma1[i], T.boundary2, zero))
        if not (mat_is_zero(d1) and mat_is_zero(d2)):
            witness = f"direction {i + 1}"
            break
    out.append(CheckResult("chain_compat", witness is None, witness))

    def omega_get(table, key, rows, cols):
        if key in table:
            return table[key]
        return poly_zeros(rows, cols, n)

    witness = None
    for i, j in combinations(range(n), 2):
        w1 = omega_get(T.omega1, (i, j), T.t1, T.t0)
        w2 = omega_get(T.omega2, (i, j), T.t2, T.t1)
        corr = (mat_mul(T.boundary2, w2, zero) if T.t2
                else poly_zeros(T.t1, T.t1, n))
        r0 = mat_sub(curvature(T.gamma0, i, j), mat_mul(T.boundary1, w1, zero))
        r1 = mat_sub(curvature(T.gamma1, i, j),
                     mat_add(mat_mul(w1, T.boundary1, zero), corr))
        ok = mat_is_zero(r0) and mat_is_zero(r1)
        if ok and T.t2:
            r2 = mat_sub(curvature(T.gamma2, i, j),
                         mat_mul(w2, T.boundary2, zero))
            ok = mat_is_zero(r2)
        if not ok:
            witness = f"plane ({i + 1},{j + 1})"
            break
    out.append(CheckResult("curvature_all_levels", witness is None, witness))
    return out
