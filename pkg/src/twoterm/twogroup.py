"""Finite 2-group extensions of groupoids by 2-term chain complexes.

Everything here is the discrete analogue of the section-level extension
theory: a finite groupoid acts up to homotopy on a 2-term complex of
rational vector spaces, a normalized 2-cocycle (C2, C3) twists the
product, and the result is a semistrict 2-group(oid) whose coherence laws
(interchange, associator naturality, pentagon, triangle, zig-zags) can be
verified exhaustively.

Conventions.  Arrows compose like functions: ``compose(g1, g2)`` needs
s(g1) = t(g2) and applies g2 first.  A composable chain (g1, ..., gk) has
t(g_i) = s(g_{i-1}); values of a degree-k cochain on it live in the fiber
over t(g1).  F1(g) maps the fibers over s(g) to the fibers over t(g) and
F2(g1, g2) maps E_0(s(g2)) to E_{-1}(t(g1)).  The representation axioms:

  * boundary . F1 = F1 . boundary and F1(1_x) = Id,
  * F1(g1) F1(g2) - F1(g1 g2) = [boundary, F2(g1, g2)]   (level 0: the
    commutator is boundary . F2, level -1: F2 . boundary),
  * F1(g1) F2(g2, g3) - F2(g1 g2, g3) + F2(g1, g2 g3)
      - F2(g1, g2) F1(g3) = 0.

Cochains are normalized (zero when any argument is an identity) and
F2(g, 1) = F2(1, g) = 0, so the differential

  D = boundary-push + F1-hat + F2-hat,
  F1-hat(c)(g1..g_{k+1}) = (-1)^{k+l} ( F1(g1) c(g2..g_{k+1})
      + sum_i (-1)^i c(.., g_i g_{i+1}, ..) + (-1)^{k+1} c(g1..g_k) ),
  F2-hat(c)(g1..g_{k+2}) = F2(g1, g2)(c(g3..g_{k+2})),

preserves normalization and squares to zero.  Here l is 0 on the E_0
component and 1 on the E_{-1} component of a cochain.

The extension cells are (g, xi) and (g, xi, m) with xi in E_0(t(g)) and
m in E_{-1}(t(g)); all structure maps (horizontal and vertical products,
associator, inverses, unit) are the displayed twisted formulas.  Every
coherence identity is affine in the fiber variables, so checking it at
the zero vector and at each basis vector of each slot decides it for all
fiber values; the verifier relies on that throughout.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import NamedTuple

from .report import CheckResult
from .symbolic import (
    mat_add, mat_is_zero, mat_mul, mat_sub, mat_vec, rat_identity,
    rat_mat_invertible, rat_zeros,
)

RAT_ZERO = Fraction(0)


def _vec(values):
    return tuple(Fraction(x) for x in values)


def _vzero(rank: int):
    return (RAT_ZERO,) * rank


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b, strict=True))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b, strict=True))


def _vneg(a):
    return tuple(-x for x in a)


def _vscale(c, a):
    return tuple(c * x for x in a)


def _vis_zero(a) -> bool:
    return all(x == 0 for x in a)


def _basis(rank: int, i: int):
    return tuple(Fraction(1) if j == i else RAT_ZERO for j in range(rank))


def _rat_mat(m):
    return tuple(tuple(Fraction(x) for x in row) for row in m)


# ---------------------------------------------------------------------------
# finite groupoids
# ---------------------------------------------------------------------------

class FinGroupoid:
    """Finite groupoid with arrows indexed 0..len-1 over objects 0..n-1.

    The composition table is keyed by composable pairs (g1, g2) with
    s(g1) = t(g2) and holds the arrow g1 . g2 (g2 applied first).  All
    groupoid laws are verified exhaustively on construction.
    """

    __slots__ = ("n_objects", "source", "target", "table", "identity",
                 "inverse")

    def __init__(self, n_objects, source, target, table, identity, inverse):
        self.n_objects = int(n_objects)
        self.source = tuple(int(x) for x in source)
        self.target = tuple(int(x) for x in target)
        self.table = {(int(a), int(b)): int(c) for (a, b), c in table.items()}
        self.identity = tuple(int(x) for x in identity)
        self.inverse = tuple(int(x) for x in inverse)
        self._validate()

    # -- construction helpers -------------------------------------------

    @classmethod
    def trivial(cls, n_objects: int = 1) -> "FinGroupoid":
        """The identities-only groupoid on the given object set."""
        ids = tuple(range(n_objects))
        table = {(x, x): x for x in ids}
        return cls(n_objects, ids, ids, table, ids, ids)

    @classmethod
    def from_mul_table(cls, mul) -> "FinGroupoid":
        """One-object groupoid (a group) from a multiplication table."""
        order = len(mul)
        elems = range(order)
        if any(len(row) != order for row in mul) or any(
                not (0 <= mul[a][b] < order) for a in elems for b in elems):
            raise ValueError("multiplication table is not square over "
                             f"0..{order - 1}")
        unit = next((e for e in elems
                     if all(mul[e][g] == g and mul[g][e] == g
                            for g in elems)), None)
        if unit is None:
            raise ValueError("multiplication table has no identity element")
        inverse = []
        for g in elems:
            h = next((h for h in elems if mul[g][h] == unit), None)
            if h is None:
                raise ValueError(f"element {g} has no inverse")
            inverse.append(h)
        table = {(a, b): mul[a][b] for a in elems for b in elems}
        return cls(1, (0,) * order, (0,) * order, table, (unit,),
                   tuple(inverse))

    @classmethod
    def cyclic(cls, order: int) -> "FinGroupoid":
        mul = [[(a + b) % order for b in range(order)] for a in range(order)]
        return cls.from_mul_table(mul)

    @classmethod
    def symmetric(cls, letters: int) -> "FinGroupoid":
        """Symmetric group on the given letters, arrows = permutations."""
        perms = sorted(permutations(range(letters)))
        index = {p: i for i, p in enumerate(perms)}
        mul = [[index[tuple(p[q[i]] for i in range(letters))] for q in perms]
               for p in perms]
        return cls.from_mul_table(mul)

    @classmethod
    def pair(cls, n_objects: int) -> "FinGroupoid":
        """Pair groupoid: one arrow j -> i for every ordered pair (i, j)."""
        arrows = [(i, j) for i in range(n_objects) for j in range(n_objects)]
        index = {a: k for k, a in enumerate(arrows)}
        source = tuple(j for _, j in arrows)
        target = tuple(i for i, _ in arrows)
        table = {}
        for (i, j) in arrows:
            for (jj, k) in arrows:
                if jj == j:
                    table[(index[(i, j)], index[(j, k)])] = index[(i, k)]
        identity = tuple(index[(x, x)] for x in range(n_objects))
        inverse = tuple(index[(j, i)] for (i, j) in arrows)
        return cls(n_objects, source, target, table, identity, inverse)

    # -- queries ----------------------------------------------------------

    @property
    def arrows(self):
        return range(len(self.source))

    def is_identity(self, g: int) -> bool:
        return self.identity[self.source[g]] == g

    def compose(self, g1: int, g2: int) -> int:
        try:
            return self.table[(g1, g2)]
        except KeyError:
            raise ValueError(f"arrows {g1} and {g2} are not composable")

    def compose_chain(self, chain) -> int:
        out = chain[0]
        for g in chain[1:]:
            out = self.compose(out, g)
        return out

    def chains(self, k: int):
        """All composable chains (g1, ..., gk); k = 0 yields the objects."""
        if k == 0:
            yield from range(self.n_objects)
            return
        stack = [(g,) for g in self.arrows]
        while stack:
            chain = stack.pop()
            if len(chain) == k:
                yield chain
                continue
            anchor = self.source[chain[-1]]
            stack.extend(chain + (g,) for g in self.arrows
                         if self.target[g] == anchor)

    # -- law verification -------------------------------------------------

    def _validate(self):
        n_arr = len(self.source)
        if len(self.target) != n_arr or len(self.inverse) != n_arr:
            raise ValueError("source, target, inverse must cover all arrows")
        if len(self.identity) != self.n_objects:
            raise ValueError("one identity arrow per object is required")
        for x, e in enumerate(self.identity):
            if self.source[e] != x or self.target[e] != x:
                raise ValueError(f"identity of object {x} has wrong ends")
        for (g1, g2), g in self.table.items():
            if self.source[g1] != self.target[g2]:
                raise ValueError(f"table entry {(g1, g2)} is not composable")
            if self.source[g] != self.source[g2] or \
                    self.target[g] != self.target[g1]:
                raise ValueError(f"product of {(g1, g2)} has wrong ends")
        for g1 in self.arrows:
            for g2 in self.arrows:
                if self.source[g1] == self.target[g2] and \
                        (g1, g2) not in self.table:
                    raise ValueError(f"missing product for {(g1, g2)}")
        for g in self.arrows:
            if self.compose(self.identity[self.target[g]], g) != g:
                raise ValueError(f"left identity law fails at arrow {g}")
            if self.compose(g, self.identity[self.source[g]]) != g:
                raise ValueError(f"right identity law fails at arrow {g}")
            h = self.inverse[g]
            if self.source[h] != self.target[g] or \
                    self.target[h] != self.source[g]:
                raise ValueError(f"inverse of arrow {g} has wrong ends")
            if self.compose(g, h) != self.identity[self.target[g]] or \
                    self.compose(h, g) != self.identity[self.source[g]]:
                raise ValueError(f"inverse law fails at arrow {g}")
        for chain in self.chains(3):
            g1, g2, g3 = chain
            left = self.compose(self.compose(g1, g2), g3)
            right = self.compose(g1, self.compose(g2, g3))
            if left != right:
                raise ValueError(f"associativity fails at {chain}")

    def __repr__(self):
        return (f"FinGroupoid({self.n_objects} objects, "
                f"{len(self.source)} arrows)")


# ---------------------------------------------------------------------------
# representations up to homotopy of a finite groupoid
# ---------------------------------------------------------------------------

class GpdRepUH2:
    """Action of a finite groupoid on a 2-term complex, up to homotopy.

    r0[x], r1[x] are the fiber ranks of E_0, E_{-1} over object x;
    boundary[x] is the r0[x] x r1[x] matrix of the complex.  f1_0[g],
    f1_1[g] are the two levels of F1(g) (invertible, fibers over s(g) to
    fibers over t(g)); f2 maps composable pairs to r1[t(g1)] x r0[s(g2)]
    matrices, with missing pairs meaning zero.

    With ``validate=True`` every axiom (unitality, invertibility, chain
    compatibility, F2 normalization, both multiplicativity identities) is
    verified exhaustively and violations raise ValueError.
    """

    __slots__ = ("gpd", "r0", "r1", "boundary", "f1_0", "f1_1", "f2")

    def __init__(self, gpd: FinGroupoid, r0, r1, boundary, f1_0, f1_1,
                 f2=None, validate: bool = True):
        self.gpd = gpd
        self.r0 = tuple(int(x) for x in r0)
        self.r1 = tuple(int(x) for x in r1)
        assert len(self.r0) == gpd.n_objects and len(self.r1) == gpd.n_objects
        self.boundary = tuple(_rat_mat(m) for m in boundary)
        for x, m in enumerate(self.boundary):
            assert len(m) == self.r0[x], f"boundary rows at object {x}"
            assert all(len(row) == self.r1[x] for row in m)
        self.f1_0 = tuple(_rat_mat(m) for m in f1_0)
        self.f1_1 = tuple(_rat_mat(m) for m in f1_1)
        assert len(self.f1_0) == len(gpd.source)
        assert len(self.f1_1) == len(gpd.source)
        for g in gpd.arrows:
            s, t = gpd.source[g], gpd.target[g]
            assert len(self.f1_0[g]) == self.r0[t]
            assert all(len(row) == self.r0[s] for row in self.f1_0[g])
            assert len(self.f1_1[g]) == self.r1[t]
            assert all(len(row) == self.r1[s] for row in self.f1_1[g])
        self.f2 = {}
        for pair, m in (f2 or {}).items():
            m = _rat_mat(m)
            g1, g2 = pair
            assert gpd.source[g1] == gpd.target[g2], f"pair {pair}"
            assert len(m) == self.r1[gpd.target[g1]]
            assert all(len(row) == self.r0[gpd.source[g2]] for row in m)
            if not mat_is_zero(m):
                self.f2[(g1, g2)] = m
        if validate:
            bad = [c for c in check_gpd_rep(self) if not c.passed]
            if bad:
                raise ValueError("; ".join(
                    f"{c.name}: {c.witness}" for c in bad))

    def f2_at(self, g1: int, g2: int):
        m = self.f2.get((g1, g2))
        if m is None:
            gpd = self.gpd
            return rat_zeros(self.r1[gpd.target[g1]],
                             self.r0[gpd.source[g2]])
        return m

    def f1(self, level: int, g: int):
        return self.f1_0[g] if level == 0 else self.f1_1[g]

    def rank(self, level: int, x: int) -> int:
        return self.r0[x] if level == 0 else self.r1[x]


def trivial_gpd_rep(gpd: FinGroupoid, rank: int = 1) -> GpdRepUH2:
    """Identity complex with F1 = Id and F2 = 0 on every object."""
    n = gpd.n_objects
    eye = rat_identity(rank)
    return GpdRepUH2(gpd, (rank,) * n, (rank,) * n, (eye,) * n,
                     (eye,) * len(gpd.source), (eye,) * len(gpd.source))


def rep_from_f1(gpd: FinGroupoid, f1) -> GpdRepUH2:
    """Complete a pointwise invertible unital F1 to a representation.

    The complex is the identity on each fiber, both levels of F1 agree,
    and F2(g1, g2) := F1(g1) F1(g2) - F1(g1 g2) makes the first
    multiplicativity identity hold by construction; the second one then
    holds automatically (it telescopes).
    """
    f1 = tuple(_rat_mat(m) for m in f1)
    ranks = []
    for x in range(gpd.n_objects):
        ranks.append(len(f1[gpd.identity[x]]))
    f2 = {}
    for g1, g2 in gpd.chains(2):
        prod = mat_mul(f1[g1], f1[g2], RAT_ZERO)
        f2[(g1, g2)] = mat_sub(prod, f1[gpd.compose(g1, g2)])
    boundary = tuple(rat_identity(r) for r in ranks)
    return GpdRepUH2(gpd, ranks, ranks, boundary, f1, f1, f2)


def check_gpd_rep(rep: GpdRepUH2):
    """Exhaustive report on all axioms of a groupoid rep up to homotopy."""
    gpd = rep.gpd
    checks = []

    witness = None
    for x in range(gpd.n_objects):
        e = gpd.identity[x]
        if rep.f1_0[e] != rat_identity(rep.r0[x]) or \
                rep.f1_1[e] != rat_identity(rep.r1[x]):
            witness = f"F1(1_{x}) is not the identity"
            break
    checks.append(CheckResult("f1_unital", witness is None, witness))

    witness = None
    for g in gpd.arrows:
        if not (rat_mat_invertible(rep.f1_0[g])
                and rat_mat_invertible(rep.f1_1[g])):
            witness = f"F1({g}) is singular"
            break
    checks.append(CheckResult("f1_invertible", witness is None, witness))

    witness = None
    for g in gpd.arrows:
        s, t = gpd.source[g], gpd.target[g]
        lhs = mat_mul(rep.boundary[t], rep.f1_1[g], RAT_ZERO)
        rhs = mat_mul(rep.f1_0[g], rep.boundary[s], RAT_ZERO)
        if lhs != rhs:
            witness = f"boundary . F1 != F1 . boundary at arrow {g}"
            break
    checks.append(CheckResult("chain_compatible", witness is None, witness))

    witness = None
    for (g1, g2) in rep.f2:
        if gpd.is_identity(g1) or gpd.is_identity(g2):
            witness = f"F2{(g1, g2)} is nonzero on an identity arrow"
            break
    checks.append(CheckResult("f2_normalized", witness is None, witness))

    witness = None
    for g1, g2 in gpd.chains(2):
        t1, s2 = gpd.target[g1], gpd.source[g2]
        g12 = gpd.compose(g1, g2)
        defect0 = mat_sub(mat_mul(rep.f1_0[g1], rep.f1_0[g2], RAT_ZERO),
                          rep.f1_0[g12])
        defect1 = mat_sub(mat_mul(rep.f1_1[g1], rep.f1_1[g2], RAT_ZERO),
                          rep.f1_1[g12])
        f2m = rep.f2_at(g1, g2)
        if defect0 != mat_mul(rep.boundary[t1], f2m, RAT_ZERO) or \
                defect1 != mat_mul(f2m, rep.boundary[s2], RAT_ZERO):
            witness = f"F1 defect != [boundary, F2] at pair {(g1, g2)}"
            break
    checks.append(CheckResult("f1_defect_is_f2", witness is None, witness))

    witness = None
    for g1, g2, g3 in gpd.chains(3):
        total = mat_sub(mat_mul(rep.f1_1[g1], rep.f2_at(g2, g3), RAT_ZERO),
                        rep.f2_at(gpd.compose(g1, g2), g3))
        total = mat_add(total, rep.f2_at(g1, gpd.compose(g2, g3)))
        total = mat_sub(total,
                        mat_mul(rep.f2_at(g1, g2), rep.f1_0[g3], RAT_ZERO))
        if not mat_is_zero(total):
            witness = f"F2 cocycle identity fails at triple {(g1, g2, g3)}"
            break
    checks.append(CheckResult("f2_closed", witness is None, witness))
    return checks


# ---------------------------------------------------------------------------
# groupoid cochains and the twisted differential
# ---------------------------------------------------------------------------

class GpdCochain:
    """Normalized degree-n cochain with values in a 2-term rep.

    part0 maps composable n-chains to E_0(t(g1)) vectors and part1 maps
    (n+1)-chains to E_{-1}(t(g1)) vectors; missing keys mean zero.  For
    n = 0 the part0 keys are objects.  Keys containing identity arrows
    are rejected (normalization) and zero values are stripped.
    """

    __slots__ = ("rep", "degree", "part0", "part1")

    def __init__(self, rep: GpdRepUH2, degree: int, part0=None, part1=None):
        self.rep = rep
        self.degree = int(degree)
        assert self.degree >= 0
        self.part0 = self._clean(part0 or {}, 0, self.degree)
        self.part1 = self._clean(part1 or {}, 1, self.degree + 1)

    def _clean(self, table, level: int, k: int):
        gpd = self.rep.gpd
        out = {}
        for key, value in table.items():
            value = _vec(value)
            if k == 0:
                x = int(key)
                assert len(value) == self.rep.rank(level, x)
                if not _vis_zero(value):
                    out[x] = value
                continue
            key = tuple(int(g) for g in key)
            assert len(key) == k, f"key {key} is not a {k}-chain"
            for a, b in zip(key, key[1:]):
                assert gpd.source[a] == gpd.target[b], \
                    f"key {key} is not composable"
            if any(gpd.is_identity(g) for g in key):
                if not _vis_zero(value):
                    raise ValueError(
                        f"cochain is not normalized at {key}")
                continue
            assert len(value) == self.rep.rank(level, gpd.target[key[0]])
            if not _vis_zero(value):
                out[key] = value
        return out

    @classmethod
    def zero(cls, rep: GpdRepUH2, degree: int) -> "GpdCochain":
        return cls(rep, degree)

    def _rank_at(self, level: int, key) -> int:
        x = key if isinstance(key, int) else self.rep.gpd.target[key[0]]
        return self.rep.rank(level, x)

    def value0(self, key):
        got = self.part0.get(key)
        return got if got is not None else _vzero(self._rank_at(0, key))

    def value1(self, key):
        got = self.part1.get(key)
        return got if got is not None else _vzero(self._rank_at(1, key))

    def is_zero(self) -> bool:
        return not self.part0 and not self.part1

    def add(self, other: "GpdCochain") -> "GpdCochain":
        assert self.rep is other.rep and self.degree == other.degree
        part0 = dict(self.part0)
        for key, value in other.part0.items():
            part0[key] = _vadd(part0.get(key, _vzero(len(value))), value)
        part1 = dict(self.part1)
        for key, value in other.part1.items():
            part1[key] = _vadd(part1.get(key, _vzero(len(value))), value)
        return GpdCochain(self.rep, self.degree, part0, part1)

    def neg(self) -> "GpdCochain":
        return self.scale(-1)

    def scale(self, c) -> "GpdCochain":
        c = Fraction(c)
        return GpdCochain(
            self.rep, self.degree,
            {k: _vscale(c, v) for k, v in self.part0.items()},
            {k: _vscale(c, v) for k, v in self.part1.items()})

    def __eq__(self, other):
        return (isinstance(other, GpdCochain) and self.rep is other.rep
                and self.degree == other.degree
                and self.part0 == other.part0 and self.part1 == other.part1)

    def __repr__(self):
        return (f"GpdCochain(degree={self.degree}, "
                f"{len(self.part0)}+{len(self.part1)} entries)")


def _chain_value(rep, table, level, key):
    """Table lookup defaulting to zero over the right fiber."""
    if isinstance(key, int):
        got = table.get(key)
        return got if got is not None else _vzero(rep.rank(level, key))
    got = table.get(key)
    if got is not None:
        return got
    return _vzero(rep.rank(level, rep.gpd.target[key[0]]))


def _f1_hat(rep, table, level, k):
    """The F1 part of the differential on a level-k table into E_level."""
    gpd = rep.gpd
    sign = -1 if (k + level) % 2 else 1
    out = {}
    for chain in gpd.chains(k + 1):
        g1 = chain[0]
        if k == 0:
            inner = mat_vec(rep.f1(level, g1),
                            _chain_value(rep, table, level, gpd.source[g1]),
                            RAT_ZERO)
            inner = _vsub(inner,
                          _chain_value(rep, table, level, gpd.target[g1]))
        else:
            inner = mat_vec(rep.f1(level, g1),
                            _chain_value(rep, table, level, chain[1:]),
                            RAT_ZERO)
            for i in range(1, k + 1):
                merged = (chain[:i - 1]
                          + (gpd.compose(chain[i - 1], chain[i]),)
                          + chain[i + 1:])
                term = _chain_value(rep, table, level, merged)
                inner = _vadd(inner, term) if i % 2 == 0 \
                    else _vsub(inner, term)
            last = _chain_value(rep, table, level, chain[:k])
            inner = _vsub(inner, last) if k % 2 == 0 else _vadd(inner, last)
        out[chain] = inner if sign == 1 else _vneg(inner)
    return out


def _f2_hat(rep, table0, k):
    """The F2 part: level-k table into E_0 to a (k+2)-table into E_{-1}."""
    gpd = rep.gpd
    out = {}
    for chain in gpd.chains(k + 2):
        g1, g2 = chain[0], chain[1]
        tail = chain[2:] if k > 0 else gpd.source[g2]
        out[chain] = mat_vec(rep.f2_at(g1, g2),
                             _chain_value(rep, table0, 0, tail), RAT_ZERO)
    return out


def gpd_diff_D(rep: GpdRepUH2, cochain: GpdCochain) -> GpdCochain:
    """Twisted groupoid differential; the output is normalized (checked)."""
    gpd = rep.gpd
    k = cochain.degree
    new0 = _f1_hat(rep, cochain.part0, 0, k)
    for key in gpd.chains(k + 1):
        base = key if isinstance(key, int) else gpd.target[key[0]]
        push = mat_vec(rep.boundary[base],
                       _chain_value(rep, cochain.part1, 1, key), RAT_ZERO)
        new0[key] = _vadd(new0.get(key, _vzero(rep.r0[base])), push)
    new1 = _f1_hat(rep, cochain.part1, 1, k + 1)
    for key, value in _f2_hat(rep, cochain.part0, k).items():
        new1[key] = _vadd(new1.get(key, _vzero(len(value))), value)
    for table in (new0, new1):
        for key, value in table.items():
            if not isinstance(key, int) and \
                    any(gpd.is_identity(g) for g in key) and \
                    not _vis_zero(value):
                raise ValueError(
                    f"differential output fails normalization at {key}")
    return GpdCochain(rep, k + 1,
                      {k_: v for k_, v in new0.items()
                       if isinstance(k_, int)
                       or not any(gpd.is_identity(g) for g in k_)},
                      {k_: v for k_, v in new1.items()
                       if not any(gpd.is_identity(g) for g in k_)})


def check_gpd_cocycle(rep: GpdRepUH2, cocycle: GpdCochain):
    """Both closedness conditions of a degree-2 cochain, with witnesses."""
    assert cocycle.degree == 2
    image = gpd_diff_D(rep, cocycle)
    bad0 = next(iter(sorted(image.part0)), None)
    checks = [CheckResult(
        "cocycle_level0", bad0 is None,
        None if bad0 is None else
        f"F1-hat(C2) + boundary . C3 is nonzero at {bad0}")]
    bad1 = next(iter(sorted(image.part1)), None)
    checks.append(CheckResult(
        "cocycle_level1", bad1 is None,
        None if bad1 is None else
        f"F1-hat(C3) + F2-hat(C2) is nonzero at {bad1}"))
    return checks


def random_gpd_cochain(rng, rep: GpdRepUH2, degree: int,
                       bound: int = 4) -> GpdCochain:
    """Random normalized cochain with small integer entries."""
    gpd = rep.gpd
    part0, part1 = {}, {}
    for level, k, table in ((0, degree, part0), (1, degree + 1, part1)):
        for key in gpd.chains(k):
            if not isinstance(key, int) and \
                    any(gpd.is_identity(g) for g in key):
                continue
            base = key if isinstance(key, int) else gpd.target[key[0]]
            rank = rep.rank(level, base)
            table[key] = tuple(Fraction(rng.randint(-bound, bound))
                               for _ in range(rank))
    return GpdCochain(rep, degree, part0, part1)


# ---------------------------------------------------------------------------
# the extension 2-group(oid)
# ---------------------------------------------------------------------------

class ObjCell(NamedTuple):
    """1-morphism of the extension: base arrow with an E_0(t(g)) vector."""
    g: int
    xi: tuple


class TwoCell(NamedTuple):
    """2-morphism (g, xi, m): runs from (g, xi) to (g, xi + boundary(m))."""
    g: int
    xi: tuple
    m: tuple


class Ext2Group:
    """Semistrict 2-group(oid) twisted by a rep up to homotopy and cocycle.

    Cells are (g, xi) and (g, xi, m); the structure maps below are the
    displayed twisted formulas.  ``_assoc_c3_sign`` is a fault hook for
    tests: set it to -1 to negate the C3 term inside the associator.
    """

    __slots__ = ("gpd", "rep", "cocycle", "_assoc_c3_sign")

    def __init__(self, gpd: FinGroupoid, rep: GpdRepUH2,
                 cocycle: GpdCochain):
        assert rep.gpd is gpd
        assert cocycle.degree == 2
        self.gpd = gpd
        self.rep = rep
        self.cocycle = cocycle
        self._assoc_c3_sign = 1

    # -- cocycle accessors -----------------------------------------------

    def c2(self, g1: int, g2: int):
        return self.cocycle.value0((g1, g2))

    def c3(self, g1: int, g2: int, g3: int):
        return self.cocycle.value1((g1, g2, g3))

    # -- basic cells -------------------------------------------------------

    def obj_identity(self, x: int) -> ObjCell:
        return ObjCell(self.gpd.identity[x], _vzero(self.rep.r0[x]))

    def two_identity(self, cell: ObjCell) -> TwoCell:
        rank = self.rep.r1[self.gpd.target[cell.g]]
        return TwoCell(cell.g, cell.xi, _vzero(rank))

    def source2(self, cell: TwoCell) -> ObjCell:
        return ObjCell(cell.g, cell.xi)

    def target2(self, cell: TwoCell) -> ObjCell:
        push = mat_vec(self.rep.boundary[self.gpd.target[cell.g]],
                       cell.m, RAT_ZERO)
        return ObjCell(cell.g, _vadd(cell.xi, push))

    # -- multiplications ---------------------------------------------------

    def vmul(self, later: TwoCell, earlier: TwoCell) -> TwoCell:
        if later.g != earlier.g or \
                ObjCell(later.g, later.xi) != self.target2(earlier):
            raise ValueError(
                f"vertical composition mismatch: {later} after {earlier}")
        return TwoCell(earlier.g, earlier.xi, _vadd(earlier.m, later.m))

    def vinv(self, cell: TwoCell) -> TwoCell:
        top = self.target2(cell)
        return TwoCell(cell.g, top.xi, _vneg(cell.m))

    def hmul_obj(self, a: ObjCell, b: ObjCell) -> ObjCell:
        g = self.gpd.compose(a.g, b.g)
        xi = _vadd(_vadd(a.xi, mat_vec(self.rep.f1_0[a.g], b.xi, RAT_ZERO)),
                   self.c2(a.g, b.g))
        return ObjCell(g, xi)

    def hmul2(self, a: TwoCell, b: TwoCell) -> TwoCell:
        base = self.hmul_obj(self.source2(a), self.source2(b))
        m = _vadd(a.m, mat_vec(self.rep.f1_1[a.g], b.m, RAT_ZERO))
        return TwoCell(base.g, base.xi, m)

    def inv_obj(self, a: ObjCell) -> ObjCell:
        h = self.gpd.inverse[a.g]
        xi = _vneg(_vadd(mat_vec(self.rep.f1_0[h], a.xi, RAT_ZERO),
                         self.c2(h, a.g)))
        return ObjCell(h, xi)

    def inv2(self, cell: TwoCell) -> TwoCell:
        base = self.inv_obj(self.source2(cell))
        h = self.gpd.inverse[cell.g]
        return TwoCell(base.g, base.xi,
                       _vneg(mat_vec(self.rep.f1_1[h], cell.m, RAT_ZERO)))

    # -- coherence cells ----------------------------------------------------

    def associator(self, a: ObjCell, b: ObjCell, c: ObjCell) -> TwoCell:
        source = self.hmul_obj(self.hmul_obj(a, b), c)
        m = _vsub(mat_vec(self.rep.f2_at(a.g, b.g), c.xi, RAT_ZERO),
                  _vscale(Fraction(self._assoc_c3_sign),
                          self.c3(a.g, b.g, c.g)))
        return TwoCell(source.g, source.xi, m)

    def unit(self, a: ObjCell) -> TwoCell:
        x = self.gpd.target[a.g]
        h = self.gpd.inverse[a.g]
        m = _vadd(_vneg(mat_vec(self.rep.f2_at(a.g, h), a.xi, RAT_ZERO)),
                  self.c3(a.g, h, a.g))
        return TwoCell(self.gpd.identity[x], _vzero(self.rep.r0[x]), m)

    def counit(self, a: ObjCell) -> TwoCell:
        return self.two_identity(self.obj_identity(self.gpd.source[a.g]))

    def __repr__(self):
        return f"Ext2Group({self.gpd!r})"


def build_extension(gpd: FinGroupoid, rep: GpdRepUH2,
                    cocycle: GpdCochain) -> Ext2Group:
    """Validated extension: the rep and cocycle checks must all pass."""
    bad = [c for c in check_gpd_rep(rep) if not c.passed]
    bad += [c for c in check_gpd_cocycle(rep, cocycle) if not c.passed]
    if bad:
        raise ValueError("; ".join(f"{c.name}: {c.witness}" for c in bad))
    return Ext2Group(gpd, rep, cocycle)


def abelian_2gpd(r0, r1, boundary) -> Ext2Group:
    """Strict abelian 2-groupoid of a 2-term complex over finite objects.

    The base is the identities-only groupoid, the action is trivial and
    the cocycle vanishes, so cells compose by plain addition:
    (u, m) . (v, n) = (u + v, m + n) horizontally and u . m = u + dm
    vertically.
    """
    gpd = FinGroupoid.trivial(len(r0))
    eye0 = tuple(rat_identity(r) for r in r0)
    eye1 = tuple(rat_identity(r) for r in r1)
    rep = GpdRepUH2(gpd, r0, r1, boundary, eye0, eye1)
    return build_extension(gpd, rep, GpdCochain.zero(rep, 2))


# ---------------------------------------------------------------------------
# coherence verification
# ---------------------------------------------------------------------------

def _probe_sets(*ranks):
    """Zero plus one basis vector per slot: enough to decide affine laws."""
    zeros = tuple(_vzero(r) for r in ranks)
    yield zeros
    for slot, rank in enumerate(ranks):
        for i in range(rank):
            vecs = list(zeros)
            vecs[slot] = _basis(rank, i)
            yield tuple(vecs)


def _law(name, runner):
    """Run a law over its probe stream; first mismatch becomes the witness."""
    for label, lhs, rhs in runner():
        if lhs != rhs:
            return CheckResult(name, False, f"{label}: {lhs} != {rhs}")
    return CheckResult(name, True)


def _diagram(label, thunk):
    """Evaluate both legs; an undefined vertical composite is a failure."""
    try:
        lhs, rhs = thunk()
    except ValueError as exc:
        return label, f"broken diagram ({exc})", "a composable diagram"
    return label, lhs, rhs


def verify_coherence(ext: Ext2Group):
    """Every 2-group(oid) law, exhaustive over arrows and affine probes.

    All identities are affine in the fiber vectors, so each law is probed
    at the zero assignment and at each basis vector of each slot.
    Vertical composability failures surface as witnesses too.
    """
    gpd, rep = ext.gpd, ext.rep
    checks = []

    def guarded(name, runner):
        try:
            checks.append(_law(name, runner))
        except ValueError as exc:
            checks.append(CheckResult(name, False, str(exc)))

    def hmul_bounds():
        for g1, g2 in gpd.chains(2):
            t1, s1 = gpd.target[g1], gpd.source[g1]
            s2 = gpd.source[g2]
            for xi, m, eta, n in _probe_sets(rep.r0[t1], rep.r1[t1],
                                             rep.r0[s1], rep.r1[s1]):
                a, b = TwoCell(g1, xi, m), TwoCell(g2, eta, n)
                ab = ext.hmul2(a, b)
                yield (f"source at {(g1, g2)}", ext.source2(ab),
                       ext.hmul_obj(ext.source2(a), ext.source2(b)))
                yield (f"target at {(g1, g2)}", ext.target2(ab),
                       ext.hmul_obj(ext.target2(a), ext.target2(b)))
    guarded("hmul_source_target", hmul_bounds)

    def interchange():
        for g1, g2 in gpd.chains(2):
            t1, s1 = gpd.target[g1], gpd.source[g1]
            for xi, m, p, eta, n, q in _probe_sets(
                    rep.r0[t1], rep.r1[t1], rep.r1[t1],
                    rep.r0[s1], rep.r1[s1], rep.r1[s1]):
                a1 = TwoCell(g1, xi, m)
                b1 = TwoCell(g1, ext.target2(a1).xi, p)
                a2 = TwoCell(g2, eta, n)
                b2 = TwoCell(g2, ext.target2(a2).xi, q)
                lhs = ext.hmul2(ext.vmul(b1, a1), ext.vmul(b2, a2))
                rhs = ext.vmul(ext.hmul2(b1, b2), ext.hmul2(a1, a2))
                yield f"pair {(g1, g2)}", lhs, rhs
    guarded("interchange", interchange)

    def assoc_bounds():
        for g1, g2, g3 in gpd.chains(3):
            for xi, eta, gamma in _probe_sets(
                    rep.r0[gpd.target[g1]], rep.r0[gpd.target[g2]],
                    rep.r0[gpd.target[g3]]):
                a = ObjCell(g1, xi)
                b = ObjCell(g2, eta)
                c = ObjCell(g3, gamma)
                cell = ext.associator(a, b, c)
                yield (f"source at {(g1, g2, g3)}", ext.source2(cell),
                       ext.hmul_obj(ext.hmul_obj(a, b), c))
                yield (f"target at {(g1, g2, g3)}", ext.target2(cell),
                       ext.hmul_obj(a, ext.hmul_obj(b, c)))
    guarded("associator_bounds", assoc_bounds)

    def assoc_naturality():
        for g1, g2, g3 in gpd.chains(3):
            ranks = (rep.r0[gpd.target[g1]], rep.r1[gpd.target[g1]],
                     rep.r0[gpd.target[g2]], rep.r1[gpd.target[g2]],
                     rep.r0[gpd.target[g3]], rep.r1[gpd.target[g3]])
            for v1, m1, v2, m2, v3, m3 in _probe_sets(*ranks):
                p1 = TwoCell(g1, v1, m1)
                p2 = TwoCell(g2, v2, m2)
                p3 = TwoCell(g3, v3, m3)
                tops = [ext.target2(p) for p in (p1, p2, p3)]
                bottoms = [ext.source2(p) for p in (p1, p2, p3)]
                yield _diagram(
                    f"triple {(g1, g2, g3)}",
                    lambda: (ext.vmul(ext.associator(*tops),
                                      ext.hmul2(ext.hmul2(p1, p2), p3)),
                             ext.vmul(ext.hmul2(p1, ext.hmul2(p2, p3)),
                                      ext.associator(*bottoms))))
    guarded("associator_naturality", assoc_naturality)

    def pentagon():
        for g1, g2, g3, g4 in gpd.chains(4):
            ranks = (rep.r0[gpd.target[g1]], rep.r0[gpd.target[g2]],
                     rep.r0[gpd.target[g3]], rep.r0[gpd.target[g4]])
            for xi, eta, gamma, theta in _probe_sets(*ranks):
                a = ObjCell(g1, xi)
                b = ObjCell(g2, eta)
                c = ObjCell(g3, gamma)
                d = ObjCell(g4, theta)
                yield _diagram(
                    f"quadruple {(g1, g2, g3, g4)}",
                    lambda: (
                        ext.vmul(ext.associator(a, b, ext.hmul_obj(c, d)),
                                 ext.associator(ext.hmul_obj(a, b), c, d)),
                        ext.vmul(
                            ext.hmul2(ext.two_identity(a),
                                      ext.associator(b, c, d)),
                            ext.vmul(ext.associator(a, ext.hmul_obj(b, c),
                                                    d),
                                     ext.hmul2(ext.associator(a, b, c),
                                               ext.two_identity(d))))))
    guarded("pentagon", pentagon)

    def left_right_units():
        for g in gpd.arrows:
            t, s = gpd.target[g], gpd.source[g]
            for (xi, m) in _probe_sets(rep.r0[t], rep.r1[t]):
                a = ObjCell(g, xi)
                cell = TwoCell(g, xi, m)
                yield (f"left unit at {g}", a,
                       ext.hmul_obj(ext.obj_identity(t), a))
                yield (f"right unit at {g}", a,
                       ext.hmul_obj(a, ext.obj_identity(s)))
                yield (f"left unit 2-cell at {g}", cell,
                       ext.hmul2(ext.two_identity(ext.obj_identity(t)),
                                 cell))
                yield (f"right unit 2-cell at {g}", cell,
                       ext.hmul2(cell,
                                 ext.two_identity(ext.obj_identity(s))))
    guarded("left_right_units", left_right_units)

    def triangle():
        for g1, g2 in gpd.chains(2):
            x = gpd.source[g1]
            for xi, eta in _probe_sets(rep.r0[gpd.target[g1]],
                                       rep.r0[gpd.target[g2]]):
                a = ObjCell(g1, xi)
                b = ObjCell(g2, eta)
                middle = ext.obj_identity(x)
                cell = ext.associator(a, middle, b)
                want = ext.two_identity(
                    ext.hmul_obj(ext.hmul_obj(a, middle), b))
                yield f"pair {(g1, g2)}", cell, want
    guarded("triangle", triangle)

    def unit_bounds():
        for g in gpd.arrows:
            t = gpd.target[g]
            for (xi,) in _probe_sets(rep.r0[t]):
                a = ObjCell(g, xi)
                i_cell = ext.unit(a)
                yield (f"unit source at {g}", ext.source2(i_cell),
                       ext.obj_identity(t))
                yield (f"unit target at {g}", ext.target2(i_cell),
                       ext.hmul_obj(a, ext.inv_obj(a)))
                yield (f"counit strictness at {g}",
                       ext.hmul_obj(ext.inv_obj(a), a),
                       ext.obj_identity(gpd.source[g]))
    guarded("unit_bounds", unit_bounds)

    def unit_naturality():
        for g in gpd.arrows:
            t = gpd.target[g]
            for xi, m in _probe_sets(rep.r0[t], rep.r1[t]):
                cell = TwoCell(g, xi, m)
                yield _diagram(
                    f"arrow {g}",
                    lambda: (ext.vmul(ext.hmul2(cell, ext.inv2(cell)),
                                      ext.unit(ObjCell(g, xi))),
                             ext.unit(ext.target2(cell))))
    guarded("unit_naturality", unit_naturality)

    def zigzag_first():
        for g in gpd.arrows:
            for (xi,) in _probe_sets(rep.r0[gpd.target[g]]):
                a = ObjCell(g, xi)
                inv_a = ext.inv_obj(a)
                yield _diagram(
                    f"arrow {g}",
                    lambda: (ext.vmul(
                        ext.associator(a, inv_a, a),
                        ext.hmul2(ext.unit(a), ext.two_identity(a))),
                        ext.two_identity(a)))
    guarded("zigzag_first", zigzag_first)

    def zigzag_second():
        for g in gpd.arrows:
            for (xi,) in _probe_sets(rep.r0[gpd.target[g]]):
                a = ObjCell(g, xi)
                inv_a = ext.inv_obj(a)
                yield _diagram(
                    f"arrow {g}",
                    lambda: (ext.vmul(
                        ext.vinv(ext.associator(inv_a, a, inv_a)),
                        ext.hmul2(ext.two_identity(inv_a), ext.unit(a))),
                        ext.two_identity(inv_a)))
    guarded("zigzag_second", zigzag_second)

    def exactness():
        for x in range(gpd.n_objects):
            e = gpd.identity[x]
            for xi, m, eta, n in _probe_sets(rep.r0[x], rep.r1[x],
                                             rep.r0[x], rep.r1[x]):
                a = TwoCell(e, xi, m)
                b = TwoCell(e, eta, n)
                yield (f"kernel addition at object {x}", ext.hmul2(a, b),
                       TwoCell(e, _vadd(xi, eta), _vadd(m, n)))
                yield (f"kernel inverse at object {x}", ext.inv2(a),
                       TwoCell(e, _vneg(xi), _vneg(m)))
        for g1, g2 in gpd.chains(2):
            t1, s1 = gpd.target[g1], gpd.source[g1]
            for xi, m, eta, n in _probe_sets(rep.r0[t1], rep.r1[t1],
                                             rep.r0[s1], rep.r1[s1]):
                ab = ext.hmul2(TwoCell(g1, xi, m), TwoCell(g2, eta, n))
                yield (f"projection at {(g1, g2)}", ab.g,
                       gpd.compose(g1, g2))
    guarded("exactness", exactness)

    return checks


# ---------------------------------------------------------------------------
# nerve levels (truncated at 3; higher levels are determined by these)
# ---------------------------------------------------------------------------

class Simplex2(NamedTuple):
    """2-simplex: edges g1 (01), g2 (12), corner vectors and a filler m."""
    g1: int
    g2: int
    xi01: tuple
    xi12: tuple
    m: tuple


class Simplex3(NamedTuple):
    """3-simplex: three edges, their corner vectors, three free fillers.

    The fourth filler of the tetrahedron is determined by the others:
    m023 = m013 - m012 + F1(g1) m123 + F2(g1, g2)(xi23) - C3(g1, g2, g3).
    """
    g1: int
    g2: int
    g3: int
    xi01: tuple
    xi12: tuple
    xi23: tuple
    m012: tuple
    m123: tuple
    m013: tuple


class Nerve:
    """Face and degeneracy maps of the extension's simplicial levels.

    Level 0 holds the base objects, level 1 the cells (g, xi), level 2
    triangles with one filler and level 3 tetrahedra with three free
    fillers.  The tower continues coskeletally above level 3; only the
    levels here are materialized.
    """

    __slots__ = ("ext", "max_level")

    def __init__(self, ext: Ext2Group, max_level: int = 3):
        assert 1 <= max_level <= 3
        self.ext = ext
        self.max_level = max_level

    # -- building blocks ---------------------------------------------------

    def _edge01(self, s2: Simplex2) -> ObjCell:
        return ObjCell(s2.g1, s2.xi01)

    def _composite_edge(self, s2: Simplex2) -> ObjCell:
        ext = self.ext
        base = ext.hmul_obj(ObjCell(s2.g1, s2.xi01), ObjCell(s2.g2, s2.xi12))
        push = mat_vec(ext.rep.boundary[ext.gpd.target[s2.g1]], s2.m,
                       RAT_ZERO)
        return ObjCell(base.g, _vadd(base.xi, push))

    def _m023(self, s3: Simplex3):
        ext = self.ext
        correction = _vsub(
            mat_vec(ext.rep.f2_at(s3.g1, s3.g2), s3.xi23, RAT_ZERO),
            ext.c3(s3.g1, s3.g2, s3.g3))
        total = _vadd(_vsub(s3.m013, s3.m012),
                      mat_vec(ext.rep.f1_1[s3.g1], s3.m123, RAT_ZERO))
        return _vadd(total, correction)

    # -- faces ---------------------------------------------------------------

    def face(self, level: int, i: int, el):
        ext = self.ext
        gpd = ext.gpd
        if level == 1:
            assert i in (0, 1)
            cell: ObjCell = el
            return gpd.source[cell.g] if i == 0 else gpd.target[cell.g]
        if level == 2:
            s2: Simplex2 = el
            if i == 0:
                return ObjCell(s2.g2, s2.xi12)
            if i == 1:
                return self._composite_edge(s2)
            if i == 2:
                return self._edge01(s2)
            raise ValueError(f"no face {i} at level 2")
        if level == 3:
            s3: Simplex3 = el
            if i == 0:
                return Simplex2(s3.g2, s3.g3, s3.xi12, s3.xi23, s3.m123)
            if i == 3:
                return Simplex2(s3.g1, s3.g2, s3.xi01, s3.xi12, s3.m012)
            d3 = self.face(3, 3, s3)
            d0 = self.face(3, 0, s3)
            if i == 1:
                edge02 = self._composite_edge(d3)
                return Simplex2(edge02.g, s3.g3, edge02.xi, s3.xi23,
                                self._m023(s3))
            if i == 2:
                edge13 = self._composite_edge(d0)
                return Simplex2(s3.g1, edge13.g, s3.xi01, edge13.xi,
                                s3.m013)
            raise ValueError(f"no face {i} at level 3")
        raise ValueError(f"no faces at level {level}")

    # -- degeneracies ---------------------------------------------------------

    def degeneracy(self, level: int, i: int, el):
        ext = self.ext
        gpd = ext.gpd
        if level == 0:
            assert i == 0
            return ext.obj_identity(el)
        if level == 1:
            cell: ObjCell = el
            rank1 = ext.rep.r1[gpd.target[cell.g]]
            if i == 0:
                ident = ext.obj_identity(gpd.target[cell.g])
                return Simplex2(ident.g, cell.g, ident.xi, cell.xi,
                                _vzero(rank1))
            if i == 1:
                ident = ext.obj_identity(gpd.source[cell.g])
                return Simplex2(cell.g, ident.g, cell.xi, ident.xi,
                                _vzero(rank1))
            raise ValueError(f"no degeneracy {i} at level 1")
        if level == 2:
            s2: Simplex2 = el
            zero_top = _vzero(ext.rep.r1[gpd.target[s2.g1]])
            zero_mid = _vzero(ext.rep.r1[gpd.target[s2.g2]])
            if i == 0:
                ident = ext.obj_identity(gpd.target[s2.g1])
                return Simplex3(ident.g, s2.g1, s2.g2, ident.xi, s2.xi01,
                                s2.xi12, zero_top, s2.m, zero_top)
            if i == 1:
                ident = ext.obj_identity(gpd.source[s2.g1])
                return Simplex3(s2.g1, ident.g, s2.g2, s2.xi01, ident.xi,
                                s2.xi12, zero_top, zero_mid, s2.m)
            if i == 2:
                ident = ext.obj_identity(gpd.source[s2.g2])
                return Simplex3(s2.g1, s2.g2, ident.g, s2.xi01, s2.xi12,
                                ident.xi, s2.m, zero_mid, s2.m)
            raise ValueError(f"no degeneracy {i} at level 2")
        raise ValueError(f"no degeneracies out of level {level}")

    # -- probe elements -------------------------------------------------------

    def probe_elements(self, level: int):
        """Zero/basis fiber assignments over every base tuple of a level."""
        ext = self.ext
        gpd = ext.gpd
        rep = ext.rep
        if level == 0:
            yield from range(gpd.n_objects)
        elif level == 1:
            for g in gpd.arrows:
                for (xi,) in _probe_sets(rep.r0[gpd.target[g]]):
                    yield ObjCell(g, xi)
        elif level == 2:
            for g1, g2 in gpd.chains(2):
                t1, t2 = gpd.target[g1], gpd.target[g2]
                for xi01, xi12, m in _probe_sets(rep.r0[t1], rep.r0[t2],
                                                 rep.r1[t1]):
                    yield Simplex2(g1, g2, xi01, xi12, m)
        elif level == 3:
            for g1, g2, g3 in gpd.chains(3):
                t1, t2, t3 = (gpd.target[g1], gpd.target[g2],
                              gpd.target[g3])
                ranks = (rep.r0[t1], rep.r0[t2], rep.r0[t3],
                         rep.r1[t1], rep.r1[t2], rep.r1[t1])
                for xi01, xi12, xi23, m012, m123, m013 in _probe_sets(
                        *ranks):
                    yield Simplex3(g1, g2, g3, xi01, xi12, xi23,
                                   m012, m123, m013)
        else:
            raise ValueError(f"level {level} is not materialized")


def nerve_levels(ext: Ext2Group, max_level: int = 3) -> Nerve:
    return Nerve(ext, max_level)


def check_nerve(nerve: Nerve):
    """All simplicial identities of the materialized levels, exhaustively."""
    checks = []

    def add(name, runner):
        for label, lhs, rhs in runner():
            if lhs != rhs:
                checks.append(CheckResult(name, False,
                                          f"{label}: {lhs} != {rhs}"))
                return
        checks.append(CheckResult(name, True))

    def faces_level(level):
        def run():
            for el in nerve.probe_elements(level):
                for j in range(1, level + 1):
                    for i in range(j):
                        yield (f"d{i} d{j} at {el}",
                               nerve.face(level - 1, i,
                                          nerve.face(level, j, el)),
                               nerve.face(level - 1, j - 1,
                                          nerve.face(level, i, el)))
        return run

    def face_degeneracy_level(level):
        def run():
            for el in nerve.probe_elements(level):
                for j in range(level + 1):
                    up = nerve.degeneracy(level, j, el)
                    for i in range(level + 2):
                        got = nerve.face(level + 1, i, up)
                        if i == j or i == j + 1:
                            want = el
                        elif i < j:
                            want = nerve.degeneracy(
                                level - 1, j - 1, nerve.face(level, i, el))
                        else:
                            want = nerve.degeneracy(
                                level - 1, j, nerve.face(level, i - 1, el))
                        yield f"d{i} s{j} at {el}", got, want
        return run

    def degeneracy_degeneracy():
        for el in nerve.probe_elements(1):
            for j in range(2):
                for i in range(j + 1):
                    yield (f"s{i} s{j} at {el}",
                           nerve.degeneracy(2, i, nerve.degeneracy(1, j, el)),
                           nerve.degeneracy(2, j + 1,
                                            nerve.degeneracy(1, i, el)))

    if nerve.max_level >= 2:
        add("faces_level2", faces_level(2))
        add("face_degeneracy_level1", face_degeneracy_level(1))
    if nerve.max_level >= 3:
        add("faces_level3", faces_level(3))
        add("face_degeneracy_level2", face_degeneracy_level(2))
        add("degeneracy_degeneracy_level1", degeneracy_degeneracy)
    return checks
