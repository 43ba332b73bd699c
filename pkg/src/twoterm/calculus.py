"""Polynomial Cartan calculus on R^n.

Vector fields have polynomial components in coordinates q1..qn; k-forms are
stored sparsely on strictly increasing index tuples.  The evaluation
convention is the determinant one,

    (dq^{i_1} ^ ... ^ dq^{i_k})(v_1, ..., v_k) = det[ v_a^{i_b} ],

which fixes every sign below.  The exterior differential, interior products
and Lie derivatives are all exact; Cartan's identity L_X = i_X d + d i_X is
a theorem here and is pinned by tests rather than used as the definition.
"""

from __future__ import annotations

from itertools import combinations

from .symbolic import Poly, perm_sign, random_poly


class VectorField:
    """Polynomial vector field X = sum_i X^i d/dq_i on R^n."""

    __slots__ = ("nvars", "comps")

    def __init__(self, comps):
        comps = tuple(c if isinstance(c, Poly) else Poly.const(len(comps), c)
                      for c in comps)
        nvars = len(comps)
        assert all(c.nvars == nvars for c in comps)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "comps", comps)

    def __setattr__(self, name, value):
        raise AttributeError("VectorField is immutable")

    @classmethod
    def zero(cls, n: int) -> "VectorField":
        return cls(tuple(Poly.zero(n) for _ in range(n)))

    @classmethod
    def coordinate(cls, i: int, n: int) -> "VectorField":
        """The coordinate field d/dq_{i+1}."""
        return cls(tuple(Poly.const(n, 1 if j == i else 0) for j in range(n)))

    def apply(self, f: Poly) -> Poly:
        """Derivation action X(f) = sum_i X^i df/dq_i."""
        assert f.nvars == self.nvars
        out = Poly.zero(self.nvars)
        for i, xi in enumerate(self.comps):
            out = out + xi * f.partial(i)
        return out

    def __add__(self, other):
        assert isinstance(other, VectorField) and other.nvars == self.nvars
        return VectorField(tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other):
        assert isinstance(other, VectorField) and other.nvars == self.nvars
        return VectorField(tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self):
        return VectorField(tuple(-a for a in self.comps))

    def scale(self, f) -> "VectorField":
        """Multiply by a polynomial or rational function coefficient."""
        if not isinstance(f, Poly):
            f = Poly.const(self.nvars, f)
        return VectorField(tuple(f * a for a in self.comps))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, other):
        return (isinstance(other, VectorField) and self.nvars == other.nvars
                and self.comps == other.comps)

    def __hash__(self):
        return hash(self.comps)

    def __repr__(self):
        bits = [f"({c!r})*d{i + 1}" for i, c in enumerate(self.comps)
                if not c.is_zero()]
        return " + ".join(bits) if bits else "0"


def vf_bracket(x: VectorField, y: VectorField) -> VectorField:
    """Lie bracket [X, Y]^i = X(Y^i) - Y(X^i)."""
    assert x.nvars == y.nvars
    return VectorField(tuple(x.apply(y.comps[i]) - y.apply(x.comps[i])
                             for i in range(x.nvars)))


class Form:
    """Polynomial differential k-form, sparse on increasing index tuples."""

    __slots__ = ("nvars", "degree", "comps")

    def __init__(self, nvars: int, degree: int, comps=None):
        assert 0 <= degree
        clean = {}
        if comps:
            for idx, c in comps.items():
                idx = tuple(int(i) for i in idx)
                assert len(idx) == degree
                assert all(0 <= i < nvars for i in idx)
                assert list(idx) == sorted(set(idx)), f"indices not increasing: {idx}"
                if not isinstance(c, Poly):
                    c = Poly.const(nvars, c)
                assert c.nvars == nvars
                if c.is_zero():
                    continue
                clean[idx] = clean.get(idx, Poly.zero(nvars)) + c
                if clean[idx].is_zero():
                    del clean[idx]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "comps", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Form is immutable")

    @classmethod
    def zero(cls, nvars: int, degree: int) -> "Form":
        return cls(nvars, degree, {})

    @classmethod
    def function(cls, f: Poly) -> "Form":
        return cls(f.nvars, 0, {(): f})

    @classmethod
    def dq(cls, i: int, nvars: int) -> "Form":
        return cls(nvars, 1, {(i,): Poly.const(nvars, 1)})

    def coefficient(self, idx) -> Poly:
        """Component on an arbitrary index tuple, with antisymmetry signs."""
        idx = tuple(idx)
        assert len(idx) == self.degree
        if len(set(idx)) != len(idx):
            return Poly.zero(self.nvars)
        order = tuple(sorted(range(len(idx)), key=lambda a: idx[a]))
        key = tuple(sorted(idx))
        base = self.comps.get(key)
        if base is None:
            return Poly.zero(self.nvars)
        return base if perm_sign(order) == 1 else -base

    def __add__(self, other):
        assert isinstance(other, Form)
        assert (self.nvars, self.degree) == (other.nvars, other.degree)
        comps = dict(self.comps)
        for idx, c in other.comps.items():
            comps[idx] = comps.get(idx, Poly.zero(self.nvars)) + c
        return Form(self.nvars, self.degree, comps)

    def __neg__(self):
        return Form(self.nvars, self.degree,
                    {idx: -c for idx, c in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f) -> "Form":
        if not isinstance(f, Poly):
            f = Poly.const(self.nvars, f)
        return Form(self.nvars, self.degree,
                    {idx: f * c for idx, c in self.comps.items()})

    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other):
        return (isinstance(other, Form) and self.nvars == other.nvars
                and self.degree == other.degree and self.comps == other.comps)

    def __hash__(self):
        return hash((self.degree, frozenset(self.comps.items())))

    def __repr__(self):
        if not self.comps:
            return "0"
        bits = []
        for idx in sorted(self.comps):
            c = self.comps[idx]
            label = "^".join(f"dq{i + 1}" for i in idx) or "1"
            bits.append(f"({c!r}) {label}".strip())
        return " + ".join(bits)


def wedge(a: Form, b: Form) -> Form:
    """Exterior product; signs from merging increasing index blocks."""
    assert a.nvars == b.nvars
    n = a.nvars
    comps = {}
    for ia, ca in a.comps.items():
        for ib, cb in b.comps.items():
            if set(ia) & set(ib):
                continue
            merged = ia + ib
            order = tuple(sorted(range(len(merged)), key=lambda t: merged[t]))
            key = tuple(sorted(merged))
            sign = perm_sign(order)
            term = ca * cb if sign == 1 else -(ca * cb)
            comps[key] = comps.get(key, Poly.zero(n)) + term
    return Form(n, a.degree + b.degree, comps)


def de_rham_d(w: Form) -> Form:
    """Exterior differential."""
    n = w.nvars
    comps = {}
    for idx, c in w.comps.items():
        for i in range(n):
            dc = c.partial(i)
            if dc.is_zero() or i in idx:
                continue
            merged = (i,) + idx
            order = tuple(sorted(range(len(merged)), key=lambda t: merged[t]))
            key = tuple(sorted(merged))
            term = dc if perm_sign(order) == 1 else -dc
            comps[key] = comps.get(key, Poly.zero(n)) + term
    return Form(n, w.degree + 1, comps)


def interior(x: VectorField, w: Form) -> Form:
    """Interior product, first-slot convention: (i_X w)(...) = w(X, ...)."""
    assert x.nvars == w.nvars
    if w.degree == 0:
        raise ValueError("cannot contract a 0-form")
    n = w.nvars
    comps = {}
    for idx, c in w.comps.items():
        for pos, i in enumerate(idx):
            rest = idx[:pos] + idx[pos + 1:]
            term = c * x.comps[i]
            if pos % 2:
                term = -term
            if term.is_zero():
                continue
            comps[rest] = comps.get(rest, Poly.zero(n)) + term
    return Form(n, w.degree - 1, comps)


def interior_multi(fields, w: Form) -> Form:
    """Iterated contraction i_{X_1 ^ ... ^ X_p} w = i_{X_p} ... i_{X_1} w.

    Contracting X_1 first puts it in the first argument slot, so the result
    is w(X_1, ..., X_p, . ).
    """
    out = w
    for x in fields:
        out = interior(x, out)
    return out


def lie_derivative(x: VectorField, w: Form) -> Form:
    """Lie derivative via Cartan's formula L_X = i_X d + d i_X."""
    if w.degree == 0:
        f = w.comps.get((), Poly.zero(w.nvars))
        return Form.function(x.apply(f))
    return interior(x, de_rham_d(w)) + de_rham_d(interior(x, w))


def eval_form(w: Form, fields) -> Poly:
    """Evaluate a k-form on k vector fields by the determinant convention."""
    fields = list(fields)
    assert len(fields) == w.degree
    n = w.nvars
    total = Poly.zero(n)
    for idx, c in w.comps.items():
        # det of the k x k matrix [fields[a].comps[idx[b]]]
        k = len(idx)
        det = Poly.zero(n)
        for perm_cols in _permutations_cached(k):
            prod = Poly.const(n, perm_sign(perm_cols))
            for a in range(k):
                prod = prod * fields[a].comps[idx[perm_cols[a]]]
            det = det + prod
        total = total + c * det
    return total


_PERM_CACHE: dict = {}


def _permutations_cached(k: int):
    from itertools import permutations
    if k not in _PERM_CACHE:
        _PERM_CACHE[k] = tuple(permutations(range(k)))
    return _PERM_CACHE[k]


def koszul_d(w: Form, anchor=None) -> Form:
    """Differential by the simplex formula, for cross-checking de_rham_d.

    (d w)(X_0, ..., X_k) = sum_{i<j} (-1)^{i+j} w([X_i, X_j], ..no i,j..)
                         + sum_i (-1)^i rho(X_i)( w(..no i..) )

    evaluated on coordinate fields to recover components; ``anchor`` maps a
    VectorField to the field that differentiates functions (identity for the
    tangent algebroid, which is all this package needs).
    """
    if anchor is None:
        anchor = lambda v: v
    n = w.nvars
    k = w.degree
    comps = {}
    basis = [VectorField.coordinate(i, n) for i in range(n)]
    for idx in combinations(range(n), k + 1):
        fields = [basis[i] for i in idx]
        val = Poly.zero(n)
        for i in range(k + 1):
            rest = fields[:i] + fields[i + 1:]
            term = anchor(fields[i]).apply(eval_form(w, rest))
            val = val + (term if i % 2 == 0 else -term)
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                br = vf_bracket(fields[i], fields[j])
                rest = [br] + [fields[a] for a in range(k + 1)
                               if a != i and a != j]
                term = eval_form(w, rest)
                val = val + (term if (i + j) % 2 == 0 else -term)
        if not val.is_zero():
            comps[idx] = val
    return Form(n, k + 1, comps)


def random_form(rng, nvars: int, degree: int, max_poly_degree: int = 2) -> Form:
    comps = {}
    for idx in combinations(range(nvars), degree):
        p = random_poly(rng, nvars, max_poly_degree, nterms=2)
        if not p.is_zero():
            comps[idx] = p
    return Form(nvars, degree, comps)


def random_vf(rng, nvars: int, max_poly_degree: int = 2) -> VectorField:
    return VectorField(tuple(random_poly(rng, nvars, max_poly_degree, nterms=2)
                             for _ in range(nvars)))
