"""Exact arithmetic primitives: rationals, sparse polynomials, signs.

Rational numbers are stdlib ``fractions.Fraction`` throughout; this module
only adds the "p/q" string round-trip used by the JSON layer.  Polynomials
are stored sparsely as ``{exponent tuple: Fraction}`` with zero coefficients
stripped, so equality of canonical forms is dict equality.

Sign bookkeeping for graded antisymmetry lives here too: permutation parity,
Koszul signs relative to a tuple of degrees, and (p, q)-unshuffle
enumeration.  Permutations are written in one-line image notation,
``perm[i] = j`` meaning position ``i`` of the reordered tuple holds original
entry ``j`` (0-based).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

Rat = Fraction


def rat(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to Fraction.

    Strings must be an optionally signed integer or integer/integer pair;
    anything else raises ValueError.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"cannot read rational from {value!r}")


def rat_str(x: Fraction) -> str:
    """Format a Fraction as "p" or "p/q" with positive denominator."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# sparse polynomials over Q
# ---------------------------------------------------------------------------

class Poly:
    """Sparse multivariate polynomial over Q in a fixed number of variables.

    Terms map exponent tuples (length ``nvars``) to nonzero Fractions.
    Instances are treated as immutable; all operations return new objects.
    Variables print as q1, q2, ... which matches the coordinate functions
    used by the calculus layer.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        assert nvars >= 0
        clean = {}
        if terms:
            for exps, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                exps = tuple(int(e) for e in exps)
                assert len(exps) == nvars and all(e >= 0 for e in exps)
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if clean[exps] == 0:
                    del clean[exps]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = rat(c)
        if c == 0:
            return cls.zero(nvars)
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Poly":
        assert 0 <= i < nvars
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, exps, coeff) -> "Poly":
        exps = tuple(int(e) for e in exps)
        return cls(len(exps), {exps: rat(coeff)})

    # -- ring structure

    def _coerce(self, other):
        if isinstance(other, Poly):
            assert other.nvars == self.nvars, "mixed variable counts"
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return Poly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Poly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        assert isinstance(k, int) and k >= 0
        out = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- queries

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def const_value(self) -> Fraction:
        assert self.is_const()
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        """Total degree; zero polynomial reports -1."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    # -- calculus and evaluation

    def partial(self, i: int) -> "Poly":
        """Partial derivative with respect to variable i."""
        assert 0 <= i < self.nvars
        terms = {}
        for exps, c in self.terms.items():
            if exps[i] == 0:
                continue
            e = list(exps)
            coeff = c * e[i]
            e[i] -= 1
            terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) + coeff
        return Poly(self.nvars, terms)

    def subs(self, point) -> Fraction:
        """Evaluate at a rational point (sequence of length nvars)."""
        point = [rat(p) for p in point]
        assert len(point) == self.nvars
        total = Fraction(0)
        for exps, c in self.terms.items():
            v = c
            for p, e in zip(point, exps):
                v *= p ** e
            total += v
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            factors = []
            if c != 1 or all(e == 0 for e in exps):
                factors.append(rat_str(c) if c > 0 or c.denominator != 1 else str(c))
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"q{i + 1}")
                elif e > 1:
                    factors.append(f"q{i + 1}^{e}")
            bits.append("*".join(factors) if factors else rat_str(c))
        return " + ".join(bits).replace("+ -", "- ")


def random_poly(rng, nvars: int, max_degree: int, nterms: int = 3,
                coeff_bound: int = 4) -> Poly:
    """Random sparse polynomial with small integer coefficients.

    Draws from the given random.Random so callers control determinism.
    May return fewer than nterms distinct monomials (duplicates merge).
    """
    terms = {}
    for _ in range(nterms):
        remaining = max_degree
        exps = [0] * nvars
        for i in range(nvars):
            e = rng.randint(0, remaining)
            exps[i] = e
            remaining -= e
        c = rng.randint(-coeff_bound, coeff_bound)
        if c == 0:
            continue
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + c
    return Poly(nvars, terms)


# ---------------------------------------------------------------------------
# permutations, Koszul signs, unshuffles
# ---------------------------------------------------------------------------

def perm_sign(perm) -> int:
    """Parity of a permutation in one-line image notation (0-based)."""
    perm = tuple(perm)
    n = len(perm)
    assert sorted(perm) == list(range(n)), f"not a permutation: {perm}"
    inversions = sum(1 for p, q in combinations(range(n), 2) if perm[p] > perm[q])
    return -1 if inversions % 2 else 1


def koszul_sign(perm, degrees) -> int:
    """Koszul sign of reordering graded elements by ``perm``.

    ``perm`` is in image notation: slot p of the permuted tuple holds the
    original element ``perm[p]``.  The sign is defined by

        x_0 ^ ... ^ x_{k-1}  =  sign * x_{perm[0]} ^ ... ^ x_{perm[k-1]}

    in the free graded-commutative algebra, i.e. a factor (-1)^{|a||b|} for
    every inverted pair.  Degrees may be negative; only parity matters.
    """
    perm = tuple(perm)
    degrees = tuple(int(d) for d in degrees)
    assert len(perm) == len(degrees)
    assert sorted(perm) == list(range(len(perm))), f"not a permutation: {perm}"
    sign = 1
    for p, q in combinations(range(len(perm)), 2):
        if perm[p] > perm[q] and degrees[perm[p]] % 2 and degrees[perm[q]] % 2:
            sign = -sign
    return sign


def unshuffles(p: int, q: int):
    """All (p, q)-unshuffles of {0, ..., p+q-1} in image notation.

    A (p, q)-unshuffle is a permutation increasing on its first p slots and
    on its last q slots.  Yields C(p+q, p) tuples, lexicographically by the
    chosen first block.
    """
    n = p + q
    for first in combinations(range(n), p):
        rest = tuple(i for i in range(n) if i not in first)
        yield first + rest


# ---------------------------------------------------------------------------
# small matrix helpers (entries: anything supporting ring ops)
# ---------------------------------------------------------------------------

def mat_shape(a):
    return (len(a), len(a[0]) if a else 0)


def mat_mul(a, b, zero):
    rows, inner = mat_shape(a)
    inner2, cols = mat_shape(b)
    assert inner == inner2, f"shape mismatch {mat_shape(a)} x {mat_shape(b)}"
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = zero
            for k in range(inner):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a, v, zero):
    rows, cols = mat_shape(a)
    assert cols == len(v)
    out = []
    for i in range(rows):
        acc = zero
        for k in range(cols):
            acc = acc + a[i][k] * v[k]
        out.append(acc)
    return tuple(out)


def mat_add(a, b):
    assert mat_shape(a) == mat_shape(b)
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    assert mat_shape(a) == mat_shape(b)
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a):
    return tuple(tuple(-x for x in row) for row in a)


def mat_transpose(a):
    rows, cols = mat_shape(a)
    return tuple(tuple(a[i][j] for i in range(rows)) for j in range(cols))


def mat_scale(c, a):
    return tuple(tuple(c * x for x in row) for row in a)


def mat_kron(a, b, zero):
    """Kronecker product, block (i,j) equals a[i][j] * b."""
    ra, ca = mat_shape(a)
    rb, cb = mat_shape(b)
    out = []
    for i in range(ra):
        for k in range(rb):
            row = []
            for j in range(ca):
                for l in range(cb):
                    row.append(a[i][j] * b[k][l] + zero)
            out.append(tuple(row))
    return tuple(out)


def mat_is_zero(a) -> bool:
    for row in a:
        for x in row:
            if isinstance(x, Poly):
                if not x.is_zero():
                    return False
            elif x != 0:
                return False
    return True


def rat_identity(k: int):
    return tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(k))
                 for i in range(k))


def poly_identity(k: int, nvars: int):
    one = Poly.const(nvars, 1)
    zero = Poly.zero(nvars)
    return tuple(tuple(one if i == j else zero for j in range(k)) for i in range(k))


def poly_zeros(rows: int, cols: int, nvars: int):
    z = Poly.zero(nvars)
    return tuple(tuple(z for _ in range(cols)) for _ in range(rows))


def rat_zeros(rows: int, cols: int):
    return tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows))


def rat_mat_inv(a):
    """Inverse of a square Fraction matrix by Gauss-Jordan.

    Raises ValueError on a singular matrix.
    """
    n = len(a)
    assert all(len(row) == n for row in a)
    aug = [[Fraction(x) for x in row] + [Fraction(1) if i == j else Fraction(0)
                                         for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def rat_mat_invertible(a) -> bool:
    try:
        rat_mat_inv(a)
        return True
    except ValueError:
        return False
