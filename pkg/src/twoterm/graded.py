"""Free graded-commutative algebra on coordinate generators.

Elements live in Q[q_1..q_n] (x) Lambda(o_1..o_k) (x) Q[P_1..P_m] where the
o's are odd (degree 1) and the P's are even of degree 2.  Terms are stored
sparsely as {(q exponents, odd index tuple, P exponents): Fraction} with the
odd indices strictly increasing; products pick up the sign of sorting the
concatenated odd blocks.

GeneratorDerivation extends prescribed generator images to an odd derivation
(degree +1): D(ab) = D(a) b + (-1)^{|a|} a D(b).  Squaring such a derivation
is again a derivation, so checking D(D(g)) = 0 on generators proves
D^2 = 0 everywhere; that is exactly what the homological verification of an
extension does.
"""

from __future__ import annotations

from fractions import Fraction


class SuperPoly:
    __slots__ = ("nq", "nodd", "nev", "terms")

    def __init__(self, nq: int, nodd: int, nev: int, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            qe, odds, pe = key
            qe = tuple(int(e) for e in qe)
            odds = tuple(int(o) for o in odds)
            pe = tuple(int(e) for e in pe)
            assert len(qe) == nq and len(pe) == nev
            assert all(0 <= o < nodd for o in odds)
            assert list(odds) == sorted(set(odds)), f"odd block not increasing: {odds}"
            c = Fraction(c)
            if c == 0:
                continue
            k = (qe, odds, pe)
            clean[k] = clean.get(k, Fraction(0)) + c
            if clean[k] == 0:
                del clean[k]
        object.__setattr__(self, "nq", nq)
        object.__setattr__(self, "nodd", nodd)
        object.__setattr__(self, "nev", nev)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SuperPoly is immutable")

    # -- constructors

    @classmethod
    def zero(cls, nq, nodd, nev):
        return cls(nq, nodd, nev)

    @classmethod
    def const(cls, nq, nodd, nev, c):
        return cls(nq, nodd, nev, {((0,) * nq, (), (0,) * nev): Fraction(c)})

    @classmethod
    def coordinate(cls, i, nq, nodd, nev):
        qe = tuple(1 if j == i else 0 for j in range(nq))
        return cls(nq, nodd, nev, {(qe, (), (0,) * nev): Fraction(1)})

    @classmethod
    def odd_gen(cls, i, nq, nodd, nev):
        return cls(nq, nodd, nev, {((0,) * nq, (i,), (0,) * nev): Fraction(1)})

    @classmethod
    def even_gen(cls, b, nq, nodd, nev):
        pe = tuple(1 if j == b else 0 for j in range(nev))
        return cls(nq, nodd, nev, {((0,) * nq, (), pe): Fraction(1)})

    def _dims(self):
        return (self.nq, self.nodd, self.nev)

    # -- algebra

    def __add__(self, other):
        assert isinstance(other, SuperPoly) and other._dims() == self._dims()
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return SuperPoly(self.nq, self.nodd, self.nev, terms)

    def __neg__(self):
        return SuperPoly(self.nq, self.nodd, self.nev,
                         {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return SuperPoly(self.nq, self.nodd, self.nev,
                         {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        assert isinstance(other, SuperPoly) and other._dims() == self._dims()
        terms = {}
        for (qa, oa, pa), ca in self.terms.items():
            for (qb, ob, pb), cb in other.terms.items():
                if set(oa) & set(ob):
                    continue
                sign, odds = _merge_odds(oa, ob)
                qe = tuple(x + y for x, y in zip(qa, qb))
                pe = tuple(x + y for x, y in zip(pa, pb))
                key = (qe, odds, pe)
                terms[key] = terms.get(key, Fraction(0)) + sign * ca * cb
        return SuperPoly(self.nq, self.nodd, self.nev, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, SuperPoly) and other._dims() == self._dims()
                and other.terms == self.terms)

    def __hash__(self):
        return hash((self._dims(), frozenset(self.terms.items())))

    def term_degree(self, key) -> int:
        _, odds, pe = key
        return len(odds) + 2 * sum(pe)

    def is_homogeneous(self):
        degs = {self.term_degree(k) for k in self.terms}
        return len(degs) <= 1

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (qe, odds, pe), c in sorted(self.terms.items()):
            factors = []
            if c != 1:
                factors.append(str(c))
            factors += [f"q{i + 1}^{e}" if e > 1 else f"q{i + 1}"
                        for i, e in enumerate(qe) if e]
            factors += [f"o{i + 1}" for i in odds]
            factors += [f"P{b + 1}^{e}" if e > 1 else f"P{b + 1}"
                        for b, e in enumerate(pe) if e]
            bits.append("*".join(factors) if factors else str(c))
        return " + ".join(bits)


def _merge_odds(a, b):
    """Sign and sorted tuple for concatenating two increasing odd blocks."""
    sign = 1
    for x in a:
        for y in b:
            if x > y:
                sign = -sign
    return sign, tuple(sorted(a + b))


class GeneratorDerivation:
    """Odd derivation determined by images of the generators.

    images maps ("q", i), ("odd", i) and ("ev", b) to SuperPolys; missing
    keys mean the generator maps to zero.
    """

    def __init__(self, nq: int, nodd: int, nev: int, images: dict):
        self.nq = nq
        self.nodd = nodd
        self.nev = nev
        self.images = {}
        for key, val in images.items():
            kind, idx = key
            assert kind in ("q", "odd", "ev")
            assert isinstance(val, SuperPoly)
            assert val._dims() == (nq, nodd, nev)
            if not val.is_zero():
                self.images[(kind, int(idx))] = val

    def image(self, kind, idx) -> SuperPoly:
        return self.images.get((kind, idx),
                               SuperPoly.zero(self.nq, self.nodd, self.nev))

    def apply(self, sp: SuperPoly) -> SuperPoly:
        assert sp._dims() == (self.nq, self.nodd, self.nev)
        out = SuperPoly.zero(self.nq, self.nodd, self.nev)
        for (qe, odds, pe), c in sp.terms.items():
            out = out + self._apply_term(qe, odds, pe).scale(c)
        return out

    def _apply_term(self, qe, odds, pe) -> SuperPoly:
        dims = (self.nq, self.nodd, self.nev)
        out = SuperPoly.zero(*dims)

        def monom(q=None, o=(), p=None):
            q = q if q is not None else (0,) * self.nq
            p = p if p is not None else (0,) * self.nev
            return SuperPoly(*dims, {(tuple(q), tuple(o), tuple(p)): 1})

        q_part = monom(q=qe)
        odd_part = monom(o=odds)
        p_part = monom(p=pe)

        # leading even factor q^qe
        for i, e in enumerate(qe):
            if e == 0:
                continue
            img = self.image("q", i)
            if img.is_zero():
                continue
            lower = list(qe)
            lower[i] -= 1
            out = out + (monom(q=lower) * img).scale(e) * odd_part * p_part

        # odd block, with alternating prefix signs
        for t in range(len(odds)):
            img = self.image("odd", odds[t])
            if img.is_zero():
                continue
            prefix = monom(o=odds[:t])
            suffix = monom(o=odds[t + 1:])
            sign = -1 if t % 2 else 1
            out = out + (q_part * prefix * img * suffix * p_part).scale(sign)

        # trailing even factor P^pe, past len(odds) odd generators
        sign = -1 if len(odds) % 2 else 1
        for b, e in enumerate(pe):
            if e == 0:
                continue
            img = self.image("ev", b)
            if img.is_zero():
                continue
            lower = list(pe)
            lower[b] -= 1
            out = out + (q_part * odd_part * img * monom(p=lower)).scale(sign * e)
        return out
