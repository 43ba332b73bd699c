"""The exact Courant algebroid TM (+) T*M twisted by a 3-form.

Sections are pairs X + xi of a vector field and a 1-form.  The structure is
the canonical pairing <X+xi, Y+eta> = (xi(Y) + eta(X))/2, the antisymmetric
bracket

    [[X+xi, Y+eta]] = [X,Y] + L_X eta - L_Y xi + d(xi(Y) - eta(X))/2
                      + H(X, Y, .)

and the projection anchor.  The bracket fails Jacobi by an exact term: the
cyclic sum of [[[[e1,e2]],e3]] equals dT with 3T the cyclic pairing of
brackets, provided H is closed.  ``check_jacobi_defect`` evaluates both
sides literally, so a non-closed twist shows up as a nonzero residual.

``compare_with_extension`` measures the gap between this bracket and the
binary bracket of the cocycle extension built on the same H; the two agree
on the vector field component and differ by derivative terms in the form
component.
"""

from __future__ import annotations

from fractions import Fraction

from .calculus import (
    Form, VectorField, de_rham_d, eval_form, interior_multi, lie_derivative,
    vf_bracket,
)
from .cohomology import ExtensionData, Sec0
from .report import CheckResult
from .symbolic import Poly


class CourantSection:
    """Section X + xi of TM (+) T*M."""

    __slots__ = ("vf", "form")

    def __init__(self, vf: VectorField, form: Form):
        assert form.degree == 1 and form.nvars == vf.nvars
        object.__setattr__(self, "vf", vf)
        object.__setattr__(self, "form", form)

    def __setattr__(self, name, value):
        raise AttributeError("CourantSection is immutable")

    @classmethod
    def zero(cls, n: int) -> "CourantSection":
        return cls(VectorField.zero(n), Form.zero(n, 1))

    @property
    def nvars(self) -> int:
        return self.vf.nvars

    def __add__(self, other):
        return CourantSection(self.vf + other.vf, self.form + other.form)

    def __sub__(self, other):
        return CourantSection(self.vf - other.vf, self.form - other.form)

    def __neg__(self):
        return CourantSection(-self.vf, -self.form)

    def scale(self, f) -> "CourantSection":
        return CourantSection(self.vf.scale(f), self.form.scale(f))

    def is_zero(self) -> bool:
        return self.vf.is_zero() and self.form.is_zero()

    def __eq__(self, other):
        return (isinstance(other, CourantSection) and other.vf == self.vf
                and other.form == self.form)

    def __repr__(self):
        return f"CourantSection({self.vf!r}, {self.form!r})"


class SeveraForm:
    """A 3-form twist; the closed flag is recomputed, never taken on trust."""

    __slots__ = ("H", "closed")

    def __init__(self, H: Form):
        assert H.degree == 3
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "closed", de_rham_d(H).is_zero())

    def __setattr__(self, name, value):
        raise AttributeError("SeveraForm is immutable")

    @property
    def nvars(self) -> int:
        return self.H.nvars


def pairing(e1: CourantSection, e2: CourantSection) -> Poly:
    a = eval_form(e1.form, [e2.vf])
    b = eval_form(e2.form, [e1.vf])
    return (a + b) * Fraction(1, 2)


def courant_bracket(e1: CourantSection, e2: CourantSection,
                    S: SeveraForm) -> CourantSection:
    x, xi = e1.vf, e1.form
    y, eta = e2.vf, e2.form
    form = lie_derivative(x, eta) - lie_derivative(y, xi)
    half_d = de_rham_d(Form.function(
        eval_form(xi, [y]) - eval_form(eta, [x]))).scale(Fraction(1, 2))
    twist = interior_multi([x, y], S.H)
    return CourantSection(vf_bracket(x, y), form + half_d + twist)


def jacobiator_T(e1: CourantSection, e2: CourantSection, e3: CourantSection,
                 S: SeveraForm) -> Poly:
    total = Poly.zero(e1.nvars)
    for (a, b, c) in ((e1, e2, e3), (e2, e3, e1), (e3, e1, e2)):
        total = total + pairing(courant_bracket(a, b, S), c)
    return total * Fraction(1, 3)


def jacobi_defect(e1: CourantSection, e2: CourantSection, e3: CourantSection,
                  S: SeveraForm) -> CourantSection:
    """Cyclic triple bracket minus dT; zero exactly when Jacobi closes."""
    acc = CourantSection.zero(e1.nvars)
    for (a, b, c) in ((e1, e2, e3), (e2, e3, e1), (e3, e1, e2)):
        acc = acc + courant_bracket(courant_bracket(a, b, S), c, S)
    dt = de_rham_d(Form.function(jacobiator_T(e1, e2, e3, S)))
    return acc - CourantSection(VectorField.zero(e1.nvars), dt)


def check_jacobi_defect(e1: CourantSection, e2: CourantSection,
                        e3: CourantSection, S: SeveraForm) -> CheckResult:
    d = jacobi_defect(e1, e2, e3, S)
    witness = None
    if not d.is_zero():
        witness = (f"residual vector field {d.vf!r}, form {d.form!r}"
                   f" (twist closed: {S.closed})")
    return CheckResult("jacobi_defect", d.is_zero(), witness)


def section_to_courant(s: Sec0) -> CourantSection:
    """Read a coadjoint extension section as X + xi (fiber = dq basis)."""
    n = s.vf.nvars
    comps = {(a,): c for a, c in enumerate(s.e) if not c.is_zero()}
    return CourantSection(s.vf, Form(n, 1, comps))


def courant_to_section(e: CourantSection) -> Sec0:
    n = e.nvars
    return Sec0(e.vf, tuple(e.form.coefficient((a,)) for a in range(n)))


def compare_with_extension(E: ExtensionData, e1: CourantSection,
                           e2: CourantSection, S: SeveraForm) -> CourantSection:
    """l2(e1, e2) minus the Courant bracket, as a section.

    For an extension built from courant_cocycle on the same twist the
    vector field components agree, so the difference is a pure 1-form
    measuring connection and derivative terms.
    """
    l2 = E.l2(courant_to_section(e1), courant_to_section(e2))
    return section_to_courant(l2) - courant_bracket(e1, e2, S)


def random_courant_section(rng, n: int, max_degree: int = 2) -> CourantSection:
    from .calculus import random_form, random_vf
    return CourantSection(random_vf(rng, n, max_degree),
                          random_form(rng, n, 1, max_degree))
