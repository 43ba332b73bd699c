"""Exact verification of two-term homotopy structures.

Everything here computes over the rationals (or polynomial rings over the
rationals), so every check is an exact identity, never a float comparison.
The pieces:

* ``symbolic``   - rationals, sparse multivariate polynomials, Koszul signs
* ``calculus``   - polynomial vector fields and differential forms on R^n
* ``lie2``       - two-term L-infinity algebras and their morphisms
* ``rep``        - two-term representations up to homotopy of TR^n
* ``cohomology`` - the associated cochain complex, extensions, coboundaries
* ``courant``    - the exact Courant algebroid with a twisting 3-form
* ``twogroup``   - finite semistrict 2-group extensions and their nerves
* ``cli``        - the ``verify`` command line front end
"""

__version__ = "0.1.0"
