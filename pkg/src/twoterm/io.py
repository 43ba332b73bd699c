"""JSON document parsing and serialization for the ``verify`` front end.

A document is a JSON object ``{"kind": ..., "payload": {...}, "seed": N}``
with the seed optional.  Six kinds are understood:

``lie2_algebra``
    Structure constants of a two-term L-infinity algebra: ``dim0``,
    ``dim1``, an optional ``l1`` rational matrix and sparse bracket tables
    ``l2_00``, ``l2_01``, ``l3``.
``rep_uth``
    A representation up to homotopy on R^n.  Either ``connection`` (a list
    of n Christoffel matrices, producing the coadjoint representation) or
    the explicit fields ``r0``, ``r1``, ``boundary``, ``gamma0``,
    ``gamma1``, ``omega``.
``cochain``
    A ``rep`` payload plus ``degree`` and sparse ``part0``/``part1`` tables
    with polynomial coefficient vectors.
``courant``
    ``nvars`` and a sparse 3-form ``twist``; optionally a ``connection``
    used when the twist is turned into an extension cocycle.
``fin2group``
    A finite group given by its multiplication ``mul`` table, fiber ranks
    ``rank0``/``rank1``, a rational ``boundary`` matrix, invertible ``f1``
    matrices per element (or separate ``f1_0``/``f1_1``), and sparse
    ``f2``, ``c2``, ``c3`` tables.
``extension``
    A ``rep`` payload plus a degree 2 ``cocycle`` with ``part0``/``part1``.

Sparse tables are lists of ``{"key": [indices], "value": ...}`` entries.
Rationals are strings ``"p/q"`` (or plain integers); polynomials are lists
of ``{"exponents": [...], "coeff": "p/q"}`` terms, with a bare rational
accepted as a constant shorthand.  ``emit_document`` writes a canonical
form (sorted keys, explicit representation data, no shorthands), so
parse/emit round-trips are byte-stable after one normalization pass.

Parse errors raise :class:`InputError` whose message starts with the path
of the offending field, e.g. ``payload.l1[0][2]: invalid rational '3/0'``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .calculus import Form
from .cohomology import Cochain
from .courant import SeveraForm
from .lie2 import Lie2Algebra
from .rep import RepUH2, coadjoint_TM
from .symbolic import Poly, rat_str
from .twogroup import FinGroupoid, GpdCochain, GpdRepUH2

KINDS = ("lie2_algebra", "rep_uth", "cochain", "courant", "fin2group",
         "extension")


class InputError(ValueError):
    """A document failed to parse; the message names the offending field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class InputDocument:
    """A parsed and validated document: kind, optional seed, domain objects.

    ``objects`` maps short names to the constructed library objects, e.g.
    ``{"algebra": Lie2Algebra}`` for kind ``lie2_algebra``.
    """

    __slots__ = ("kind", "seed", "objects")

    def __init__(self, kind: str, seed, objects: dict):
        self.kind = kind
        self.seed = seed
        self.objects = objects


# ---------------------------------------------------------------------------
# field readers (all failures carry the field path)
# ---------------------------------------------------------------------------

def _fail(path: str, message: str):
    raise InputError(path, message)


def _get(obj: dict, name: str, path: str, default=None, required=False):
    if name not in obj:
        if required:
            _fail(path, f"missing required field '{name}'")
        return default
    return obj[name]


def _as_int(value, path: str, low=None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(path, f"expected an integer, got {value!r}")
    if low is not None and value < low:
        _fail(path, f"expected an integer >= {low}, got {value}")
    return value


def _as_list(value, path: str, length=None) -> list:
    if not isinstance(value, list):
        _fail(path, f"expected a list, got {type(value).__name__}")
    if length is not None and len(value) != length:
        _fail(path, f"expected {length} entries, got {len(value)}")
    return value


def _as_rat(value, path: str) -> Fraction:
    if isinstance(value, bool):
        _fail(path, f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            _fail(path, f"invalid rational {value!r}")
    _fail(path, f"expected a rational, got {type(value).__name__}")


def _as_poly(value, nvars: int, path: str) -> Poly:
    if isinstance(value, (int, str)):
        return Poly.const(nvars, _as_rat(value, path))
    terms = {}
    for i, term in enumerate(_as_list(value, path)):
        tpath = f"{path}[{i}]"
        if not isinstance(term, dict):
            _fail(tpath, "expected a term object with exponents and coeff")
        exps = _as_list(_get(term, "exponents", tpath, required=True),
                        f"{tpath}.exponents", length=nvars)
        exps = tuple(_as_int(e, f"{tpath}.exponents[{j}]", low=0)
                     for j, e in enumerate(exps))
        coeff = _as_rat(_get(term, "coeff", tpath, required=True),
                        f"{tpath}.coeff")
        terms[exps] = terms.get(exps, Fraction(0)) + coeff
    return Poly(nvars, terms)


def _rat_vector(value, length: int, path: str) -> tuple:
    row = _as_list(value, path, length)
    return tuple(_as_rat(x, f"{path}[{i}]") for i, x in enumerate(row))


def _rat_matrix(value, rows: int, cols: int, path: str) -> tuple:
    mat = _as_list(value, path, rows)
    return tuple(_rat_vector(r, cols, f"{path}[{i}]")
                 for i, r in enumerate(mat))


def _poly_vector(value, length: int, nvars: int, path: str) -> tuple:
    row = _as_list(value, path, length)
    return tuple(_as_poly(x, nvars, f"{path}[{i}]")
                 for i, x in enumerate(row))


def _poly_matrix(value, rows: int, cols: int, nvars: int, path: str) -> tuple:
    mat = _as_list(value, path, rows)
    return tuple(_poly_vector(r, cols, nvars, f"{path}[{i}]")
                 for i, r in enumerate(mat))


def _key(value, length: int, bound: int, path: str, increasing=False,
         distinct=False) -> tuple:
    idx = _as_list(value, path, length)
    idx = tuple(_as_int(i, f"{path}[{j}]", low=0) for j, i in enumerate(idx))
    if any(i >= bound for i in idx):
        _fail(path, f"index out of range 0..{bound - 1}: {list(idx)}")
    if increasing and list(idx) != sorted(set(idx)):
        _fail(path, f"indices must be strictly increasing: {list(idx)}")
    if distinct and len(set(idx)) != length:
        _fail(path, f"indices must be distinct: {list(idx)}")
    return idx


def _sparse(value, path: str):
    """Yield (key list, value, entry path) from a sparse table."""
    out = []
    for i, entry in enumerate(_as_list(value or [], path)):
        epath = f"{path}[{i}]"
        if not isinstance(entry, dict):
            _fail(epath, "expected an object with key and value")
        key = _get(entry, "key", epath, required=True)
        val = _get(entry, "value", epath, required=True)
        out.append((key, val, epath))
    return out


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------

def _poly_json(p: Poly):
    return [{"exponents": list(exps), "coeff": rat_str(c)}
            for exps, c in sorted(p.terms.items())]


def _rat_mat_json(m):
    return [[rat_str(x) for x in row] for row in m]


def _poly_mat_json(m):
    return [[_poly_json(x) for x in row] for row in m]


def _sparse_json(table, value_fn):
    return [{"key": list(key), "value": value_fn(table[key])}
            for key in sorted(table)]


# ---------------------------------------------------------------------------
# kind: lie2_algebra
# ---------------------------------------------------------------------------

def _parse_lie2(payload: dict, path: str) -> dict:
    dim0 = _as_int(_get(payload, "dim0", path, required=True),
                   f"{path}.dim0", low=0)
    dim1 = _as_int(_get(payload, "dim1", path, required=True),
                   f"{path}.dim1", low=0)
    l1 = _get(payload, "l1", path)
    if l1 is not None:
        l1 = _rat_matrix(l1, dim0, dim1, f"{path}.l1")

    def table(name, keylen, bound, rank, increasing, distinct=False):
        out = {}
        for key, val, epath in _sparse(_get(payload, name, path),
                                       f"{path}.{name}"):
            idx = _key(key, keylen, bound, f"{epath}.key",
                       increasing=increasing, distinct=distinct)
            out[idx] = _rat_vector(val, rank, f"{epath}.value")
        return out

    l2_00 = table("l2_00", 2, dim0, dim0, increasing=True)
    l2_01 = {}
    for key, val, epath in _sparse(_get(payload, "l2_01", path),
                                   f"{path}.l2_01"):
        idx = _as_list(key, f"{epath}.key", 2)
        i = _as_int(idx[0], f"{epath}.key[0]", low=0)
        a = _as_int(idx[1], f"{epath}.key[1]", low=0)
        if i >= dim0 or a >= dim1:
            _fail(f"{epath}.key", f"index out of range: {[i, a]}")
        l2_01[(i, a)] = _rat_vector(val, dim1, f"{epath}.value")
    l3 = table("l3", 3, dim0, dim1, increasing=False, distinct=True)
    return {"algebra": Lie2Algebra(dim0, dim1, l1, l2_00, l2_01, l3)}


def _emit_lie2(objects: dict) -> dict:
    L = objects["algebra"]
    vec = lambda v: [rat_str(x) for x in v]
    return {
        "dim0": L.dim0,
        "dim1": L.dim1,
        "l1": _rat_mat_json(L.l1mat),
        "l2_00": _sparse_json(L.l2_00, vec),
        "l2_01": _sparse_json(L.l2_01, vec),
        "l3": _sparse_json(L.l3, vec),
    }


# ---------------------------------------------------------------------------
# kind: rep_uth (shared by cochain and extension payloads)
# ---------------------------------------------------------------------------

def _parse_rep(payload, path: str) -> RepUH2:
    if not isinstance(payload, dict):
        _fail(path, "expected an object")
    n = _as_int(_get(payload, "nvars", path, required=True),
                f"{path}.nvars", low=1)
    connection = _get(payload, "connection", path)
    explicit = [f for f in ("r0", "r1", "boundary", "gamma0", "gamma1",
                            "omega") if f in payload]
    if connection is not None:
        if explicit:
            _fail(path, "give either connection or explicit representation "
                        f"fields, not both (found {explicit})")
        gammas = _as_list(connection, f"{path}.connection", n)
        gammas = tuple(_poly_matrix(g, n, n, n, f"{path}.connection[{i}]")
                       for i, g in enumerate(gammas))
        return coadjoint_TM(gammas, n)
    r0 = _as_int(_get(payload, "r0", path, required=True),
                 f"{path}.r0", low=0)
    r1 = _as_int(_get(payload, "r1", path, required=True),
                 f"{path}.r1", low=0)
    boundary = _poly_matrix(_get(payload, "boundary", path, required=True),
                            r0, r1, n, f"{path}.boundary")
    gamma0 = _as_list(_get(payload, "gamma0", path, required=True),
                      f"{path}.gamma0", n)
    gamma0 = tuple(_poly_matrix(g, r0, r0, n, f"{path}.gamma0[{i}]")
                   for i, g in enumerate(gamma0))
    gamma1 = _as_list(_get(payload, "gamma1", path, required=True),
                      f"{path}.gamma1", n)
    gamma1 = tuple(_poly_matrix(g, r1, r1, n, f"{path}.gamma1[{i}]")
                   for i, g in enumerate(gamma1))
    omega = {}
    for key, val, epath in _sparse(_get(payload, "omega", path),
                                   f"{path}.omega"):
        idx = _key(key, 2, n, f"{epath}.key", increasing=True)
        omega[idx] = _poly_matrix(val, r1, r0, n, f"{epath}.value")
    return RepUH2(n, r0, r1, boundary, gamma0, gamma1, omega)


def _emit_rep(R: RepUH2) -> dict:
    return {
        "nvars": R.n,
        "r0": R.r0,
        "r1": R.r1,
        "boundary": _poly_mat_json(R.boundary),
        "gamma0": [_poly_mat_json(g) for g in R.gamma0],
        "gamma1": [_poly_mat_json(g) for g in R.gamma1],
        "omega": _sparse_json(R.omega, _poly_mat_json),
    }


def _parse_rep_kind(payload: dict, path: str) -> dict:
    return {"rep": _parse_rep(payload, path)}


def _emit_rep_kind(objects: dict) -> dict:
    return _emit_rep(objects["rep"])


# ---------------------------------------------------------------------------
# kinds: cochain and extension
# ---------------------------------------------------------------------------

def _parse_cochain_body(R: RepUH2, payload: dict, degree: int, path: str,
                        part0="part0", part1="part1") -> Cochain:
    tables = []
    for name, keylen, rank in ((part0, degree, R.r0),
                               (part1, degree + 1, R.r1)):
        out = {}
        for key, val, epath in _sparse(_get(payload, name, path),
                                       f"{path}.{name}"):
            idx = _key(key, keylen, R.n, f"{epath}.key", increasing=True)
            out[idx] = _poly_vector(val, rank, R.n, f"{epath}.value")
        tables.append(out)
    return Cochain(R.n, R.r0, R.r1, degree, tables[0], tables[1])


def _parse_cochain(payload: dict, path: str) -> dict:
    R = _parse_rep(_get(payload, "rep", path, required=True), f"{path}.rep")
    degree = _as_int(_get(payload, "degree", path, required=True),
                     f"{path}.degree", low=0)
    return {"rep": R, "cochain": _parse_cochain_body(R, payload, degree,
                                                     path)}


def _emit_cochain(objects: dict) -> dict:
    c = objects["cochain"]
    vec = lambda v: [_poly_json(p) for p in v]
    return {
        "rep": _emit_rep(objects["rep"]),
        "degree": c.degree,
        "part0": _sparse_json(c.part0, vec),
        "part1": _sparse_json(c.part1, vec),
    }


def _parse_extension(payload: dict, path: str) -> dict:
    R = _parse_rep(_get(payload, "rep", path, required=True), f"{path}.rep")
    body = _get(payload, "cocycle", path, required=True)
    if not isinstance(body, dict):
        _fail(f"{path}.cocycle", "expected an object")
    return {"rep": R, "cochain": _parse_cochain_body(R, body, 2,
                                                     f"{path}.cocycle")}


def _emit_extension(objects: dict) -> dict:
    c = objects["cochain"]
    vec = lambda v: [_poly_json(p) for p in v]
    return {
        "rep": _emit_rep(objects["rep"]),
        "cocycle": {"part0": _sparse_json(c.part0, vec),
                    "part1": _sparse_json(c.part1, vec)},
    }


# ---------------------------------------------------------------------------
# kind: courant
# ---------------------------------------------------------------------------

def _parse_courant(payload: dict, path: str) -> dict:
    n = _as_int(_get(payload, "nvars", path, required=True),
                f"{path}.nvars", low=1)
    comps = {}
    for key, val, epath in _sparse(_get(payload, "twist", path),
                                   f"{path}.twist"):
        idx = _key(key, 3, n, f"{epath}.key", increasing=True)
        comps[idx] = _as_poly(val, n, f"{epath}.value")
    connection = _get(payload, "connection", path)
    if connection is None:
        zero = tuple(tuple(Poly.zero(n) for _ in range(n)) for _ in range(n))
        gammas = (zero,) * n
    else:
        gammas = _as_list(connection, f"{path}.connection", n)
        gammas = tuple(_poly_matrix(g, n, n, n, f"{path}.connection[{i}]")
                       for i, g in enumerate(gammas))
    return {"nvars": n, "severa": SeveraForm(Form(n, 3, comps)),
            "gammas": gammas}


def _emit_courant(objects: dict) -> dict:
    severa = objects["severa"]
    n = objects["nvars"]
    out = {
        "nvars": n,
        "twist": _sparse_json(severa.H.comps, _poly_json),
    }
    gammas = objects["gammas"]
    if any(not p.is_zero() for g in gammas for row in g for p in row):
        out["connection"] = [_poly_mat_json(g) for g in gammas]
    return out


# ---------------------------------------------------------------------------
# kind: fin2group
# ---------------------------------------------------------------------------

def _parse_fin2group(payload: dict, path: str) -> dict:
    mul = _as_list(_get(payload, "mul", path, required=True), f"{path}.mul")
    order = len(mul)
    mul = [[_as_int(x, f"{path}.mul[{i}][{j}]", low=0)
            for j, x in enumerate(_as_list(row, f"{path}.mul[{i}]", order))]
           for i, row in enumerate(mul)]
    try:
        gpd = FinGroupoid.from_mul_table(mul)
    except ValueError as exc:
        _fail(f"{path}.mul", str(exc))
    r0 = _as_int(_get(payload, "rank0", path, required=True),
                 f"{path}.rank0", low=0)
    r1 = _as_int(_get(payload, "rank1", path, required=True),
                 f"{path}.rank1", low=0)
    boundary = _rat_matrix(_get(payload, "boundary", path, required=True),
                           r0, r1, f"{path}.boundary")

    def f1_table(name):
        mats = _as_list(_get(payload, name, path, required=True),
                        f"{path}.{name}", order)
        rank = r0 if name.endswith("_0") or name == "f1" else r1
        return tuple(_rat_matrix(m, rank, rank, f"{path}.{name}[{i}]")
                     for i, m in enumerate(mats))

    if "f1" in payload:
        if "f1_0" in payload or "f1_1" in payload:
            _fail(path, "give either f1 or f1_0/f1_1, not both")
        if r0 != r1:
            _fail(f"{path}.f1", "shared f1 needs equal ranks; "
                                "give f1_0 and f1_1")
        f1_0 = f1_table("f1")
        f1_1 = f1_0
    else:
        f1_0 = f1_table("f1_0")
        f1_1 = f1_table("f1_1")

    f2 = {}
    for key, val, epath in _sparse(_get(payload, "f2", path), f"{path}.f2"):
        idx = _key(key, 2, order, f"{epath}.key")
        f2[idx] = _rat_matrix(val, r1, r0, f"{epath}.value")
    try:
        rep = GpdRepUH2(gpd, (r0,), (r1,), (boundary,), f1_0, f1_1, f2=f2,
                        validate=False)
    except (AssertionError, ValueError) as exc:
        _fail(path, str(exc) or "inconsistent representation data")

    def cochain_table(name, keylen, rank):
        out = {}
        for key, val, epath in _sparse(_get(payload, name, path),
                                       f"{path}.{name}"):
            idx = _key(key, keylen, order, f"{epath}.key")
            out[idx] = _rat_vector(val, rank, f"{epath}.value")
        return out

    c2 = cochain_table("c2", 2, r0)
    c3 = cochain_table("c3", 3, r1)
    try:
        GpdCochain(rep, 2, part0=c2)
    except ValueError as exc:
        _fail(f"{path}.c2", str(exc))
    try:
        cocycle = GpdCochain(rep, 2, part0=c2, part1=c3)
    except ValueError as exc:
        _fail(f"{path}.c3", str(exc))
    return {"gpd": gpd, "rep": rep, "cocycle": cocycle}


def _emit_fin2group(objects: dict) -> dict:
    gpd = objects["gpd"]
    rep = objects["rep"]
    cocycle = objects["cocycle"]
    order = len(gpd.source)
    vec = lambda v: [rat_str(x) for x in v]
    return {
        "mul": [[gpd.table[(a, b)] for b in range(order)]
                for a in range(order)],
        "rank0": rep.r0[0],
        "rank1": rep.r1[0],
        "boundary": _rat_mat_json(rep.boundary[0]),
        "f1_0": [_rat_mat_json(m) for m in rep.f1_0],
        "f1_1": [_rat_mat_json(m) for m in rep.f1_1],
        "f2": _sparse_json(rep.f2, _rat_mat_json),
        "c2": _sparse_json(cocycle.part0, vec),
        "c3": _sparse_json(cocycle.part1, vec),
    }


# ---------------------------------------------------------------------------
# document level
# ---------------------------------------------------------------------------

_PARSERS = {
    "lie2_algebra": _parse_lie2,
    "rep_uth": _parse_rep_kind,
    "cochain": _parse_cochain,
    "courant": _parse_courant,
    "fin2group": _parse_fin2group,
    "extension": _parse_extension,
}

_EMITTERS = {
    "lie2_algebra": _emit_lie2,
    "rep_uth": _emit_rep_kind,
    "cochain": _emit_cochain,
    "courant": _emit_courant,
    "fin2group": _emit_fin2group,
    "extension": _emit_extension,
}


def parse_input(text: str) -> InputDocument:
    """Parse and validate a document; raise InputError naming the field."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("document", f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        _fail("document", "top level must be an object")
    kind = _get(obj, "kind", "document", required=True)
    if kind not in KINDS:
        _fail("kind", f"unknown kind {kind!r}; expected one of "
                      f"{', '.join(KINDS)}")
    seed = _get(obj, "seed", "document")
    if seed is not None:
        seed = _as_int(seed, "seed")
    payload = _get(obj, "payload", "document", required=True)
    if not isinstance(payload, dict):
        _fail("payload", "expected an object")
    try:
        objects = _PARSERS[kind](payload, "payload")
    except InputError:
        raise
    except (AssertionError, ValueError) as exc:
        raise InputError("payload", str(exc) or "invalid payload") from None
    return InputDocument(kind, seed, objects)


def emit_document(doc: InputDocument) -> str:
    """Canonical JSON for a parsed document (stable key order)."""
    obj = {"kind": doc.kind, "payload": _EMITTERS[doc.kind](doc.objects)}
    if doc.seed is not None:
        obj["seed"] = doc.seed
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
