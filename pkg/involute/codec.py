"""
JSON encodings for the kernel types.

Scalars use the per-semiring encodings from `scalars`; everything else
nests those. Decoders raise InputError on any malformed document so that
the CLI can map them to exit code 2.
"""

import json
from typing import Any, Dict, List, Optional

from .errors import InputError
from .fmod import FreeModule, LinMap, SelfConjugate, Vector, matrix_json
from .gns import HermitianFunctional, SesquiForm, scalars_selfconj
from .multiset import Multiset
from .scalars import InvolutiveSemiring, get_semiring
from .staralg import StarAlgebra, algebra_instances, mk_group_algebra
from .words import Mode


def load_json_file(path: str) -> Any:
    try:
        with open(path, "r") as f:
            return json.load(f)
    except FileNotFoundError:
        raise InputError(f"file not found: {path}")
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}", e.pos)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}")


def parse_json_text(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e.msg}", e.pos)


def _require(obj: Any, kind: str, *keys: str) -> Dict[str, Any]:
    if not isinstance(obj, dict):
        raise InputError(f"{kind} must be a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise InputError(f"{kind} is missing {', '.join(missing)}")
    return obj


def _list(obj: Any, kind: str) -> List[Any]:
    if not isinstance(obj, list):
        raise InputError(f"{kind} must be a JSON array")
    return obj


# Scalars

def decode_semiring(obj: Any) -> InvolutiveSemiring:
    if not isinstance(obj, str):
        raise InputError("scalars must be a semiring name")
    return get_semiring(obj)


# Modules, vectors, maps

def encode_module(M: FreeModule) -> Dict[str, Any]:
    return {"scalars": M.scalars.name, "basis": list(M.basis)}


def decode_module(obj: Any) -> FreeModule:
    _require(obj, "module", "scalars", "basis")
    basis = _list(obj["basis"], "basis")
    if not all(isinstance(b, str) for b in basis):
        raise InputError("basis names must be strings")
    return FreeModule(decode_semiring(obj["scalars"]), tuple(basis))


def encode_vector(x: Vector) -> Dict[str, Any]:
    S = x.module.scalars
    return {"module": encode_module(x.module), "coords": [S.encode(a) for a in x.coords]}


def decode_vector(obj: Any, module: Optional[FreeModule] = None) -> Vector:
    """A full vector object, or bare coordinates (or a bare scalar in dimension 1) inside a known module."""
    if isinstance(obj, dict) and "coords" in obj:
        declared = decode_module(obj["module"]) if "module" in obj else module
        if declared is None:
            raise InputError("vector has no module")
        if module is not None and (declared.scalars != module.scalars or declared.dim != module.dim):
            raise InputError(f"vector module does not match the expected {module.dim}-dimensional {module.scalars.name} module")
        module = module or declared
        coords = _list(obj["coords"], "coords")
    elif module is None:
        raise InputError("vector has no module")
    elif isinstance(obj, list):
        coords = obj
    elif module.dim == 1:
        coords = [obj]
    else:
        raise InputError(f"expected {module.dim} coordinates")
    if len(coords) != module.dim:
        raise InputError(f"expected {module.dim} coordinates, got {len(coords)}")
    S = module.scalars
    return Vector(module, tuple(S.decode(c) for c in coords))


def decode_matrix(S: InvolutiveSemiring, obj: Any, rows: int, cols: int, kind: str = "matrix") -> List[List[Any]]:
    data = _list(obj, kind)
    if len(data) != rows or any(not isinstance(r, list) or len(r) != cols for r in data):
        raise InputError(f"{kind} must be {rows}x{cols}")
    return [[S.decode(a) for a in row] for row in data]


def encode_map(f: LinMap) -> Dict[str, Any]:
    return {
        "dom": encode_module(f.dom),
        "cod": encode_module(f.cod),
        "matrix": matrix_json(f.scalars, f.matrix),
    }


def decode_map(obj: Any) -> LinMap:
    _require(obj, "map", "dom", "cod", "matrix")
    dom, cod = decode_module(obj["dom"]), decode_module(obj["cod"])
    return LinMap(dom, cod, decode_matrix(dom.scalars, obj["matrix"], cod.dim, dom.dim))


def encode_selfconj(c: SelfConjugate) -> Dict[str, Any]:
    return {"module": encode_module(c.module), "J": matrix_json(c.scalars, c.J)}


def decode_selfconj(obj: Any) -> SelfConjugate:
    _require(obj, "self-conjugate", "module", "J")
    module = decode_module(obj["module"])
    return SelfConjugate(module, decode_matrix(module.scalars, obj["J"], module.dim, module.dim, "J"))


# Algebras

def encode_algebra(A: StarAlgebra) -> Dict[str, Any]:
    S = A.scalars
    return {
        "name": A.name,
        "module": encode_module(A.module),
        "unit": [S.encode(a) for a in A.unit.coords],
        "structconst": [[[S.encode(v) for v in cell] for cell in row] for row in A.structconst],
        "J": matrix_json(S, A.invol.J),
        "mode": A.mode.value,
    }


def decode_group_table(obj: Any, S: InvolutiveSemiring) -> StarAlgebra:
    _require(obj, "group table", "order", "table")
    order, table = obj["order"], _list(obj["table"], "table")
    if not isinstance(order, int) or isinstance(order, bool) or order != len(table):
        raise InputError("group order does not match the table")
    return mk_group_algebra(table, S, obj.get("names"), obj.get("name", f"group{order}-{S.name}"))


def decode_algebra(obj: Any) -> StarAlgebra:
    """An algebra document, a group-table document (with "scalars") or a registered instance name."""
    if isinstance(obj, str):
        return resolve_algebra(obj)
    if isinstance(obj, dict) and "table" in obj:
        return decode_group_table(obj, decode_semiring(obj.get("scalars", "gauss")))
    _require(obj, "algebra", "module", "unit", "structconst", "J", "mode")
    module = decode_module(obj["module"])
    S = module.scalars
    n = module.dim
    cube = _list(obj["structconst"], "structconst")
    if len(cube) != n or any(not isinstance(row, list) or len(row) != n for row in cube):
        raise InputError(f"structconst must be a {n}x{n}x{n} array")
    structconst = [
        [[S.decode(v) for v in _list(cell, "structconst cell")] for cell in row]
        for row in cube
    ]
    unit = decode_vector(obj["unit"], module)
    J = decode_matrix(S, obj["J"], n, n, "J")
    mode = Mode.parse(obj["mode"])
    return StarAlgebra(module, unit, structconst, SelfConjugate(module, J), mode, obj.get("name", "algebra"))


def resolve_algebra(name: str) -> StarAlgebra:
    """Registered instance names look like mat2-gauss or fun2-gf9."""
    _, _, scalars = name.rpartition("-")
    try:
        S = get_semiring(scalars)
    except InputError:
        raise InputError(f"unknown algebra instance {name!r}")
    algebras = algebra_instances(S)
    if name not in algebras:
        raise InputError(f"unknown algebra instance {name!r}; known: {', '.join(sorted(algebras))}")
    return algebras[name]


def load_algebra(ref: str) -> StarAlgebra:
    """A registered instance name or the path of an algebra JSON file."""
    if ref.endswith(".json"):
        return decode_algebra(load_json_file(ref))
    return resolve_algebra(ref)


# Functionals and forms

def _codomain(obj: Dict[str, Any], A: StarAlgebra) -> SelfConjugate:
    if obj.get("codomain") is None:
        return scalars_selfconj(A.scalars)
    c = decode_selfconj(obj["codomain"])
    if c.scalars != A.scalars:
        raise InputError(f"codomain scalars {c.scalars.name} do not match the algebra's {A.scalars.name}")
    return c


def _algebra_for(obj: Dict[str, Any], algebra: Optional[StarAlgebra]) -> StarAlgebra:
    if algebra is not None:
        return algebra
    if "algebra" not in obj:
        raise InputError("document names no algebra")
    return decode_algebra(obj["algebra"])


def encode_functional(f: HermitianFunctional) -> Dict[str, Any]:
    return {
        "algebra": f.algebra.name,
        "codomain": encode_selfconj(f.codomain),
        "values": [[f.codomain.scalars.encode(a) for a in v.coords] for v in f.values],
    }


def decode_functional(obj: Any, algebra: Optional[StarAlgebra] = None) -> HermitianFunctional:
    _require(obj, "functional", "values")
    A = _algebra_for(obj, algebra)
    codomain = _codomain(obj, A)
    values = [decode_vector(v, codomain.module) for v in _list(obj["values"], "values")]
    return HermitianFunctional(A, codomain, tuple(values))


def encode_form(p: SesquiForm) -> Dict[str, Any]:
    S = p.codomain.scalars
    return {
        "algebra": p.algebra.name,
        "codomain": encode_selfconj(p.codomain),
        "gram": [[[S.encode(a) for a in v.coords] for v in row] for row in p.gram],
    }


def decode_form(obj: Any, algebra: Optional[StarAlgebra] = None) -> SesquiForm:
    _require(obj, "form", "gram")
    A = _algebra_for(obj, algebra)
    codomain = _codomain(obj, A)
    rows = _list(obj["gram"], "gram")
    gram = [[decode_vector(v, codomain.module) for v in _list(row, "gram row")] for row in rows]
    return SesquiForm(A, codomain, tuple(tuple(r) for r in gram))


# Multisets

def encode_multiset(phi: Multiset) -> Dict[str, Any]:
    S = phi.scalars
    return {"scalars": S.name, "entries": [[_encode_key(k), S.encode(v)] for k, v in phi.entries]}


def _encode_key(key: Any) -> Any:
    if isinstance(key, (str, int)):
        return key
    if isinstance(key, tuple):
        return [_encode_key(k) for k in key]
    if isinstance(key, Multiset):
        return encode_multiset(key)
    return str(key)


def _decode_key(obj: Any) -> Any:
    if isinstance(obj, list):
        return tuple(_decode_key(k) for k in obj)
    if isinstance(obj, (str, int)) and not isinstance(obj, bool):
        return obj
    raise InputError(f"unsupported multiset key {obj!r}")


def decode_multiset(obj: Any, scalars: Optional[InvolutiveSemiring] = None) -> Multiset:
    """The canonical {"scalars", "entries"} document, or a {key: scalar} object with `scalars` given."""
    if isinstance(obj, dict) and "entries" in obj:
        S = decode_semiring(obj["scalars"]) if "scalars" in obj else scalars
        if S is None:
            raise InputError("multiset names no scalars")
        if scalars is not None and S != scalars:
            raise InputError(f"multiset scalars {S.name} do not match {scalars.name}")
        pairs = []
        for entry in _list(obj["entries"], "entries"):
            if not isinstance(entry, list) or len(entry) != 2:
                raise InputError("multiset entries must be [key, scalar] pairs")
            pairs.append((_decode_key(entry[0]), S.decode(entry[1])))
        return Multiset.build(S, pairs)
    if isinstance(obj, dict):
        if scalars is None:
            raise InputError("multiset names no scalars")
        return Multiset.build(scalars, ((k, scalars.decode(v)) for k, v in obj.items()))
    raise InputError("multiset must be a JSON object")
