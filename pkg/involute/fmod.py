"""
Finite-dimensional free S-modules.

Conjugate modules are not materialised: X-bar has the same vectors as X,
so conjugation is pushed into the maps. A LinMap carries a `side` flag:

- LINEAR          x -> M x
- CONJ_DOMAIN     a linear map out of the conjugate module, x -> M conj(x)
- CONJ_CODOMAIN   a linear map into the conjugate module,  x -> M conj(x)

The two conjugate sides have the same carrier function; transposing
between them leaves the matrix unchanged. Matrices are row-major with
rows indexed by the codomain. Tensor bases are ordered row-major in
(left index, right index).
"""

import json
import random
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Any, List, Optional, Sequence, Tuple

from .errors import ConditionViolation, InputError, PreconditionError, ScalarMismatchError
from .report import Report
from .scalars import InvolutiveSemiring

Matrix = Tuple[Tuple[Any, ...], ...]


# Matrix helpers

def as_matrix(rows: Sequence[Sequence[Any]]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def identity_matrix(S: InvolutiveSemiring, n: int) -> Matrix:
    return tuple(tuple(S.one if i == j else S.zero for j in range(n)) for i in range(n))


def zero_matrix(S: InvolutiveSemiring, rows: int, cols: int) -> Matrix:
    return tuple(tuple(S.zero for _ in range(cols)) for _ in range(rows))


def mat_mul(S: InvolutiveSemiring, A: Matrix, B: Matrix) -> Matrix:
    if A and len(A[0]) != len(B):
        raise InputError(f"cannot multiply {len(A)}x{len(A[0])} by {len(B)}x{len(B[0]) if B else 0}")
    cols = len(B[0]) if B else 0
    return tuple(
        tuple(S.sum(S.mul(row[k], B[k][j]) for k in range(len(B))) for j in range(cols))
        for row in A
    )


def mat_add(S: InvolutiveSemiring, A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(S.add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_conj(S: InvolutiveSemiring, A: Matrix) -> Matrix:
    return tuple(tuple(S.conj(a) for a in row) for row in A)


def mat_transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A)) if A else ()


def mat_vec(S: InvolutiveSemiring, A: Matrix, coords: Sequence[Any]) -> Tuple[Any, ...]:
    return tuple(S.sum(S.mul(a, c) for a, c in zip(row, coords)) for row in A)


def kron(S: InvolutiveSemiring, A: Matrix, B: Matrix) -> Matrix:
    """Kronecker product, row-major in (A index, B index)."""
    return tuple(
        tuple(S.mul(A[i][j], B[k][l]) for j in range(len(A[0])) for l in range(len(B[0])))
        for i in range(len(A)) for k in range(len(B))
    )


def block_diag(S: InvolutiveSemiring, A: Matrix, B: Matrix) -> Matrix:
    n, m = len(A), len(B)
    rows = [tuple(A[i]) + tuple(S.zero for _ in range(m)) for i in range(n)]
    rows += [tuple(S.zero for _ in range(n)) + tuple(B[i]) for i in range(m)]
    return tuple(rows)


def matrix_json(S: InvolutiveSemiring, A: Matrix) -> List[List[Any]]:
    return [[S.encode(a) for a in row] for row in A]


# Modules and vectors

@dataclass(frozen=True)
class FreeModule:
    """Free S-module with named basis."""
    scalars: InvolutiveSemiring
    basis: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if len(set(self.basis)) != len(self.basis):
            raise InputError(f"basis names must be distinct: {list(self.basis)}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, name: str) -> int:
        try:
            return self.basis.index(name)
        except ValueError:
            raise InputError(f"unknown basis element {name!r}; expected one of {list(self.basis)}")


def mk_module(S: InvolutiveSemiring, dim: int, prefix: str = "e") -> FreeModule:
    if dim < 0:
        raise InputError("dimension must be non-negative")
    return FreeModule(S, tuple(f"{prefix}{k + 1}" for k in range(dim)))


def _require_same_scalars(a: FreeModule, b: FreeModule) -> InvolutiveSemiring:
    if a.scalars != b.scalars:
        raise ScalarMismatchError(f"scalar mismatch: {a.scalars.name} vs {b.scalars.name}")
    return a.scalars


def _require_module(expected: FreeModule, got: FreeModule, what: str = "vector") -> None:
    _require_same_scalars(expected, got)
    if expected.dim != got.dim:
        raise InputError(f"{what} of dimension {got.dim} where {expected.dim} was expected")


@dataclass(frozen=True)
class Vector:
    module: FreeModule
    coords: Tuple[Any, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if len(self.coords) != self.module.dim:
            raise InputError(f"expected {self.module.dim} coordinates, got {len(self.coords)}")
        for c in self.coords:
            self.module.scalars.validate(c)

    def sort_key(self) -> str:
        return json.dumps([self.module.scalars.encode(c) for c in self.coords], sort_keys=True)

    def __str__(self) -> str:
        S = self.module.scalars
        terms = [
            name if c == S.one else f"({S.format(c)}){name}"
            for name, c in zip(self.module.basis, self.coords) if not S.is_zero(c)
        ]
        return " + ".join(terms) if terms else "0"


def vec_zero(module: FreeModule) -> Vector:
    return Vector(module, tuple(module.scalars.zero for _ in range(module.dim)))


def basis_vector(module: FreeModule, i: int) -> Vector:
    S = module.scalars
    return Vector(module, tuple(S.one if k == i else S.zero for k in range(module.dim)))


def basis_vectors(module: FreeModule) -> List[Vector]:
    return [basis_vector(module, i) for i in range(module.dim)]


def vec_add(x: Vector, y: Vector) -> Vector:
    _require_module(x.module, y.module)
    S = x.module.scalars
    return Vector(x.module, tuple(S.add(a, b) for a, b in zip(x.coords, y.coords)))


def vec_scale(s: Any, x: Vector) -> Vector:
    S = x.module.scalars
    S.validate(s)
    return Vector(x.module, tuple(S.mul(s, c) for c in x.coords))


def vec_sum(module: FreeModule, vectors: Sequence[Vector]) -> Vector:
    total = vec_zero(module)
    for v in vectors:
        total = vec_add(total, v)
    return total


def conj_vector(x: Vector) -> Vector:
    """Entrywise conjugation: the identity-on-elements map into the conjugate module."""
    S = x.module.scalars
    return Vector(x.module, tuple(S.conj(c) for c in x.coords))


def sample_vector(module: FreeModule, rng: random.Random) -> Vector:
    S = module.scalars
    return Vector(module, tuple(S.sample(rng) for _ in range(module.dim)))


def all_vectors(module: FreeModule) -> List[Vector]:
    S = module.scalars
    if not S.is_enumerable:
        raise PreconditionError(f"{S.name} is not enumerable")
    return [Vector(module, coords) for coords in product(S.elements, repeat=module.dim)]


# Maps

class Side(Enum):
    LINEAR = "linear"
    CONJ_DOMAIN = "conj-domain"
    CONJ_CODOMAIN = "conj-codomain"

    @property
    def antilinear(self) -> bool:
        return self is not Side.LINEAR


@dataclass(frozen=True)
class LinMap:
    dom: FreeModule
    cod: FreeModule
    matrix: Matrix
    side: Side = Side.LINEAR

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_matrix(self.matrix))
        _require_same_scalars(self.dom, self.cod)
        if len(self.matrix) != self.cod.dim or any(len(r) != self.dom.dim for r in self.matrix):
            raise InputError(
                f"matrix shape does not match {self.cod.dim}x{self.dom.dim}"
            )

    @property
    def scalars(self) -> InvolutiveSemiring:
        return self.dom.scalars


def apply(f: LinMap, x: Vector) -> Vector:
    _require_module(f.dom, x.module)
    coords = conj_vector(x).coords if f.side.antilinear else x.coords
    return Vector(f.cod, mat_vec(f.scalars, f.matrix, coords))


def identity_map(module: FreeModule) -> LinMap:
    return LinMap(module, module, identity_matrix(module.scalars, module.dim))


def zero_map(dom: FreeModule, cod: FreeModule) -> LinMap:
    return LinMap(dom, cod, zero_matrix(dom.scalars, cod.dim, dom.dim))


def compose(g: LinMap, f: LinMap) -> LinMap:
    """g . f, tracking antilinearity: two antilinear maps compose to a linear one."""
    _require_module(g.dom, f.cod, "map")
    S = f.scalars
    if not g.side.antilinear:
        return LinMap(f.dom, g.cod, mat_mul(S, g.matrix, f.matrix), f.side)
    matrix = mat_mul(S, g.matrix, mat_conj(S, f.matrix))
    side = Side.LINEAR if f.side.antilinear else g.side
    return LinMap(f.dom, g.cod, matrix, side)


def map_add(f: LinMap, g: LinMap) -> LinMap:
    if f.side is not g.side:
        raise InputError("cannot add a linear and an antilinear map")
    return LinMap(f.dom, f.cod, mat_add(f.scalars, f.matrix, g.matrix), f.side)


def conj_linmap(f: LinMap) -> LinMap:
    """The conjugate map between conjugate modules: entrywise conjugated matrix."""
    return LinMap(f.dom, f.cod, mat_conj(f.scalars, f.matrix), f.side)


def as_antilinear(f: LinMap) -> LinMap:
    """Read a linear matrix as a map out of the conjugate module."""
    if f.side is not Side.LINEAR:
        raise PreconditionError("map is already antilinear")
    return LinMap(f.dom, f.cod, f.matrix, Side.CONJ_DOMAIN)


def transpose(f: LinMap) -> LinMap:
    """Hom(X-bar, Y) <-> Hom(X, Y-bar). The carrier function, hence the matrix, is unchanged."""
    if f.side is Side.CONJ_DOMAIN:
        return LinMap(f.dom, f.cod, f.matrix, Side.CONJ_CODOMAIN)
    if f.side is Side.CONJ_CODOMAIN:
        return LinMap(f.dom, f.cod, f.matrix, Side.CONJ_DOMAIN)
    raise PreconditionError("transpose expects a map with a conjugated side")


# Tensor and biproduct

def tensor_module(m1: FreeModule, m2: FreeModule) -> FreeModule:
    S = _require_same_scalars(m1, m2)
    return FreeModule(S, tuple(f"({a},{b})" for a in m1.basis for b in m2.basis))


def tensor_vector(x: Vector, y: Vector) -> Vector:
    S = _require_same_scalars(x.module, y.module)
    module = tensor_module(x.module, y.module)
    return Vector(module, tuple(S.mul(a, b) for a in x.coords for b in y.coords))


def tensor_map(f: LinMap, g: LinMap) -> LinMap:
    if f.side is not g.side:
        raise PreconditionError("tensor of maps with different sides")
    S = _require_same_scalars(f.dom, g.dom)
    return LinMap(
        tensor_module(f.dom, g.dom), tensor_module(f.cod, g.cod),
        kron(S, f.matrix, g.matrix), f.side,
    )


@dataclass(frozen=True)
class Biproduct:
    module: FreeModule
    inj1: LinMap
    inj2: LinMap
    proj1: LinMap
    proj2: LinMap


def biproduct(m1: FreeModule, m2: FreeModule) -> Biproduct:
    S = _require_same_scalars(m1, m2)
    d1, d2 = m1.dim, m2.dim
    names = tuple(f"1.{b}" for b in m1.basis) + tuple(f"2.{b}" for b in m2.basis)
    module = FreeModule(S, names)

    def unit(i, j):
        return S.one if i == j else S.zero

    inj1 = LinMap(m1, module, [[unit(r, c) for c in range(d1)] for r in range(d1 + d2)])
    inj2 = LinMap(m2, module, [[unit(r, c + d1) for c in range(d2)] for r in range(d1 + d2)])
    proj1 = LinMap(module, m1, mat_transpose(inj1.matrix))
    proj2 = LinMap(module, m2, mat_transpose(inj2.matrix))
    return Biproduct(module, inj1, inj2, proj1, proj2)


# Self-conjugates

@dataclass(frozen=True)
class SelfConjugate:
    """A module with an antilinear involution x -> J conj(x); valid iff J conj(J) = I."""
    module: FreeModule
    J: Matrix

    def __post_init__(self):
        object.__setattr__(self, "J", as_matrix(self.J))
        n = self.module.dim
        if len(self.J) != n or any(len(r) != n for r in self.J):
            raise InputError(f"J must be {n}x{n}")
        for row in self.J:
            for a in row:
                self.module.scalars.validate(a)

    @property
    def scalars(self) -> InvolutiveSemiring:
        return self.module.scalars

    @property
    def dim(self) -> int:
        return self.module.dim

    def is_valid(self) -> bool:
        S = self.scalars
        return mat_mul(S, self.J, mat_conj(S, self.J)) == identity_matrix(S, self.dim)

    def require_valid(self) -> "SelfConjugate":
        if not self.is_valid():
            S = self.scalars
            raise ConditionViolation(
                "J conj(J) is not the identity",
                {"J": matrix_json(S, self.J), "J_conjJ": matrix_json(S, mat_mul(S, self.J, mat_conj(S, self.J)))},
            )
        return self

    def as_map(self) -> LinMap:
        return LinMap(self.module, self.module, self.J, Side.CONJ_DOMAIN)


def sc_apply(c: SelfConjugate, x: Vector) -> Vector:
    return apply(c.as_map(), x)


def std_selfconj(module: FreeModule) -> SelfConjugate:
    """Coordinatewise conjugation."""
    return SelfConjugate(module, identity_matrix(module.scalars, module.dim))


def sc_involution(c: SelfConjugate) -> SelfConjugate:
    return SelfConjugate(c.module, mat_conj(c.scalars, c.J))


def tensor(c1: SelfConjugate, c2: SelfConjugate) -> SelfConjugate:
    S = _require_same_scalars(c1.module, c2.module)
    return SelfConjugate(tensor_module(c1.module, c2.module), kron(S, c1.J, c2.J))


def biproduct_selfconj(c1: SelfConjugate, c2: SelfConjugate) -> SelfConjugate:
    S = _require_same_scalars(c1.module, c2.module)
    return SelfConjugate(biproduct(c1.module, c2.module).module, block_diag(S, c1.J, c2.J))


def hom_module(X: FreeModule, Y: FreeModule) -> FreeModule:
    """Matrices Y <- X, row-major: entry (r, c) is basis element r * dim X + c."""
    S = _require_same_scalars(X, Y)
    return FreeModule(S, tuple(f"{y}<{x}" for y in Y.basis for x in X.basis))


def map_to_vector(F: LinMap) -> Vector:
    return Vector(hom_module(F.dom, F.cod), tuple(a for row in F.matrix for a in row))


def vector_to_map(v: Vector, X: FreeModule, Y: FreeModule) -> LinMap:
    _require_module(hom_module(X, Y), v.module)
    d = X.dim
    return LinMap(X, Y, [v.coords[r * d:(r + 1) * d] for r in range(Y.dim)])


def hom_selfconj(cX: SelfConjugate, cY: SelfConjugate) -> SelfConjugate:
    """Involution F -> J_Y conj(F) conj(J_X) on the hom-module, as kron(J_Y, conj(J_X)^T)."""
    S = _require_same_scalars(cX.module, cY.module)
    J = kron(S, cY.J, mat_transpose(mat_conj(S, cX.J)))
    return SelfConjugate(hom_module(cX.module, cY.module), J)


def hom_involve(cX: SelfConjugate, cY: SelfConjugate, F: LinMap) -> LinMap:
    S = F.scalars
    G = mat_mul(S, mat_mul(S, cY.J, mat_conj(S, F.matrix)), mat_conj(S, cX.J))
    return LinMap(F.dom, F.cod, G)


def check_selfconj(c: SelfConjugate, rng: random.Random = None, samples: int = 20) -> Report:
    """Validity of J and antilinearity of x -> J conj(x)."""
    rng = rng or random.Random(0)
    S = c.scalars
    report = Report("conjmod", f"selfconj/{S.name}/dim{c.dim}")
    report.check("J_conjJ_identity", c.is_valid(), lambda: {"J": matrix_json(S, c.J)})
    for x in basis_vectors(c.module):
        report.check("self_inverse", sc_apply(c, sc_apply(c, x)) == x, lambda x=x: {"x": list(map(S.encode, x.coords))})
    for _ in range(samples):
        x, y = sample_vector(c.module, rng), sample_vector(c.module, rng)
        s, t = S.sample(rng), S.sample(rng)
        lhs = sc_apply(c, vec_add(vec_scale(s, x), vec_scale(t, y)))
        rhs = vec_add(vec_scale(S.conj(s), sc_apply(c, x)), vec_scale(S.conj(t), sc_apply(c, y)))
        report.check("antilinear", lhs == rhs, lambda x=x, y=y, s=s, t=t: {
            "x": list(map(S.encode, x.coords)), "y": list(map(S.encode, y.coords)),
            "s": S.encode(s), "t": S.encode(t),
        })
    return report


def check_hom_evaluation(cX: SelfConjugate, cY: SelfConjugate, exhaustive: bool = True) -> Report:
    """
    ev(x, j(F)) = j_Y(ev(j_X(x), F)) on basis x and all F (or basis F when
    the scalars are not enumerable or exhaustive is False), plus the
    involution law on the hom-module.
    """
    S = _require_same_scalars(cX.module, cY.module)
    X, Y = cX.module, cY.module
    report = Report("conjmod", f"hom/{S.name}/{X.dim}x{Y.dim}")
    H = hom_module(X, Y)
    cH = hom_selfconj(cX, cY)
    if exhaustive and S.is_enumerable and H.dim <= 4:
        Fs = [vector_to_map(v, X, Y) for v in all_vectors(H)]
    else:
        Fs = [vector_to_map(v, X, Y) for v in basis_vectors(H)]

    for F in Fs:
        G = hom_involve(cX, cY, F)
        w = lambda F=F: {"F": matrix_json(S, F.matrix)}
        report.check("hom_matrix_formula", map_to_vector(G) == sc_apply(cH, map_to_vector(F)), w)
        report.check("hom_involutive", hom_involve(cX, cY, G) == F, w)
        for x in basis_vectors(X):
            report.check(
                "evaluation",
                apply(G, x) == sc_apply(cY, apply(F, sc_apply(cX, x))),
                lambda F=F, x=x: {"F": matrix_json(S, F.matrix), "x": list(map(S.encode, x.coords))},
            )
    return report


def nontrivial_selfconjs(module: FreeModule) -> List[SelfConjugate]:
    """A few valid non-identity J's: the basis swap and diag(i, 1) where i exists."""
    S = module.scalars
    out = []
    n = module.dim
    if n >= 2:
        swap = [list(r) for r in identity_matrix(S, n)]
        swap[0][0], swap[0][1], swap[1][0], swap[1][1] = S.zero, S.one, S.one, S.zero
        out.append(SelfConjugate(module, swap))
    imaginary = _imaginary_unit(S)
    if imaginary is not None and n >= 1:
        diag = [list(r) for r in identity_matrix(S, n)]
        diag[0][0] = imaginary
        out.append(SelfConjugate(module, diag))
    return [c for c in out if c.is_valid()]


def _imaginary_unit(S: InvolutiveSemiring) -> Any:
    try:
        candidate = S.decode({"re": "0", "im": "1"}) if S.name == "gauss" else S.decode({"re": 0, "im": 1})
    except InputError:
        return None
    return candidate if S.conj(candidate) != candidate else None


def conjmod_law_check(S: InvolutiveSemiring, sample_budget: int = 1000, rng: random.Random = None, max_dim: int = 3) -> Report:
    """Conjugate-module laws: antilinearity, functoriality, biproduct and Kronecker compatibility, hom involution."""
    if sample_budget < 1:
        raise InputError("sample_budget must be at least 1")
    rng = rng or random.Random(0)
    report = Report("conjmod", S.name)
    enc = lambda x: [S.encode(c) for c in x.coords]

    modules = [mk_module(S, d) for d in range(1, max_dim + 1)]
    for _ in range(sample_budget):
        X = rng.choice(modules)
        x, s = sample_vector(X, rng), S.sample(rng)
        report.check(
            "antilinear_scalar_action",
            conj_vector(vec_scale(s, x)) == vec_scale(S.conj(s), conj_vector(x)),
            lambda x=x, s=s: {"x": enc(x), "s": S.encode(s)},
        )
        report.check("conj_vector_involutive", conj_vector(conj_vector(x)) == x, lambda x=x: {"x": enc(x)})

    def sample_map(dom, cod):
        return LinMap(dom, cod, [[S.sample(rng) for _ in range(dom.dim)] for _ in range(cod.dim)])

    for _ in range(min(sample_budget, 200)):
        X, Y, Z = rng.choice(modules), rng.choice(modules), rng.choice(modules)
        f, g = sample_map(X, Y), sample_map(Y, Z)
        report.check(
            "conj_linmap_functorial",
            conj_linmap(compose(g, f)) == compose(conj_linmap(g), conj_linmap(f)),
            lambda f=f, g=g: {"f": matrix_json(S, f.matrix), "g": matrix_json(S, g.matrix)},
        )
        x = sample_vector(X, rng)
        report.check(
            "transpose_interpretation",
            apply(as_antilinear(f), x) == apply(f, conj_vector(x)),
            lambda f=f, x=x: {"f": matrix_json(S, f.matrix), "x": enc(x)},
        )
        anti = as_antilinear(f)
        report.check("double_transpose", transpose(transpose(anti)) == anti, lambda f=f: {"f": matrix_json(S, f.matrix)})
        A = [[S.sample(rng) for _ in range(X.dim)] for _ in range(X.dim)]
        B = [[S.sample(rng) for _ in range(Y.dim)] for _ in range(Y.dim)]
        report.check(
            "kron_conj",
            mat_conj(S, kron(S, as_matrix(A), as_matrix(B))) == kron(S, mat_conj(S, as_matrix(A)), mat_conj(S, as_matrix(B))),
            lambda A=A, B=B: {"A": matrix_json(S, as_matrix(A)), "B": matrix_json(S, as_matrix(B))},
        )
        y = sample_vector(Y, rng)
        s = S.sample(rng)
        report.check(
            "tensor_bilinear",
            tensor_vector(vec_scale(s, x), y) == vec_scale(s, tensor_vector(x, y)) == tensor_vector(x, vec_scale(s, y)),
            lambda x=x, y=y, s=s: {"x": enc(x), "y": enc(y), "s": S.encode(s)},
        )
        report.check(
            "tensor_conj",
            conj_vector(tensor_vector(x, y)) == tensor_vector(conj_vector(x), conj_vector(y)),
            lambda x=x, y=y: {"x": enc(x), "y": enc(y)},
        )

    for X in modules:
        report.check("conj_identity", conj_linmap(identity_map(X)) == identity_map(X), {"dim": X.dim})
        for Y in modules:
            bp = biproduct(X, Y)
            tag = {"dims": [X.dim, Y.dim]}
            report.check("biproduct_p1k1", compose(bp.proj1, bp.inj1) == identity_map(X), tag)
            report.check("biproduct_p2k2", compose(bp.proj2, bp.inj2) == identity_map(Y), tag)
            report.check("biproduct_p1k2", compose(bp.proj1, bp.inj2) == zero_map(Y, X), tag)
            report.check("biproduct_p2k1", compose(bp.proj2, bp.inj1) == zero_map(X, Y), tag)
            report.check(
                "biproduct_sum",
                map_add(compose(bp.inj1, bp.proj1), compose(bp.inj2, bp.proj2)) == identity_map(bp.module),
                tag,
            )
            for m in (bp.inj1, bp.inj2, bp.proj1, bp.proj2):
                report.check("biproduct_conj", conj_linmap(m) == m, tag)

            for cX in [std_selfconj(X)] + nontrivial_selfconjs(X):
                for cY in [std_selfconj(Y)] + nontrivial_selfconjs(Y):
                    tag2 = {"JX": matrix_json(S, cX.J), "JY": matrix_json(S, cY.J)}
                    report.check("tensor_selfconj_valid", tensor(cX, cY).is_valid(), tag2)
                    bsc = biproduct_selfconj(cX, cY)
                    report.check("biproduct_selfconj_valid", bsc.is_valid(), tag2)
                    report.check(
                        "biproduct_selfconj_conj",
                        sc_involution(bsc).J == biproduct_selfconj(sc_involution(cX), sc_involution(cY)).J,
                        tag2,
                    )
                    for x in basis_vectors(X):
                        report.check(
                            "biproduct_selfconj_injection",
                            sc_apply(bsc, apply(bp.inj1, x)) == apply(bp.inj1, sc_apply(cX, x)),
                            tag2,
                        )
                    if X.dim <= 2 and Y.dim <= 2:
                        report.merge(check_hom_evaluation(cX, cY, exhaustive=False))

    for X in modules:
        for c in [std_selfconj(X)] + nontrivial_selfconjs(X):
            report.merge(check_selfconj(c, rng, samples=5))
    return report


def _bilinear_eval(S: InvolutiveSemiring, beta: List[List[Vector]], x: Vector, y: Vector, Z: FreeModule) -> Vector:
    terms = [
        vec_scale(S.mul(a, b), beta[i][j])
        for i, a in enumerate(x.coords) for j, b in enumerate(y.coords)
    ]
    return vec_sum(Z, terms)


def _basis_index(t: Vector) -> Optional[int]:
    """k when t is the k-th basis vector, otherwise None."""
    S = t.module.scalars
    nonzero = [k for k, c in enumerate(t.coords) if not S.is_zero(c)]
    if len(nonzero) == 1 and t.coords[nonzero[0]] == S.one:
        return nonzero[0]
    return None


def bilinear_universal_check(X: FreeModule, Y: FreeModule, Z: FreeModule, budget: int = 1000, rng: random.Random = None) -> Report:
    """
    Every bilinear map X x Y -> Z factors through exactly one linear map on
    the tensor X (x) Y. Bilinear maps are enumerated when there are at most
    10000 of them and sampled otherwise. Uniqueness is checked directly: the
    images of the basis pairs must be the basis of the tensor, and the linear
    map rebuilt from beta on those images must be h.
    """
    S = _require_same_scalars(X, Y)
    _require_same_scalars(Y, Z)
    if max(X.dim, Y.dim, Z.dim) > 2:
        raise PreconditionError("bilinear_universal_check supports dimensions up to 2")
    rng = rng or random.Random(0)
    report = Report("bimorphism", f"{S.name}/{X.dim}x{Y.dim}->{Z.dim}")
    T = tensor_module(X, Y)
    pairs = [(i, j) for i in range(X.dim) for j in range(Y.dim)]
    n_entries = len(pairs) * Z.dim

    if S.is_enumerable and len(S.elements) ** n_entries <= 10000:
        assignments = product(S.elements, repeat=n_entries)
    else:
        assignments = (tuple(S.sample(rng) for _ in range(n_entries)) for _ in range(budget))

    pair_index = []
    for i, j in pairs:
        k = _basis_index(tensor_vector(basis_vector(X, i), basis_vector(Y, j)))
        pair_index.append(k)
        report.check("tensor_basis", k == i * Y.dim + j, {"pair": [X.basis[i], Y.basis[j]]})
    spanning = sorted(k for k in pair_index if k is not None) == list(range(T.dim))

    for values in assignments:
        beta = [[None] * Y.dim for _ in range(X.dim)]
        for k, (i, j) in enumerate(pairs):
            beta[i][j] = Vector(Z, values[k * Z.dim:(k + 1) * Z.dim])
        h = LinMap(T, Z, [[beta[i][j].coords[r] for i, j in pairs] for r in range(Z.dim)])
        w = lambda beta=beta: {"beta": [[[S.encode(c) for c in v.coords] for v in row] for row in beta]}

        for i, j in pairs:
            ex, ey = basis_vector(X, i), basis_vector(Y, j)
            report.check("factorization", apply(h, tensor_vector(ex, ey)) == beta[i][j], w)

        # a linear map agreeing with beta on the pair images is fixed column by column
        forced = None
        if spanning:
            columns = [None] * T.dim
            for (i, j), k in zip(pairs, pair_index):
                columns[k] = beta[i][j].coords
            forced = as_matrix([[columns[k][r] for k in range(T.dim)] for r in range(Z.dim)])
        report.check("unique_factorization", forced == h.matrix, w)

        for _ in range(2):
            x, y = sample_vector(X, rng), sample_vector(Y, rng)
            report.check(
                "bilinear_extension",
                apply(h, tensor_vector(x, y)) == _bilinear_eval(S, beta, x, y, Z),
                lambda beta=beta, x=x, y=y: dict(w(beta), x=[S.encode(c) for c in x.coords], y=[S.encode(c) for c in y.coords]),
            )
    return report
