"""
Star algebras presented by structure constants.

A StarAlgebra is a free module with basis e_1..e_n, a unit vector u,
structure constants c with e_i e_j = sum_k c[i][j][k] e_k, and an
involution a -> J conj(a) stored as a SelfConjugate. Laws are checked on
basis tuples, which suffices by (anti)linearity.
"""

import random
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .errors import ConditionViolation, InputError, PreconditionError
from .fmod import (
    FreeModule, LinMap, Matrix, SelfConjugate, Vector, apply, basis_vector,
    basis_vectors, compose, identity_map, identity_matrix, mat_conj, mat_mul, mat_vec,
    matrix_json, sample_vector, sc_apply, std_selfconj, tensor, tensor_map, tensor_module,
)
from .report import Report
from .scalars import InvolutiveSemiring
from .words import Mode

StructConst = Tuple[Tuple[Tuple[Any, ...], ...], ...]


@dataclass(frozen=True)
class StarAlgebra:
    """An involutive monoid in Mod_S given by structure constants."""
    module: FreeModule
    unit: Vector
    structconst: StructConst
    invol: SelfConjugate
    mode: Mode
    name: str = "algebra"
    _table: Tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.module.dim
        c = tuple(tuple(tuple(k) for k in j) for j in self.structconst)
        if len(c) != n or any(len(row) != n or any(len(cell) != n for cell in row) for row in c):
            raise InputError(f"structure constants must be a {n}x{n}x{n} array")
        if self.unit.module != self.module:
            raise InputError("unit vector lives in a different module")
        if self.invol.module != self.module:
            raise InputError("involution lives in a different module")
        S = self.module.scalars
        for row in c:
            for cell in row:
                for value in cell:
                    S.validate(value)
        object.__setattr__(self, "structconst", c)
        object.__setattr__(self, "mode", Mode.parse(self.mode))
        # nonzero products only; alg_mul iterates this
        table = tuple(
            tuple(tuple((k, v) for k, v in enumerate(c[i][j]) if not S.is_zero(v)) for j in range(n))
            for i in range(n)
        )
        object.__setattr__(self, "_table", table)

    @property
    def scalars(self) -> InvolutiveSemiring:
        return self.module.scalars

    @property
    def dim(self) -> int:
        return self.module.dim

    def e(self, name_or_index: Any) -> Vector:
        index = self.module.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        return basis_vector(self.module, index)

    def mult_map(self) -> LinMap:
        """m: M (x) M -> M as an n x n^2 matrix."""
        n = self.dim
        rows = [[self.structconst[i][j][k] for i in range(n) for j in range(n)] for k in range(n)]
        return LinMap(tensor_module(self.module, self.module), self.module, rows)

    def unit_map(self) -> LinMap:
        one = FreeModule(self.scalars, ("1",))
        return LinMap(one, self.module, [[c] for c in self.unit.coords])


def alg_mul(A: StarAlgebra, x: Vector, y: Vector) -> Vector:
    for v in (x, y):
        if v.module.dim != A.dim or v.module.scalars != A.scalars:
            raise InputError(f"vector of dimension {v.module.dim} does not belong to {A.name}")
    S = A.scalars
    out = [S.zero] * A.dim
    for i, a in enumerate(x.coords):
        if S.is_zero(a):
            continue
        for j, b in enumerate(y.coords):
            if S.is_zero(b):
                continue
            ab = S.mul(a, b)
            for k, v in A._table[i][j]:
                out[k] = S.add(out[k], S.mul(ab, v))
    return Vector(A.module, tuple(out))


def alg_involve(A: StarAlgebra, x: Vector) -> Vector:
    if x.module.dim != A.dim:
        raise InputError(f"vector of dimension {x.module.dim} does not belong to {A.name}")
    return sc_apply(A.invol, Vector(A.module, x.coords))


def is_commutative(A: StarAlgebra) -> bool:
    n = A.dim
    return all(A.structconst[i][j] == A.structconst[j][i] for i in range(n) for j in range(n))


def _mode_square_holds(A: StarAlgebra, mode: Mode, x: Vector, y: Vector) -> bool:
    lhs = alg_involve(A, alg_mul(A, x, y))
    jx, jy = alg_involve(A, x), alg_involve(A, y)
    rhs = alg_mul(A, jy, jx) if mode is Mode.REVERSING else alg_mul(A, jx, jy)
    return lhs == rhs


def mode_square_failures(A: StarAlgebra, mode: Mode) -> List[Tuple[str, str]]:
    """Basis pairs (a, b) where the involution square of `mode` fails."""
    mode = Mode.parse(mode)
    names = A.module.basis
    return [
        (names[i], names[j])
        for i in range(A.dim) for j in range(A.dim)
        if not _mode_square_holds(A, mode, A.e(i), A.e(j))
    ]


def check_star_laws(A: StarAlgebra, exhaustive_basis: bool = True, modes: Optional[Sequence[Mode]] = None, rng: random.Random = None, spot_checks: int = 10) -> Report:
    """Associativity, unit, J conj(J) = I, unit fixing and the involution square."""
    rng = rng or random.Random(0)
    S = A.scalars
    names = A.module.basis
    modes = [Mode.parse(m) for m in modes] if modes else [A.mode]
    report = Report("star", A.name)
    basis = basis_vectors(A.module)
    u = A.unit
    vec_json = lambda v: [S.encode(c) for c in v.coords]

    report.check("J_conjJ_identity", A.invol.is_valid(), lambda: {"J": matrix_json(S, A.invol.J)})
    report.check("unit_fixed", alg_involve(A, u) == u, lambda: {"unit": vec_json(u)})

    indices = range(A.dim) if exhaustive_basis else sorted(rng.sample(range(A.dim), min(A.dim, 3)))
    for i in indices:
        ei = basis[i]
        report.check("left_unit", alg_mul(A, u, ei) == ei, {"a": names[i]})
        report.check("right_unit", alg_mul(A, ei, u) == ei, {"a": names[i]})
        report.check("involutive", alg_involve(A, alg_involve(A, ei)) == ei, {"a": names[i]})
        for j in indices:
            ej = basis[j]
            for mode in modes:
                report.check(f"mode_square:{mode.value}", _mode_square_holds(A, mode, ei, ej), {"a": names[i], "b": names[j]})
            eij = alg_mul(A, ei, ej)
            for k in indices:
                ek = basis[k]
                report.check(
                    "associative",
                    alg_mul(A, eij, ek) == alg_mul(A, ei, alg_mul(A, ej, ek)),
                    {"a": names[i], "b": names[j], "c": names[k]},
                )

    for _ in range(spot_checks):
        x, y, z = (sample_vector(A.module, rng) for _ in range(3))
        w = lambda x=x, y=y, z=z: {"x": vec_json(x), "y": vec_json(y), "z": vec_json(z)}
        report.check("associative_spot", alg_mul(A, alg_mul(A, x, y), z) == alg_mul(A, x, alg_mul(A, y, z)), w)
        for mode in modes:
            report.check(f"mode_square_spot:{mode.value}", _mode_square_holds(A, mode, x, y), w)
    return report


def check_lemma52(A: StarAlgebra) -> Report:
    """
    Two independent readings of a non-reversing involutive monoid:
    route 1 checks the involution diagrams directly with J; route 2 checks
    that u and m are morphisms of self-conjugates (m against the tensored
    self-conjugate) and that (M, j) is one. The verdicts must agree.
    """
    if A.mode is not Mode.NON_REVERSING:
        raise PreconditionError(f"{A.name} is reversing; the self-conjugate reading needs a non-reversing algebra")
    S = A.scalars
    n = A.dim
    names = A.module.basis
    report = Report("lemma52", A.name)

    # route 1: diagrams, with J as a matrix
    J = A.invol.J
    report.check("route1:J_conjJ_identity", mat_mul(S, J, mat_conj(S, J)) == identity_matrix(S, n), lambda: {"J": matrix_json(S, J)})
    report.check("route1:unit_square", mat_vec(S, J, [S.conj(c) for c in A.unit.coords]) == A.unit.coords, lambda: {"J": matrix_json(S, J)})
    for i in range(n):
        ei = A.e(i)
        report.check("route1:left_unit", alg_mul(A, A.unit, ei) == ei, {"a": names[i]})
        report.check("route1:right_unit", alg_mul(A, ei, A.unit) == ei, {"a": names[i]})
    for i, j in product(range(n), repeat=2):
        ei, ej = A.e(i), A.e(j)
        lhs = mat_vec(S, J, [S.conj(c) for c in alg_mul(A, ei, ej).coords])
        rhs = alg_mul(A, alg_involve(A, ei), alg_involve(A, ej)).coords
        report.check("route1:mult_square", lhs == rhs, {"a": names[i], "b": names[j]})
        for k in range(n):
            ek = A.e(k)
            report.check(
                "route1:associative",
                alg_mul(A, alg_mul(A, ei, ej), ek) == alg_mul(A, ei, alg_mul(A, ej, ek)),
                {"a": names[i], "b": names[j], "c": names[k]},
            )

    # route 2: u and m as morphisms of self-conjugates
    jM = A.invol.as_map()
    m = A.mult_map()
    u = A.unit_map()
    jI = std_selfconj(u.dom).as_map()
    jMM = tensor(A.invol, A.invol).as_map()
    for x in basis_vectors(A.module):
        report.check("route2:selfconj", apply(jM, apply(jM, x)) == x, {"a": names[x.coords.index(S.one)]})
    report.check("route2:unit_morphism", compose(jM, u) == compose(u, jI), lambda: {"J": matrix_json(S, J)})
    lhs, rhs = compose(jM, m), compose(m, jMM)
    for col, (i, j) in enumerate(product(range(n), repeat=2)):
        report.check(
            "route2:mult_morphism",
            [row[col] for row in lhs.matrix] == [row[col] for row in rhs.matrix],
            {"a": names[i], "b": names[j]},
        )
    idM = identity_map(A.module)
    report.check("route2:associative", compose(m, tensor_map(m, idM)).matrix == compose(m, tensor_map(idM, m)).matrix)
    report.check("route2:left_unit", compose(m, tensor_map(u, idM)).matrix == idM.matrix)
    report.check("route2:right_unit", compose(m, tensor_map(idM, u)).matrix == idM.matrix)

    route1 = all(r.verdict == "pass" for law, r in report.results.items() if law.startswith("route1:"))
    route2 = all(r.verdict == "pass" for law, r in report.results.items() if law.startswith("route2:"))
    report.check("routes_agree", route1 == route2, {"route1": route1, "route2": route2})
    return report


def inject_fault(A: StarAlgebra, rng: random.Random) -> StarAlgebra:
    """Copy of A with one entry of J replaced by a different scalar."""
    S = A.scalars
    n = A.dim
    r, c = rng.randrange(n), rng.randrange(n)
    old = A.invol.J[r][c]
    new = old
    while new == old:
        new = S.sample(rng) if rng.random() < 0.5 else rng.choice([S.zero, S.one])
    J = [list(row) for row in A.invol.J]
    J[r][c] = new
    return StarAlgebra(A.module, A.unit, A.structconst, SelfConjugate(A.module, J), A.mode, f"{A.name}+fault({r},{c})")


# Instances

def _cube(S: InvolutiveSemiring, n: int) -> List[List[List[Any]]]:
    return [[[S.zero] * n for _ in range(n)] for _ in range(n)]


def _matrix_units(n: int) -> List[str]:
    sep = "" if n <= 9 else ","
    return [f"E{i + 1}{sep}{j + 1}" for i in range(n) for j in range(n)]


def _matrix_algebra(n: int, S: InvolutiveSemiring, transpose: bool, name: str) -> StarAlgebra:
    if n < 1:
        raise InputError("matrix size must be at least 1")
    module = FreeModule(S, tuple(_matrix_units(n)))
    d = n * n
    c = _cube(S, d)
    for i, j, l in product(range(n), repeat=3):
        # E_ij E_jl = E_il
        c[i * n + j][j * n + l][i * n + l] = S.one
    unit = Vector(module, tuple(S.one if (k // n) == (k % n) else S.zero for k in range(d)))
    if transpose:
        J = [[S.zero] * d for _ in range(d)]
        for i, j in product(range(n), repeat=2):
            J[j * n + i][i * n + j] = S.one
    else:
        J = identity_matrix(S, d)
    mode = Mode.REVERSING if transpose else Mode.NON_REVERSING
    return StarAlgebra(module, unit, c, SelfConjugate(module, J), mode, name)


def mk_matrix_algebra(n: int, S: InvolutiveSemiring) -> StarAlgebra:
    """Mat_n(S) with conjugate transpose (reversing)."""
    return _matrix_algebra(n, S, True, f"mat{n}-{S.name}")


def mk_entrywise_matrix_algebra(n: int, S: InvolutiveSemiring) -> StarAlgebra:
    """Mat_n(S) with entrywise conjugation (non-reversing)."""
    return _matrix_algebra(n, S, False, f"mat{n}e-{S.name}")


def validate_group_table(table: Sequence[Sequence[int]]) -> List[int]:
    """Check a multiplication table with identity 0; return the inverse of each element."""
    n = len(table)
    if n < 1 or any(len(row) != n for row in table):
        raise InputError("group table must be a non-empty square array")
    for row in table:
        for g in row:
            if isinstance(g, bool) or not isinstance(g, int) or not 0 <= g < n:
                raise InputError(f"group table entries must be integers 0..{n - 1}")
    for g in range(n):
        if table[0][g] != g or table[g][0] != g:
            raise ConditionViolation("element 0 is not the identity", {"element": g})
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise ConditionViolation("group table is not associative", {"a": a, "b": b, "c": c})
    inverses = []
    for g in range(n):
        inv = [h for h in range(n) if table[g][h] == 0 and table[h][g] == 0]
        if not inv:
            raise ConditionViolation("element has no inverse", {"element": g})
        inverses.append(inv[0])
    return inverses


def mk_group_algebra(group_table: Sequence[Sequence[int]], S: InvolutiveSemiring, names: Optional[Sequence[str]] = None, name: str = "group") -> StarAlgebra:
    """S[G] with e_g -> e_{g^-1} and conjugated coefficients (reversing)."""
    inverses = validate_group_table(group_table)
    n = len(group_table)
    names = list(names) if names is not None else [f"g{k}" for k in range(n)]
    if len(names) != n:
        raise InputError(f"expected {n} element names")
    module = FreeModule(S, tuple(names))
    c = _cube(S, n)
    for g, h in product(range(n), repeat=2):
        c[g][h][group_table[g][h]] = S.one
    J = [[S.zero] * n for _ in range(n)]
    for g in range(n):
        J[inverses[g]][g] = S.one
    return StarAlgebra(module, basis_vector(module, 0), c, SelfConjugate(module, J), Mode.REVERSING, name)


def cyclic_group(n: int) -> Tuple[List[List[int]], List[str]]:
    """Z/n as (table, names) with names 1, g, g2, ..."""
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = ["1"] + ["g" if k == 1 else f"g{k}" for k in range(1, n)]
    return table, names


def symmetric_group_3() -> Tuple[List[List[int]], List[str]]:
    """S3 as (table, names); names are one-line permutations, 012 first; (pq)(i) = p(q(i))."""
    perms = sorted(permutations(range(3)))
    index = {p: k for k, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    return table, ["".join(map(str, p)) for p in perms]


def mk_function_algebra(k: int, S: InvolutiveSemiring) -> StarAlgebra:
    """S^k with pointwise operations; commutative, stored non-reversing."""
    if k < 1:
        raise InputError("function algebra needs at least one point")
    module = FreeModule(S, tuple(f"d{p + 1}" for p in range(k)))
    c = _cube(S, k)
    for p in range(k):
        c[p][p][p] = S.one
    unit = Vector(module, tuple(S.one for _ in range(k)))
    return StarAlgebra(module, unit, c, std_selfconj(module), Mode.NON_REVERSING, f"fun{k}-{S.name}")


# Involutive actions

@dataclass(frozen=True)
class InvolutiveAction:
    """act[a] is the matrix of x -> e_a . x on the space."""
    algebra: StarAlgebra
    space: SelfConjugate
    act: Tuple[Matrix, ...]
    name: str = "action"

    def __post_init__(self):
        n, d = self.algebra.dim, self.space.dim
        act = tuple(tuple(tuple(r) for r in m) for m in self.act)
        if len(act) != n or any(len(m) != d or any(len(r) != d for r in m) for m in act):
            raise InputError(f"action must be a {n}x{d}x{d} array")
        object.__setattr__(self, "act", act)


def act_apply(action: InvolutiveAction, a: Vector, x: Vector) -> Vector:
    S = action.algebra.scalars
    out = [S.zero] * action.space.dim
    for i, coeff in enumerate(a.coords):
        if S.is_zero(coeff):
            continue
        image = mat_vec(S, action.act[i], x.coords)
        out = [S.add(o, S.mul(coeff, v)) for o, v in zip(out, image)]
    return Vector(action.space.module, tuple(out))


def regular_action(A: StarAlgebra) -> InvolutiveAction:
    """A acting on itself by left multiplication."""
    n = A.dim
    act = [[[A.structconst[a][j][k] for j in range(n)] for k in range(n)] for a in range(n)]
    return InvolutiveAction(A, A.invol, act, f"{A.name}/regular")


def column_action(A: StarAlgebra, n: int) -> InvolutiveAction:
    """Entrywise-conjugation Mat_n acting on column vectors S^n with coordinatewise conj."""
    S = A.scalars
    if A.dim != n * n:
        raise InputError(f"{A.name} is not a {n}x{n} matrix algebra")
    space = std_selfconj(FreeModule(S, tuple(f"x{k + 1}" for k in range(n))))
    act = []
    for i, j in product(range(n), repeat=2):
        act.append([[S.one if (r == i and col == j) else S.zero for col in range(n)] for r in range(n)])
    return InvolutiveAction(A, space, act, f"{A.name}/columns")


def check_action(action: InvolutiveAction) -> Report:
    """Unit, associativity and compatibility j_X(a.x) = a* . j_X(x) on basis pairs."""
    A = action.algebra
    if A.mode is not Mode.NON_REVERSING:
        raise PreconditionError(f"involutive actions need a non-reversing algebra; {A.name} is {A.mode.value}")
    S = A.scalars
    names, xnames = A.module.basis, action.space.module.basis
    report = Report("star", action.name)
    xs = basis_vectors(action.space.module)
    for c, x in enumerate(xs):
        report.check("action_unit", act_apply(action, A.unit, x) == x, {"x": xnames[c]})
        for i in range(A.dim):
            ei = A.e(i)
            lhs = sc_apply(action.space, act_apply(action, ei, x))
            rhs = act_apply(action, alg_involve(A, ei), sc_apply(action.space, x))
            report.check("action_compatible", lhs == rhs, {"a": names[i], "x": xnames[c]})
            for j in range(A.dim):
                ej = A.e(j)
                report.check(
                    "action_associative",
                    act_apply(action, alg_mul(A, ei, ej), x) == act_apply(action, ei, act_apply(action, ej, x)),
                    {"a": names[i], "b": names[j], "x": xnames[c]},
                )
    return report


def algebra_instances(S: InvolutiveSemiring) -> Dict[str, StarAlgebra]:
    """The shipped algebras over S, keyed by instance name."""
    z2, z2_names = cyclic_group(2)
    z3, z3_names = cyclic_group(3)
    s3, s3_names = symmetric_group_3()
    algebras = [
        mk_matrix_algebra(2, S),
        mk_matrix_algebra(3, S),
        mk_entrywise_matrix_algebra(2, S),
        mk_group_algebra(z2, S, z2_names, f"z2-{S.name}"),
        mk_group_algebra(z3, S, z3_names, f"z3-{S.name}"),
        mk_group_algebra(s3, S, s3_names, f"s3-{S.name}"),
        mk_function_algebra(1, S),
        mk_function_algebra(2, S),
        mk_function_algebra(3, S),
    ]
    return {a.name: a for a in algebras}
