"""
Correspondence between hermitian functionals and sesquilinear forms.

A hermitian functional f on a star algebra A with values in a
self-conjugate X induces the form p(a, b) = f(a* b). Conversely a form
satisfying

    (a)  j_X(p(u, a)) = p(a, u)
    (b)  p(a b, c) = p(b, a* c)      (reversing algebras)
         p(a b, c) = p(a, b* c)      (non-reversing algebras)

comes from the functional f(a) = p(u, a). The two forms of (b) agree on
commutative algebras.
"""

import random
from dataclasses import dataclass
from itertools import product
from typing import Any, List, Optional, Sequence, Set, Tuple

from .errors import ConditionViolation, InputError, PreconditionError
from .fmod import (
    FreeModule, SelfConjugate, Vector, all_vectors, basis_vectors, conj_vector,
    sample_vector, sc_apply, std_selfconj, vec_add, vec_scale, vec_sum, vec_zero,
)
from .report import Report
from .scalars import InvolutiveSemiring
from .staralg import StarAlgebra, alg_involve, alg_mul, is_commutative
from .words import Mode


def scalars_selfconj(S: InvolutiveSemiring) -> SelfConjugate:
    """S itself as a one-dimensional self-conjugate with conjugation."""
    return std_selfconj(FreeModule(S, ("1",)))


@dataclass(frozen=True)
class HermitianFunctional:
    """Values f(e_i) in the codomain, one per algebra basis element."""
    algebra: StarAlgebra
    codomain: SelfConjugate
    values: Tuple[Vector, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.algebra.dim:
            raise InputError(f"expected {self.algebra.dim} values, got {len(self.values)}")
        for v in self.values:
            if v.module != self.codomain.module:
                raise InputError("functional value outside the codomain module")


@dataclass(frozen=True)
class SesquiForm:
    """Gram array G[i][j] = p(e_i, e_j) of codomain vectors."""
    algebra: StarAlgebra
    codomain: SelfConjugate
    gram: Tuple[Tuple[Vector, ...], ...]

    def __post_init__(self):
        gram = tuple(tuple(row) for row in self.gram)
        n = self.algebra.dim
        if len(gram) != n or any(len(row) != n for row in gram):
            raise InputError(f"Gram array must be {n}x{n}")
        for row in gram:
            for v in row:
                if v.module != self.codomain.module:
                    raise InputError("Gram entry outside the codomain module")
        object.__setattr__(self, "gram", gram)


def mk_functional(A: StarAlgebra, values: Sequence[Any], codomain: Optional[SelfConjugate] = None) -> HermitianFunctional:
    """Functional from scalars (codomain S) or codomain vectors."""
    codomain = codomain or scalars_selfconj(A.scalars)
    vectors = [v if isinstance(v, Vector) else Vector(codomain.module, (v,)) for v in values]
    return HermitianFunctional(A, codomain, tuple(vectors))


def normalized_trace(A: StarAlgebra, n: int, scale: Any = None) -> HermitianFunctional:
    """scale * trace on Mat_n (default scale 1/n when S has it)."""
    S = A.scalars
    if A.dim != n * n:
        raise InputError(f"{A.name} is not an {n}x{n} matrix algebra")
    if scale is None:
        scale = S.decode(f"1/{n}") if S.name in ("rat", "gauss") else S.one
    return mk_functional(A, [scale if i // n == i % n else S.zero for i in range(n * n)])


def functional_eval(f: HermitianFunctional, a: Vector) -> Vector:
    S = f.algebra.scalars
    return vec_sum(
        f.codomain.module,
        [vec_scale(c, v) for c, v in zip(a.coords, f.values) if not S.is_zero(c)],
    )


def form_eval(p: SesquiForm, x: Vector, y: Vector) -> Vector:
    """p(x, y) = sum conj(x_i) y_j G[i][j]; antilinear in x."""
    S = p.algebra.scalars
    terms = []
    for i, a in enumerate(conj_vector(x).coords):
        if S.is_zero(a):
            continue
        for j, b in enumerate(y.coords):
            if not S.is_zero(b):
                terms.append(vec_scale(S.mul(a, b), p.gram[i][j]))
    return vec_sum(p.codomain.module, terms)


def _enc(v: Vector) -> List[Any]:
    return [v.module.scalars.encode(c) for c in v.coords]


def hermitian_failures(f: HermitianFunctional) -> List[str]:
    """Basis names e_i with f(e_i*) != j_X(f(e_i))."""
    A = f.algebra
    return [
        A.module.basis[i]
        for i, e in enumerate(basis_vectors(A.module))
        if functional_eval(f, alg_involve(A, e)) != sc_apply(f.codomain, f.values[i])
    ]


def is_hermitian(f: HermitianFunctional) -> bool:
    return not hermitian_failures(f)


def _gram_of(f: HermitianFunctional) -> Tuple[Tuple[Vector, ...], ...]:
    A = f.algebra
    basis = basis_vectors(A.module)
    starred = [alg_involve(A, e) for e in basis]
    return tuple(
        tuple(functional_eval(f, alg_mul(A, starred[i], basis[j])) for j in range(A.dim))
        for i in range(A.dim)
    )


def state2ip(f: HermitianFunctional) -> SesquiForm:
    """G[i][j] = f(e_i* e_j)."""
    bad = hermitian_failures(f)
    if bad:
        i = f.algebra.module.index(bad[0])
        raise ConditionViolation(
            "functional is not hermitian",
            {
                "basis": bad[0],
                "f(e*)": _enc(functional_eval(f, alg_involve(f.algebra, f.algebra.e(i)))),
                "j(f(e))": _enc(sc_apply(f.codomain, f.values[i])),
            },
        )
    return SesquiForm(f.algebra, f.codomain, _gram_of(f))


def check_condition_a(p: SesquiForm) -> Report:
    A = p.algebra
    report = Report("gns", A.name)
    u = A.unit
    for i, e in enumerate(basis_vectors(A.module)):
        lhs = sc_apply(p.codomain, form_eval(p, u, e))
        rhs = form_eval(p, e, u)
        report.check(
            "condition_a", lhs == rhs,
            lambda i=i, lhs=lhs, rhs=rhs: {"a": A.module.basis[i], "j(p(u,a))": _enc(lhs), "p(a,u)": _enc(rhs)},
        )
    return report


def check_condition_b(p: SesquiForm) -> Report:
    A = p.algebra
    names = A.module.basis
    report = Report("gns", A.name)
    basis = basis_vectors(A.module)
    starred = [alg_involve(A, e) for e in basis]
    reversing = A.mode is Mode.REVERSING
    for i, j, k in product(range(A.dim), repeat=3):
        lhs = form_eval(p, alg_mul(A, basis[i], basis[j]), basis[k])
        if reversing:
            rhs = form_eval(p, basis[j], alg_mul(A, starred[i], basis[k]))
        else:
            rhs = form_eval(p, basis[i], alg_mul(A, starred[j], basis[k]))
        report.check(
            "condition_b", lhs == rhs,
            lambda i=i, j=j, k=k, lhs=lhs, rhs=rhs: {
                "a": names[i], "b": names[j], "c": names[k], "lhs": _enc(lhs), "rhs": _enc(rhs),
            },
        )
    return report


def ip2state(p: SesquiForm) -> HermitianFunctional:
    """f(a) = p(u, a), after checking conditions (a) and (b)."""
    for checker in (check_condition_b, check_condition_a):
        failures = checker(p).failures()
        if failures:
            raise ConditionViolation(f"{failures[0].law} violated", failures[0].witness)
    A = p.algebra
    f = HermitianFunctional(A, p.codomain, tuple(form_eval(p, A.unit, e) for e in basis_vectors(A.module)))
    bad = hermitian_failures(f)
    if bad:
        raise ConditionViolation("extracted functional is not hermitian", {"basis": bad[0]})
    return f


def is_state(f: HermitianFunctional) -> bool:
    """f(u) = 1; only meaningful for scalar-valued functionals."""
    if f.codomain.dim != 1 or f.codomain.J != ((f.algebra.scalars.one,),):
        raise PreconditionError("is_state needs a functional with values in the scalars")
    value = functional_eval(f, f.algebra.unit)
    return value.coords == (f.algebra.scalars.one,)


def hermitian_part(g: HermitianFunctional) -> HermitianFunctional:
    """g + g* with g* = j_X . g . j_A; always hermitian."""
    A = g.algebra
    star = tuple(sc_apply(g.codomain, functional_eval(g, alg_involve(A, e))) for e in basis_vectors(A.module))
    return HermitianFunctional(A, g.codomain, tuple(vec_add(a, b) for a, b in zip(g.values, star)))


def sample_hermitian(A: StarAlgebra, codomain: SelfConjugate, rng: random.Random) -> HermitianFunctional:
    g = HermitianFunctional(A, codomain, tuple(sample_vector(codomain.module, rng) for _ in range(A.dim)))
    return hermitian_part(g)


def all_functionals(A: StarAlgebra, codomain: SelfConjugate) -> List[HermitianFunctional]:
    """Every linear functional (hermitian or not); needs enumerable scalars."""
    vectors = all_vectors(codomain.module)
    return [HermitianFunctional(A, codomain, values) for values in product(vectors, repeat=A.dim)]


def all_forms(A: StarAlgebra, codomain: SelfConjugate) -> List[SesquiForm]:
    vectors = all_vectors(codomain.module)
    n = A.dim
    return [
        SesquiForm(A, codomain, tuple(entries[r * n:(r + 1) * n] for r in range(n)))
        for entries in product(vectors, repeat=n * n)
    ]


def _satisfies_ab(p: SesquiForm) -> bool:
    return check_condition_a(p).passed and check_condition_b(p).passed


EXHAUSTIVE_FORM_LIMIT = 10000


def roundtrip_check(A: StarAlgebra, codomain: Optional[SelfConjugate] = None, budget: int = 100, rng: random.Random = None) -> Report:
    """
    Both round trips on sampled (or, for small enumerable instances, all)
    functionals and forms; on enumerable instances also checks that the
    forms satisfying (a) and (b) are exactly the image of state2ip.
    """
    rng = rng or random.Random(0)
    codomain = codomain or scalars_selfconj(A.scalars)
    S = A.scalars
    names = A.module.basis
    report = Report("gns", A.name)
    symmetric = A.mode is Mode.REVERSING or is_commutative(A)
    basis = basis_vectors(A.module)

    exhaustive = False
    if S.is_enumerable:
        n_vectors = len(S.elements) ** codomain.dim
        exhaustive = n_vectors ** (A.dim * A.dim) <= EXHAUSTIVE_FORM_LIMIT

    if exhaustive:
        everything = all_functionals(A, codomain)
        functionals = []
        for f in everything:
            if is_hermitian(f):
                functionals.append(f)
            else:
                raw = SesquiForm(A, codomain, _gram_of(f))
                report.check(
                    "nonhermitian_fails_a", not check_condition_a(raw).passed,
                    lambda f=f: {"values": [_enc(v) for v in f.values]},
                )
    else:
        functionals = [sample_hermitian(A, codomain, rng) for _ in range(budget)]

    image: Set[Tuple] = set()
    for f in functionals:
        w = lambda f=f: {"values": [_enc(v) for v in f.values]}
        report.check("hermitian_input", is_hermitian(f), w)
        p = state2ip(f)
        image.add(p.gram)
        report.check("forward_condition_a", check_condition_a(p).passed, w)
        report.check("forward_condition_b", check_condition_b(p).passed, w)
        report.check("state_roundtrip", ip2state(p) == f, w)
        report.check("unitality", functional_eval(f, A.unit) == form_eval(p, A.unit, A.unit), w)
        if symmetric:
            for i, j in product(range(A.dim), repeat=2):
                report.check(
                    "hermitian_symmetry",
                    sc_apply(codomain, p.gram[i][j]) == p.gram[j][i],
                    lambda f=f, i=i, j=j: dict(w(f), a=names[i], b=names[j]),
                )

    if exhaustive:
        report.check("injective", len(image) == len(functionals), {"functionals": len(functionals), "forms": len(image)})
        satisfying = set()
        for p in all_forms(A, codomain):
            if _satisfies_ab(p):
                satisfying.add(p.gram)
                report.check("ip_roundtrip", state2ip(ip2state(p)) == p, lambda p=p: {"gram": [[_enc(v) for v in row] for row in p.gram]})
        report.check(
            "bijection",
            satisfying == image,
            lambda: {"satisfying": len(satisfying), "image": len(image), "hermitian": len(functionals)},
        )
    else:
        for f in functionals:
            p = state2ip(f)
            report.check("ip_roundtrip", state2ip(ip2state(p)) == p, lambda f=f: {"values": [_enc(v) for v in f.values]})

    return report


def gram_counts(A: StarAlgebra, codomain: Optional[SelfConjugate] = None) -> Tuple[int, int, int]:
    """(functionals, hermitian functionals, forms satisfying (a) and (b)) for enumerable instances."""
    codomain = codomain or scalars_selfconj(A.scalars)
    everything = all_functionals(A, codomain)
    hermitian = [f for f in everything if is_hermitian(f)]
    satisfying = [p for p in all_forms(A, codomain) if _satisfies_ab(p)]
    return len(everything), len(hermitian), len(satisfying)


def zero_functional(A: StarAlgebra, codomain: Optional[SelfConjugate] = None) -> HermitianFunctional:
    codomain = codomain or scalars_selfconj(A.scalars)
    return HermitianFunctional(A, codomain, tuple(vec_zero(codomain.module) for _ in range(A.dim)))


def check_roundtrip(f: HermitianFunctional) -> Report:
    """Both round trips through one functional and the form it induces."""
    report = Report("gns", f.algebra.name)
    w = {"values": [_enc(v) for v in f.values]}
    p = state2ip(f)
    report.merge(check_condition_a(p)).merge(check_condition_b(p))
    back = ip2state(p)
    report.check("state_roundtrip", back == f, w)
    report.check("ip_roundtrip", state2ip(back) == p, w)
    return report
