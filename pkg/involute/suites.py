"""
Registry of the law suites run by `involute laws`.

Each suite owns a list of default instances and a catalogue of every
instance it can build. A run of one (suite, instance) pair gets its own
random.Random seeded from "seed/suite/instance", so results do not depend
on which other suites or instances were selected.
"""

import random
import time
from dataclasses import dataclass
from functools import partial
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import console
from .errors import InputError
from .fmod import (
    LinMap, bilinear_universal_check, conjmod_law_check, kron, mk_module,
    nontrivial_selfconjs, std_selfconj, tensor_module,
)
from .gns import normalized_trace, roundtrip_check, state2ip
from .lawlab import (
    FinPosetRev, FinSetTriv, InvolutiveCategory, InvolutiveFunctor, ModSConj, SCFinSet,
    check_adjunction_34, check_def43_free_adjunction, check_functor_involutive,
    check_iota_coherence, check_monoidal_7, check_prop63, check_sc_comonad, check_sc_lift,
    check_sc_product, check_selfconj_counts, check_writer_monad, enumerate_selfconj,
    forgetful_functor, identity_functor, j_without_conj, multiset_functor,
    selfconj_from_module, selfconj_objects, writer_functor,
)
from .multiset import mset_law_check
from .report import PASS, Report
from .scalars import SEMIRINGS, get_semiring, law_check_involutive_semiring
from .staralg import (
    StarAlgebra, algebra_instances, check_action, check_lemma52, check_star_laws,
    column_action, inject_fault, regular_action,
)
from .words import Mode, TARGETS, check_monoid_handle, check_word_laws, get_target, word_universal_check

Runner = Callable[[str, int, random.Random], Report]


@dataclass(frozen=True)
class Suite:
    """A named law suite."""
    name: str
    description: str
    instances: Tuple[str, ...]
    catalogue: Callable[[], Iterable[str]]
    runner: Runner

    def accepts(self, instance: str) -> bool:
        return instance in set(self.catalogue())


def _absorb(report: Report, sub: Report, **context: Any) -> Report:
    """Merge `sub` into `report`, tagging failing witnesses with `context`."""
    if context:
        for res in sub.failures():
            res.witness = dict(context, detail=res.witness)
    return report.merge(sub)


# Instance lookup

def _all_algebras() -> Dict[str, StarAlgebra]:
    algebras: Dict[str, StarAlgebra] = {}
    for S in SEMIRINGS.values():
        algebras.update(algebra_instances(S))
    return algebras


def _algebra(name: str) -> StarAlgebra:
    algebras = _all_algebras()
    if name not in algebras:
        raise InputError(f"unknown algebra instance {name!r}")
    return algebras[name]


def _nonreversing_algebras() -> List[str]:
    return sorted(name for name, A in _all_algebras().items() if A.mode is Mode.NON_REVERSING)


def _enumerable_semirings() -> List[str]:
    return sorted(name for name, S in SEMIRINGS.items() if S.is_enumerable)


CATEGORIES: Dict[str, Callable[[], InvolutiveCategory]] = {
    "finset": FinSetTriv,
    "finposet": FinPosetRev,
    "sc-finset": SCFinSet,
}
CATEGORIES.update({f"modsconj-{name}": partial(ModSConj, S) for name, S in SEMIRINGS.items()})


def _category(name: str) -> InvolutiveCategory:
    if name not in CATEGORIES:
        raise InputError(f"unknown category {name!r}; known: {', '.join(sorted(CATEGORIES))}")
    return CATEGORIES[name]()


def _functor_names() -> List[str]:
    names = [f"identity/{c}" for c in CATEGORIES]
    names.append("sc-forgetful/finset")
    names.extend(f"multiset/{s}" for s in _enumerable_semirings())
    names.extend(f"writer/{a}" for a in _nonreversing_algebras())
    return names


def _functor(name: str) -> InvolutiveFunctor:
    kind, _, arg = name.partition("/")
    if kind == "identity":
        return identity_functor(_category(arg))
    if name == "sc-forgetful/finset":
        return forgetful_functor()
    if kind == "multiset":
        return multiset_functor(get_semiring(arg))
    if kind == "writer":
        return writer_functor(_algebra(arg))
    raise InputError(f"unknown functor {name!r}")


def _module_selfconjs(S, dims: Sequence[int] = (1, 2)):
    out = []
    for d in dims:
        X = mk_module(S, d)
        out.append(std_selfconj(X))
        out.extend(nontrivial_selfconjs(X))
    return out


# Runners

def _run_semiring(instance: str, budget: int, rng: random.Random) -> Report:
    return law_check_involutive_semiring(get_semiring(instance), budget, rng)


def _run_words(instance: str, budget: int, rng: random.Random) -> Report:
    report = Report("words", instance)
    if instance == "free":
        return _absorb(report, check_word_laws(("a", "b"), 3))
    _absorb(report, check_monoid_handle(get_target(instance)))
    for mode in Mode:
        M = get_target(instance, mode)
        if M.supports(mode):
            _absorb(report, word_universal_check(2, M, mode, 4), mode=mode.value)
    return report


def _run_multiset(instance: str, budget: int, rng: random.Random) -> Report:
    if instance in SEMIRINGS:
        return mset_law_check(get_semiring(instance), budget, rng)
    return check_writer_monad(_algebra(instance))


def _run_conjmod(instance: str, budget: int, rng: random.Random) -> Report:
    return conjmod_law_check(get_semiring(instance), budget, rng)


BIMORPHISM_SHAPES = ((1, 1, 1), (1, 2, 2), (2, 2, 1), (2, 2, 2))
# bilinear maps sampled per instance once they cannot be enumerated (gf9/2x2->2 has 9^8)
BIMORPHISM_SAMPLES = 200


def _bimorphism_instances() -> List[str]:
    return [f"{s}/{a}x{b}->{c}" for s in sorted(SEMIRINGS) for a, b, c in BIMORPHISM_SHAPES]


def _run_bimorphism(instance: str, budget: int, rng: random.Random) -> Report:
    scalars, _, shape = instance.partition("/")
    S = get_semiring(scalars)
    try:
        dims, cod = shape.split("->")
        a, b = dims.split("x")
        X, Y, Z = (mk_module(S, int(k)) for k in (a, b, cod))
    except ValueError:
        raise InputError(f"bimorphism instance must look like gf9/2x2->1, got {instance!r}")
    return bilinear_universal_check(X, Y, Z, min(budget, BIMORPHISM_SAMPLES), rng)


def _run_star(instance: str, budget: int, rng: random.Random) -> Report:
    A = _algebra(instance)
    report = Report("star", instance)
    _absorb(report, check_star_laws(A, exhaustive_basis=True, rng=rng))
    if A.mode is Mode.NON_REVERSING:
        _absorb(report, check_action(regular_action(A)), action="regular")
        if instance.startswith("mat2e-"):
            _absorb(report, check_action(column_action(A, 2)), action="columns")
    return report


FAULT_RUNS = 10


def _run_lemma52(instance: str, budget: int, rng: random.Random) -> Report:
    A = _algebra(instance)
    report = Report("lemma52", instance)
    _absorb(report, check_lemma52(A))
    for _ in range(FAULT_RUNS):
        faulty = inject_fault(A, rng)
        sub = check_lemma52(faulty)
        report.check("fault_routes_agree", sub.verdict("routes_agree") == PASS, {"algebra": faulty.name})
    return report


def _run_gns(instance: str, budget: int, rng: random.Random) -> Report:
    A = _algebra(instance)
    report = Report("gns", instance)
    _absorb(report, roundtrip_check(A, budget=min(budget, 100), rng=rng))
    if instance in ("mat2-gauss", "mat2-rat"):
        S = A.scalars
        p = state2ip(normalized_trace(A, 2))
        half = S.decode("1/2")
        expected = [[half if i == j else S.zero for j in range(A.dim)] for i in range(A.dim)]
        actual = [[v.coords[0] for v in row] for row in p.gram]
        report.check("trace_gram_half_identity", actual == expected, lambda: {"gram": [[S.encode(a) for a in row] for row in actual]})
    return report


def _run_iota(instance: str, budget: int, rng: random.Random) -> Report:
    return check_iota_coherence(_category(instance), rng, samples=min(budget, 20))


def _run_nu(instance: str, budget: int, rng: random.Random) -> Report:
    return check_functor_involutive(_functor(instance), rng, samples=min(budget, 10))


def _run_adjunction(instance: str, budget: int, rng: random.Random) -> Report:
    if instance != "finset":
        raise InputError(f"adjunction34 only runs on finset, got {instance!r}")
    report = Report("adjunction34", instance)
    for n in range(1, 4):
        for m in range(1, 5):
            for target in enumerate_selfconj(m):
                _absorb(report, check_adjunction_34(n, target), x=n, y=list(target.j.table))
    return _absorb(report, check_selfconj_counts(6))


def _run_scproduct(instance: str, budget: int, rng: random.Random) -> Report:
    cat = _category(instance)
    report = Report("scproduct", instance)
    if isinstance(cat, ModSConj):
        structures = [selfconj_from_module(c) for c in _module_selfconjs(cat.S)]
    elif isinstance(cat, SCFinSet):
        raise InputError("scproduct needs a base category, not sc-finset")
    else:
        structures = selfconj_objects(cat, [X for X in cat.objects() if X.size <= 2], rng)
    structures = structures[:4]
    for c1 in structures:
        for c2 in structures:
            _absorb(report, check_sc_product(cat, c1, c2, rng))
    return report


def _run_sclift(instance: str, budget: int, rng: random.Random) -> Report:
    F = _functor(instance)
    report = Report("sclift", instance)
    C = F.source
    if instance.startswith("writer/"):
        A = _algebra(instance.partition("/")[2])
        S = A.scalars
        for sc in _module_selfconjs(S):
            c = selfconj_from_module(sc)
            FX = tensor_module(A.module, sc.module)
            expected = LinMap(FX, FX, kron(S, A.invol.J, sc.J))
            _absorb(report, check_sc_lift(F, c, expected, rng))
            _absorb(report, check_sc_comonad(C, c))
        return report
    for c in selfconj_objects(C, C.objects(), rng):
        _absorb(report, check_sc_lift(F, c, rng=rng))
        _absorb(report, check_sc_comonad(C, c))
    return report


def _run_monoidal(instance: str, budget: int, rng: random.Random) -> Report:
    return check_monoidal_7(_category(instance), 3)


def _has_nontrivial_conj(S) -> bool:
    candidates = S.elements if S.is_enumerable else [S.sample(random.Random(k)) for k in range(20)]
    return any(S.conj(s) != s for s in candidates)


def _run_prop63(instance: str, budget: int, rng: random.Random) -> Report:
    S = get_semiring(instance)
    report = Report("prop63", instance)
    for sc in _module_selfconjs(S):
        J = [[S.encode(a) for a in row] for row in sc.J]
        _absorb(report, check_prop63(sc, budget=min(budget, 200), rng=rng), J=J)
        faulty = check_prop63(sc, j_without_conj(sc), budget=min(budget, 200), rng=rng)
        if _has_nontrivial_conj(S):
            report.check("fault_detected", not faulty.passed, {"J": J})
        report.check("fault_routes_agree", faulty.verdict("routes_agree") == PASS, {"J": J})
    return report


def _run_def43(instance: str, budget: int, rng: random.Random) -> Report:
    return check_def43_free_adjunction(get_semiring(instance), min(budget, 200), rng)


SUITES: Dict[str, Suite] = {}


def _register(name: str, description: str, instances: Sequence[str], catalogue: Callable[[], Iterable[str]], runner: Runner) -> None:
    SUITES[name] = Suite(name, description, tuple(instances), catalogue, runner)


_register(
    "semiring", "involutive semiring laws", ("bool", "rat", "gauss", "gf9"),
    lambda: SEMIRINGS.keys(), _run_semiring,
)
_register(
    "words", "free involutive monoids and their universal property", ("free", "z2", "gf9-mul", "s3"),
    lambda: ["free"] + [t for t in TARGETS if t != "int-add"], _run_words,
)
_register(
    "multiset", "multiset monad and writer monad involution laws",
    ("gf9", "gauss", "bool", "rat", "fun2-gf9", "mat2e-gauss"),
    lambda: list(SEMIRINGS) + _nonreversing_algebras(), _run_multiset,
)
_register(
    "conjmod", "conjugate modules: antilinearity, biproducts, tensors, homs", ("gauss", "gf9", "rat", "bool"),
    lambda: SEMIRINGS.keys(), _run_conjmod,
)
_register(
    "bimorphism", "tensor product universal property",
    ("gf9/1x1->1", "gf9/1x2->2", "gf9/2x2->1", "gf9/2x2->2", "bool/2x2->2", "gauss/2x2->2"),
    _bimorphism_instances, _run_bimorphism,
)
_register(
    "star", "star algebra laws and involutive actions",
    tuple(sorted(algebra_instances(get_semiring("gauss")))) + ("fun2-gf9",),
    lambda: _all_algebras().keys(), _run_star,
)
_register(
    "lemma52", "non-reversing involutive monoids read two ways",
    ("mat2e-gauss", "fun1-gauss", "fun2-gauss", "fun3-gauss", "fun2-gf9"),
    _nonreversing_algebras, _run_lemma52,
)
_register(
    "gns", "states and inner products", ("mat2-gauss", "fun2-gf9", "fun2-gauss"),
    lambda: _all_algebras().keys(), _run_gns,
)
_register(
    "iota", "the involution's unit and its coherence",
    ("finset", "finposet", "sc-finset", "modsconj-gauss", "modsconj-gf9"),
    lambda: CATEGORIES.keys(), _run_iota,
)
_register(
    "nu", "involutive functors",
    (
        "identity/finset", "identity/finposet", "identity/modsconj-gauss", "sc-forgetful/finset",
        "multiset/bool", "multiset/gf9", "writer/fun2-gf9", "writer/mat2e-gauss",
    ),
    _functor_names, _run_nu,
)
_register(
    "adjunction34", "free and cofree self-conjugates", ("finset",),
    lambda: ["finset"], _run_adjunction,
)
_register(
    "scproduct", "products of self-conjugates",
    ("finset", "finposet", "modsconj-gauss", "modsconj-gf9"),
    lambda: [c for c in CATEGORIES if c != "sc-finset"], _run_scproduct,
)
_register(
    "sclift", "lifting functors to self-conjugates and the comonad",
    ("multiset/bool", "multiset/gf9", "writer/fun2-gf9", "writer/mat2e-gauss"),
    lambda: [f for f in _functor_names() if not f.startswith(("identity/", "sc-forgetful/"))], _run_sclift,
)
_register(
    "monoidal7", "involutive monoidal categories",
    ("finset", "finposet", "sc-finset", "modsconj-gauss", "modsconj-gf9"),
    lambda: CATEGORIES.keys(), _run_monoidal,
)
_register(
    "prop63", "self-conjugate modules as multiset algebras", ("gauss", "gf9"),
    lambda: SEMIRINGS.keys(), _run_prop63,
)
_register(
    "def43", "the free multiset algebra functor is involutive monoidal", ("gauss", "gf9", "bool", "rat"),
    lambda: SEMIRINGS.keys(), _run_def43,
)


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        raise InputError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")


def run_suite(suite: Suite, instance: str, seed: int, budget: int) -> Report:
    """One (suite, instance) run, relabelled with the suite and instance names."""
    rng = random.Random(f"{seed}/{suite.name}/{instance}")
    started = time.perf_counter()
    report = Report(suite.name, instance)
    _absorb(report, suite.runner(instance, budget, rng))
    console.debug(f"{suite.name} {instance}: {time.perf_counter() - started:.3f}s")
    return report


def plan(names: Optional[Sequence[str]] = None, instances: Optional[Sequence[str]] = None, defaults: Optional[Dict[str, List[str]]] = None) -> List[Tuple[Suite, str]]:
    """
    The (suite, instance) pairs to run, in registry order. An instance
    filter runs every filtered instance that a selected suite accepts;
    `defaults` overrides a suite's default instances.
    """
    suites = [get_suite(n) for n in names] if names else list(SUITES.values())
    defaults = defaults or {}
    pairs: List[Tuple[Suite, str]] = []

    if instances:
        unmatched = set(instances)
        for suite in suites:
            accepted = set(suite.catalogue())
            for inst in instances:
                if inst in accepted:
                    pairs.append((suite, inst))
                    unmatched.discard(inst)
        if unmatched:
            raise InputError(f"no selected suite accepts instance(s) {', '.join(sorted(unmatched))}")
        return pairs

    for suite in suites:
        chosen = defaults.get(suite.name) or suite.instances
        bad = [i for i in chosen if not suite.accepts(i)]
        if bad:
            raise InputError(f"suite {suite.name} has no instance(s) {', '.join(bad)}")
        pairs.extend((suite, inst) for inst in chosen)
    return pairs


def run_suites(names: Optional[Sequence[str]] = None, instances: Optional[Sequence[str]] = None, seed: int = 0, budget: int = 1000, defaults: Optional[Dict[str, List[str]]] = None) -> List[Report]:
    return [run_suite(suite, inst, seed, budget) for suite, inst in plan(names, instances, defaults)]
