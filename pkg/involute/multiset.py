"""
The involutive multiset monad M_S on sets.

A multiset over S is a finitely supported map from keys to S; it is kept
as a tuple of (key, scalar) pairs sorted by key with all zero scalars
dropped, so two multisets are equal exactly when their entries are.

Keys may be identifiers, integers, tuples of keys (for double strength),
multisets (for the monad multiplication) or any object exposing a
`sort_key()` method (fmod vectors).
"""

import random
from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Dict, Hashable, Iterable, List, Tuple

from .errors import InputError, ScalarMismatchError
from .report import Report
from .scalars import InvolutiveSemiring


def key_order(key: Any) -> Tuple:
    """Total order on keys: integers, then identifiers, then pairs, then nested multisets."""
    if isinstance(key, bool):
        return (0, int(key))
    if isinstance(key, int):
        return (0, key)
    if isinstance(key, str):
        return (1, key)
    if isinstance(key, tuple):
        return (2, tuple(key_order(k) for k in key))
    if isinstance(key, Multiset):
        return (3, key.order_key())
    if hasattr(key, "sort_key"):
        return (4, key.sort_key())
    raise InputError(f"unsupported multiset key {key!r}")


@dataclass(frozen=True)
class Multiset:
    """Formal sum s1 x1 + ... + sk xk with nonzero si."""
    scalars: InvolutiveSemiring
    entries: Tuple[Tuple[Hashable, Any], ...] = ()

    @classmethod
    def build(cls, scalars: InvolutiveSemiring, pairs: Iterable[Tuple[Hashable, Any]]) -> "Multiset":
        """Canonical multiset from (key, scalar) pairs; repeated keys are added."""
        acc: Dict[Hashable, Any] = {}
        for key, value in pairs:
            scalars.validate(value)
            acc[key] = scalars.add(acc[key], value) if key in acc else value
        entries = sorted(
            ((k, v) for k, v in acc.items() if not scalars.is_zero(v)),
            key=lambda kv: key_order(kv[0]),
        )
        return cls(scalars, tuple(entries))

    def __call__(self, key: Hashable) -> Any:
        for k, v in self.entries:
            if k == key:
                return v
        return self.scalars.zero

    def support(self) -> List[Hashable]:
        return [k for k, _ in self.entries]

    def order_key(self) -> Tuple:
        return tuple((key_order(k), self.scalars.sort_key(v)) for k, v in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        if not self.entries:
            return "0"
        return " + ".join(f"({self.scalars.format(v)}){k}" for k, v in self.entries)


def _same_scalars(*multisets: Multiset) -> InvolutiveSemiring:
    S = multisets[0].scalars
    for m in multisets[1:]:
        if m.scalars != S:
            raise ScalarMismatchError(f"scalar mismatch: {S.name} vs {m.scalars.name}")
    return S


def mset_zero(S: InvolutiveSemiring) -> Multiset:
    return Multiset(S, ())


def mset_eta(x: Hashable, S: InvolutiveSemiring) -> Multiset:
    return Multiset.build(S, [(x, S.one)])


def mset_map(f: Callable[[Hashable], Hashable], phi: Multiset) -> Multiset:
    return Multiset.build(phi.scalars, ((f(k), v) for k, v in phi.entries))


def mset_mu(Phi: Multiset) -> Multiset:
    S = Phi.scalars
    pairs = []
    for inner, s in Phi.entries:
        if not isinstance(inner, Multiset):
            raise InputError(f"mset_mu expects multisets as keys, got {inner!r}")
        _same_scalars(Phi, inner)
        pairs.extend((x, S.mul(s, t)) for x, t in inner.entries)
    return Multiset.build(S, pairs)


def mset_nu(phi: Multiset) -> Multiset:
    S = phi.scalars
    return Multiset.build(S, ((k, S.conj(v)) for k, v in phi.entries))


def mset_dst(phi: Multiset, psi: Multiset) -> Multiset:
    S = _same_scalars(phi, psi)
    return Multiset.build(
        S, (((x, y), S.mul(s, t)) for x, s in phi.entries for y, t in psi.entries)
    )


def mset_add(phi: Multiset, psi: Multiset) -> Multiset:
    S = _same_scalars(phi, psi)
    return Multiset.build(S, phi.entries + psi.entries)


def mset_scale(s: Any, phi: Multiset) -> Multiset:
    S = phi.scalars
    S.validate(s)
    return Multiset.build(S, ((k, S.mul(s, v)) for k, v in phi.entries))


def all_multisets(S: InvolutiveSemiring, carrier: List[Hashable]) -> List[Multiset]:
    """Every multiset on a finite carrier (S must be enumerable)."""
    return [
        Multiset.build(S, zip(carrier, values))
        for values in product(S.elements, repeat=len(carrier))
    ]


def sample_multiset(S: InvolutiveSemiring, carrier: List[Hashable], rng: random.Random) -> Multiset:
    return Multiset.build(
        S, ((x, S.zero if rng.random() < 0.25 else S.sample(rng)) for x in carrier)
    )


CARRIER = ["x", "y"]


def _carrier_maps(carrier: List[Hashable]) -> List[Dict[Hashable, Hashable]]:
    return [dict(zip(carrier, images)) for images in product(carrier, repeat=len(carrier))]


def mset_law_check(S: InvolutiveSemiring, sample_budget: int = 1000, rng: random.Random = None, nu: Callable[[Multiset], Multiset] = mset_nu) -> Report:
    """
    Monad, functor and distributive-law checks for M_S on a two-element
    carrier. Exhaustive when S is enumerable; μ laws are exhaustive on
    single-term outer multisets and extended by additivity of μ and ν.
    """
    if sample_budget < 1:
        raise InputError("sample_budget must be at least 1")
    rng = rng or random.Random(0)
    report = Report("multiset", S.name)
    enc = S.encode

    def show(phi: Multiset) -> List[List[Any]]:
        return [[str(k), enc(v)] for k, v in phi.entries]

    if S.is_enumerable:
        phis = all_multisets(S, CARRIER)
        scalars = list(S.elements)
    else:
        phis = [sample_multiset(S, CARRIER, rng) for _ in range(sample_budget)]
        scalars = [S.sample(rng) for _ in range(min(sample_budget, 20))] + [S.zero, S.one]
    maps = _carrier_maps(CARRIER)

    for x in CARRIER:
        report.check("nu_eta", nu(mset_eta(x, S)) == mset_eta(x, S), {"x": x})
        report.check("dst_unit", mset_dst(mset_eta(x, S), mset_eta(x, S)) == mset_eta((x, x), S), {"x": x})

    for phi in phis:
        w = lambda phi=phi: {"phi": show(phi)}
        report.check("functor_identity", mset_map(lambda k: k, phi) == phi, w)
        report.check("nu_involutive", nu(nu(phi)) == phi, w)
        report.check("mu_eta", mset_mu(mset_eta(phi, S)) == phi, w)
        report.check("mu_map_eta", mset_mu(mset_map(lambda k: mset_eta(k, S), phi)) == phi, w)
        for f, g in product(maps, repeat=2):
            report.check(
                "functor_composition",
                mset_map(lambda k: g[f[k]], phi) == mset_map(g.__getitem__, mset_map(f.__getitem__, phi)),
                lambda phi=phi, f=f, g=g: {"phi": show(phi), "f": f, "g": g},
            )
        for f in maps:
            report.check(
                "nu_natural",
                nu(mset_map(f.__getitem__, phi)) == mset_map(f.__getitem__, nu(phi)),
                lambda phi=phi, f=f: {"phi": show(phi), "f": f},
            )

    pair_phis = phis if S.is_enumerable else phis[: max(1, min(len(phis), 100))]
    for phi, psi in product(pair_phis, repeat=2):
        w = lambda phi=phi, psi=psi: {"phi": show(phi), "psi": show(psi)}
        report.check("nu_additive", nu(mset_add(phi, psi)) == mset_add(nu(phi), nu(psi)), w)
        report.check("nu_dst", nu(mset_dst(phi, psi)) == mset_dst(nu(phi), nu(psi)), w)

    # single-term outer multisets s.[phi]; arbitrary ones are sums of these
    for s in scalars:
        for phi in phis:
            Phi = Multiset.build(S, [(phi, s)])
            w = lambda s=s, phi=phi: {"s": enc(s), "phi": show(phi)}
            report.check("nu_mu", nu(mset_mu(Phi)) == mset_mu(nu(mset_map(nu, Phi))), w)

    inner_phis = phis if S.is_enumerable else phis[:20]
    for s, t in product(scalars, repeat=2):
        for phi in inner_phis:
            nested = Multiset.build(S, [(Multiset.build(S, [(phi, s)]), t)])
            report.check(
                "mu_associative",
                mset_mu(mset_mu(nested)) == mset_mu(mset_map(mset_mu, nested)),
                lambda s=s, t=t, phi=phi: {"s": enc(s), "t": enc(t), "phi": show(phi)},
            )

    # seeded two-term outer multisets and the additivity of mu
    for _ in range(min(sample_budget, 200)):
        phi, psi = rng.choice(phis), rng.choice(phis)
        Phi = Multiset.build(S, [(phi, S.sample(rng)), (psi, S.sample(rng))])
        Psi = Multiset.build(S, [(rng.choice(phis), S.sample(rng))])
        w = lambda Phi=Phi: {"Phi": [[show(k), enc(v)] for k, v in Phi.entries]}
        report.check("nu_mu", nu(mset_mu(Phi)) == mset_mu(nu(mset_map(nu, Phi))), w)
        report.check("mu_additive", mset_mu(mset_add(Phi, Psi)) == mset_add(mset_mu(Phi), mset_mu(Psi)), w)

    return report


def nu_first_entry_only(phi: Multiset) -> Multiset:
    """A broken ν that conjugates only the first entry; used to exercise the checker."""
    S = phi.scalars
    entries = [(k, S.conj(v) if n == 0 else v) for n, (k, v) in enumerate(phi.entries)]
    return Multiset.build(S, entries)
