"""
Exact involutive commutative semirings.

Every other module is parameterised over one of these. Values are
immutable and kept in canonical form, so equality is structural and every
law check is an exact comparison.

Shipped instances:
- BooleanSemiring  (bool)   OR/AND with the trivial involution
- RationalSemiring (rat)    fractions.Fraction with the trivial involution
- GaussianSemiring (gauss)  a+ib over the rationals, conj(a+ib) = a-ib
- GF9Semiring      (gf9)    Z/3 with i adjoined, conj(a+ib) = a-ib
"""

import json
import random
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Dict, Iterable, List, Optional, Tuple

from .errors import InputError
from .report import Report

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: Any) -> Fraction:
    """Parse "p/q" (q omitted when 1); anything non-canonical is rejected."""
    if isinstance(text, bool):
        raise InputError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise InputError(f"not a rational: {text!r}")
    try:
        value = Fraction(text)
    except ZeroDivisionError:
        raise InputError(f"zero denominator: {text!r}")
    if str(value) != text:
        raise InputError(f"non-canonical rational {text!r}, expected {str(value)!r}")
    return value


def format_rational(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True)
class GaussianRational:
    """a + ib with a, b rational."""
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        imag = "i" if abs(self.im) == 1 else f"{abs(self.im)}i"
        if self.re == 0:
            return f"-{imag}" if self.im < 0 else imag
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{imag}"


@dataclass(frozen=True)
class GF9Element:
    """a + ib with a, b in Z/3; i*i = -1."""
    re: int
    im: int = 0

    def __post_init__(self):
        object.__setattr__(self, "re", self.re % 3)
        object.__setattr__(self, "im", self.im % 3)

    def __add__(self, other: "GF9Element") -> "GF9Element":
        return GF9Element(self.re + other.re, self.im + other.im)

    def __neg__(self) -> "GF9Element":
        return GF9Element(-self.re, -self.im)

    def __mul__(self, other: "GF9Element") -> "GF9Element":
        return GF9Element(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conjugate(self) -> "GF9Element":
        return GF9Element(self.re, -self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        imag = "i" if self.im == 1 else "2i"
        return imag if self.re == 0 else f"{self.re}+{imag}"


class InvolutiveSemiring(ABC):
    """Commutative semiring with a conjugation that is a semiring automorphism of order two."""

    name = ""
    description = ""

    @property
    @abstractmethod
    def zero(self) -> Any: ...

    @property
    @abstractmethod
    def one(self) -> Any: ...

    @abstractmethod
    def add(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def mul(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def conj(self, a: Any) -> Any: ...

    @abstractmethod
    def is_element(self, a: Any) -> bool: ...

    @abstractmethod
    def encode(self, a: Any) -> Any: ...

    @abstractmethod
    def decode(self, obj: Any) -> Any: ...

    @abstractmethod
    def sample(self, rng: random.Random) -> Any: ...

    elements: Optional[Tuple[Any, ...]] = None

    @property
    def is_enumerable(self) -> bool:
        return self.elements is not None

    def validate(self, a: Any) -> Any:
        if not self.is_element(a):
            raise InputError(f"{a!r} is not an element of {self.name}")
        return a

    def sum(self, values: Iterable[Any]) -> Any:
        total = self.zero
        for v in values:
            total = self.add(total, v)
        return total

    def product(self, values: Iterable[Any]) -> Any:
        total = self.one
        for v in values:
            total = self.mul(total, v)
        return total

    def is_zero(self, a: Any) -> bool:
        return a == self.zero

    def sort_key(self, a: Any) -> str:
        return json.dumps(self.encode(a), sort_keys=True)

    def format(self, a: Any) -> str:
        return str(a)

    def __eq__(self, other: Any) -> bool:
        return type(self) is type(other) and self.name == other.name

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.name))

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class BooleanSemiring(InvolutiveSemiring):
    name = "bool"
    description = "Booleans with OR/AND and trivial involution"
    elements = (False, True)

    zero = False
    one = True

    def add(self, a, b):
        return a or b

    def mul(self, a, b):
        return a and b

    def conj(self, a):
        return a

    def is_element(self, a):
        return isinstance(a, bool)

    def encode(self, a):
        return a

    def decode(self, obj):
        if not isinstance(obj, bool):
            raise InputError(f"boolean scalar expected, got {obj!r}")
        return obj

    def sample(self, rng):
        return rng.random() < 0.5

    def format(self, a):
        return "true" if a else "false"


class RationalSemiring(InvolutiveSemiring):
    name = "rat"
    description = "Rationals with trivial involution"

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def conj(self, a):
        return a

    def is_element(self, a):
        return isinstance(a, Fraction)

    def encode(self, a):
        return format_rational(a)

    def decode(self, obj):
        return parse_rational(obj)

    def sample(self, rng):
        return Fraction(rng.randint(-6, 6), rng.randint(1, 4))


class GaussianSemiring(InvolutiveSemiring):
    name = "gauss"
    description = "Gaussian rationals a+ib with complex conjugation"

    zero = GaussianRational(0, 0)
    one = GaussianRational(1, 0)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def conj(self, a):
        return a.conjugate()

    def is_element(self, a):
        return isinstance(a, GaussianRational)

    def encode(self, a):
        return {"re": format_rational(a.re), "im": format_rational(a.im)}

    def decode(self, obj):
        if isinstance(obj, dict):
            if set(obj) - {"re", "im"}:
                raise InputError(f"unexpected keys in Gaussian rational {obj!r}")
            return GaussianRational(parse_rational(obj.get("re", "0")), parse_rational(obj.get("im", "0")))
        # a bare rational is accepted as a real Gaussian rational
        return GaussianRational(parse_rational(obj), 0)

    def sample(self, rng):
        return GaussianRational(
            Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
            Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
        )


class GF9Semiring(InvolutiveSemiring):
    name = "gf9"
    description = "GF(9) = Z/3[i] with conjugation a+ib -> a-ib"
    elements = tuple(GF9Element(a, b) for a, b in product(range(3), range(3)))

    zero = GF9Element(0, 0)
    one = GF9Element(1, 0)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def conj(self, a):
        return a.conjugate()

    def is_element(self, a):
        return isinstance(a, GF9Element)

    def encode(self, a):
        return {"re": a.re, "im": a.im}

    def decode(self, obj):
        if isinstance(obj, dict):
            re_, im_ = obj.get("re", 0), obj.get("im", 0)
            if set(obj) - {"re", "im"}:
                raise InputError(f"unexpected keys in GF(9) element {obj!r}")
        else:
            re_, im_ = obj, 0
        for part in (re_, im_):
            if isinstance(part, bool) or not isinstance(part, int) or not 0 <= part <= 2:
                raise InputError(f"GF(9) components must be integers 0..2, got {obj!r}")
        return GF9Element(re_, im_)

    def sample(self, rng):
        return rng.choice(self.elements)


BOOLEAN = BooleanSemiring()
RATIONAL = RationalSemiring()
GAUSS = GaussianSemiring()
GF9 = GF9Semiring()

SEMIRINGS: Dict[str, InvolutiveSemiring] = {
    s.name: s for s in (BOOLEAN, RATIONAL, GAUSS, GF9)
}


def get_semiring(name: str) -> InvolutiveSemiring:
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise InputError(f"unknown scalars {name!r}; expected one of {sorted(SEMIRINGS)}")


def mk_gf9() -> InvolutiveSemiring:
    """The 9-element enumerable instance with non-trivial involution."""
    return GF9Semiring()


def conj(s: Any, S: InvolutiveSemiring) -> Any:
    """Conjugate a validated element of S."""
    return S.conj(S.validate(s))


def semiring_ops(S: InvolutiveSemiring) -> Dict[str, Any]:
    """The operations the law checks run on."""
    return {"add": S.add, "mul": S.mul, "zero": S.zero, "one": S.one}


def scalar_domain(S: InvolutiveSemiring, sample_budget: int, rng: random.Random, arity: int) -> Tuple[Iterable[Tuple[Any, ...]], bool]:
    """All arity-tuples when S is enumerable, otherwise sample_budget random ones."""
    if S.is_enumerable:
        return product(S.elements, repeat=arity), True
    return ([tuple(S.sample(rng) for _ in range(arity)) for _ in range(sample_budget)], False)


def law_check_involutive_semiring(S: InvolutiveSemiring, sample_budget: int = 1000, rng: random.Random = None) -> Report:
    """Check the commutative semiring laws and the involution laws, exactly."""
    if sample_budget < 1:
        raise InputError("sample_budget must be at least 1")
    rng = rng or random.Random(0)
    report = Report("semiring", S.name)
    ops = semiring_ops(S)
    add, mul, zero, one = ops["add"], ops["mul"], ops["zero"], ops["one"]
    cj = S.conj
    enc = S.encode

    def w(**named):
        return lambda: {k: enc(v) for k, v in named.items()}

    singles, _ = scalar_domain(S, sample_budget, rng, 1)
    for (s,) in singles:
        report.check("add_zero", add(s, zero) == s, w(s=s))
        report.check("mul_one", mul(s, one) == s, w(s=s))
        report.check("mul_zero", mul(s, zero) == zero, w(s=s))
        report.check("conj_involutive", cj(cj(s)) == s, w(s=s))
        report.check("conj_closed", S.is_element(cj(s)), w(s=s))

    report.check("conj_zero", cj(zero) == zero, w(s=zero))
    report.check("conj_one", cj(one) == one, w(s=one))

    pairs, _ = scalar_domain(S, sample_budget, rng, 2)
    for s, t in pairs:
        report.check("add_commutative", add(s, t) == add(t, s), w(s=s, t=t))
        report.check("mul_commutative", mul(s, t) == mul(t, s), w(s=s, t=t))
        report.check("conj_additive", cj(add(s, t)) == add(cj(s), cj(t)), w(s=s, t=t))
        report.check("conj_multiplicative", cj(mul(s, t)) == mul(cj(s), cj(t)), w(s=s, t=t))

    triples, _ = scalar_domain(S, sample_budget, rng, 3)
    for s, t, u in triples:
        report.check("add_associative", add(add(s, t), u) == add(s, add(t, u)), w(s=s, t=t, u=u))
        report.check("mul_associative", mul(mul(s, t), u) == mul(s, mul(t, u)), w(s=s, t=t, u=u))
        report.check("distributive", mul(s, add(t, u)) == add(mul(s, t), mul(s, u)), w(s=s, t=t, u=u))

    return report


def fixed_points(S: InvolutiveSemiring) -> List[Any]:
    if not S.is_enumerable:
        raise InputError(f"{S.name} is not enumerable")
    return [s for s in S.elements if S.conj(s) == s]

