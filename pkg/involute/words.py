"""
Free involutive monoids on a finite alphabet.

A signed word is a list of (sign, symbol) pairs. Concatenation is the
multiplication, the empty word is the unit, and the involution flips every
sign (non-reversing) or flips every sign and reverses the list (reversing).
Words have no relations, so the list itself is the normal form.

Text grammar used by the CLI:

    word ::= atom ("*" atom)*
    atom ::= "1" | identifier | "~" atom | "(" word ")"

"~" binds tighter than "*"; "~x" is the single negative letter and "~(...)"
applies the involution of the selected mode to the sub-word.
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations, product
from typing import Any, Callable, Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import InputError, PreconditionError
from .report import Report
from .scalars import GF9


class Sign(Enum):
    PLUS = "+"
    MINUS = "-"

    def negate(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


class Mode(Enum):
    REVERSING = "reversing"
    NON_REVERSING = "non-reversing"

    @classmethod
    def parse(cls, text: Union[str, "Mode"]) -> "Mode":
        if isinstance(text, Mode):
            return text
        for mode in cls:
            if mode.value == text:
                return mode
        raise InputError(f"unknown involution mode {text!r}; expected 'reversing' or 'non-reversing'")


Letter = Tuple[Sign, str]


@dataclass(frozen=True)
class SignedWord:
    """Element of the free involutive monoid (2 x V)*."""
    letters: Tuple[Letter, ...] = ()
    alphabet: Optional[FrozenSet[str]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.alphabet is not None:
            object.__setattr__(self, "alphabet", frozenset(self.alphabet))
            for _, symbol in self.letters:
                if symbol not in self.alphabet:
                    raise InputError(f"symbol {symbol!r} is not in the alphabet {sorted(self.alphabet)}")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)


def word_unit(alphabet: Optional[Sequence[str]] = None) -> SignedWord:
    return SignedWord((), frozenset(alphabet) if alphabet is not None else None)


def word_concat(w1: SignedWord, w2: SignedWord) -> SignedWord:
    if w1.alphabet is not None and w2.alphabet is not None and w1.alphabet != w2.alphabet:
        raise InputError(
            f"alphabet mismatch: {sorted(w1.alphabet)} vs {sorted(w2.alphabet)}"
        )
    alphabet = w1.alphabet if w1.alphabet is not None else w2.alphabet
    return SignedWord(w1.letters + w2.letters, alphabet)


def word_involve(w: SignedWord, mode: Mode) -> SignedWord:
    flipped = [(sign.negate(), symbol) for sign, symbol in w.letters]
    if Mode.parse(mode) is Mode.REVERSING:
        flipped.reverse()
    return SignedWord(tuple(flipped), w.alphabet)


def word_eta(v: str, alphabet: Optional[Sequence[str]] = None) -> SignedWord:
    if alphabet is not None and v not in alphabet:
        raise InputError(f"unknown symbol {v!r}")
    return SignedWord(((Sign.PLUS, v),), frozenset(alphabet) if alphabet is not None else None)


def all_words(alphabet: Sequence[str], max_len: int) -> Iterator[SignedWord]:
    """Every signed word of length <= max_len, shortest first."""
    letters = [(sign, v) for v in alphabet for sign in (Sign.PLUS, Sign.MINUS)]
    alpha = frozenset(alphabet)
    for n in range(max_len + 1):
        for combo in product(letters, repeat=n):
            yield SignedWord(combo, alpha)


@dataclass(frozen=True)
class InvolutiveMonoidHandle:
    """An abstract involutive monoid used as the target of word_extend."""
    name: str
    unit: Any
    mul: Callable[[Any, Any], Any]
    involve: Callable[[Any], Any]
    mode: Mode
    elements: Optional[Tuple[Any, ...]] = None
    commutative: bool = False
    encode: Callable[[Any], Any] = lambda x: x

    @property
    def is_enumerable(self) -> bool:
        return self.elements is not None

    def supports(self, mode: Mode) -> bool:
        return self.commutative or self.mode is mode


def _lookup(f: Union[Mapping[str, Any], Callable[[str], Any]], symbol: str) -> Any:
    if callable(f) and not isinstance(f, Mapping):
        return f(symbol)
    try:
        return f[symbol]
    except KeyError:
        raise InputError(f"symbol {symbol!r} is outside the domain of the map")


def word_extend(f: Union[Mapping[str, Any], Callable[[str], Any]], M: InvolutiveMonoidHandle, w: SignedWord, mode: Optional[Mode] = None) -> Any:
    """Evaluate f(v1)^b1 * ... * f(vn)^bn in M, folding left to right."""
    if mode is not None and not M.supports(Mode.parse(mode)):
        raise PreconditionError(f"target {M.name} is {M.mode.value}, requested {Mode.parse(mode).value}")
    acc = M.unit
    for sign, symbol in w.letters:
        x = _lookup(f, symbol)
        if sign is Sign.MINUS:
            x = M.involve(x)
        acc = M.mul(acc, x)
    return acc


def _forced_value(f: Mapping[str, Any], M: InvolutiveMonoidHandle, w: SignedWord) -> Any:
    """The only value a homomorphism agreeing with f on generators can take on w."""
    if not w.letters:
        return M.unit
    if len(w.letters) == 1:
        sign, symbol = w.letters[0]
        x = f[symbol]
        return M.involve(x) if sign is Sign.MINUS else x
    half = len(w.letters) // 2
    return M.mul(
        _forced_value(f, M, SignedWord(w.letters[:half])),
        _forced_value(f, M, SignedWord(w.letters[half:])),
    )


def _symbols(size: int) -> List[str]:
    if not 1 <= size <= 26:
        raise PreconditionError(f"alphabet size must be between 1 and 26, got {size}")
    return [chr(ord("a") + k) for k in range(size)]


Extender = Callable[[Mapping[str, Any], InvolutiveMonoidHandle, SignedWord], Any]


def word_universal_check(alphabet_size: int, M: InvolutiveMonoidHandle, mode: Mode, max_len: int = 4, extend: Extender = word_extend) -> Report:
    """
    For every map f: V -> M check that its extension is a homomorphism of
    involutive monoids with f^ . eta = f, and that it agrees with the values
    forced on every word up to max_len by its generator values.
    """
    mode = Mode.parse(mode)
    if not M.is_enumerable:
        raise PreconditionError(f"target {M.name} is not enumerable")
    if not M.supports(mode):
        raise PreconditionError(f"target {M.name} is {M.mode.value}, cannot check {mode.value} extension")

    alphabet = _symbols(alphabet_size)
    words = list(all_words(alphabet, max_len))
    pairs = [(w1, w2) for w1 in words for w2 in words if len(w1) + len(w2) <= max_len]
    report = Report("words", f"{M.name}/{mode.value}/V{alphabet_size}")
    enc = M.encode

    for values in product(M.elements, repeat=len(alphabet)):
        fmap = dict(zip(alphabet, values))
        f_json = {v: enc(x) for v, x in fmap.items()}
        ext = {w.letters: extend(fmap, M, w) for w in words}

        report.check("unit", ext[()] == M.unit, lambda: {"f": f_json})
        for v in alphabet:
            eta = word_eta(v, alphabet)
            report.check("eta", ext[eta.letters] == fmap[v], lambda v=v: {"f": f_json, "symbol": v})

        for w in words:
            inv = word_involve(w, mode)
            report.check(
                "involution",
                ext[inv.letters] == M.involve(ext[w.letters]),
                lambda w=w: {"f": f_json, "word": format_word(w)},
            )
            report.check(
                "uniqueness",
                ext[w.letters] == _forced_value(fmap, M, w),
                lambda w=w: {"f": f_json, "word": format_word(w)},
            )
            if M.commutative:
                other = word_involve(w, Mode.NON_REVERSING if mode is Mode.REVERSING else Mode.REVERSING)
                report.check(
                    "modes_agree",
                    ext[inv.letters] == ext[other.letters],
                    lambda w=w: {"f": f_json, "word": format_word(w)},
                )

        for w1, w2 in pairs:
            both = word_concat(w1, w2)
            report.check(
                "homomorphism",
                ext[both.letters] == M.mul(ext[w1.letters], ext[w2.letters]),
                lambda w1=w1, w2=w2: {"f": f_json, "w1": format_word(w1), "w2": format_word(w2)},
            )
    return report


def check_word_laws(alphabet: Sequence[str] = ("a", "b"), max_len: int = 3) -> Report:
    """Involution laws of both free involutive monoids, exhaustively on short words."""
    report = Report("words", f"free/V{len(alphabet)}/len{max_len}")
    words = list(all_words(alphabet, max_len))
    unit = word_unit(alphabet)
    for mode in Mode:
        tag = mode.value
        report.check(f"{tag}:fixes_unit", word_involve(unit, mode) == unit, {"mode": tag})
        for w in words:
            report.check(
                f"{tag}:involutive",
                word_involve(word_involve(w, mode), mode) == w,
                lambda w=w: {"word": format_word(w)},
            )
            report.check(f"{tag}:left_unit", word_concat(unit, w) == w, lambda w=w: {"word": format_word(w)})
            report.check(f"{tag}:right_unit", word_concat(w, unit) == w, lambda w=w: {"word": format_word(w)})
        for w1 in words:
            for w2 in words:
                lhs = word_involve(word_concat(w1, w2), mode)
                if mode is Mode.REVERSING:
                    rhs = word_concat(word_involve(w2, mode), word_involve(w1, mode))
                else:
                    rhs = word_concat(word_involve(w1, mode), word_involve(w2, mode))
                report.check(
                    f"{tag}:product_law",
                    lhs == rhs,
                    lambda w1=w1, w2=w2: {"w1": format_word(w1), "w2": format_word(w2)},
                )
    return report


def check_monoid_handle(M: InvolutiveMonoidHandle) -> Report:
    """Validate an enumerable target: monoid laws, involution, and its mode law."""
    if not M.is_enumerable:
        raise PreconditionError(f"target {M.name} is not enumerable")
    report = Report("words", M.name)
    enc = M.encode
    els = M.elements
    report.check("involution_fixes_unit", M.involve(M.unit) == M.unit, lambda: {"unit": enc(M.unit)})
    for x in els:
        report.check("left_unit", M.mul(M.unit, x) == x, lambda x=x: {"x": enc(x)})
        report.check("right_unit", M.mul(x, M.unit) == x, lambda x=x: {"x": enc(x)})
        report.check("involutive", M.involve(M.involve(x)) == x, lambda x=x: {"x": enc(x)})
    for x, y in product(els, repeat=2):
        xy = M.involve(M.mul(x, y))
        modes = list(Mode) if M.commutative else [M.mode]
        for mode in modes:
            if mode is Mode.REVERSING:
                ok = xy == M.mul(M.involve(y), M.involve(x))
            else:
                ok = xy == M.mul(M.involve(x), M.involve(y))
            report.check(f"{mode.value}:product_law", ok, lambda x=x, y=y: {"x": enc(x), "y": enc(y)})
        if M.commutative:
            report.check("commutative", M.mul(x, y) == M.mul(y, x), lambda x=x, y=y: {"x": enc(x), "y": enc(y)})
    for x, y, z in product(els, repeat=3):
        report.check(
            "associative",
            M.mul(M.mul(x, y), z) == M.mul(x, M.mul(y, z)),
            lambda x=x, y=y, z=z: {"x": enc(x), "y": enc(y), "z": enc(z)},
        )
    return report


# Shipped targets

def mk_int_add(mode: Mode = Mode.NON_REVERSING) -> InvolutiveMonoidHandle:
    """Integers under addition with negation as involution (not enumerable)."""
    return InvolutiveMonoidHandle(
        name="int-add", unit=0, mul=lambda x, y: x + y, involve=lambda x: -x,
        mode=Mode.parse(mode), commutative=True,
    )


def mk_z2(mode: Mode = Mode.REVERSING) -> InvolutiveMonoidHandle:
    """The two-element group {0, 1} under addition mod 2, involution = inverse."""
    return InvolutiveMonoidHandle(
        name="z2", unit=0, mul=lambda x, y: (x + y) % 2, involve=lambda x: (-x) % 2,
        mode=Mode.parse(mode), elements=(0, 1), commutative=True,
    )


def mk_gf9_mul(mode: Mode = Mode.NON_REVERSING) -> InvolutiveMonoidHandle:
    """GF(9) under multiplication with conjugation as involution."""
    return InvolutiveMonoidHandle(
        name="gf9-mul", unit=GF9.one, mul=GF9.mul, involve=GF9.conj,
        mode=Mode.parse(mode), elements=GF9.elements, commutative=True,
        encode=GF9.encode,
    )


def _compose_perm(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(p[q[i]] for i in range(len(q)))


def _invert_perm(p: Tuple[int, ...]) -> Tuple[int, ...]:
    inv = [0] * len(p)
    for i, image in enumerate(p):
        inv[image] = i
    return tuple(inv)


def mk_s3_group() -> InvolutiveMonoidHandle:
    """Symmetric group on three points with inverse as (reversing) involution."""
    return InvolutiveMonoidHandle(
        name="s3", unit=(0, 1, 2), mul=_compose_perm, involve=_invert_perm,
        mode=Mode.REVERSING, elements=tuple(permutations(range(3))),
        encode=lambda p: "".join(str(i) for i in p),
    )


TARGETS: Dict[str, Callable[[Mode], InvolutiveMonoidHandle]] = {
    "int-add": mk_int_add,
    "z2": mk_z2,
    "gf9-mul": mk_gf9_mul,
    "s3": lambda mode=Mode.REVERSING: mk_s3_group(),
}


def get_target(name: str, mode: Mode = Mode.NON_REVERSING) -> InvolutiveMonoidHandle:
    try:
        factory = TARGETS[name]
    except KeyError:
        raise InputError(f"unknown target {name!r}; expected one of {sorted(TARGETS)}")
    return factory(mode)


def parse_target_value(target: InvolutiveMonoidHandle, text: str) -> Any:
    """Parse one --map value for a shipped target."""
    text = text.strip()
    try:
        if target.name == "int-add":
            return int(text)
        if target.name == "z2":
            value = int(text)
            if value not in (0, 1):
                raise ValueError(text)
            return value
        if target.name == "gf9-mul":
            by_text = {str(e): e for e in GF9.elements}
            if text not in by_text:
                raise ValueError(text)
            return by_text[text]
        if target.name == "s3":
            perm = tuple(int(c) for c in text)
            if sorted(perm) != [0, 1, 2]:
                raise ValueError(text)
            return perm
    except ValueError:
        raise InputError(f"bad value {text!r} for target {target.name}")
    raise InputError(f"cannot parse values for target {target.name}")


def format_target_value(target: InvolutiveMonoidHandle, value: Any) -> str:
    if target.name == "s3":
        return target.encode(value)
    return str(value)


# Text grammar

_TOKEN_RE = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<one>1(?![0-9]))|(?P<op>[*~()]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            skipped = len(text[pos:]) - len(text[pos:].lstrip())
            raise InputError(f"unexpected character {text[pos + skipped]!r} at position {pos + skipped}", pos + skipped)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _WordParser:
    def __init__(self, text: str, mode: Mode, alphabet: Optional[Sequence[str]]):
        self.tokens = _tokenize(text)
        self.index = 0
        self.mode = mode
        self.alphabet = frozenset(alphabet) if alphabet is not None else None

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.index]

    def take(self) -> Tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def fail(self, expected: str) -> None:
        kind, value, pos = self.peek()
        found = "end of input" if kind == "end" else repr(value)
        raise InputError(f"expected {expected} at position {pos}, found {found}", pos)

    def parse(self) -> SignedWord:
        w = self.word()
        if self.peek()[0] != "end":
            self.fail("'*' or end of input")
        return w

    def word(self) -> SignedWord:
        w = self.atom()
        while self.peek()[1] == "*" and self.peek()[0] == "op":
            self.take()
            w = word_concat(w, self.atom())
        return w

    def atom(self) -> SignedWord:
        kind, value, pos = self.peek()
        if kind == "one":
            self.take()
            return word_unit(self.alphabet)
        if kind == "ident":
            self.take()
            if self.alphabet is not None and value not in self.alphabet:
                raise InputError(f"unknown symbol {value!r} at position {pos}", pos)
            return word_eta(value, self.alphabet)
        if kind == "op" and value == "~":
            self.take()
            return word_involve(self.atom(), self.mode)
        if kind == "op" and value == "(":
            self.take()
            inner = self.word()
            if self.peek()[1] != ")":
                self.fail("')'")
            self.take()
            return inner
        self.fail("a symbol, '1', '~' or '('")


def parse_word(text: str, mode: Mode = Mode.NON_REVERSING, alphabet: Optional[Sequence[str]] = None) -> SignedWord:
    """Parse the text grammar; "~(...)" uses the involution of `mode`."""
    return _WordParser(text, Mode.parse(mode), alphabet).parse()


def format_word(w: SignedWord) -> str:
    if not w.letters:
        return "1"
    return " * ".join(v if sign is Sign.PLUS else f"~{v}" for sign, v in w.letters)


def word_to_json(w: SignedWord) -> List[List[str]]:
    return [[sign.value, v] for sign, v in w.letters]


def word_from_json(obj: Any, alphabet: Optional[Sequence[str]] = None) -> SignedWord:
    if not isinstance(obj, list):
        raise InputError("a word must be a JSON list of [sign, symbol] pairs")
    letters = []
    for k, item in enumerate(obj):
        if not (isinstance(item, list) and len(item) == 2 and item[0] in ("+", "-") and isinstance(item[1], str)):
            raise InputError(f"bad letter {item!r} at index {k}", k)
        letters.append((Sign(item[0]), item[1]))
    return SignedWord(tuple(letters), frozenset(alphabet) if alphabet is not None else None)
