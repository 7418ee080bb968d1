"""Freely reduced words over named generators.

A word is an immutable tuple of ``(generator, exponent)`` letters in which
adjacent letters carry distinct generators and no exponent is zero.  Every
constructor maintains that form, so downstream code may assume reduced input.

Text syntax: terms ``NAME`` or ``NAME^INT`` joined by ``*``; ``1`` is the
empty word.  Example: ``x^2*y^-3``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Tuple

Letter = Tuple[str, int]


class WordSyntaxError(ValueError):
    pass


class UnknownGenerator(KeyError):
    pass


class Word:
    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters: tuple[Letter, ...] = _reduce(letters)
        self._hash = None

    @classmethod
    def _trusted(cls, letters: tuple[Letter, ...]) -> "Word":
        w = cls.__new__(cls)
        w.letters = letters
        w._hash = None
        return w

    @classmethod
    def gen(cls, name: str, exponent: int = 1) -> "Word":
        return cls._trusted(((name, exponent),) if exponent else ())

    # -- algebra ---------------------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        a, b = self.letters, other.letters
        if not a:
            return other
        if not b:
            return self
        i, j = len(a), 0
        while i > 0 and j < len(b) and a[i - 1][0] == b[j][0]:
            e = a[i - 1][1] + b[j][1]
            if e:
                return Word._trusted(a[: i - 1] + ((b[j][0], e),) + b[j + 1 :])
            i -= 1
            j += 1
        return Word._trusted(a[:i] + b[j:])

    def inverse(self) -> "Word":
        return Word._trusted(tuple((g, -e) for g, e in reversed(self.letters)))

    __invert__ = inverse

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0 or not self.letters:
            return EMPTY
        if len(self.letters) == 1:
            g, e = self.letters[0]
            return Word._trusted(((g, e * n),))
        first, last = self.letters[0][0], self.letters[-1][0]
        if first != last:
            # cyclically reduced: plain repetition is already reduced
            return Word._trusted(self.letters * n)
        result, base = EMPTY, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- inspection ------------------------------------------------------

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    @property
    def length(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def exponent_sum(self, name: str | None = None) -> int:
        return sum(e for g, e in self.letters if name is None or g == name)

    def expand(self) -> list[Letter]:
        """Unit letters ``(g, +-1)`` in order."""
        out = []
        for g, e in self.letters:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for g, e in letters:
        e = int(e)
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            e += stack.pop()[1]
            if e == 0:
                continue
        stack.append((g, e))
    return tuple(stack)


EMPTY = Word._trusted(())


def reduce(letters: Iterable[Letter]) -> Word:
    return Word(letters)


def invert(w: Word) -> Word:
    return w.inverse()


def product(words: Iterable[Word]) -> Word:
    out = EMPTY
    for w in words:
        out = out * w
    return out


@dataclass(frozen=True)
class Substitution:
    """Homomorphism sending each source generator to a target word."""

    mapping: Mapping[str, Word]

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    @property
    def source(self) -> frozenset[str]:
        return frozenset(self.mapping)


def apply(s: Substitution, w: Word) -> Word:
    out = EMPTY
    for g, e in w.letters:
        try:
            image = s.mapping[g]
        except KeyError:
            raise UnknownGenerator(g) from None
        out = out * (image ** e)
    return out


# -- text syntax ---------------------------------------------------------

_TERM = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*([+-]?\d+))?\s*$")


def parse_word(text: str, alphabet: Iterable[str] | None = None) -> Word:
    text = text.strip()
    if text in ("1", ""):
        if not text:
            raise WordSyntaxError("empty input; write 1 for the empty word")
        return EMPTY
    allowed = set(alphabet) if alphabet is not None else None
    letters = []
    for term in text.split("*"):
        m = _TERM.match(term)
        if not m:
            raise WordSyntaxError(f"bad term {term!r} in {text!r}")
        name, exp = m.group(1), m.group(2)
        e = int(exp) if exp is not None else 1
        if e == 0:
            raise WordSyntaxError(f"zero exponent in term {term.strip()!r}")
        if allowed is not None and name not in allowed:
            raise UnknownGenerator(name)
        letters.append((name, e))
    return Word(letters)


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    return "*".join(g if e == 1 else f"{g}^{e}" for g, e in w.letters)
