"""Free-group words: the laws that cut out varieties.

A word is a reduced sequence of (variable, exponent) syllables with variables
numbered from 1.  Syntax: ``x1``, ``x2^-3``, juxtaposition for products, and
``[w1,w2]`` for the commutator ``w1^-1 w2^-1 w1 w2``; a bracket with more than
two entries is the left-normed commutator ``[[w1,w2],w3,...]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import GroupError, ParseError
from .perm import Permutation


def _reduce(letters):
    out: list[tuple[int, int]] = []
    for var, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == var:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((var, merged))
        else:
            out.append((var, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A reduced word; ``letters`` pairs are (variable index >= 1, exponent)."""

    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for var, exp in self.letters:
            if var < 1:
                raise GroupError("variable indices start at 1")
            if exp == 0:
                raise GroupError("zero exponent in a reduced word")
        for (a, _), (b, _) in zip(self.letters, self.letters[1:]):
            if a == b:
                raise GroupError("adjacent syllables share a variable")

    @staticmethod
    def make(letters) -> Word:
        return Word(_reduce(letters))

    @staticmethod
    def variable(i: int, exp: int = 1) -> Word:
        return Word.make([(i, exp)])

    @staticmethod
    def identity() -> Word:
        return Word(())

    @property
    def arity(self) -> int:
        return max((var for var, _ in self.letters), default=0)

    def is_identity(self) -> bool:
        return not self.letters

    def length(self) -> int:
        """Total letter count (sum of |exponent| over syllables)."""
        return sum(abs(exp) for _, exp in self.letters)

    def __mul__(self, other: Word) -> Word:
        return Word.make(self.letters + other.letters)

    def inverse(self) -> Word:
        return Word(tuple((var, -exp) for var, exp in reversed(self.letters)))

    def __pow__(self, n: int) -> Word:
        if n == 0:
            return Word.identity()
        if n < 0:
            return self.inverse() ** (-n)
        result = Word.identity()
        for _ in range(n):
            result = result * self
        return result

    def evaluate(self, values) -> Permutation:
        """Substitute values[i-1] for x_i and multiply left to right."""
        if self.arity > len(values):
            raise GroupError(
                f"word of arity {self.arity} needs {self.arity} values, "
                f"got {len(values)}")
        if not values:
            raise GroupError("evaluation needs at least one value for degree")
        result = Permutation.identity(values[0].degree)
        for var, exp in self.letters:
            result = result * (values[var - 1] ** exp)
        return result

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for var, exp in self.letters:
            parts.append(f"x{var}" if exp == 1 else f"x{var}^{exp}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Word.parse({str(self)!r})"

    @staticmethod
    def parse(text: str) -> Word:
        return parse_word(text)


def commutator_word(a: Word, b: Word) -> Word:
    return a.inverse() * b.inverse() * a * b


def left_normed_commutator(words) -> Word:
    words = list(words)
    if not words:
        raise GroupError("empty commutator")
    acc = words[0]
    for w in words[1:]:
        acc = commutator_word(acc, w)
    return acc


COMMUTATOR = commutator_word(Word.variable(1), Word.variable(2))


def nilpotency_law(c: int) -> Word:
    """Left-normed commutator of weight c+1 on distinct variables."""
    if c < 1:
        raise GroupError("nilpotency class must be >= 1")
    return left_normed_commutator([Word.variable(i) for i in range(1, c + 2)])


def derived_law(n: int) -> Word:
    """The iterated-commutator law of derived length n, on 2^n variables."""
    if n < 1:
        raise GroupError("derived length must be >= 1")

    def rec(depth: int, start: int) -> Word:
        if depth == 0:
            return Word.variable(start)
        half = 2 ** (depth - 1)
        return commutator_word(rec(depth - 1, start),
                               rec(depth - 1, start + half))

    return rec(n, 1)


def power_law(e: int) -> Word:
    if e == 0:
        raise GroupError("x^0 is the trivial law")
    return Word.variable(1, e)


# -- parser -------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(x\d+|\[|\]|,|\(|\)|\^-?\d+)")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"bad token in word {text!r}", position=pos)
        tokens.append((match.group(1), pos))
        pos = match.end()
    return tokens


class _WordParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self):
        if self.index < len(self.tokens):
            return self.tokens[self.index][0]
        return None

    def next(self):
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def parse(self) -> Word:
        word = self.parse_product(stop={None})
        if self.peek() is not None:
            tok, pos = self.tokens[self.index]
            raise ParseError(f"unexpected {tok!r} in word {self.text!r}",
                             position=pos)
        return word

    def parse_product(self, stop) -> Word:
        result = Word.identity()
        while self.peek() is not None and self.peek() not in stop:
            result = result * self.parse_term()
        return result

    def parse_term(self) -> Word:
        tok, pos = self.next()
        if tok.startswith("x"):
            atom = Word.variable(int(tok[1:]))
        elif tok == "(":
            atom = self.parse_product(stop={")"})
            self._expect(")")
        elif tok == "[":
            entries = [self.parse_product(stop={",", "]"})]
            while self.peek() == ",":
                self.next()
                entries.append(self.parse_product(stop={",", "]"}))
            self._expect("]")
            if len(entries) < 2:
                raise ParseError("commutator needs at least two entries",
                                 position=pos)
            atom = left_normed_commutator(entries)
        else:
            raise ParseError(f"unexpected {tok!r} in word {self.text!r}",
                             position=pos)
        if self.peek() is not None and self.peek().startswith("^"):
            exp_tok, _ = self.next()
            atom = atom ** int(exp_tok[1:])
        return atom

    def _expect(self, tok: str):
        if self.peek() != tok:
            pos = (self.tokens[self.index][1]
                   if self.index < len(self.tokens) else len(self.text))
            raise ParseError(f"expected {tok!r} in word {self.text!r}",
                             position=pos)
        self.next()


def parse_word(text: str) -> Word:
    word = _WordParser(text).parse()
    return word


# -- structural classification (drives evaluation strategies) -----------------


def as_power_law(word: Word) -> int | None:
    """Exponent e if the word is x_i^e for a single variable, else None."""
    if len(word.letters) == 1:
        return word.letters[0][1]
    return None


def as_nilpotency_law(word: Word) -> int | None:
    """c if the word is the left-normed weight-(c+1) commutator, else None."""
    arity = word.arity
    for c in range(1, 12):
        if c + 1 != arity:
            continue
        if word == nilpotency_law(c):
            return c
    return None


def as_derived_law(word: Word) -> int | None:
    """n if the word is the derived-length-n law, else None."""
    for n in range(1, 8):
        candidate = derived_law(n)
        if candidate.arity > word.arity:
            return None
        if word == candidate:
            return n
    return None
