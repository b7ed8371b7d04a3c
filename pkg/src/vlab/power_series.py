"""Truncated noncommutative power series over a prime field.

Monomials are flat sequences of variable indices (the algebra is free
noncommutative, so exponent vectors would be wrong); all monomials of total
degree >= d are dropped.  Units with constant term 1 form a finite p-group,
which is how a single reduced word is defeated: mapping x_i to 1 + y_i sends
a nontrivial word to a series with a predictable nonzero monomial, so the law
fails in that unit group.

For a reduced word with syllable exponents a_i = b_i * p^{k_i} (p not
dividing b_i), the image has a unique monomial of total degree
p^{k_1} + ... + p^{k_s}, namely y_{r_1}^{p^{k_1}} ... y_{r_s}^{p^{k_s}} with
coefficient b_1 * ... * b_s mod p, so truncating one degree above that sum
leaves the image visibly different from 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GroupError
from .words import Word

Monomial = tuple[int, ...]  # sequence over variable indices 1..k


@dataclass(frozen=True)
class SeriesParams:
    p: int
    variables: int
    truncation: int

    def __post_init__(self):
        if self.p < 2:
            raise GroupError("p must be a prime >= 2")
        if self.variables < 1:
            raise GroupError("need at least one variable")
        if self.truncation < 1:
            raise GroupError("truncation degree must be >= 1")


class TruncatedSeries:
    """Sparse series: monomial tuple -> nonzero coefficient mod p."""

    __slots__ = ("params", "terms")

    def __init__(self, params: SeriesParams, terms: dict[Monomial, int] | None = None):
        self.params = params
        clean: dict[Monomial, int] = {}
        for mono, coeff in (terms or {}).items():
            if len(mono) >= params.truncation:
                continue
            if any(not 1 <= v <= params.variables for v in mono):
                raise GroupError(f"monomial {mono} uses an unknown variable")
            c = coeff % params.p
            if c:
                clean[mono] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(params: SeriesParams) -> TruncatedSeries:
        return TruncatedSeries(params, {})

    @staticmethod
    def one(params: SeriesParams) -> TruncatedSeries:
        return TruncatedSeries(params, {(): 1})

    @staticmethod
    def variable(params: SeriesParams, i: int) -> TruncatedSeries:
        return TruncatedSeries(params, {(i,): 1})

    @staticmethod
    def one_plus_variable(params: SeriesParams, i: int) -> TruncatedSeries:
        return TruncatedSeries(params, {(): 1, (i,): 1})

    # -- ring operations -------------------------------------------------------

    def _check(self, other: TruncatedSeries):
        if self.params != other.params:
            raise GroupError("mixed series parameters")

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms.get(mono, 0) + coeff
        return TruncatedSeries(self.params, terms)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms.get(mono, 0) - coeff
        return TruncatedSeries(self.params, terms)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        d = self.params.truncation
        terms: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                if len(m1) + len(m2) >= d:
                    continue
                mono = m1 + m2
                terms[mono] = terms.get(mono, 0) + c1 * c2
        return TruncatedSeries(self.params, terms)

    def scale(self, c: int) -> TruncatedSeries:
        return TruncatedSeries(self.params,
                               {m: c * v for m, v in self.terms.items()})

    def coefficient(self, mono: Monomial) -> int:
        return self.terms.get(tuple(mono), 0)

    def constant_term(self) -> int:
        return self.terms.get((), 0)

    def is_one(self) -> bool:
        return self.terms == {(): 1}

    def augmentation_part(self) -> TruncatedSeries:
        """The series minus its constant term."""
        terms = {m: c for m, c in self.terms.items() if m}
        return TruncatedSeries(self.params, terms)

    def unit_inverse(self) -> TruncatedSeries:
        """Inverse of a series with constant term 1, via the finite geometric
        series: the augmentation part is nilpotent at truncation d."""
        if self.constant_term() != 1:
            raise GroupError("unit_inverse needs constant term 1")
        u = self.augmentation_part()
        result = TruncatedSeries.one(self.params)
        power = TruncatedSeries.one(self.params)
        for j in range(1, self.params.truncation):
            power = power * u
            if not power.terms:
                break
            result = result + power.scale((-1) ** j)
        return result

    def __pow__(self, n: int) -> TruncatedSeries:
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = TruncatedSeries.one(self.params)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def __hash__(self):
        return hash((self.params, tuple(sorted(self.terms.items()))))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (len(m), m)):
            coeff = self.terms[mono]
            if not mono:
                parts.append(str(coeff))
            else:
                body = "".join(f"y{v}" for v in mono)
                parts.append(body if coeff == 1 else f"{coeff}{body}")
        return " + ".join(parts)


def magnus_image(word: Word, p: int, d: int,
                 variables: int | None = None) -> TruncatedSeries:
    """Evaluate the word at x_i -> 1 + y_i in the truncated series ring."""
    if d < 1:
        raise GroupError("truncation degree must be >= 1")
    k = variables if variables is not None else max(word.arity, 1)
    params = SeriesParams(p=p, variables=k, truncation=d)
    result = TruncatedSeries.one(params)
    for var, exp in word.letters:
        base = TruncatedSeries.one_plus_variable(params, var)
        if exp < 0:
            base = base.unit_inverse()
        result = result * (base ** abs(exp))
    return result


def p_adic_split(n: int, p: int) -> tuple[int, int]:
    """n = b * p^k with p not dividing b; returns (b, k).  Sign stays on b."""
    if n == 0:
        raise GroupError("0 has no p-adic split")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return n, k


@dataclass(frozen=True)
class WitnessReport:
    word: Word
    p: int
    truncation: int
    monomial: Monomial
    predicted_coefficient: int
    extracted_coefficient: int
    image_is_one: bool

    @property
    def consistent(self) -> bool:
        return (self.predicted_coefficient == self.extracted_coefficient
                and self.predicted_coefficient != 0
                and not self.image_is_one)


def law_failure_witness(word: Word, p: int) -> WitnessReport:
    """Defeat a nontrivial reduced word in a finite p-group of unit series.

    Writes each syllable exponent as b_i * p^{k_i}, truncates one degree
    above p^{k_1} + ... + p^{k_s}, and checks that the designated monomial
    carries coefficient b_1 ... b_s mod p (nonzero) and the image is not 1.
    """
    if word.is_identity():
        raise GroupError("the empty word is a law of every group")
    splits = [p_adic_split(exp, p) for _, exp in word.letters]
    degree_sum = sum(p ** k for _, k in splits)
    d = degree_sum + 1
    monomial: list[int] = []
    coeff = 1
    for (var, _), (b, k) in zip(word.letters, splits):
        monomial.extend([var] * (p ** k))
        coeff = (coeff * b) % p
    image = magnus_image(word, p, d)
    extracted = image.coefficient(tuple(monomial))
    return WitnessReport(
        word=word, p=p, truncation=d, monomial=tuple(monomial),
        predicted_coefficient=coeff, extracted_coefficient=extracted,
        image_is_one=image.is_one())
