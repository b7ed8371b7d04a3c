"""Variety descriptors, verbal subgroups, and membership tests.

A descriptor is one of: an explicit finite law set, the named families (the
abelian variety, nilpotent of class <= c, solvable of length <= n), the
variety generated by a fixed finite group (fixture-backed, deliberately
partial), or a product ``prod(N, Q)``: the class of extensions of an N-group
by a Q-group.

The verbal subgroup of a product is computed with the identity
``(NQ)(G) = N(Q(G))``, which the test suite validates against the brute-force
value collection on small groups via the universal property.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import DEFAULT_BUDGETS, Budgets
from .errors import BudgetExceeded, FixtureGap, GroupError, ParseError
from .perm import PermutationGroup, all_tuples
from .structure import (class_representatives, derived_series,
                        derived_subgroup, generated_subgroup,
                        lower_central_series, normal_closure)
from .words import (Word, as_derived_law, as_nilpotency_law, as_power_law,
                    derived_law, nilpotency_law, parse_word)

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


# -- descriptors ---------------------------------------------------------------


@dataclass(frozen=True)
class Laws:
    words: tuple[Word, ...]

    def __str__(self):
        return "laws:{" + ";".join(str(w).replace(" ", "") for w in self.words) + "}"


@dataclass(frozen=True)
class Abelian:
    def __str__(self):
        return "A"


@dataclass(frozen=True)
class NilpotentClass:
    c: int

    def __post_init__(self):
        if self.c < 1:
            raise GroupError("Nc needs c >= 1")

    def __str__(self):
        return f"Nc:{self.c}"


@dataclass(frozen=True)
class SolvableLength:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise GroupError("Sl needs n >= 1")

    def __str__(self):
        return f"Sl:{self.n}"


@dataclass(frozen=True)
class VarOfGroup:
    group_name: str

    def __str__(self):
        return f"var:{self.group_name}"


@dataclass(frozen=True)
class ProductVariety:
    left: "Descriptor"   # the normal-subgroup factor
    right: "Descriptor"  # the quotient factor

    def __str__(self):
        return f"prod({self.left},{self.right})"


Descriptor = Laws | Abelian | NilpotentClass | SolvableLength | VarOfGroup | ProductVariety


def parse_descriptor(text: str) -> Descriptor:
    """Grammar: A | Nc:c | Sl:n | var:NAME | laws:{w;w;...} | prod(d,d)."""
    s = text.strip()
    if s == "A":
        return Abelian()
    if s.startswith("Nc:"):
        return NilpotentClass(int(s[3:]))
    if s.startswith("Sl:"):
        return SolvableLength(int(s[3:]))
    if s.startswith("var:"):
        name = s[4:].strip()
        if not name:
            raise ParseError("var: needs a group name")
        return VarOfGroup(name)
    if s.startswith("laws:{") and s.endswith("}"):
        body = s[len("laws:{"):-1]
        words = tuple(parse_word(part) for part in body.split(";") if part.strip())
        if not words:
            raise ParseError("laws:{} needs at least one word")
        return Laws(words)
    if s.startswith("prod(") and s.endswith(")"):
        body = s[len("prod("):-1]
        depth = 0
        for i, ch in enumerate(body):
            if ch in "([{":
                depth += 1
            elif ch in ")]}":
                depth -= 1
            elif ch == "," and depth == 0:
                return ProductVariety(parse_descriptor(body[:i]),
                                      parse_descriptor(body[i + 1:]))
        raise ParseError(f"prod needs two comma-separated descriptors: {text!r}")
    raise ParseError(f"unknown descriptor {text!r}")


def descriptor_laws(desc: Descriptor) -> tuple[Word, ...]:
    """The defining law set for the named families."""
    if isinstance(desc, Laws):
        return desc.words
    if isinstance(desc, Abelian):
        return (nilpotency_law(1),)
    if isinstance(desc, NilpotentClass):
        return (nilpotency_law(desc.c),)
    if isinstance(desc, SolvableLength):
        return (derived_law(desc.n),)
    raise GroupError(f"{desc} has no explicit finite law basis here")


# -- fixtures -------------------------------------------------------------------


@dataclass(frozen=True)
class Fixture:
    """An externally sourced fact, never inferred; provenance is mandatory.

    kind is one of ``known-epi`` (subgroup is epimorphically embedded in group
    within the descriptor's variety), ``known-member`` or ``known-nonmember``
    (group membership in the descriptor's variety).
    """

    kind: str
    group: PermutationGroup
    subgroup: PermutationGroup | None
    descriptor: Descriptor
    provenance: str

    def __post_init__(self):
        if self.kind not in ("known-epi", "known-member", "known-nonmember"):
            raise GroupError(f"unknown fixture kind {self.kind!r}")
        if not self.provenance.strip():
            raise GroupError("fixtures must carry provenance")
        if self.kind == "known-epi" and self.subgroup is None:
            raise GroupError("known-epi fixtures need a subgroup")


def find_member_fixture(fixtures, G: PermutationGroup, desc: Descriptor):
    """Membership fixture matching G (as a concrete subgroup of Sym(deg))."""
    for fx in fixtures:
        if fx.descriptor != desc:
            continue
        if fx.kind in ("known-member", "known-nonmember") \
                and fx.group.same_group_as(G):
            return fx
    return None


def find_epi_fixture(fixtures, G: PermutationGroup, H: PermutationGroup,
                     desc: Descriptor):
    for fx in fixtures:
        if fx.kind != "known-epi" or fx.descriptor != desc:
            continue
        if fx.group.same_group_as(G) and fx.subgroup.same_group_as(H):
            return fx
    return None


# -- word evaluation over a group -----------------------------------------------


@dataclass
class LawCheck:
    holds: bool
    witness_word: Word | None = None
    witness_tuple: tuple | None = None
    note: str = ""


def eval_word(word: Word, values, G: PermutationGroup):
    """Evaluate a law at a tuple of elements of G."""
    for v in values:
        if v.degree != G.degree:
            raise GroupError("tuple entry degree differs from G")
    if word.arity > len(values):
        raise GroupError(f"word needs arity {word.arity}, got {len(values)}")
    if word.is_identity() or not word.letters:
        return G.identity()
    return word.evaluate(list(values) + [G.identity()])


def _value_seed(G: PermutationGroup, word: Word, budgets: Budgets):
    """Generators for the single-word verbal subgroup, by strategy.

    Word values are closed under conjugation (substituting a conjugated tuple
    conjugates the value), so the subgroup they generate is normal and the
    targeted strategies below agree with full tuple enumeration.
    """
    e = as_power_law(word)
    if e is not None:
        reps = class_representatives(G, budgets)
        values = [r ** e for r in reps]
        return normal_closure(G, [v for v in values if not v.is_identity()])
    c = as_nilpotency_law(word)
    if c is not None:
        return lower_central_series(G, c)[c]
    n = as_derived_law(word)
    if n is not None:
        series = derived_series(G)
        return series[min(n, len(series) - 1)]
    # fallback: full tuple enumeration under budget
    elements = G.elements(budgets.max_enumerate)
    values = set()
    gens = []
    for tup in all_tuples(elements, word.arity, budgets.max_tuples):
        v = word.evaluate(list(tup))
        if not v.is_identity() and v.images not in values:
            values.add(v.images)
            gens.append(v)
    return generated_subgroup(G, gens)


def verbal_subgroup(G: PermutationGroup, laws,
                    budgets: Budgets = DEFAULT_BUDGETS) -> PermutationGroup:
    """Subgroup generated by all values of all laws; normal by construction."""
    laws = list(laws)
    if not laws:
        raise GroupError("verbal_subgroup needs at least one law")
    result = G.subgroup([G.identity()])
    for word in laws:
        if word.is_identity():
            continue
        part = _value_seed(G, word, budgets)
        if part.order() > 1:
            result = generated_subgroup(
                G, list(result.generators) + list(part.generators))
    return result


def _law_holds(G: PermutationGroup, word: Word, budgets: Budgets) -> bool:
    e = as_power_law(word)
    if e is not None:
        return all((r ** e).is_identity()
                   for r in class_representatives(G, budgets))
    c = as_nilpotency_law(word)
    if c is not None:
        return lower_central_series(G, c)[c].order() == 1
    n = as_derived_law(word)
    if n is not None:
        series = derived_series(G)
        return series[-1].order() == 1 and len(series) - 1 <= n
    elements = G.elements(budgets.max_enumerate)
    for tup in all_tuples(elements, word.arity, budgets.max_tuples):
        if not word.evaluate(list(tup)).is_identity():
            return False
    return True


def _find_witness(G: PermutationGroup, word: Word, budgets: Budgets,
                  cap: int = 500_000):
    """A violating tuple, by bounded deterministic search (None if capped)."""
    try:
        elements = G.elements(budgets.max_enumerate)
    except BudgetExceeded:
        return None
    count = 0
    import itertools
    for tup in itertools.product(elements, repeat=word.arity):
        count += 1
        if count > cap:
            return None
        if not word.evaluate(list(tup)).is_identity():
            return tup
    return None


def satisfies_laws(G: PermutationGroup, laws,
                   budgets: Budgets = DEFAULT_BUDGETS) -> LawCheck:
    """True iff every law vanishes identically; early exit with a witness."""
    for word in laws:
        if word.is_identity():
            continue
        if not _law_holds(G, word, budgets):
            witness = _find_witness(G, word, budgets)
            note = "" if witness is not None else \
                "witness search capped; violation certified by subgroup strategy"
            return LawCheck(holds=False, witness_word=word,
                            witness_tuple=witness, note=note)
    return LawCheck(holds=True)


# -- descriptor-level operations --------------------------------------------------


def q_verbal(G: PermutationGroup, desc: Descriptor,
             budgets: Budgets = DEFAULT_BUDGETS,
             fixtures=()) -> PermutationGroup:
    """The verbal subgroup of G for desc: the least normal N with G/N in desc."""
    if isinstance(desc, Abelian):
        return derived_subgroup(G)
    if isinstance(desc, NilpotentClass):
        return lower_central_series(G, desc.c)[desc.c]
    if isinstance(desc, SolvableLength):
        series = derived_series(G)
        return series[min(desc.n, len(series) - 1)]
    if isinstance(desc, Laws):
        return verbal_subgroup(G, desc.words, budgets)
    if isinstance(desc, ProductVariety):
        inner = q_verbal(G, desc.right, budgets, fixtures)
        return q_verbal(inner, desc.left, budgets, fixtures)
    if isinstance(desc, VarOfGroup):
        if G.order() == 1:
            return G.subgroup([G.identity()])
        raise FixtureGap(
            f"verbal subgroup for {desc} is undecidable with current fixtures")
    raise GroupError(f"unhandled descriptor {desc!r}")


def member_of_variety(G: PermutationGroup, desc: Descriptor,
                      budgets: Budgets = DEFAULT_BUDGETS,
                      fixtures=()):
    """Three-valued membership: True, False, or None for unknown."""
    if G.order() == 1:
        return True
    if isinstance(desc, Abelian):
        return G.is_abelian()
    if isinstance(desc, NilpotentClass):
        return lower_central_series(G, desc.c)[desc.c].order() == 1
    if isinstance(desc, SolvableLength):
        series = derived_series(G)
        return series[-1].order() == 1 and len(series) - 1 <= desc.n
    if isinstance(desc, Laws):
        return satisfies_laws(G, desc.words, budgets).holds
    if isinstance(desc, ProductVariety):
        inner = q_verbal(G, desc.right, budgets, fixtures)
        return member_of_variety(inner, desc.left, budgets, fixtures)
    if isinstance(desc, VarOfGroup):
        fx = find_member_fixture(fixtures, G, desc)
        if fx is not None:
            return fx.kind == "known-member"
        # necessary-condition screen: laws that hold in the generating group
        # must hold in every member.
        generator = _resolve_variety_group(desc, fixtures)
        if generator is not None:
            for law in _screen_laws(generator, budgets):
                if not _law_holds(G, law, budgets):
                    return False
        return None
    raise GroupError(f"unhandled descriptor {desc!r}")


def _resolve_variety_group(desc: VarOfGroup, fixtures):
    """The concrete group generating var:NAME, if a fixture names it."""
    for fx in fixtures:
        if fx.descriptor == desc and fx.kind == "known-member" \
                and fx.group.name == desc.group_name:
            return fx.group
    from .catalog import resolve_group_name
    try:
        return resolve_group_name(desc.group_name)
    except (ParseError, KeyError):
        return None


def _screen_laws(S: PermutationGroup, budgets: Budgets):
    """Cheap sampled laws of S: the exponent law and small named families."""
    laws = []
    exponent = 1
    for rep in class_representatives(S, budgets):
        o = rep.order()
        from math import gcd
        exponent = exponent * o // gcd(exponent, o)
    laws.append(Word.variable(1, exponent))
    for c in (1, 2):
        if lower_central_series(S, c)[c].order() == 1:
            laws.append(nilpotency_law(c))
    series = derived_series(S)
    if series[-1].order() == 1:
        laws.append(derived_law(len(series) - 1))
    return laws


def is_solvable_variety(desc: Descriptor, fixtures=()) -> str:
    """Structural yes/no/unknown; never guesses from raw law sets."""
    if isinstance(desc, (Abelian, NilpotentClass, SolvableLength)):
        return YES
    if isinstance(desc, ProductVariety):
        left = is_solvable_variety(desc.left, fixtures)
        right = is_solvable_variety(desc.right, fixtures)
        if left == YES and right == YES:
            return YES
        if NO in (left, right):
            return NO
        return UNKNOWN
    if isinstance(desc, VarOfGroup):
        generator = _resolve_variety_group(desc, fixtures)
        if generator is not None and generator.order() > 1:
            if derived_subgroup(generator).order() == generator.order():
                return NO  # a perfect generator is a nonsolvable member
        return UNKNOWN
    return UNKNOWN
