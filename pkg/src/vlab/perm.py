"""Permutations and permutation groups with a deterministic stabilizer chain.

Conventions used throughout the library:

* points are 0-based integers ``0..degree-1``;
* products compose left to right: ``(p * q)(x) == q(p(x))``;
* conjugation is ``p ** g == g^-1 * p * g``;
* the canonical ordering of group elements is lexicographic on image tuples
  (so the identity always sorts first).

The stabilizer chain is built by a plain deterministic Schreier-Sims: base
points are the smallest moved points, orbits are explored breadth-first with
generators in list order.  Two runs over the same generator list produce the
same chain, the same transversals and the same element enumeration, which is
what makes certificates reproducible.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import gcd

from .errors import BudgetExceeded, DegreeMismatch, GroupError, ParseError


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection on 0..degree-1, stored as the tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise GroupError(f"not a permutation of 0..{n - 1}: {self.images}")

    @staticmethod
    def identity(degree: int) -> Permutation:
        return Permutation(tuple(range(degree)))

    @staticmethod
    def from_cycles(degree: int, cycles) -> Permutation:
        images = list(range(degree))
        for cycle in cycles:
            if len(set(cycle)) != len(cycle):
                raise GroupError(f"repeated point in cycle {cycle}")
            for a, b in zip(cycle, cycle[1:]):
                images[a] = b
            if cycle:
                images[cycle[-1]] = cycle[0]
        return Permutation(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def apply(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if len(self.images) != len(other.images):
            raise DegreeMismatch(
                f"degree {len(self.images)} vs {len(other.images)}")
        q = other.images
        return Permutation(tuple(q[i] for i in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, g):
        # integer power; for a Permutation exponent this is conjugation g^-1*self*g
        if isinstance(g, Permutation):
            return g.inverse() * self * g
        n = g
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(len(self.images))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def moved_points(self):
        return [i for i, j in enumerate(self.images) if i != j]

    def cycles(self):
        """Nontrivial cycles, each starting at its least point, sorted."""
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cycle = [i]
            j = self.images[i]
            while j != i:
                seen.add(j)
                cycle.append(j)
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        n = 1
        for cycle in self.cycles():
            n = n * len(cycle) // gcd(n, len(cycle))
        return n

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation.parse({str(self)!r}, degree={self.degree})"

    @staticmethod
    def parse(text: str, degree: int | None = None) -> Permutation:
        return parse_permutation(text, degree)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Parse cycle notation like ``(0 1 2 3 4)(5 6)``; ``()`` is the identity.

    Points are 0-based and separated by whitespace (commas tolerated).
    """
    stripped = text.strip()
    if stripped in ("", "()"):
        if degree is None:
            raise ParseError("identity needs an explicit degree")
        return Permutation.identity(degree)
    rest = stripped
    cycles = []
    pos = 0
    while rest:
        match = _CYCLE_RE.match(rest)
        if match is None:
            raise ParseError(f"expected a cycle in {text!r}", position=pos)
        body = match.group(1).replace(",", " ").split()
        try:
            points = [int(tok) for tok in body]
        except ValueError as exc:
            raise ParseError(f"bad point in cycle {match.group(0)!r}: {exc}",
                             position=pos) from None
        if any(p < 0 for p in points):
            raise ParseError("points are 0-based and nonnegative", position=pos)
        if points:
            cycles.append(points)
        pos += match.end()
        rest = rest[match.end():].lstrip()
    needed = max((max(c) for c in cycles), default=-1) + 1
    if degree is None:
        degree = needed
    elif needed > degree:
        raise ParseError(f"cycle uses point {needed - 1} >= degree {degree}")
    return Permutation.from_cycles(degree, cycles)


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point: int, degree: int):
        self.point = point
        # generators of this level's full stabilizer group (not a partition:
        # every element of the deeper group that surfaces here is appended)
        self.gens: list[Permutation] = []
        self.transversal: dict[int, Permutation] = {
            point: Permutation.identity(degree)}


class StabilizerChain:
    """Base and strong generating set for a finite permutation group.

    Textbook deterministic Schreier-Sims: level i holds a generating set of
    the pointwise stabilizer of the first i base points, its orbit is
    explored breadth-first with generators in list order, and every Schreier
    generator that fails to sift is adjoined to the next level.
    """

    def __init__(self, degree: int, generators):
        self.degree = degree
        self.levels: list[_Level] = []
        for g in generators:
            if not g.is_identity():
                self._add_generator(0, g)

    @property
    def base(self):
        return [lvl.point for lvl in self.levels]

    def order(self) -> int:
        n = 1
        for lvl in self.levels:
            n *= len(lvl.transversal)
        return n

    def sift(self, p: Permutation) -> tuple[Permutation, int]:
        """Reduce p through the chain; returns (residue, level reached)."""
        return self._sift_from(0, p)

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatch(
                f"element degree {p.degree} vs group degree {self.degree}")
        residue, _ = self.sift(p)
        return residue.is_identity()

    def _add_generator(self, i: int, g: Permutation):
        if g.is_identity():
            return
        if i == len(self.levels):
            point = min(g.moved_points())
            self.levels.append(_Level(point, self.degree))
        lvl = self.levels[i]
        lvl.gens.append(g)
        # deterministic breadth-first orbit of the base point
        transversal = {lvl.point: Permutation.identity(self.degree)}
        queue = [lvl.point]
        while queue:
            p = queue.pop(0)
            u = transversal[p]
            for s in lvl.gens:
                q = s.images[p]
                if q not in transversal:
                    transversal[q] = u * s
                    queue.append(q)
        lvl.transversal = transversal
        # every Schreier generator lies in the stabilizer; those that do not
        # sift through the deeper chain become generators one level down
        for p in sorted(transversal):
            u = transversal[p]
            for s in lvl.gens:
                q = s.images[p]
                schreier = u * s * transversal[q].inverse()
                if schreier.is_identity():
                    continue
                residue, _ = self._sift_from(i + 1, schreier)
                if not residue.is_identity():
                    self._add_generator(i + 1, residue)

    def _sift_from(self, start: int, p: Permutation):
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            x = p.images[lvl.point]
            if x == lvl.point:
                continue
            u = lvl.transversal.get(x)
            if u is None:
                return p, i
            p = p * u.inverse()
        return p, len(self.levels)

    def iter_elements(self):
        """Yield all elements (unsorted, but in a deterministic order)."""

        def rec(i):
            if i == len(self.levels):
                yield Permutation.identity(self.degree)
                return
            lvl = self.levels[i]
            cosets = [lvl.transversal[p] for p in sorted(lvl.transversal)]
            for h in rec(i + 1):
                for u in cosets:
                    yield h * u

        return rec(0)


class PermutationGroup:
    """A finite permutation group given by generators.

    Values are immutable once constructed; the stabilizer chain and element
    list are transparent caches (results are identical with or without them),
    so instances are safe to share across threads.
    """

    def __init__(self, degree: int, generators, name: str | None = None):
        gens = []
        seen = set()
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(
                    f"generator degree {g.degree} != group degree {degree}")
            if g.images in seen:
                continue
            seen.add(g.images)
            gens.append(g)
        if not any(not g.is_identity() for g in gens):
            gens = [Permutation.identity(degree)]
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.name = name
        self._chain: StabilizerChain | None = None
        self._elements: tuple[Permutation, ...] | None = None
        self._order: int | None = None

    # -- chain-backed queries ------------------------------------------------

    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, self.generators)
        return self._chain

    def order(self) -> int:
        if self._order is None:
            self._order = self.chain().order()
        return self._order

    def contains(self, p: Permutation) -> bool:
        return self.chain().contains(p)

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)

    def __len__(self) -> int:
        return self.order()

    def is_trivial(self) -> bool:
        return self.order() == 1

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a
                   for i, a in enumerate(gens) for b in gens[i + 1:])

    def elements(self, max_enumerate: int = 100_000):
        """All elements, sorted by image tuple (the canonical ordering)."""
        if self._elements is None:
            n = self.order()
            if n > max_enumerate:
                raise BudgetExceeded(
                    f"group of order {n} exceeds enumeration budget "
                    f"{max_enumerate}",
                    budget_name="max_enumerate",
                    limit=max_enumerate, requested=n)
            self._elements = tuple(sorted(self.chain().iter_elements()))
        return self._elements

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def subgroup(self, generators, name: str | None = None) -> PermutationGroup:
        """A subgroup value of the same degree; callers keep containment."""
        return PermutationGroup(self.degree, generators, name=name)

    def is_subgroup_of(self, other: PermutationGroup) -> bool:
        if self.degree != other.degree:
            return False
        return all(other.contains(g) for g in self.generators)

    def same_group_as(self, other: PermutationGroup) -> bool:
        """Equality as subgroups of Sym(degree): same degree, same elements."""
        return (self.degree == other.degree
                and self.order() == other.order()
                and self.is_subgroup_of(other))

    def random_element(self, rng) -> Permutation:
        """Uniform random element via the chain transversals."""
        g = Permutation.identity(self.degree)
        for lvl in self.chain().levels:
            points = sorted(lvl.transversal)
            g = g * lvl.transversal[rng.choice(points)]
        return g

    def __repr__(self) -> str:
        label = self.name or f"degree {self.degree}"
        return (f"<PermutationGroup {label}, "
                f"{len(self.generators)} generators>")


def mulclose(generators, max_size: int = 2_000_000):
    """Exhaustive closure of a generator list; the order oracle for tests."""
    if not generators:
        raise GroupError("mulclose needs at least one permutation")
    elements = {g.images: g for g in generators}
    identity = Permutation.identity(generators[0].degree)
    elements[identity.images] = identity
    frontier = list(elements.values())
    while frontier:
        new = []
        for a in frontier:
            for g in generators:
                c = a * g
                if c.images not in elements:
                    elements[c.images] = c
                    new.append(c)
                    if len(elements) > max_size:
                        raise BudgetExceeded(
                            f"closure exceeded {max_size} elements",
                            budget_name="mulclose", limit=max_size)
        frontier = new
    return sorted(elements.values())


# -- named constructors ------------------------------------------------------


def trivial_group(degree: int = 1) -> PermutationGroup:
    return PermutationGroup(degree, [Permutation.identity(degree)],
                            name=f"V{degree}" if degree > 1 else "1")


def cyclic_group(n: int) -> PermutationGroup:
    if n < 1:
        raise GroupError("cyclic_group needs n >= 1")
    if n == 1:
        return trivial_group(1)
    rot = Permutation.from_cycles(n, [list(range(n))])
    return PermutationGroup(n, [rot], name=f"C{n}")


def symmetric_group(n: int) -> PermutationGroup:
    if n < 1:
        raise GroupError("symmetric_group needs n >= 1")
    if n == 1:
        return trivial_group(1)
    gens = [Permutation.from_cycles(n, [list(range(n))])]
    if n >= 2:
        gens.append(Permutation.from_cycles(n, [[0, 1]]))
    return PermutationGroup(n, gens, name=f"S{n}")


def alternating_group(n: int) -> PermutationGroup:
    if n < 1:
        raise GroupError("alternating_group needs n >= 1")
    if n <= 2:
        return trivial_group(max(n, 1))
    gens = [Permutation.from_cycles(n, [[0, 1, 2]])]
    if n > 3:
        if n % 2:
            gens.append(Permutation.from_cycles(n, [list(range(n))]))
        else:
            gens.append(Permutation.from_cycles(n, [list(range(1, n))]))
    return PermutationGroup(n, gens, name=f"A{n}")


def dihedral_group(n: int) -> PermutationGroup:
    """Dihedral group of order 2n.  D1 = C2; D2 is realized on 4 points."""
    if n < 1:
        raise GroupError("dihedral_group needs n >= 1")
    if n == 1:
        return PermutationGroup(2, [Permutation.from_cycles(2, [[0, 1]])],
                                name="D1")
    if n == 2:
        return PermutationGroup(
            4,
            [Permutation.from_cycles(4, [[0, 1]]),
             Permutation.from_cycles(4, [[2, 3]])],
            name="D2")
    rot = Permutation.from_cycles(n, [list(range(n))])
    refl = Permutation(tuple((n - i) % n for i in range(n)))
    return PermutationGroup(n, [rot, refl], name=f"D{n}")


_NAME_RE = re.compile(r"^([ACDSV])(\d+)$")


def named_group(name: str) -> PermutationGroup:
    """Cn / Sn / An / Dn constructors; Vn is the trivial group on n points."""
    match = _NAME_RE.match(name.strip())
    if not match:
        raise ParseError(f"unknown group name {name!r}")
    kind, n = match.group(1), int(match.group(2))
    if kind == "C":
        return cyclic_group(n)
    if kind == "S":
        return symmetric_group(n)
    if kind == "A":
        return alternating_group(n)
    if kind == "D":
        return dihedral_group(n)
    return trivial_group(max(n, 1))


def direct_sum_permutation(parts: list[Permutation]) -> Permutation:
    """The block-diagonal permutation acting as each part on its own points."""
    images = []
    offset = 0
    for p in parts:
        images.extend(offset + i for i in p.images)
        offset += p.degree
    return Permutation(tuple(images))


def pad_permutation(p: Permutation, degree: int, offset: int = 0) -> Permutation:
    """Embed p into a larger point set, acting on [offset, offset+p.degree)."""
    if offset + p.degree > degree:
        raise DegreeMismatch("padded permutation does not fit")
    images = list(range(degree))
    for i, j in enumerate(p.images):
        images[offset + i] = offset + j
    return Permutation(tuple(images))


def element_order_profile(group: PermutationGroup,
                          max_enumerate: int = 100_000):
    """Multiset of element orders: a cheap isomorphism fingerprint."""
    counts: dict[int, int] = {}
    for g in group.elements(max_enumerate):
        o = g.order()
        counts[o] = counts.get(o, 0) + 1
    return tuple(sorted(counts.items()))


def group_fingerprint(group: PermutationGroup,
                      max_enumerate: int = 100_000):
    """(order, abelian?, element-order profile) - used in reports only."""
    return (group.order(), group.is_abelian(),
            element_order_profile(group, max_enumerate))


def all_tuples(elements, arity: int, max_tuples: int):
    """Deterministic tuple stream with an explicit budget."""
    total = len(elements) ** arity
    if total > max_tuples:
        raise BudgetExceeded(
            f"{total} tuples exceed budget {max_tuples}",
            budget_name="max_tuples", limit=max_tuples, requested=total)
    return itertools.product(elements, repeat=arity)
