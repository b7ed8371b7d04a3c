"""Structural queries on finite permutation groups.

Everything here treats subgroups as plain PermutationGroup values of the same
degree; ambient containment is the caller's precondition and is only asserted
where it is cheap to do so.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import DEFAULT_BUDGETS, Budgets
from .errors import BudgetExceeded, GroupError
from .perm import Permutation, PermutationGroup


def commutator(a: Permutation, b: Permutation) -> Permutation:
    return a.inverse() * b.inverse() * a * b


def generated_subgroup(G: PermutationGroup, elems) -> PermutationGroup:
    """Subgroup of G's symmetric group generated by elems (maybe empty)."""
    elems = [e for e in elems if not e.is_identity()]
    if not elems:
        return G.subgroup([G.identity()])
    return G.subgroup(elems)


def normal_closure(G: PermutationGroup, seed) -> PermutationGroup:
    """Smallest subgroup containing seed and closed under conjugation by G.

    Standard orbit algorithm: keep a growing generating set, push conjugates
    of every accepted generator by G's generators, filter by membership.
    """
    for s in seed:
        if not G.contains(s):
            raise GroupError("normal_closure seed element lies outside G")
    gens: list[Permutation] = []
    closure = G.subgroup([G.identity()])
    queue = [s for s in seed]
    while queue:
        s = queue.pop(0)
        if s.is_identity() or closure.contains(s):
            continue
        gens.append(s)
        closure = G.subgroup(gens)
        queue.extend(s ** g for g in G.generators)
    return closure


def derived_subgroup(G: PermutationGroup) -> PermutationGroup:
    """Commutator subgroup: normal closure of generator-pair commutators."""
    seed = []
    gens = G.generators
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            c = commutator(a, b)
            if not c.is_identity():
                seed.append(c)
    return normal_closure(G, seed)


def derived_series(G: PermutationGroup) -> list[PermutationGroup]:
    """[G, G', G'', ...] until the series stabilizes (no duplicated tail)."""
    series = [G]
    while True:
        nxt = derived_subgroup(series[-1])
        if nxt.order() == series[-1].order():
            break
        series.append(nxt)
    return series


def is_solvable(G: PermutationGroup) -> bool:
    return derived_series(G)[-1].order() == 1


def derived_length(G: PermutationGroup) -> int | None:
    """Length of the derived series down to 1; None if G is not solvable."""
    series = derived_series(G)
    if series[-1].order() != 1:
        return None
    return len(series) - 1


def lower_central_series(G: PermutationGroup, c: int) -> list[PermutationGroup]:
    """gamma_1 .. gamma_{c+1}, where gamma_{k+1} = [gamma_k, G]."""
    if c < 1:
        raise GroupError("lower_central_series needs c >= 1")
    series = [G]
    for _ in range(c):
        current = series[-1]
        if current.order() == 1:
            series.append(current)
            continue
        seed = []
        for a in current.generators:
            for b in G.generators:
                cm = commutator(a, b)
                if not cm.is_identity():
                    seed.append(cm)
        nxt = normal_closure(G, seed)
        if nxt.order() == current.order():
            series.append(current)
        else:
            series.append(nxt)
    return series


def nilpotency_class(G: PermutationGroup, max_c: int = 20) -> int | None:
    """Least c with gamma_{c+1} = 1, or None if the series stalls above 1."""
    series = [G]
    for c in range(max_c):
        current = series[-1]
        if current.order() == 1:
            return c
        seed = []
        for a in current.generators:
            for b in G.generators:
                cm = commutator(a, b)
                if not cm.is_identity():
                    seed.append(cm)
        nxt = normal_closure(G, seed)
        if nxt.order() == current.order():
            return None
        series.append(nxt)
    return None if series[-1].order() > 1 else max_c


def is_normal(G: PermutationGroup, N: PermutationGroup) -> bool:
    """Whether N is invariant under conjugation by G's generators."""
    for g in G.generators:
        for n in N.generators:
            if not N.contains(n ** g):
                return False
    return True


def subgroup_intersection(G: PermutationGroup, A: PermutationGroup,
                          B: PermutationGroup,
                          budgets: Budgets = DEFAULT_BUDGETS) -> PermutationGroup:
    """A intersect B, by filtering the smaller group's elements.

    Quick containment outs avoid enumeration entirely; otherwise the smaller
    factor must fit the enumeration budget.
    """
    if A.degree != B.degree:
        raise GroupError("intersection operands have different degrees")
    if A.is_subgroup_of(B):
        return A
    if B.is_subgroup_of(A):
        return B
    small, large = (A, B) if A.order() <= B.order() else (B, A)
    members = [g for g in small.elements(budgets.max_enumerate)
               if large.contains(g)]
    return generated_subgroup(G, members)


def product_covers(G: PermutationGroup, H: PermutationGroup,
                   N: PermutationGroup,
                   budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    """|H| * |N| / |H intersect N| == |G|, without materializing cosets."""
    meet = subgroup_intersection(G, H, N, budgets)
    return H.order() * N.order() == G.order() * meet.order()


def product_subgroup(G: PermutationGroup, A: PermutationGroup,
                     B: PermutationGroup) -> PermutationGroup:
    """The subgroup generated by A and B (equals the setwise product AB
    whenever one factor normalizes the other)."""
    return generated_subgroup(G, list(A.generators) + list(B.generators))


def conjugacy_classes(G: PermutationGroup,
                      budgets: Budgets = DEFAULT_BUDGETS):
    """Conjugacy classes as lists of elements; reps are the class minima."""
    elements = G.elements(budgets.max_enumerate)
    seen: set[tuple[int, ...]] = set()
    classes = []
    for e in elements:  # canonical order: class reps are the minima
        if e.images in seen:
            continue
        orbit = {e.images: e}
        queue = [e]
        while queue:
            x = queue.pop(0)
            for g in G.generators:
                y = x ** g
                if y.images not in orbit:
                    orbit[y.images] = y
                    queue.append(y)
        seen.update(orbit)
        classes.append(sorted(orbit.values()))
    return classes


def class_representatives(G: PermutationGroup,
                          budgets: Budgets = DEFAULT_BUDGETS):
    return [cls[0] for cls in conjugacy_classes(G, budgets)]


def normalizer(G: PermutationGroup, D: PermutationGroup,
               budgets: Budgets = DEFAULT_BUDGETS,
               seed: PermutationGroup | None = None) -> PermutationGroup:
    """N_G(D) by scanning coset representatives of a known subgroup of it.

    D itself (and the optional seed, which the caller promises normalizes D)
    always lie in the normalizer, so it suffices to test one representative
    per coset of that known part; the scan is plain brute force, bounded by
    the documented budget.
    """
    n = G.order()
    if n > budgets.max_normalizer:
        raise BudgetExceeded(
            f"normalizer brute force needs |G| <= {budgets.max_normalizer}, "
            f"got {n}", budget_name="max_normalizer",
            limit=budgets.max_normalizer, requested=n)
    if D.order() == 1 or D.order() == n:
        return G
    d_elements = frozenset(g.images for g in D.elements(budgets.max_enumerate))

    def normalizes(g: Permutation) -> bool:
        return all((d ** g).images in d_elements for d in D.generators)

    known_gens = list(D.generators)
    if seed is not None:
        known_gens.extend(seed.generators)
    known = G.subgroup(known_gens)
    result_gens = known_gens[:]
    result = known
    for g in G.elements(budgets.max_enumerate):
        if result.contains(g):
            continue
        if normalizes(g):
            result_gens.append(g)
            result = G.subgroup(result_gens)
            if result.order() == n:
                break
    return result


@dataclass
class QuotientResult:
    group: PermutationGroup
    projection: "GroupHomomorphism"
    coset_reps: list[Permutation]  # minimal representatives, identity first


def quotient(G: PermutationGroup, N: PermutationGroup,
             budgets: Budgets = DEFAULT_BUDGETS) -> QuotientResult:
    """Permutation action of G on the right cosets of N, plus the projection.

    Cosets are labeled by their minimal element (canonical ordering), sorted,
    so the identity coset is point 0 and the construction is reproducible.
    """
    from .homs import GroupHomomorphism

    if not is_normal(G, N):
        raise GroupError("quotient requires a normal subgroup")
    n_elements = N.elements(budgets.max_enumerate)

    def coset_key(g: Permutation) -> tuple[int, ...]:
        return min((x * g).images for x in n_elements)

    identity = G.identity()
    keys = {coset_key(identity): identity}
    frontier = [identity]
    while frontier:
        rep = frontier.pop(0)
        for g in G.generators:
            cand = rep * g
            key = coset_key(cand)
            if key not in keys:
                keys[key] = Permutation(key)
                frontier.append(Permutation(key))
    ordered_keys = sorted(keys)
    index_of = {key: i for i, key in enumerate(ordered_keys)}
    reps = [Permutation(key) for key in ordered_keys]

    gen_images = []
    for g in G.generators:
        images = tuple(index_of[coset_key(reps[i] * g)]
                       for i in range(len(reps)))
        gen_images.append(Permutation(images))
    Q = PermutationGroup(len(reps), gen_images,
                         name=f"{G.name}/{N.name}" if G.name and N.name else None)
    if Q.order() * N.order() != G.order():
        raise GroupError("coset action has wrong order (internal error)")
    proj = GroupHomomorphism(G, Q, tuple(gen_images))
    return QuotientResult(group=Q, projection=proj, coset_reps=reps)


def element_normal_closures(G: PermutationGroup,
                            budgets: Budgets = DEFAULT_BUDGETS):
    """Normal closure of one representative per conjugacy class."""
    closures = []
    seen_orders: dict[tuple, PermutationGroup] = {}
    for rep in class_representatives(G, budgets):
        if rep.is_identity():
            continue
        closure = normal_closure(G, [rep])
        key = _subgroup_key(closure, budgets)
        if key not in seen_orders:
            seen_orders[key] = closure
            closures.append(closure)
    return closures


def _subgroup_key(H: PermutationGroup, budgets: Budgets):
    return frozenset(g.images for g in H.elements(budgets.max_enumerate))


def normal_subgroups(G: PermutationGroup,
                     budgets: Budgets = DEFAULT_BUDGETS):
    """All normal subgroups of G (including 1 and G).

    Every normal subgroup is a join of normal closures of single elements, so
    the lattice is the join-closure of the class-representative closures.
    Budgeted by max_normal_enumeration on |G|.
    """
    n = G.order()
    if n > budgets.max_normal_enumeration:
        raise BudgetExceeded(
            f"normal-subgroup enumeration needs |G| <= "
            f"{budgets.max_normal_enumeration}, got {n}",
            budget_name="max_normal_enumeration",
            limit=budgets.max_normal_enumeration, requested=n)
    atoms = element_normal_closures(G, budgets)
    found: dict[frozenset, PermutationGroup] = {}
    trivial = G.subgroup([G.identity()])
    found[_subgroup_key(trivial, budgets)] = trivial
    for a in atoms:
        found[_subgroup_key(a, budgets)] = a
    changed = True
    while changed:
        changed = False
        current = list(found.values())
        for i, a in enumerate(current):
            for b in current[i + 1:]:
                join = product_subgroup(G, a, b)
                key = _subgroup_key(join, budgets)
                if key not in found:
                    found[key] = join
                    changed = True
    return sorted(found.values(), key=lambda H: (H.order(), _min_key(H)))


def _min_key(H: PermutationGroup):
    return min(g.images for g in H.generators)


def solvable_radical(G: PermutationGroup,
                     budgets: Budgets = DEFAULT_BUDGETS) -> PermutationGroup:
    """Largest solvable normal subgroup: the join of the solvable closures.

    Any solvable normal N is the join of the (solvable) normal closures of
    its elements, and a join of solvable normals is solvable normal, so
    joining every solvable class-representative closure reaches the radical.
    """
    n = G.order()
    if n > budgets.max_normal_enumeration:
        raise BudgetExceeded(
            f"solvable radical needs |G| <= {budgets.max_normal_enumeration}, "
            f"got {n}", budget_name="max_normal_enumeration",
            limit=budgets.max_normal_enumeration, requested=n)
    radical = G.subgroup([G.identity()])
    for closure in element_normal_closures(G, budgets):
        if closure.order() == 1 or closure.is_subgroup_of(radical):
            continue
        if is_solvable(closure):
            radical = product_subgroup(G, radical, closure)
    if not is_solvable(radical):
        raise GroupError("radical join is not solvable (internal error)")
    return radical


def all_subgroups(G: PermutationGroup, max_order: int = 10_000,
                  budgets: Budgets = DEFAULT_BUDGETS):
    """Every subgroup of G, for desk-scale groups.

    Layered closure: cyclic subgroups first, then repeatedly extend each
    known subgroup by one outside element until no new subgroup appears.
    """
    n = G.order()
    if n > max_order:
        raise BudgetExceeded(
            f"subgroup enumeration needs |G| <= {max_order}, got {n}",
            budget_name="all_subgroups", limit=max_order, requested=n)
    elements = G.elements(budgets.max_enumerate)
    found: dict[frozenset, PermutationGroup] = {}

    def add(H: PermutationGroup) -> bool:
        key = frozenset(g.images for g in H.elements(budgets.max_enumerate))
        if key in found:
            return False
        found[key] = H
        return True

    add(G.subgroup([G.identity()]))
    for e in elements:
        add(G.subgroup([e]))
    frontier = list(found.values())
    while frontier:
        new = []
        for H in frontier:
            h_key = frozenset(g.images
                              for g in H.elements(budgets.max_enumerate))
            for e in elements:
                if e.images in h_key:
                    continue
                extended = G.subgroup(list(H.generators) + [e])
                if add(extended):
                    new.append(extended)
        frontier = new
    return sorted(found.values(), key=lambda H: (H.order(), _min_key(H)))
