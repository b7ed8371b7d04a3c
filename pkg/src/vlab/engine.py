"""The dominion decision engine: bounds, verdicts, certificates, pipelines.

Outcomes are three-valued; ``unknown`` is a first-class answer that absorbs
budget exhaustion and fixture gaps.  Every decided verdict carries a
machine-checkable certificate that ``verify_certificate`` re-runs from
scratch:

* ``neumann-solvable-complement`` - a solvable normal N with NH = G and H
  proper: no proper such subgroup can be epimorphically embedded in any
  quotient/subgroup-closed class containing G.
* ``solvable-class-rule`` - in a class of solvable groups, epimorphisms are
  onto, so a proper subgroup is never epimorphically embedded.
* ``separating-pair`` - two homomorphisms into a catalog member agreeing on
  the subgroup but not on the group.
* ``verbal-cover-failure`` - the product bound: the dominion lies inside
  Q(G)H, which is proper.
* ``inner-dominion-failure`` - the product characterization in reverse: the
  trace of the subgroup inside the verbal subgroup is not epimorphically
  embedded there.
* ``epi-derivation`` - a tree whose internal nodes are product-splitting
  condition checks and whose leaves are fixtures (or the whole-group rule,
  or a componentwise direct-power reduction to a fixture).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import DEFAULT_BUDGETS, Budgets
from .errors import BudgetExceeded, FixtureGap, GroupError
from .perm import Permutation, PermutationGroup, parse_permutation, cyclic_group, trivial_group
from .structure import (derived_series, is_normal, is_solvable,
                        normal_subgroups, product_covers, product_subgroup,
                        quotient, solvable_radical, subgroup_intersection)
from .homs import GroupHomomorphism, all_homomorphisms
from .varieties import (Descriptor, ProductVariety, VarOfGroup, YES,
                        find_epi_fixture, is_solvable_variety,
                        member_of_variety, q_verbal)
from .constructions import WreathContext, regular_wreath

EPI = "epi"
NOT_EPI = "not_epi"
UNKNOWN = "unknown"


@dataclass
class EngineContext:
    fixtures: list = field(default_factory=list)
    catalog: list = field(default_factory=list)
    budgets: Budgets = DEFAULT_BUDGETS

    @staticmethod
    def bundled(budgets: Budgets = DEFAULT_BUDGETS) -> "EngineContext":
        from .catalog import bundled_catalog, bundled_fixtures
        return EngineContext(fixtures=bundled_fixtures(),
                             catalog=bundled_catalog(), budgets=budgets)


@dataclass
class EpiVerdict:
    outcome: str
    certificate: dict | None
    derivation: list[str]
    budgets: dict
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"schema": 1, "outcome": self.outcome,
                "certificate": self.certificate,
                "derivation": list(self.derivation),
                "notes": list(self.notes), "budgets": dict(self.budgets)}


def _group_json(G: PermutationGroup) -> dict:
    return {"name": G.name, "degree": G.degree, "order": G.order(),
            "generators": [str(g) for g in G.generators]}


def _group_from_json(data: dict) -> PermutationGroup:
    gens = [parse_permutation(text, data["degree"])
            for text in data["generators"]]
    return PermutationGroup(data["degree"], gens, name=data.get("name"))


# -- bounds ---------------------------------------------------------------------


@dataclass
class DominionBounds:
    lower: PermutationGroup
    upper: PermutationGroup
    exact: bool
    derivation: list[str]

    def sandwich_ok(self, G: PermutationGroup, H: PermutationGroup) -> bool:
        return (H.is_subgroup_of(self.lower)
                and self.lower.is_subgroup_of(self.upper)
                and self.upper.is_subgroup_of(G)
                and (not self.exact
                     or self.lower.order() == self.upper.order()))


def mckay_bound(G: PermutationGroup, H: PermutationGroup,
                ndesc: Descriptor, qdesc: Descriptor,
                ctx: EngineContext) -> PermutationGroup:
    """The product upper bound: the dominion lies inside q_verbal(G, Q) * H.

    The containment is a theorem when G lies in the product variety; the
    formula itself is computed unconditionally (callers own the hypothesis).
    """
    verbal = q_verbal(G, qdesc, ctx.budgets, ctx.fixtures)
    return product_subgroup(G, verbal, H)


def dominion_bounds(G: PermutationGroup, H: PermutationGroup,
                    desc: Descriptor, ctx: EngineContext) -> DominionBounds:
    """Sandwich the dominion of H in G for the descriptor's variety.

    The exact flag is the pinch test (lower equals upper): it is
    self-certifying, since both bounds are valid whatever the inner recursion
    produced.
    """
    if not H.is_subgroup_of(G):
        raise GroupError("H must be a subgroup of G")
    if H.order() == G.order():
        return DominionBounds(lower=H, upper=H, exact=True,
                              derivation=["subgroup equals group"])
    if isinstance(desc, ProductVariety):
        verbal = q_verbal(G, desc.right, ctx.budgets, ctx.fixtures)
        trace = subgroup_intersection(G, H, verbal, ctx.budgets)
        inner = dominion_bounds(verbal, trace, desc.left, ctx)
        lower = product_subgroup(G, H, inner.lower)
        upper = product_subgroup(G, verbal, H)
        exact = lower.order() == upper.order()
        steps = [
            f"verbal subgroup for {desc.right} has order {verbal.order()}",
            f"lower bound: subgroup times inner lower bound "
            f"(order {lower.order()})",
            f"upper bound: verbal subgroup times subgroup "
            f"(order {upper.order()})",
        ] + [f"  inner: {s}" for s in inner.derivation]
        if inner.exact:
            steps.append("inner bounds are exact")
        steps.append("exactness by pinch: lower == upper" if exact
                     else "bounds do not pinch")
        return DominionBounds(lower=lower, upper=upper, exact=exact,
                              derivation=steps)
    if is_solvable_variety(desc, ctx.fixtures) == YES:
        membership = member_of_variety(G, desc, ctx.budgets, ctx.fixtures)
        if membership is True:
            return DominionBounds(
                lower=H, upper=H, exact=True,
                derivation=[f"solvable class {desc}: dominion pinches to "
                            f"the subgroup"])
    fx = find_epi_fixture(ctx.fixtures, G, H, desc)
    if fx is not None:
        return DominionBounds(lower=G, upper=G, exact=True,
                              derivation=[f"fixture: {fx.provenance}"])
    return DominionBounds(lower=H, upper=G, exact=False,
                          derivation=["no rule applies: trivial sandwich"])


# -- NotEpi searches ---------------------------------------------------------------


def neumann_not_epi_test(G: PermutationGroup, H: PermutationGroup,
                         ctx: EngineContext):
    """Solvable-complement test: a solvable normal N with NH = G and H
    proper rules out epimorphic embedding.  None when inconclusive."""
    if H.order() == G.order():
        return None
    radical = solvable_radical(G, ctx.budgets)
    if not product_covers(G, H, radical, ctx.budgets):
        return None
    certificate = {
        "kind": "neumann-solvable-complement",
        "normal": _group_json(radical),
        "normal_is_solvable": True,
        "product_covers": True,
        "subgroup_order": H.order(),
        "group_order": G.order(),
    }
    return EpiVerdict(
        outcome=NOT_EPI, certificate=certificate,
        derivation=[
            f"solvable radical has order {radical.order()}",
            "radical times subgroup covers the group; subgroup is proper",
            "solvable-complement rule: the embedding is not epi in any "
            "quotient/subgroup-closed class containing the group",
        ],
        budgets=ctx.budgets.as_dict())


def separating_pair_search(G: PermutationGroup, H: PermutationGroup,
                           catalog, desc: Descriptor, ctx: EngineContext,
                           notes: list[str] | None = None):
    """Look for two maps into a catalog member agreeing on H, differing on G.

    Pairs anchored at the inclusion map (when the catalog member contains G)
    are examined first; everything else follows the canonical hom order.
    Exhaustion returns None: it proves nothing positive.  Skipped catalog
    entries are reported through the notes sink.
    """
    if notes is None:
        notes = []
    for C in catalog:
        membership = member_of_variety(C, desc, ctx.budgets, ctx.fixtures)
        if membership is False:
            continue
        if membership is None:
            notes.append(f"catalog group {C.name or C.degree} skipped: "
                         f"membership in {desc} unknown")
            continue
        if G.order() * C.order() > ctx.budgets.max_hom_product:
            notes.append(f"catalog group {C.name or C.degree} skipped: "
                         f"hom budget")
            continue
        homs = all_homomorphisms(G, C, ctx.budgets)
        keys = [tuple(f.apply(h).images for h in H.generators) for f in homs]

        def emit(i: int, j: int):
            f, g = homs[i], homs[j]
            witness = f.first_difference(g, ctx.budgets)
            if witness is None:
                return None
            certificate = {
                "kind": "separating-pair",
                "codomain": _group_json(C),
                "f_images": [str(p) for p in f.generator_images],
                "g_images": [str(p) for p in g.generator_images],
                "subgroup_generators": [str(h) for h in H.generators],
                "witness": str(witness),
                "f_witness": str(f.apply(witness)),
                "g_witness": str(g.apply(witness)),
            }
            return EpiVerdict(
                outcome=NOT_EPI, certificate=certificate,
                derivation=[
                    f"maps into {C.name or 'catalog group'} agree on the "
                    f"subgroup generators",
                    f"they differ at {witness}: the subgroup is not "
                    f"epimorphically embedded",
                ],
                budgets=ctx.budgets.as_dict(), notes=notes)

        anchor = None
        if (G.degree == C.degree
                and homs and homs[0].generator_images == G.generators):
            anchor = 0
        if anchor is not None:
            for j in range(len(homs)):
                if j != anchor and keys[j] == keys[anchor]:
                    verdict = emit(anchor, j)
                    if verdict is not None:
                        return verdict
        for i in range(len(homs)):
            for j in range(i + 1, len(homs)):
                if anchor in (i, j):
                    continue
                if keys[i] == keys[j]:
                    verdict = emit(i, j)
                    if verdict is not None:
                        return verdict
    return None


# -- the decision procedure ----------------------------------------------------------


def epi_decide(G: PermutationGroup, H: PermutationGroup, desc: Descriptor,
               ctx: EngineContext) -> EpiVerdict:
    """Decide whether H is epimorphically embedded in G in the variety."""
    if not H.is_subgroup_of(G):
        raise GroupError("H must be a subgroup of G")
    notes: list[str] = []
    try:
        return _decide(G, H, desc, ctx, notes)
    except (BudgetExceeded, FixtureGap) as exc:
        notes.append(f"stopped: {exc}")
        return EpiVerdict(outcome=UNKNOWN, certificate=None,
                          derivation=["budget or fixture gap"],
                          budgets=ctx.budgets.as_dict(), notes=notes)


def _decide(G, H, desc, ctx, notes) -> EpiVerdict:
    if H.order() == G.order():
        return EpiVerdict(
            outcome=EPI,
            certificate={"kind": "epi-derivation",
                         "node": {"rule": "whole-group"}},
            derivation=["subgroup equals group: trivially epimorphic"],
            budgets=ctx.budgets.as_dict(), notes=notes)

    if is_solvable_variety(desc, ctx.fixtures) == YES:
        membership = member_of_variety(G, desc, ctx.budgets, ctx.fixtures)
        if membership is True:
            verdict = neumann_not_epi_test(G, H, ctx)
            derivation = [
                f"{desc} is a class of solvable groups and the group "
                f"belongs to it",
                "epimorphisms in solvable classes are onto; the subgroup "
                "is proper",
            ]
            if verdict is not None:
                verdict.derivation = derivation + verdict.derivation
                verdict.notes.extend(notes)
                return verdict
            certificate = {"kind": "solvable-class-rule",
                           "descriptor": str(desc),
                           "group_order": G.order(),
                           "subgroup_order": H.order()}
            return EpiVerdict(outcome=NOT_EPI, certificate=certificate,
                              derivation=derivation,
                              budgets=ctx.budgets.as_dict(), notes=notes)
        notes.append(f"group membership in solvable class {desc}: "
                     f"{membership}; rule not applicable")

    if isinstance(desc, ProductVariety):
        verbal = q_verbal(G, desc.right, ctx.budgets, ctx.fixtures)
        covers = product_covers(G, H, verbal, ctx.budgets)
        if not covers:
            bound = product_subgroup(G, verbal, H)
            certificate = {
                "kind": "verbal-cover-failure",
                "quotient_descriptor": str(desc.right),
                "verbal_order": verbal.order(),
                "bound_order": bound.order(),
                "group_order": G.order(),
            }
            return EpiVerdict(
                outcome=NOT_EPI, certificate=certificate,
                derivation=[
                    f"verbal subgroup for {desc.right} has order "
                    f"{verbal.order()}",
                    f"the dominion lies inside verbal*subgroup, of order "
                    f"{bound.order()} < {G.order()}",
                ],
                budgets=ctx.budgets.as_dict(), notes=notes)
        trace = subgroup_intersection(G, H, verbal, ctx.budgets)
        inner = epi_decide(verbal, trace, desc.left, ctx)
        if inner.outcome == EPI:
            certificate = {
                "kind": "epi-derivation",
                "node": {
                    "rule": "product-splitting",
                    "quotient_descriptor": str(desc.right),
                    "verbal_order": verbal.order(),
                    "cover_ok": True,
                    "inner": inner.certificate["node"],
                },
            }
            return EpiVerdict(
                outcome=EPI, certificate=certificate,
                derivation=[
                    f"subgroup times the {desc.right}-verbal subgroup "
                    f"covers the group",
                    f"the trace of the subgroup is epimorphically embedded "
                    f"in the verbal subgroup within {desc.left}:",
                ] + ["  " + line for line in inner.derivation],
                budgets=ctx.budgets.as_dict(),
                notes=notes + inner.notes)
        if inner.outcome == NOT_EPI:
            # the necessity direction of the product characterization
            # assumes the ambient group lies in the product variety
            membership = member_of_variety(G, desc, ctx.budgets,
                                           ctx.fixtures)
            if membership is not True:
                notes.append(
                    f"inner embedding fails, but membership of the group "
                    f"in {desc} is {membership}: the failure does not "
                    f"transfer")
                return EpiVerdict(outcome=UNKNOWN, certificate=None,
                                  derivation=["product recursion is "
                                              "undecided"],
                                  budgets=ctx.budgets.as_dict(),
                                  notes=notes + inner.notes)
            certificate = {
                "kind": "inner-dominion-failure",
                "quotient_descriptor": str(desc.right),
                "verbal_order": verbal.order(),
                "trace_order": trace.order(),
                "inner": inner.certificate,
            }
            return EpiVerdict(
                outcome=NOT_EPI, certificate=certificate,
                derivation=[
                    f"subgroup times verbal subgroup covers the group, but",
                    f"the trace is not epimorphically embedded in the "
                    f"verbal subgroup within {desc.left}:",
                ] + ["  " + line for line in inner.derivation],
                budgets=ctx.budgets.as_dict(),
                notes=notes + inner.notes)
        return EpiVerdict(outcome=UNKNOWN, certificate=None,
                          derivation=["product recursion is undecided"],
                          budgets=ctx.budgets.as_dict(),
                          notes=notes + inner.notes)

    # base descriptor
    fx = find_epi_fixture(ctx.fixtures, G, H, desc)
    if fx is not None:
        certificate = {
            "kind": "epi-derivation",
            "node": {"rule": "fixture", "fixture": _fixture_json(fx)},
        }
        return EpiVerdict(
            outcome=EPI, certificate=certificate,
            derivation=[f"fixture: {fx.provenance}"],
            budgets=ctx.budgets.as_dict(), notes=notes)
    membership = member_of_variety(G, desc, ctx.budgets, ctx.fixtures)
    if membership is True:
        verdict = neumann_not_epi_test(G, H, ctx)
        if verdict is not None:
            verdict.notes.extend(notes)
            return verdict
    else:
        notes.append(f"solvable-complement test skipped: membership of the "
                     f"group in {desc} is {membership}")
    verdict = separating_pair_search(G, H, ctx.catalog, desc, ctx,
                                     notes=notes)
    if verdict is not None:
        return verdict
    notes.append("fixtures, solvable-complement test and separating-pair "
                 "search were all inconclusive")
    return EpiVerdict(outcome=UNKNOWN, certificate=None,
                      derivation=["no decision path concluded"],
                      budgets=ctx.budgets.as_dict(), notes=notes)


def _fixture_json(fx) -> dict:
    return {
        "kind": fx.kind,
        "group": _group_json(fx.group),
        "subgroup": None if fx.subgroup is None else _group_json(fx.subgroup),
        "descriptor": str(fx.descriptor),
        "provenance": fx.provenance,
    }


# -- certificate re-verification -------------------------------------------------------


def verify_certificate(G: PermutationGroup, H: PermutationGroup,
                       desc: Descriptor, verdict: EpiVerdict,
                       ctx: EngineContext) -> bool:
    """Re-run a verdict's certificate from scratch; True iff it checks out."""
    cert = verdict.certificate
    if verdict.outcome == UNKNOWN:
        return cert is None
    if cert is None:
        return False
    try:
        return _verify_cert(G, H, desc, cert, ctx)
    except (GroupError, KeyError, BudgetExceeded):
        return False


def _verify_cert(G, H, desc, cert, ctx) -> bool:
    kind = cert.get("kind")
    if kind == "neumann-solvable-complement":
        N = _group_from_json(cert["normal"])
        if not N.is_subgroup_of(G):
            return False
        return (is_normal(G, N) and is_solvable(N)
                and product_covers(G, H, N, ctx.budgets)
                and H.order() < G.order())
    if kind == "solvable-class-rule":
        return (is_solvable_variety(desc, ctx.fixtures) == YES
                and member_of_variety(G, desc, ctx.budgets,
                                      ctx.fixtures) is True
                and H.order() < G.order())
    if kind == "separating-pair":
        C = _group_from_json(cert["codomain"])
        f_images = tuple(parse_permutation(t, C.degree)
                         for t in cert["f_images"])
        g_images = tuple(parse_permutation(t, C.degree)
                         for t in cert["g_images"])
        f = GroupHomomorphism(G, C, f_images)   # validates well-definedness
        g = GroupHomomorphism(G, C, g_images)
        if not f.agrees_on(g, H):
            return False
        witness = parse_permutation(cert["witness"], G.degree)
        if not G.contains(witness):
            return False
        return f.apply(witness) != g.apply(witness)
    if kind == "verbal-cover-failure":
        if not isinstance(desc, ProductVariety):
            return False
        verbal = q_verbal(G, desc.right, ctx.budgets, ctx.fixtures)
        bound = product_subgroup(G, verbal, H)
        return (verbal.order() == cert["verbal_order"]
                and bound.order() == cert["bound_order"]
                and bound.order() < G.order())
    if kind == "inner-dominion-failure":
        if not isinstance(desc, ProductVariety):
            return False
        if member_of_variety(G, desc, ctx.budgets, ctx.fixtures) is not True:
            return False
        verbal = q_verbal(G, desc.right, ctx.budgets, ctx.fixtures)
        if verbal.order() != cert["verbal_order"]:
            return False
        trace = subgroup_intersection(G, H, verbal, ctx.budgets)
        if trace.order() != cert["trace_order"]:
            return False
        return _verify_cert(verbal, trace, desc.left, cert["inner"], ctx)
    if kind == "epi-derivation":
        return _verify_epi_node(G, H, desc, cert["node"], ctx)
    return False


def _verify_epi_node(G, H, desc, node, ctx) -> bool:
    rule = node.get("rule")
    if rule == "whole-group":
        return H.order() == G.order()
    if rule == "fixture":
        fx = find_epi_fixture(ctx.fixtures, G, H, desc)
        return fx is not None
    if rule == "product-splitting":
        if not isinstance(desc, ProductVariety):
            return False
        verbal = q_verbal(G, desc.right, ctx.budgets, ctx.fixtures)
        if verbal.order() != node["verbal_order"]:
            return False
        if not product_covers(G, H, verbal, ctx.budgets):
            return False
        trace = subgroup_intersection(G, H, verbal, ctx.budgets)
        return _verify_epi_node(verbal, trace, desc.left, node["inner"], ctx)
    if rule == "direct-power-fixture":
        return _verify_power_node(G, H, desc, node, ctx)
    return False


def _verify_power_node(G, H, desc, node, ctx) -> bool:
    """G must be the product of block copies of the fixture group, H the
    matching power of the fixture subgroup; the dominion identity for finite
    direct powers then lifts the fixture to the whole power."""
    fx_data = node["fixture"]
    fixture_group = _group_from_json(fx_data["group"])
    fixture_sub = _group_from_json(fx_data["subgroup"])
    fx = find_epi_fixture(ctx.fixtures, fixture_group, fixture_sub, desc)
    if fx is None:
        return False
    blocks = node["blocks"]
    m = fixture_group.degree
    expected_order = 1
    for block in blocks:
        if len(block) != m:
            return False
        for g in fixture_group.generators:
            embedded = _embed_on_points(g, block, G.degree)
            if not G.contains(embedded):
                return False
        expected_order *= fixture_group.order()
    if G.order() != expected_order:
        return False
    sub_gens = [_embed_on_points(h, block, G.degree)
                for block in blocks for h in fixture_sub.generators]
    power_sub = G.subgroup(sub_gens)
    return power_sub.same_group_as(H)


def _embed_on_points(p: Permutation, points, degree: int) -> Permutation:
    images = list(range(degree))
    for i, j in enumerate(p.images):
        images[points[i]] = points[j]
    return Permutation(tuple(images))


# -- the wreath dichotomy and escape search ----------------------------------------------


def is_simple_nonabelian(S: PermutationGroup, ctx: EngineContext) -> bool:
    if S.is_abelian() or S.order() == 1:
        return False
    from .structure import element_normal_closures
    for closure in element_normal_closures(S, ctx.budgets):
        if closure.order() != S.order():
            return False
    return True


@dataclass
class DichotomyReport:
    branch: str                  # "base" or "trivial"
    verbal_order: int
    base_order: int
    wreath: WreathContext

    def to_json(self) -> dict:
        return {"schema": 1, "branch": self.branch,
                "verbal_order": self.verbal_order,
                "base_order": self.base_order,
                "wreath_order": self.wreath.product.order(),
                "wreath_degree": self.wreath.product.degree}


def verify_qofsimple(S: PermutationGroup, B: PermutationGroup,
                     qdesc: Descriptor, ctx: EngineContext) -> DichotomyReport:
    """Verbal subgroups of S wr B, S simple nonabelian: the value is either
    the full base power or trivial.  Anything else is a hard error."""
    if not is_simple_nonabelian(S, ctx):
        raise GroupError("the bottom group must be simple and nonabelian")
    wreath = regular_wreath(S, B, ctx.budgets)
    verbal = q_verbal(wreath.product, qdesc, ctx.budgets, ctx.fixtures)
    base = wreath.base_subgroup()
    if verbal.same_group_as(base):
        branch = "base"
    elif verbal.order() == 1:
        branch = "trivial"
    else:
        raise GroupError(
            f"dichotomy violated: verbal subgroup of order {verbal.order()} "
            f"is neither the base (order {base.order()}) nor trivial")
    return DichotomyReport(branch=branch, verbal_order=verbal.order(),
                           base_order=base.order(), wreath=wreath)


class EscapeExhausted(BudgetExceeded):
    """The fixed candidate ladder is exhausted: an explicit failure, never a
    claim that no escape exists."""


@dataclass
class EscapeResult:
    base: PermutationGroup
    top: PermutationGroup
    wreath: WreathContext
    skipped: list[str]

    def to_json(self) -> dict:
        return {"schema": 1, "top": _group_json(self.top),
                "witness_order": self.wreath.product.order(),
                "witness_degree": self.wreath.product.degree,
                "skipped": list(self.skipped)}


def _prime_divisors(n: int) -> set[int]:
    primes = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            primes.add(d)
            n //= d
        d += 1
    if n > 1:
        primes.add(n)
    return primes


def escape_ladder(A: PermutationGroup):
    """The fixed candidate ladder: the trivial group, cyclic groups up to
    C12, then iterated wreath powers - restricted to orders built from the
    primes of |A| (the p-group mechanism behind the escape theorem)."""
    from .catalog import resolve_group_name
    allowed = _prime_divisors(A.order())
    names = [f"C{n}" for n in range(2, 13)]
    names += ["C2wrC2", "C2wrC2wrC2", "C3wrC3"]
    ladder = [trivial_group(1)]
    for name in names:
        candidate = resolve_group_name(name)
        if _prime_divisors(candidate.order()) <= allowed:
            ladder.append(candidate)
    return ladder


def find_wreath_escape(A: PermutationGroup, desc: Descriptor,
                       ctx: EngineContext) -> EscapeResult:
    """First ladder group G in the variety with A wr G outside it."""
    if A.order() == 1:
        raise GroupError("escape search needs a nontrivial base group")
    skipped = []
    for candidate in escape_ladder(A):
        label = candidate.name or f"order-{candidate.order()}"
        if candidate.order() > 1:
            membership = member_of_variety(candidate, desc, ctx.budgets,
                                           ctx.fixtures)
            if membership is not True:
                skipped.append(f"{label}: membership {membership}")
                continue
        try:
            wreath = regular_wreath(A, candidate, ctx.budgets)
        except BudgetExceeded as exc:
            skipped.append(f"{label}: {exc}")
            continue
        try:
            wreath_member = member_of_variety(wreath.product, desc,
                                              ctx.budgets, ctx.fixtures)
        except (BudgetExceeded, FixtureGap) as exc:
            skipped.append(f"{label}: wreath membership: {exc}")
            continue
        if wreath_member is False:
            return EscapeResult(base=A, top=candidate, wreath=wreath,
                                skipped=skipped)
        if wreath_member is None:
            skipped.append(f"{label}: wreath membership unknown")
    raise EscapeExhausted(
        "escape ladder exhausted without a witness; this does not claim "
        f"nonexistence (skipped: {'; '.join(skipped) or 'none'})")


# -- the finite construction pipeline ------------------------------------------------------


@dataclass
class PipelineReport:
    verdict: EpiVerdict
    escape: EscapeResult | None
    details: dict

    def to_json(self) -> dict:
        data = {"schema": 1, "verdict": self.verdict.to_json(),
                "details": dict(self.details)}
        if self.escape is not None:
            data["escape"] = self.escape.to_json()
        return data


def simpletimes_pipeline(S: PermutationGroup, H: PermutationGroup,
                         ndesc: Descriptor, qdesc: Descriptor,
                         ctx: EngineContext) -> PipelineReport:
    """Build a finite nonsurjective epi in prod(N, Q) from one in N.

    Given a fixture asserting H is epimorphically embedded in the simple
    nonabelian S within N, pick a ladder group G in Q whose wreath escapes Q,
    and check the product-splitting conditions for H wr G inside S wr G
    mechanically: the verbal subgroup is the base power (dichotomy), the
    subgroup covers it, and the trace is exactly H^G, whose dominion in S^G
    is everything by the componentwise direct-power identity applied to the
    fixture.
    """
    fx = find_epi_fixture(ctx.fixtures, S, H, ndesc)
    notes: list[str] = []
    if fx is None:
        return PipelineReport(
            verdict=EpiVerdict(
                outcome=UNKNOWN, certificate=None,
                derivation=["no fixture asserts the base epimorphic "
                            "embedding; the pipeline has nothing to lift"],
                budgets=ctx.budgets.as_dict(), notes=notes),
            escape=None, details={"missing_fixture": True})
    if not is_simple_nonabelian(S, ctx):
        raise GroupError("the pipeline needs a simple nonabelian base group")
    try:
        escape = find_wreath_escape(S, qdesc, ctx)
    except EscapeExhausted as exc:
        notes.append(str(exc))
        return PipelineReport(
            verdict=EpiVerdict(outcome=UNKNOWN, certificate=None,
                               derivation=["escape search exhausted its "
                                           "ladder within budget"],
                               budgets=ctx.budgets.as_dict(), notes=notes),
            escape=None, details={"escape_exhausted": True})

    wreath = escape.wreath
    W = wreath.product
    verbal = q_verbal(W, qdesc, ctx.budgets, ctx.fixtures)
    base = wreath.base_subgroup()
    if verbal.order() == 1:
        raise GroupError("escape witness is inside the variety after all "
                         "(internal error)")
    if not verbal.same_group_as(base):
        raise GroupError("dichotomy violated for the escape witness "
                         "(internal error)")
    embedded_sub = wreath.wreath_subgroup(H)
    if not product_covers(W, embedded_sub, verbal, ctx.budgets):
        raise GroupError("wreath subgroup fails to cover (internal error)")
    trace = subgroup_intersection(W, embedded_sub, verbal, ctx.budgets)
    power = wreath.base_power_subgroup(H)
    if not trace.same_group_as(power):
        raise GroupError("trace is not the expected base power "
                         "(internal error)")
    blocks = [list(wreath.block_range(c)) for c in range(wreath.block_count)]
    certificate = {
        "kind": "epi-derivation",
        "node": {
            "rule": "product-splitting",
            "quotient_descriptor": str(qdesc),
            "verbal_order": verbal.order(),
            "cover_ok": True,
            "inner": {
                "rule": "direct-power-fixture",
                "fixture": _fixture_json(fx),
                "copies": wreath.block_count,
                "blocks": blocks,
            },
        },
    }
    top_name = escape.top.name or f"order-{escape.top.order()}"
    verdict = EpiVerdict(
        outcome=EPI, certificate=certificate,
        derivation=[
            f"escape: {top_name} lies in {qdesc} but the wreath product "
            f"does not",
            f"verbal subgroup of the wreath is the full base power "
            f"(order {verbal.order()})",
            "the embedded wreath subgroup covers it",
            "its trace is the base power of the fixture subgroup; the "
            "componentwise direct-power identity reduces its dominion to "
            "the fixture",
            f"fixture: {fx.provenance}",
        ],
        budgets=ctx.budgets.as_dict(), notes=notes)
    details = {
        "wreath_order": W.order(),
        "wreath_degree": W.degree,
        "verbal_order": verbal.order(),
        "embedded_subgroup_order": embedded_sub.order(),
        "trace_order": trace.order(),
    }
    return PipelineReport(verdict=verdict, escape=escape, details=details)


# -- cross-checks used by the test suite -------------------------------------------------


def product_condition_on_normals(G: PermutationGroup, H: PermutationGroup,
                                 desc: ProductVariety, ctx: EngineContext):
    """For each normal N0 with N0 in the left factor and G/N0 in the right,
    check the covering condition (and the inner embedding when decidable).

    Checking a single normal subgroup is not enough, so this enumerates all
    of them; it is a consistency check, not the decision path.
    """
    if not isinstance(desc, ProductVariety):
        raise GroupError("needs a product descriptor")
    results = []
    for N0 in normal_subgroups(G, ctx.budgets):
        left_member = member_of_variety(N0, desc.left, ctx.budgets,
                                        ctx.fixtures)
        if left_member is not True:
            continue
        quotient_group = quotient(G, N0, ctx.budgets).group
        right_member = member_of_variety(quotient_group, desc.right,
                                         ctx.budgets, ctx.fixtures)
        if right_member is not True:
            continue
        covers = product_covers(G, H, N0, ctx.budgets)
        inner_outcome = None
        if N0.order() > 1:
            trace = subgroup_intersection(G, H, N0, ctx.budgets)
            inner_outcome = epi_decide(N0, trace, desc.left, ctx).outcome
        results.append({"normal_order": N0.order(), "covers": covers,
                        "inner_outcome": inner_outcome})
    return results
