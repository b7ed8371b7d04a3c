import pytest

from vlab.errors import BudgetExceeded, GroupError
from vlab.perm import (alternating_group, cyclic_group, dihedral_group,
                       mulclose, parse_permutation, pad_permutation,
                       symmetric_group)
from vlab.structure import (all_subgroups, conjugacy_classes, derived_series,
                            derived_subgroup, is_normal, is_solvable,
                            lower_central_series, nilpotency_class,
                            normal_closure, normal_subgroups, normalizer,
                            product_covers, quotient, solvable_radical,
                            subgroup_intersection)
from vlab.config import Budgets


def brute_subgroup_elements(G, seed):
    """Independent closure oracle for the subgroup generated by seed."""
    if not seed:
        return {G.identity()}
    return set(mulclose(list(seed)))


class TestNormalClosure:
    def test_s3_three_cycle(self):
        s3 = symmetric_group(3)
        n = normal_closure(s3, [parse_permutation("(0 1 2)", 3)])
        assert n.order() == 3

    def test_empty_seed(self):
        assert normal_closure(symmetric_group(3), []).order() == 1

    def test_a5_three_cycle_generates_everything(self, a5):
        n = normal_closure(a5, [parse_permutation("(0 1 2)", 5)])
        assert n.order() == 60
        # cross-check by exhaustive closure of the conjugates
        conj = {parse_permutation("(0 1 2)", 5) ** g for g in a5.elements()}
        assert len(mulclose(sorted(conj))) == 60

    def test_closure_is_normal_and_contains_seed(self):
        for G in (symmetric_group(4), dihedral_group(6)):
            seed = [G.generators[0] ** 2]
            n = normal_closure(G, seed)
            assert is_normal(G, n)
            assert all(n.contains(s) for s in seed)

    def test_seed_outside_group_rejected(self):
        with pytest.raises(GroupError):
            normal_closure(alternating_group(4),
                           [parse_permutation("(0 1)", 4)])


class TestDerivedAndCentralSeries:
    def test_derived_a5_is_a5(self, a5):
        assert derived_subgroup(a5).order() == 60

    def test_derived_abelian_trivial(self):
        assert derived_subgroup(cyclic_group(6)).order() == 1

    def test_derived_series_s4(self):
        orders = [g.order() for g in derived_series(symmetric_group(4))]
        assert orders == [24, 12, 4, 1]

    def test_derived_series_entries_normal_and_decreasing(self):
        G = symmetric_group(4)
        series = derived_series(G)
        for a, b in zip(series, series[1:]):
            assert b.order() < a.order()
            assert is_normal(G, b)

    def test_derived_matches_commutator_enumeration(self):
        # oracle: subgroup generated by all elementwise commutators
        for G in (symmetric_group(4), dihedral_group(4),
                  alternating_group(4)):
            elems = G.elements()
            comms = {a.inverse() * b.inverse() * a * b
                     for a in elems for b in elems}
            expected = brute_subgroup_elements(G, sorted(comms))
            assert derived_subgroup(G).order() == len(expected)

    def test_lower_central_series_d4(self):
        series = lower_central_series(dihedral_group(4), 3)
        assert [g.order() for g in series] == [8, 2, 1, 1]

    def test_nilpotency_class(self):
        assert nilpotency_class(dihedral_group(4)) == 2
        assert nilpotency_class(cyclic_group(6)) == 1
        assert nilpotency_class(symmetric_group(3)) is None

    def test_solvability(self):
        assert is_solvable(symmetric_group(4))
        assert not is_solvable(alternating_group(5))


class TestSubgroupQueries:
    def test_is_normal(self):
        s4 = symmetric_group(4)
        assert not is_normal(s4, s4.subgroup([parse_permutation("(0 1)", 4)]))
        v4 = s4.subgroup([parse_permutation("(0 1)(2 3)", 4),
                          parse_permutation("(0 2)(1 3)", 4)])
        assert is_normal(s4, v4)

    def test_intersection_filter(self):
        s4 = symmetric_group(4)
        a4 = s4.subgroup([parse_permutation("(0 1 2)", 4),
                          parse_permutation("(1 2 3)", 4)])
        s3 = s4.subgroup([pad_permutation(g, 4)
                          for g in symmetric_group(3).generators])
        meet = subgroup_intersection(s4, a4, s3)
        assert meet.order() == 3

    def test_intersection_containment_shortcut(self):
        s4 = symmetric_group(4)
        a4 = s4.subgroup([parse_permutation("(0 1 2)", 4),
                          parse_permutation("(1 2 3)", 4)])
        assert subgroup_intersection(s4, a4, s4).order() == 12

    def test_product_covers(self):
        s4 = symmetric_group(4)
        s3 = s4.subgroup([pad_permutation(g, 4)
                          for g in symmetric_group(3).generators])
        a4 = s4.subgroup([parse_permutation("(0 1 2)", 4),
                          parse_permutation("(1 2 3)", 4)])
        assert product_covers(s4, s3, a4)
        assert product_covers(s4, s4, s4.subgroup([s4.identity()]))
        assert not product_covers(s4, s3, s3)


class TestNormalizer:
    def test_normalizer_of_c4_in_s4(self):
        s4 = symmetric_group(4)
        c4 = s4.subgroup([parse_permutation("(0 1 2 3)", 4)])
        n = normalizer(s4, c4)
        assert n.order() == 8
        # brute-force oracle
        d_els = set(c4.elements())
        brute = [g for g in s4.elements()
                 if all(d ** g in d_els for d in d_els)]
        assert len(brute) == 8

    def test_normalizer_of_whole_group(self, a5):
        assert normalizer(a5, a5).order() == 60

    def test_normalizer_of_sylow5_in_a5(self, a5):
        syl = a5.subgroup([parse_permutation("(0 1 2 3 4)", 5)])
        assert normalizer(a5, syl).order() == 10

    def test_budget(self, a5):
        with pytest.raises(BudgetExceeded):
            normalizer(a5, a5.subgroup([parse_permutation("(0 1 2)", 5)]),
                       Budgets(max_normalizer=10))


class TestQuotient:
    def test_s4_mod_v4(self):
        s4 = symmetric_group(4)
        v4 = s4.subgroup([parse_permutation("(0 1)(2 3)", 4),
                          parse_permutation("(0 2)(1 3)", 4)])
        q = quotient(s4, v4)
        assert q.group.order() == 6
        assert not q.group.is_abelian()
        assert q.projection.kernel().order() == 4
        assert q.coset_reps[0].is_identity()

    def test_regular_image(self):
        d4 = dihedral_group(4)
        q = quotient(d4, d4.subgroup([d4.identity()]))
        assert q.group.order() == 8
        assert q.group.degree == 8

    def test_wreath_mod_base(self, a5):
        from vlab.constructions import regular_wreath
        w = regular_wreath(a5, cyclic_group(2))
        q = quotient(w.product, w.base_subgroup())
        assert q.group.order() == 2

    def test_non_normal_rejected(self):
        s4 = symmetric_group(4)
        with pytest.raises(GroupError):
            quotient(s4, s4.subgroup([parse_permutation("(0 1)", 4)]))

    def test_projection_is_verified_homomorphism(self):
        # pointwise multiplicativity oracle on a small instance
        s4 = symmetric_group(4)
        a4 = s4.subgroup([parse_permutation("(0 1 2)", 4),
                          parse_permutation("(1 2 3)", 4)])
        q = quotient(s4, a4)
        for x in s4.elements():
            for y in s4.generators:
                assert q.projection.apply(x * y) == \
                    q.projection.apply(x) * q.projection.apply(y)


class TestRadicalAndLattices:
    def test_radical_of_solvable_group_is_whole(self):
        # the join of all solvable normal subgroups of a solvable group is
        # the group itself
        assert solvable_radical(symmetric_group(4)).order() == 24
        assert solvable_radical(cyclic_group(6)).order() == 6

    def test_radical_of_a5_trivial(self, a5):
        assert solvable_radical(a5).order() == 1

    def test_radical_of_wreath(self, a5):
        from vlab.constructions import regular_wreath
        w = regular_wreath(cyclic_group(2), cyclic_group(3))
        assert solvable_radical(w.product).order() == 24

    def test_normal_subgroups_s4(self):
        orders = sorted(n.order() for n in normal_subgroups(symmetric_group(4)))
        assert orders == [1, 4, 12, 24]

    def test_normal_subgroups_a5(self, a5):
        assert sorted(n.order() for n in normal_subgroups(a5)) == [1, 60]

    def test_normal_subgroups_q8(self):
        from vlab.catalog import resolve_group_name
        q8 = resolve_group_name("Q8")
        orders = sorted(n.order() for n in normal_subgroups(q8))
        assert orders == [1, 2, 4, 4, 4, 8]

    def test_all_subgroups_counts(self):
        assert len(all_subgroups(symmetric_group(4))) == 30
        assert len(all_subgroups(dihedral_group(4))) == 10
        from vlab.catalog import resolve_group_name
        assert len(all_subgroups(resolve_group_name("C2^3"))) == 16

    def test_conjugacy_class_count(self, a5):
        assert len(conjugacy_classes(a5)) == 5
        assert len(conjugacy_classes(symmetric_group(4))) == 5
