import pytest

from halinkit.graphs import binary_tree, comb
from halinkit.limitsim import (ConstructionState, EpsilonWord, alpha,
                               alpha_inverse_perm, alpha_perm, depth_budget,
                               fixing_oracle, run_construction,
                               verify_distinctness, verify_finitary)
from halinkit.perms import Permutation


@pytest.fixture(scope="module")
def tree12_k3():
    return run_construction(binary_tree(12), 3)


class TestEpsilonWord:
    def test_validation(self):
        with pytest.raises(ValueError):
            EpsilonWord(())
        with pytest.raises(ValueError):
            EpsilonWord((0, 2))

    def test_from_int_lsb_first(self):
        assert EpsilonWord.from_int(5, 4).bits == (1, 0, 1, 0)


class TestFixingOracle:
    def test_root_fixed_swaps_under_left_child(self):
        fam = binary_tree(4)
        phi = fixing_oracle(fam, {0})
        assert phi is not None
        assert phi(0) == 0
        # swap happens under vertex 1: children 3 and 4 exchange
        assert phi(3) == 4 and phi(4) == 3
        assert fam.graph.is_automorphism(phi.images)

    def test_deeper_interior_set(self):
        fam = binary_tree(3)
        phi = fixing_oracle(fam, {0, 1, 2})
        assert phi is not None
        assert all(phi(v) == v for v in (0, 1, 2))
        # shallowest clean subtree is under vertex 3
        assert phi(7) == 8 and phi(8) == 7
        assert fam.graph.is_automorphism(phi.images)

    def test_exhausted_when_no_clean_subtree(self):
        # depth-1 vertices are blocked and everything below is a leaf
        fam = binary_tree(2)
        assert fixing_oracle(fam, {0, 1, 2}) is None

    def test_boundary_rejected(self):
        fam = binary_tree(2)
        with pytest.raises(ValueError, match="boundary"):
            fixing_oracle(fam, {0, 3})

    def test_comb_leaf_swap(self):
        fam = comb(4)
        phi = fixing_oracle(fam, {0, 1})
        assert phi is not None
        assert phi(2) == 3 and phi(3) == 2
        assert phi.num_moved() == 2
        assert fam.graph.is_automorphism(phi.images)

    def test_comb_skips_blocked_sites(self):
        fam = comb(4)
        phi = fixing_oracle(fam, {2, 5})  # first two leaf pairs blocked
        assert phi is not None
        assert phi(8) == 9


class TestRunConstruction:
    def test_invariants_hold(self, tree12_k3):
        st = tree12_k3
        assert st.rounds_completed == 3 and not st.exhausted
        for k in range(3):
            fk, phi, x = st.fsets[k], st.phis[k], st.xs[k]
            assert k in fk                      # v_k absorbed
            assert fk < st.fsets[k + 1]         # strictly nested
            assert all(phi(v) == v for v in fk)
            assert phi(x) != x
            assert st.family.graph.is_automorphism(phi.images)

    def test_closure_is_exactly_the_mandated_union(self, tree12_k3):
        st = tree12_k3
        for k in range(3):
            expected = {st.xs[k], k + 1}
            for m in range(2 ** (k + 1)):
                bits = EpsilonWord.from_int(m, k + 1)
                fwd = alpha_perm(st, bits)
                bwd = alpha_inverse_perm(st, bits)
                expected |= {fwd(v) for v in st.fsets[k]}
                expected |= {bwd(v) for v in st.fsets[k]}
            assert st.fsets[k + 1] == frozenset(expected)

    def test_zero_rounds_rejected(self):
        with pytest.raises(ValueError):
            run_construction(binary_tree(3), 0)

    def test_exhausts_gracefully(self):
        st = run_construction(binary_tree(2), 5)
        assert st.exhausted
        assert st.rounds_completed == 1
        assert len(st.fsets) == st.rounds_completed + 1

    def test_exhausted_prefix(self, tree12_k3):
        m = tree12_k3.exhausted_prefix
        last = tree12_k3.fsets[-1]
        assert all(v in last for v in range(m))
        assert m not in last

    def test_comb_construction(self):
        st = run_construction(comb(10), 4)
        assert st.rounds_completed == 4
        for k in range(4):
            assert all(st.phis[k](v) == v for v in st.fsets[k])
            assert k in st.fsets[k]


class TestDepthBudget:
    @pytest.mark.parametrize("k", range(1, 11))
    def test_binary_tree_budget_suffices(self, k):
        st = run_construction(binary_tree(depth_budget("binary-tree", k)), k)
        assert st.rounds_completed == k

    @pytest.mark.parametrize("k", range(1, 7))
    def test_comb_budget_suffices(self, k):
        st = run_construction(comb(depth_budget("comb", k)), k)
        assert st.rounds_completed == k

    def test_bad_args(self):
        with pytest.raises(ValueError):
            depth_budget("binary-tree", 0)
        with pytest.raises(ValueError):
            depth_budget("grid", 3)


class TestAlpha:
    def test_all_zero_word_is_identity(self, tree12_k3):
        for v in sorted(tree12_k3.fsets[-1]):
            assert alpha(tree12_k3, (0, 0, 0), v) == v

    def test_vertex_in_f0_fixed_by_every_word(self, tree12_k3):
        for m in range(8):
            assert alpha(tree12_k3, EpsilonWord.from_int(m, 3), 0) == 0

    def test_x0_moved_by_one_word(self, tree12_k3):
        x0 = tree12_k3.xs[0]
        assert alpha(tree12_k3, (1,), x0) == tree12_k3.phis[0](x0) != x0

    def test_insufficient_rounds(self, tree12_k3):
        with pytest.raises(ValueError, match="rounds"):
            alpha(tree12_k3, (1, 0, 1, 1), 0)

    def test_unstable_vertex_rejected(self, tree12_k3):
        deep = max(v for v in range(tree12_k3.family.graph.n)
                   if v not in tree12_k3.fsets[1])
        with pytest.raises(ValueError, match="stable"):
            alpha(tree12_k3, (1,), deep)

    def test_stability_across_longer_words(self, tree12_k3):
        # for v in F_k, evaluation through later rounds gives the same image
        st = tree12_k3
        for v in sorted(st.fsets[1]):
            for tail in ((0,), (1,)):
                short = (1, 0)
                long = (1, 0) + tail
                assert alpha(st, short, v) == alpha(st, long, v)


class TestDistinctness:
    def test_k1(self):
        st = run_construction(binary_tree(4), 1)
        wits = verify_distinctness(st, 1)
        assert len(wits) == 1
        assert wits[0].image_a != wits[0].image_b

    def test_k3_all_28_pairs(self, tree12_k3):
        wits = verify_distinctness(tree12_k3, 3)
        assert len(wits) == 28
        assert all(w.image_a != w.image_b for w in wits)
        assert all(w.vertex in tree12_k3.fsets[w.first_diff + 1] for w in wits)

    def test_k10_tables_pairwise_distinct(self):
        st = run_construction(binary_tree(depth_budget("binary-tree", 10)), 10)
        assert st.rounds_completed == 10
        domain = sorted(st.fsets[-1])
        tables = {tuple(alpha(st, EpsilonWord.from_int(m, 10), v)
                        for v in domain)
                  for m in range(2 ** 10)}
        assert len(tables) == 2 ** 10

    def test_rounds_out_of_range(self, tree12_k3):
        with pytest.raises(ValueError):
            verify_distinctness(tree12_k3, 4)


class TestInverseConsistency:
    def test_all_words_k3(self, tree12_k3):
        n = tree12_k3.family.graph.n
        for m in range(8):
            w = EpsilonWord.from_int(m, 3)
            fwd = alpha_perm(tree12_k3, w)
            bwd = alpha_inverse_perm(tree12_k3, w)
            assert (fwd * bwd) == Permutation.identity(n)
            assert (bwd * fwd) == Permutation.identity(n)

    def test_alpha_preserves_adjacency_on_stable_region(self, tree12_k3):
        st = tree12_k3
        g = st.family.graph
        stable = sorted(st.fsets[2])
        for m in range(8):
            w = EpsilonWord.from_int(m, 3)
            images = {v: alpha(st, w, v) for v in stable}
            assert len(set(images.values())) == len(stable)  # injective
            for a in stable:
                for b in stable:
                    if a < b:
                        assert g.has_edge(a, b) == \
                            g.has_edge(images[a], images[b])


class TestFinitary:
    def test_tuple_in_f0(self, tree12_k3):
        assert verify_finitary(tree12_k3, [0], EpsilonWord.from_int(6, 3))

    def test_empty_tuple(self, tree12_k3):
        assert verify_finitary(tree12_k3, [], EpsilonWord.from_int(3, 3))

    def test_insufficient_rounds(self, tree12_k3):
        with pytest.raises(ValueError):
            verify_finitary(tree12_k3, [0, 1, 2], EpsilonWord.from_int(3, 3))

    def test_deeper_state_many_tuples(self):
        st = run_construction(binary_tree(12), 6)
        assert st.rounds_completed == 6
        for v in range(4):
            for m in (0, 21, 45, 63):
                assert verify_finitary(st, [v], EpsilonWord.from_int(m, 6))
        assert verify_finitary(st, [0, 1, 2, 3], EpsilonWord.from_int(45, 6))


class TestSerialization:
    def test_state_round_trip_fields(self, tree12_k3):
        blob = tree12_k3.to_json()
        assert blob["completed_rounds"] == 3
        assert blob["family"] == "binary-tree"
        assert len(blob["fsets"]) == 4
        assert len(blob["phis"]) == 3

    def test_exhaustion_export(self, tree12_k3):
        e = tree12_k3.exhaustion()
        assert len(e) == 4
        assert not e.covers
