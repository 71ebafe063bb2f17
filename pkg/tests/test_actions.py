import pytest

from zkhomology.actions import (
    Subgroup,
    check_regularity,
    compatible_ordering,
    coset_ordering,
    coset_position,
    index_reducing,
    is_regular,
    lex_lift,
    lex_max_lift,
    quotient,
    regularize,
    trivial_action,
    validate_action,
)
from zkhomology.errors import (
    InvalidActionError,
    RegularityError,
    UnknownSimplexError,
)
from zkhomology.exact import QQ
from zkhomology.simplicial import betti_direct, build_complex


def _cycle(n):
    return build_complex([{i, (i + 1) % n} for i in range(n)])


@pytest.fixture
def path_action():
    return validate_action(build_complex([{0, 1}, {1, 2}]), [2, 1, 0], 2)


class TestValidateAction:
    def test_octagon_rotation(self):
        act = validate_action(_cycle(8), [(i + 4) % 8 for i in range(8)], 2)
        # every edge maps to an edge
        for s in act.complex.simplices(1):
            assert act.apply_simplex(1, s) in act.complex

    def test_path_flip(self, path_action):
        assert path_action.apply_simplex(1, (0, 1)) == (1, 2)

    def test_order_must_divide_k(self):
        with pytest.raises(InvalidActionError, match="does not divide"):
            validate_action(build_complex([{0, 1, 2}]), [1, 0, 2], 3)

    def test_non_bijection(self):
        with pytest.raises(InvalidActionError) as err:
            validate_action(build_complex([{0, 1}]), [0, 0], 2)
        assert err.value.witness == 0

    def test_non_simplicial(self):
        X = build_complex([{0, 1}, {2}])
        with pytest.raises(InvalidActionError, match="not simplicial"):
            validate_action(X, [0, 2, 1], 2)

    def test_bad_k(self):
        with pytest.raises(InvalidActionError):
            validate_action(build_complex([{0}]), [0], 0)


class TestIsotropyAndOrbits:
    def test_path_isotropy(self, path_action):
        assert path_action.isotropy((1,)).order == 2
        assert path_action.isotropy((0, 1)).order == 1

    def test_unknown_simplex(self, path_action):
        with pytest.raises(UnknownSimplexError):
            path_action.isotropy((0, 2))

    def test_trivial_action_full_isotropy(self):
        act = trivial_action(build_complex([{0, 1, 2}]), 3)
        assert all(act.isotropy(s).order == 3
                   for s in act.complex.all_simplices())

    def test_orbit_stabilizer(self, corpus_actions):
        for act in corpus_actions.values():
            for s in act.complex.all_simplices():
                assert len(act.simplex_orbit(s)) * act.isotropy(s).order == act.k


class TestRegularity:
    def test_antipodal_square_witness(self, antipodal_action):
        w = check_regularity(antipodal_action)
        assert w is not None
        assert w.simplex == (0, 1)
        assert w.exponents == (0, 1)
        assert w.image == (0, 3)

    def test_octagon_regular(self):
        assert is_regular(validate_action(_cycle(8), [(i + 4) % 8 for i in range(8)], 2))

    def test_trivial_always_regular(self):
        for k in (1, 2, 3):
            assert is_regular(trivial_action(build_complex([{0, 1, 2}]), k))

    def test_corpus_regular(self, corpus_actions):
        for act in corpus_actions.values():
            assert check_regularity(act) is None

    def test_pointwise_fixing_consequence(self, corpus_actions):
        # regular implies g fixes psi ∩ g.psi vertex-wise
        for act in corpus_actions.values():
            for s in act.complex.all_simplices():
                for c in range(act.k):
                    moved = set(act.apply_simplex(c, s))
                    for v in set(s) & moved:
                        assert act.apply_vertex(c, v) == v

    def test_orbit_never_lands_on_another_face(self, corpus_actions):
        # regular implies: a face moved inside its cofacet is fixed
        from itertools import combinations
        for act in corpus_actions.values():
            for s in act.complex.all_simplices():
                for r in range(1, len(s)):
                    for w in combinations(s, r):
                        for c in range(1, act.k):
                            moved = act.apply_simplex(c, w)
                            if set(moved) <= set(s):
                                assert moved == w


class TestRegularize:
    def test_antipodal_becomes_regular(self, antipodal_action):
        reg = regularize(antipodal_action)
        assert is_regular(reg)
        assert reg.complex.face_counts() == (16, 16)

    def test_already_regular_stays_regular(self, path_action):
        assert is_regular(regularize(path_action))

    def test_betti_preserved(self, antipodal_action):
        reg = regularize(antipodal_action)
        assert betti_direct(reg.complex, QQ) == betti_direct(antipodal_action.complex, QQ)

    def test_quotient_after_regularize_across_corpus(self, corpus_actions,
                                                     antipodal_action):
        # projection stays well-defined and homology computable after a
        # double subdivision, non-regular input included (the torus-sized
        # entries are skipped: their subdivision is pure bulk)
        from zkhomology.pipeline import compressed_betti
        from zkhomology.transfer import build_triple

        small = [a for a in corpus_actions.values()
                 if a.complex.n_simplices(0) < 20]
        for act in small + [antipodal_action]:
            reg = regularize(act)
            qd = quotient(reg)
            for q in qd.quotient.all_simplices():
                assert qd.fiber(q)
            triple = build_triple(reg, qd=qd)
            assert compressed_betti(triple, QQ) == betti_direct(act.complex, QQ)


class TestQuotient:
    def test_octagon_gives_square(self):
        qd = quotient(validate_action(_cycle(8), [(i + 4) % 8 for i in range(8)], 2))
        assert qd.quotient == _cycle(4)

    def test_path_gives_edge(self, path_action):
        qd = quotient(path_action)
        assert qd.quotient.face_counts() == (2, 1)
        assert qd.project_simplex((1, 2)) == (0, 1)

    def test_two_triangles_give_one(self, corpus_actions):
        qd = quotient(corpus_actions["two_triangles_swap"])
        assert qd.quotient.face_counts() == (3, 3)

    def test_requires_regular(self, antipodal_action):
        with pytest.raises(RegularityError):
            quotient(antipodal_action)

    def test_projection_table(self, path_action):
        qd = quotient(path_action)
        # vertices (0,),(1,),(2,) project to labels 0,1,0; edges both to (0,1)
        assert qd.projection_table(0) == (0, 1, 0)
        assert qd.projection_table(1) == (0, 0)

    def test_fibers_are_orbits(self, corpus_actions):
        for act in corpus_actions.values():
            qd = quotient(act)
            for q in qd.quotient.all_simplices():
                fiber = qd.fiber(q)
                assert fiber == act.simplex_orbit(fiber[0])

    def test_unique_face_over_quotient(self, corpus_actions):
        from itertools import combinations
        for act in corpus_actions.values():
            qd = quotient(act)
            for s in act.complex.all_simplices():
                sq = qd.project_simplex(s)
                for r in range(1, len(sq) + 1):
                    for wq in combinations(sq, r):
                        matches = [w for w in combinations(s, r)
                                   if qd.project_simplex(w) == wq]
                        assert len(matches) == 1


class TestLifts:
    def test_lex_lift_path(self, path_action):
        lift = lex_lift(quotient(path_action))
        assert lift[(0, 1)] == (0, 1)  # beats (1, 2)
        assert lift[(0,)] == (0,)

    def test_lex_lift_octagon(self):
        act = validate_action(_cycle(8), [(i + 4) % 8 for i in range(8)], 2)
        qd = quotient(act)
        q = qd.project_simplex((3, 4))
        assert lex_lift(qd)[q] == (0, 7)
        assert lex_max_lift(qd)[q] == (3, 4)

    def test_singleton_orbit(self, path_action):
        assert lex_lift(quotient(path_action))[(1,)] == (1,)

    def test_section_property(self, corpus_actions):
        for act in corpus_actions.values():
            qd = quotient(act)
            for policy in (lex_lift, lex_max_lift):
                lift = policy(qd)
                for q, s in lift.items():
                    assert qd.project_simplex(s) == q


class TestCosetOrdering:
    def test_trivial_subgroup_k2(self):
        assert coset_ordering(Subgroup(2, 1)) == ((0,), (1,))

    def test_full_subgroup_k2(self):
        assert coset_ordering(Subgroup(2, 2)) == ((0, 1),)

    def test_k4_order2(self):
        assert coset_ordering(Subgroup(4, 2)) == ((0, 2), (1, 3))

    def test_first_coset_is_subgroup(self):
        for k in (1, 2, 3, 4, 6, 12):
            for order in (d for d in range(1, k + 1) if k % d == 0):
                H = Subgroup(k, order)
                assert coset_ordering(H)[0] == H.exponents()
                assert coset_position(H, 0) == 1

    def test_cosets_partition(self):
        for k in (6, 12):
            for order in (d for d in range(1, k + 1) if k % d == 0):
                cosets = coset_ordering(Subgroup(k, order))
                flat = sorted(c for coset in cosets for c in coset)
                assert flat == list(range(k))


class TestCompatibleOrdering:
    def test_path_dim0(self, path_action):
        qd = quotient(path_action)
        lp = compatible_ordering(qd, lex_lift(qd), 0)
        assert lp.ordering == ((0,), (2,), (1,))
        assert [list(b) for b in lp.blocks] == [[1, 2], [3]]

    def test_path_dim1(self, path_action):
        qd = quotient(path_action)
        lp = compatible_ordering(qd, lex_lift(qd), 1)
        assert lp.ordering == ((0, 1), (1, 2))
        assert [list(b) for b in lp.blocks] == [[1, 2]]

    def test_trivial_action_identity_ordering(self):
        act = trivial_action(_cycle(8), 2)
        qd = quotient(act)
        lp = compatible_ordering(qd, lex_lift(qd), 1)
        assert lp.ordering == act.complex.simplices(1)
        assert all(len(b) == 1 for b in lp.blocks)

    def test_blocks_partition(self, corpus_actions):
        for act in corpus_actions.values():
            qd = quotient(act)
            lift = lex_lift(qd)
            for d in range(qd.quotient.dim + 1):
                lp = compatible_ordering(qd, lift, d)
                covered = sorted(i for b in lp.blocks for i in b)
                assert covered == list(range(1, len(lp.ordering) + 1))
                assert sorted(lp.ordering) == list(act.complex.simplices(d))
                # first element of each block is the lift
                for start, q in zip(lp.starts, lp.quotient_order):
                    assert lp.ordering[start - 1] == lift[q]

    def test_custom_quotient_order(self, path_action):
        qd = quotient(path_action)
        lp = compatible_ordering(qd, lex_lift(qd), 0, quotient_order=((1,), (0,)))
        assert lp.ordering == ((1,), (0,), (2,))

    def test_rejects_non_permutation(self, path_action):
        qd = quotient(path_action)
        with pytest.raises(ValueError):
            compatible_ordering(qd, lex_lift(qd), 0, quotient_order=((0,), (0,)))


class TestIndexReducing:
    def test_path_dim0(self, path_action):
        qd = quotient(path_action)
        lp = compatible_ordering(qd, lex_lift(qd), 0)
        assert index_reducing(lp, 2) == (1, 2, 3, 3)

    def test_path_dim1(self, path_action):
        qd = quotient(path_action)
        lp = compatible_ordering(qd, lex_lift(qd), 1)
        assert index_reducing(lp, 2) == (1, 2)

    def test_trivial_action_constant_blocks(self):
        act = trivial_action(build_complex([{0, 1, 2}]), 3)
        qd = quotient(act)
        lp = compatible_ordering(qd, lex_lift(qd), 1)
        J = index_reducing(lp, 3)
        # full isotropy: every slab is constant at its block index
        assert J == (1, 1, 1, 2, 2, 2, 3, 3, 3)

    def test_slab_image_is_block(self, corpus_actions):
        for act in corpus_actions.values():
            qd = quotient(act)
            lift = lex_lift(qd)
            k = act.k
            for d in range(qd.quotient.dim + 1):
                lp = compatible_ordering(qd, lift, d)
                J = index_reducing(lp, k)
                assert len(J) == len(lp.blocks) * k
                for b, block in enumerate(lp.blocks):
                    assert set(J[b * k:(b + 1) * k]) == set(block)
                assert set(J) == set(range(1, len(lp.ordering) + 1))
