import random

import pytest

from smallcox.coxeter import symmetric, triplet, twin, universal
from smallcox.matrices import IntMatrix
from smallcox.rewriting import (CosetBudgetError, KernelRewriter,
                                LatticeTorsionError, Presentation,
                                RelationCheckError, abelian_invariants,
                                coset_table, coxeter_presentation,
                                format_presentation,
                                kernel_conjugation_matrix, parse_presentation,
                                quotient_map, reidemeister_schreier,
                                tietze_simplify, trivial_map)
from smallcox.tits import evaluate


def kernel_rewriter(system, kind, m=None):
    qmap = quotient_map(system, kind, m)
    table = coset_table(qmap)
    return table, KernelRewriter(coxeter_presentation(system), table)


class TestCoxeterPresentation:
    def test_twin_rank_two(self):
        pres = coxeter_presentation(twin(3))
        assert pres.generators == 2
        assert set(pres.relators) == {(1, 1), (2, 2)}

    def test_symmetric_rank_two(self):
        pres = coxeter_presentation(symmetric(3))
        assert set(pres.relators) == {(1, 1), (2, 2), (1, 2, 1, 2, 1, 2)}

    def test_triplet_four_strands(self):
        pres = coxeter_presentation(triplet(4))
        assert pres.generators == 3
        assert set(pres.relators) == {(1, 1), (2, 2), (3, 3),
                                      (1, 2) * 3, (2, 3) * 3}

    def test_universal_has_only_squares(self):
        pres = coxeter_presentation(universal(5))
        assert set(pres.relators) == {(i, i) for i in range(1, 5)}


class TestQuotientMap:
    def test_symmetric_on_triplet(self):
        qmap = quotient_map(triplet(4), "symmetric")
        assert qmap.images[0] == (1, 0, 2, 3)
        assert coset_table(qmap).count == 24

    def test_mod2_abelian_on_twin(self):
        qmap = quotient_map(twin(4), "mod2_abelian")
        assert qmap.images == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def test_mod2_abelian_on_triplet_is_parity(self):
        # consecutive odd bonds merge every generator class
        qmap = quotient_map(triplet(4), "mod2_abelian")
        assert qmap.images == ((1,), (1,), (1,))

    def test_modular_on_twin(self):
        qmap = quotient_map(twin(4), "modular", 6)
        assert qmap.images[0].rows == ((5, 2, 0), (0, 1, 0), (0, 0, 1))

    def test_symmetric_needs_chain_family(self):
        with pytest.raises(RelationCheckError):
            quotient_map(universal(4), "symmetric")

    def test_modular_needs_modulus(self):
        with pytest.raises(ValueError):
            quotient_map(twin(4), "modular")

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            quotient_map(twin(4), "nonsense")


class TestCosetTable:
    def test_triplet_symmetric_has_24_cosets(self):
        qmap = quotient_map(triplet(4), "symmetric")
        assert coset_table(qmap).count == 24

    def test_twin3_mod2_transversal(self):
        qmap = quotient_map(twin(3), "mod2_abelian")
        table = coset_table(qmap)
        assert table.transversal == ((), (1,), (2,), (1, 2))

    def test_twin4_mod3_matches_symmetric_map(self):
        # the kernel of the mod-3 reduction is the pure twin group, so
        # both maps induce the same coset structure
        modular = coset_table(quotient_map(twin(4), "modular", 3))
        permutation = coset_table(quotient_map(twin(4), "symmetric"))
        assert modular.count == permutation.count == 24
        assert modular.transversal == permutation.transversal
        assert modular.action == permutation.action

    def test_transversal_is_prefix_closed_and_shortlex(self):
        table = coset_table(quotient_map(triplet(4), "symmetric"))
        words = set(table.transversal)
        for word in table.transversal:
            assert word[:-1] in words or word == ()
        lengths = [len(w) for w in table.transversal]
        assert lengths == sorted(lengths)

    def test_budget(self):
        with pytest.raises(CosetBudgetError):
            coset_table(quotient_map(triplet(4), "symmetric"), cap=5)


class TestReidemeisterSchreier:
    def test_twin3_commutator_subgroup(self):
        table, rewriter = kernel_rewriter(twin(3), "mod2_abelian")
        pres = rewriter.presentation
        assert pres.generators == 4 * 2 - 3
        simp = tietze_simplify(pres)
        assert (simp.generators, simp.relators) == (1, ())
        # the surviving generator is the class of s_2 s_1 s_2 s_1
        coords = rewriter.free_coordinates((2, 1, 2, 1))
        assert coords in ((1,), (-1,))

    def test_index_formula_across_fixtures(self):
        fixtures = [
            (twin(3), "mod2_abelian", None),
            (twin(4), "mod2_abelian", None),
            (twin(4), "symmetric", None),
            (twin(4), "modular", 6),
            (triplet(4), "symmetric", None),
            (triplet(4), "mod2_abelian", None),
            (symmetric(4), "symmetric", None),
        ]
        for system, kind, m in fixtures:
            qmap = quotient_map(system, kind, m)
            table = coset_table(qmap)
            pres = reidemeister_schreier(coxeter_presentation(system), table)
            n, g = table.count, system.rank
            assert pres.generators == n * g - (n - 1)

    def test_kernel_of_isomorphism_is_trivial(self):
        table, rewriter = kernel_rewriter(symmetric(3), "symmetric")
        simp = tietze_simplify(rewriter.presentation)
        assert (simp.generators, simp.relators) == (0, ())

    def test_pure_triplet_free_generators(self):
        # the six nontrivial kernel generators of the 4-strand triplet
        # group, written over the ambient alphabet, satisfy
        # x6 = x2 x4^-1 x1^-1 x5 x3^-1; the faithful integral
        # representation certifies the equality
        system = triplet(4)
        x1 = (1, 3, 1, 3)
        x2 = (2,) + x1 + (2,)
        x3 = (1, 2) + x1 + (2, 1)
        x4 = (3, 2) + x1 + (2, 3)
        x5 = (1, 3, 2) + x1 + (2, 3, 1)
        x6 = (2, 1, 3, 2) + x1 + (2, 3, 1, 2)
        lhs = evaluate(system, x6)
        rhs = (evaluate(system, x2) *
               invert(system, x4) * invert(system, x1) *
               evaluate(system, x5) * invert(system, x3))
        assert lhs == rhs
        # and they are visible in the kernel's abelianization
        table, rewriter = kernel_rewriter(system, "symmetric")
        assert rewriter.rank == 5
        c = [rewriter.free_coordinates(w) for w in (x1, x2, x3, x4, x5, x6)]
        combo = [c[1][i] - c[3][i] - c[0][i] + c[4][i] - c[2][i]
                 for i in range(5)]
        assert tuple(combo) == c[5]

    def test_rewrite_rejects_non_kernel_words(self):
        table, rewriter = kernel_rewriter(twin(3), "mod2_abelian")
        with pytest.raises(ValueError):
            rewriter.exponent_vector((1,))


def invert(system, word):
    return evaluate(system, tuple(reversed(word)))


class TestTietze:
    def test_inverse_pair_collapses(self):
        pres = Presentation(2, ((1, 2),))
        simp = tietze_simplify(pres)
        assert (simp.generators, simp.relators) == (1, ())

    def test_torsion_relator_untouched(self):
        pres = Presentation(1, ((1, 1),))
        assert tietze_simplify(pres) == pres

    def test_pure_triplet_is_free_of_rank_five(self):
        table, rewriter = kernel_rewriter(triplet(4), "symmetric")
        simp = tietze_simplify(rewriter.presentation)
        assert (simp.generators, len(simp.relators)) == (5, 0)

    def test_preserves_abelian_invariants(self):
        rng = random.Random(5)
        for system, kind in ((twin(4), "symmetric"), (twin(4), "mod2_abelian"),
                             (triplet(4), "mod2_abelian"),
                             (triplet(4), "symmetric")):
            qmap = quotient_map(system, kind)
            pres = reidemeister_schreier(coxeter_presentation(system),
                                         coset_table(qmap))
            assert abelian_invariants(tietze_simplify(pres)) == \
                abelian_invariants(pres)
        for _ in range(25):
            g = rng.randrange(1, 5)
            rels = tuple(tuple(rng.choice((1, -1)) * rng.randrange(1, g + 1)
                               for _ in range(rng.randrange(0, 7)))
                         for _ in range(rng.randrange(0, 5)))
            pres = Presentation(g, rels)
            assert abelian_invariants(tietze_simplify(pres)) == \
                abelian_invariants(pres)


class TestAbelianInvariants:
    def test_pure_twin_four(self):
        table, rewriter = kernel_rewriter(twin(4), "modular", 6)
        inv = abelian_invariants(rewriter.presentation)
        assert inv == AbelianInvariants(7, ())

    def test_twin5_commutator(self):
        table, rewriter = kernel_rewriter(twin(5), "mod2_abelian")
        assert abelian_invariants(rewriter.presentation) == \
            AbelianInvariants(5, ())

    def test_triplet4_commutator_torsion(self):
        table, rewriter = kernel_rewriter(triplet(4), "mod2_abelian")
        assert abelian_invariants(rewriter.presentation) == \
            AbelianInvariants(0, (3, 3))

    @pytest.mark.parametrize("n,expected", [(3, 1), (4, 3), (5, 5), (6, 7)])
    def test_twin_commutator_rank(self, n, expected):
        table, rewriter = kernel_rewriter(twin(n), "mod2_abelian")
        inv = abelian_invariants(rewriter.presentation)
        assert inv == AbelianInvariants(expected, ())

    @pytest.mark.parametrize("n", (3, 4, 5))
    def test_triplet_commutator_torsion(self, n):
        table, rewriter = kernel_rewriter(triplet(n), "mod2_abelian")
        inv = abelian_invariants(rewriter.presentation)
        assert inv == AbelianInvariants(0, (3,) * (n - 2))

    def test_invariant_under_reordering(self):
        table, rewriter = kernel_rewriter(twin(4), "symmetric")
        pres = rewriter.presentation
        rng = random.Random(3)
        rels = list(pres.relators)
        rng.shuffle(rels)
        perm = list(range(1, pres.generators + 1))
        rng.shuffle(perm)
        relabeled = tuple(
            tuple((1 if x > 0 else -1) * perm[abs(x) - 1] for x in rel)
            for rel in rels)
        assert abelian_invariants(Presentation(pres.generators, relabeled)) \
            == abelian_invariants(pres)

    def test_rendering(self):
        assert str(AbelianInvariants(7, ())) == "Z^7"
        assert str(AbelianInvariants(1, ())) == "Z"
        assert str(AbelianInvariants(0, (3, 3))) == "Z_3 + Z_3"
        assert str(AbelianInvariants(0, ())) == "0"
        assert str(AbelianInvariants(2, (2, 4))) == "Z^2 + Z_2 + Z_4"


class TestConjugation:
    def test_rank_one_kernel_inverted_by_generator(self):
        system = twin(3)
        qmap = quotient_map(system, "symmetric")
        table = coset_table(qmap)
        pres = coxeter_presentation(system)
        mat = kernel_conjugation_matrix(pres, table, (1,))
        assert mat.rows == ((-1,),)

    def test_identity_word_gives_identity(self):
        table, rewriter = kernel_rewriter(twin(4), "symmetric")
        assert rewriter.conjugation_matrix(()).is_identity()

    def test_moves_pair_cube_class(self):
        table, rewriter = kernel_rewriter(twin(4), "symmetric")
        mat = rewriter.conjugation_matrix((3,))
        v = rewriter.free_coordinates((1, 2) * 3)
        image = tuple(sum(mat.rows[i][j] * v[j] for j in range(7))
                      for i in range(7))
        assert image == rewriter.free_coordinates((3,) + (1, 2) * 3 + (3,))

    def test_multiplicative(self):
        table, rewriter = kernel_rewriter(twin(4), "symmetric")
        rng = random.Random(17)
        for _ in range(50):
            u = tuple(rng.randrange(1, 4) for _ in range(rng.randrange(0, 6)))
            v = tuple(rng.randrange(1, 4) for _ in range(rng.randrange(0, 6)))
            assert rewriter.conjugation_matrix(u + v) == \
                rewriter.conjugation_matrix(u) * rewriter.conjugation_matrix(v)

    def test_torsion_reported(self):
        system = triplet(4)
        qmap = quotient_map(system, "mod2_abelian")
        table = coset_table(qmap)
        pres = coxeter_presentation(system)
        with pytest.raises(LatticeTorsionError) as exc:
            kernel_conjugation_matrix(pres, table, (1,))
        assert exc.value.torsion == (3, 3)

    def test_trivial_map_gives_empty_identity(self):
        system = twin(4)
        qmap = trivial_map(system)
        table = coset_table(qmap)
        rewriter = KernelRewriter(coxeter_presentation(system), table)
        assert table.count == 1
        assert rewriter.torsion == (2, 2, 2)
        mat = rewriter.conjugation_matrix((1, 2), allow_torsion=True)
        assert mat.dimension == 0 and mat.is_identity()


class TestPresentationFormat:
    def test_round_trip(self):
        pres = Presentation(3, ((1, 2, -1, -2), (3, 3)))
        assert parse_presentation(format_presentation(pres)) == pres

    def test_header_required(self):
        with pytest.raises(ValueError):
            parse_presentation("1 2\n")

    def test_letter_range_checked(self):
        with pytest.raises(ValueError):
            Presentation(2, ((3,),))
