import random

import pytest

from wricc import (
    AT_LEAST,
    BUDGET_EXHAUSTED,
    EXACT_FINITE,
    CayleyTableGroup,
    CyclicGroup,
    DirectProductGroup,
    FreeGroup,
    IntegersGroup,
    KindMismatch,
    PreconditionError,
    SymmetricGroup,
    Tri,
    class_enum_bounded,
)

Z = IntegersGroup()
Z2 = CyclicGroup(2)
Z3 = CyclicGroup(3)
S3 = SymmetricGroup(3)
F2 = FreeGroup(2)

# 0-based image arrays for the transpositions and 3-cycles of S3
P12 = (1, 0, 2)
P13 = (2, 1, 0)
P23 = (0, 2, 1)
P123 = (1, 2, 0)
P132 = (2, 0, 1)

A = (1,)
B = (2,)


class TestMultiply:
    def test_integers(self):
        assert Z.multiply(2, 3) == 5

    def test_free_cancellation(self):
        ab = F2.multiply(A, B)
        assert F2.multiply(ab, F2.inverse(B)) == A

    def test_s3(self):
        # composed by hand: (12)(13) = (132)
        assert S3.multiply(P12, P13) == P132

    def test_kind_mismatch(self):
        with pytest.raises(KindMismatch):
            Z.multiply(2, "x")
        with pytest.raises(KindMismatch):
            Z3.validate(3)
        with pytest.raises(KindMismatch):
            S3.validate((0, 0, 1))
        with pytest.raises(KindMismatch):
            F2.validate((1, -1))


class TestInverse:
    def test_integers(self):
        assert Z.inverse(5) == -5

    def test_free(self):
        assert F2.inverse(F2.multiply(A, B)) == (-2, -1)

    def test_cyclic(self):
        assert Z3.inverse(2) == 1


class TestConjugate:
    def test_abelian(self):
        assert Z.conjugate(4, 7) == 4

    def test_s3(self):
        # (13)(12)(13) = (23), evaluated by hand
        assert S3.conjugate(P12, P13) == P23

    def test_free_reduced(self):
        w = F2.conjugate(A, B)
        assert w == (-2, 1, 2)
        assert len(w) == 3


class TestClassEnum:
    def test_integers_singleton(self):
        rep = class_enum_bounded(Z, 3, 5, 100)
        assert rep.status == EXACT_FINITE
        assert rep.elements == (3,)
        assert rep.generated_subgroup_only

    def test_s3_transpositions(self):
        rep = class_enum_bounded(S3, P12, 3, 100)
        assert rep.status == EXACT_FINITE
        assert set(rep.elements) == {P12, P13, P23}
        assert not rep.generated_subgroup_only

    def test_free_at_least(self):
        rep = class_enum_bounded(F2, A, 6, 50)
        assert rep.status == AT_LEAST
        assert rep.count >= 50

    def test_free_radius_exhausted(self):
        rep = class_enum_bounded(F2, A, 1, 1000)
        assert rep.status == BUDGET_EXHAUSTED
        assert rep.count > 1

    def test_exact_closure_is_closed(self):
        rep = class_enum_bounded(S3, P123, 10, 100)
        assert rep.status == EXACT_FINITE
        S = set(rep.elements)
        for s in S:
            for g in S3.generators:
                assert S3.conjugate(s, g) in S

    def test_class_size_divides_order(self):
        for G in (S3, Z3, SymmetricGroup(4)):
            for x in G.elements():
                rep = class_enum_bounded(G, x, G.order() + 1, G.order() + 1)
                assert rep.status == EXACT_FINITE
                assert G.order() % rep.count == 0

    def test_zero_budget(self):
        with pytest.raises(PreconditionError):
            class_enum_bounded(Z, 1, 0, 10)


class TestFcContains:
    def test_integers(self):
        assert Z.fc_contains(17)

    def test_free_nonidentity(self):
        assert not F2.fc_contains(A)
        assert F2.fc_contains(())
        # cross-check: the class blows past any budget
        rep = class_enum_bounded(F2, A, 4, 30)
        assert rep.status != EXACT_FINITE

    def test_finite(self):
        assert S3.fc_contains(P123)

    def test_free_rank1_like_integers(self):
        F1 = FreeGroup(1)
        assert F1.fc_contains((1, 1))
        assert F1.icc_status().answer is Tri.NO


class TestFiniteInvariantSet:
    def test_z2(self):
        assert Z2.finite_invariant_set_example() == frozenset({1})

    def test_s3_transposition_class(self):
        assert S3.finite_invariant_set_example() == frozenset({P12, P13, P23})

    def test_integers(self):
        assert Z.finite_invariant_set_example() == frozenset({1})

    def test_free_icc_error(self):
        with pytest.raises(PreconditionError):
            F2.finite_invariant_set_example()

    def test_product_embeds_factor_witness(self):
        P = DirectProductGroup((Z2, F2))
        xi = P.finite_invariant_set_example()
        assert xi == frozenset({(1, ())})


class TestIccStatus:
    def test_declared_facts(self):
        assert Z.icc_status().answer is Tri.NO
        assert Z2.icc_status().answer is Tri.NO
        assert S3.icc_status().answer is Tri.NO
        assert F2.icc_status().answer is Tri.YES

    def test_product(self):
        assert DirectProductGroup((F2, FreeGroup(3))).icc_status().answer is Tri.YES
        assert DirectProductGroup((F2, Z2)).icc_status().answer is Tri.NO
        assert DirectProductGroup((CyclicGroup(1), F2)).icc_status().answer is Tri.YES
        assert DirectProductGroup((CyclicGroup(1),)).icc_status().answer is Tri.NO

    def test_icc_implies_infinite_nontrivial(self):
        for G in (Z, Z2, S3, F2, DirectProductGroup((F2, Z2))):
            st = G.icc_status()
            if st.answer is Tri.YES:
                assert not G.is_finite and not G.is_trivial
            if G.is_trivial or G.is_finite:
                assert st.answer is Tri.NO


GROUPS = [Z, Z2, Z3, S3, SymmetricGroup(4), F2, FreeGroup(1), DirectProductGroup((Z3, S3))]


@pytest.mark.parametrize("G", GROUPS, ids=lambda g: g.kind)
def test_group_axioms_random(G):
    rng = random.Random(12345)
    e = G.identity()
    for _ in range(300):
        a, b, c = (G.random_element(rng) for _ in range(3))
        assert G.multiply(G.multiply(a, b), c) == G.multiply(a, G.multiply(b, c))
        assert G.multiply(a, e) == a
        assert G.multiply(e, a) == a
        assert G.multiply(a, G.inverse(a)) == e
        assert G.conjugate(a, b) == G.multiply(G.multiply(G.inverse(b), a), b)


@pytest.mark.parametrize("G", GROUPS, ids=lambda g: g.kind)
def test_ball_stream_deterministic_and_fresh(G):
    first = list(x for x, _ in zip(G.ball_stream(), range(30)))
    second = list(x for x, _ in zip(G.ball_stream(), range(30)))
    assert first == second
    assert len(set(first)) == len(first)
    assert first[0] == G.identity()


def test_cayley_table_group():
    # Z4 as an explicit table
    table = [[(i + j) % 4 for j in range(4)] for i in range(4)]
    G = CayleyTableGroup.from_table(table, [1])
    assert G.order() == 4
    assert not G.is_trivial
    e = G.identity()
    g = G.generators[0]
    assert G.multiply(g, G.multiply(g, G.multiply(g, g))) == e
    assert G.icc_status().answer is Tri.NO
    assert G.fc_contains(g)
    xi = G.finite_invariant_set_example()
    assert e not in xi and xi


def test_free_literals_roundtrip():
    for text in ["1", "a", "a*b^-1*a", "a^3*b^-2", "b^-1*a*b"]:
        w = F2.parse_element(text)
        assert F2.parse_element(F2.format_element(w)) == w


def test_product_literals_roundtrip():
    P = DirectProductGroup((Z, S3))
    x = (4, P13)
    assert P.parse_element(P.format_element(x)) == x
    assert P.format_element(x) == "(4; [2,1,0])"
