import random

import pytest

from wricc import (
    CertificateBudget,
    CyclicGroup,
    FreeGroup,
    InfiniteFamilyCertificate,
    IntegersGroup,
    PreconditionError,
    RegularQSet,
    SymmetricGroup,
    Tri,
    TrivialQSet,
    WreathElement,
    WreathProduct,
    cert_condition_i,
    cert_finite_orbit,
    decide_icc,
    family_gd,
    family_lambda_translation,
    family_q_translation,
    family_value_conjugation,
    predicted_invariant_sets,
    support,
    verify_finite_certificate,
    verify_infinite_certificate,
    witness,
)

from conftest import load_instance

Z = IntegersGroup()
S3 = SymmetricGroup(3)
P123 = (1, 2, 0)
P132 = (2, 0, 1)


class TestConditionICert:
    def test_intmod_kernel_witness(self):
        G = load_instance("intmod-cond-i").group
        cert = cert_condition_i(G, 3)
        assert cert.provenance == "condition-i"
        assert cert.elements == frozenset({WreathElement((), 3)})
        assert verify_finite_certificate(G, cert)

    def test_finite_q_class(self):
        # trivial carrier, Q = S3: the class of a 3-cycle gives a 2-element set
        G = WreathProduct(CyclicGroup(2), S3, TrivialQSet(S3, 1))
        cert = cert_condition_i(G, P123)
        assert cert.elements == frozenset(
            {WreathElement((), P123), WreathElement((), P132)}
        )
        assert verify_finite_certificate(G, cert)

    def test_rejects_identity(self):
        G = load_instance("intmod-cond-i").group
        with pytest.raises(PreconditionError):
            cert_condition_i(G, 0)

    def test_rejects_moving_element(self):
        G = load_instance("intmod-cond-i").group
        with pytest.raises(PreconditionError):
            cert_condition_i(G, 1)

    def test_rejects_non_fc(self):
        G = WreathProduct(CyclicGroup(2), FreeGroup(2), TrivialQSet(FreeGroup(2), 1))
        with pytest.raises(PreconditionError):
            cert_condition_i(G, (1,))


class TestFiniteOrbitCert:
    @pytest.mark.parametrize(
        "name,size,formula",
        [
            ("trivial-omega", 1, "(1+1)^1 - 1 = 1"),
            ("mixed-union", 7, "(1+1)^3 - 1 = 7"),
            ("z2-wr-s3", 7, "(1+1)^3 - 1 = 7"),
            ("s3-wr-s3", 63, "(3+1)^3 - 1 = 63"),
        ],
    )
    def test_sizes(self, name, size, formula):
        G = load_instance(name).group
        cert = cert_finite_orbit(G)
        assert cert.provenance == "finite-orbit"
        assert len(cert.elements) == size
        assert formula in cert.size_formula
        assert verify_finite_certificate(G, cert)

    def test_members_shape(self):
        G = load_instance("mixed-union").group
        cert = cert_finite_orbit(G)
        for g in cert.elements:
            assert g.q == 0
            assert g.phi
            assert all(y[0] == 1 for y in support(g.phi))

    def test_rejects_open_orbit(self):
        G = load_instance("mixed-union").group
        with pytest.raises(PreconditionError):
            cert_finite_orbit(G, orbit=((1, 0), (1, 1)))

    def test_rejects_xi_with_identity(self):
        G = load_instance("mixed-union").group
        with pytest.raises(PreconditionError):
            cert_finite_orbit(G, xi={0, 1})

    def test_no_finite_orbit(self, lamplighter):
        with pytest.raises(PreconditionError):
            cert_finite_orbit(lamplighter)

    def test_nested_base_invariant_set(self, z2_wr_s3):
        # the base is itself a (non-icc) wreath product; its invariant set
        # has 7 members, so the outer certificate has 8^1 - 1 = 7
        outer = WreathProduct(z2_wr_s3, Z, TrivialQSet(Z, 1))
        cert = cert_finite_orbit(outer)
        assert len(cert.elements) == 7
        assert verify_finite_certificate(outer, cert, sample_count=100)


class TestQTranslation:
    def test_f2_acting(self):
        G = WreathProduct(CyclicGroup(2), FreeGroup(2), RegularQSet(FreeGroup(2)))
        g = WreathElement((), (1,))
        fam = family_q_translation(G, g)
        assert fam.family_kind == "q-translation"
        prefix = fam.take(25)
        assert len({c for _, c in prefix}) == 25
        assert verify_infinite_certificate(G, fam, N=25)

    def test_rejects_fc_element(self, lamplighter):
        with pytest.raises(PreconditionError):
            family_q_translation(lamplighter, WreathElement((), 1))


class TestLambdaTranslation:
    def test_supports_march(self, lamplighter):
        G = lamplighter
        g = WreathElement(G.zeta(1, 0), 0)
        fam = family_lambda_translation(G, g)
        prefix = fam.take(9)
        sups = [support(c.phi) for _, c in prefix]
        assert len(set(sups)) == 9
        assert verify_infinite_certificate(G, fam, N=9)

    def test_seeded_pure_translation(self, lamplighter):
        G = lamplighter
        g = WreathElement((), 2)
        seed = WreathElement(G.zeta(1, 0), 0)
        fam = family_lambda_translation(G, g, seed_conjugator=seed)
        assert verify_infinite_certificate(G, fam, N=30)

    def test_rejects_empty_support(self, lamplighter):
        with pytest.raises(PreconditionError):
            family_lambda_translation(lamplighter, WreathElement((), 2))

    def test_rejects_finite_orbit_support(self):
        G = load_instance("mixed-union-icc-base").group
        g = WreathElement(G.zeta((1,), (1, 0)), 0)  # supported on the 3-point part
        with pytest.raises(PreconditionError):
            family_lambda_translation(G, g)


class TestGd:
    def test_both_closed_forms(self, f2_wr_z2):
        G = f2_wr_z2
        # support avoiding y=0: the commuting branch
        g1 = WreathElement(G.zeta((1,), 1), 1)
        fam1 = family_gd(G, g1, 0)
        assert verify_infinite_certificate(G, fam1, N=40)
        # support containing y=0: the fused d^-1 c branch
        g2 = WreathElement(G.zeta((2,), 0), 1)
        fam2 = family_gd(G, g2, 0)
        assert verify_infinite_certificate(G, fam2, N=40)

    def test_conjugates_differ_at_qy(self, f2_wr_z2):
        G = f2_wr_z2
        g = WreathElement(G.zeta((1,), 1), 1)
        vals = [G.map_value(c.phi, G.omega.act(g.q, 0)) for _, c in family_gd(G, g, 0).take(12)]
        assert len(set(vals)) == 12

    def test_rejects_fixed_point(self, f2_wr_z2):
        G = f2_wr_z2
        with pytest.raises(PreconditionError):
            family_gd(G, WreathElement((), 0), 0)

    def test_rejects_finite_base(self, lamplighter):
        with pytest.raises(PreconditionError):
            family_gd(lamplighter, WreathElement((), 1), 0)


class TestValueConjugation:
    def test_f2_values(self, f2_wr_z2):
        G = f2_wr_z2
        g = WreathElement(G.zeta((1,), 0), 0)
        fam = family_value_conjugation(G, g, 0)
        prefix = fam.take(30)
        vals = [G.map_value(c.phi, 0) for _, c in prefix]
        assert len(set(vals)) == 30
        assert verify_infinite_certificate(G, fam, N=30)

    def test_rejects_moving_q(self, f2_wr_z2):
        G = f2_wr_z2
        with pytest.raises(PreconditionError):
            family_value_conjugation(G, WreathElement(G.zeta((1,), 0), 1), 0)

    def test_rejects_non_icc_base(self, lamplighter):
        G = lamplighter
        with pytest.raises(PreconditionError):
            family_value_conjugation(G, WreathElement(G.zeta(1, 0), 0), 0)


class TestDispatcher:
    @pytest.mark.parametrize("name", ["trivial-omega", "mixed-union", "s3-wr-s3", "intmod-cond-i"])
    def test_no_instances_get_verified_finite_sets(self, name):
        G = load_instance(name).group
        v = decide_icc(G)
        assert v.answer is Tri.NO
        cert = witness(G, v)
        assert verify_finite_certificate(G, cert, sample_count=200)

    @pytest.mark.parametrize("name", ["lamplighter", "f2-wr-z2", "mixed-union-icc-base"])
    def test_yes_instances_get_verified_families(self, name):
        G = load_instance(name).group
        v = decide_icc(G)
        assert v.answer is Tri.YES
        rng = random.Random(name)
        kinds = set()
        for _ in range(15):
            g = G.random_nontrivial_element(rng)
            fam = witness(G, v, g)
            kinds.add(fam.family_kind)
            assert verify_infinite_certificate(G, fam, N=20)
        assert kinds  # at least one construction exercised per instance

    def test_yes_requires_element(self, lamplighter):
        v = decide_icc(lamplighter)
        with pytest.raises(PreconditionError):
            witness(lamplighter, v)
        with pytest.raises(PreconditionError):
            witness(lamplighter, v, lamplighter.identity())

    def test_case_order(self, lamplighter, f2_wr_z2):
        v = decide_icc(lamplighter)
        fam = witness(lamplighter, v, WreathElement(lamplighter.zeta(1, 0), 3))
        assert fam.family_kind == "lambda-translation"
        fam = witness(lamplighter, v, WreathElement((), 3))
        assert fam.family_kind == "lambda-translation"
        assert fam.seed_conjugator is not None

        v2 = decide_icc(f2_wr_z2)
        G = f2_wr_z2
        assert witness(G, v2, WreathElement((), 1)).family_kind == "g_d"
        assert (
            witness(G, v2, WreathElement(G.zeta((1,), 0), 0)).family_kind
            == "value-conjugation"
        )

    def test_q_translation_selected_outside_fc(self):
        F2 = FreeGroup(2)
        G = WreathProduct(CyclicGroup(2), F2, RegularQSet(F2))
        v = decide_icc(G)
        assert v.answer is Tri.YES
        fam = witness(G, v, WreathElement((), (1,)))
        assert fam.family_kind == "q-translation"


class TestPredictedInvariantSets:
    def test_cover_and_verify(self, z2_wr_s3):
        G = z2_wr_s3
        sets = predicted_invariant_sets(G)
        union = set().union(*sets)
        assert len(union) == G.order() - 1
        assert G.identity() not in union
        assert sum(len(s) for s in sets) == len(union)  # pairwise disjoint
        for S in sets:
            for g in list(S)[:3]:
                for h in G.generators:
                    assert G.conjugate(g, h) in S

    def test_requires_finite(self, lamplighter):
        with pytest.raises(PreconditionError):
            predicted_invariant_sets(lamplighter)


class TestNegativeControls:
    def test_punctured_set_fails(self):
        G = load_instance("mixed-union").group
        cert = cert_finite_orbit(G)
        bad = type(cert)(
            base=cert.base,
            elements=frozenset(list(cert.elements)[:-1]),
            provenance=cert.provenance,
            size_formula=cert.size_formula,
        )
        res = verify_finite_certificate(G, bad)
        assert not res
        assert res.counterexample is not None or "missing" in res.reason

    def test_identity_polluted_set_fails(self):
        G = load_instance("mixed-union").group
        cert = cert_finite_orbit(G)
        bad = type(cert)(
            base=cert.base,
            elements=cert.elements | {G.identity()},
            provenance=cert.provenance,
            size_formula=cert.size_formula,
        )
        assert not verify_finite_certificate(G, bad)

    def test_corrupted_conjugates_fail(self, lamplighter):
        G = lamplighter
        g = WreathElement(G.zeta(1, 0), 0)
        fam = family_lambda_translation(G, g)

        class Corrupt(InfiniteFamilyCertificate):
            def members(self, count, search_budget=20000):
                for i, (h, conj) in enumerate(fam.members(count, search_budget)):
                    if i == 3:
                        conj = WreathElement(conj.phi, conj.q + 1)
                    yield (h, conj)

        bad = Corrupt(G, g, fam.family_kind, fam.dedup, fam._stream, fam._dedup_key)
        res = verify_infinite_certificate(G, bad, N=10)
        assert not res and "recomputation" in res.reason

    def test_duplicated_conjugates_fail(self, lamplighter):
        G = lamplighter
        g = WreathElement(G.zeta(1, 0), 0)
        fam = family_lambda_translation(G, g)

        class Repeats(InfiniteFamilyCertificate):
            def members(self, count, search_budget=20000):
                first = next(fam.members(1))
                for _ in range(count):
                    yield first

        bad = Repeats(G, g, fam.family_kind, fam.dedup, fam._stream, fam._dedup_key)
        res = verify_infinite_certificate(G, bad, N=10)
        assert not res and "duplicate" in res.reason

    def test_short_stream_fails(self, lamplighter):
        G = lamplighter
        g = WreathElement(G.zeta(1, 0), 0)
        fam = family_lambda_translation(G, g)

        class Short(InfiniteFamilyCertificate):
            def members(self, count, search_budget=20000):
                yield from fam.members(min(count, 4), search_budget)

        bad = Short(G, g, fam.family_kind, fam.dedup, fam._stream, fam._dedup_key)
        assert not verify_infinite_certificate(G, bad, N=10)


def test_streams_are_restartable(lamplighter):
    G = lamplighter
    fam = family_lambda_translation(G, WreathElement(G.zeta(1, 0), 0))
    assert fam.take(8) == fam.take(8)
