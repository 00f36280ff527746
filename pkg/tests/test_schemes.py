"""Scheme axioms, exact spectra, cosines, Krein data, light tails."""

from fractions import Fraction

import pytest

from schemeforge.catalogue import CATALOGUE, catalogue_graph, catalogue_scheme
from schemeforge.exactnum import QuadNumber
from schemeforge.graphs import named_graph
from schemeforge.schemes import (
    Scheme,
    SchemeRefutation,
    SplittingFieldError,
    embedding_gram,
    is_light_tail,
    krein_check,
    light_tail_bound,
    nearest_neighbour_relation,
    partially_metric_level,
    q_poly_orderings,
    qpolynomial_spectra,
    scheme_from_graph_distances,
    spectra,
    verify_scheme,
)

IDS = sorted(CATALOGUE)


def q(text: str) -> QuadNumber:
    return QuadNumber.parse(text)


class TestVerify:
    def test_catalogue_schemes_verify(self, catalogue):
        for sid, s in catalogue.items():
            assert isinstance(s, Scheme)
            assert sum(s.valencies) == s.n

    def test_p3_distance_partition_refuted_with_witness(self):
        # the path 0-1-2: p_{11}^0 is 2 at vertex 1 but 1 at vertex 0
        rel = [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
        result = verify_scheme(rel)
        assert isinstance(result, SchemeRefutation)
        assert result.witness != ()
        assert len(result.witness) >= 3

    def test_asymmetric_relation_refuted(self):
        rel = [[0, 1], [2, 0]]
        assert isinstance(verify_scheme(rel), SchemeRefutation)

    def test_disconnected_graph_rejected(self):
        assert isinstance(
            scheme_from_graph_distances(named_graph("2K2")), SchemeRefutation
        )

    def test_cubic_splitting_field_raises(self):
        # C7: eigenvalues 2cos(2*pi*j/7) generate a cubic field
        s = scheme_from_graph_distances(named_graph("C7"))
        assert isinstance(s, Scheme)
        with pytest.raises(SplittingFieldError):
            spectra(s)


class TestSpectra:
    @pytest.mark.parametrize("sid", IDS)
    def test_multiplicities_sum_to_order(self, catalogue_spectra, catalogue, sid):
        sp, _ = catalogue_spectra[sid]
        assert sp.multiplicities[0] == 1
        assert sum(sp.multiplicities) == catalogue[sid].n

    @pytest.mark.parametrize("sid", IDS)
    def test_pq_duality(self, catalogue_spectra, catalogue, sid):
        # m_c P[c][i] = k_i Q[i][c]
        sp, _ = catalogue_spectra[sid]
        s = catalogue[sid]
        for c in range(s.d + 1):
            for i in range(s.d + 1):
                lhs = QuadNumber(sp.multiplicities[c]) * sp.P[c][i]
                rhs = QuadNumber(s.valencies[i]) * sp.Q[i][c]
                assert lhs == rhs

    @pytest.mark.parametrize("sid", IDS)
    def test_idempotents_are_idempotent(self, catalogue_spectra, sid):
        sp, _ = catalogue_spectra[sid]
        for c in range(sp.d + 1):
            e = sp.idempotent(c)
            assert e @ e == e

    @pytest.mark.parametrize("sid", IDS)
    def test_primal_cosine_recurrence(self, catalogue_spectra, catalogue, sid):
        # k_i w_{i,c} w_{j,c} = sum_h p_{hi}^j w_{h,c}
        sp, _ = catalogue_spectra[sid]
        s = catalogue[sid]
        for c in (1, 2):
            if c > s.d:
                continue
            for i in range(s.d + 1):
                for j in range(s.d + 1):
                    lhs = (
                        QuadNumber(s.valencies[i])
                        * sp.cosines[i][c]
                        * sp.cosines[j][c]
                    )
                    rhs = sum(
                        (
                            QuadNumber(s.p[h][i][j]) * sp.cosines[h][c]
                            for h in range(s.d + 1)
                        ),
                        QuadNumber(0),
                    )
                    assert lhs == rhs

    @pytest.mark.parametrize("sid", IDS)
    def test_dual_cosine_recurrence(self, catalogue_spectra, catalogue, sid):
        # m_i w_{r,i} w_{r,j} = sum_h q_{hi}^j w_{r,h}
        sp, _ = catalogue_spectra[sid]
        s = catalogue[sid]
        for i in range(s.d + 1):
            for j in range(s.d + 1):
                for r in range(s.d + 1):
                    lhs = (
                        QuadNumber(sp.multiplicities[i])
                        * sp.cosines[r][i]
                        * sp.cosines[r][j]
                    )
                    rhs = sum(
                        (
                            sp.krein[h][i][j] * sp.cosines[r][h]
                            for h in range(s.d + 1)
                        ),
                        QuadNumber(0),
                    )
                    assert lhs == rhs

    @pytest.mark.parametrize("sid", IDS)
    def test_krein_nonnegative(self, catalogue_spectra, sid):
        sp, _ = catalogue_spectra[sid]
        ok, witness = krein_check(sp)
        assert ok and witness is None

    @pytest.mark.parametrize("sid", IDS)
    def test_initial_krein_identities(self, catalogue_spectra, sid):
        sp, _ = catalogue_spectra[sid]
        m1 = QuadNumber(sp.multiplicities[1])
        assert sp.krein[0][1][0] == QuadNumber(0)
        assert sp.krein[0][1][1] == QuadNumber(1)
        assert sp.krein[1][1][0] == m1
        if sp.d >= 2:
            q111 = sp.krein[1][1][1]
            assert sp.krein[2][1][1] == m1 - QuadNumber(1) - q111

    @pytest.mark.parametrize("sid", IDS)
    def test_even_column_rationality(self, catalogue_spectra, sid):
        # under a Q-polynomial ordering the even idempotent columns of Q are
        # fixed by the field conjugation, hence rational; on every bundled
        # scheme except AS10[3] they are in fact rational integers (AS10[3]
        # has the entry -5/3 in column 2 under both of its orderings, so
        # integrality cannot be asserted in general)
        sp, _ = catalogue_spectra[sid]
        for c in range(0, sp.d + 1, 2):
            for i in range(sp.d + 1):
                assert sp.Q[i][c].is_rational
                if sid != "AS10[3]":
                    assert sp.Q[i][c].is_integer

    @pytest.mark.parametrize("sid", IDS)
    def test_degree_bound(self, catalogue_spectra, catalogue, sid):
        sp, _ = catalogue_spectra[sid]
        s = catalogue[sid]
        v1 = s.valencies[1]
        assert s.d <= 4 * v1 + 1
        if sp.radicand == 1:
            assert s.d <= 2 * v1 + 1

    @pytest.mark.parametrize("sid", IDS)
    def test_at_most_two_orderings(self, catalogue_spectra, sid):
        _, orderings = catalogue_spectra[sid]
        assert 1 <= len(orderings) <= 2

    def test_icosahedron_needs_sqrt5(self):
        s = scheme_from_graph_distances(named_graph("icosahedron"))
        assert isinstance(s, Scheme)
        assert spectra(s).radicand == 5

    @pytest.mark.parametrize("sid", IDS)
    def test_nearest_neighbour_relation_is_r1(self, catalogue_spectra, sid):
        sp, _ = catalogue_spectra[sid]
        assert nearest_neighbour_relation(sp) == 1

    @pytest.mark.parametrize("sid", IDS)
    def test_embedding_gram_matches_idempotent(self, catalogue_spectra, sid):
        sp, _ = catalogue_spectra[sid]
        s = sp.scheme
        g = embedding_gram(sp, 1)
        m1 = sp.multiplicities[1]
        assert g.scale(QuadNumber(Fraction(m1, s.n))) == sp.idempotent(1)


class TestPartialMetricity:
    def test_levels(self, catalogue):
        expected = {
            "AS05[1]": 1,
            "AS06[3]": 2,
            "AS08[2]": 2,
            "AS09[3]": 2,
            "AS10[3]": 2,
            "AS10[6]": 3,
            "AS16[30]": 4,
            "AS24[43]": 1,
        }
        for sid, level in expected.items():
            assert partially_metric_level(catalogue[sid], 1) == level

    def test_metric_schemes_reach_diameter(self, catalogue):
        for sid in ("AS10[6]", "AS16[30]"):
            s = catalogue[sid]
            assert partially_metric_level(s, 1) == s.d


class TestLightTail:
    def test_bound_equality_q4_and_crown(self):
        # k = 4, theta = 2, a1 = 0: the bound collapses to k = 4 = m1
        for sid in ("AS16[30]", "AS10[6]"):
            s = catalogue_scheme(sid)
            sp, _ = qpolynomial_spectra(s)
            k = s.valencies[1]
            theta = sp.P[1][1]
            a1 = s.p[1][1][1]
            b1 = s.p[2][1][1]
            assert light_tail_bound(k, theta, a1, b1) == QuadNumber(4)
            assert is_light_tail(sp.multiplicities[1], k, theta, a1, b1)

    def test_bound_fails_for_k3xk3(self):
        s = catalogue_scheme("AS09[3]")
        sp, _ = qpolynomial_spectra(s)
        k = s.valencies[1]
        theta = sp.P[1][1]
        a1 = s.p[1][1][1]
        b1 = s.p[2][1][1]
        bound = light_tail_bound(k, theta, a1, b1)
        assert bound == q("36/11")
        assert not is_light_tail(sp.multiplicities[1], k, theta, a1, b1)

    def test_undefined_at_valency(self):
        with pytest.raises(ValueError):
            light_tail_bound(4, 4, 0, 3)
