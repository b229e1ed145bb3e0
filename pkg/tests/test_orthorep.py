import numpy as np
import numpy.testing as npt
import pytest

import helpers
from conftest import EXAMPLE_EDGES, EXAMPLE_EDM, EXAMPLE_W
from edmsphere import (
    Graph,
    components,
    construct_orthorep,
    minimality_bound,
    spherical_certificate,
    validate_edm,
    verify_sign_pattern,
)

SQRT2 = np.sqrt(2.0)


class TestExampleGraph:
    """Two disjoint edges on five nodes, node 5 isolated."""

    def test_distances_exact(self, example_graph):
        rep = construct_orthorep(example_graph)
        # adjacency blocks are single edges with lambda_max exactly 1, so the
        # whole arithmetic chain stays in exact binary floats
        npt.assert_array_equal(rep.edm.dist2, EXAMPLE_EDM)

    def test_dimension(self, example_graph):
        rep = construct_orthorep(example_graph)
        assert rep.k == 2
        assert rep.d == 3
        assert rep.edm.embedding_dim == 3
        assert rep.points.shape == (5, 3)

    def test_weights(self, example_graph):
        rep = construct_orthorep(example_graph)
        npt.assert_array_equal(rep.w, np.asarray(EXAMPLE_W))

    def test_unit_vectors_with_orthogonality_pattern(self, example_graph):
        rep = construct_orthorep(example_graph)
        P = rep.points
        gram = P @ P.T
        npt.assert_allclose(np.diag(gram), 1.0, atol=1e-10)
        npt.assert_allclose(gram[0, 1], -1.0, atol=1e-8)  # edge (1,2)
        npt.assert_allclose(gram[2, 3], -1.0, atol=1e-8)  # edge (3,4)
        for i, j in [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4)]:
            assert abs(gram[i, j]) <= 1e-8

    def test_certificate_round_trip(self, example_graph):
        rep = construct_orthorep(example_graph)
        cert = spherical_certificate(rep.edm)
        assert cert.unit_spherical
        npt.assert_allclose(cert.w, rep.w, atol=1e-12)


class TestSmallGraphs:
    def test_triangle(self):
        rep = construct_orthorep(Graph.from_edges(3, [(1, 2), (1, 3), (2, 3)]))
        # K3 adjacency has Perron value 2, so every off-diagonal is 2 + 2*(1/2)
        npt.assert_allclose(rep.edm.dist2, 3.0 * (np.ones((3, 3)) - np.eye(3)), atol=1e-12)
        npt.assert_allclose(rep.w, np.full(3, 1.0 / 6.0), atol=1e-12)
        assert rep.d == 2

    def test_path_p3(self):
        rep = construct_orthorep(Graph.from_edges(3, [(1, 2), (2, 3)]))
        D = rep.edm.dist2
        # adjacency Perron value sqrt(2); edges get 2 + 2/sqrt(2) = 2 + sqrt(2)
        npt.assert_allclose(D[0, 1], 2.0 + SQRT2, atol=1e-12)
        npt.assert_allclose(D[1, 2], 2.0 + SQRT2, atol=1e-12)
        npt.assert_allclose(D[0, 2], 2.0, atol=1e-12)
        w_expected = np.array([1.0, SQRT2, 1.0]) / (4.0 + 2.0 * SQRT2)
        npt.assert_allclose(rep.w, w_expected, atol=1e-12)
        assert rep.d == 2

    def test_single_edge(self):
        rep = construct_orthorep(Graph.from_edges(2, [(1, 2)]))
        npt.assert_array_equal(rep.edm.dist2, [[0.0, 4.0], [4.0, 0.0]])
        assert rep.d == 1  # antipodal pair on the unit circle of R^1


class TestEdgeless:
    def test_edgeless_three_nodes(self):
        rep = construct_orthorep(Graph.from_edges(3, []))
        assert rep.k == 0
        assert rep.d == 3
        npt.assert_array_equal(rep.points, np.eye(3))
        npt.assert_array_equal(rep.edm.dist2, 2.0 * (np.ones((3, 3)) - np.eye(3)))
        npt.assert_allclose(rep.w, np.full(3, 0.25), atol=1e-15)
        assert not rep.unit_spherical
        assert rep.note is not None and "no edges" in rep.note

    def test_single_node(self):
        rep = construct_orthorep(Graph.from_edges(1, []))
        assert rep.k == 0 and rep.d == 1
        assert rep.w is None
        npt.assert_array_equal(rep.points, np.eye(1))


class TestSignPattern:
    def test_accepts_own_construction(self, example_graph):
        rep = construct_orthorep(example_graph)
        rpt = verify_sign_pattern(rep.edm, example_graph)
        assert rpt.ok
        assert rpt.edge_violations == () and rpt.nonedge_violations == ()
        assert rpt.min_edge_excess >= 2.0 - 1e-12  # example edges sit at distance 4
        assert rpt.max_nonedge_dev <= 1e-12

    def test_flags_wrong_graph(self, example_graph):
        rep = construct_orthorep(example_graph)
        other = Graph.from_edges(5, [(1, 3)])
        rpt = verify_sign_pattern(rep.edm, other)
        assert not rpt.ok
        assert (1, 3, 2.0) in rpt.edge_violations  # claimed edge sits at exactly 2
        bad_pairs = {(i, j) for i, j, _ in rpt.nonedge_violations}
        assert (1, 2) in bad_pairs and (3, 4) in bad_pairs

    def test_accepts_plain_array(self, example_graph):
        rpt = verify_sign_pattern(EXAMPLE_EDM, example_graph)
        assert rpt.ok

    def test_order_mismatch(self, example_graph):
        with pytest.raises(ValueError, match="order"):
            verify_sign_pattern(np.zeros((3, 3)), example_graph)


class TestMinimality:
    def test_example_is_tight(self, example_graph):
        rep = construct_orthorep(example_graph)
        rpt = minimality_bound(rep)
        assert rpt.m == 2 and rpt.k == 2
        assert rpt.bound_ok and rpt.tight
        assert rpt.dimension == 3
        npt.assert_allclose(rpt.lambda_global, 1.0, atol=1e-12)
        npt.assert_allclose(rpt.block_lambda_max, 1.0, atol=1e-12)

    def test_edgeless(self):
        rep = construct_orthorep(Graph.from_edges(4, []))
        rpt = minimality_bound(rep)
        assert rpt.m == 0 and rpt.k == 0
        assert rpt.bound_ok and rpt.tight
        assert rpt.dimension == 4

    def test_two_different_components(self):
        # triangle (Perron 2) next to an edge (Perron 1): every normalized
        # block still attains lambda_max = 1, so m equals the block count
        rep = construct_orthorep(Graph.from_edges(5, [(1, 2), (1, 3), (2, 3), (4, 5)]))
        rpt = minimality_bound(rep)
        assert rpt.m == 2 and rpt.k == 2
        assert rpt.tight


class TestRandomGraphs:
    @pytest.mark.parametrize("seed", range(30))
    def test_invariants(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 12))
        edges = helpers.random_graph_edges(rng, n, 0.4)
        G = Graph.from_edges(n, edges)
        rep = construct_orthorep(G)
        k = components(G).nontrivial_count
        assert rep.k == k
        assert rep.d == n - k
        rpt = verify_sign_pattern(rep.edm, G)
        assert rpt.ok
        if k > 0:
            # unit spherical: circumcenter lies in the affine hull, so the
            # affine embedding dimension equals the span dimension d
            assert rep.edm.embedding_dim == rep.d
            cert = spherical_certificate(rep.edm)
            assert cert.unit_spherical
            npt.assert_allclose(cert.radius, 1.0, atol=1e-8)
            assert minimality_bound(rep).m == k
        else:
            # edgeless: points are the standard basis, whose affine hull is a
            # hyperplane missing the origin
            assert rep.edm.embedding_dim == n - 1

    def test_deterministic_bits(self):
        G = Graph.from_edges(7, [(1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (5, 7)])
        a = construct_orthorep(G)
        b = construct_orthorep(G)
        npt.assert_array_equal(a.edm.dist2, b.edm.dist2)
        npt.assert_array_equal(a.points, b.points)
        npt.assert_array_equal(a.w, b.w)


def test_constructed_edm_is_valid_edm(example_graph):
    rep = construct_orthorep(example_graph)
    res = validate_edm(rep.edm.dist2)
    assert res and res.embedding_dim == 3
