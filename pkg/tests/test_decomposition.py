import numpy as np
import numpy.testing as npt
import pytest

import helpers
from conftest import EXAMPLE_EDM
from edmsphere import (
    ConsistencyError,
    PreconditionError,
    certify_simplex,
    crosspolytope_recognize,
    gen_crosspolytope,
    gen_random_spherical,
    gen_regular_simplex,
    gen_unit_simplex,
    kuperberg_decompose,
    rankin_codimension2_check,
    require_edm,
    spherical_certificate,
)

# the (3,4,5) principal block of the worked five-node example
SUBBLOCK = np.array([[0.0, 4.0, 2.0], [4.0, 0.0, 2.0], [2.0, 2.0, 0.0]])

# antipodal pair e1,-e1 next to a wide pair (0,.5,+-sqrt(3)/2): a simplex
# whose Delta support is disconnected, so only the rank route can decide
WIDE_PAIRS = np.array(
    [[0.0, 4.0, 2.0, 2.0],
     [4.0, 0.0, 2.0, 2.0],
     [2.0, 2.0, 0.0, 3.0],
     [2.0, 2.0, 3.0, 0.0]]
)


def pentagon_edm():
    ang = 2.0 * np.pi * np.arange(5) / 5.0
    X = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    return require_edm(helpers.edm_from_points(X))


class TestCertifySimplex:
    def test_unit_simplex_perron_interior(self):
        D = gen_unit_simplex(4)
        cert = certify_simplex(D)
        assert cert.is_simplex and cert.method == "perron"
        assert cert.origin_position == "interior"
        assert cert.zero_rows == () and cert.irreducible_core
        npt.assert_allclose(cert.lambda_max, 1.0, atol=1e-12)
        npt.assert_allclose(cert.w, np.full(4, 0.125), atol=1e-10)
        assert cert.residual <= 1e-10

    def test_subblock_perron_boundary(self):
        cert = certify_simplex(require_edm(SUBBLOCK))
        assert cert.is_simplex and cert.method == "perron"
        assert cert.origin_position == "boundary"
        assert cert.zero_rows == (3,)
        npt.assert_allclose(cert.w, [0.25, 0.25, 0.0], atol=1e-12)

    def test_crosspolytope_is_not_a_simplex(self):
        cert = certify_simplex(gen_crosspolytope(2))
        assert not cert.is_simplex
        assert cert.method == "rank" and not cert.irreducible_core
        assert cert.origin_position is None
        npt.assert_allclose(cert.lambda_max, 1.0, atol=1e-12)
        npt.assert_allclose(cert.w, np.full(4, 0.125), atol=1e-10)

    def test_disconnected_support_simplex_rank_route(self):
        cert = certify_simplex(require_edm(WIDE_PAIRS))
        assert cert.is_simplex and cert.method == "rank"
        assert cert.origin_position == "boundary"
        assert cert.zero_rows == ()
        npt.assert_allclose(cert.w, [0.25, 0.25, 0.0, 0.0], atol=1e-10)

    def test_rejects_non_unit_sphere(self):
        with pytest.raises(PreconditionError, match="circumradius 1"):
            certify_simplex(gen_regular_simplex(3, 2.0))

    def test_rejects_close_pairs(self):
        with pytest.raises(PreconditionError, match="min off-diagonal"):
            certify_simplex(pentagon_edm())


class TestRankin:
    def test_crosspolytope_r2_attains_the_bound(self):
        rpt = rankin_codimension2_check(gen_crosspolytope(2))
        assert rpt.ok
        assert rpt.n == 4 and rpt.r == 2
        assert rpt.min_offdiag == 2.0
        assert rpt.witness == (1, 3)
        assert "no room" in rpt.message

    def test_wrong_count_rejected(self):
        with pytest.raises(PreconditionError, match="n = r \\+ 2"):
            rankin_codimension2_check(gen_unit_simplex(4))  # n = r + 1

    def test_non_unit_rejected(self):
        D = gen_regular_simplex(4, 1.0)  # n = 4, r = 2... only if rank drops
        # a gamma=1 regular simplex on 4 nodes has r = 3, so count fails first
        with pytest.raises(PreconditionError):
            rankin_codimension2_check(D)

    @pytest.mark.parametrize("seed", range(20))
    def test_random_unit_sphere_configurations(self, seed):
        rng = np.random.default_rng(seed)
        r = int(rng.integers(2, 6))
        D, _ = gen_random_spherical(r + 2, r, seed)
        rpt = rankin_codimension2_check(D)
        assert rpt.ok
        assert rpt.min_offdiag <= 2.0 + 1e-9
        i, j = rpt.witness
        assert D.dist2[i - 1, j - 1] == rpt.min_offdiag


class TestKuperbergDecompose:
    def test_example(self, example_edm):
        dec = kuperberg_decompose(example_edm)
        assert dec.n == 5 and dec.r == 3
        assert dec.block_count == 2
        assert dec.permutation == (1, 2, 3, 4, 5)
        assert tuple(b.indices for b in dec.blocks) == ((1, 2), (3, 4, 5))
        assert dec.isolated_assignment == (5,)
        assert dec.subspace_dims == (1, 2)
        assert dec.cross_check == 0.0 and dec.cross_gram_max == 0.0
        npt.assert_array_equal(dec.blocks[0].edm.dist2, [[0.0, 4.0], [4.0, 0.0]])
        npt.assert_array_equal(dec.blocks[1].edm.dist2, SUBBLOCK)

    def test_example_block_certificates(self, example_edm):
        dec = kuperberg_decompose(example_edm)
        pair, triple = dec.blocks
        assert pair.certificate.origin_position == "interior"
        npt.assert_allclose(pair.certificate.w, [0.25, 0.25], atol=1e-12)
        assert triple.certificate.origin_position == "boundary"
        assert triple.certificate.zero_rows == (3,)  # local label of node 5

    def test_permuted_example(self, example_edm):
        order = (2, 4, 1, 5, 3)
        P = require_edm(helpers.permute_1based(example_edm.dist2, order))
        dec = kuperberg_decompose(P)
        assert tuple(b.indices for b in dec.blocks) == ((1, 3), (2, 4, 5))
        assert dec.permutation == (1, 3, 2, 4, 5)
        assert dec.isolated_assignment == (4,)
        npt.assert_array_equal(dec.blocks[0].edm.dist2, [[0.0, 4.0], [4.0, 0.0]])

    def test_composed_blocks(self):
        D = require_edm(helpers.compose_block_edm([3, 4]))
        dec = kuperberg_decompose(D)
        assert dec.n == 7 and dec.r == 5
        assert tuple(b.indices for b in dec.blocks) == ((1, 2, 3), (4, 5, 6, 7))
        assert dec.subspace_dims == (2, 3)
        assert dec.cross_check == 0.0
        for b in dec.blocks:
            assert b.certificate.is_simplex
            assert b.certificate.origin_position == "interior"

    def test_composed_with_singleton(self):
        D = require_edm(helpers.compose_block_edm([2, 3], singletons=1))
        dec = kuperberg_decompose(D)
        assert dec.n == 6 and dec.r == 4
        assert tuple(b.indices for b in dec.blocks) == ((1, 2), (3, 4, 5, 6))
        assert dec.isolated_assignment == (6,)
        assert dec.subspace_dims == (1, 3)
        assert dec.blocks[1].certificate.origin_position == "boundary"

    def test_block_edms_are_unit_spherical(self):
        D = require_edm(helpers.compose_block_edm([2, 4, 3]))
        dec = kuperberg_decompose(D)
        for b in dec.blocks:
            cert = spherical_certificate(b.edm)
            assert cert.unit_spherical

    def test_count_preconditions(self):
        with pytest.raises(PreconditionError, match="n - r >= 2"):
            kuperberg_decompose(gen_unit_simplex(4))  # n - r = 1
        with pytest.raises(PreconditionError, match="n - r <= r"):
            kuperberg_decompose(pentagon_edm())  # n = 5, r = 2

    def test_non_unit_rejected(self):
        # doubling the metric keeps n - r = 2 but moves the radius to sqrt(2)
        D = require_edm(2.0 * helpers.compose_block_edm([2, 3]))
        with pytest.raises(PreconditionError, match="circumradius 1"):
            kuperberg_decompose(D)

    def test_close_pairs_rejected(self):
        # shape fits (n - r = 2 <= r = 4) but random points come closer
        # than sqrt(2)
        D, _ = gen_random_spherical(6, 4, 9)
        with pytest.raises(PreconditionError, match="min off-diagonal"):
            kuperberg_decompose(D)


class TestCrosspolytopeRecognize:
    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    def test_canonical_form_accepted(self, r):
        res = crosspolytope_recognize(gen_crosspolytope(r))
        assert res and res.ok
        assert res.r == r
        assert res.permutation == tuple(range(1, 2 * r + 1))
        assert res.max_deviation == 0.0

    @pytest.mark.parametrize("r,seed", [(2, 1), (3, 5), (4, 11)])
    def test_shuffled_form_restored_bit_exact(self, r, seed):
        rng = np.random.default_rng(seed)
        order = tuple(int(i) for i in rng.permutation(2 * r) + 1)
        shuffled = helpers.permute_1based(gen_crosspolytope(r).dist2, order)
        res = crosspolytope_recognize(require_edm(shuffled))
        assert res.ok
        restored = helpers.permute_1based(shuffled, res.permutation)
        npt.assert_array_equal(restored, gen_crosspolytope(r).dist2)

    def test_random_circle_points_declined(self):
        D, _ = gen_random_spherical(4, 2, 3)
        res = crosspolytope_recognize(D)
        assert not res
        assert res.reason is not None and "below 2" in res.reason

    def test_non_unit_pair_declined(self):
        D = require_edm(np.array([[0.0, 3.9], [3.9, 0.0]]))
        res = crosspolytope_recognize(D)
        assert not res.ok and res.permutation is None
        assert "circumradius 1" in res.reason

    def test_wrong_count_rejected(self):
        with pytest.raises(PreconditionError, match="n = 2r"):
            crosspolytope_recognize(gen_unit_simplex(4))
