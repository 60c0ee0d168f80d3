"""Tests for validation, Bloch algebra, entropies, and JSON interchange."""

import io

import numpy as np
import pytest

from qdiscord import (
    BlochMatrix,
    NotHermitianError,
    NotPositiveError,
    StateValidationError,
    TraceNotOneError,
    bloch_compose,
    bloch_decompose,
    dump_state_json,
    load_state_json,
    mutual_information,
    partial_trace,
    validate_density,
    von_neumann_entropy,
)
from qdiscord.core import PAULI

from conftest import BELL, REFERENCE_STATE, random_density, random_pure, werner


class TestValidateDensity:
    """Input guards of validate_density."""

    def test_accepts_valid_states(self):
        """Well-formed states pass through unchanged up to dtype."""
        rng = np.random.default_rng(11)
        for rho in (BELL, REFERENCE_STATE, werner(0.3), random_density(rng)):
            out = validate_density(rho)
            np.testing.assert_allclose(out, rho, atol=1e-12)

    def test_rejects_wrong_shape(self):
        """Non-4x4 inputs raise ValueError."""
        with pytest.raises(ValueError):
            validate_density(np.eye(2) / 2.0)
        with pytest.raises(ValueError):
            validate_density(np.zeros((4, 3)))

    def test_rejects_non_hermitian(self):
        """An asymmetric perturbation raises NotHermitianError."""
        rho = BELL.copy()
        rho[0, 1] += 1e-6
        with pytest.raises(NotHermitianError):
            validate_density(rho)

    def test_rejects_bad_trace(self):
        """Trace away from one raises TraceNotOneError."""
        with pytest.raises(TraceNotOneError):
            validate_density(BELL * 1.001)

    def test_rejects_negative_eigenvalue(self):
        """A clearly negative eigenvalue raises NotPositiveError."""
        rho = np.diag([0.6, 0.5, -0.1, 0.0]).astype(complex)
        with pytest.raises(NotPositiveError):
            validate_density(rho)

    def test_clamps_roundoff_negativity(self):
        """Eigenvalues above the -1e-10 floor are clamped to zero."""
        eps = 1e-11
        rho = np.diag([0.5 + eps, 0.5, -eps, 0.0]).astype(complex)
        out = validate_density(rho)
        w = np.linalg.eigvalsh(out)
        assert w.min() >= 0.0
        assert abs(np.trace(out).real - 1.0) < 1e-14

    def test_error_hierarchy(self):
        """All failure modes are StateValidationError (a ValueError)."""
        assert issubclass(NotHermitianError, StateValidationError)
        assert issubclass(TraceNotOneError, StateValidationError)
        assert issubclass(NotPositiveError, StateValidationError)
        assert issubclass(StateValidationError, ValueError)


class TestPauliConventions:
    """Pinned operator ordering I, X, Y, Z."""

    def test_pauli_matrices(self):
        """The four basis operators are I, X, Y, Z in that order."""
        np.testing.assert_array_equal(PAULI[0], np.eye(2))
        np.testing.assert_array_equal(PAULI[1], [[0, 1], [1, 0]])
        np.testing.assert_array_equal(PAULI[2], [[0, -1j], [1j, 0]])
        np.testing.assert_array_equal(PAULI[3], [[1, 0], [0, -1]])

    def test_pauli_algebra(self):
        """XY = iZ and all squares are the identity."""
        np.testing.assert_allclose(PAULI[1] @ PAULI[2], 1j * PAULI[3], atol=1e-15)
        for s in PAULI[1:]:
            np.testing.assert_allclose(s @ s, np.eye(2), atol=1e-15)


class TestBlochDecompose:
    """Correlation-matrix extraction R[i, j] = Tr[rho (sigma_i x sigma_j)]."""

    def test_normalization_entry(self):
        """R[0, 0] is exactly 1 for any unit-trace state."""
        rng = np.random.default_rng(3)
        for _ in range(20):
            bm = bloch_decompose(random_density(rng))
            assert bm.r[0, 0] == pytest.approx(1.0, abs=1e-14)

    def test_matches_trace_definition(self):
        """Every entry equals the explicit two-Pauli trace."""
        rng = np.random.default_rng(4)
        rho = random_density(rng)
        bm = bloch_decompose(rho)
        for i in range(4):
            for j in range(4):
                expected = np.trace(rho @ np.kron(PAULI[i], PAULI[j])).real
                assert bm.r[i, j] == pytest.approx(expected, abs=1e-13)

    def test_bell_state_blocks(self):
        """|Phi+> has zero local vectors and T = diag(1, -1, 1)."""
        bm = bloch_decompose(BELL)
        np.testing.assert_allclose(bm.x, 0.0, atol=1e-14)
        np.testing.assert_allclose(bm.y, 0.0, atol=1e-14)
        np.testing.assert_allclose(bm.t, np.diag([1.0, -1.0, 1.0]), atol=1e-14)

    def test_rank_two_mixture_blocks(self):
        """The alpha mixture at alpha=1/3 has x = y = 0, T = diag(1/3, -1/3, -1/3)."""
        a = 1.0 / 3.0
        rho = np.array(
            [
                [a / 2, 0, 0, a / 2],
                [0, (1 - a) / 2, 0, 0],
                [0, 0, (1 - a) / 2, 0],
                [a / 2, 0, 0, a / 2],
            ],
            dtype=complex,
        )
        bm = bloch_decompose(rho)
        np.testing.assert_allclose(bm.x, 0.0, atol=1e-14)
        np.testing.assert_allclose(bm.y, 0.0, atol=1e-14)
        np.testing.assert_allclose(bm.t, np.diag([a, -a, 2 * a - 1]), atol=1e-14)

    def test_product_state_blocks(self):
        """For rho_A x rho_B the T block is the outer product of Bloch vectors."""
        rng = np.random.default_rng(5)
        ra, rb = random_density(rng, dim=2), random_density(rng, dim=2)
        bm = bloch_decompose(np.kron(ra, rb))
        np.testing.assert_allclose(bm.t, np.outer(bm.x, bm.y), atol=1e-13)

    def test_round_trip(self):
        """bloch_compose inverts bloch_decompose to machine precision."""
        rng = np.random.default_rng(6)
        for _ in range(50):
            rho = random_density(rng)
            back = bloch_compose(bloch_decompose(rho))
            np.testing.assert_allclose(back, rho, atol=1e-13)

    def test_compose_rejects_bad_normalization(self):
        """bloch_compose refuses R[0, 0] != 1."""
        r = np.zeros((4, 4))
        r[0, 0] = 0.5
        with pytest.raises(ValueError):
            bloch_compose(BlochMatrix(r))


class TestPartialTrace:
    """Reduction to the single-qubit marginals."""

    def test_product_state_factors(self):
        """Tracing a product state recovers each factor."""
        rng = np.random.default_rng(7)
        ra, rb = random_density(rng, dim=2), random_density(rng, dim=2)
        rho = np.kron(ra, rb)
        np.testing.assert_allclose(partial_trace(rho, keep="A"), ra, atol=1e-14)
        np.testing.assert_allclose(partial_trace(rho, keep="B"), rb, atol=1e-14)

    def test_matches_index_sum(self):
        """Both marginals agree with the explicit index-loop definition."""
        rng = np.random.default_rng(8)
        rho = random_density(rng)
        r4 = rho.reshape(2, 2, 2, 2)
        loop_a = np.zeros((2, 2), dtype=complex)
        loop_b = np.zeros((2, 2), dtype=complex)
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    loop_a[i, j] += r4[i, k, j, k]
                    loop_b[i, j] += r4[k, i, k, j]
        np.testing.assert_allclose(partial_trace(rho, keep="A"), loop_a, atol=1e-15)
        np.testing.assert_allclose(partial_trace(rho, keep="B"), loop_b, atol=1e-15)

    def test_bell_marginals_maximally_mixed(self):
        """Both Bell marginals are I/2."""
        np.testing.assert_allclose(partial_trace(BELL, keep="A"), np.eye(2) / 2, atol=1e-15)
        np.testing.assert_allclose(partial_trace(BELL, keep="B"), np.eye(2) / 2, atol=1e-15)

    def test_rejects_unknown_side(self):
        """Invalid keep labels raise ValueError."""
        with pytest.raises(ValueError):
            partial_trace(BELL, keep="C")


class TestEntropies:
    """von Neumann entropy and mutual information in bits."""

    def test_pure_state_zero(self):
        """Pure states have zero entropy."""
        rng = np.random.default_rng(9)
        assert von_neumann_entropy(random_pure(rng)) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed(self):
        """I/2 gives 1 bit, I/4 gives 2 bits."""
        assert von_neumann_entropy(np.eye(2) / 2) == pytest.approx(1.0, abs=1e-14)
        assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2.0, abs=1e-14)

    def test_werner_entropy(self):
        """Werner(1/2) entropy matches its eigenvalue formula."""
        z = 0.5
        lam = np.array([(1 + 3 * z) / 4, (1 - z) / 4, (1 - z) / 4, (1 - z) / 4])
        expected = float(-(lam * np.log2(lam)).sum())
        assert expected == pytest.approx(1.5487949406953985, abs=1e-12)
        assert von_neumann_entropy(werner(z)) == pytest.approx(expected, abs=1e-12)

    def test_entropy_basis_invariant(self):
        """Unitary conjugation leaves the entropy unchanged."""
        rng = np.random.default_rng(10)
        rho = random_density(rng)
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        u = np.linalg.qr(g)[0]
        assert von_neumann_entropy(u @ rho @ u.conj().T) == pytest.approx(
            von_neumann_entropy(rho), abs=1e-12
        )

    def test_mutual_information_product_zero(self):
        """Product states carry zero mutual information."""
        rng = np.random.default_rng(12)
        rho = np.kron(random_density(rng, dim=2), random_density(rng, dim=2))
        assert mutual_information(rho) == pytest.approx(0.0, abs=1e-12)

    def test_mutual_information_bell(self):
        """The Bell state carries 2 bits of mutual information."""
        assert mutual_information(BELL) == pytest.approx(2.0, abs=1e-12)

    def test_mutual_information_reference_state(self):
        """Frozen regression value for the reference state."""
        assert mutual_information(REFERENCE_STATE) == pytest.approx(
            0.931850147844, abs=1e-9
        )

    def test_mutual_information_additivity(self):
        """I = S(A) + S(B) - S(AB) entry by entry."""
        rng = np.random.default_rng(13)
        rho = random_density(rng)
        expected = (
            von_neumann_entropy(partial_trace(rho, keep="A"))
            + von_neumann_entropy(partial_trace(rho, keep="B"))
            - von_neumann_entropy(rho)
        )
        assert mutual_information(rho) == pytest.approx(expected, abs=1e-13)


class TestStateJson:
    """JSON interchange format round trips and error reporting."""

    def test_round_trip_file(self, tmp_path):
        """dump/load through a file path preserves the matrix."""
        path = tmp_path / "state.json"
        dump_state_json(REFERENCE_STATE, str(path))
        back = load_state_json(str(path))
        np.testing.assert_allclose(back, REFERENCE_STATE, atol=1e-12)

    def test_round_trip_handle(self):
        """dump/load through file-like handles preserves the matrix."""
        buf = io.StringIO()
        dump_state_json(BELL, buf)
        buf.seek(0)
        np.testing.assert_allclose(load_state_json(buf), BELL, atol=1e-15)

    def test_missing_key_rejected(self):
        """A document without the matrix key raises ValueError."""
        with pytest.raises(ValueError):
            load_state_json(io.StringIO('{"rho": []}'))

    def test_wrong_shape_rejected_before_validation(self):
        """A 2x2 payload fails on shape, not on physics."""
        doc = '{"matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]}'
        with pytest.raises(ValueError, match="4x4x2"):
            load_state_json(io.StringIO(doc))

    def test_unphysical_payload_rejected(self):
        """A well-shaped but trace-violating payload fails validation."""
        buf = io.StringIO()
        dump_state_json(BELL * 2.0, buf)
        buf.seek(0)
        with pytest.raises(StateValidationError):
            load_state_json(buf)
