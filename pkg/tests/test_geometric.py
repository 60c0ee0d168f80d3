"""Tests for the closed-form geometric discord and its Monte Carlo oracle."""

import numpy as np
import pytest

from qdiscord import (
    bloch_decompose,
    geometric_discord,
    geometric_discord_nf,
    hierarchy_check,
    min_distance_bruteforce,
    quantum_discord,
    to_normal_form,
)

from conftest import (
    BELL,
    REFERENCE_STATE,
    classical_quantum,
    haar_unitary,
    random_density,
    random_pure,
    werner,
)

SWAP = np.eye(4)[[0, 2, 1, 3]]


def eigen_oracle(rho, side="B"):
    """Independent spelling of the closed form from raw Bloch blocks."""
    bm = bloch_decompose(rho)
    if side == "B":
        v, t = bm.y, bm.t
        mat = np.outer(v, v) + t.T @ t
    else:
        v, t = bm.x, bm.t
        mat = np.outer(v, v) + t @ t.T
    k = np.linalg.eigvalsh(mat)[-1]
    return 0.25 * (v @ v + np.sum(t * t) - k)


class TestClosedForm:
    """Eigenvalue closed form on raw states."""

    def test_bell_maximal(self):
        """|Phi+> reaches the normalized ceiling 2 D_G = 1."""
        res = geometric_discord(BELL)
        assert res.dg == pytest.approx(0.5, abs=1e-12)
        assert res.dg_normalized == pytest.approx(1.0, abs=1e-12)

    def test_product_zero(self):
        """Product states have zero geometric discord."""
        rng = np.random.default_rng(61)
        rho = np.kron(random_density(rng, dim=2), random_density(rng, dim=2))
        assert geometric_discord(rho).dg == pytest.approx(0.0, abs=1e-12)

    def test_classical_quantum_zero(self):
        """States classical on the measured side sit at distance zero."""
        rng = np.random.default_rng(62)
        for _ in range(20):
            assert geometric_discord(classical_quantum(rng)).dg <= 1e-12

    def test_rank_two_mixture_quadratic(self):
        """The alpha mixture gives 2 D_G = alpha^2."""
        for a in (0.05, 0.15, 0.25, 1.0 / 3.0):
            rho = np.array(
                [
                    [a / 2, 0, 0, a / 2],
                    [0, (1 - a) / 2, 0, 0],
                    [0, 0, (1 - a) / 2, 0],
                    [a / 2, 0, 0, a / 2],
                ],
                dtype=complex,
            )
            assert geometric_discord(rho).dg_normalized == pytest.approx(
                a * a, abs=1e-12
            )

    def test_pure_schmidt_formula(self):
        """Pure states give 2 D_G = 4 p (1 - p) in the Schmidt weight p."""
        for p in (0.1, 0.3, 0.5, 0.8):
            psi = np.zeros(4, dtype=complex)
            psi[0], psi[3] = np.sqrt(p), np.sqrt(1.0 - p)
            rho = np.outer(psi, psi.conj())
            assert geometric_discord(rho).dg_normalized == pytest.approx(
                4.0 * p * (1.0 - p), abs=1e-12
            )

    def test_matches_eigen_oracle(self):
        """Both sides match an independently coded eigenvalue oracle."""
        rng = np.random.default_rng(63)
        for _ in range(30):
            rho = random_density(rng, rank=int(rng.integers(1, 5)))
            for side in ("A", "B"):
                res = geometric_discord(rho, side=side)
                assert res.dg == pytest.approx(eigen_oracle(rho, side), abs=1e-12)
                assert res.dg_normalized == pytest.approx(2.0 * res.dg, abs=1e-14)

    def test_reference_state_frozen(self):
        """Frozen regression values for the reference state."""
        res = geometric_discord(REFERENCE_STATE)
        assert res.dg_normalized == pytest.approx(0.455940938996, abs=1e-9)
        assert res.k_max == pytest.approx(0.772110250809, abs=1e-9)

    def test_normalized_range(self):
        """2 D_G always lies in [0, 1]."""
        rng = np.random.default_rng(64)
        for _ in range(50):
            val = geometric_discord(random_density(rng)).dg_normalized
            assert -1e-12 <= val <= 1.0 + 1e-12

    def test_side_a_equals_swapped_side_b(self):
        """Side A equals side B of the qubit-swapped state."""
        rng = np.random.default_rng(65)
        for _ in range(10):
            rho = random_density(rng)
            va = geometric_discord(rho, side="A").dg
            vb = geometric_discord(SWAP @ rho @ SWAP, side="B").dg
            assert va == pytest.approx(vb, abs=1e-12)

    def test_local_unitary_invariance(self):
        """Local conjugation leaves the distance unchanged."""
        rng = np.random.default_rng(66)
        for _ in range(10):
            rho = random_density(rng)
            u = np.kron(haar_unitary(rng, 2), haar_unitary(rng, 2))
            assert geometric_discord(rho).dg == pytest.approx(
                geometric_discord(u @ rho @ u.conj().T).dg, abs=1e-12
            )

    def test_rejects_unknown_side(self):
        """Side labels other than A and B raise ValueError."""
        with pytest.raises(ValueError):
            geometric_discord(BELL, side="both")


class TestNormalFormVariant:
    """Closed form evaluated on reduced vectors."""

    def test_matches_general_form(self):
        """The reduced-vector path equals the raw path to 1e-12."""
        rng = np.random.default_rng(67)
        for _ in range(40):
            rho = random_density(rng, rank=int(rng.integers(1, 5)))
            nf, _ = to_normal_form(rho)
            for side in ("A", "B"):
                assert geometric_discord_nf(nf, side=side).dg == pytest.approx(
                    geometric_discord(rho, side=side).dg, abs=1e-12
                )

    def test_bell_from_vectors(self):
        """c = (1, 1, -1) alone carries the full Bell distance."""
        nf, _ = to_normal_form(BELL)
        assert geometric_discord_nf(nf).dg_normalized == pytest.approx(1.0, abs=1e-12)


class TestHierarchy:
    """The bound 2 D_G >= D^2."""

    def test_named_states(self):
        """Equality on the alpha family, strict slack on Werner states."""
        a = 0.2
        rho = np.array(
            [
                [a / 2, 0, 0, a / 2],
                [0, (1 - a) / 2, 0, 0],
                [0, 0, (1 - a) / 2, 0],
                [a / 2, 0, 0, a / 2],
            ],
            dtype=complex,
        )
        d = quantum_discord(rho).discord
        g = geometric_discord(rho).dg_normalized
        ok, margin = hierarchy_check(d, g)
        assert ok and abs(margin) < 1e-7
        d = quantum_discord(werner(0.5)).discord
        g = geometric_discord(werner(0.5)).dg_normalized
        ok, margin = hierarchy_check(d, g)
        assert ok and margin > 0.1

    def test_random_states(self):
        """No violations over a random batch of mixed ranks."""
        rng = np.random.default_rng(68)
        for _ in range(40):
            rho = random_density(rng, rank=int(rng.integers(1, 5)))
            d = quantum_discord(rho).discord
            g = geometric_discord(rho).dg_normalized
            ok, margin = hierarchy_check(d, g)
            assert ok, f"margin {margin}"

    def test_tolerance_semantics(self):
        """hierarchy_check applies its tolerance to the margin."""
        ok, margin = hierarchy_check(0.5, 0.25 - 1e-12)
        assert ok and margin == pytest.approx(-1e-12, abs=1e-15)
        ok, _ = hierarchy_check(0.5, 0.24)
        assert not ok


class TestBruteForceDistance:
    """Monte Carlo search over classical-quantum states."""

    def test_upper_bounds_closed_form(self):
        """The sampled minimum never undercuts the closed form."""
        rng = np.random.default_rng(69)
        for rho in (BELL, werner(0.6), random_density(rng), random_pure(rng)):
            mc = min_distance_bruteforce(rho, samples=20000, seed=5)
            assert mc >= geometric_discord(rho).dg - 1e-9

    def test_converges_to_closed_form(self):
        """At 2e5 samples the gap is within the calibrated bound."""
        a = 0.2
        rho_mix = np.array(
            [
                [a / 2, 0, 0, a / 2],
                [0, (1 - a) / 2, 0, 0],
                [0, 0, (1 - a) / 2, 0],
                [a / 2, 0, 0, a / 2],
            ],
            dtype=complex,
        )
        for rho in (BELL, rho_mix):
            mc = min_distance_bruteforce(rho, samples=200000, seed=7)
            gap = mc - geometric_discord(rho).dg
            assert 0.0 <= gap + 1e-9 and gap < 3e-2

    def test_deterministic_and_monotone(self):
        """Fixed seed reproduces bytes; longer prefixes never worsen."""
        rho = werner(0.7)
        v1 = min_distance_bruteforce(rho, samples=30000, seed=11, batch=10000)
        v2 = min_distance_bruteforce(rho, samples=30000, seed=11, batch=10000)
        assert v1 == v2
        v3 = min_distance_bruteforce(rho, samples=60000, seed=11, batch=10000)
        assert v3 <= v1

    def test_classical_quantum_near_zero(self):
        """A classical-on-B state is approached to small distance."""
        rng = np.random.default_rng(70)
        rho = classical_quantum(rng)
        mc = min_distance_bruteforce(rho, samples=100000, seed=13)
        assert mc < 3e-2
