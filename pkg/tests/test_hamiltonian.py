import numpy as np
import pytest

from squeezetransfer.hamiltonian import (
    ManifoldBlock,
    ModelInconsistencyError,
    ModelParams,
    build_hamiltonian,
    extract_manifold_block,
    hopping_operator,
    manifold_basis,
)
from squeezetransfer.hilbert import CompositeSpace, atom, photon_mode, standard_space


def eig2(a, b, c):
    """Independent closed form for the eigenvalues of [[a, b], [b, c]]."""
    mean = (a + c) / 2
    rad = np.sqrt(((a - c) / 2) ** 2 + b**2)
    return mean + rad, mean - rad


class TestModelParams:
    def test_defaults(self):
        p = ModelParams()
        assert p.lam == 1.0
        assert p.zeta == 0.0

    def test_rejects_nonpositive_lam(self):
        with pytest.raises(ValueError):
            ModelParams(lam=0.0)

    def test_rejects_negative_zeta(self):
        with pytest.raises(ValueError):
            ModelParams(zeta=-0.1)

    def test_replace(self, default_params):
        p = default_params.replace(zeta=2.0)
        assert p.zeta == 2.0
        assert default_params.zeta == 0.5

    def test_from_mapping_lambda_alias(self):
        p = ModelParams.from_mapping({"lambda": 2.0, "zeta": 0.3})
        assert p.lam == 2.0
        assert p.zeta == 0.3

    def test_from_mapping_rejects_duplicate_lam(self):
        with pytest.raises(ValueError):
            ModelParams.from_mapping({"lambda": 2.0, "lam": 2.0})

    def test_from_mapping_rejects_unknown_key(self):
        with pytest.raises(ValueError):
            ModelParams.from_mapping({"kappa": 1.0})


class TestBuildHamiltonian:
    def test_hermitian(self, default_hamiltonian):
        m = default_hamiltonian.matrix
        assert np.max(np.abs(m - m.conj().T)) < 1e-14

    def test_two_photon_hopping_element(self, space, default_params):
        # a1^dag^2 a2^2 |g,2;g,0> = 2 |g,0;g,2>, so the element is 2 zeta
        h = build_hamiltonian(default_params, space).matrix
        i = space.basis_index(("g", 0, "g", 2))
        j = space.basis_index(("g", 2, "g", 0))
        assert h[i, j] == pytest.approx(2 * default_params.zeta, abs=1e-14)

    def test_two_photon_atom_element(self, space, default_params):
        # lam sigma_eg a^2 |g,2;g,0> = sqrt(2) lam |e,0;g,0>
        h = build_hamiltonian(default_params, space).matrix
        i = space.basis_index(("e", 0, "g", 0))
        j = space.basis_index(("g", 2, "g", 0))
        assert h[i, j] == pytest.approx(np.sqrt(2) * default_params.lam, abs=1e-14)

    def test_diagonal_energies(self, space):
        p = ModelParams(mu=0.7, eta=0.2, zeta=0.5)
        h = build_hamiltonian(p, space).matrix
        i = space.basis_index(("e", 0, "e", 0))
        assert h[i, i] == pytest.approx(2 * p.mu, abs=1e-14)
        j = space.basis_index(("g", 0, "g", 0))
        assert h[j, j] == pytest.approx(2 * p.eta, abs=1e-14)

    def test_linearity_in_zeta(self, space):
        h0 = build_hamiltonian(ModelParams(zeta=0.0), space).matrix
        h1 = build_hamiltonian(ModelParams(zeta=1.0), space).matrix
        h_half = build_hamiltonian(ModelParams(zeta=0.5), space).matrix
        assert np.allclose(h_half, 0.5 * (h0 + h1), atol=1e-14)

    def test_swap_symmetry(self, space, default_hamiltonian):
        # exchanging the two cavities is a symmetry of the model
        d = space.total_dim
        perm = np.zeros((d, d))
        for idx, (l1, n1, l2, n2) in enumerate(space.basis_labels):
            perm[space.basis_index((l2, n2, l1, n1)), idx] = 1.0
        h = default_hamiltonian.matrix
        assert np.max(np.abs(perm @ h - h @ perm)) < 1e-13

    def test_rejects_non_canonical_space(self, default_params):
        sp = CompositeSpace((atom(), atom(), photon_mode(2), photon_mode(2)))
        with pytest.raises(ValueError):
            build_hamiltonian(default_params, sp)

    def test_hopping_larger_cutoff(self):
        sp = CompositeSpace((atom(), photon_mode(4), atom(), photon_mode(4)))
        hop = hopping_operator(sp).matrix
        i = sp.basis_index(("g", 1, "g", 3))
        j = sp.basis_index(("g", 3, "g", 1))
        # a1^dag^2 a2^2 |1,3> = sqrt(2*3) * sqrt(3*2) |3,1>
        assert hop[j, i] == pytest.approx(6.0, abs=1e-12)


class TestManifoldBlock:
    def test_basis_orthonormal(self, space):
        phi = manifold_basis(space)
        assert np.allclose(phi.conj().T @ phi, np.eye(4), atol=1e-14)

    def test_block_entries(self, space):
        p = ModelParams(mu=0.3, eta=0.1, zeta=0.5)
        block = extract_manifold_block(build_hamiltonian(p, space))
        two_eta = 2 * p.eta
        assert np.allclose(
            block.h_sym,
            [[two_eta + 2 * p.zeta, np.sqrt(2) * p.lam], [np.sqrt(2) * p.lam, p.mu + p.eta]],
            atol=1e-13,
        )
        assert np.allclose(
            block.h_anti,
            [[two_eta - 2 * p.zeta, np.sqrt(2) * p.lam], [np.sqrt(2) * p.lam, p.mu + p.eta]],
            atol=1e-13,
        )

    def test_eigenvalues_closed_form(self, default_block, default_params):
        # mu = eta = 0, lam = 1: w = zeta +- sqrt(zeta^2 + 2) (symmetric),
        # -zeta +- sqrt(zeta^2 + 2) (antisymmetric)
        z = default_params.zeta
        rad = np.sqrt(z**2 + 2)
        assert default_block.omegas == pytest.approx([z + rad, z - rad, -z + rad, -z - rad], abs=1e-12)

    def test_eigenvalues_match_generic_2x2_oracle(self, space):
        p = ModelParams(mu=0.4, eta=0.15, zeta=1.2)
        block = extract_manifold_block(build_hamiltonian(p, space))
        w1, w2 = eig2(block.h_sym[0, 0], block.h_sym[0, 1], block.h_sym[1, 1])
        w3, w4 = eig2(block.h_anti[0, 0], block.h_anti[0, 1], block.h_anti[1, 1])
        assert block.omegas == pytest.approx([w1, w2, w3, w4], abs=1e-12)

    def test_eigenvectors_diagonalize(self, default_block):
        for sub, vecs, w in (
            (default_block.h_sym, default_block.vecs_sym, default_block.omegas[:2]),
            (default_block.h_anti, default_block.vecs_anti, default_block.omegas[2:]),
        ):
            assert np.allclose(vecs.T @ sub @ vecs, np.diag(w), atol=1e-12)

    def test_zeta_zero_degeneracy(self, space):
        block = extract_manifold_block(build_hamiltonian(ModelParams(zeta=0.0), space))
        assert block.omegas[0] == pytest.approx(block.omegas[2], abs=1e-13)
        assert block.omegas[1] == pytest.approx(block.omegas[3], abs=1e-13)

    def test_gap_positive(self, default_block):
        assert default_block.delta_12 > 0
        assert default_block.delta_34 > 0

    def test_lam_rescaling(self, space):
        p = ModelParams(lam=2.0, zeta=1.0)  # zeta/lam = 0.5 in units of lam
        block = extract_manifold_block(build_hamiltonian(p, space), lam=p.lam)
        ref = extract_manifold_block(build_hamiltonian(ModelParams(zeta=0.5), space))
        assert np.allclose(block.omegas, ref.omegas, atol=1e-12)

    def test_small_coupling_decoupling(self, space):
        # lam -> 0: the leading symmetric eigenvector approaches the photonic
        # basis state when the hopping dominates
        p = ModelParams(lam=1e-6, zeta=0.5)
        block = extract_manifold_block(build_hamiltonian(p, space), lam=1.0)
        lead = block.vecs_sym[:, 0]
        assert abs(lead[0]) > 1 - 1e-5

    def test_leakage_detection(self, space, default_hamiltonian):
        # adding a term that drives phi3 out of the manifold must be caught
        bad = default_hamiltonian.matrix.copy()
        i = space.basis_index(("e", 1, "g", 0))
        j = space.basis_index(("e", 0, "g", 0))
        bad[i, j] += 0.1
        bad[j, i] += 0.1
        from squeezetransfer.hilbert import HermitianOperator

        with pytest.raises(ModelInconsistencyError):
            extract_manifold_block(HermitianOperator(space, bad))

    def test_closed_for_larger_cutoff(self):
        sp = CompositeSpace((atom(), photon_mode(5), atom(), photon_mode(5)))
        block = extract_manifold_block(build_hamiltonian(ModelParams(zeta=0.5), sp))
        ref = extract_manifold_block(build_hamiltonian(ModelParams(zeta=0.5), standard_space()))
        assert np.allclose(block.omegas, ref.omegas, atol=1e-12)
