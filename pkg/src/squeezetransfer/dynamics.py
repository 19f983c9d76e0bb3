"""Time evolution of the two initial states, by two independent routes.

Route one expands the state in the eigenvectors of the 2x2 parity blocks and
attaches spectral phases (closed form).  Route two exponentiates the full
Hamiltonian through a dense Hermitian eigendecomposition (numeric oracle).
Time is measured in units of 1/lam throughout, matching the eigenfrequencies
returned in units of lam.

Amplitude letters follow the coefficient naming used by the witness module:
A and B are the amplitudes over phi1 and phi3 (symmetric sector), C and D
the amplitudes over phi2 and phi4 (antisymmetric sector).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .hamiltonian import ManifoldBlock
from .hilbert import (
    CompositeSpace,
    DensityMatrix,
    HermitianOperator,
    Kind,
    partial_trace,
)

NORM_TOL = 1e-10


class InitialState(enum.Enum):
    ENTANGLED_SYMMETRIC = "entangled"
    SEPARABLE_ONE_CAVITY = "separable"


def initial_amplitudes(kind: InitialState) -> np.ndarray:
    """Amplitudes over (phi1, phi2, phi3, phi4) at t = 0."""
    if kind is InitialState.ENTANGLED_SYMMETRIC:
        return np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)
    s = 1 / np.sqrt(2)
    return np.array([s, s, 0.0, 0.0], dtype=complex)  # |g,2>|g,0> = (phi1+phi2)/sqrt2


def initial_vector(kind: InitialState, space: CompositeSpace) -> np.ndarray:
    if kind is InitialState.ENTANGLED_SYMMETRIC:
        v = space.basis_vector(("g", 2, "g", 0)) + space.basis_vector(("g", 0, "g", 2))
        return v / np.sqrt(2)
    return space.basis_vector(("g", 2, "g", 0))


@dataclass(frozen=True, eq=False)
class ManifoldState:
    """Four complex amplitudes over (phi1, phi2, phi3, phi4) at a given time."""

    amplitudes: np.ndarray
    time: float

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (4,):
            raise ValueError(f"need 4 amplitudes, got shape {amp.shape}")
        norm = np.sum(np.abs(amp) ** 2)
        if abs(norm - 1.0) >= NORM_TOL:
            raise ValueError(f"manifold state norm {norm} != 1")
        amp = amp.copy()
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)


def _block_propagate(
    evals: np.ndarray, evecs: np.ndarray, amp2: np.ndarray, times: np.ndarray
) -> np.ndarray:
    """Spectral propagation of a 2-vector: shape (2, nt)."""
    coeffs = evecs.conj().T @ amp2
    phases = np.exp(-1j * np.outer(evals, times))
    return evecs @ (coeffs[:, None] * phases)


def evolve_closed_form_grid(
    initial: InitialState, block: ManifoldBlock, times: np.ndarray
) -> np.ndarray:
    """Amplitudes over (phi1, phi2, phi3, phi4) for every time: shape (4, nt)."""
    times = np.asarray(times, dtype=float)
    amp0 = initial_amplitudes(initial)
    out = np.zeros((4, times.size), dtype=complex)
    sym = _block_propagate(
        block.omegas[:2], block.vecs_sym, amp0[[0, 2]], times
    )
    out[0], out[2] = sym[0], sym[1]
    if initial is InitialState.SEPARABLE_ONE_CAVITY:
        anti = _block_propagate(
            block.omegas[2:], block.vecs_anti, amp0[[1, 3]], times
        )
        out[1], out[3] = anti[0], anti[1]
    return out


def evolve_closed_form(
    initial: InitialState, block: ManifoldBlock, t: float
) -> ManifoldState:
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    amps = evolve_closed_form_grid(initial, block, np.array([t]))[:, 0]
    return ManifoldState(amps, t)


@dataclass(frozen=True, eq=False)
class CoefficientSet:
    """Moduli and cross terms of the manifold amplitudes.

    Cross-term fields hold X * conj(Y) for the letter pair in the name,
    e.g. ab = A conj(B).
    """

    abs_a2: float
    abs_b2: float
    abs_c2: float
    abs_d2: float
    ab: complex
    ac: complex
    ad: complex
    bc: complex
    bd: complex
    cd: complex

    def __post_init__(self):
        total = self.abs_a2 + self.abs_b2 + self.abs_c2 + self.abs_d2
        if abs(total - 1.0) >= NORM_TOL:
            raise ValueError(f"coefficient moduli sum to {total}, expected 1")
        pairs = {
            "ab": (self.ab, self.abs_a2, self.abs_b2),
            "ac": (self.ac, self.abs_a2, self.abs_c2),
            "ad": (self.ad, self.abs_a2, self.abs_d2),
            "bc": (self.bc, self.abs_b2, self.abs_c2),
            "bd": (self.bd, self.abs_b2, self.abs_d2),
            "cd": (self.cd, self.abs_c2, self.abs_d2),
        }
        for name, (cross, m1, m2) in pairs.items():
            if abs(cross) ** 2 > m1 * m2 + NORM_TOL:
                raise ValueError(
                    f"cross term {name} violates Cauchy-Schwarz: "
                    f"|{name}|^2 = {abs(cross)**2} > {m1 * m2}"
                )


def coefficients(state: ManifoldState) -> CoefficientSet:
    a, c, b, d = state.amplitudes  # (phi1, phi2, phi3, phi4) -> (A, C, B, D)
    return CoefficientSet(
        abs_a2=float(abs(a) ** 2),
        abs_b2=float(abs(b) ** 2),
        abs_c2=float(abs(c) ** 2),
        abs_d2=float(abs(d) ** 2),
        ab=complex(a * np.conj(b)),
        ac=complex(a * np.conj(c)),
        ad=complex(a * np.conj(d)),
        bc=complex(b * np.conj(c)),
        bd=complex(b * np.conj(d)),
        cd=complex(c * np.conj(d)),
    )


def _sector_constants(evecs: np.ndarray, weight: float) -> tuple[float, float]:
    """(A_i, alpha_i) for one parity sector from its leading eigenvector.

    Defined by the expansion of weight * phi_photonic over the eigenvectors:
    A_i = weight * c^2 and alpha_i = s / c where (c, s) is the eigenvector of
    the larger eigenvalue.  Requires c != 0 (true whenever lam > 0).
    """
    c, s = evecs[0, 0], evecs[1, 0]
    if abs(c) < 1e-12:
        raise ValueError("leading eigenvector has no photonic component; "
                         "sector constants are undefined")
    return float(weight * c * c), float(s / c)


def coefficient_formulas(
    block: ManifoldBlock, branch: InitialState, t: float
) -> CoefficientSet:
    """Coefficients from explicit algebraic formulas in the sector constants
    (independent of the spectral propagation path).

    The last exponent of the BC* cross term must be omega_4 - omega_2; the
    superficially symmetric alternative omega_4 - omega_3 breaks
    normalization and fails to match the amplitude product B conj(C).
    """
    w1, w2, w3, w4 = block.omegas
    d12 = w1 - w2
    d34 = w3 - w4
    weight = 1.0 if branch is InitialState.ENTANGLED_SYMMETRIC else 1 / np.sqrt(2)
    a1, alpha1 = _sector_constants(block.vecs_sym, weight)

    abs_a2 = a1**2 * (1 + 2 * alpha1**2 * np.cos(d12 * t) + alpha1**4)
    ab = alpha1 * a1**2 * (
        1 - alpha1**2 + alpha1**2 * np.exp(1j * d12 * t) - np.exp(-1j * d12 * t)
    )
    abs_b2 = 2 * alpha1**2 * a1**2 * (1 - np.cos(d12 * t))

    if branch is InitialState.ENTANGLED_SYMMETRIC:
        return CoefficientSet(
            abs_a2=float(abs_a2),
            abs_b2=float(abs_b2),
            abs_c2=0.0,
            abs_d2=0.0,
            ab=complex(ab),
            ac=0j,
            ad=0j,
            bc=0j,
            bd=0j,
            cd=0j,
        )

    a3, alpha3 = _sector_constants(block.vecs_anti, weight)
    e = np.exp
    abs_c2 = a3**2 * (1 + 2 * alpha3**2 * np.cos(d34 * t) + alpha3**4)
    abs_d2 = 2 * alpha3**2 * a3**2 * (1 - np.cos(d34 * t))
    ac = a1 * a3 * (
        e(1j * (w3 - w1) * t)
        + alpha3**2 * e(1j * (w4 - w1) * t)
        + alpha1**2 * e(1j * (w3 - w2) * t)
        + alpha1**2 * alpha3**2 * e(1j * (w4 - w2) * t)
    )
    ad = alpha3 * a1 * a3 * (
        e(1j * (w3 - w1) * t)
        - e(1j * (w4 - w1) * t)
        + alpha1**2 * (e(1j * (w3 - w2) * t) - e(1j * (w4 - w2) * t))
    )
    bc = alpha1 * a1 * a3 * (
        e(1j * (w3 - w1) * t)
        - e(1j * (w3 - w2) * t)
        + alpha3**2 * (e(1j * (w4 - w1) * t) - e(1j * (w4 - w2) * t))
    )
    bd = alpha1 * alpha3 * a1 * a3 * (
        e(1j * (w3 - w1) * t)
        + e(1j * (w4 - w2) * t)
        - e(1j * (w4 - w1) * t)
        - e(1j * (w3 - w2) * t)
    )
    cd = alpha3 * a3**2 * (
        1 - e(1j * (w4 - w3) * t) + alpha3**2 * (e(1j * (w3 - w4) * t) - 1)
    )
    return CoefficientSet(
        abs_a2=float(abs_a2),
        abs_b2=float(abs_b2),
        abs_c2=float(abs_c2),
        abs_d2=float(abs_d2),
        ab=complex(ab),
        ac=complex(ac),
        ad=complex(ad),
        bc=complex(bc),
        bd=complex(bd),
        cd=complex(cd),
    )


class SpectralPropagator:
    """exp(-i H t / lam) through one dense Hermitian eigendecomposition."""

    def __init__(self, h: HermitianOperator, lam: float = 1.0):
        self.space = h.space
        evals, evecs = np.linalg.eigh(h.matrix)
        self._evals = evals / lam
        self._evecs = evecs

    def evolve(self, vec: np.ndarray, t: float) -> np.ndarray:
        return self.evolve_grid(vec, np.array([t]))[:, 0]

    def evolve_grid(self, vec: np.ndarray, times: np.ndarray) -> np.ndarray:
        """Columns are the evolved state at each time: shape (dim, nt)."""
        times = np.asarray(times, dtype=float)
        coeffs = self._evecs.conj().T @ np.asarray(vec, dtype=complex)
        phases = np.exp(-1j * np.outer(self._evals, times))
        return self._evecs @ (coeffs[:, None] * phases)


def evolve_numeric_oracle(
    initial: InitialState, h: HermitianOperator, t: float, lam: float = 1.0
) -> np.ndarray:
    """Full-space propagated state vector; independent of the closed form."""
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    psi0 = initial_vector(initial, h.space)
    return SpectralPropagator(h, lam).evolve(psi0, t)


def embed(state: ManifoldState, block: ManifoldBlock) -> np.ndarray:
    """Manifold amplitudes as a full-space vector."""
    return block.basis @ state.amplitudes


def project_amplitudes(vec: np.ndarray, block: ManifoldBlock) -> np.ndarray:
    """Overlap of a full-space vector with (phi1, phi2, phi3, phi4)."""
    return block.basis.conj().T @ np.asarray(vec, dtype=complex)


def density_matrices(
    vec: np.ndarray, space: CompositeSpace
) -> tuple[DensityMatrix, DensityMatrix, DensityMatrix]:
    """(rho_full, rho_atoms, rho_photons) from a full-space pure state."""
    rho = DensityMatrix.from_state_vector(space, vec)
    atoms = space.factor_indices(Kind.ATOM)
    modes = space.factor_indices(Kind.PHOTON_MODE)
    return rho, partial_trace(rho, atoms), partial_trace(rho, modes)


def analytic_rho_atoms(coeffs: CoefficientSet) -> np.ndarray:
    """Reduced two-atom density matrix from the coefficients.

    Basis order (gg, ge, eg, ee).  Follows from tracing the photons out of
    the manifold density operator; the symmetric/antisymmetric amplitude
    combinations (B +- D)/sqrt(2) populate the one-excitation sector.
    """
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = coeffs.abs_a2 + coeffs.abs_c2
    # |e g> has weight |B + D|^2 / 2, |g e> has |B - D|^2 / 2
    rho[2, 2] = (coeffs.abs_b2 + coeffs.abs_d2 + 2 * np.real(coeffs.bd)) / 2
    rho[1, 1] = (coeffs.abs_b2 + coeffs.abs_d2 - 2 * np.real(coeffs.bd)) / 2
    rho[2, 1] = (coeffs.abs_b2 - coeffs.abs_d2 - 2j * np.imag(coeffs.bd)) / 2
    rho[1, 2] = np.conj(rho[2, 1])
    return rho


def analytic_rho_photons(coeffs: CoefficientSet, n_max: int = 2) -> np.ndarray:
    """Reduced two-mode density matrix from the coefficients.

    Populated entries are |2,0>, |0,2> (combinations (A +- C)/sqrt(2)) and
    the vacuum |0,0> with weight |B|^2 + |D|^2.
    """
    d = n_max + 1
    rho = np.zeros((d * d, d * d), dtype=complex)
    i20 = 2 * d + 0
    i02 = 0 * d + 2
    i00 = 0
    rho[i20, i20] = (coeffs.abs_a2 + coeffs.abs_c2 + 2 * np.real(coeffs.ac)) / 2
    rho[i02, i02] = (coeffs.abs_a2 + coeffs.abs_c2 - 2 * np.real(coeffs.ac)) / 2
    rho[i20, i02] = (coeffs.abs_a2 - coeffs.abs_c2 - 2j * np.imag(coeffs.ac)) / 2
    rho[i02, i20] = np.conj(rho[i20, i02])
    rho[i00, i00] = coeffs.abs_b2 + coeffs.abs_d2
    return rho
