"""Squeezing and entanglement quantifiers.

Generic path: the four collective-spin inequalities evaluated on a density
matrix (violation of any witnesses particle entanglement), the Kitagawa-Ueda
parameter xi, and the Sorensen parameter xi_e^2.

Closed-form path: the per-branch witness expressions in the manifold
coefficients, plus the per-branch quadrature-variance expressions.  The two
paths are compared by the test suite; they are deliberately kept independent.

Slack convention: every inequality is reported as the signed amount by which
it is satisfied, so negative slack (beyond tolerance) means "violated".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize

from .dynamics import CoefficientSet, InitialState
from .hilbert import DensityMatrix, Operator, expectation
from .operators import QuadraturePair, SpinTriple

VIOLATION_TOL = 1e-10
MEAN_SPIN_FLOOR = 1e-8
DENOMINATOR_FLOOR = 1e-12

_AXES = ("x", "y", "z")


class BranchMismatchError(ValueError):
    """Coefficients do not belong to the requested initial-state branch."""


def spin_moments(rho: DensityMatrix, spin: SpinTriple) -> tuple[np.ndarray, np.ndarray]:
    """(mean vector, 3x3 symmetrized covariance matrix)."""
    comps = spin.components
    mean = np.array([expectation(s, rho) for s in comps])
    cov = np.zeros((3, 3))
    for i in range(3):
        for j in range(i, 3):
            sym = (
                comps[i].matrix @ comps[j].matrix + comps[j].matrix @ comps[i].matrix
            ) / 2
            val = expectation(Operator(rho.space, sym), rho)
            cov[i, j] = cov[j, i] = val - mean[i] * mean[j]
    return mean, cov


@dataclass(frozen=True)
class OssiReport:
    """Signed slack of each collective-spin inequality.

    slack_c and slack_d are keyed by the singled-out axis m; the remaining
    two axes play the symmetric (k, l) roles.
    """

    n_particles: int
    slack_a: float
    slack_b: float
    slack_c: dict[str, float]
    slack_d: dict[str, float]

    @property
    def min_slack(self) -> float:
        return min(
            [self.slack_a, self.slack_b]
            + list(self.slack_c.values())
            + list(self.slack_d.values())
        )

    def violated(self, tol: float = VIOLATION_TOL) -> bool:
        return self.min_slack < -tol


def ossi(rho: DensityMatrix, spin: SpinTriple, n_particles: int) -> OssiReport:
    """Evaluate all four inequalities on the given state."""
    if n_particles < 2:
        raise ValueError(f"need at least 2 particles, got {n_particles}")
    n = n_particles
    mean, cov = spin_moments(rho, spin)
    second = np.diag(cov) + mean**2  # <J_k^2>
    var = np.diag(cov)

    slack_a = n * (n + 2) / 4 - float(second.sum())
    slack_b = float(var.sum()) - n / 2
    slack_c = {}
    slack_d = {}
    for m in range(3):
        k, l = [i for i in range(3) if i != m]
        slack_c[_AXES[m]] = float(
            (n - 1) * var[m] - second[k] - second[l] + n / 2
        )
        slack_d[_AXES[m]] = float(
            (n - 1) * (var[k] + var[l]) - second[m] - n * (n - 2) / 4
        )
    return OssiReport(n, float(slack_a), float(slack_b), slack_c, slack_d)


@dataclass(frozen=True)
class BranchWitnesses:
    """Closed-form witness values with their per-branch violation orientation."""

    ineq_a: float
    ineq_p: float
    a_violated: bool
    p_violated: bool


def branch_witnesses(coeffs: CoefficientSet, branch: InitialState) -> BranchWitnesses:
    """Per-branch closed forms.

    Entangled branch: ineq_a = 4 - 5|A|^2 and ineq_p = |A|^2, squeezing
    flagged by positive values.  Separable branch:
    ineq_a = 3|B|^2 - |D|^2 - 2(|B|^2 + |D|^2)^2 and ineq_p = 2|A|^2 - 1,
    squeezing flagged by negative values.
    """
    antisym = coeffs.abs_c2 + coeffs.abs_d2
    if branch is InitialState.ENTANGLED_SYMMETRIC:
        if antisym > 1e-10:
            raise BranchMismatchError(
                f"entangled branch must have no antisymmetric weight, "
                f"found |C|^2 + |D|^2 = {antisym:.3e}"
            )
        ineq_a = 4 - 5 * coeffs.abs_a2
        ineq_p = coeffs.abs_a2
        return BranchWitnesses(
            float(ineq_a),
            float(ineq_p),
            a_violated=ineq_a > VIOLATION_TOL,
            p_violated=ineq_p > VIOLATION_TOL,
        )
    s = coeffs.abs_b2 + coeffs.abs_d2
    ineq_a = 3 * coeffs.abs_b2 - coeffs.abs_d2 - 2 * s**2
    ineq_p = 2 * coeffs.abs_a2 - 1
    return BranchWitnesses(
        float(ineq_a),
        float(ineq_p),
        a_violated=ineq_a < -VIOLATION_TOL,
        p_violated=ineq_p < -VIOLATION_TOL,
    )


def _orthonormal_transverse(n0: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    axis = np.zeros(3)
    axis[np.argmin(np.abs(n0))] = 1.0
    e1 = axis - np.dot(axis, n0) * n0
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n0, e1)
    return e1, e2


def kitagawa_ueda_xi(
    rho: DensityMatrix, spin: SpinTriple, n_particles: int
) -> float:
    """Minimal transverse standard deviation over sqrt(J/2) with J = N/2.

    Returns nan when the mean spin direction is undefined (|<J>| too small).
    """
    mean, cov = spin_moments(rho, spin)
    norm = np.linalg.norm(mean)
    if norm <= MEAN_SPIN_FLOOR:
        return math.nan
    n0 = mean / norm
    e1, e2 = _orthonormal_transverse(n0)
    basis = np.column_stack([e1, e2])
    m = basis.T @ cov @ basis
    lam_min = float(np.linalg.eigvalsh(m)[0])
    lam_min = max(lam_min, 0.0)
    j_total = n_particles / 2
    return math.sqrt(lam_min) / math.sqrt(j_total / 2)


def transverse_variance(
    rho: DensityMatrix, spin: SpinTriple, angle: float
) -> float:
    """Variance of n(angle) . J for n in the plane orthogonal to <J>.

    Brute-force probe used by tests as an oracle for kitagawa_ueda_xi.
    """
    mean, cov = spin_moments(rho, spin)
    norm = np.linalg.norm(mean)
    if norm <= MEAN_SPIN_FLOOR:
        raise ValueError("mean spin direction undefined")
    e1, e2 = _orthonormal_transverse(mean / norm)
    n = math.cos(angle) * e1 + math.sin(angle) * e2
    return float(n @ cov @ n)


def sorensen_xi_e2(
    rho: DensityMatrix, spin: SpinTriple, n_particles: int
) -> float:
    """N Var(J_n1) / (<J_n2>^2 + <J_n3>^2) minimized over orthonormal frames.

    The denominator equals |<J>|^2 - <J_n1>^2, so only the direction n1 is
    optimized: a deterministic spherical grid followed by simplex refinement.
    Returns nan when every frame has a vanishing denominator.
    """
    mean, cov = spin_moments(rho, spin)
    m2 = float(mean @ mean)
    if m2 <= DENOMINATOR_FLOOR:
        return math.nan

    def ratio(angles: np.ndarray) -> float:
        theta, phi = angles
        n1 = np.array(
            [
                math.sin(theta) * math.cos(phi),
                math.sin(theta) * math.sin(phi),
                math.cos(theta),
            ]
        )
        denom = m2 - float(n1 @ mean) ** 2
        if denom <= DENOMINATOR_FLOOR:
            return math.inf
        return n_particles * float(n1 @ cov @ n1) / denom

    thetas = np.linspace(0.0, math.pi, 19)
    phis = np.linspace(0.0, 2 * math.pi, 37)
    best = math.inf
    best_angles = None
    for theta in thetas:
        for phi in phis:
            val = ratio(np.array([theta, phi]))
            if val < best:
                best = val
                best_angles = (theta, phi)
    if best_angles is None or math.isinf(best):
        return math.nan
    res = optimize.minimize(
        ratio,
        np.array(best_angles),
        method="Nelder-Mead",
        options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 500},
    )
    if math.isfinite(res.fun) and res.fun < best:
        best = float(res.fun)
    return best


def quadrature_variances(
    rho_photons: DensityMatrix, pair: QuadraturePair
) -> tuple[float, float]:
    """Generic (Delta X1)^2 and (Delta X2)^2 for the designated mode."""
    out = []
    for op in (pair.x1, pair.x2):
        sq = Operator(op.space, op.matrix @ op.matrix)
        mean = expectation(op, rho_photons)
        out.append(expectation(sq, rho_photons) - mean**2)
    return out[0], out[1]


def closed_form_quadrature_variance(
    coeffs: CoefficientSet, branch: InitialState
) -> float:
    """Per-branch quadrature-variance closed form (equal for X1 and X2)."""
    if branch is InitialState.ENTANGLED_SYMMETRIC:
        return 0.25 + 0.5 * coeffs.abs_a2
    return (
        (7 / 8) * coeffs.abs_a2
        + 0.25 * (2 * np.real(coeffs.ac) + coeffs.abs_d2)
        + 0.5 * coeffs.abs_b2
    )


@dataclass(frozen=True)
class WitnessBundle:
    """Everything the sweep can report for one state."""

    ossi_atoms: OssiReport
    ossi_photons: OssiReport
    ineq_a: float
    ineq_p: float
    a_violated: bool
    p_violated: bool
    xi: float
    xi_e2: float
    var_x1: float
    var_x2: float


def evaluate_bundle(
    coeffs: CoefficientSet,
    branch: InitialState,
    rho_atoms: DensityMatrix,
    rho_photons: DensityMatrix,
    atom_spin: SpinTriple,
    photon_spin: SpinTriple,
    pair: Optional[QuadraturePair] = None,
) -> WitnessBundle:
    bw = branch_witnesses(coeffs, branch)
    var_cf = closed_form_quadrature_variance(coeffs, branch)
    if pair is not None:
        var_x1, var_x2 = quadrature_variances(rho_photons, pair)
    else:
        var_x1 = var_x2 = var_cf
    return WitnessBundle(
        ossi_atoms=ossi(rho_atoms, atom_spin, 2),
        ossi_photons=ossi(rho_photons, photon_spin, 2),
        ineq_a=bw.ineq_a,
        ineq_p=bw.ineq_p,
        a_violated=bw.a_violated,
        p_violated=bw.p_violated,
        xi=kitagawa_ueda_xi(rho_atoms, atom_spin, 2),
        xi_e2=sorensen_xi_e2(rho_atoms, atom_spin, 2),
        var_x1=var_x1,
        var_x2=var_x2,
    )
