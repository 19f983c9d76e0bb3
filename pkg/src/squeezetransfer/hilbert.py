"""Labeled finite-dimensional Hilbert spaces and the operator algebra on them.

Conventions
-----------
The canonical factor order for the full model space is
(atom 1, photons 1, atom 2, photons 2).  Basis enumeration is row-major in
that order (first factor slowest).  Atom levels are ordered (g, e); photon
modes are Fock-ordered 0..n_max.

All containers are immutable after construction and every operation is a
pure function of its inputs.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
POSITIVITY_FLOOR = -1e-10
IMAG_TOL = 1e-10


class DimensionMismatchError(ValueError):
    """An operator or vector does not fit the space it is applied to."""


class NumericalConsistencyError(RuntimeError):
    """A quantity that must be real/Hermitian/normalized failed its check."""


class Kind(enum.Enum):
    ATOM = "atom"
    PHOTON_MODE = "photon_mode"


@dataclass(frozen=True)
class SubsystemSpec:
    """One tensor factor: a two-level atom or a truncated photon mode."""

    kind: Kind
    dimension: int

    def __post_init__(self):
        if self.kind is Kind.ATOM and self.dimension != 2:
            raise ValueError(f"atom factor must have dimension 2, got {self.dimension}")
        if self.kind is Kind.PHOTON_MODE and self.dimension < 3:
            raise ValueError(
                f"photon mode must resolve photon numbers 0..2, need dimension >= 3, "
                f"got {self.dimension}"
            )

    @property
    def labels(self) -> tuple:
        if self.kind is Kind.ATOM:
            return ("g", "e")
        return tuple(range(self.dimension))


def atom() -> SubsystemSpec:
    return SubsystemSpec(Kind.ATOM, 2)


def photon_mode(n_max: int = 2) -> SubsystemSpec:
    return SubsystemSpec(Kind.PHOTON_MODE, n_max + 1)


@dataclass(frozen=True)
class CompositeSpace:
    """Ordered tensor product of subsystem factors with labeled basis."""

    factors: tuple[SubsystemSpec, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("composite space needs at least one factor")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.dimension for f in self.factors)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    @property
    def basis_labels(self) -> list[tuple]:
        return list(itertools.product(*(f.labels for f in self.factors)))

    def basis_index(self, label: Sequence) -> int:
        if len(label) != len(self.factors):
            raise DimensionMismatchError(
                f"label {label!r} has {len(label)} entries for {len(self.factors)} factors"
            )
        idx = 0
        for part, factor in zip(label, self.factors):
            pos = factor.labels.index(part)
            idx = idx * factor.dimension + pos
        return idx

    def basis_vector(self, label: Sequence) -> np.ndarray:
        vec = np.zeros(self.total_dim, dtype=complex)
        vec[self.basis_index(label)] = 1.0
        return vec

    def subspace(self, keep: Sequence[int]) -> "CompositeSpace":
        return CompositeSpace(tuple(self.factors[i] for i in keep))

    def factor_indices(self, kind: Kind) -> tuple[int, ...]:
        return tuple(i for i, f in enumerate(self.factors) if f.kind is kind)


def standard_space(n_max: int = 2) -> CompositeSpace:
    """The canonical (atom 1, photons 1, atom 2, photons 2) model space."""
    return CompositeSpace((atom(), photon_mode(n_max), atom(), photon_mode(n_max)))


@dataclass(frozen=True, eq=False)
class Operator:
    """Dense complex matrix acting on a labeled composite space."""

    space: CompositeSpace
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        d = self.space.total_dim
        if mat.shape != (d, d):
            raise DimensionMismatchError(
                f"matrix shape {mat.shape} does not match space dimension {d}"
            )
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    def dagger(self) -> "Operator":
        return Operator(self.space, self.matrix.conj().T)

    @property
    def is_hermitian(self) -> bool:
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T)) < HERMITICITY_TOL)


@dataclass(frozen=True, eq=False)
class HermitianOperator(Operator):
    """Operator verified Hermitian on construction."""

    def __post_init__(self):
        super().__post_init__()
        dev = np.max(np.abs(self.matrix - self.matrix.conj().T))
        if dev >= HERMITICITY_TOL:
            raise NumericalConsistencyError(
                f"operator deviates from Hermiticity by {dev:.3e}"
            )


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator."""

    space: CompositeSpace
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        d = self.space.total_dim
        if mat.shape != (d, d):
            raise DimensionMismatchError(
                f"matrix shape {mat.shape} does not match space dimension {d}"
            )
        dev = np.max(np.abs(mat - mat.conj().T))
        if dev >= HERMITICITY_TOL:
            raise NumericalConsistencyError(
                f"density matrix deviates from Hermiticity by {dev:.3e}"
            )
        tr = np.trace(mat)
        if abs(tr - 1.0) >= TRACE_TOL:
            raise NumericalConsistencyError(f"density matrix trace {tr} != 1")
        evals = np.linalg.eigvalsh(mat)
        if evals.min() < POSITIVITY_FLOOR:
            raise NumericalConsistencyError(
                f"density matrix has negative eigenvalue {evals.min():.3e}"
            )
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_state_vector(cls, space: CompositeSpace, vec: np.ndarray) -> "DensityMatrix":
        vec = np.asarray(vec, dtype=complex)
        if vec.shape != (space.total_dim,):
            raise DimensionMismatchError(
                f"vector shape {vec.shape} does not match space dimension {space.total_dim}"
            )
        return cls(space, np.outer(vec, vec.conj()))


def tensor_product(
    space: CompositeSpace, factor_ops: Sequence[Optional[np.ndarray]]
) -> Operator:
    """Kronecker product in canonical factor order; None means identity.

    Returns a HermitianOperator when the result is Hermitian, otherwise a
    plain Operator (raising/lowering operators stay unchecked).
    """
    if len(factor_ops) != len(space.factors):
        raise DimensionMismatchError(
            f"{len(factor_ops)} factor operators supplied for "
            f"{len(space.factors)} factors"
        )
    full = np.array([[1.0 + 0j]])
    for i, (op, factor) in enumerate(zip(factor_ops, space.factors)):
        d = factor.dimension
        if op is None:
            local = np.eye(d, dtype=complex)
        else:
            local = np.asarray(op, dtype=complex)
            if local.shape != (d, d):
                raise DimensionMismatchError(
                    f"factor {i}: operator shape {local.shape} does not match "
                    f"dimension {d}"
                )
        full = np.kron(full, local)
    op = Operator(space, full)
    if op.is_hermitian:
        return HermitianOperator(space, full)
    return op


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Trace out all factors not in `keep`; result lives on the kept factors."""
    n = len(rho.space.factors)
    keep = tuple(sorted(set(keep)))
    if not keep:
        raise ValueError("keep set is empty; use the trace instead")
    if len(keep) == n:
        raise ValueError("keep set covers all factors; nothing to trace out")
    if any(i < 0 or i >= n for i in keep):
        raise ValueError(f"keep indices {keep} out of range for {n} factors")
    dims = rho.space.dims
    arr = rho.matrix.reshape(dims + dims)
    row = list(range(n))
    col = [n + i if i in keep else i for i in range(n)]
    out = [i for i in keep] + [n + i for i in keep]
    reduced = np.einsum(arr, row + col, out)
    sub = rho.space.subspace(keep)
    d = sub.total_dim
    return DensityMatrix(sub, reduced.reshape(d, d))


def expectation(op: Operator, rho: DensityMatrix) -> float:
    """Tr(op rho), checked real to within 1e-10."""
    if op.space != rho.space:
        raise DimensionMismatchError("operator and state live on different spaces")
    val = complex(np.einsum("ij,ji->", op.matrix, rho.matrix))
    if abs(val.imag) >= IMAG_TOL:
        raise NumericalConsistencyError(
            f"expectation value has imaginary residue {val.imag:.3e}"
        )
    return float(val.real)


def variance(op: Operator, rho: DensityMatrix) -> float:
    sq = Operator(op.space, op.matrix @ op.matrix)
    mean = expectation(op, rho)
    return expectation(sq, rho) - mean**2
