"""Dense complex matrix arithmetic and the Hermitian matrix type.

Everything in this package works in atomic units: density matrices are
dimensionless, Hamiltonians are in hartree, times in a.u. of time. All
storage is dense complex128; the largest system here is a few hundred
levels, where sparsity buys nothing and dense eigendecomposition is
simple to verify. Tolerances are absolute because every matrix entry is
O(1): populations are bounded by 1 and level energies by the band half
width.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ZenosimError",
    "DimensionMismatchError",
    "ValidationError",
    "ParameterError",
    "UnsupportedPairError",
    "DegenerateSpectrumError",
    "HermitianMatrix",
    "SpectralData",
    "as_matrix",
    "matmul",
    "commutator",
]

# max |A - A^H| accepted by the HermitianMatrix constructor
HERMITICITY_TOL = 1e-12
# density-matrix validity gates
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-10
PURITY_TOL = 1e-10
# orthonormality gate for eigenvector matrices
ORTHONORMALITY_TOL = 1e-10


class ZenosimError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatchError(ZenosimError):
    """Operands have incompatible shapes."""


class ValidationError(ZenosimError):
    """A matrix or structured value violates its contract."""


class ParameterError(ZenosimError):
    """A scalar argument is outside its allowed range."""


class UnsupportedPairError(ZenosimError):
    """A coherence-rate formula was asked for a pair it does not cover."""


class DegenerateSpectrumError(ZenosimError):
    """A predictor denominator vanished; the spectrum carries no curvature."""


def as_matrix(a) -> np.ndarray:
    """Return the complex128 ndarray behind ``a`` without copying when possible."""
    if isinstance(a, HermitianMatrix):
        return a._m
    return np.asarray(a, dtype=np.complex128)


class HermitianMatrix:
    """Square complex matrix kept Hermitian by construction.

    Parameters
    ----------
    entries : array_like
        Square matrix, Hermitian within ``1e-12`` (max abs entry of
        ``A - A^H``). The stored copy is symmetrized to ``(A + A^H)/2``
        so later arithmetic cannot drift off the Hermitian manifold.

    Raises
    ------
    DimensionMismatchError
        If ``entries`` is not a square 2-d array.
    ValidationError
        If the Hermiticity residual exceeds the tolerance.

    Notes
    -----
    `set` writes both mirror entries, so mutation preserves Hermiticity
    exactly. Instances are intended as values: build, optionally mutate,
    then share; nothing here locks.
    """

    __slots__ = ("_m",)

    def __init__(self, entries):
        m = np.array(entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatchError(
                f"expected a square matrix, got shape {m.shape}"
            )
        residual = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
        if residual > HERMITICITY_TOL:
            raise ValidationError(
                f"matrix is not Hermitian: max |A - A^H| = {residual:.3e} "
                f"exceeds {HERMITICITY_TOL:.0e}"
            )
        self._m = 0.5 * (m + m.conj().T)

    @classmethod
    def _wrap(cls, m: np.ndarray) -> "HermitianMatrix":
        # internal fast path: m must already be exactly Hermitian
        obj = cls.__new__(cls)
        obj._m = m
        return obj

    @classmethod
    def zeros(cls, dim: int) -> "HermitianMatrix":
        if dim < 1:
            raise ParameterError(f"dim must be positive, got {dim}")
        return cls._wrap(np.zeros((dim, dim), dtype=np.complex128))

    @classmethod
    def basis_state(cls, dim: int, j: int) -> "HermitianMatrix":
        """Projector |j><j| as a density matrix."""
        if dim < 1:
            raise ParameterError(f"dim must be positive, got {dim}")
        if not 0 <= j < dim:
            raise ParameterError(f"state index {j} outside [0, {dim})")
        m = np.zeros((dim, dim), dtype=np.complex128)
        m[j, j] = 1.0
        return cls._wrap(m)

    @classmethod
    def from_diagonal(cls, values) -> "HermitianMatrix":
        """Diagonal matrix from real values."""
        v = np.asarray(values, dtype=np.float64)
        if v.ndim != 1 or v.size < 1:
            raise DimensionMismatchError(
                f"expected a 1-d value vector, got shape {v.shape}"
            )
        return cls._wrap(np.diag(v).astype(np.complex128))

    @property
    def dim(self) -> int:
        return self._m.shape[0]

    def get(self, j: int, k: int) -> complex:
        return complex(self._m[j, k])

    def set(self, j: int, k: int, value: complex) -> None:
        """Write entry (j, k) and its mirror (k, j) = conj(value).

        Diagonal writes must be real within the Hermiticity tolerance.
        """
        value = complex(value)
        if j == k:
            if abs(value.imag) > HERMITICITY_TOL:
                raise ValidationError(
                    f"diagonal entry ({j},{j}) must be real, got imag {value.imag:.3e}"
                )
            self._m[j, j] = value.real
            return
        self._m[j, k] = value
        self._m[k, j] = value.conjugate()

    def copy(self) -> "HermitianMatrix":
        return HermitianMatrix._wrap(self._m.copy())

    def as_array(self) -> np.ndarray:
        """Defensive copy of the entries."""
        return self._m.copy()

    def __array__(self, dtype=None, copy=None):
        m = self._m
        return m.astype(dtype) if dtype is not None else m.copy()

    def trace(self) -> float:
        # diagonal is exactly real after symmetrization
        return float(np.real(np.trace(self._m)))

    def purity(self) -> float:
        """tr(rho^2), computed as the squared Frobenius norm."""
        return float(np.sum(np.abs(self._m) ** 2))

    def eigenvalues(self) -> np.ndarray:
        """Real eigenvalues in ascending order."""
        return np.linalg.eigvalsh(self._m)

    def populations(self) -> np.ndarray:
        return np.real(np.diagonal(self._m)).copy()

    def validate_density(self) -> "HermitianMatrix":
        """Check trace, positivity and purity gates for a density matrix.

        Raises
        ------
        ValidationError
            Listing every violated gate.
        """
        problems = []
        tr = self.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            problems.append(f"trace = {tr!r} differs from 1 by more than {TRACE_TOL:.0e}")
        evals = self.eigenvalues()
        if evals[0] < -POSITIVITY_TOL:
            problems.append(f"smallest eigenvalue {evals[0]!r} below -{POSITIVITY_TOL:.0e}")
        pur = self.purity()
        lo = 1.0 / self.dim - PURITY_TOL
        if not lo <= pur <= 1.0 + PURITY_TOL:
            problems.append(f"purity {pur!r} outside [1/dim, 1]")
        if problems:
            raise ValidationError("not a valid density matrix: " + "; ".join(problems))
        return self

    def __repr__(self) -> str:
        return f"HermitianMatrix(dim={self.dim})"


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalues and orthonormal eigenvectors of a real symmetric matrix.

    ``eigenvectors[:, j]`` pairs with ``eigenvalues[j]``; eigenvalues are
    ascending. Orthonormality is checked at construction; the
    reconstruction residual against the source matrix is checked where
    the decomposition is produced.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.eigenvalues, dtype=np.float64)
        vec = np.asarray(self.eigenvectors, dtype=np.float64)
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "eigenvectors", vec)
        if lam.ndim != 1 or vec.shape != (lam.size, lam.size):
            raise DimensionMismatchError(
                f"eigenvalue vector of size {lam.size} does not match "
                f"eigenvector matrix of shape {vec.shape}"
            )
        gram = vec.T @ vec
        residual = float(np.max(np.abs(gram - np.eye(lam.size))))
        if residual > ORTHONORMALITY_TOL:
            raise ValidationError(
                f"eigenvector matrix is not orthonormal: max |V^T V - I| = {residual:.3e}"
            )

    @property
    def dim(self) -> int:
        return self.eigenvalues.size


def matmul(a, b) -> np.ndarray:
    """Matrix product of two square-matrix-like operands.

    No symmetry is assumed on the output.
    """
    am, bm = as_matrix(a), as_matrix(b)
    if am.ndim != 2 or bm.ndim != 2 or am.shape[1] != bm.shape[0]:
        raise DimensionMismatchError(
            f"cannot multiply shapes {am.shape} and {bm.shape}"
        )
    return am @ bm


def commutator(h, rho) -> np.ndarray:
    """[H, rho] = H rho - rho H.

    Anti-Hermitian whenever both operands are Hermitian, which makes
    the diagonal of the result purely imaginary.
    """
    hm, rm = as_matrix(h), as_matrix(rho)
    if hm.shape != rm.shape or hm.ndim != 2:
        raise DimensionMismatchError(
            f"commutator needs equal square shapes, got {hm.shape} and {rm.shape}"
        )
    return hm @ rm - rm @ hm
