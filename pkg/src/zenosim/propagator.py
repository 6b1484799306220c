"""Exact spectral propagation and an independent RK4 integrator.

The equation of motion is i drho/dt = [H, rho] with H constant, so the
exact solution is rho(t) = exp(-iHt) rho exp(+iHt). `evolve` applies it
through one eigendecomposition of H; `rk4_evolve` integrates the same
equation step by step and exists purely as a cross-check, so it shares
no code path with the spectral route.
"""

from __future__ import annotations

import numpy as np

from .core import (
    HermitianMatrix,
    ParameterError,
    SpectralData,
    ValidationError,
    as_matrix,
)

__all__ = ["eigendecompose", "evolve", "liouville_rhs", "rk4_evolve"]

SYMMETRY_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-10


def eigendecompose(h) -> SpectralData:
    """Eigendecompose a real symmetric Hamiltonian.

    Parameters
    ----------
    h : array_like
        Real symmetric matrix (max |H - H^T| and max |Im H| both within
        1e-10).

    Returns
    -------
    SpectralData
        Ascending eigenvalues and the orthonormal eigenvector matrix.
        The reconstruction V diag(lam) V^T is verified against ``h`` to
        1e-10 max-abs and reported in the error if violated.
    """
    hm = as_matrix(h)
    if hm.ndim != 2 or hm.shape[0] != hm.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {hm.shape}")
    imag = float(np.max(np.abs(hm.imag))) if hm.size else 0.0
    asym = float(np.max(np.abs(hm - hm.T))) if hm.size else 0.0
    if imag > SYMMETRY_TOL or asym > SYMMETRY_TOL:
        raise ValidationError(
            f"Hamiltonian must be real symmetric: max |Im| = {imag:.3e}, "
            f"max |H - H^T| = {asym:.3e}"
        )
    hr = np.real(hm)
    try:
        lam, vec = np.linalg.eigh(hr)
    except np.linalg.LinAlgError as exc:
        raise ValidationError(f"eigendecomposition failed to converge: {exc}") from exc
    residual = float(np.max(np.abs((vec * lam) @ vec.T - hr)))
    if residual > RECONSTRUCTION_TOL:
        raise ValidationError(
            f"eigendecomposition reconstruction residual {residual:.3e} "
            f"exceeds {RECONSTRUCTION_TOL:.0e}"
        )
    return SpectralData(eigenvalues=lam, eigenvectors=vec)


def evolve(rho, spectral: SpectralData, t: float) -> HermitianMatrix:
    """Propagate rho by time t under the decomposed Hamiltonian.

    Negative t runs the dynamics backwards. The result is symmetrized
    once, which only removes roundoff: the map is exactly
    Hermiticity-preserving in exact arithmetic.
    """
    rm = as_matrix(rho)
    vec = spectral.eigenvectors
    if rm.shape != (spectral.dim, spectral.dim):
        raise ValidationError(
            f"state of shape {rm.shape} does not match a {spectral.dim}-level system"
        )
    # eigenbasis entries pick up phases exp(-i (lam_m - lam_n) t)
    phases = np.exp(-1j * spectral.eigenvalues * t)
    rt = vec.T @ rm @ vec
    rt *= np.outer(phases, phases.conj())
    out = vec @ rt @ vec.T
    out = 0.5 * (out + out.conj().T)
    return HermitianMatrix._wrap(out)


def liouville_rhs(h, rho) -> np.ndarray:
    """-i [H, rho], the right-hand side of the equation of motion."""
    hm, rm = as_matrix(h), as_matrix(rho)
    if hm.shape != rm.shape:
        raise ValidationError(
            f"shapes {hm.shape} and {rm.shape} do not match"
        )
    return -1j * (hm @ rm - rm @ hm)


def rk4_evolve(rho, h, t: float, dt: float = 1e-3) -> HermitianMatrix:
    """Integrate the equation of motion with classic fixed-step RK4.

    Parameters
    ----------
    rho : HermitianMatrix or array_like
        Initial state.
    h : array_like
        Hamiltonian, used directly; no eigendecomposition happens here.
    t : float
        Nonnegative integration horizon.
    dt : float
        Step size. A shorter remainder step covers any non-integer
        tail of ``t / dt``.

    Notes
    -----
    The RK4 update maps Hermitian matrices to Hermitian matrices in
    exact arithmetic, so the final state is handed to the validating
    constructor; accumulated roundoff asymmetry beyond 1e-12 would fail
    there and signal a broken integration.
    """
    if t < 0:
        raise ParameterError(f"rk4 horizon must be nonnegative, got {t!r}")
    if not dt > 0:
        raise ParameterError(f"rk4 step must be positive, got {dt!r}")
    hm = as_matrix(h)
    r = as_matrix(rho).copy()

    def rhs(m):
        return -1j * (hm @ m - m @ hm)

    def step(m, s):
        k1 = rhs(m)
        k2 = rhs(m + (0.5 * s) * k1)
        k3 = rhs(m + (0.5 * s) * k2)
        k4 = rhs(m + s * k3)
        return m + (s / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    nfull = int(np.floor(t / dt + 1e-9))
    for _ in range(nfull):
        r = step(r, dt)
    rem = t - nfull * dt
    if rem > 1e-12 * max(1.0, t):
        r = step(r, rem)
    return HermitianMatrix(r)
