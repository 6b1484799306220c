"""Observable extraction and exactness checks on the equations of motion.

The rate identities here serve double duty: they are outputs (columns
of the trajectory CSV come from `record_observables`) and they are
oracles, since the population rate of every level must equal a weighted
sum of imaginary coherence parts at all times, for every model, with no
approximation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    HermitianMatrix,
    SpectralData,
    UnsupportedPairError,
    ValidationError,
    as_matrix,
)
from .propagator import eigendecompose, evolve

__all__ = [
    "ObservableRecord",
    "sigma",
    "record_observables",
    "population_rate_residual",
    "coherence_rate",
]

FD_STEP = 1e-6


@dataclass(frozen=True)
class ObservableRecord:
    """One sampled point of a trajectory.

    ``coherences`` maps (j, k) index pairs to the complex entries
    rho[j, k]. ``event`` tags how the sample arose: a plain grid point
    ("none") or the state just before or after an intervention.
    """

    t: float
    populations: np.ndarray
    sigma: float
    coherences: dict = field(default_factory=dict)
    trace: float = 1.0
    purity: float = 1.0
    energy: float = 0.0
    event: str = "none"

    def validate(self) -> "ObservableRecord":
        dim = self.populations.size
        problems = []
        if abs(float(np.sum(self.populations)) - self.trace) > 1e-10:
            problems.append("populations do not sum to the trace")
        if not (1.0 / dim - 1e-10) <= self.purity <= 1.0 + 1e-10:
            problems.append(f"purity {self.purity!r} outside [1/dim, 1]")
        if problems:
            raise ValidationError("bad observable record: " + "; ".join(problems))
        return self


def sigma(rho) -> float:
    """Sum over k >= 1 of Im rho[0, k].

    Positive while population flows out of state 0; zero for any
    diagonal state. For a two-level system this is Im rho_01.
    """
    m = as_matrix(rho)
    return float(np.sum(np.imag(m[0, 1:])))


def record_observables(t: float, rho, h, pairs=(), event: str = "none") -> ObservableRecord:
    """Snapshot every scalar the CSV schema carries.

    ``pairs`` selects which individual coherences to keep; the summed
    sigma column is always present.
    """
    m = as_matrix(rho)
    hm = np.real(as_matrix(h))
    pops = np.real(np.diagonal(m)).copy()
    # tr(H rho) without the O(n^3) product; H is real symmetric
    energy = float(np.sum(hm * np.real(m)))
    rec = ObservableRecord(
        t=float(t),
        populations=pops,
        sigma=sigma(m),
        coherences={(j, k): complex(m[j, k]) for j, k in pairs},
        trace=float(np.real(np.trace(m))),
        purity=float(np.sum(np.abs(m) ** 2)),
        energy=energy,
        event=event,
    )
    return rec.validate()


def population_rate_residual(rho, h, j: int, spectral: SpectralData | None = None) -> float:
    """Gap between the finite-difference rate of rho_jj and its identity.

    The identity states d rho_jj / dt = sum_k 2 H_jk Im rho_kj, exact
    for any Hermitian rho and real symmetric H. The derivative side is
    measured by propagating to +/- 1e-6 around the given state, so this
    doubles as an end-to-end check of the propagator.

    Returns the absolute residual; the contract is residual < 1e-5 for
    every valid state.
    """
    m = as_matrix(rho)
    hm = np.real(as_matrix(h))
    if spectral is None:
        spectral = eigendecompose(hm)
    ahead = evolve(m, spectral, FD_STEP)
    behind = evolve(m, spectral, -FD_STEP)
    fd = (ahead.get(j, j).real - behind.get(j, j).real) / (2.0 * FD_STEP)
    formula = 2.0 * float(hm[j] @ np.imag(m[:, j]))
    return abs(fd - formula)


def coherence_rate(rho, h, j: int, k: int) -> tuple[float, float]:
    """Model rates of Re rho_jk and Im rho_jk for a directly coupled pair.

    Implements

        d Re rho_jk / dt = (eps_j - eps_k) Im rho_jk
        d Im rho_jk / dt = (rho_jj - rho_kk) H_jk - (eps_j - eps_k) Re rho_jk

    which is exact when states j and k talk only to each other. When one
    index is the hub state 0 of a band model, third states do couple in
    and both rates above omit their summed coherence feed; the gap is
    O(v * sum_l rho_lk) and vanishes at any freshly dephased state.

    Raises
    ------
    UnsupportedPairError
        If j == k, or the pair is uncoupled with neither index 0.
    """
    m = as_matrix(rho)
    hm = np.real(as_matrix(h))
    if j == k:
        raise UnsupportedPairError(f"({j},{k}) is a population, not a coherence")
    if j != 0 and k != 0 and hm[j, k] == 0.0:
        raise UnsupportedPairError(
            f"pair ({j},{k}) has no direct coupling; the rate formula does not apply"
        )
    deps = float(hm[j, j] - hm[k, k])
    d_re = deps * float(np.imag(m[j, k]))
    d_im = float((np.real(m[j, j]) - np.real(m[k, k])) * hm[j, k]) - deps * float(
        np.real(m[j, k])
    )
    return d_re, d_im
