"""Full experiment driver: propagate, intervene, sample, classify.

A run propagates exactly between scheduled interventions, reusing one
eigendecomposition for the whole trajectory, and samples observables on
a uniform grid. Interventions are instantaneous: each contributes a
pre-record and a post-record at the same time stamp, with equal
populations and (possibly) different coherences. When an intervention
lands exactly on a grid point, the intervention applies first, the grid
sample records the post-intervention state, and the pre-intervention
sample is recorded additionally just before it.

The pipeline is deterministic end to end; repeated runs of the same
spec produce bit-identical trajectories.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np

from .core import ValidationError
from .diagnostics import ObservableRecord, record_observables
from .interventions import (
    InterventionKind,
    InterventionSchedule,
    apply_intervention,
)
from .models import ModelKind, ModelSpec, build
from .propagator import eigendecompose, evolve

__all__ = [
    "ScenarioSpec",
    "InterventionMarker",
    "Trajectory",
    "Effect",
    "Classification",
    "run",
    "run_batch",
    "classify_effect",
]

# |t_grid - t_intervention| below this counts as the same instant
def _tie_tol(t: float) -> float:
    return 1e-9 * max(1.0, abs(t))


def default_pairs(model: ModelSpec) -> tuple:
    """Coherences tracked when a spec does not choose: the (1, 0) pair
    for the two-level system, none individually for band models (their
    hub coherences are aggregated in the sigma column)."""
    if model.kind is ModelKind.TWO_LEVEL:
        return ((1, 0),)
    return ()


@dataclass(frozen=True)
class ScenarioSpec:
    """Everything one run needs.

    ``coherence_pairs = None`` means the per-kind default; pass an
    explicit tuple (possibly empty) to override.
    """

    model: ModelSpec
    t_final: float
    sample_dt: float
    schedule: InterventionSchedule = field(default_factory=InterventionSchedule)
    coherence_pairs: tuple | None = None

    def resolved_pairs(self) -> tuple:
        if self.coherence_pairs is None:
            return default_pairs(self.model)
        return tuple((int(j), int(k)) for j, k in self.coherence_pairs)

    def validate(self) -> "ScenarioSpec":
        self.model.validate()
        problems = []
        if not self.t_final > 0:
            problems.append(f"t_final must be positive, got {self.t_final!r}")
        if not 0 < self.sample_dt <= self.t_final:
            problems.append(
                f"sample_dt must lie in (0, t_final], got {self.sample_dt!r}"
            )
        dim = self.model.dim
        for j, k in self.resolved_pairs():
            if j == k or not (0 <= j < dim and 0 <= k < dim):
                problems.append(f"coherence pair ({j},{k}) invalid for dim {dim}")
        if problems:
            raise ValidationError("invalid scenario: " + "; ".join(problems))
        self.schedule.validate(dim=dim, t_final=self.t_final)
        return self


@dataclass(frozen=True)
class InterventionMarker:
    time: float
    kind: InterventionKind
    target: int
    pre: ObservableRecord
    post: ObservableRecord


@dataclass
class Trajectory:
    """Ordered samples plus one marker per intervention."""

    spec: ScenarioSpec
    records: list
    markers: list

    def times(self) -> np.ndarray:
        return np.array([r.t for r in self.records])

    def grid_records(self) -> list:
        """The uniform-grid view: one record per grid time.

        Pre/post duplicates collapse to the last record at that time,
        the state the run carries forward.
        """
        dt = self.spec.sample_dt
        n = int(np.floor(self.spec.t_final / dt + 1e-9))
        slots: list = [None] * (n + 1)
        for rec in self.records:
            i = int(round(rec.t / dt))
            if 0 <= i <= n and abs(rec.t - i * dt) <= _tie_tol(rec.t):
                slots[i] = rec
        missing = [i for i, r in enumerate(slots) if r is None]
        if missing:
            raise ValidationError(f"grid samples missing at indices {missing[:5]}")
        return slots

    def grid_times(self) -> np.ndarray:
        return np.array([r.t for r in self.grid_records()])

    def grid_population(self, j: int) -> np.ndarray:
        return np.array([r.populations[j] for r in self.grid_records()])

    def grid_sigma(self) -> np.ndarray:
        return np.array([r.sigma for r in self.grid_records()])


_EVENT_NAME = {InterventionKind.MEASURE: "measure", InterventionKind.SIGN_FLIP: "flip"}


def run(spec: ScenarioSpec) -> Trajectory:
    """Execute one scenario.

    Sampling always evolves from the most recent segment start, never
    from the previous sample, so sampling density cannot change the
    states visited.
    """
    spec.validate()
    h, rho0 = build(spec.model)
    spectral = eigendecompose(h)
    pairs = spec.resolved_pairs()

    n = int(np.floor(spec.t_final / spec.sample_dt + 1e-9))
    grid = np.arange(n + 1) * spec.sample_dt

    records: list = []
    markers: list = []
    seg_rho, seg_t = rho0, 0.0

    def sample(t: float, state, event: str) -> ObservableRecord:
        rec = record_observables(t, state, h, pairs, event)
        records.append(rec)
        return rec

    i = 0
    for item in spec.schedule:
        tau = item.time
        while i <= n and grid[i] < tau - _tie_tol(tau):
            sample(grid[i], evolve(seg_rho, spectral, grid[i] - seg_t), "none")
            i += 1
        tied = i <= n and abs(grid[i] - tau) <= _tie_tol(tau)

        name = _EVENT_NAME[item.kind]
        pre_state = evolve(seg_rho, spectral, tau - seg_t)
        pre_rec = sample(tau, pre_state, f"pre_{name}")
        post_state = apply_intervention(pre_state, item)
        post_rec = sample(tau, post_state, f"post_{name}")
        markers.append(
            InterventionMarker(
                time=tau, kind=item.kind, target=item.target, pre=pre_rec, post=post_rec
            )
        )
        seg_rho, seg_t = post_state, tau
        if tied:
            i += 1

    while i <= n:
        sample(grid[i], evolve(seg_rho, spectral, grid[i] - seg_t), "none")
        i += 1

    return Trajectory(spec=spec, records=records, markers=markers)


def run_batch(specs, max_workers: int | None = None) -> list:
    """Run independent scenarios concurrently, preserving input order.

    Each run owns all of its state, so results are identical to running
    sequentially, regardless of worker count.
    """
    specs = list(specs)
    if not specs:
        return []
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(run, specs))


class Effect(str, Enum):
    QZE = "QZE"
    AZE = "AZE"
    NEUTRAL = "neutral"


class Classification(NamedTuple):
    effect: Effect
    score: float


def classify_effect(
    reference: Trajectory,
    intervened: Trajectory,
    window: tuple,
    theta: float = 0.005,
) -> Classification:
    """Compare time-averaged survival of state 0 over a window.

    ``score`` is the intervened average minus the reference average of
    rho_00 across the grid samples inside ``window`` (endpoints
    inclusive). Above ``theta`` the verdict is QZE (transfer retarded),
    below ``-theta`` AZE (transfer accelerated), otherwise neutral.
    Averages rather than endpoints keep the verdict stable when the
    reference oscillates.
    """
    t_a, t_b = float(window[0]), float(window[1])
    if not t_a < t_b:
        raise ValidationError(f"empty window ({t_a!r}, {t_b!r})")
    ref_t = reference.grid_times()
    int_t = intervened.grid_times()
    if ref_t.size != int_t.size or not np.array_equal(ref_t, int_t):
        raise ValidationError("sampling grids differ between the two trajectories")
    mask = (ref_t >= t_a - _tie_tol(t_a)) & (ref_t <= t_b + _tie_tol(t_b))
    if not np.any(mask):
        raise ValidationError(f"window ({t_a!r}, {t_b!r}) contains no samples")
    score = float(
        np.mean(intervened.grid_population(0)[mask])
        - np.mean(reference.grid_population(0)[mask])
    )
    if score > theta:
        return Classification(Effect.QZE, score)
    if score < -theta:
        return Classification(Effect.AZE, score)
    return Classification(Effect.NEUTRAL, score)
