"""Parameter sweeps over scenario solves, emitting plot-ready CSV.

One parameter varies per sweep (round-trip efficiency, window, packet size,
or penetration) while the others sit at fixed nominal values. Paths are
enumerated once per pair and reused across sweep values, since the path set
depends only on the network and routes.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional

from ._version import __version__
from .energetics import EnergyParams
from .errors import ValidationError
from .paths import EnergyPath, enumerate_paths
from .planner import GREEDY, MAX_ENERGY, PlanRequest, solve
from .scenario import Scenario, scenario_hash

SWEEP_PARAMETERS = ("z", "T", "w", "penetration")

CSV_COLUMNS = ("value", "transferred_kwh", "loss_kwh")


@dataclass(frozen=True)
class SweepSpec:
    """Which parameter to sweep, over which values, around which nominals."""

    parameter: str  # one of SWEEP_PARAMETERS
    values: tuple[float, ...]
    nominal_efficiency: float = 0.9
    nominal_window: float = 5.0  # hours
    nominal_packet_size: float = 0.1  # kWh
    nominal_penetration: float = 0.001

    def __post_init__(self) -> None:
        if self.parameter not in SWEEP_PARAMETERS:
            raise ValidationError(
                f"unknown sweep parameter {self.parameter!r}; "
                f"expected one of {SWEEP_PARAMETERS}"
            )
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise ValidationError("sweep values must be non-empty")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValidationError("sweep values must be strictly increasing")


@dataclass(frozen=True)
class SweepPoint:
    """Totals and per-pair breakdown at one swept value."""

    value: float
    transferred: float  # kWh
    loss: float  # kWh
    pair_breakdown: tuple[tuple[int, int, float, float], ...]
    # entries are (source, target, transferred_kwh, loss_kwh)


@dataclass(frozen=True)
class SweepResult:
    """All sweep points plus provenance for reproducibility."""

    spec: SweepSpec
    objective: str
    method: str
    points: tuple[SweepPoint, ...]
    scenario_digest: str
    seed: Optional[int]
    tool_version: str


def _point_params(spec: SweepSpec, value: float) -> tuple[EnergyParams, float]:
    efficiency = spec.nominal_efficiency
    window = spec.nominal_window
    packet = spec.nominal_packet_size
    penetration = spec.nominal_penetration
    if spec.parameter == "z":
        efficiency = value
    elif spec.parameter == "T":
        window = value
    elif spec.parameter == "w":
        packet = value
    else:
        penetration = value
    params = EnergyParams.with_round_trip(
        packet_size=packet, efficiency=efficiency, window=window
    )
    return params, penetration


def run_sweep(
    scenario: Scenario,
    spec: SweepSpec,
    objective: str = MAX_ENERGY,
    method: str = GREEDY,
    loss_cap: float = math.inf,
    delivery_floor: float = 0.0,
) -> SweepResult:
    """Re-solve every scenario pair at each swept value.

    Point totals are the exact sums of the per-pair breakdown entries, in
    pair order.
    """
    pair_paths: list[tuple[int, int, tuple[EnergyPath, ...]]] = []
    for source, target in scenario.pairs:
        paths = enumerate_paths(
            scenario.network, scenario.routes, source, target, scenario.enumeration
        )
        pair_paths.append((source, target, tuple(paths)))

    points = []
    for value in spec.values:
        params, penetration = _point_params(spec, value)
        breakdown = []
        transferred = 0.0
        loss = 0.0
        for source, target, paths in pair_paths:
            request = PlanRequest(
                paths=paths,
                params=params,
                objective=objective,
                loss_cap=loss_cap,
                delivery_floor=delivery_floor,
                penetration=penetration,
            )
            plan = solve(request, method)
            breakdown.append((source, target, plan.transferred, plan.loss))
            transferred += plan.transferred
            loss += plan.loss
        points.append(
            SweepPoint(
                value=value,
                transferred=transferred,
                loss=loss,
                pair_breakdown=tuple(breakdown),
            )
        )
    return SweepResult(
        spec=spec,
        objective=objective,
        method=method,
        points=tuple(points),
        scenario_digest=scenario_hash(scenario),
        seed=scenario.seed,
        tool_version=__version__,
    )


def sweep_to_csv(result: SweepResult) -> str:
    """RFC-4180 CSV: header row, one row per swept value, '.' decimals.

    Floats are written in shortest round-trip form, so re-reading the file
    recovers the exact totals.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(CSV_COLUMNS)
    for point in result.points:
        writer.writerow([repr(point.value), repr(point.transferred), repr(point.loss)])
    return buffer.getvalue()


def read_sweep_csv(text: str) -> list[tuple[float, float, float]]:
    """Parse rows written by :func:`sweep_to_csv` back into floats."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_COLUMNS:
        raise ValidationError(f"unexpected CSV header {rows[0] if rows else None!r}")
    return [(float(v), float(x), float(l)) for v, x, l in rows[1:]]


def sweep_metadata(result: SweepResult) -> dict:
    """Provenance sidecar content for a sweep run."""
    return {
        "parameter": result.spec.parameter,
        "values": list(result.spec.values),
        "objective": result.objective,
        "solver": result.method,
        "scenario_sha256": result.scenario_digest,
        "seed": result.seed,
        "tool_version": result.tool_version,
        "nominals": {
            "z": result.spec.nominal_efficiency,
            "T": result.spec.nominal_window,
            "w": result.spec.nominal_packet_size,
            "penetration": result.spec.nominal_penetration,
        },
        "pair_breakdown": {
            repr(p.value): [list(entry) for entry in p.pair_breakdown]
            for p in result.points
        },
    }


def find_crossover(result: SweepResult) -> Optional[float]:
    """Swept value where total loss stops exceeding transferred energy.

    Scans consecutive points for a sign change of (loss - transferred) and
    interpolates linearly within the bracketing interval. Returns None when
    loss never exceeds the transferred energy anywhere in the sweep.
    """
    for a, b in zip(result.points, result.points[1:]):
        da = a.loss - a.transferred
        db = b.loss - b.transferred
        if da > 0 >= db:
            if da == db:
                return a.value
            return a.value + da * (b.value - a.value) / (da - db)
    if result.points and result.points[0].loss - result.points[0].transferred == 0:
        return result.points[0].value
    return None
