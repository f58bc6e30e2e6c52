"""Energy-transfer planning over enumerated paths.

Fixing every path's rate at its flow-limited maximum can only enlarge the
feasible energies, so both planning problems reduce to one-constraint
fractional knapsacks over the per-path delivered energies: maximize total
delivered energy subject to a loss budget, or meet a delivery floor at
minimum total loss. A greedy fill in ascending per-unit-loss order solves
either exactly; an LP route through the bounded simplex provides an
independent cross-check on the same instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .energetics import EnergyParams, PathEconomics, path_economics
from .errors import SolverError, ValidationError
from .paths import EnergyPath, enumerate_paths
from .scenario import Scenario
from .simplex import INFEASIBLE, OPTIMAL, solve_lp

MAX_ENERGY = "max-energy"
MIN_LOSS = "min-loss"
GREEDY = "greedy"
SIMPLEX = "simplex"


@dataclass(frozen=True)
class PlanRequest:
    """One (source, target) planning instance.

    ``loss_cap`` applies to the max-energy objective and may be infinite;
    ``delivery_floor`` applies to min-loss and must be finite.
    """

    paths: tuple[EnergyPath, ...]
    params: EnergyParams
    objective: str
    loss_cap: float = math.inf  # kWh
    delivery_floor: float = 0.0  # kWh
    penetration: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "paths", tuple(self.paths))
        if self.objective not in (MAX_ENERGY, MIN_LOSS):
            raise ValidationError(f"unknown objective {self.objective!r}")
        if self.objective == MAX_ENERGY and not self.loss_cap >= 0:
            raise ValidationError("loss_cap must be nonnegative")
        if self.objective == MIN_LOSS and not (
            self.delivery_floor >= 0 and math.isfinite(self.delivery_floor)
        ):
            raise ValidationError("delivery_floor must be finite and nonnegative")
        if not 0 <= self.penetration <= 1:
            raise ValidationError("penetration must be within [0, 1]")
        endpoints = {(p.source, p.target) for p in self.paths}
        if len(endpoints) > 1:
            raise ValidationError("paths of one request must share one (s, t) pair")


@dataclass(frozen=True)
class PathAssignment:
    """Energy and rate assigned to one path."""

    economics: PathEconomics
    energy: float  # kWh delivered over this path
    rate: float  # kWh per hour

    @property
    def path(self) -> EnergyPath:
        return self.economics.path

    @property
    def loss(self) -> float:
        return self.economics.loss_factor * self.energy


@dataclass(frozen=True)
class TransferPlan:
    """Per-path assignments plus their exact aggregates."""

    assignments: tuple[PathAssignment, ...]
    transferred: float  # kWh
    loss: float  # kWh
    status: str  # "optimal" | "infeasible"


def _assemble_plan(
    economics: Sequence[PathEconomics], energies: np.ndarray, status: str
) -> TransferPlan:
    assignments = tuple(
        PathAssignment(economics=e, energy=float(x), rate=e.max_rate)
        for e, x in zip(economics, energies)
    )
    transferred = 0.0
    loss = 0.0
    for a in assignments:
        transferred += a.energy
        loss += a.loss
    return TransferPlan(
        assignments=assignments, transferred=transferred, loss=loss, status=status
    )


def _check_instance(capacities, loss_factors) -> tuple[np.ndarray, np.ndarray]:
    caps = np.asarray(capacities, dtype=float)
    lams = np.asarray(loss_factors, dtype=float)
    if caps.shape != lams.shape or caps.ndim != 1:
        raise ValueError("capacities and loss factors must be equal-length vectors")
    if not (np.all(np.isfinite(caps)) and np.all(np.isfinite(lams))):
        raise ValueError("capacities and loss factors must be finite")
    if np.any(caps < 0) or np.any(lams < 0):
        raise ValueError("capacities and loss factors must be nonnegative")
    return caps, lams


def knapsack_assign(
    capacities,
    loss_factors,
    objective: str,
    bound: float,
    hops: Optional[Sequence[int]] = None,
) -> tuple[np.ndarray, str]:
    """Greedy fill in ascending loss-factor order; exact for both objectives.

    Paths tie-break on fewer hops, then input order. ``bound`` is the loss
    cap (max-energy, may be inf) or the delivery floor (min-loss, finite).
    Returns the energy vector and a plan status; an unreachable floor yields
    the fully saturated vector with status "infeasible".
    """
    caps, lams = _check_instance(capacities, loss_factors)
    n = caps.size
    tie_hops = [0] * n if hops is None else list(hops)
    order = sorted(range(n), key=lambda j: (lams[j], tie_hops[j], j))
    x = np.zeros(n)
    if objective == MAX_ENERGY:
        if not bound >= 0:
            raise ValueError("loss cap must be nonnegative")
        budget = bound
        for j in order:
            if lams[j] <= 0.0:
                x[j] = caps[j]
                continue
            if budget <= 0.0:
                break
            cost = lams[j] * caps[j]
            if cost <= budget:
                x[j] = caps[j]
                budget -= cost
            else:
                x[j] = budget / lams[j]
                break
        return x, OPTIMAL
    if objective == MIN_LOSS:
        if not (bound >= 0 and math.isfinite(bound)):
            raise ValueError("delivery floor must be finite and nonnegative")
        if bound <= 0.0:
            return x, OPTIMAL
        if float(caps.sum()) < bound:
            return caps.copy(), INFEASIBLE
        need = bound
        for j in order:
            take = caps[j] if caps[j] < need else need
            x[j] = take
            need -= take
            if need <= 0.0:
                break
        return x, OPTIMAL
    raise ValidationError(f"unknown objective {objective!r}")


def lp_assign(
    capacities, loss_factors, objective: str, bound: float
) -> tuple[np.ndarray, str]:
    """Solve the same instance through the bounded-variable simplex."""
    caps, lams = _check_instance(capacities, loss_factors)
    n = caps.size
    if objective == MAX_ENERGY:
        if not bound >= 0:
            raise ValueError("loss cap must be nonnegative")
        rows = None
        rhs = None
        if math.isfinite(bound):
            rows = lams.reshape(1, -1)
            rhs = [bound]
        result = solve_lp(np.ones(n), rows, rhs, lower=0.0, upper=caps, maximize=True)
        if result.status != OPTIMAL:
            raise SolverError(f"max-energy LP unexpectedly {result.status}")
        return result.x, OPTIMAL
    if objective == MIN_LOSS:
        if not (bound >= 0 and math.isfinite(bound)):
            raise ValueError("delivery floor must be finite and nonnegative")
        rows = None
        rhs = None
        if bound > 0:
            rows = -np.ones((1, n))
            rhs = [-bound]
        result = solve_lp(lams, rows, rhs, lower=0.0, upper=caps, maximize=False)
        if result.status == INFEASIBLE:
            return caps.copy(), INFEASIBLE
        if result.status != OPTIMAL:
            raise SolverError(f"min-loss LP unexpectedly {result.status}")
        return result.x, OPTIMAL
    raise ValidationError(f"unknown objective {objective!r}")


def _assign(caps, lams, hops, objective, bound, method):
    if method == GREEDY:
        return knapsack_assign(caps, lams, objective, bound, hops)
    if method == SIMPLEX:
        return lp_assign(caps, lams, objective, bound)
    raise ValidationError(f"unknown method {method!r}")


def _economics(request: PlanRequest) -> list[PathEconomics]:
    return [
        path_economics(p, request.params, request.penetration) for p in request.paths
    ]


def solve_max_energy(request: PlanRequest, method: str = GREEDY) -> TransferPlan:
    """Maximize delivered energy subject to the request's loss cap."""
    if request.objective != MAX_ENERGY:
        raise ValidationError("request objective is not max-energy")
    econ = _economics(request)
    caps = [e.capacity for e in econ]
    lams = [e.loss_factor for e in econ]
    hops = [e.path.hops for e in econ]
    if not econ:
        return TransferPlan((), 0.0, 0.0, OPTIMAL)
    x, status = _assign(caps, lams, hops, MAX_ENERGY, request.loss_cap, method)
    return _assemble_plan(econ, x, status)


def solve_min_loss(request: PlanRequest, method: str = GREEDY) -> TransferPlan:
    """Minimize total loss while meeting the request's delivery floor.

    When the floor exceeds the total path capacity the plan saturates every
    path and reports status "infeasible", which keeps sweeps informative.
    """
    if request.objective != MIN_LOSS:
        raise ValidationError("request objective is not min-loss")
    econ = _economics(request)
    caps = [e.capacity for e in econ]
    lams = [e.loss_factor for e in econ]
    hops = [e.path.hops for e in econ]
    if not econ:
        status = OPTIMAL if request.delivery_floor <= 0 else INFEASIBLE
        return TransferPlan((), 0.0, 0.0, status)
    x, status = _assign(caps, lams, hops, MIN_LOSS, request.delivery_floor, method)
    return _assemble_plan(econ, x, status)


def solve(request: PlanRequest, method: str = GREEDY) -> TransferPlan:
    """Dispatch on the request's objective."""
    if request.objective == MAX_ENERGY:
        return solve_max_energy(request, method)
    return solve_min_loss(request, method)


@dataclass(frozen=True)
class MultiSourceResult:
    """Independent per-pair plans plus their aggregate totals."""

    plans: tuple[TransferPlan, ...]
    transferred: float  # kWh
    loss: float  # kWh


def solve_multi_source(
    requests: Sequence[PlanRequest], method: str = GREEDY
) -> MultiSourceResult:
    """Solve each request independently and sum the totals in input order."""
    plans = tuple(solve(req, method) for req in requests)
    transferred = 0.0
    loss = 0.0
    for plan in plans:
        transferred += plan.transferred
        loss += plan.loss
    return MultiSourceResult(plans=plans, transferred=transferred, loss=loss)


@dataclass(frozen=True)
class TradeoffReport:
    """Outcome of the loss-versus-delivery property checks.

    ``premise_holds`` is true when every path loses at least as much as it
    delivers (loss factor >= 1, i.e. the retained fraction per path is at
    most one half). Under that premise every nonnegative assignment has
    total loss >= total delivered energy.
    """

    premise_holds: bool
    offending_paths: tuple[int, ...]
    samples: int
    dominance_violations: int
    loss_caps: tuple[float, ...]
    energy_curve: tuple[float, ...]
    energy_monotone: bool
    energy_saturates: bool
    floors: tuple[float, ...]
    loss_curve: tuple[float, ...]
    loss_monotone: bool


def check_tradeoff_properties(
    capacities,
    loss_factors,
    loss_caps: Optional[Sequence[float]] = None,
    floors: Optional[Sequence[float]] = None,
    samples: int = 1000,
    seed: int = 0,
    method: str = GREEDY,
) -> TradeoffReport:
    """Audit monotonicity, saturation, and loss dominance on one instance.

    Re-solves the max-energy problem over an ascending loss-cap sweep and
    the min-loss problem over an ascending floor sweep, and samples random
    feasible assignments to count violations of loss >= transferred. A
    failing premise (some loss factor below 1) is reported, not raised.
    """
    caps, lams = _check_instance(capacities, loss_factors)
    total_cap = float(caps.sum())
    max_loss = float((lams * caps).sum())
    offenders = tuple(int(j) for j in np.flatnonzero(lams < 1.0))
    premise = not offenders

    if loss_caps is None:
        base = max_loss if max_loss > 0 else 1.0
        loss_caps = tuple(f * base for f in (0.0, 0.1, 0.25, 0.5, 1.0, 2.0))
    else:
        loss_caps = tuple(float(v) for v in loss_caps)
    if floors is None:
        floors = tuple(f * total_cap for f in (0.0, 0.25, 0.5, 0.75, 1.0))
    else:
        floors = tuple(float(v) for v in floors)

    energy_curve = []
    for cap in loss_caps:
        x, _ = _assign(caps, lams, None, MAX_ENERGY, cap, method)
        energy_curve.append(float(x.sum()))
    loss_curve = []
    for floor in floors:
        x, status = _assign(caps, lams, None, MIN_LOSS, floor, method)
        if status != OPTIMAL:
            raise ValidationError(f"floor {floor} exceeds total capacity {total_cap}")
        loss_curve.append(float((lams * x).sum()))

    tol = 1e-9 * max(1.0, total_cap, max_loss)
    energy_monotone = all(
        b >= a - tol for a, b in zip(energy_curve, energy_curve[1:])
    )
    saturating_caps = [v for c, v in zip(loss_caps, energy_curve) if c >= max_loss]
    energy_saturates = bool(saturating_caps) and all(
        abs(v - total_cap) <= tol for v in saturating_caps
    )
    loss_monotone = all(b >= a - tol for a, b in zip(loss_curve, loss_curve[1:]))

    rng = np.random.default_rng(seed)
    finite_caps = [c for c in loss_caps if math.isfinite(c)]
    largest_cap = max(finite_caps) if finite_caps else math.inf
    violations = 0
    for _ in range(samples):
        x = rng.uniform(0.0, 1.0, caps.size) * caps
        loss = float((lams * x).sum())
        if math.isfinite(largest_cap) and loss > largest_cap > 0:
            x = x * (largest_cap / loss)
            loss = float((lams * x).sum())
        if float(x.sum()) > loss + tol:
            violations += 1

    return TradeoffReport(
        premise_holds=premise,
        offending_paths=offenders,
        samples=samples,
        dominance_violations=violations,
        loss_caps=loss_caps,
        energy_curve=tuple(energy_curve),
        energy_monotone=energy_monotone,
        energy_saturates=energy_saturates,
        floors=floors,
        loss_curve=tuple(loss_curve),
        loss_monotone=loss_monotone,
    )


@dataclass(frozen=True)
class PairPlan:
    """Plan and enumerated paths for one (source, target) pair."""

    source: int
    target: int
    paths: tuple[EnergyPath, ...]
    plan: TransferPlan


@dataclass(frozen=True)
class ScenarioSolution:
    """Per-pair plans for a scenario plus aggregate totals."""

    pairs: tuple[PairPlan, ...]
    transferred: float  # kWh
    loss: float  # kWh
    objective: str
    method: str


def solve_scenario(
    scenario: Scenario,
    objective: str = MAX_ENERGY,
    method: str = GREEDY,
    loss_cap: Optional[float] = None,
    delivery_floor: Optional[float] = None,
) -> ScenarioSolution:
    """Enumerate and plan every (source, target) pair of a scenario.

    Paths are enumerated over the declared routes; the scenario's
    penetration scales flows when rates and capacities are computed. Caps
    default to the scenario's own; explicit arguments override them.
    """
    cap = scenario.loss_cap if loss_cap is None else loss_cap
    floor = scenario.delivery_floor if delivery_floor is None else delivery_floor
    pair_plans = []
    transferred = 0.0
    loss = 0.0
    for source, target in scenario.pairs:
        paths = enumerate_paths(
            scenario.network, scenario.routes, source, target, scenario.enumeration
        )
        request = PlanRequest(
            paths=tuple(paths),
            params=scenario.params,
            objective=objective,
            loss_cap=cap,
            delivery_floor=floor,
            penetration=scenario.penetration,
        )
        plan = solve(request, method)
        pair_plans.append(
            PairPlan(source=source, target=target, paths=tuple(paths), plan=plan)
        )
        transferred += plan.transferred
        loss += plan.loss
    return ScenarioSolution(
        pairs=tuple(pair_plans),
        transferred=transferred,
        loss=loss,
        objective=objective,
        method=method,
    )
