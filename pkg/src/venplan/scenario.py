"""Scenario files and synthetic scenario generation.

A scenario bundles everything one planning run needs: the road network, the
vehicular routes, the (source, target) pairs, physical parameters, the EV
participation fraction, enumeration bounds, and optional caps. Scenarios
are stored as JSON with an explicit schema version and unit declarations;
serialization is canonical (sorted keys, fixed layout), so equal scenarios
produce byte-identical files.

The generator builds synthetic scenarios from a seeded RNG: a weakly
connected random arc set, routes grown by loop-free random walks under a
length cap whose flow is the minimum of their member arcs' flows, and
source-target pairs screened so at least one energy path exists.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import dataclass, field, replace
from typing import Any, Optional

from .energetics import EnergyParams
from .errors import ScenarioFormatError, ValidationError
from .network import Arc, RoadNetwork, VehicularRoute, build_network, validate_route
from .paths import FULL_ROUTE, PER_HOP, EnumerationConfig, enumerate_paths

SCHEMA_VERSION = 1
UNITS = {
    "time": "hours",
    "energy": "kWh",
    "flow": "vehicles_per_hour",
    "length": "km",
}


@dataclass(frozen=True)
class Scenario:
    """A complete, validated planning instance."""

    network: RoadNetwork
    routes: tuple[VehicularRoute, ...]
    pairs: tuple[tuple[int, int], ...]
    params: EnergyParams
    penetration: float
    enumeration: EnumerationConfig
    loss_cap: float = math.inf  # kWh
    delivery_floor: float = 0.0  # kWh
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0 <= self.penetration <= 1:
            raise ValidationError("penetration must be within [0, 1]")
        if not self.loss_cap >= 0:
            raise ValidationError("loss_cap must be nonnegative")
        if not (self.delivery_floor >= 0 and math.isfinite(self.delivery_floor)):
            raise ValidationError("delivery_floor must be finite and nonnegative")
        for route in self.routes:
            validate_route(self.network, route)
        route_ids = [r.id for r in self.routes]
        if len(set(route_ids)) != len(route_ids):
            raise ValidationError("duplicate route ids")
        for s, t in self.pairs:
            if s not in self.network.junctions:
                raise ValidationError(f"pair source {s} is not a junction")
            if t not in self.network.junctions:
                raise ValidationError(f"pair target {t} is not a junction")
            if s == t:
                raise ValidationError("pair source and target must differ")

    def effective_routes(self) -> tuple[VehicularRoute, ...]:
        """Routes with flows scaled by the participation fraction."""
        return tuple(
            replace(r, flow=r.flow * self.penetration) for r in self.routes
        )


def _expect(obj: Any, key: str, kind: type, where: str) -> Any:
    if not isinstance(obj, dict):
        raise ScenarioFormatError(f"{where} must be an object")
    if key not in obj:
        raise ScenarioFormatError(f"{where}.{key} is missing")
    value = obj[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ScenarioFormatError(f"{where}.{key} must be a number")
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ScenarioFormatError(f"{where}.{key} must be an integer")
        return value
    if not isinstance(value, kind):
        raise ScenarioFormatError(f"{where}.{key} must be a {kind.__name__}")
    return value


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario document.

    Raises ScenarioFormatError for malformed documents (with the JSON
    location or field path) and ValidationError when a well-formed document
    breaks a semantic invariant.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise ScenarioFormatError("top level must be an object")

    version = _expect(doc, "schema_version", int, "scenario")
    if version != SCHEMA_VERSION:
        raise ScenarioFormatError(
            f"unsupported schema_version {version}; expected {SCHEMA_VERSION}"
        )
    units = _expect(doc, "units", dict, "scenario")
    for key, expected in UNITS.items():
        if units.get(key) != expected:
            raise ScenarioFormatError(f"units.{key} must be {expected!r}")

    network_obj = _expect(doc, "network", dict, "scenario")
    junctions = _expect(network_obj, "junctions", list, "network")
    for j in junctions:
        if isinstance(j, bool) or not isinstance(j, int):
            raise ScenarioFormatError("network.junctions must be integers")
    arcs = []
    for i, arc_obj in enumerate(_expect(network_obj, "arcs", list, "network")):
        where = f"network.arcs[{i}]"
        arcs.append(
            Arc(
                id=_expect(arc_obj, "id", int, where),
                tail=_expect(arc_obj, "tail", int, where),
                head=_expect(arc_obj, "head", int, where),
                delay=_expect(arc_obj, "delay", float, where),
                flow=_expect(arc_obj, "flow", float, where),
                length=_expect(arc_obj, "length", float, where),
            )
        )
    network = build_network(junctions, arcs)

    routes = []
    for i, route_obj in enumerate(_expect(doc, "routes", list, "scenario")):
        where = f"routes[{i}]"
        arc_ids = _expect(route_obj, "arcs", list, where)
        for a in arc_ids:
            if isinstance(a, bool) or not isinstance(a, int):
                raise ScenarioFormatError(f"{where}.arcs must be integers")
        routes.append(
            VehicularRoute(
                id=_expect(route_obj, "id", int, where),
                arcs=tuple(arc_ids),
                flow=_expect(route_obj, "flow", float, where),
            )
        )

    pairs = []
    for i, pair in enumerate(_expect(doc, "pairs", list, "scenario")):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or any(isinstance(v, bool) or not isinstance(v, int) for v in pair)
        ):
            raise ScenarioFormatError(f"pairs[{i}] must be a [source, target] pair")
        pairs.append((pair[0], pair[1]))

    params_obj = _expect(doc, "params", dict, "scenario")
    params = EnergyParams(
        packet_size=_expect(params_obj, "packet_size", float, "params"),
        charge_efficiency=_expect(params_obj, "charge_efficiency", float, "params"),
        discharge_efficiency=_expect(
            params_obj, "discharge_efficiency", float, "params"
        ),
        window=_expect(params_obj, "window", float, "params"),
    )

    enum_obj = _expect(doc, "enumeration", dict, "scenario")
    raw_max_paths = enum_obj.get("max_paths")
    if raw_max_paths is not None:
        raw_max_paths = _expect(enum_obj, "max_paths", int, "enumeration")
    mode = _expect(enum_obj, "mode", str, "enumeration")
    if mode not in (FULL_ROUTE, PER_HOP):
        raise ScenarioFormatError(f"enumeration.mode must be one of {FULL_ROUTE!r}, {PER_HOP!r}")
    enumeration = EnumerationConfig(
        max_hops=_expect(enum_obj, "max_hops", int, "enumeration"),
        max_paths=raw_max_paths,
        mode=mode,
    )

    caps = doc.get("caps", {})
    if not isinstance(caps, dict):
        raise ScenarioFormatError("caps must be an object")
    raw_cap = caps.get("loss_cap")
    loss_cap = math.inf if raw_cap is None else _expect(caps, "loss_cap", float, "caps")
    raw_floor = caps.get("delivery_floor")
    delivery_floor = (
        0.0 if raw_floor is None else _expect(caps, "delivery_floor", float, "caps")
    )

    seed = doc.get("seed")
    if seed is not None:
        seed = _expect(doc, "seed", int, "scenario")

    return Scenario(
        network=network,
        routes=tuple(routes),
        pairs=tuple(pairs),
        params=params,
        penetration=_expect(doc, "penetration", float, "scenario"),
        enumeration=enumeration,
        loss_cap=loss_cap,
        delivery_floor=delivery_floor,
        seed=seed,
    )


def scenario_to_dict(scenario: Scenario) -> dict:
    """Canonical JSON-ready form of a scenario."""
    return {
        "schema_version": SCHEMA_VERSION,
        "units": dict(UNITS),
        "network": {
            "junctions": sorted(scenario.network.junctions),
            "arcs": [
                {
                    "id": arc.id,
                    "tail": arc.tail,
                    "head": arc.head,
                    "delay": arc.delay,
                    "flow": arc.flow,
                    "length": arc.length,
                }
                for arc_id, arc in sorted(scenario.network.arcs.items())
            ],
        },
        "routes": [
            {"id": r.id, "arcs": list(r.arcs), "flow": r.flow}
            for r in sorted(scenario.routes, key=lambda r: r.id)
        ],
        "pairs": [[s, t] for s, t in scenario.pairs],
        "params": {
            "packet_size": scenario.params.packet_size,
            "charge_efficiency": scenario.params.charge_efficiency,
            "discharge_efficiency": scenario.params.discharge_efficiency,
            "window": scenario.params.window,
        },
        "penetration": scenario.penetration,
        "enumeration": {
            "max_hops": scenario.enumeration.max_hops,
            "max_paths": scenario.enumeration.max_paths,
            "mode": scenario.enumeration.mode,
        },
        "caps": {
            "loss_cap": None if math.isinf(scenario.loss_cap) else scenario.loss_cap,
            "delivery_floor": scenario.delivery_floor,
        },
        "seed": scenario.seed,
    }


def serialize_scenario(scenario: Scenario) -> str:
    """Canonical text form; equal scenarios serialize byte-identically."""
    return json.dumps(scenario_to_dict(scenario), indent=2, sort_keys=True) + "\n"


def scenario_hash(scenario: Scenario) -> str:
    """SHA-256 of the canonical serialization, for provenance records."""
    return hashlib.sha256(serialize_scenario(scenario).encode("utf-8")).hexdigest()


def _nominal_params() -> EnergyParams:
    return EnergyParams(
        packet_size=0.1, charge_efficiency=0.9, discharge_efficiency=1.0, window=5.0
    )


def _default_enumeration() -> EnumerationConfig:
    return EnumerationConfig(max_hops=4, max_paths=20, mode=FULL_ROUTE)


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs for synthetic scenario generation; the seed is mandatory."""

    seed: int
    junction_count: int = 100
    arc_count: int = 250
    route_count: int = 480
    pair_count: int = 5
    max_route_length: float = 200.0  # km
    delay_range: tuple[float, float] = (0.1, 2.0)  # hours
    flow_range: tuple[float, float] = (50.0, 1000.0)  # vehicles per hour
    length_range: tuple[float, float] = (5.0, 60.0)  # km
    params: EnergyParams = field(default_factory=_nominal_params)
    penetration: float = 0.001
    enumeration: EnumerationConfig = field(default_factory=_default_enumeration)
    loss_cap: float = math.inf
    delivery_floor: float = 0.0

    def __post_init__(self) -> None:
        if self.junction_count < 2:
            raise ValidationError("junction_count must be at least 2")
        if self.arc_count < self.junction_count - 1:
            raise ValidationError(
                "arc_count below junction_count - 1 cannot connect the network"
            )
        if self.arc_count > self.junction_count * (self.junction_count - 1):
            raise ValidationError("arc_count exceeds the number of distinct arcs")
        if self.route_count < 1 or self.pair_count < 1:
            raise ValidationError("route_count and pair_count must be positive")
        if not self.max_route_length > 0:
            raise ValidationError("max_route_length must be positive")
        for name in ("delay_range", "flow_range", "length_range"):
            lo, hi = getattr(self, name)
            if not 0 <= lo <= hi:
                raise ValidationError(f"{name} must satisfy 0 <= low <= high")
        if self.length_range[0] > self.max_route_length:
            raise ValidationError("shortest possible arc already exceeds the route cap")


def _grow_route(
    rng: random.Random, network: RoadNetwork, start: int, cap: float
) -> list[int]:
    """Random loop-free walk from ``start`` staying under the length cap."""
    visited = {start}
    arcs: list[int] = []
    length = 0.0
    here = start
    while True:
        options = [
            arc
            for arc in network.out_arcs(here)
            if arc.head not in visited and length + arc.length <= cap
        ]
        if not options:
            return arcs
        arc = rng.choice(options)
        arcs.append(arc.id)
        visited.add(arc.head)
        length += arc.length
        here = arc.head


def generate_scenario(config: GeneratorConfig) -> Scenario:
    """Generate a scenario deterministically from the config's seed.

    Arc placement starts from a random spanning backbone so every junction
    is reachable from the arc set; each route's flow is the minimum of its
    member arcs' flows and its total length respects the cap. Every emitted
    (source, target) pair admits at least one energy path under the
    config's enumeration settings.
    """
    rng = random.Random(config.seed)
    n = config.junction_count
    junctions = list(range(1, n + 1))

    endpoints: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for j in range(2, n + 1):
        tail = rng.randrange(1, j)
        endpoints.append((tail, j))
        seen.add((tail, j))
    attempts = 0
    while len(endpoints) < config.arc_count:
        attempts += 1
        if attempts > 100 * config.arc_count:
            raise ValidationError("could not place the requested number of arcs")
        tail = rng.randrange(1, n + 1)
        head = rng.randrange(1, n + 1)
        if tail == head or (tail, head) in seen:
            continue
        endpoints.append((tail, head))
        seen.add((tail, head))

    arcs = [
        Arc(
            id=i,
            tail=tail,
            head=head,
            delay=rng.uniform(*config.delay_range),
            flow=rng.uniform(*config.flow_range),
            length=rng.uniform(*config.length_range),
        )
        for i, (tail, head) in enumerate(endpoints, start=1)
    ]
    network = build_network(junctions, arcs)

    starts = sorted(j for j in junctions if network.adjacency[j])
    if not starts:
        raise ValidationError("no junction has an outgoing arc")
    routes: list[VehicularRoute] = []
    for route_id in range(1, config.route_count + 1):
        walk: list[int] = []
        for _ in range(100):
            walk = _grow_route(rng, network, rng.choice(starts), config.max_route_length)
            if walk:
                break
        if not walk:
            raise ValidationError(
                "could not grow a route within the length cap; "
                "check length_range against max_route_length"
            )
        flow = min(network.arc(a).flow for a in walk)
        routes.append(VehicularRoute(id=route_id, arcs=tuple(walk), flow=flow))

    probe = replace(config.enumeration, max_paths=1)
    sources = sorted({network.arc(a).tail for r in routes for a in r.arcs})
    targets = sorted({network.arc(a).head for r in routes for a in r.arcs})
    pairs: list[tuple[int, int]] = []
    chosen: set[tuple[int, int]] = set()
    attempts = 0
    while len(pairs) < config.pair_count:
        attempts += 1
        if attempts > 300 * config.pair_count:
            raise ValidationError(
                "could not find enough source-target pairs joined by a path"
            )
        s = rng.choice(sources)
        t = rng.choice(targets)
        if s == t or (s, t) in chosen:
            continue
        if enumerate_paths(network, routes, s, t, probe):
            pairs.append((s, t))
            chosen.add((s, t))

    return Scenario(
        network=network,
        routes=tuple(routes),
        pairs=tuple(pairs),
        params=config.params,
        penetration=config.penetration,
        enumeration=config.enumeration,
        loss_cap=config.loss_cap,
        delivery_floor=config.delivery_floor,
        seed=config.seed,
    )
