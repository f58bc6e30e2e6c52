"""Road network primitives: junctions, arcs, routes, and sub-routes.

A road network is a directed graph whose nodes are integer junction ids and
whose arcs carry a constant traversal delay and a vehicle flow. Vehicular
routes are loop-free sequences of connected arcs; contiguous slices of a
route (sub-routes) are the building blocks of energy paths.

Networks and routes are immutable once built, so they can be shared freely
between concurrent consumers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import ValidationError


@dataclass(frozen=True)
class Arc:
    """Directed road segment between two junctions.

    ``delay`` is the traversal time in hours, ``flow`` the number of vehicles
    per hour, and ``length`` the physical length in km. Length is used only
    by the scenario generator's route-length cap; it plays no role in energy
    accounting.
    """

    id: int
    tail: int
    head: int
    delay: float  # hours
    flow: float = 0.0  # vehicles per hour
    length: float = 0.0  # km


@dataclass(frozen=True)
class VehicularRoute:
    """Loop-free sequence of connected arcs carrying a scalar vehicle flow."""

    id: int
    arcs: tuple[int, ...]  # arc ids, in travel order
    flow: float  # vehicles per hour


@dataclass(frozen=True)
class SubRoute:
    """Contiguous slice of a route, from its n-th to its m-th arc.

    Indices are 1-based and inclusive. The slice inherits the parent route's
    flow; its delay is the sum of the member arcs' delays.
    """

    route_id: int
    start: int
    end: int
    arcs: tuple[int, ...]
    entry: int  # junction where the slice begins
    exit: int  # junction where the slice ends
    delay: float  # hours
    flow: float  # vehicles per hour


@dataclass(frozen=True)
class RoadNetwork:
    """Validated directed road graph with an adjacency index by tail junction."""

    junctions: frozenset[int]
    arcs: Mapping[int, Arc]
    adjacency: Mapping[int, tuple[int, ...]]

    def arc(self, arc_id: int) -> Arc:
        try:
            return self.arcs[arc_id]
        except KeyError:
            raise ValidationError(f"unknown arc id {arc_id}") from None

    def out_arcs(self, junction: int) -> tuple[Arc, ...]:
        """Arcs leaving ``junction``, in ascending arc-id order."""
        return tuple(self.arcs[a] for a in self.adjacency.get(junction, ()))


def build_network(junctions: Iterable[int], arcs: Iterable[Arc]) -> RoadNetwork:
    """Validate junctions and arcs and assemble an indexed road network.

    Raises ValidationError on duplicate ids, dangling arc endpoints,
    self-loops, or negative delay/flow/length.
    """
    junction_list = list(junctions)
    arc_list = list(arcs)
    if not junction_list:
        raise ValidationError("network needs at least one junction")
    if not arc_list:
        raise ValidationError("network needs at least one arc")

    junction_set = frozenset(junction_list)
    if len(junction_set) != len(junction_list):
        raise ValidationError("duplicate junction ids")

    arc_map: dict[int, Arc] = {}
    for arc in arc_list:
        if arc.id in arc_map:
            raise ValidationError(f"duplicate arc id {arc.id}")
        if arc.tail == arc.head:
            raise ValidationError(f"arc {arc.id} is a self-loop at junction {arc.tail}")
        if arc.tail not in junction_set or arc.head not in junction_set:
            raise ValidationError(f"arc {arc.id} references an undeclared junction")
        if arc.delay < 0:
            raise ValidationError(f"arc {arc.id} has negative delay")
        if arc.flow < 0:
            raise ValidationError(f"arc {arc.id} has negative flow")
        if arc.length < 0:
            raise ValidationError(f"arc {arc.id} has negative length")
        arc_map[arc.id] = arc

    adjacency: dict[int, tuple[int, ...]] = {j: () for j in junction_set}
    for arc_id in sorted(arc_map):
        arc = arc_map[arc_id]
        adjacency[arc.tail] = adjacency[arc.tail] + (arc_id,)

    return RoadNetwork(junctions=junction_set, arcs=arc_map, adjacency=adjacency)


def route_junctions(network: RoadNetwork, route: VehicularRoute) -> tuple[int, ...]:
    """Junction sequence a route visits: tail of the first arc, then every head."""
    if not route.arcs:
        raise ValidationError(f"route {route.id} has no arcs")
    first = network.arc(route.arcs[0])
    seq = [first.tail]
    for arc_id in route.arcs:
        seq.append(network.arc(arc_id).head)
    return tuple(seq)


def validate_route(network: RoadNetwork, route: VehicularRoute) -> None:
    """Check connectivity, loop-freedom, and flow sign of a route.

    Consecutive arcs must chain head-to-tail and no junction may be visited
    twice. Raises ValidationError naming the failed invariant.
    """
    if route.flow < 0:
        raise ValidationError(f"route {route.id} has negative flow")
    seq = route_junctions(network, route)
    for k in range(len(route.arcs) - 1):
        here = network.arc(route.arcs[k])
        nxt = network.arc(route.arcs[k + 1])
        if here.head != nxt.tail:
            raise ValidationError(
                f"route {route.id}: arc {nxt.id} does not start where arc {here.id} ends"
            )
    if len(set(seq)) != len(seq):
        raise ValidationError(f"route {route.id} visits a junction twice")


def sub_route(network: RoadNetwork, route: VehicularRoute, n: int, m: int) -> SubRoute:
    """Slice a route from its n-th to its m-th arc (1-based, inclusive)."""
    if not 1 <= n <= m <= len(route.arcs):
        raise ValidationError(
            f"sub-route indices ({n}, {m}) out of range for route {route.id} "
            f"of length {len(route.arcs)}"
        )
    member_ids = tuple(route.arcs[n - 1 : m])
    members = [network.arc(a) for a in member_ids]
    delay = 0.0
    for arc in members:
        delay += arc.delay
    return SubRoute(
        route_id=route.id,
        start=n,
        end=m,
        arcs=member_ids,
        entry=members[0].tail,
        exit=members[-1].head,
        delay=delay,
        flow=route.flow,
    )


def route_delay(
    network: RoadNetwork, route_or_subroute: Union[VehicularRoute, SubRoute]
) -> float:
    """Total traversal time in hours: the sum of the member arcs' delays."""
    if isinstance(route_or_subroute, SubRoute):
        return route_or_subroute.delay
    total = 0.0
    for arc_id in route_or_subroute.arcs:
        total += network.arc(arc_id).delay
    return total
