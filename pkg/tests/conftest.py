from pathlib import Path

import pytest

from venplan import (
    Arc,
    EnergyPath,
    VehicularRoute,
    build_network,
    parse_scenario,
    sub_route,
)

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "scenarios"
THREE_ROUTES = FIXTURE_DIR / "three_routes.json"


@pytest.fixture(scope="session")
def three_routes_text() -> str:
    return THREE_ROUTES.read_text()


@pytest.fixture()
def three_routes_scenario(three_routes_text):
    return parse_scenario(three_routes_text)


def chain_network(delays, flows=None, lengths=None):
    """Junctions 1..n+1 with arc i running i -> i+1."""
    n = len(delays)
    flows = flows or [100.0] * n
    lengths = lengths or [10.0] * n
    arcs = [
        Arc(id=i + 1, tail=i + 1, head=i + 2, delay=delays[i],
            flow=flows[i], length=lengths[i])
        for i in range(n)
    ]
    return build_network(range(1, n + 2), arcs)


def single_arc_path(seg_delays, seg_flows):
    """Path of single-arc segments, each from its own route.

    Returns (path, network, routes); segment i covers arc i of the chain.
    """
    n = len(seg_delays)
    network = chain_network(seg_delays)
    routes = [
        VehicularRoute(id=i + 1, arcs=(i + 1,), flow=seg_flows[i]) for i in range(n)
    ]
    segments = tuple(
        sub_route(network, routes[i], 1, 1) for i in range(n)
    )
    return EnergyPath(source=1, target=n + 1, segments=segments), network, routes
