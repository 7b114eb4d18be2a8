"""Shared fixtures: the bundled corpus and seeded random object generators.

Randomized tests draw from fixed-seed ``random.Random`` instances so every
run exercises the same objects; failures are reproducible from the seed.
"""

import random
from importlib import resources

import pytest

from slinv import (
    CombinatorialMap,
    Disconnected,
    NotCheckerboardColorable,
    SlinvError,
    checkerboard,
    parse_diagram,
    parse_map,
    tait_graphs,
)

SLD_NAMES = (
    "figure8.sld",
    "trefoil.sld",
    "vk2_1.sld",
    "vk4_105.sld",
    "vk4_106.sld",
    "weave2x2.sld",
)
RG_NAMES = (
    "genus2_bouquet.rg",
    "theta_sphere.rg",
    "torus_bouquet.rg",
    "trivial_loop.rg",
    "weave_tait_a.rg",
)


def corpus_text(name: str) -> str:
    return resources.files("slinv.data").joinpath(name).read_text()


def is_colorable(d) -> bool:
    try:
        checkerboard(d)
    except NotCheckerboardColorable:
        return False
    return True


# -- seeded random generators ---------------------------------------------------


def random_alternating_diagram_text(rng: random.Random, c: int) -> str:
    """Wire c crossings into a random alternating diagram encoding.

    Each crossing gets a random over-strand exit slot and a random sign
    (which fixes the under-strand exit); arcs then connect over-exits to
    under-entries and under-exits to over-entries through two random
    bijections, so every arc joins an over slot to an under slot.
    """
    over_out = [rng.choice((0, 2)) for _ in range(c)]
    sign = [rng.choice((1, -1)) for _ in range(c)]
    under_out = [(o + s) % 4 for o, s in zip(over_out, sign)]
    to_under = list(range(c))
    to_over = list(range(c))
    rng.shuffle(to_under)
    rng.shuffle(to_over)
    arcs = []
    for i in range(c):
        j = to_under[i]
        arcs.append(((i, over_out[i]), (j, (under_out[j] + 2) % 4)))
    for i in range(c):
        j = to_over[i]
        arcs.append(((i, under_out[i]), (j, (over_out[j] + 2) % 4)))
    lines = ["format sld 1", f"crossings {c}"]
    for a, (tail, head) in enumerate(arcs):
        lines.append(f"arc {a} {tail[0]}.{tail[1]} {head[0]}.{head[1]}")
    return "\n".join(lines) + "\n"


def sample_torus_diagrams(seed: int, count: int, c_lo: int = 3, c_hi: int = 8):
    """Random checkerboard-colorable alternating diagrams on the torus."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        c = rng.randint(c_lo, c_hi)
        try:
            d = parse_diagram(random_alternating_diagram_text(rng, c))
        except SlinvError:
            continue
        if d.genus != 1 or not is_colorable(d):
            continue
        out.append(d)
    return out


def random_ribbon_map(rng: random.Random, v_max: int = 4, e_max: int = 8):
    """One random connected combinatorial map, or None when the draw fails."""
    V = rng.randint(1, v_max)
    E = rng.randint(max(1, V - 1), e_max)
    at_vertex = [[] for _ in range(V)]
    for e in range(E):
        at_vertex[rng.randrange(V)].append(2 * e)
        at_vertex[rng.randrange(V)].append(2 * e + 1)
    if any(not halves for halves in at_vertex):
        return None
    for halves in at_vertex:
        rng.shuffle(halves)
    try:
        return CombinatorialMap(at_vertex, [(2 * e, 2 * e + 1) for e in range(E)])
    except Disconnected:
        return None


def sample_ribbon_maps(seed: int, count: int, genera=(1, 2)):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m = random_ribbon_map(rng)
        if m is not None and m.genus in genera:
            out.append(m)
    return out


# -- fixtures ---------------------------------------------------------------------


@pytest.fixture(scope="session")
def diagrams():
    return {name: parse_diagram(corpus_text(name)) for name in SLD_NAMES}


@pytest.fixture(scope="session")
def colorable_diagrams(diagrams):
    return {name: d for name, d in diagrams.items() if is_colorable(d)}


@pytest.fixture(scope="session")
def maps():
    return {name: parse_map(corpus_text(name)) for name in RG_NAMES}


@pytest.fixture(scope="session")
def study_maps(maps, diagrams, colorable_diagrams):
    """Every embedded graph the corpus gives rise to: the bundled map files,
    each diagram's underlying 4-valent map, and both Tait graphs of each
    colorable diagram."""
    out = dict(maps)
    for name, d in diagrams.items():
        out[f"{name}:map"] = d.cmap
    for name, d in colorable_diagrams.items():
        pair = tait_graphs(d, checkerboard(d))
        out[f"{name}:tait_a"] = pair.g_a
        out[f"{name}:tait_b"] = pair.g_b
    return out


@pytest.fixture(scope="session")
def random_maps():
    return sample_ribbon_maps(seed=6060, count=40)


@pytest.fixture(scope="session")
def random_diagrams():
    return sample_torus_diagrams(seed=20240817, count=25, c_lo=3, c_hi=6)
