import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from opdkernel.graph import Graph
from synth import random_outerplanar

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@st.composite
def graphs(draw, max_n: int = 8, min_n: int = 0) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(chosen, vertices=range(1, n + 1))


@st.composite
def outerplanar_graphs(draw, max_n: int = 30, min_n: int = 1) -> Graph:
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    drop = draw(st.sampled_from([0.0, 0.2, 0.5, 0.8]))
    return random_outerplanar(random.Random(seed), n, drop)
