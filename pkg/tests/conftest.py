import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from graphvote.graph import Graph, prufer_to_edges

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def trees(draw, min_n=2, max_n=9):
    n = draw(st.integers(min_n, max_n))
    seq = draw(st.lists(st.integers(0, n - 1), min_size=max(n - 2, 0), max_size=max(n - 2, 0)))
    return Graph.from_edges(n, prufer_to_edges(seq, n))


@st.composite
def connected_graphs(draw, min_n=2, max_n=9):
    tree = draw(trees(min_n, max_n))
    n = tree.n
    others = [(u, v) for u in range(n) for v in range(u + 1, n) if not tree.has_edge(u, v)]
    extra = draw(st.lists(st.sampled_from(others), unique=True, max_size=len(others))) if others else []
    return Graph.from_edges(n, tree.edges + extra)


# criterion number -> (description, passed), printed at the end of the session
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        desc, ok = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {desc}")
