import pytest

from conformity import build_graph, compose_labels


def make_graph(n, edges, labels, name="label"):
    """AttributedGraph whose ids sort in index order, so index i is node i."""
    width = len(str(max(n - 1, 0)))
    ids = [f"v{i:0{width}d}" for i in range(n)]
    attrs = {ids[i]: {name: labels[i]} for i in range(n)}
    return build_graph([(ids[a], ids[b]) for a, b in edges], attrs, (name,))


def make_view(n, edges, labels):
    g = make_graph(n, edges, labels)
    return g, compose_labels(g, ["label"])


@pytest.fixture
def path_abc():
    # A(a) - B(b) - C(a)
    return make_view(3, [(0, 1), (1, 2)], ["a", "b", "a"])


# (criterion, passed, detail) lines recorded by test_acceptance.py
ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
