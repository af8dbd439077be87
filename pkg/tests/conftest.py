import pytest

from artifact.graph_of_groups import Edge, Graph, GraphOfGroups
from artifact.groups import Dihedral, Table
from artifact.outbs import build_edge_gog, build_ray_gog


def free_product_2_3() -> GraphOfGroups:
    """Z_2 ∗ Z_3 as an edge of groups with trivial edge group."""
    graph = Graph(["A", "B"], [Edge("e", "~e", "A", "B"), Edge("~e", "e", "B", "A")])
    trivial = Table.cyclic(1)
    return GraphOfGroups(
        graph,
        {"A": Table.cyclic(2), "B": Table.cyclic(3)},
        {"e": trivial, "~e": trivial},
        {"e": [], "~e": []},
        base="A",
    ).require_valid()


def loop_of_groups() -> GraphOfGroups:
    """An HNN extension of Dihedral(4) identifying ⟨ψ²⟩ with ⟨ι⟩."""
    graph = Graph(["A"], [Edge("t", "~t", "A", "A"), Edge("~t", "t", "A", "A")])
    C = Table.cyclic(2)
    return GraphOfGroups(
        graph,
        {"A": Dihedral(4)},
        {"t": C, "~t": C},
        {"t": [(1, (2, 0))], "~t": [(1, (0, 1))]},
        base="A",
        names={"psi": ("A", (1, 0)), "iota": ("A", (0, 1))},
    ).require_valid()


def collapsible_edge() -> GraphOfGroups:
    """Dihedral(4) ∗_{Dihedral(2)} Dihedral(2): the edge group is all of one endpoint."""
    graph = Graph(["A", "B"], [Edge("e", "~e", "A", "B"), Edge("~e", "e", "B", "A")])
    D = Dihedral(2)
    return GraphOfGroups(
        graph,
        {"A": Dihedral(4), "B": D},
        {"e": D, "~e": D},
        {"e": [((1, 0), (1, 0)), ((0, 1), (0, 1))], "~e": [((1, 0), (2, 0)), ((0, 1), (0, 1))]},
        base="A",
        names={"psi": ("A", (1, 0))},
    ).require_valid()


@pytest.fixture(scope="session")
def edge412():
    return build_edge_gog(4, 12)


@pytest.fixture(scope="session")
def ray24():
    return build_ray_gog(2, 4, 10)


@pytest.fixture(scope="session")
def ray412():
    return build_ray_gog(4, 12, 4)


@pytest.fixture(scope="session")
def free23():
    return free_product_2_3()


@pytest.fixture(scope="session")
def loop_gog():
    return loop_of_groups()


# ----- acceptance summary ------------------------------------------------------

_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome != "passed":
        _ACCEPTANCE.setdefault(name, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        number, _, title = name.removeprefix("test_criterion_").partition("_")
        terminalreporter.write_line(f"criterion {int(number):2d} {_ACCEPTANCE[name]}  {title.replace('_', ' ')}")
