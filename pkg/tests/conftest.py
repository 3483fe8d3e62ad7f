import pytest
from hypothesis import HealthCheck, settings

from hodgespec.generators import complete_tripartite, latin_tripartite, linial_meshulam, named

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            _CRITERIA.append((*value, report.outcome))


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", m.args))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(_CRITERIA):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {verdict}  {title}")


@pytest.fixture
def octahedron():
    return named("octahedron")


@pytest.fixture
def single_triangle():
    return named("single-triangle")


@pytest.fixture
def hollow_triangle():
    return named("hollow-triangle")


@pytest.fixture
def tetra_boundary():
    return named("tetrahedron-boundary")


@pytest.fixture
def torus():
    return named("csaszar-torus")


def corpus():
    """Named complexes plus a few seeded random ones."""
    out = {name: named(name) for name in (
        "octahedron", "tetrahedron-boundary", "pentachoron-boundary",
        "hollow-triangle", "single-triangle", "csaszar-torus",
    )}
    out["T333"] = complete_tripartite(3)
    out["latin-4-2"] = latin_tripartite(4, 2, seed=3)
    for seed in range(3):
        out[f"lm-7-{seed}"] = linial_meshulam(7, 0.4, seed)
    return out
