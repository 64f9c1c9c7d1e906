from __future__ import annotations

import pytest
from hypothesis import settings

from shellkit.core import FacetFamily, Mode, parse_facets

TOY = "a c d f\na b c f\na b c d e g\nc d e f g\n"
PEEL4_SETS = [["a", "b", "e"], ["d", "f"], ["b", "c", "e"], ["d", "e"]]

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_criteria: dict[str, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion this test decides")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = str(marker.args[0])
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        state = "PASS" if rep.passed else "SKIP" if rep.skipped else "FAIL"
        _criteria.setdefault(label, []).append((item.name, state))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: (int(s.rstrip("abcde")), s)):
        results = _criteria[label]
        states = {s for _, s in results}
        verdict = "FAIL" if "FAIL" in states else "SKIP" if states == {"SKIP"} else "PASS"
        names = ", ".join(name for name, _ in results)
        terminalreporter.write_line(f"criterion {label}: {verdict} ({names})")


@pytest.fixture
def toy() -> FacetFamily:
    return parse_facets(TOY, Mode.SHELLING)


@pytest.fixture
def peel4() -> FacetFamily:
    return FacetFamily.from_sets(PEEL4_SETS, Mode.PEELING)


@pytest.fixture
def toy_file(tmp_path):
    path = tmp_path / "toy.facets"
    path.write_text(TOY)
    return str(path)
