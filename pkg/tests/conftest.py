from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from leibniz_lab import GF, QQ, QQI, Matrix
from leibniz_lab.fields import GaussianRational

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ALGEBRAS = Path(__file__).resolve().parent.parent / "algebras"

small_int = st.integers(min_value=-3, max_value=3)
rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
gaussians = st.builds(GaussianRational, rationals, rationals)


def matrices(field, n, elements=None):
    el = elements if elements is not None else small_int.map(field.coerce)
    return st.lists(st.lists(el, min_size=n, max_size=n), min_size=n, max_size=n).map(
        lambda rows: Matrix.from_rows(field, rows))


@pytest.fixture
def algebras_dir():
    return ALGEBRAS


# -- acceptance summary ----------------------------------------------------------------

_criteria: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _criteria.setdefault(marker.args[0], []).append((item.name, rep.outcome, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        runs = _criteria[n]
        ok = all(outcome == "passed" for _, outcome, _ in runs)
        elapsed = sum(d for _, _, d in runs)
        failed = [name for name, outcome, _ in runs if outcome != "passed"]
        note = f"  failed: {', '.join(failed)}" if failed else ""
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s){note}")
