import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def rationals(draw, lo=-8, hi=8, max_den=16):
    den = draw(st.integers(1, max_den))
    num = draw(st.integers(lo * den, hi * den))
    return Fraction(num, den)


@st.composite
def raw_intervals(draw, lo=-8, hi=8, max_den=16, max_size=6):
    """A list of (lo, hi) pairs, possibly overlapping or adjacent."""
    n = draw(st.integers(0, max_size))
    out = []
    for _ in range(n):
        a = draw(rationals(lo, hi, max_den))
        b = draw(rationals(lo, hi, max_den))
        if a != b:
            out.append((min(a, b), max(a, b)))
    return out


@st.composite
def unit_intervals(draw, max_den=32, max_size=5):
    return draw(raw_intervals(0, 1, max_den, max_size))


# -- acceptance summary -------------------------------------------------------

_acceptance: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion a test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance.setdefault(marker.args[0], []).append((marker.args[1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        parts = _acceptance[number]
        failed = list(dict.fromkeys(label for label, outcome in parts if outcome != "passed"))
        status = "FAIL" if failed else "PASS"
        labels = "; ".join(dict.fromkeys(label for label, _ in parts))
        line = f"criterion {number:2d}: {status}  {labels}"
        if failed:
            line += "  [failed: " + "; ".join(failed) + "]"
        terminalreporter.write_line(line)
