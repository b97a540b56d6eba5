import pytest

from netcoop.link_budget import Geometry, RadioParams, dbm_to_watt

# 900 MHz / 1 MHz reference set behind the frozen worked-example values.
NARROWBAND_RADIO = RadioParams(f_c=900e6, B_c=1e6, f_s=2.4e9, B_s=1e6, N0=dbm_to_watt(-174.0))


@pytest.fixture
def example_radio():
    return NARROWBAND_RADIO


@pytest.fixture
def default_geo():
    return Geometry(d_1b=1000.0, d_2b=1000.0, d_12=20.0)


# Acceptance outcomes, filled by tests/test_acceptance.py and printed at the end.
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
