"""Shared fixtures: the expensive q-expansions are built once per session."""

import pytest

from tautools.newforms import build_form


@pytest.fixture(scope="session")
def delta12_500k():
    """Weight-12 form to precision 5*10^5 + 1 (covers angle tables at 5*10^5)."""
    return build_form("delta12", 500_001)


@pytest.fixture(scope="session")
def level11_1m():
    """Level-11 form to precision 10^6 + 1 (angle tables and the
    supersingular scan both need the first million coefficients)."""
    return build_form("11a", 1_000_001)


@pytest.fixture(scope="session")
def delta_forms_10k():
    """All six level-1 forms to precision 10^4 + 1, keyed by label."""
    return {
        label: build_form(label, 10_001)
        for label in ("delta12", "delta16", "delta18", "delta20", "delta22", "delta26")
    }
