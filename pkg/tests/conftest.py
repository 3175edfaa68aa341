import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from quatsylv import QuatMatrix

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ALL_KINDS = ("sys01", "sys02", "sys03", "sys04", "sys05", "special01", "special02", "special03")


def quat_matrices(min_dim=0, max_dim=4, rows=None, cols=None, elements=None):
    """Strategy for quaternion matrices with small integer or float entries."""
    if elements is None:
        elements = st.integers(-3, 3).map(float)
    dims = st.tuples(
        st.just(rows) if rows is not None else st.integers(min_dim, max_dim),
        st.just(cols) if cols is not None else st.integers(min_dim, max_dim),
    )
    return dims.flatmap(
        lambda rc: hnp.arrays(np.float64, (rc[0], rc[1], 4), elements=elements)
    ).map(QuatMatrix)


def fro_scale(*mats):
    return 1.0 + max((m.norm() for m in mats), default=0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# one line per acceptance criterion, printed after the test run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
