import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from invdepth.corpus import corpus
from invdepth.polynomial import Polynomial

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def groups():
    return corpus()


@st.composite
def polynomials(draw, n, p, max_degree=3, max_terms=5, homogeneous_degree=None):
    k = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(k):
        if homogeneous_degree is None:
            exps = tuple(draw(st.integers(0, max_degree)) for _ in range(n))
        else:
            cuts = sorted(draw(st.integers(0, homogeneous_degree)) for _ in range(n - 1))
            bounds = [0] + cuts + [homogeneous_degree]
            exps = tuple(bounds[i + 1] - bounds[i] for i in range(n))
        terms[exps] = (terms.get(exps, 0) + draw(st.integers(1, p - 1))) % p
    return Polynomial(terms, n, p)


@st.composite
def matrices(draw, n, p, rows=None):
    r = n if rows is None else rows
    return [[draw(st.integers(0, p - 1)) for _ in range(n)] for _ in range(r)]


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
