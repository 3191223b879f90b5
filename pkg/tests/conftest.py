from fractions import Fraction

from hypothesis import settings, strategies as st

from localplucker.exact import BiPoly, GaussianRational

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_fraction = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))
gaussian = st.builds(GaussianRational, small_fraction, small_fraction)
nonzero_gaussian = gaussian.filter(bool)


def bipolys(max_deg: int = 3, max_terms: int = 5, real: bool = False):
    coeff = st.builds(GaussianRational, small_fraction) if real else gaussian
    key = st.tuples(st.integers(0, max_deg), st.integers(0, max_deg))
    return st.dictionaries(key, coeff, max_size=max_terms).map(BiPoly)


def zpolys(max_deg: int = 3):
    """Polynomials in z alone."""
    return st.lists(gaussian, min_size=1, max_size=max_deg + 1).map(
        lambda cs: BiPoly({(k, 0): c for k, c in enumerate(cs) if c}))


nonzero_bipolys = bipolys().filter(lambda p: not p.is_zero())

# acceptance criteria register one line each here; printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
