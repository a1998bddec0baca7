from fractions import Fraction

from hypothesis import strategies as st

from qalpha.scalar_field import LaurentPoly, QRational


@st.composite
def laurent_polys(draw, nonzero=False, max_terms=4):
    coeffs = draw(
        st.dictionaries(st.integers(-4, 4), st.integers(-5, 5).filter(bool), min_size=1 if nonzero else 0, max_size=max_terms)
    )
    return LaurentPoly(coeffs)


@st.composite
def qrationals(draw):
    num = draw(laurent_polys())
    den = draw(laurent_polys(nonzero=True))
    return QRational(num, den)


nonzero_qrationals = qrationals().filter(bool)
small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
generic_q = st.sampled_from([Fraction(2), Fraction(3), Fraction(-2), Fraction(1, 2), Fraction(5, 3)])


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
