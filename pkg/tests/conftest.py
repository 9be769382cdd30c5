from fractions import Fraction

from hypothesis import settings, strategies as st

from diffseq.diffalg import DiffPoly, ExpDiffPoly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fracs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def monomials(draw, max_order=3, allow_x=True):
    x = draw(st.integers(0, 2)) if allow_x else 0
    exps = draw(st.lists(st.integers(0, 2), min_size=0, max_size=max_order + 1))
    return (x, *exps)


@st.composite
def diffpolys(draw, max_terms=4, max_order=3, allow_x=True):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        m = draw(monomials(max_order, allow_x))
        terms[m] = terms.get(m, 0) + draw(small_fracs)
    return DiffPoly(terms)


@st.composite
def exppolys(draw):
    levels = draw(st.dictionaries(st.integers(-2, 2), diffpolys(max_terms=3), max_size=3))
    return ExpDiffPoly(levels)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
