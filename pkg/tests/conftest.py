from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from pnspace.ddf import FiniteStep
from pnspace.tnorm import Drastic, HalfProductJump, Lukasiewicz, Min, Product

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

BUILTINS = [Min, Product, Lukasiewicz, Drastic, HalfProductJump]


def unit_fractions(max_den=64):
    """Rationals in [0, 1], with the endpoints drawn often."""
    inner = st.builds(lambda d, n: Fraction(n % (d + 1), d),
                      st.integers(1, max_den), st.integers(0, 10 ** 6))
    return st.one_of(st.sampled_from([Fraction(0), Fraction(1)]), inner)


@st.composite
def finite_steps(draw, max_jumps=6, horizon=4, den=16):
    slots = draw(st.lists(st.integers(0, horizon * den), min_size=1, max_size=max_jumps, unique=True))
    values = draw(st.lists(st.integers(1, den), min_size=len(slots), max_size=len(slots)))
    xs = sorted(slots)
    vs = sorted(values)
    return FiniteStep(tuple((Fraction(x, den), Fraction(v, den)) for x, v in zip(xs, vs)))


@pytest.fixture(params=BUILTINS, ids=lambda T: T.name)
def builtin(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    lines = [value for reports in terminalreporter.stats.values() for rep in reports
             if getattr(rep, "when", None) == "call"
             for key, value in rep.user_properties if key == "criterion"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
