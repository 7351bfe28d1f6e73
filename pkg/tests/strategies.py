from fractions import Fraction

from hypothesis import strategies as st

from solcryst.matz import Mat2Z

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=30)
radicands = st.integers(min_value=2, max_value=200)


@st.composite
def hyperbolic(draw, trace_max=30, entry_max=40):
    """A random S in SL(2,Z) with 2 < trace <= trace_max."""
    t = draw(st.integers(min_value=3, max_value=trace_max))
    a = draw(st.integers(min_value=-entry_max, max_value=entry_max))
    d = t - a
    bc = a * d - 1
    divisors = [b for b in range(-entry_max, entry_max + 1)
                if b and bc % b == 0 and abs(bc // b) <= entry_max]
    if not divisors:
        # b = 1 always divides; fall back to it even if c is large
        return Mat2Z(a, 1, bc, d)
    b = draw(st.sampled_from(divisors))
    return Mat2Z(a, b, bc // b, d)


gl_letters = st.lists(st.sampled_from(["R", "L", "r", "l", "s"]), min_size=0, max_size=8)
