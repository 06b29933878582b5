from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

F = Fraction


@st.composite
def rationals(draw, lo=-20, hi=20, max_den=12):
    den = draw(st.integers(1, max_den))
    num = draw(st.integers(lo * den, hi * den))
    return Fraction(num, den)


@st.composite
def rational_vectors(draw, min_size=1, max_size=6, **kw):
    n = draw(st.integers(min_size, max_size))
    return tuple(draw(rationals(**kw)) for _ in range(n))


@st.composite
def weight_vectors(draw, max_r=5, generic=True):
    r = draw(st.integers(1, max_r))
    if generic:
        raw = draw(st.lists(st.integers(1, 60), min_size=r, max_size=r, unique=True))
    else:
        raw = draw(st.lists(st.integers(1, 60), min_size=r, max_size=r))
    raw.sort(reverse=True)
    total = sum(raw)
    return tuple(Fraction(x, total) for x in raw)
