import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from virasoro.core import FreeVector

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

scalars = st.fractions(min_value=-8, max_value=8, max_denominator=12)
indices = st.integers(min_value=-6, max_value=6)


@st.composite
def free_vectors(draw, max_terms=4, index_bound=6):
    pairs = draw(st.lists(
        st.tuples(st.integers(-index_bound, index_bound), scalars),
        max_size=max_terms))
    return FreeVector(pairs)


@st.composite
def one_cochain_values(draw, window=6, max_terms=4):
    pairs = draw(st.lists(
        st.tuples(st.integers(-window, window), scalars), max_size=max_terms))
    return dict(pairs)


partitions = st.lists(st.integers(min_value=1, max_value=5), max_size=4).map(
    lambda parts: tuple(sorted(parts, reverse=True)))
