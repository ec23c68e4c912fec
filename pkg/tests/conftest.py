import os

from hypothesis import HealthCheck, assume, settings, strategies as st

from permlabel.graph import component_blocks, from_permutation, to_permutation

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=2000, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIG3 = [1, 8, 3, 2, 6, 4, 7, 5]


@st.composite
def permutations(draw, min_size=1, max_size=12):
    n = draw(st.integers(min_size, max_size))
    return draw(st.permutations(list(range(1, n + 1))))


@st.composite
def connected_permutations(draw, min_size=2, max_size=14):
    """The largest component of a random permutation, renumbered."""
    pi = draw(permutations(min_size, max_size))
    block = component_blocks(from_permutation(pi))[0]
    assume(block.size >= min_size)
    return to_permutation(block.points)
