"""Shared strategies and generators for the test suite."""

import itertools
import random

from hypothesis import strategies as st

from zkwedge.scomplex import construct, shifted_closure


@st.composite
def complexes(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(0, 5))
    faces = [draw(st.sets(st.integers(1, n), min_size=1, max_size=n)) for _ in range(k)]
    return construct(n, [sorted(f) for f in faces])


@st.composite
def shifted_complexes(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(1, 4))
    gens = [sorted(draw(st.sets(st.integers(1, n), min_size=1, max_size=n))) for _ in range(k)]
    return shifted_closure(n, gens)


def random_shifted(rng: random.Random, n: int):
    gens = [rng.sample(range(1, n + 1), rng.randint(1, n)) for _ in range(rng.randint(1, 4))]
    return shifted_closure(n, gens)


def random_complex(rng: random.Random, n: int):
    gens = [rng.sample(range(1, n + 1), rng.randint(1, n)) for _ in range(rng.randint(0, 5))]
    return construct(n, gens)


def all_subsets(xs):
    xs = sorted(xs)
    for r in range(len(xs) + 1):
        yield from itertools.combinations(xs, r)


# acceptance summary: test_acceptance records one line per criterion here
ACCEPTANCE_LINES = {}
