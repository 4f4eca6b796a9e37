import random

import pytest
from hypothesis import strategies as st

from thompsonf import IDENTITY, X0, X1, eval_word

GENS = {"x0": X0, "x1": X1, "id": IDENTITY}

binary_words = st.text(alphabet="01", min_size=0, max_size=10)

group_words = st.lists(
    st.tuples(st.sampled_from(("x0", "x1")), st.sampled_from((1, -1))),
    min_size=0,
    max_size=8,
).map(tuple)

elements = group_words.map(lambda w: eval_word(w, GENS))


def random_word_element(rng: random.Random, max_len: int = 12):
    """Non-trivial element as a random word in the generators."""
    while True:
        word = tuple(
            (rng.choice(("x0", "x1")), rng.choice((1, -1)))
            for _ in range(rng.randrange(1, max_len + 1))
        )
        e = eval_word(word, GENS)
        if not e.is_identity():
            return word, e


@pytest.fixture
def rng():
    return random.Random(20240817)
