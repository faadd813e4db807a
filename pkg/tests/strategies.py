import random

from hypothesis import strategies as st

from depminer.dataset import Dataset
from depminer.frequency import FrequencyQuad


@st.composite
def legal_quads(draw, max_n=60):
    n = draw(st.integers(min_value=2, max_value=max_n))
    n_a = draw(st.integers(min_value=1, max_value=n - 1))
    n_x = draw(st.integers(min_value=1, max_value=n - 1))
    n_xa = draw(st.integers(min_value=max(0, n_x + n_a - n), max_value=min(n_x, n_a)))
    return FrequencyQuad(n_x, n_xa, n_a, n)


def random_dataset(seed, n, attributes, p=0.4, row_sets="bitmap"):
    """Seeded data set whose attributes are named 0..attributes-1.

    Constant attributes may occur; the miner skips them.
    """
    rng = random.Random(seed)
    transactions = [[a for a in range(attributes) if rng.random() < p] for _ in range(n)]
    return Dataset.from_transactions(transactions, attributes=range(attributes), row_sets=row_sets)
