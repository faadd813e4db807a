import pytest

from depminer.dataset import Dataset


@pytest.fixture
def toy_transactions():
    """Ten rows; "a" follows "x" closely and avoids "y"."""
    return [
        ["x", "a"],
        ["x", "a", "z"],
        ["x", "a"],
        ["x", "a", "z"],
        ["a", "y"],
        ["y"],
        ["y", "z"],
        ["y"],
        ["z"],
        [],
    ]


@pytest.fixture
def toy_dataset(toy_transactions):
    return Dataset.from_transactions(toy_transactions)


@pytest.fixture
def toy_fimi(tmp_path):
    """FIMI version of a small data set with items 1..4."""
    path = tmp_path / "toy.dat"
    path.write_text(
        "1 2\n"
        "1 2 4\n"
        "1 2\n"
        "1 2 4\n"
        "2 3\n"
        "3\n"
        "3 4\n"
        "3\n"
        "4\n"
        "\n"
    )
    return path


@pytest.fixture
def toy_csv(tmp_path):
    path = tmp_path / "toy.csv"
    path.write_text(
        "x,a,y,z\n"
        "1,1,0,0\n"
        "1,1,0,1\n"
        "1,1,0,0\n"
        "1,1,0,1\n"
        "0,1,1,0\n"
        "0,0,1,0\n"
        "0,0,1,1\n"
        "0,0,1,0\n"
        "0,0,0,1\n"
        "0,0,0,0\n"
    )
    return path


@pytest.fixture
def witness_dataset():
    """Specializations of x -> a reach both corners of the known-n_xa bound.

    n = 10, a on rows 0-4, x on rows {0, 1, 2, 5, 6}. q keeps exactly the
    rows of x with a, r exactly the rows of x without a.
    """
    rows = {
        "a": {0, 1, 2, 3, 4},
        "x": {0, 1, 2, 5, 6},
        "q": {0, 1, 2},
        "r": {5, 6},
    }
    transactions = [[name for name, members in rows.items() if i in members] for i in range(10)]
    return Dataset.from_transactions(transactions)
