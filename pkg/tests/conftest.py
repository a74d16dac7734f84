import pytest

from nilpotentizer import catalog


@pytest.fixture(scope="session")
def s3():
    return catalog.get_group("S3")


@pytest.fixture(scope="session")
def s4():
    return catalog.get_group("S4")


@pytest.fixture(scope="session")
def a5():
    return catalog.get_group("A5")


@pytest.fixture(scope="session")
def d8():
    return catalog.get_group("D8")


@pytest.fixture(scope="session")
def q8():
    return catalog.get_group("Q8")


@pytest.fixture(scope="session")
def sl25():
    return catalog.get_group("SL(2,5)")


def label_index(G, label):
    """Element index of a cycle-notation label."""
    return G.labels.index(label)
