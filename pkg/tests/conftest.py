import pytest

from dataset.embedded import embedded_datasets, load_embedded


@pytest.fixture(scope="session")
def datasets():
    return embedded_datasets()


@pytest.fixture(scope="session")
def men_prelims():
    return load_embedded("men-prelims")


@pytest.fixture(scope="session")
def men_finals():
    return load_embedded("men-finals")


@pytest.fixture(scope="session")
def women_prelims():
    return load_embedded("women-prelims")


@pytest.fixture(scope="session")
def women_finals():
    return load_embedded("women-finals")
