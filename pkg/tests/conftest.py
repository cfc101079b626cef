import pathlib

import pytest
from hypothesis import settings

from multicurve.market_data import load_quotes

settings.register_profile("deterministic", derandomize=True, max_examples=100)
settings.load_profile("deterministic")

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def table1_quotes():
    return load_quotes(str(DATA / "table1_quotes.csv"))


@pytest.fixture(scope="session")
def data_dir():
    return DATA
