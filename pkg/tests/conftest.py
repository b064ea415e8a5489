import pytest

from fig8cable.numerics import PrecisionContext


@pytest.fixture(scope="session")
def ctx() -> PrecisionContext:
    return PrecisionContext()
