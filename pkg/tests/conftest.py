import pytest

from app.config import PrecisionConfig
from app.core.utils.logger import setup_logging


@pytest.fixture(scope="session", autouse=True)
def _logging():
    setup_logging("DEBUG")


@pytest.fixture(scope="session")
def config() -> PrecisionConfig:
    return PrecisionConfig(dps=60)


@pytest.fixture(scope="session")
def ctx(config):
    return config.context


def close(ctx, a, b, rel):
    """ |a - b| <= rel * |b| in the context `ctx` """
    return abs(ctx.mpc(a) - ctx.mpc(b)) <= rel * abs(ctx.mpc(b))
