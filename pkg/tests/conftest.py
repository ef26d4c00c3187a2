import pytest

from prismcalc.core.cache import computation_cache
from prismcalc.models.ainf import PerfectoidModel
from prismcalc.services.sampling import make_rng


@pytest.fixture
def rng():
    return make_rng(1234)


@pytest.fixture
def fp2():
    return PerfectoidModel.fp(2, 12)


@pytest.fixture
def charp2():
    return PerfectoidModel.char_p(2, N=6, K=3, M=64)


@pytest.fixture
def mixed2():
    return PerfectoidModel.mixed(2, N=3, K=2, M=64)


@pytest.fixture(autouse=True, scope="session")
def _fresh_cache():
    computation_cache.clear()
    yield
    computation_cache.clear()
