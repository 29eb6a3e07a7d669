import pytest

from hocohom.fixtures import load_fixture
from hocohom.periods import IntegrationConfig, verify_suite


@pytest.fixture(scope="session")
def level11():
    return load_fixture("gamma0_11")


@pytest.fixture(scope="session")
def group11(level11):
    return level11.group_fixture()


@pytest.fixture(scope="session")
def form11(level11):
    return level11.cusp_form()


@pytest.fixture(scope="session")
def suite11(group11, form11):
    return verify_suite(group11, form11, 2, IntegrationConfig())


@pytest.fixture(scope="session")
def checks11(suite11):
    return {c.name: c for c in suite11.checks}
