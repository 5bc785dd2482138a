import pytest

import common


@pytest.fixture(scope="session")
def a3_qp():
    return common.problem("a3_cyclic").qp


@pytest.fixture(scope="session")
def a3_algebra():
    return common.algebra("a3_cyclic")


@pytest.fixture(scope="session")
def a3_catalog():
    return common.catalog("a3_cyclic")


@pytest.fixture(scope="session")
def a5_qp():
    return common.problem("a5_example").qp


@pytest.fixture(scope="session")
def a5_algebra():
    return common.algebra("a5_example")


@pytest.fixture(scope="session")
def a5_catalog():
    return common.catalog("a5_example")


@pytest.fixture(scope="session")
def d4_qp():
    return common.problem("d4_cyclic").qp


@pytest.fixture(scope="session")
def d4_algebra():
    return common.algebra("d4_cyclic")


@pytest.fixture(scope="session")
def d4_catalog():
    return common.catalog("d4_cyclic")


@pytest.fixture(scope="session")
def a9_qp():
    return common.problem("a9_example").qp


@pytest.fixture(scope="session")
def a9_catalog():
    return common.catalog("a9_example")


@pytest.fixture(scope="session")
def nakayama_algebra():
    return common.nakayama_algebra()


@pytest.fixture(scope="session")
def nakayama_catalog():
    return common.nakayama_catalog()
