import pytest

from adderlab import Architecture, DelayModel, build_cia, build_cla_block, build_rca


@pytest.fixture(scope="session")
def unit():
    return DelayModel.unit()


@pytest.fixture(scope="session")
def log2():
    return DelayModel.unit_log2()


@pytest.fixture(scope="session")
def rca4():
    return build_rca(4)


@pytest.fixture(scope="session")
def cla4():
    return build_cla_block(4)


@pytest.fixture(scope="session")
def cia_rca_8_4():
    return build_cia(8, 4, Architecture.RCA)


@pytest.fixture(scope="session")
def cia_cla_8_4():
    return build_cia(8, 4, Architecture.CLA)
