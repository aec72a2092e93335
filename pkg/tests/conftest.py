import pytest

from geofix.groups import cyclic, named_group, symmetric


@pytest.fixture
def C2():
    return cyclic(2)


@pytest.fixture
def C4():
    return cyclic(4)


@pytest.fixture
def S3():
    return symmetric(3)


def subgroup_of_order(G, order):
    from geofix.groups import enumerate_subgroups

    return next(H for H in enumerate_subgroups(G) if H.order == order)


def group(name):
    return named_group(name)


def pytest_terminal_summary(terminalreporter):
    from report import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
