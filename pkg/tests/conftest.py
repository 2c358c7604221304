import pytest

import helpers


@pytest.fixture
def fig4a():
    return helpers.fig4a()


@pytest.fixture
def fig4b():
    return helpers.fig4b()


@pytest.fixture
def fig4c_parts():
    return [helpers.fig4c_skip1(), helpers.fig4c_skip2(), helpers.fig4c_pump()]
