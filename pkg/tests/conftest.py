import pytest


def pytest_addoption(parser):
    parser.addoption("--run-campaigns", action="store_true", default=False,
                     help="run the word length 8 trap search campaigns")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long running dimension and campaign checks")
    config.addinivalue_line("markers", "campaign: unsymmetric trap campaigns, needs --run-campaigns")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-campaigns"):
        return
    skip = pytest.mark.skip(reason="needs --run-campaigns")
    for item in items:
        if "campaign" in item.keywords:
            item.add_marker(skip)
