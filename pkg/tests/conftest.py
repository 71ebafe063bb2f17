import pytest

from zkhomology.corpus import build_action, entry, regular_entries
from zkhomology.exact import GF, QQ

ALL_FIELDS = (QQ, GF(2), GF(3), GF(5))


@pytest.fixture(scope="session")
def fields():
    return ALL_FIELDS


@pytest.fixture(scope="session")
def corpus_actions():
    """name -> validated action, for every regular corpus entry."""
    return {e.name: build_action(e) for e in regular_entries()}


@pytest.fixture(scope="session")
def corpus_expected():
    return {e.name: e.expected_betti for e in regular_entries()}


@pytest.fixture(scope="session")
def antipodal_action():
    return build_action(entry("cycle4_antipodal"))


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance-gate criteria")
