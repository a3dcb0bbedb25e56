import pytest

from relsheaf.harness import textio


@pytest.fixture(scope="session")
def fx():
    """Load a built-in fixture by name (cached, so objects are shared)."""
    return textio.load_fixture
