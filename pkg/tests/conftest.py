import pytest

from z2actions import fileio


@pytest.fixture
def sample():
    """Load a bundled sample file by name."""

    def load(name):
        return fileio.load_any(fileio.fixture_path(name))

    return load


def sample_fixed_data(name):
    return fileio.load_fixed_data(fileio.fixture_path(name))


def vertex_strings(D):
    return [S.to_strings() for S in D.multisets]
