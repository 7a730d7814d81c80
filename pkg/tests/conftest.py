import pytest

from meesgen import Spectrum, build_system


@pytest.fixture(scope="session")
def reference_system():
    """The 3x4 reference system with spectra {0,2,4} and {0,1,6,9}."""
    return build_system(Spectrum((0, 2, 4)), Spectrum((0, 1, 6, 9)))


@pytest.fixture(scope="session")
def two_qubit_system():
    return build_system(Spectrum((0, 1)), Spectrum((0, 1)))
