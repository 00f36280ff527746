import pytest

from schemeforge.catalogue import CATALOGUE, catalogue_scheme
from schemeforge.schemes import qpolynomial_spectra


@pytest.fixture(scope="session")
def catalogue():
    """All bundled schemes, keyed by id."""
    return {sid: catalogue_scheme(sid) for sid in CATALOGUE}


@pytest.fixture(scope="session")
def catalogue_spectra(catalogue):
    """(Spectra under the first Q-polynomial ordering, all orderings) per id."""
    return {sid: qpolynomial_spectra(s) for sid, s in catalogue.items()}
