import pytest

from linesurf.catalog import IncidenceProfile, fermat_lines
from linesurf.incidence import scan_arrangement


@pytest.fixture(scope="session")
def fermat_arrs():
    """Explicit Fermat arrangements for the degrees the suite exercises."""
    return {n: fermat_lines(n) for n in (3, 4, 5, 6, 7, 8)}


@pytest.fixture(scope="session")
def fermat_scans(fermat_arrs):
    return {n: scan_arrangement(arr) for n, arr in fermat_arrs.items()}


@pytest.fixture(scope="session")
def fermat_brute_profiles(fermat_arrs, fermat_scans):
    """Profiles derived from the geometric scan, not from closed formulas."""
    return {
        n: IncidenceProfile(n=n, d=fermat_arrs[n].d, t=fermat_scans[n].tally())
        for n in fermat_arrs
    }
