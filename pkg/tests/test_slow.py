"""n = 6 checks.  A few seconds each; run by default, skip with -m "not slow"."""

import pytest

from regperm.bip import bip, s_nk, wagner
from regperm.errors import CapExceeded
from regperm.latbuild import dual, find_isomorphism

pytestmark = pytest.mark.slow


def test_bip6_size():
    assert bip(6).size == 133210 == wagner(6)


def test_bip7_needs_opt_in():
    with pytest.raises(CapExceeded):
        bip(7)


@pytest.mark.parametrize("k, size", [(0, 13348), (1, 12304), (2, 12246)])
def test_s6_sizes(k, size):
    assert s_nk(6, k).size == size
    assert s_nk(6, 5 - k, filter_check=False).size == size


def test_s6_0_self_dual():
    S = s_nk(6, 0, filter_check=False)
    assert find_isomorphism(S, dual(S), cap=20000) is not None
