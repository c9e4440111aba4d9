import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cofree.exactalg import QQ, ZZ  # noqa: E402
from cofree.gentree import from_precoalgebra  # noqa: E402

import oracles  # noqa: E402

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def sigma_g():
    """Group-like tree over Z: every label (2,1), arity 1."""
    P, phi = oracles.grouplike(ZZ, 2)
    return from_precoalgebra(P, phi, P.basis(0))


@pytest.fixture
def sigma_g_q():
    P, phi = oracles.grouplike(QQ, 2)
    return from_precoalgebra(P, phi, P.basis(0))


@pytest.fixture
def pnc():
    return oracles.p_nc(ZZ)


@pytest.fixture
def sigma_nc(pnc):
    P, phi = pnc
    return from_precoalgebra(P, phi, P.basis(0))
