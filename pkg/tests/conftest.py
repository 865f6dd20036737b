"""
Shared fixtures: fields, group algebras and the Sweedler and Taft data
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from app.services.biproduct import build_biproduct  # noqa: E402
from app.services.exactla import Field  # noqa: E402
from app.services.hopfcore import group_algebra  # noqa: E402
from app.services.nichols import diagonal_yd, nichols_truncate  # noqa: E402
from app.services.twist import GroupTwistDatum, build_group_datum  # noqa: E402


@pytest.fixture(scope="session")
def Q():
    return Field.rationals()


@pytest.fixture(scope="session")
def F7():
    return Field.prime(7)


@pytest.fixture(scope="session")
def z2(Q):
    return group_algebra([2], Q)


@pytest.fixture(scope="session")
def z3_f7(F7):
    return group_algebra([3], F7)


@pytest.fixture(scope="session")
def sweedler_V(z2):
    """x in degree g with g·x = -x."""
    return diagonal_yd(z2, [(1,)], [(-1,)], ["x"])


@pytest.fixture(scope="session")
def sweedler_nichols(sweedler_V):
    return nichols_truncate(sweedler_V.module, 6)


@pytest.fixture(scope="session")
def sweedler(sweedler_nichols, z2):
    return build_biproduct(sweedler_nichols.algebra, z2)


@pytest.fixture(scope="session")
def taft_V(z3_f7):
    return diagonal_yd(z3_f7, [(1,)], [(2,)], ["x"])


@pytest.fixture(scope="session")
def taft_nichols(taft_V):
    return nichols_truncate(taft_V.module, 6)


@pytest.fixture(scope="session")
def taft(taft_nichols, z3_f7):
    return build_biproduct(taft_nichols.algebra, z3_f7)


def _sweedler_group_datum(field, phi=-1, lam=1) -> GroupTwistDatum:
    return GroupTwistDatum(
        field=field,
        lambda_orders=(2,),
        gamma_orders=(2,),
        w_grades=((1,),),
        w_characters=((-1,),),
        v_grades=((1,),),
        v_characters=((-1,),),
        phi=((phi,),),
        s=(0,),
        lambdas=(lam,),
    )


@pytest.fixture(scope="session")
def sweedler_datum(Q):
    return build_group_datum(_sweedler_group_datum(Q), cap=6)


@pytest.fixture(scope="session")
def taft_group_datum(F7):
    return GroupTwistDatum(
        field=F7,
        lambda_orders=(3,),
        gamma_orders=(3,),
        w_grades=((1,),),
        w_characters=((4,),),
        v_grades=((1,),),
        v_characters=((2,),),
        phi=((4,),),
        s=(0,),
        lambdas=(1,),
    )


@pytest.fixture(scope="session")
def make_sweedler_datum():
    """Factory for the Sweedler group datum with a chosen φ(z)(g) and λ."""
    return _sweedler_group_datum
