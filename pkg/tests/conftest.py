from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from frobtrace import PolyRing, ext_monogenic, ext_presented

settings.register_profile(
    "frobtrace",
    max_examples=100,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("frobtrace")


def double_cover():
    """F_3[y] -> F_3[x], y = x^2."""
    R = PolyRing.make(3, "y")
    S = PolyRing.make(3, "x")
    return ext_monogenic(R, "T^2-y", S, {"T": "x", "y": "x^2"})


def wild_cover():
    """F_2[t] -> F_2[x], t = x^2 + x^5."""
    R = PolyRing.make(2, "t")
    S = PolyRing.make(2, "x")
    return ext_monogenic(R, "T^5+T^2+t", S, {"T": "x", "t": "x^2+x^5"})


def kummer_cover(p: int = 5, n: int = 3):
    R = PolyRing.make(p, "y")
    S = PolyRing.make(p, "x")
    return ext_monogenic(R, f"T^{n}-y", S, {"T": "x", "y": f"x^{n}"})


D4_EQUATION = "z^2+x*y*z+x*y^2+x^2*y"


def d4_cover():
    A = PolyRing.make(2, "u,v,x,y,z")
    relations = [D4_EQUATION, "u^2+x*u+x", "v^2+y*v+y", "z+x*v+y*u"]
    return ext_presented(A, relations, ["1", "u"], ["x", "y", "z"])


@pytest.fixture(scope="session")
def yx2():
    return double_cover()


@pytest.fixture(scope="session")
def nottame1():
    return wild_cover()


@pytest.fixture(scope="session")
def d4():
    return d4_cover()
