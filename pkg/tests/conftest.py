import pytest
from hypothesis import settings

from xicube import RealContext

settings.register_profile("suite", max_examples=60, deadline=None,
                          derandomize=True)
settings.load_profile("suite")

ROOT2 = "alg:x^4-2 in [1,2]"
QUARTIC = "alg:x^4-x-1 in [1.2,1.3]"


def pi_prefix_spec(fractional_digits: int = 60) -> str:
    """dec: spec holding the truncation of pi to the given fractional digits."""
    from mpmath import mp

    with mp.workdps(fractional_digits + 30):
        scaled = int(mp.floor(mp.pi * mp.mpf(10) ** fractional_digits))
    digits = str(scaled)
    return "dec:" + digits[0] + "." + digits[1:]


@pytest.fixture(scope="session")
def ctx_root2():
    return RealContext(ROOT2)


@pytest.fixture(scope="session")
def ctx_quartic():
    return RealContext(QUARTIC)


@pytest.fixture(scope="session")
def pi60():
    return pi_prefix_spec(60)
