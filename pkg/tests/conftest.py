import mpmath as mp
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=50, deadline=None)
settings.load_profile("default")

mp.mp.dps = 50


# Independent high-precision oracles for the hard limiter (mpmath erf).
def mp_p_plus(d):
    return (1 + mp.erf(mp.mpf(d) / mp.sqrt(2))) / 2


def mp_mean(d):
    return mp.erf(mp.mpf(d) / mp.sqrt(2))


def mp_var(d):
    x = mp.mpf(d) / mp.sqrt(2)
    return mp.erfc(x) * mp.erfc(-x)


def mp_dmean(d):
    return mp.sqrt(2 / mp.pi) * mp.e ** (-(mp.mpf(d) ** 2) / 2)


def mp_fisher(d):
    d = mp.mpf(d)
    return 2 / mp.pi * mp.e ** (-(d**2)) / mp_var(d)


@pytest.fixture
def oracle():
    class Oracle:
        p_plus = staticmethod(mp_p_plus)
        mean = staticmethod(mp_mean)
        var = staticmethod(mp_var)
        dmean = staticmethod(mp_dmean)
        fisher = staticmethod(mp_fisher)

    return Oracle
