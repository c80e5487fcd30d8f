from fractions import Fraction

import pytest

from entitled_cuts.model import Instance, Valuation


def pw(breakpoints: str, densities: str) -> Valuation:
    """Compact piecewise-constant valuation builder for tests:
    pw("0 1/2 1", "2 0") is density 2 on [0,1/2] and 0 on [1/2,1]."""
    return Valuation(
        tuple(Fraction(tok) for tok in breakpoints.split()),
        tuple(Fraction(tok) for tok in densities.split()),
    )


def make_instance(valuations, entitlements, topology="interval") -> Instance:
    return Instance(
        topology,
        tuple(valuations),
        tuple(Fraction(t) for t in entitlements),
    )


@pytest.fixture
def uniform() -> Valuation:
    return Valuation.uniform()
