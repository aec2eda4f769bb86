from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from rfal import Algebra, FuzzySet, Implication, Theory

settings.register_profile(
    "deterministic",
    derandomize=True,
    max_examples=120,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")


def fs(entries=None, **kwargs):
    """Build a fuzzy set from string degrees: fs(p='1/2', q='1')."""
    merged = dict(entries or {})
    merged.update(kwargs)
    return FuzzySet({var: Fraction(d) if isinstance(d, str) else d for var, d in merged.items()})


def imp(antecedent, consequent):
    return Implication(fs(antecedent), fs(consequent))


@pytest.fixture
def worked_lukasiewicz():
    """Two-rule chain whose closure of {p:1} ends at {p:1, q:4/5, r:9/10}."""
    return Theory(
        (imp({"p": "1"}, {"q": "4/5"}), imp({"q": "3/5"}, {"r": "9/10"})),
        Algebra.LUKASIEWICZ,
    )


@pytest.fixture
def worked_product():
    """One-rule theory whose closure of {p:1/4} ends at {p:1/4, q:2/5}."""
    return Theory((imp({"p": "1/2"}, {"q": "4/5"}),), Algebra.PRODUCT)
