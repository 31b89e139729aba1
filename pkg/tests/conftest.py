import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def d5_nontrivial_sweep():
    """Shared result of the long diameter-5 balanced sweep (slow tests only)."""
    from revca.injectivity import exhaustive_injective
    from revca.rules import to_wolfram

    return sorted(
        to_wolfram(t)
        for t in exhaustive_injective(5, exclude_trivial=True, allow_long=True))
