from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from tgrass.scalars import CycScalar

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=5)
scalars = st.tuples(rationals, rationals, rationals, rationals).map(CycScalar)
nonzero_scalars = scalars.filter(bool)


@pytest.fixture(autouse=True)
def _default_convention(monkeypatch):
    # tests must not depend on the caller's environment
    monkeypatch.delenv("TG_DEFAULT_CONVENTION", raising=False)
