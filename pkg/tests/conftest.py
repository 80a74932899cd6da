import pytest
from hypothesis import settings

from braidfol.braid_core import parse_braid

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

WORKED = "2 1 3 2 3 3 2 1 3 2 3 3 3 2 3 1 2 3 3 2 3 3 3 2 3 3 2"
SMALL = "1 2^2 1^2 2"
FAMILY_HEAD = "2 1 3 2 3 3 2 1 3 2 3 3 3 2 3 1 2 3 3 2 3"
FAMILY_TAIL = "3 3 2 3 3 2"


def family_standard_word(m: int) -> str:
    return " ".join([FAMILY_HEAD] + [FAMILY_TAIL] * m)


@pytest.fixture
def worked():
    return parse_braid(WORKED)


@pytest.fixture
def small():
    return parse_braid(SMALL)
