import logging
import random

import pytest

from rankforge.gfqm import Field
from rankforge.rsd import CodeParams, make_instance


@pytest.fixture(autouse=True)
def _quiet_generator():
    # many regimes sit past half the GV radius on purpose
    logging.getLogger("rankforge.rsd").setLevel(logging.ERROR)
    yield
    logging.getLogger("rankforge.rsd").setLevel(logging.NOTSET)


def instance(q, m, n, k, r, seed, mode="random"):
    return make_instance(CodeParams(n, k, r, Field(q, m)), random.Random(f"{seed}/{q}/{m}/{n}/{k}/{r}"), mode)
