import numpy as np
import pytest

from src.funcspace.families import Figure1
from src.funcspace.models import Constant, PiecewiseLinear, PowerComplement, UpperStep


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def line():
    """1 - x sur [0, 1]."""
    return PiecewiseLinear(T=1.0, points=((0.0, 1.0), (1.0, 0.0)))


@pytest.fixture
def zero():
    return Constant(a=0.0, T=1.0)


@pytest.fixture
def figure1():
    return Figure1(S=1.0, T=1.0)


@pytest.fixture
def step_half():
    return UpperStep(T=1.0, x0=0.5, high=1.0, low=0.0)


@pytest.fixture
def all_variants(line, step_half):
    """Un représentant de chaque variante de FunctionModel."""
    return [
        line,
        PowerComplement(n=3),
        Constant(a=2.0, T=10.0),
        step_half,
        PiecewiseLinear(
            T=2.0,
            points=((0.0, 3.0), (1.0, 1.0), (2.0, 0.0)),
            jumps=({"x": 1.0, "left": 2.0, "right": 1.0},),
        ),
    ]
