import pytest

from cogkit.types import GenerationConfig


@pytest.fixture
def canonical():
    return GenerationConfig.canonical(seed=0)


@pytest.fixture
def hard():
    return GenerationConfig.hard(seed=0)
