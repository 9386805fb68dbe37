"""Base library tests
"""
import pytest

from linkedgrass import create_configuration
from linkedgrass.dvr import LatticeConfiguration
from linkedgrass.types import ComponentLabel, Decomposition, PairProfile, StrataTuple
from linkedgrass.util import BUDGET_ENV_VAR, DEFAULT_BUDGET, get_budget, get_callable


def test_factory_instantiates_exponents_configuration():
    configuration = create_configuration('exponents', {'p': 3, 'exponents': [[0, 0], [1, 0]]})
    assert isinstance(configuration, LatticeConfiguration)
    assert configuration.p == 3


def test_factory_instantiates_tree_configuration():
    configuration = create_configuration('tree', {'p': 2, 'edges': [[0, 1]]})
    assert len(configuration) == 2


def test_get_callable_needs_a_module():
    with pytest.raises(ValueError):
        get_callable('next_prime')


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV_VAR, '123')
    assert get_budget() == 123
    assert get_budget(7) == 7


def test_budget_default(monkeypatch):
    monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
    assert get_budget() == DEFAULT_BUDGET
    monkeypatch.setenv(BUDGET_ENV_VAR, 'lots')
    with pytest.raises(ValueError):
        get_budget()


def test_integer_labels():
    first = StrataTuple.from_sequence([(1, 0), (0, 1)], [2, 5])
    assert first.as_tuple() == (5, 2)
    assert first.to_dict() == {'0->1': 5, '1->0': 2}
    assert first == StrataTuple({(0, 1): 5, (1, 0): 2})
    assert first != ComponentLabel({(0, 1): 5, (1, 0): 2})
    assert len({first, StrataTuple({(0, 1): 5, (1, 0): 2})}) == 1


def test_decomposition_summands():
    decomposition = Decomposition({0: 1, 1: 0}, {(0, 1): 0, (1, 0): 2})
    assert not decomposition.is_projective
    assert decomposition.summands() == [('P', 0, 1), ('R', (1, 0), 2)]
    assert Decomposition({0: 1}, {}).is_projective


def test_pair_profile():
    profile = PairProfile([3, 1, -2], None)
    assert profile.spread == 5
    assert profile == PairProfile([3, 1, -2], 'another basis')
