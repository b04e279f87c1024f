import math

import pytest

from moreau import MoreauError
from moreau.calcerror import CalcError, \
                             InfeasibleError, \
                             ValidationError
from moreau.extreal import ExtReal, \
                           INF_TOKEN
from moreau.tolerances import DEFAULT_TOLERANCES, \
                              Tolerances, \
                              resolve


def test_tolerances_defaults_and_override():
    tol = Tolerances(psd_tol=1e-7)
    assert tol.psd_tol == 1e-7
    assert tol.rank_rel_tol == DEFAULT_TOLERANCES.rank_rel_tol
    assert resolve(None) is DEFAULT_TOLERANCES
    assert resolve(tol) is tol
    assert 'psd_tol=1e-07' in str(tol)


@pytest.mark.parametrize('name', ['rank_rel_tol', 'psd_tol', 'value_tol'])
def test_tolerances_reject_non_positive(name):
    with pytest.raises(MoreauError):
        Tolerances(**{name: 0.0})


def test_calc_error_message_and_hierarchy():
    error = ValidationError('glq.py', 'envelope', 'bad r', 'r > 0', '-1', '')
    assert isinstance(error, CalcError)
    assert isinstance(error, MoreauError)
    assert error.error == 'bad r'
    assert str(error).startswith('glq.py: envelope: bad r: expected = r > 0: received = -1')
    assert not isinstance(error, InfeasibleError)


def test_extreal_inf_addition():
    inf = ExtReal.infinity()
    assert (inf + 1.0).tag == inf.tag
    assert not (inf + ExtReal(2.0)).is_finite
    assert not (inf - inf).is_finite
    assert (ExtReal(2.5) + 1).value == 3.5
    with pytest.raises(MoreauError):
        ExtReal(1.0) - inf


def test_extreal_rejects_nan_and_minus_infinity():
    with pytest.raises(MoreauError):
        ExtReal(float('nan'))
    with pytest.raises(MoreauError):
        ExtReal(-math.inf)


def test_extreal_ordering_and_scaling():
    inf = ExtReal.infinity()
    assert ExtReal(1.0) < inf
    assert ExtReal(3.0) <= 3.0
    assert inf == ExtReal(math.inf)
    assert (0.0 * inf).value == 0.0
    assert (2.0 * ExtReal(1.5)).value == 3.0
    with pytest.raises(MoreauError):
        -1.0 * ExtReal(1.0)


def test_extreal_json_and_closeness():
    assert ExtReal.infinity().to_json() == INF_TOKEN
    assert ExtReal(0.5).to_json() == 0.5
    assert str(ExtReal.infinity()) == 'inf'
    assert ExtReal.infinity().isclose(ExtReal.infinity())
    assert not ExtReal(1.0).isclose(ExtReal.infinity())
    assert ExtReal(1.0).isclose(1.0 + 1e-12)
