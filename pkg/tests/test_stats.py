import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from medianflip import mean, median, quantile

vectors = st.lists(
    st.floats(min_value=-1e6, max_value=1e6, allow_nan=False), min_size=1, max_size=60
)


def test_median_odd():
    assert median([1, 2, 3]) == 2


def test_median_even_takes_upper():
    assert median([0, 0, 1, 1]) == 1
    assert median([3, 1]) == 3


def test_median_half_positive_half_zero_is_positive():
    x = np.array([0.0] * 5 + [0.2] * 5)
    assert median(x) > 0


def test_median_empty_rejected():
    with pytest.raises(ValueError):
        median([])


def test_quantile_examples():
    assert quantile([0, 1, 2, 3], 0.5) == 2
    assert quantile([5], 0.1) == 5
    assert quantile([5], 0.9) == 5


def test_quantile_range_validated():
    with pytest.raises(ValueError):
        quantile([1, 2], 0.0)
    with pytest.raises(ValueError):
        quantile([1, 2], 1.0)


def test_mean_examples():
    assert mean([0, 1]) == 0.5
    assert mean([0.3, 0.3, 0.3]) == pytest.approx(0.3)
    with pytest.raises(ValueError):
        mean([])


@given(vectors)
def test_median_is_an_element(x):
    assert median(x) in x


@given(vectors)
def test_median_permutation_invariant(x):
    rng = np.random.default_rng(0)
    assert median(rng.permutation(x)) == median(x)


@given(vectors, st.integers(min_value=0, max_value=59), st.floats(min_value=0.0, max_value=10.0, allow_nan=False))
def test_median_monotone_in_each_entry(x, i, bump):
    i = i % len(x)
    raised = list(x)
    raised[i] = raised[i] + bump
    assert median(raised) >= median(x)


@given(vectors)
def test_quantile_half_equals_median(x):
    assert quantile(x, 0.5) == median(x)


@given(vectors, st.floats(min_value=0.01, max_value=0.99))
def test_quantile_is_an_element_and_monotone_in_q(x, q):
    assert quantile(x, q) in x
    assert quantile(x, q) <= quantile(x, 0.99)
