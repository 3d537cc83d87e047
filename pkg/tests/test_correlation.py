import numpy as np
import pandas as pd
import pytest

from backbone.correlation import (
    average_correlation_matrices,
    correlation_labels,
    score_correlation_matrix,
)
from backbone.errors import InvalidParameterError, UnknownMethodError


def test_labels_append_references():
    assert correlation_labels(["JS", "tri"]) == ["js", "tri", "mod"]
    assert correlation_labels(["js"], include_references=False) == ["js"]


def test_same_score_correlates_perfectly(gnp_small):
    matrix = score_correlation_matrix(gnp_small, ["tri", "tri"], include_references=False)
    assert np.allclose(matrix.to_numpy(), 1.0)


def test_matrix_is_symmetric_with_unit_diagonal(gnp_small):
    matrix = score_correlation_matrix(gnp_small, ["js", "ld", "local:re"], seed=2)
    assert list(matrix.columns) == ["js", "ld", "local:re", "mod", "tri"]
    values = matrix.to_numpy()
    assert np.allclose(values, values.T, equal_nan=True)
    assert np.all(np.diag(values) == 1.0)
    assert np.all((values >= -1.0) & (values <= 1.0))


def test_jaccard_follows_triangles(gnp_small):
    matrix = score_correlation_matrix(gnp_small, ["js", "tri"], include_references=False)
    assert matrix.loc["js", "tri"] > 0.5


def test_constant_score_gives_missing_cells(star4):
    matrix = score_correlation_matrix(star4, ["re", "tri"], include_references=False)
    assert matrix.loc["re", "re"] == 1.0
    assert np.isnan(matrix.loc["tri", "tri"])
    assert np.isnan(matrix.loc["re", "tri"])


def test_matrix_needs_two_scores(triangle):
    with pytest.raises(InvalidParameterError):
        score_correlation_matrix(triangle, ["js"], include_references=False)


def test_unknown_tag(triangle):
    with pytest.raises(UnknownMethodError):
        score_correlation_matrix(triangle, ["nope"])


def test_average_ignores_missing_cells():
    labels = ["a", "b"]
    first = pd.DataFrame([[1.0, 0.2], [0.2, 1.0]], index=labels, columns=labels)
    second = pd.DataFrame([[1.0, np.nan], [np.nan, np.nan]], index=labels, columns=labels)
    mean = average_correlation_matrices([first, second])
    assert mean.loc["a", "b"] == pytest.approx(0.2)
    assert mean.loc["b", "b"] == 1.0
    third = pd.DataFrame([[1.0, 0.6], [0.6, 1.0]], index=labels, columns=labels)
    assert average_correlation_matrices([first, third]).loc["b", "a"] == pytest.approx(0.4)


def test_average_of_nothing():
    with pytest.raises(InvalidParameterError):
        average_correlation_matrices([])
