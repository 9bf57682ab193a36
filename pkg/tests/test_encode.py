import math

import numpy as np
import pytest

from conftest import make_matrix
from delayboost.dataset import CATEGORICAL, CONTINUOUS, LABEL, Column, Dataset, Schema
from delayboost.encode import (
    EncodingPlan,
    apply_encoding,
    fit_encoding,
    pearson_matrix,
    shuffle_split,
)
from delayboost.errors import (
    DataError,
    MissingCellError,
    NotCategoricalError,
    TooFewRowsError,
    UnknownColumnError,
    UnseenCategoryError,
)

SCHEMA = Schema(
    (
        Column("airport", CATEGORICAL),
        Column("carrier", CATEGORICAL),
        Column("dep", CONTINUOUS),
        Column("y", LABEL),
    ),
    "1",
)


def flights(*rows) -> Dataset:
    return Dataset(SCHEMA, tuple(rows))


BASE = flights(
    ("b", "AA", 930.0, "1"),
    ("a", "AA", 1450.0, "0"),
    ("c", "UA", 700.0, "0"),
)


class TestFitEncoding:
    def test_alphabetical_codes(self):
        plan = fit_encoding(BASE, one_hot=())
        assert plan.categories["airport"] == ("a", "b", "c")
        assert plan.categories["carrier"] == ("AA", "UA")

    def test_single_value(self):
        ds = flights(("x", "AA", 1.0, "1"))
        plan = fit_encoding(ds, one_hot=())
        assert plan.categories["airport"] == ("x",)

    def test_numeric_looking_lexicographic(self):
        ds = flights(("10", "AA", 1.0, "1"), ("2", "AA", 2.0, "0"))
        plan = fit_encoding(ds, one_hot=())
        assert plan.categories["airport"] == ("10", "2")

    def test_unknown_one_hot_column(self):
        with pytest.raises(UnknownColumnError):
            fit_encoding(BASE, one_hot=("bogus",))

    def test_one_hot_must_be_categorical(self):
        with pytest.raises(NotCategoricalError):
            fit_encoding(BASE, one_hot=("dep",))
        with pytest.raises(NotCategoricalError):
            fit_encoding(BASE, one_hot=("y",))

    def test_missing_categorical_cell(self):
        ds = flights((None, "AA", 1.0, "1"))
        with pytest.raises(MissingCellError):
            fit_encoding(ds, one_hot=())

    def test_plan_doc_round_trip(self):
        plan = fit_encoding(BASE, one_hot=("airport",))
        assert EncodingPlan.from_doc(plan.to_doc()) == plan


class TestApplyEncoding:
    def test_one_hot_group_sums_to_one(self):
        plan = fit_encoding(BASE, one_hot=("airport",))
        fm = apply_encoding(BASE, plan)
        assert fm.column_names[:3] == ("airport=a", "airport=b", "airport=c")
        group = fm.values[:, :3]
        assert np.array_equal(group.sum(axis=1), np.ones(3))

    def test_integer_codes(self):
        plan = fit_encoding(BASE, one_hot=())
        fm = apply_encoding(BASE, plan)
        assert fm.column_names == ("airport", "carrier", "dep", )
        assert list(fm.column("airport")) == [1.0, 0.0, 2.0]  # b, a, c

    def test_decode_round_trip(self):
        plan = fit_encoding(BASE, one_hot=())
        fm = apply_encoding(BASE, plan)
        codes = fm.column("airport").astype(int)
        raw = [plan.decode("airport", c) for c in codes]
        assert raw == ["b", "a", "c"]

    def test_continuous_passthrough_and_labels(self):
        plan = fit_encoding(BASE, one_hot=())
        fm = apply_encoding(BASE, plan)
        assert list(fm.column("dep")) == [930.0, 1450.0, 700.0]
        assert list(fm.labels) == [1, 0, 0]

    def test_unseen_category_training_mode(self):
        plan = fit_encoding(BASE, one_hot=("airport",))
        novel = flights(("zz", "AA", 1.0, "0"))
        with pytest.raises(UnseenCategoryError):
            apply_encoding(novel, plan)

    def test_unseen_one_hot_prediction_mode(self):
        plan = fit_encoding(BASE, one_hot=("airport",))
        novel = flights(("zz", "AA", 1.0, "0"))
        fm = apply_encoding(novel, plan, training=False)
        assert np.array_equal(fm.values[0, :3], np.zeros(3))
        assert fm.unseen_categories == 1

    def test_unseen_integer_code_prediction_mode(self):
        plan = fit_encoding(BASE, one_hot=())
        novel = flights(("zz", "AA", 1.0, "0"))
        fm = apply_encoding(novel, plan, training=False)
        assert fm.column("airport")[0] == -1.0
        assert fm.unseen_categories == 1

    def test_missing_label_training_mode(self):
        ds = flights(("a", "AA", 1.0, None))
        plan = fit_encoding(BASE, one_hot=())
        with pytest.raises(MissingCellError):
            apply_encoding(ds, plan)

    def test_missing_label_prediction_mode(self):
        ds = flights(("a", "AA", 1.0, None))
        plan = fit_encoding(BASE, one_hot=())
        fm = apply_encoding(ds, plan, training=False)
        assert fm.missing_labels == 1

    def test_matrix_immutable(self):
        plan = fit_encoding(BASE, one_hot=())
        fm = apply_encoding(BASE, plan)
        with pytest.raises(ValueError):
            fm.values[0, 0] = 99.0


class TestPearson:
    def test_self_correlation(self):
        fm = make_matrix([[1.0], [2.0], [3.0]], [0, 1, 0])
        r = pearson_matrix(fm, ["x0", "x0"])
        assert r.matrix[0, 1] == pytest.approx(1.0)

    def test_anticorrelation(self):
        fm = make_matrix([[1.0, -1.0], [2.0, -2.0], [3.0, -3.0]], [0, 1, 0])
        r = pearson_matrix(fm, ["x0", "x1"])
        assert r.matrix[0, 1] == pytest.approx(-1.0)

    def test_textbook_formula_oracle(self):
        x = [1.0, 2.0, 3.0, 4.0]
        y = [2.0, 4.0, 5.0, 9.0]
        n = 4
        sx, sy = sum(x), sum(y)
        sxy = sum(a * b for a, b in zip(x, y))
        sxx = sum(a * a for a in x)
        syy = sum(b * b for b in y)
        expected = (n * sxy - sx * sy) / math.sqrt(
            (n * sxx - sx * sx) * (n * syy - sy * sy)
        )
        fm = make_matrix(np.column_stack([x, y]), [0, 0, 1, 1])
        r = pearson_matrix(fm, ["x0", "x1"])
        assert r.matrix[0, 1] == pytest.approx(expected, abs=1e-12)
        assert expected == pytest.approx(0.9647638212377322, abs=1e-12)

    def test_label_column(self):
        fm = make_matrix([[1.0], [2.0], [3.0], [4.0]], [0, 0, 1, 1])
        r = pearson_matrix(fm, ["x0", "label"])
        assert r.matrix[0, 1] > 0.8

    def test_symmetry_unit_diagonal_and_range(self):
        rng = np.random.default_rng(3)
        fm = make_matrix(rng.normal(size=(40, 4)), rng.integers(0, 2, 40))
        r = pearson_matrix(fm, ["x0", "x1", "x2", "x3"])
        assert np.allclose(r.matrix, r.matrix.T)
        assert np.allclose(np.diag(r.matrix), 1.0)
        assert np.all(r.matrix >= -1.0) and np.all(r.matrix <= 1.0)

    def test_constant_column_degenerate(self):
        fm = make_matrix([[1.0, 5.0], [2.0, 5.0]], [0, 1])
        r = pearson_matrix(fm, ["x0", "x1"])
        assert r.degenerate == ("x1",)
        assert r.matrix[1, 1] == 0.0 and r.matrix[0, 1] == 0.0

    def test_too_few_rows(self):
        fm = make_matrix([[1.0]], [1])
        with pytest.raises(TooFewRowsError):
            pearson_matrix(fm, ["x0"])

    def test_unknown_column(self):
        fm = make_matrix([[1.0], [2.0]], [0, 1])
        with pytest.raises(DataError):
            pearson_matrix(fm, ["nope"])


class TestShuffleSplit:
    def test_floor_rule(self):
        fm = make_matrix(np.arange(10.0).reshape(10, 1), [0, 1] * 5)
        pair = shuffle_split(fm, 0.8, seed=0)
        assert pair.train.n_rows == 8 and pair.validation.n_rows == 2

    def test_deterministic(self):
        fm = make_matrix(np.arange(20.0).reshape(20, 1), [0, 1] * 10)
        a = shuffle_split(fm, 0.75, seed=9)
        b = shuffle_split(fm, 0.75, seed=9)
        assert np.array_equal(a.train.values, b.train.values)
        assert np.array_equal(a.validation.labels, b.validation.labels)

    def test_multiset_conservation(self):
        fm = make_matrix(np.arange(11.0).reshape(11, 1), [0] * 6 + [1] * 5)
        pair = shuffle_split(fm, 0.8, seed=4)
        combined = np.concatenate([pair.train.values[:, 0], pair.validation.values[:, 0]])
        assert sorted(combined) == sorted(fm.values[:, 0])
        assert pair.train.labels.size + pair.validation.labels.size == 11

    def test_too_few_rows(self):
        fm = make_matrix([[1.0]], [1])
        with pytest.raises(TooFewRowsError):
            shuffle_split(fm, 0.8, seed=0)

    def test_bad_fraction(self):
        fm = make_matrix([[1.0], [2.0]], [0, 1])
        for frac in (0.0, 1.0, -0.5):
            with pytest.raises(DataError):
                shuffle_split(fm, frac, seed=0)
