import numpy as np
import pytest

from gqht.datasets import (
    Dataset,
    MinMaxParams,
    SplitSpec,
    balance_classes,
    load_csv,
    make_blobs,
    make_moons,
    minmax_fit_transform,
    pad_to_pow2,
    save_csv,
    train_test_split,
)
from gqht.errors import DataError, ParseError

IRIS_PAIR = ("Iris-setosa", "Iris-versicolor")


def test_minmax_examples():
    p = MinMaxParams.fit([[0.0], [5.0], [10.0]])
    out, clamped = p.transform([[0.0], [5.0], [10.0]])
    assert out.ravel().tolist() == [-1.0, 0.0, 1.0] and clamped == 0
    p = MinMaxParams.fit([[-1.0], [1.0]])
    assert p.transform([[-1.0], [1.0]])[0].ravel().tolist() == [-1.0, 1.0]


def test_minmax_constant_feature():
    with pytest.raises(DataError, match="feature 1"):
        MinMaxParams.fit([[0.0, 2.0], [1.0, 2.0]])
    with pytest.raises(DataError):
        MinMaxParams.fit([[0.0, 1.0]])


def test_minmax_fit_on_train_only_and_clamp():
    train = Dataset([[0.0], [10.0]], [0, 1])
    test = Dataset([[-5.0], [5.0], [20.0]], [0, 1, 1])
    tr, te, params, clamped = minmax_fit_transform(train, test)
    assert tr.X.ravel().tolist() == [-1.0, 1.0]
    assert te.X.ravel().tolist() == [-1.0, 0.0, 1.0]
    assert clamped == 2
    assert params.to_dict()["mins"] == [0.0]


def test_minmax_rank_preserving(rng):
    X = rng.normal(size=(50, 3))
    out, _ = MinMaxParams.fit(X).transform(X)
    for j in range(3):
        assert (np.argsort(X[:, j]) == np.argsort(out[:, j])).all()
    assert out.min() == -1 and out.max() == 1


def test_iris_load(iris_path):
    ds = load_csv(iris_path, feature_columns=(0, 1), label_column=4, class_pair=IRIS_PAIR)
    assert len(ds) == 100 and ds.class_counts() == (50, 50)
    raw = np.array([float(line.split(",")[0]) for line in iris_path.read_text().splitlines()[:100]])
    np.testing.assert_array_equal(ds.X[:, 0], raw)
    scaled, _ = MinMaxParams.fit(ds.X).transform(ds.X)
    assert scaled[np.argmin(raw), 0] == -1.0 and scaled[np.argmax(raw), 0] == 1.0


def test_iris_other_pair(iris_path):
    ds = load_csv(iris_path, feature_columns=(2, 3), label_column=-1, class_pair=("Iris-versicolor", "Iris-virginica"))
    assert ds.class_counts() == (50, 50)


def test_csv_errors(tmp_path, iris_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(ParseError):
        load_csv(empty)
    with pytest.raises(DataError, match="out of range"):
        load_csv(iris_path, label_column=7, class_pair=IRIS_PAIR)
    with pytest.raises(DataError, match="does not occur"):
        load_csv(iris_path, label_column=4, class_pair=("Iris-setosa", "Iris-unknown"))
    bad = tmp_path / "bad.csv"
    bad.write_text("f0,f1,label\n0.1,0.2,0\n0.3,oops,1\n")
    with pytest.raises(ParseError, match="line 3"):
        load_csv(bad)
    ragged = tmp_path / "ragged.csv"
    ragged.write_text("0.1,0.2,0\n0.3,1\n")
    with pytest.raises(ParseError, match="line 2"):
        load_csv(ragged)


def test_csv_numeric_labels_whitespace(tmp_path):
    p = tmp_path / "seeds_like.txt"
    p.write_text("1.0 2.0 3.0 1\n1.5\t2.5 3.5 2\n2.0 3.0 4.0 3\n")
    ds = load_csv(p, feature_columns=(0, 2), label_column=-1, class_pair=(1, 2), delimiter="whitespace")
    assert ds.X.tolist() == [[1.0, 3.0], [1.5, 3.5]] and ds.y.tolist() == [0, 1]


def test_save_load_round_trip(tmp_path):
    ds = make_blobs(5, seed=2)
    path = tmp_path / "blobs.csv"
    save_csv(ds, path)
    assert path.read_text().splitlines()[0] == "f0,f1,label"
    back = load_csv(path)
    assert back.X.tobytes() == ds.X.tobytes() and (back.y == ds.y).all()


def test_blobs():
    ds = make_blobs(30, sigma=1e-9, seed=1)
    centers = np.array([[-0.5, -0.5], [0.5, 0.5]])
    assert np.abs(ds.X - centers[ds.y]).max() < 1e-6
    a, b = make_blobs(30, seed=4), make_blobs(30, seed=4)
    assert a.X.tobytes() == b.X.tobytes()
    sigma, n = 0.3, 400
    ds = make_blobs(n, sigma=sigma, seed=5)
    for k in (0, 1):
        assert np.all(np.abs(ds.X[ds.y == k].mean(axis=0) - centers[k]) < 4 * sigma / np.sqrt(n))
    with pytest.raises(DataError):
        make_blobs(3, sigma=0)


def test_moons():
    ds = make_moons(50, 0.0, seed=3)
    upper = ds.X[ds.y == 0]
    lower = ds.X[ds.y == 1]
    np.testing.assert_allclose((upper**2).sum(axis=1), 1, atol=1e-12)
    assert lower[:, 1].min() >= -0.5 - 1e-12 and lower[:, 1].max() <= 0.5 + 1e-12
    assert make_moons(10, 0.1, 7).X.tobytes() == make_moons(10, 0.1, 7).X.tobytes()


def test_split_sizes():
    ds = make_blobs(50, seed=0)
    tr, te = train_test_split(ds, SplitSpec(0.7, 0))
    assert (len(tr), len(te)) == (70, 30)
    assert tr.class_counts() == (35, 35)
    tr2, _ = train_test_split(ds, SplitSpec(0.7, 0))
    assert tr.X.tobytes() == tr2.X.tobytes()
    tr3, te3 = train_test_split(ds, SplitSpec(0.7, 1, stratified=False))
    assert (len(tr3), len(te3)) == (70, 30)
    with pytest.raises(DataError):
        train_test_split(Dataset([[0.0], [1.0], [2.0]], [0, 1, 1]))
    with pytest.raises(DataError):
        SplitSpec(1.0)


def test_balance():
    ds = Dataset(np.arange(16.0).reshape(16, 1), [0] * 10 + [1] * 6)
    out = balance_classes(ds, seed=1)
    assert out.class_counts() == (6, 6)
    assert set(out.X[out.y == 1].ravel()) == set(range(10, 16))
    same = balance_classes(Dataset([[0.0], [1.0]], [0, 1]))
    assert same.X.tolist() == [[0.0], [1.0]]
    with pytest.raises(DataError):
        balance_classes(Dataset([[0.0], [1.0]], [0, 0]))


def test_pad_to_pow2(rng):
    X = rng.uniform(-1, 1, (4, 3))
    P = pad_to_pow2(X)
    assert P.shape == (4, 4) and (P[:, 3] == 0).all() and (P[:, :3] == X).all()
    assert pad_to_pow2(rng.uniform(size=(2, 4))).shape == (2, 4)
    np.testing.assert_allclose(P @ P.T, X @ X.T)


def test_iteration_and_labels():
    ds = Dataset([[0.1, 0.2]], [1])
    (pt,) = list(ds)
    assert pt.label == 1 and pt.features.tolist() == [0.1, 0.2]
    with pytest.raises(DataError):
        Dataset([[np.nan]], [0])
