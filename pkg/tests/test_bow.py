import math

import numpy as np
import pytest

from sieve.bow import (
    BowModel,
    BowTrainConfig,
    bow_accuracy,
    bow_encode,
    bow_score,
    load_bow,
    loss_and_grads,
    sentence_examples,
    train_bow,
)
from sieve.corpus import EmbeddingTable, Token
from sieve.errors import TrainingError

from .conftest import make_bundle


@pytest.fixture
def table():
    entries = {
        "up": np.array([1.0, 2.0, -1.0]),
        "down": np.array([-1.0, -2.0, 1.0]),
        "left": np.array([0.5, 0.0, 0.25]),
    }
    return EmbeddingTable(dim=3, entries=entries, oov_buckets=16)


class TestBowEncode:
    def test_single_token_is_identity(self, table):
        np.testing.assert_array_equal(bow_encode([Token("up")], table), [1.0, 2.0, -1.0])

    def test_opposite_vectors_cancel(self, table):
        np.testing.assert_allclose(
            bow_encode([Token("up"), Token("down")], table), np.zeros(3), atol=1e-15
        )

    def test_mean_of_three(self, table):
        # independent arithmetic: elementwise sums / 3
        expected = [(1.0 - 1.0 + 0.5) / 3, (2.0 - 2.0 + 0.0) / 3, (-1.0 + 1.0 + 0.25) / 3]
        got = bow_encode([Token("up"), Token("down"), Token("left")], table)
        np.testing.assert_allclose(got, expected, atol=1e-15)

    def test_empty_gives_zero_vector(self, table):
        np.testing.assert_array_equal(bow_encode([], table), np.zeros(3))


def _tiny_model():
    return BowModel(
        w1=np.array([[0.1, -0.2, 0.3, 0.0, 0.5, -0.1], [0.2, 0.1, 0.0, -0.3, 0.1, 0.4]]),
        b1=np.array([0.05, -0.05]),
        w2=np.array([0.7, -0.6]),
        b2=0.1,
    )


class TestBowScore:
    def test_zero_weights_give_half(self):
        model = BowModel(w1=np.zeros((2, 6)), b1=np.zeros(2), w2=np.zeros(2), b2=0.0)
        assert bow_score(np.ones(2), np.ones(2), model) == 0.5

    def test_strictly_inside_unit_interval(self):
        rng = np.random.default_rng(2)
        model = BowModel.init(4, 8, rng)
        for _ in range(50):
            value = bow_score(rng.standard_normal(4), rng.standard_normal(4), model)
            assert 0.0 < value < 1.0

    def test_hand_computed_forward_pass(self):
        # q = [1, -0.5], s = [0.5, 2]: x = [1, -0.5, 0.5, 2, 0.5, -1]
        # z1 = [0.75, -0.85] -> relu [0.75, 0]; logit = 0.7*0.75 + 0.1 = 0.625
        model = _tiny_model()
        expected = 1.0 / (1.0 + math.exp(-0.625))
        assert expected == pytest.approx(0.6513548646660542, abs=1e-15)
        got = bow_score(np.array([1.0, -0.5]), np.array([0.5, 2.0]), model)
        assert got == pytest.approx(expected, abs=1e-12)

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            bow_score(np.ones(2), np.ones(3), _tiny_model())

    def test_token_order_does_not_matter(self, table):
        model = BowModel.init(3, 5, np.random.default_rng(0))
        tokens = [Token("up"), Token("down"), Token("left")]
        q = bow_encode([Token("left")], table)
        a = bow_score(q, bow_encode(tokens, table), model)
        b = bow_score(q, bow_encode(tokens[::-1], table), model)
        assert a == pytest.approx(b, abs=1e-12)


class TestGradients:
    def test_matches_central_differences(self):
        rng = np.random.default_rng(9)
        dim, hidden = 5, 7
        model = BowModel.init(dim, hidden, np.random.default_rng(1))
        x = rng.standard_normal((12, 3 * dim))
        y = (rng.random(12) > 0.5).astype(float)

        loss, grads = loss_and_grads(model, x, y)
        flat = np.concatenate([grads["w1"].ravel(), grads["b1"], grads["w2"], [grads["b2"]]])

        def rebuild(vec):
            n1 = hidden * 3 * dim
            return BowModel(
                w1=vec[:n1].reshape(hidden, 3 * dim).copy(),
                b1=vec[n1 : n1 + hidden].copy(),
                w2=vec[n1 + hidden : n1 + 2 * hidden].copy(),
                b2=float(vec[-1]),
            )

        vec = np.concatenate([model.w1.ravel(), model.b1, model.w2, [model.b2]])
        step = 1e-4
        coords = np.random.default_rng(4).choice(vec.size, size=20, replace=False)
        for i in coords:
            plus, minus = vec.copy(), vec.copy()
            plus[i] += step
            minus[i] -= step
            numeric = (loss_and_grads(rebuild(plus), x, y)[0] - loss_and_grads(rebuild(minus), x, y)[0]) / (2 * step)
            # floor guards against finite-difference roundoff on ~0 gradients
            rel = abs(numeric - flat[i]) / max(abs(numeric), abs(flat[i]), 1e-6)
            assert rel < 1e-4


class TestTraining:
    def test_separable_fixture_accuracy(self, bow_train_bundles, bow_heldout_bundles, separable_table):
        model, _ = train_bow(bow_train_bundles, separable_table, BowTrainConfig(seed=7))
        assert bow_accuracy(model, bow_heldout_bundles, separable_table) >= 0.95

    def test_same_seed_bitwise_equal(self, bow_train_bundles, separable_table):
        config = BowTrainConfig(seed=21, epochs=2)
        a, loss_a = train_bow(bow_train_bundles, separable_table, config)
        b, loss_b = train_bow(bow_train_bundles, separable_table, config)
        assert loss_a == loss_b
        assert np.array_equal(a.w1, b.w1) and np.array_equal(a.b1, b.b1)
        assert np.array_equal(a.w2, b.w2) and a.b2 == b.b2

    def test_first_epoch_reduces_loss(self, bow_train_bundles, separable_table):
        seed = 5
        initial = BowModel.init(separable_table.dim, 100, np.random.default_rng(seed))
        x, y = sentence_examples(bow_train_bundles, separable_table)
        loss_before = loss_and_grads(initial, x, y)[0]
        trained, _ = train_bow(
            bow_train_bundles, separable_table, BowTrainConfig(seed=seed, epochs=1)
        )
        loss_after = loss_and_grads(trained, x, y)[0]
        assert loss_after < loss_before

    def test_no_positives_rejected(self, separable_table):
        bundle = make_bundle(["q"], docs=[[["x", "y"], ["z"]]], answers=["absent"])
        with pytest.raises(TrainingError, match="no positive"):
            train_bow([bundle], separable_table, BowTrainConfig(seed=0))


class TestSerialization:
    def test_round_trip_and_byte_stability(self, tmp_path):
        model = BowModel.init(4, 6, np.random.default_rng(8))
        p1, p2 = tmp_path / "m1.bin", tmp_path / "m2.bin"
        model.save(p1)
        model.save(p2)
        assert p1.read_bytes() == p2.read_bytes()
        loaded = load_bow(p1)
        assert np.array_equal(loaded.w1, model.w1)
        assert np.array_equal(loaded.b1, model.b1)
        assert np.array_equal(loaded.w2, model.w2)
        assert loaded.b2 == model.b2
