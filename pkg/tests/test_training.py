import math

import numpy as np
import pytest

from hindi_qnlp.ansatz import ParameterTable
from hindi_qnlp.lexicon import Lexicon
from hindi_qnlp.simulator import OutcomeDistribution
from hindi_qnlp.training import (Dataset, DatasetError, Example, Model, TrainConfig,
                                 dataset_from_lines, evaluate, finite_diff_gradient,
                                 format_history, is_degenerate, load_checkpoint, loss,
                                 predict, save_checkpoint, spsa_train, toy_dataset)
from hindi_qnlp.training import _class_probs

HAI = Lexicon.from_pairs([("hai", "s")], ["s"])


def _single_word(theta_x):
    """Model for the one-word sentence [s]: Rz(0) Rx(theta_x) Rz(0) on |0>."""
    params = ParameterTable([("hai#0__0", 0.0), ("hai#0__1", theta_x), ("hai#0__2", 0.0)])
    return Model(HAI, params=params)


def _one(label):
    return Dataset([Example(("hai",), label)])


@pytest.fixture(scope="module")
def toy():
    return toy_dataset()


@pytest.fixture(scope="module")
def toy_model(toy_lex, toy):
    return Model.initialize(toy_lex, [x.tokens for x in toy], seed=7)


def test_toy_corpus_shape(toy, toy_lex):
    assert len(toy) == 16 and len(toy.train) == 12 and len(toy.dev) == 4
    toy.validate(toy_lex)


def test_probabilities_sum_to_one(toy_model, toy):
    for x in toy:
        p0, p1 = predict(toy_model, x.tokens)
        assert p0 + p1 == pytest.approx(1, abs=1e-12)
        assert 0 <= p0 <= 1


def test_even_split_is_log2_and_a_tie():
    m = _single_word(math.pi / 2)
    assert loss(m, _one(0)) == pytest.approx(math.log(2), abs=1e-12)
    assert evaluate(m, _one(0)) == 0.0
    assert evaluate(m, _one(1)) == 0.0


def test_perfect_model():
    assert loss(_single_word(0.0), _one(0)) == pytest.approx(0, abs=1e-12)
    assert evaluate(_single_word(0.0), _one(0)) == 1.0
    assert evaluate(_single_word(math.pi), _one(1)) == 1.0
    # epsilon clamp keeps the loss finite when p_label is exactly 0
    assert loss(_single_word(0.0), _one(1), epsilon=1e-9) == pytest.approx(-math.log(1e-9))


def test_loss_decreases_as_label_probability_grows():
    # p1 = sin^2(theta/2) rises on [0, pi]
    values = [loss(_single_word(t), _one(1)) for t in np.linspace(0.1, math.pi, 30)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_zero_step_size_keeps_parameters(toy_model, toy):
    trained, history = spsa_train(toy_model, toy, TrainConfig(iterations=3, a=0.0))
    np.testing.assert_array_equal(trained.params.values(), toy_model.params.values())
    assert len(history) == 3


def test_training_is_deterministic(toy_lex, toy):
    runs = []
    for _ in range(2):
        m = Model.initialize(toy_lex, [x.tokens for x in toy], seed=3)
        trained, history = spsa_train(m, toy, TrainConfig(seed=3, iterations=5))
        runs.append((trained.to_checkpoint(), format_history(history)))
    assert runs[0] == runs[1]


def test_seed_changes_initialisation(toy_lex, toy):
    sentences = [x.tokens for x in toy]
    a = Model.initialize(toy_lex, sentences, seed=1).params.values()
    b = Model.initialize(toy_lex, sentences, seed=2).params.values()
    assert not np.allclose(a, b)


def test_init_ignores_rewrite_flag(toy_lex, toy):
    sentences = [x.tokens for x in toy]
    a = Model.initialize(toy_lex, sentences, seed=7)
    b = Model.initialize(toy_lex, sentences, rewrite=True, seed=7)
    assert dict(a.params.items()) == dict(b.params.items())


def test_finite_difference_agreement(toy_model, toy):
    g4 = finite_diff_gradient(toy_model, toy.train, 1e-4)
    g5 = finite_diff_gradient(toy_model, toy.train, 1e-5)
    assert np.max(np.abs(g4 - g5)) < 1e-3


def test_gradient_vanishes_at_minimum():
    g = finite_diff_gradient(_single_word(0.0), _one(0), 1e-4)
    assert np.max(np.abs(g)) < 1e-6


def test_loss_is_4pi_periodic(toy_model, toy):
    theta = toy_model.params.values()
    base = loss(toy_model, toy.train)
    rng = np.random.default_rng(0)
    for i in rng.choice(theta.size, 8, replace=False):
        shifted = theta.copy()
        shifted[i] += 4 * math.pi
        assert loss(toy_model, toy.train, toy_model.with_values(shifted)) == \
            pytest.approx(base, abs=1e-10)


def test_accuracy_invariant_under_rewrite(toy_lex, toy):
    sentences = [x.tokens for x in toy]
    plain = Model.initialize(toy_lex, sentences, seed=5)
    rewritten = Model(toy_lex, plain.ansatz, plain.params, rewrite=True)
    assert evaluate(plain, toy) == evaluate(rewritten, toy)
    for x in toy:
        np.testing.assert_allclose(predict(plain, x.tokens), predict(rewritten, x.tokens),
                                   atol=1e-10)


def test_dataset_errors(seed_lex):
    with pytest.raises(DatasetError):
        Example(("x",), 2)
    with pytest.raises(DatasetError):
        Example(("x",), 0, "test")
    with pytest.raises(DatasetError, match="line 2"):
        dataset_from_lines(['{"tokens": ["hai"], "label": 0}', "{bad"])
    ds = Dataset([Example(("Main", "Main"), 0), Example(("Mukesh", "ne", "khaana", "khaya"), 1)])
    with pytest.raises(DatasetError, match="Main Main"):
        ds.validate(seed_lex)
    one_label = Dataset([Example(("Mukesh", "ne", "khaana", "khaya"), 1)])
    with pytest.raises(DatasetError, match="both labels"):
        one_label.validate(seed_lex)


def test_dataset_jsonl_round_trip(toy):
    assert dataset_from_lines(toy.to_jsonl().splitlines()) == toy


def test_checkpoint_round_trip(tmp_path, toy_model, toy):
    path = tmp_path / "model.json"
    save_checkpoint(toy_model, path)
    back = load_checkpoint(path)
    assert dict(back.params.items()) == dict(toy_model.params.items())
    assert back.ansatz == toy_model.ansatz and back.lexicon == toy_model.lexicon
    for x in toy:
        assert predict(back, x.tokens) == predict(toy_model, x.tokens)


def test_degenerate_prediction_falls_back_to_even(toy_model, toy):
    assert _class_probs(OutcomeDistribution(np.zeros(2, dtype=complex))) == (0.5, 0.5)
    assert _class_probs(OutcomeDistribution(np.array([1e-7, 0], dtype=complex))) == (0.5, 0.5)
    # a tiny but healthy weight is still normalised
    assert _class_probs(OutcomeDistribution(np.array([0, 1e-5], dtype=complex))) == (0.0, 1.0)
    assert not any(is_degenerate(toy_model, x.tokens) for x in toy)


def test_majority_rule_for_wide_sentence_wire():
    # two measured qubits: 00 -> 0, 11 -> 1, 01/10 split evenly
    amps = np.sqrt(np.array([0.1, 0.2, 0.3, 0.4], dtype=complex))
    p0, p1 = _class_probs(OutcomeDistribution(amps))
    assert (p0, p1) == pytest.approx((0.1 + 0.25, 0.4 + 0.25))
