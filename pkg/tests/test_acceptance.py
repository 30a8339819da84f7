"""End-to-end acceptance checks; each test records one PASS/FAIL line."""

import json
import math
import time

import numpy as np
import pytest

from helpers import ACCEPTANCE_RESULTS, SENTENCE_1, SENTENCE_2, random_params, template_sentences
from hindi_qnlp.ansatz import AnsatzConfig, CircuitIR, Gate, compile_diagram, ghz_circuit
from hindi_qnlp.diagram import parse_sentence
from hindi_qnlp.oracle import contract_diagram_oracle
from hindi_qnlp.rewrite import remove_cups
from hindi_qnlp.simulator import gate_matrix, run
from hindi_qnlp.training import (Model, TrainConfig, evaluate, finite_diff_gradient, loss,
                                 save_checkpoint, spsa_train, toy_dataset)


def report(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    ACCEPTANCE_RESULTS.append(line)
    print(line)
    assert ok, line


def test_1_worked_sentences(seed_lex):
    start = time.perf_counter()
    d1 = parse_sentence(SENTENCE_1, seed_lex)
    d2 = parse_sentence(SENTENCE_2, seed_lex)
    elapsed = time.perf_counter() - start
    ok = (set(d1.cups) == {(1, 2), (0, 3), (5, 6)} and set(d1.open) == {4}
          and set(d2.cups) == {(1, 2), (3, 4), (0, 5)} and set(d2.open) == {6}
          and elapsed < 1.0)
    report(1, "worked sentence linkings", ok,
           f"cups {d1.cups} open {d1.open}; cups {d2.cups} open {d2.open}; {elapsed:.3f}s")


def test_2_compiler_structure(seed_lex):
    start = time.perf_counter()
    c1, p1 = compile_diagram(parse_sentence(SENTENCE_1, seed_lex), AnsatzConfig())
    c2, p2 = compile_diagram(parse_sentence(SENTENCE_2, seed_lex), AnsatzConfig())
    elapsed = time.perf_counter() - start
    ok = ((c1.width, len(p1), len(c1.postselect), len(c1.measured)) == (7, 12, 6, 1)
          and (c2.width, len(p2)) == (7, 9) and elapsed < 1.0)
    report(2, "compiler structure", ok,
           f"width {c1.width}/{c2.width}, params {len(p1)}/{len(p2)}, "
           f"postselected {len(c1.postselect)}, measured {len(c1.measured)}, {elapsed:.3f}s")


def test_3_ansatz_primitives():
    bell = CircuitIR(2, (Gate("CNOT", (0, 1)), Gate("H", (0,))), {0: 0, 1: 0}, ())
    amp = run(bell, {}).amplitudes[0]
    ghz = run(CircuitIR(2, tuple(ghz_circuit(2)), {}, (0, 1)), {}).amplitudes
    s = 1 / math.sqrt(2)
    err_bell = abs(amp - s)
    err_ghz = float(np.max(np.abs(ghz - [s, 0, 0, s])))
    report(3, "Bell effect and GHZ amplitudes", err_bell <= 1e-12 and err_ghz <= 1e-12,
           f"bell error {err_bell:.1e}, ghz error {err_ghz:.1e}")


def test_4_oracle_equivalence(seed_lex):
    rng = np.random.default_rng(2024)
    worst, draws = 0.0, 0
    for tokens in (SENTENCE_1, SENTENCE_2):
        d = parse_sentence(tokens, seed_lex)
        c, p = compile_diagram(d)
        for _ in range(100):
            values = random_params(p.names, rng)
            diff = run(c, values).amplitudes - contract_diagram_oracle(d, values).amplitudes
            worst = max(worst, float(np.max(np.abs(diff))))
            draws += 1
    report(4, "simulator matches contraction oracle", worst <= 1e-10,
           f"{draws} draws, max error {worst:.1e}")


def test_5_rewrite_invariance(seed_lex, toy_lex):
    rng = np.random.default_rng(55)
    cases = [(seed_lex, SENTENCE_1), (seed_lex, SENTENCE_2)]
    cases += [(toy_lex, t) for t in template_sentences(toy_lex, rng, 50)]
    worst_p = worst_amp = 0.0
    for lex, tokens in cases:
        d = parse_sentence(tokens, lex)
        c0, p = compile_diagram(d)
        c1, _ = compile_diagram(remove_cups(d))
        values = random_params(p.names, rng)
        before, after = run(c0, values), run(c1, values)
        removed = len(c0.postselect) - len(c1.postselect)
        worst_p = max(worst_p, float(np.max(np.abs(
            after.probability_vector() - before.probability_vector()))))
        worst_amp = max(worst_amp, float(np.max(np.abs(
            after.amplitudes - before.amplitudes * 2 ** (removed / 2)))))
    report(5, "rewrite invariance", worst_p <= 1e-10 and worst_amp <= 1e-10,
           f"{len(cases)} sentences, prediction error {worst_p:.1e}, "
           f"scaled amplitude error {worst_amp:.1e}")


def test_6_unitarity_and_norm():
    rng = np.random.default_rng(6)
    worst_u = 0.0
    for kind in ("H", "CNOT"):
        u = gate_matrix(kind)
        worst_u = max(worst_u, float(np.max(np.abs(u.conj().T @ u - np.eye(len(u))))))
    for kind in ("RZ", "RX", "CRZ"):
        for theta in rng.uniform(-4 * math.pi, 4 * math.pi, 200):
            u = gate_matrix(kind, theta)
            worst_u = max(worst_u, float(np.max(np.abs(u.conj().T @ u - np.eye(len(u))))))
    worst_norm = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 9))
        kinds = ["H", "RZ", "RX"] + (["CRZ", "CNOT"] if n > 1 else [])
        gates, values = [], {}
        for k in range(int(rng.integers(1, 40))):
            kind = kinds[rng.integers(len(kinds))]
            qubits = tuple(int(q) for q in rng.choice(n, 2 if kind in ("CRZ", "CNOT") else 1,
                                                      replace=False))
            name = f"t{k}" if kind in ("RZ", "RX", "CRZ") else None
            if name:
                values[name] = rng.uniform(0, 2 * math.pi)
            gates.append(Gate(kind, qubits, name))
        dist = run(CircuitIR(n, tuple(gates), {}, tuple(range(n))), values)
        worst_norm = max(worst_norm, abs(dist.success_weight - 1))
    report(6, "unitarity and norm preservation", worst_u <= 1e-12 and worst_norm <= 1e-10,
           f"unitarity error {worst_u:.1e}, norm error {worst_norm:.1e} over 100 circuits")


@pytest.mark.slow
def test_7_training_smoke(tmp_path, toy_lex):
    ds = toy_dataset()
    cfg = TrainConfig(seed=7, iterations=500)
    blobs, timings = [], []
    for k in range(2):
        start = time.perf_counter()
        model = Model.initialize(toy_lex, [x.tokens for x in ds], seed=cfg.seed)
        trained, history = spsa_train(model, ds, cfg)
        timings.append(time.perf_counter() - start)
        path = tmp_path / f"run{k}.json"
        save_checkpoint(trained, path)
        blobs.append(path.read_bytes())
    acc, final_loss = evaluate(trained, ds.train), loss(trained, ds.train)
    identical = blobs[0] == blobs[1]
    ok = acc >= 0.9 and final_loss < 0.45 and max(timings) < 60 and identical
    report(7, "SPSA training on toy corpus", ok,
           f"{cfg.iterations} iterations, train acc {acc:.3f}, loss {final_loss:.4f}, "
           f"dev acc {evaluate(trained, ds.dev):.3f}, {max(timings):.1f}s per run, "
           f"checkpoints identical: {identical}")
    assert json.loads(blobs[0])["params"]


def test_8_gradient_sanity(toy_lex):
    ds = toy_dataset().train
    model = Model.initialize(toy_lex, [x.tokens for x in ds], seed=7)
    g4 = finite_diff_gradient(model, ds, 1e-4)
    g5 = finite_diff_gradient(model, ds, 1e-5)
    grad_gap = float(np.max(np.abs(g4 - g5)))
    theta = model.params.values()
    base = loss(model, ds)
    worst_period = 0.0
    for i in range(theta.size):
        shifted = theta.copy()
        shifted[i] += 4 * math.pi
        worst_period = max(worst_period, abs(loss(model, ds, model.with_values(shifted)) - base))
    report(8, "gradient sanity and 4pi periodicity", grad_gap <= 1e-3 and worst_period <= 1e-10,
           f"{theta.size} parameters, max gradient gap {grad_gap:.1e}, "
           f"max periodicity error {worst_period:.1e}")
