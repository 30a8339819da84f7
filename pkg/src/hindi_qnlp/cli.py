"""
Parse, compile, simulate and train Hindi sentence classifiers.

Exit codes: 0 ok, 1 I/O error, 2 linguistic failure (unknown word, no
parse), 3 bad configuration or usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .ansatz import AnsatzConfig, CompileError, compile_diagram, to_qasm_like
from .diagram import ParseError, parse_sentence, to_dot
from .lexicon import LexiconError, resolve_lexicon
from .rewrite import remove_cups
from .simulator import SimulationError, final_state
from .training import (DatasetError, Model, TrainConfig, evaluate, format_history,
                       load_checkpoint, load_dataset, predict, save_checkpoint, spsa_train)

EXIT_IO, EXIT_LINGUISTIC, EXIT_CONFIG = 1, 2, 3
PUNCTUATION = ".,;:!?\"'()[]|।॥"


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def tokenize(words: list[str]) -> list[str]:
    tokens = [t.strip(PUNCTUATION) for t in " ".join(words).split()]
    return [t for t in tokens if t]


def _settings(args) -> dict:
    cfg = {}
    if args.config:
        with open(args.config, encoding="utf-8") as f:
            try:
                cfg = json.load(f)
            except json.JSONDecodeError as err:
                raise ConfigError(f"{args.config}: {err}") from None
        if not isinstance(cfg, dict):
            raise ConfigError(f"{args.config}: expected a JSON object")
    seed = cfg.get("train", {}).get("seed", 7)
    if os.environ.get("QNLP_SEED"):
        try:
            seed = int(os.environ["QNLP_SEED"])
        except ValueError:
            raise ConfigError("QNLP_SEED must be an integer") from None
    if args.seed is not None:
        seed = args.seed
    try:
        ansatz = AnsatzConfig.from_dict(cfg.get("ansatz", {}))
        train = TrainConfig(**{**cfg.get("train", {}), "seed": seed})
    except (TypeError, ValueError) as err:
        raise ConfigError(f"bad config: {err}") from None
    return {
        "lexicon": args.lexicon or cfg.get("lexicon", "seed"),
        "ansatz": ansatz,
        "rewrite": args.rewrite or bool(cfg.get("rewrite", False)),
        "train": train,
        "seed": seed,
    }


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _diagram(args, s):
    d = parse_sentence(tokenize(args.sentence), resolve_lexicon(s["lexicon"]))
    return remove_cups(d) if s["rewrite"] else d


def _model(args, s, sentences) -> Model:
    if getattr(args, "checkpoint", None):
        model = load_checkpoint(args.checkpoint)
        model.ensure_params(sentences, seed=s["seed"])
        return model
    return Model.initialize(resolve_lexicon(s["lexicon"]), sentences, s["ansatz"],
                            s["rewrite"], seed=s["seed"])


def cmd_parse(args, s):
    _emit(args, _diagram(args, s).to_json() + "\n")


def cmd_diagram(args, s):
    fmt = args.format or "dot"
    if fmt not in ("dot", "json"):
        raise ConfigError(f"diagram supports --format dot|json, not {fmt!r}")
    d = _diagram(args, s)
    _emit(args, to_dot(d) if fmt == "dot" else d.to_json() + "\n")


def cmd_compile(args, s):
    fmt = args.format or "json"
    if fmt not in ("json", "qasm"):
        raise ConfigError(f"compile supports --format json|qasm, not {fmt!r}")
    tokens = tokenize(args.sentence)
    model = _model(args, s, [tokens])
    d = parse_sentence(tokens, model.lexicon)
    circuit, _ = compile_diagram(remove_cups(d) if model.rewrite else d, model.ansatz)
    if fmt == "qasm":
        _emit(args, to_qasm_like(circuit, model.params))
    else:
        _emit(args, circuit.to_json(model.params) + "\n")


def cmd_run(args, s):
    tokens = tokenize(args.sentence)
    model = _model(args, s, [tokens])
    dist = model.distribution(tokens)
    out = {
        "probabilities": dist.probabilities,
        "raw_amplitudes": {k: [v.real, v.imag] for k, v in dist.raw_amplitudes.items()},
        "success_weight": dist.success_weight,
    }
    if args.dump_state:
        amps = final_state(model.compiled(tokens)[0], model.params).amps
        out["state"] = [[a.real, a.imag] for a in amps.tolist()]
    _emit(args, json.dumps(out, sort_keys=True) + "\n")


def cmd_train(args, s):
    lexicon = resolve_lexicon(s["lexicon"])
    ds = load_dataset(args.dataset, lexicon)
    model = Model.initialize(lexicon, [x.tokens for x in ds], s["ansatz"], s["rewrite"],
                             seed=s["seed"])
    trained, history = spsa_train(model, ds, s["train"])
    if args.history:
        with open(args.history, "w", encoding="utf-8") as f:
            f.write(format_history(history))
    if args.output:
        save_checkpoint(trained, args.output)
    else:
        sys.stdout.write(json.dumps(trained.to_checkpoint(), indent=2, ensure_ascii=False) + "\n")
    metrics = {"train_loss": history[-1]["loss"], "train_acc": history[-1]["acc"]}
    if len(ds.dev):
        metrics["dev_acc"] = evaluate(trained, ds.dev)
    print(json.dumps(metrics), file=sys.stderr)


def cmd_eval(args, s):
    ds = load_dataset(args.dataset)
    model = _model(args, s, [x.tokens for x in ds])
    ds.validate(model.lexicon)
    split = ds.split(args.split) if args.split else ds
    _emit(args, json.dumps({"accuracy": evaluate(model, split), "items": len(split)}) + "\n")


def cmd_predict(args, s):
    tokens = tokenize(args.sentence)
    model = _model(args, s, [tokens])
    p0, p1 = predict(model, tokens)
    _emit(args, json.dumps({"p0": p0, "p1": p1}) + "\n")


def cmd_lexicon_validate(args, s):
    lex = resolve_lexicon(args.path or s["lexicon"])
    _emit(args, json.dumps({"entries": len(lex.entries), "surfaces": len(lex.surfaces),
                            "symbols": sorted(lex.declared_symbols)}, ensure_ascii=False) + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lexicon", help="lexicon file, or 'seed' / 'toy' for the bundled ones")
    common.add_argument("--config", help="JSON config with lexicon, ansatz, rewrite, train")
    common.add_argument("--seed", type=int, help="overrides QNLP_SEED and the config seed")
    common.add_argument("--rewrite", action="store_true", help="remove cups before compiling")
    common.add_argument("--format", help="output format (diagram: dot|json, compile: json|qasm)")
    common.add_argument("--output", "-o", help="write output here instead of stdout")

    parser = _Parser(prog="hindi-qnlp", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, sentence=False):
        p = sub.add_parser(name, parents=[common], help=help_)
        if sentence:
            p.add_argument("sentence", nargs="+")
        p.set_defaults(func=func)
        return p

    add("parse", cmd_parse, "sentence to diagram JSON", sentence=True)
    add("diagram", cmd_diagram, "sentence to DOT (or JSON) diagram", sentence=True)
    add("compile", cmd_compile, "sentence to circuit JSON or QASM-like text",
        sentence=True).add_argument("--checkpoint")
    p = add("run", cmd_run, "simulate a sentence circuit", sentence=True)
    p.add_argument("--checkpoint")
    p.add_argument("--dump-state", action="store_true",
                   help="include the amplitudes before postselection")
    p = add("train", cmd_train, "train a classifier with SPSA")
    p.add_argument("dataset")
    p.add_argument("--history", help="JSON lines file for per-step loss/accuracy")
    p = add("eval", cmd_eval, "accuracy of a model on a dataset")
    p.add_argument("dataset")
    p.add_argument("--checkpoint")
    p.add_argument("--split", choices=("train", "dev"))
    add("predict", cmd_predict, "class probabilities for a sentence",
        sentence=True).add_argument("--checkpoint")
    add("lexicon-validate", cmd_lexicon_validate, "check a lexicon file").add_argument(
        "path", nargs="?")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as stop:
        # argparse exits on --help and usage errors; report the code instead
        return stop.code if isinstance(stop.code, int) else EXIT_CONFIG
    try:
        args.func(args, _settings(args))
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_LINGUISTIC
    except DatasetError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_LINGUISTIC if isinstance(err.__cause__, ParseError) else EXIT_CONFIG
    except (ConfigError, LexiconError, CompileError, SimulationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
