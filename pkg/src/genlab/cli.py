"""Batch experiment runner.

Reads a JSON config describing experiments, runs them with explicit seeds
and budgets, and emits CSV/JSON/plot-data reports plus a manifest with
content hashes, so identical config and seed reproduce identical bytes.

Exit codes: 0 success, 2 config validation error, 3 budget-partial
outputs, 4 verification-suite failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import balls, census, lemmas
from .contraction import measure_scaled_ledger
from .groups import Braid3, FreeGroup, FreeProductZ2Z3, GeneratingSet, make_model
from .spaces import build_bass_serre_tree, build_cayley_tree


class ConfigError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"config error at {path}: {message}")
        self.path = path


@dataclass
class ExperimentConfig:
    """One validated experiment: a kind plus its resolved inputs."""

    kind: str
    name: str
    raw: dict


_KINDS = ("enumerate", "classify", "genericity", "fibers", "verify-lemmas", "probe-negligibility")


def _require(raw: dict, key: str, path: str):
    if key not in raw:
        raise ConfigError(f"{path}.{key}", "missing required field")
    return raw[key]


def _build_model_gens(raw: dict, path: str):
    model_id = _require(raw, "model", path)
    try:
        model = make_model(model_id)
    except ValueError as e:
        raise ConfigError(f"{path}.model", str(e))
    gens_words = raw.get("gens")
    if gens_words is None:
        gens = model.standard_gens()
    else:
        try:
            std = [model.alphabet.parse(w) if isinstance(w, str) else tuple(w) for w in gens_words]
            is_std = sorted(std) == sorted((i,) for i in range(1, model.alphabet.size + 1))
            gens = GeneratingSet(model, gens_words, standard=is_std)
        except ValueError as e:
            raise ConfigError(f"{path}.gens", str(e))
    return model, gens


def _build_action(model, raw: dict, path: str):
    if isinstance(model, FreeGroup):
        _, action = build_cayley_tree(model.rank)
        return action
    if isinstance(model, FreeProductZ2Z3):
        _, action, _ = build_bass_serre_tree()
        return action
    if isinstance(model, Braid3):
        _, _, action = build_bass_serre_tree()
        return action
    raise ConfigError(f"{path}.model", f"no default action for {model.name}")


def _build_ledger(model, gens, action, raw: dict, path: str, seed: int, profile: str):
    lraw = raw.get("ledger", {})
    phi_word = raw.get("phi", "a" if isinstance(model, FreeGroup) else ("xy" if isinstance(model, FreeProductZ2Z3) else "aB"))
    try:
        phi = model.element(phi_word)
    except ValueError as e:
        raise ConfigError(f"{path}.phi", str(e))
    if profile == "faithful":
        raise ConfigError(f"{path}", "faithful-profile constants are out of desk-scale reach; use scaled")
    kwargs = {}
    for key in ("dominating", "coeff"):
        if key in lraw:
            kwargs[key] = Fraction(lraw[key])
    if "segment_length" in lraw:
        kwargs["segment_length"] = int(lraw["segment_length"])
    if "power" in lraw:
        kwargs["power"] = int(lraw["power"])
    for key in ("window", "cut_window"):
        if key in lraw:
            kwargs[key] = tuple(Fraction(x) for x in lraw[key])
    ledger = measure_scaled_ledger(model, gens, action, phi, random.Random(seed), **kwargs)
    return phi, ledger


def validate_config(doc: dict) -> list[ExperimentConfig]:
    if not isinstance(doc, dict):
        raise ConfigError("$", "top level must be an object")
    experiments = doc.get("experiments", [])
    if not isinstance(experiments, list):
        raise ConfigError("$.experiments", "must be a list")
    out = []
    for idx, raw in enumerate(experiments):
        path = f"$.experiments[{idx}]"
        kind = _require(raw, "kind", path)
        if kind not in _KINDS:
            raise ConfigError(f"{path}.kind", f"unknown kind {kind!r} (choose from {_KINDS})")
        name = raw.get("name", f"{kind}-{idx}")
        out.append(ExperimentConfig(kind, name, raw))
    return out


def _write(out_dir: Path, rel: str, text: str, manifest: dict, flags: dict | None = None):
    path = out_dir / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    data = text.encode()
    path.write_bytes(data)
    entry = {"path": rel, "sha256": hashlib.sha256(data).hexdigest()}
    if flags:
        entry.update(flags)
    manifest["outputs"].append(entry)


def _json_text(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def run(doc: dict, out_dir: Path, seed: int, profile: str, budget_nodes: int | None, workers: int = 1) -> int:
    """Execute every experiment in the config; returns the process exit code."""
    experiments = validate_config(doc)
    out_dir.mkdir(parents=True, exist_ok=True)
    # the worker count is deliberately absent: results are contracted to be
    # identical for every worker setting, manifests included
    manifest = {
        "config_sha256": hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest(),
        "seed": seed,
        "profile": profile,
        "outputs": [],
        "partial": False,
        "suite_failures": 0,
    }
    status = 0
    for exp in experiments:
        raw, name, path = exp.raw, exp.name, f"$.experiments[{exp.name}]"
        if exp.kind == "enumerate":
            model, gens = _build_model_gens(raw, path)
            radius = int(_require(raw, "radius", path))
            cen = balls.enumerate_ball(model, gens, radius, keep_elements=bool(raw.get("keep_elements", False)),
                                       workers=workers, node_budget=budget_nodes)
            flags = {"truncated": cen.truncated}
            if cen.truncated:
                manifest["partial"] = True
            _write(out_dir, f"{name}.csv", cen.to_csv(), manifest, flags)
            _write(out_dir, f"{name}.json", _json_text(cen.to_json()), manifest, flags)
        elif exp.kind == "classify":
            model, gens = _build_model_gens(raw, path)
            words = _require(raw, "words", path)
            verdicts = []
            for w in words:
                try:
                    g = model.element(w)
                except ValueError as e:
                    raise ConfigError(f"{path}.words", str(e))
                c = census.classify(model, None, g)
                verdicts.append({"word": w, "verdict": c.verdict, "evidence": {k: str(v) for k, v in c.evidence.items()}})
            _write(out_dir, f"{name}.json", _json_text(verdicts), manifest)
        elif exp.kind == "genericity":
            model, gens = _build_model_gens(raw, path)
            radius = int(_require(raw, "radius", path))
            action = None
            if not isinstance(model, Braid3):
                action = _build_action(model, raw, path)
            curve = census.genericity_experiment(
                model, action, gens, radius,
                tree_threshold=int(raw.get("tree_threshold", 0)),
                word_threshold=Fraction(raw.get("word_threshold", "35/100")),
            )
            _write(out_dir, f"{name}.csv", curve.to_csv(), manifest)
            _write(out_dir, f"{name}.json", _json_text(curve.to_json()), manifest)
            _write(out_dir, f"{name}.dat", curve.plot_data(), manifest)
        elif exp.kind == "fibers":
            model, gens = _build_model_gens(raw, path)
            action = _build_action(model, raw, path)
            phi, ledger = _build_ledger(model, gens, action, raw, path, seed, profile)
            n_values = [int(n) for n in _require(raw, "n_values", path)]
            reports = []
            for n in n_values:
                reports.append(census.fiber_census(model, gens, action, phi, ledger, n).to_json())
            _write(out_dir, f"{name}.json", _json_text({"ledger": ledger.to_json(), "reports": reports}), manifest)
            rows = ["n,domain,image,max_fiber,sqrt_ratio"]
            rows += [f"{r['n']},{r['domain']},{r['image']},{r['max_fiber']},{r['sqrt_ratio']!r}" for r in reports]
            _write(out_dir, f"{name}.csv", "\n".join(rows) + "\n", manifest)
        elif exp.kind == "verify-lemmas":
            trials = int(raw.get("trials", 200))
            rng = random.Random(seed)
            suite = lemmas.appendix_suite_tree(int(raw.get("rank", 2)), trials, rng)
            concat = _run_concat_suite(rng, trials=max(20, trials // 10))
            ok = suite.all_green() and concat["failures"] == 0
            if not ok:
                manifest["suite_failures"] += 1
                status = max(status, 4)
            doc_out = {"appendix": suite.to_json(), "concatenation": concat, "profile": profile}
            _write(out_dir, f"{name}.json", _json_text(doc_out), manifest)
            _write(out_dir, f"{name}.txt", suite.summary() + "\n" + _concat_summary(concat) + "\n", manifest)
        elif exp.kind == "probe-negligibility":
            model, gens = _build_model_gens(raw, path)
            n_values = [int(n) for n in _require(raw, "n_values", path)]
            probe = census.exponential_negligibility_probe(model, gens, n_values)
            _write(out_dir, f"{name}.json", _json_text(probe.to_json()), manifest)
            _write(out_dir, f"{name}.dat", "".join(f"{p.n} {float(p.ratio)!r}\n" for p in probe.points), manifest)
    _write(out_dir, "manifest.json", _json_text({k: v for k, v in manifest.items() if k != "outputs"} | {"outputs": manifest["outputs"]}), manifest)
    if manifest["partial"]:
        status = max(status, 3)
    return status


def _run_concat_suite(rng: random.Random, trials: int) -> dict:
    counts = {"midpoint": 0, "chain": 0, "distance-sum": 0, "quadratic": 0}
    failures = skipped = 0
    for _ in range(trials):
        inst = lemmas.random_chain_instance(rng, n_segments=1, level=2)
        v = lemmas.verify_midpoint_capture(inst)
        if isinstance(v, lemmas.SkippedInstance):
            skipped += 1
        else:
            counts["midpoint"] += 1
            failures += 0 if v.passed else 1
        inst = lemmas.random_chain_instance(rng, n_segments=rng.randrange(2, 5), level=2)
        vs = lemmas.verify_chain_capture(inst)
        if isinstance(vs, lemmas.SkippedInstance):
            skipped += 1
        else:
            counts["chain"] += 1
            failures += sum(0 if v.passed else 1 for v in vs)
        vd = lemmas.verify_distance_sum(inst)
        if isinstance(vd, lemmas.SkippedInstance):
            skipped += 1
        else:
            counts["distance-sum"] += 1
            failures += 0 if vd.passed else 1
    braid = Braid3()
    gens = braid.standard_gens()
    _, _, action = build_bass_serre_tree()
    ledger = measure_scaled_ledger(braid, gens, action, braid.element("aB"),
                                   random.Random(rng.randrange(10**9)), segment_length=4, sample_radius=4)
    m = int(ledger.chain_threshold(2)) + 1
    for _ in range(max(5, trials // 4)):
        qi = lemmas.random_quadratic_instance(rng, n_segments=m + rng.randrange(3, 6),
                                              segment_length=m, ledger=ledger, level=2)
        vq = lemmas.verify_quadratic_length(qi)
        if isinstance(vq, lemmas.SkippedInstance):
            skipped += 1
        else:
            counts["quadratic"] += 1
            failures += 0 if vq.passed else 1
    return {"trials": counts, "failures": failures, "skipped": skipped}


def _concat_summary(concat: dict) -> str:
    parts = [f"{k}: {v}" for k, v in sorted(concat["trials"].items())]
    return f"concatenation suite: {', '.join(parts)}; failures {concat['failures']}, skipped {concat['skipped']}"


def _single_experiment_doc(args) -> dict:
    raw = {"kind": args.command, "name": args.name}
    if getattr(args, "model", None):
        raw["model"] = args.model
    if getattr(args, "gens", None):
        raw["gens"] = args.gens
    if getattr(args, "radius", None) is not None:
        raw["radius"] = args.radius
    if getattr(args, "words", None):
        raw["words"] = args.words
    if getattr(args, "n_values", None):
        raw["n_values"] = args.n_values
    if getattr(args, "trials", None) is not None:
        raw["trials"] = args.trials
    if getattr(args, "phi", None):
        raw["phi"] = args.phi
    return {"experiments": [raw]}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="genlab", description=__doc__)
    parser.add_argument("--config", type=Path, help="JSON config file")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--profile", default="scaled", choices=["scaled", "faithful"])
    parser.add_argument("--out-dir", type=Path, default=Path("out"))
    parser.add_argument("--budget-nodes", type=int, default=None)
    parser.add_argument("--workers", type=int, default=1)
    sub = parser.add_subparsers(dest="command")

    sub.add_parser("run", help="run every experiment in the config")

    for kind in _KINDS:
        p = sub.add_parser(kind)
        p.add_argument("--name", default=kind)
        p.add_argument("--model")
        p.add_argument("--gens", nargs="*")
        p.add_argument("--phi")
        if kind == "enumerate" or kind == "genericity":
            p.add_argument("--radius", type=int)
        if kind == "classify":
            p.add_argument("--words", nargs="+")
        if kind in ("fibers", "probe-negligibility"):
            p.add_argument("--n-values", dest="n_values", type=int, nargs="+")
        if kind == "verify-lemmas":
            p.add_argument("--trials", type=int, default=200)

    args = parser.parse_args(argv)
    try:
        if args.config is not None:
            doc = json.loads(args.config.read_text())
        elif args.command and args.command != "run":
            doc = _single_experiment_doc(args)
        else:
            doc = {"experiments": []}
        seed = doc.get("seed", args.seed) if args.config else args.seed
        return run(doc, args.out_dir, seed, args.profile, args.budget_nodes, args.workers)
    except ConfigError as e:
        print(str(e), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
