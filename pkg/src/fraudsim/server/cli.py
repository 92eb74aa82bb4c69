"""Command-line interface for headless operation.

Subcommands cover the full loop: generate a market world, run bot sessions,
generate synthetic cohorts, train and evaluate the classifier pipeline, emit
the elbow curve and regulator report (delimited text plus rendered figures),
and serve the HTTP API.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from ..analytics.cohort import default_cohort_spec, generate_cohort, load_cohort_spec
from ..analytics.report import build_report, write_report
from ..mlcore.kmeans import elbow_select
from ..mlcore.preprocess import standardize
from ..personalize.pipeline import PipelineConfig, build_training_table, train_pipeline
from ..personalize.types import default_knowledge_pool, load_knowledge_pool
from ..simkit.scenario import Scenario, default_scenario_config, generate_scenario, load_scenario_config


def _load_cohort(args) -> list:
    if getattr(args, "config", None):
        spec = load_cohort_spec(args.config)
        if args.seed is not None:
            spec.seed = args.seed
    else:
        spec = default_cohort_spec(seed=args.seed)
    return generate_cohort(spec)


def _cmd_scenario_generate(args) -> int:
    config = load_scenario_config(args.config) if args.config else default_scenario_config()
    scenario = generate_scenario(config, seed=args.seed if args.seed is not None else 42)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(scenario.to_json() + "\n", encoding="utf-8")
    print(f"wrote scenario '{scenario.name}' (seed {scenario.seed}) to {out}")
    n_fraud = sum(1 for s in scenario.stocks if s.authenticity.value == "Fraud")
    print(f"  {len(scenario.stocks)} stocks ({n_fraud} manipulated), "
          f"{len(scenario.articles)} articles, {len(scenario.chat_script)} chat messages")
    if args.figure:
        from ..plotting import save_price_history_figure

        fig = save_price_history_figure(scenario, out.with_suffix(".png"))
        print(f"  price figure: {fig}")
    return 0


def _cmd_bots_run(args) -> int:
    from .bots import policy_for, run_bot_session

    config = load_scenario_config(args.config) if args.config else default_scenario_config()
    base_seed = args.seed if args.seed is not None else 0
    scenario = generate_scenario(config, seed=base_seed)
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    for i in range(args.n):
        policy = policy_for(args.archetype, seed=base_seed + i)
        result = run_bot_session(policy, scenario)
        rows.append(result.footprint)
        from ..session.events import write_event_log

        write_event_log(
            outdir / f"{result.session_id}.jsonl",
            {"session_id": result.session_id, "age": result.age, "scenario_id": scenario.name},
            result.events,
        )
    table = build_training_table(rows)
    table.write_csv(outdir / "footprints.csv")
    print(f"ran {args.n} {args.archetype} session(s); footprints and logs in {outdir}")
    return 0


def _cmd_cohort_generate(args) -> int:
    cohort = _load_cohort(args)
    table = build_training_table(cohort)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    table.write_csv(out)
    n_novice = sum(1 for fp in cohort if fp.label == "Novice")
    print(f"wrote {len(cohort)} footprints ({n_novice} novice) to {out}")
    return 0


def _cmd_train(args) -> int:
    cohort = _load_cohort(args)
    table = build_training_table(cohort)
    config = PipelineConfig(split_seeds=tuple(range(args.splits)))
    model = train_pipeline(table, config, seed=args.train_seed)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(model.to_json() + "\n", encoding="utf-8")
    print(f"trained pipeline on {table.n} footprints; model at {out}")
    print(f"  selected features: {', '.join(model.selected_features)}")
    for kind, acc in sorted(model.accuracies.items()):
        print(f"  {kind:<22} mean accuracy {acc:.3f}")
    return 0


def _cmd_evaluate(args) -> int:
    cohort = _load_cohort(args)
    table = build_training_table(cohort)
    config = PipelineConfig(split_seeds=tuple(range(args.splits)))
    model = train_pipeline(table, config, seed=args.train_seed)
    print(f"cohort n={table.n}; mean test accuracy over {args.splits} stratified "
          f"{config.split_ratio:.0%}/{1 - config.split_ratio:.0%} splits")
    print(f"{'classifier':<24}{'accuracy':>10}")
    for kind in ("DecisionTree", "GradientBoostedTrees", "Perceptron"):
        print(f"{kind:<24}{model.accuracies[kind]:>10.3f}")
    return 0


def _parse_k_range(text: str) -> range:
    lo, _, hi = text.partition("..")
    return range(int(lo), int(hi) + 1)


def _cmd_elbow(args) -> int:
    cohort = _load_cohort(args)
    table = build_training_table(cohort)
    table_std, _, _ = standardize(table)
    ks = _parse_k_range(args.k)
    chosen_k, curve = elbow_select(table_std.values, ks, seed=args.seed if args.seed is not None else 42)
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / "elbow.csv"
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "inertia", "chosen"])
        for k, inertia in curve:
            w.writerow([k, repr(inertia), int(k == chosen_k)])
    from ..plotting import save_elbow_figure

    fig_path = save_elbow_figure(curve, chosen_k, outdir / "elbow.png")
    print(f"chosen_k={chosen_k}")
    for k, inertia in curve:
        marker = "  <- elbow" if k == chosen_k else ""
        print(f"  k={k}  inertia={inertia:.2f}{marker}")
    print(f"curve: {csv_path}")
    print(f"figure: {fig_path}")
    return 0


def _cmd_report_build(args) -> int:
    cohort = _load_cohort(args)
    report = build_report(
        cohort,
        cohort_id=args.cohort_id,
        generated_at=args.timestamp,
    )
    written = write_report(report, args.out_dir, figures=not args.no_figures)
    print(f"report for {report.cohort_id} ({len(report.narrative)} findings)")
    for n in report.narrative:
        print(f"  * {n.text}")
    for path in written:
        print(f"  wrote {path}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app
    from .service import FileEventStore, PlatformService

    config = load_scenario_config(args.config) if args.config else default_scenario_config()
    seed = args.seed if args.seed is not None else 42
    if args.scenario:
        scenario = Scenario.from_dict(json.loads(Path(args.scenario).read_text(encoding="utf-8")))
    else:
        scenario = generate_scenario(config, seed=seed)
    pool = load_knowledge_pool(args.pool) if args.pool else default_knowledge_pool()
    store = FileEventStore(args.data_dir) if args.data_dir else None
    service = PlatformService(scenario, store=store, pool=pool)
    app = create_app(service, static_dir=args.static_dir)
    print(f"serving scenario '{scenario.name}' on port {args.port} "
          f"(data dir: {args.data_dir or 'in-memory'})")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fraudsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scenario", help="market world commands")
    ssub = p.add_subparsers(dest="subcommand", required=True)
    g = ssub.add_parser("generate", help="materialise a scenario from a config + seed")
    g.add_argument("--config", help="scenario config YAML (default: built-in)")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--out", default="scenario.json")
    g.add_argument("--figure", action="store_true", help="also render the price history chart")
    g.set_defaults(func=_cmd_scenario_generate)

    p = sub.add_parser("bots", help="headless bot sessions")
    bsub = p.add_subparsers(dest="subcommand", required=True)
    b = bsub.add_parser("run", help="run seeded bot sessions and dump logs + footprints")
    b.add_argument("--n", type=int, default=10)
    b.add_argument("--archetype", choices=["novice", "experienced"], required=True)
    b.add_argument("--config", help="scenario config YAML")
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--out-dir", default="bot-runs")
    b.set_defaults(func=_cmd_bots_run)

    p = sub.add_parser("cohort", help="synthetic cohort commands")
    csub = p.add_subparsers(dest="subcommand", required=True)
    c = csub.add_parser("generate", help="draw a labeled synthetic cohort to CSV")
    c.add_argument("--config", help="cohort spec YAML (default: built-in)")
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--out", default="footprints.csv")
    c.set_defaults(func=_cmd_cohort_generate)

    t = sub.add_parser("train", help="train the personalization pipeline")
    t.add_argument("--config", help="cohort spec YAML (default: built-in)")
    t.add_argument("--seed", type=int, default=None, help="cohort seed")
    t.add_argument("--train-seed", type=int, default=0)
    t.add_argument("--splits", type=int, default=10)
    t.add_argument("--out", default="pipeline.json")
    t.set_defaults(func=_cmd_train)

    e = sub.add_parser("evaluate", help="print the per-classifier accuracy table")
    e.add_argument("--config", help="cohort spec YAML (default: built-in)")
    e.add_argument("--cohort", default="default", help="cohort name (default only)")
    e.add_argument("--seed", type=int, default=None, help="cohort seed")
    e.add_argument("--train-seed", type=int, default=0)
    e.add_argument("--splits", type=int, default=10)
    e.set_defaults(func=_cmd_evaluate)

    k = sub.add_parser("elbow", help="emit the k-means inertia curve (CSV + figure)")
    k.add_argument("--config", help="cohort spec YAML (default: built-in)")
    k.add_argument("--k", default="1..8", help="k range, e.g. 1..8")
    k.add_argument("--seed", type=int, default=None)
    k.add_argument("--out-dir", default="elbow-out")
    k.set_defaults(func=_cmd_elbow)

    r = sub.add_parser("report", help="regulator insight reports")
    rsub = r.add_subparsers(dest="subcommand", required=True)
    rb = rsub.add_parser("build", help="build the insight report (JSON, text, CSV, figures)")
    rb.add_argument("--config", help="cohort spec YAML (default: built-in)")
    rb.add_argument("--seed", type=int, default=None)
    rb.add_argument("--cohort-id", default="synthetic-default")
    rb.add_argument("--timestamp", default=None, help="fix generated_at for reproducible output")
    rb.add_argument("--out-dir", default="report-out")
    rb.add_argument("--no-figures", action="store_true")
    rb.set_defaults(func=_cmd_report_build)

    s = sub.add_parser("serve", help="run the HTTP/JSON service")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8000)
    s.add_argument("--config", help="scenario config YAML (default: built-in)")
    s.add_argument("--scenario", help="pre-materialised scenario JSON (skips generation)")
    s.add_argument("--pool", help="knowledge pool YAML (default: built-in)")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--data-dir", default=None, help="event log directory (default: in-memory)")
    s.add_argument("--static-dir", default=None, help="serve a built web client from this directory")
    s.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
