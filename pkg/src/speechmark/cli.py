"""Command-line entry point.

Subcommands mirror the pipeline stages: align, annotate, score,
fit-prototypes, featurize, train, loso, report, plus run (the whole
sequence). Every numeric constant of the pipeline is a flag with its
default visible in --help; flags override the config file, which
overrides built-in defaults. SPEECHMARK_SEED overrides the config seed.

Exit codes: 0 success, 2 config error, 3 data error, 4 internal error.
"""

import argparse
import json
import sys
import time

from . import prototype as proto_mod
from . import report as report_mod
from .align import align, edit_cost
from .annotate import chunk as make_chunks
from .config import load_config
from .corpus import load_dataset
from .errors import ConfigError, DataError, SpeechmarkError
from .pipeline import (
    StageFailure,
    evaluate_features,
    featurize_results,
    prepare_task,
    read_features_csv,
    run_pipeline,
    score_dataset,
    write_features_csv,
    write_scores_csv,
)
from .prototype import PrototypeNormalizer, scores_to_matrix
from .scores import build_score_names
from .svm import LinearSVC, LinearSVR


class RunLog:
    """JSON-lines event log (stderr by default)."""

    def __init__(self, stream=None):
        self.stream = stream if stream is not None else sys.stderr

    def event(self, name, **fields):
        record = {"ts": round(time.time(), 3), "event": name}
        record.update(fields)
        self.stream.write(json.dumps(record) + "\n")


_CONFIG_FLAGS = (
    ("--pause-threshold-s", "pause_threshold_s", float, "pause threshold in seconds"),
    ("--min-chunk-words", "min_chunk_words", int, "minimum clean words per chunk"),
    ("--mattr-windows", "mattr_windows", "intlist", "MATTR window sizes"),
    ("--quantiles", "quantiles", "intlist", "pause quantiles in (0, 100)"),
    ("--gzip-level", "gzip_level", int, "DEFLATE level for gzip_ratio"),
    ("--hdd-sample-size", "hdd_sample_size", int, "HD-D sample size"),
    ("--mtld-threshold", "mtld_threshold", float, "MTLD TTR threshold"),
    ("--proto-floor", "proto_floor", float, "feature floor for degenerate sigma"),
    ("--svc-c", "svc_C", float, "SVC regularization parameter C"),
    ("--svc-max-iter", "svc_max_iter", int, "solver epoch cap"),
    ("--svc-tol", "svc_tol", float, "solver convergence tolerance"),
    ("--svr-c", "svr_C", float, "SVR regularization parameter C"),
    ("--svr-epsilon", "svr_epsilon", float, "SVR insensitivity epsilon"),
    ("--seed", "seed", int, "random seed for solver shuffles"),
    ("--jobs", "jobs", int, "worker processes for scoring"),
)


def _intlist(text):
    return tuple(int(x) for x in text.split(","))


def _common_parser():
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("pipeline configuration")
    group.add_argument("--config", metavar="FILE", help="TOML config file")
    group.add_argument("--log-file", metavar="FILE", help="JSON-lines event log")
    from .config import PipelineConfig

    defaults = PipelineConfig()
    for flag, field_name, kind, help_text in _CONFIG_FLAGS:
        default = getattr(defaults, field_name)
        if kind == "intlist":
            group.add_argument(flag, dest=field_name, type=_intlist, default=None,
                               help=f"{help_text} (default: {','.join(map(str, default))})")
        else:
            group.add_argument(flag, dest=field_name, type=kind, default=None,
                               help=f"{help_text} (default: {default})")
    return parent


def build_parser():
    parent = _common_parser()
    parser = argparse.ArgumentParser(
        prog="speechmark",
        description="Interpretable speech biomarkers from paired ASR transcripts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("align", parents=[parent],
                       help="align acoustic tokens to clean words")
    p.add_argument("--input", required=True, help="directory of recording JSON files")
    p.add_argument("--dump", action="store_true", help="emit the op list as JSON lines")

    p = sub.add_parser("annotate", parents=[parent],
                       help="chunk recordings and emit chunk summaries")
    p.add_argument("--input", required=True)

    p = sub.add_parser("score", parents=[parent], help="compute per-recording scores")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True, help="scores CSV path")

    p = sub.add_parser("fit-prototypes", parents=[parent],
                       help="fit healthy-speech prototypes")
    p.add_argument("--healthy-dir", required=True)
    p.add_argument("--out", required=True, help="prototype JSON path")

    p = sub.add_parser("featurize", parents=[parent],
                       help="prototype-distance features for a corpus")
    p.add_argument("--input", required=True)
    p.add_argument("--proto", required=True)
    p.add_argument("--out", required=True, help="features CSV path")

    p = sub.add_parser("train", parents=[parent], help="train one model on features")
    p.add_argument("--task", required=True, choices=("binary", "subtype", "aq"))
    p.add_argument("--features", required=True)
    p.add_argument("--out", required=True, help="model JSON path")

    p = sub.add_parser("loso", parents=[parent],
                       help="leave-one-subject-out evaluation")
    p.add_argument("--task", required=True, choices=("binary", "subtype", "aq"))
    p.add_argument("--features", required=True)
    p.add_argument("--report", required=True, help="report JSON path")
    p.add_argument("--per-category", action="store_true",
                   help="add per-category ablation (subtype only)")

    p = sub.add_parser("report", parents=[parent], help="render a report document")
    p.add_argument("--report", required=True)
    p.add_argument("--format", default="markdown", choices=("markdown", "json"))

    p = sub.add_parser("run", parents=[parent], help="run the whole pipeline")
    p.add_argument("--input-dir", dest="input_dir", default=None)
    p.add_argument("--healthy-dir", dest="healthy_dir", default=None)
    p.add_argument("--out-dir", dest="out_dir", default=None)
    return parser


def _config_from_args(args):
    overrides = {name: getattr(args, name, None) for _, name, _, _ in _CONFIG_FLAGS}
    for key in ("input_dir", "healthy_dir", "out_dir"):
        if hasattr(args, key):
            overrides[key] = getattr(args, key)
    return load_config(args.config, overrides)


def _emit(line, out):
    out.write(line + "\n")


def cmd_align(args, config, log, out):
    recordings = load_dataset(args.input)
    for rec in recordings:
        aligned = align(rec.acoustic, rec.clean)
        if args.dump:
            for op in aligned.ops:
                _emit(json.dumps({
                    "recording_id": rec.recording_id,
                    "kind": op.kind.value,
                    "acoustic_index": op.acoustic_index,
                    "clean_index": op.clean_index,
                }), out)
        else:
            _emit(json.dumps({
                "recording_id": rec.recording_id,
                "edit_cost": edit_cost(aligned),
                "unmatched_acoustic": len(aligned.unmatched_acoustic),
            }), out)
    return 0


def cmd_annotate(args, config, log, out):
    recordings = load_dataset(args.input)
    for rec in recordings:
        aligned = align(rec.acoustic, rec.clean)
        chunks = make_chunks(rec, aligned, config.min_chunk_words, config.pause_threshold_s)
        if not chunks:
            log.event("recording_skipped", recording_id=rec.recording_id,
                      reason=f"fewer than {config.min_chunk_words} words")
        for c in chunks:
            _emit(json.dumps({
                "recording_id": c.recording_id,
                "chunk_index": c.chunk_index,
                "words": c.word_count,
                "pauses": len(c.pauses),
                "fillers": len(c.filler_acoustic_indices),
                "duration": c.chunk_duration,
            }), out)
    return 0


def cmd_score(args, config, log, out):
    recordings = load_dataset(args.input)
    results = score_dataset(recordings, config, log=log)
    names = build_score_names(tuple(config.quantiles), tuple(config.mattr_windows))
    write_scores_csv(results, names, args.out)
    return 0


def cmd_fit_prototypes(args, config, log, out):
    recordings = load_dataset(args.healthy_dir)
    results = score_dataset(recordings, config, log=log)
    chunk_vectors = [v for res in results for v in res.chunk_vectors]
    if not chunk_vectors:
        raise DataError("healthy corpus produced no scorable chunks")
    names = build_score_names(tuple(config.quantiles), tuple(config.mattr_windows))
    proto = PrototypeNormalizer(names=names, floor=config.proto_floor)
    proto.fit(scores_to_matrix(chunk_vectors, names))
    proto_mod.save(proto, args.out)
    log.event("prototype_fitted", scores=len(proto.fitted_names()), out=args.out)
    return 0


def cmd_featurize(args, config, log, out):
    proto = proto_mod.load(args.proto, floor=config.proto_floor)
    recordings = load_dataset(args.input)
    results = score_dataset(recordings, config, log=log)
    features = featurize_results(results, proto)
    if not features:
        raise DataError("no recording yielded at least one chunk")
    write_features_csv(features, proto.names, args.out)
    return 0


def cmd_train(args, config, log, out):
    features, names = read_features_csv(args.features)
    X, y, _, used_names = prepare_task(features, args.task)
    if args.task == "aq":
        model = LinearSVR(C=config.svr_C, epsilon=config.svr_epsilon,
                          tol=config.svc_tol, max_iter=config.svc_max_iter,
                          seed=config.seed).fit(X, y.astype(float))
        doc = {
            "task": args.task,
            "names": used_names,
            "weights": model.coef_.tolist(),
            "bias": model.intercept_,
            "target_range": [0.0, 100.0],
        }
    else:
        model = LinearSVC(C=config.svc_C, tol=config.svc_tol,
                          max_iter=config.svc_max_iter, seed=config.seed).fit(X, y)
        doc = {
            "task": args.task,
            "names": used_names,
            "classes": model.classes_.tolist(),
            "weights": model.coef_.tolist(),
            "bias": model.intercept_.tolist(),
        }
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
    return 0


def cmd_loso(args, config, log, out):
    features, _ = read_features_csv(args.features)
    tasks = (args.task,)
    document = evaluate_features(
        features, config, tasks=tasks,
        per_category=args.per_category and args.task == "subtype",
    )
    with open(args.report, "w", encoding="utf-8") as fh:
        json.dump(document, fh, indent=1)
        fh.write("\n")
    return 0


def cmd_report(args, config, log, out):
    with open(args.report, encoding="utf-8") as fh:
        document = json.load(fh)
    if args.format == "json":
        _emit(json.dumps(document, indent=1), out)
    else:
        _emit(report_mod.render_all(document).rstrip("\n"), out)
    return 0


def cmd_run(args, config, log, out):
    summary = run_pipeline(config, log=log)
    _emit(json.dumps({"event": "pipeline_done", **summary}), out)
    return 0


_COMMANDS = {
    "align": cmd_align,
    "annotate": cmd_annotate,
    "score": cmd_score,
    "fit-prototypes": cmd_fit_prototypes,
    "featurize": cmd_featurize,
    "train": cmd_train,
    "loso": cmd_loso,
    "report": cmd_report,
    "run": cmd_run,
}


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        if getattr(args, "log_file", None):
            with open(args.log_file, "a", encoding="utf-8") as fh:
                return _COMMANDS[args.command](args, config, RunLog(fh), out)
        return _COMMANDS[args.command](args, config, RunLog(), out)
    except ConfigError as exc:
        print(f"speechmark: config error: {exc}", file=sys.stderr)
        return 2
    except StageFailure as exc:
        print(f"speechmark: {exc}", file=sys.stderr)
        return 3 if isinstance(exc.cause, DataError) else 4
    except DataError as exc:
        print(f"speechmark: data error: {exc}", file=sys.stderr)
        return 3
    except SpeechmarkError as exc:
        print(f"speechmark: error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"speechmark: i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
