"""End-to-end orchestration: recordings to scores, features, and reports.

Every stage is a pure function of (inputs, config, seed); recordings can
be processed in a worker pool and results are merged in recording_id order,
so reruns produce byte-identical artifacts. Stage failures abort the run
with the stage name and offending recording, and partial outputs written
by the failed run are removed.
"""

import csv
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import prototype as proto_mod
from .align import align
from .annotate import chunk as make_chunks
from .corpus import load_dataset
from .errors import DataError, SpeechmarkError
from .evaluate import LearnConfig, ablation_by_category, loso
from .prototype import FeatureVector, PrototypeNormalizer
from .scores import ScoreVector, average_scores, build_score_names, score_chunk


@dataclass(frozen=True)
class RecordingScores:
    recording_id: str
    subject_id: str
    label: str | None
    aq: float | None
    n_chunks: int
    dropped_words: int
    chunk_vectors: tuple
    averaged: ScoreVector | None
    lemma_fallbacks: int
    elapsed_s: float


def process_recording(recording, config):
    """Align, chunk, and score one recording."""
    t0 = time.perf_counter()
    aligned = align(recording.acoustic, recording.clean)
    chunks = make_chunks(
        recording, aligned,
        min_words=config.min_chunk_words,
        pause_threshold=config.pause_threshold_s,
    )
    vectors = tuple(
        score_chunk(
            c, recording, aligned,
            quantiles=tuple(config.quantiles),
            mattr_windows=tuple(config.mattr_windows),
            gzip_level=config.gzip_level,
            hdd_sample_size=config.hdd_sample_size,
            mtld_threshold=config.mtld_threshold,
        )
        for c in chunks
    )
    covered = chunks[-1].clean_word_range[1] if chunks else 0
    fallbacks = sum(1 for w in recording.clean.words if w.lemma is None)
    return RecordingScores(
        recording_id=recording.recording_id,
        subject_id=recording.subject_id,
        label=recording.label,
        aq=recording.aq,
        n_chunks=len(chunks),
        dropped_words=len(recording.clean.words) - covered,
        chunk_vectors=vectors,
        averaged=average_scores(list(vectors)) if vectors else None,
        lemma_fallbacks=fallbacks,
        elapsed_s=time.perf_counter() - t0,
    )


def _process_star(args):
    return process_recording(*args)


def score_dataset(recordings, config, log=None):
    """Score every recording; returns results in recording_id order.

    Recordings that produce no chunk (below the minimum word count) are
    kept in the result list with averaged=None and reported to the log.
    """
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_process_star, [(r, config) for r in recordings]))
    else:
        results = [process_recording(r, config) for r in recordings]
    results.sort(key=lambda r: r.recording_id)
    if log is not None:
        for res in results:
            log.event(
                "recording_scored",
                recording_id=res.recording_id,
                chunks=res.n_chunks,
                dropped_words=res.dropped_words,
                lemma_fallbacks=res.lemma_fallbacks,
                skipped=res.n_chunks == 0,
                elapsed_s=round(res.elapsed_s, 4),
            )
    return results


def _float_cell(x):
    return repr(float(x))


def write_scores_csv(results, names, path):
    """Raw per-recording scores: value columns plus missing-mask columns."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        header = ["recording_id", "subject_id", "label", "aq"]
        header += list(names) + [f"{n}_missing" for n in names]
        writer.writerow(header)
        for res in results:
            if res.averaged is None:
                continue
            row = [res.recording_id, res.subject_id, res.label or "",
                   _float_cell(res.aq) if res.aq is not None else ""]
            for n in names:
                row.append(_float_cell(res.averaged.values[n]) if n in res.averaged.values else "")
            for n in names:
                row.append("0" if n in res.averaged.values else "1")
            writer.writerow(row)


def write_features_csv(features, names, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["recording_id", "subject_id", "label", "aq"] + list(names))
        for fv in features:
            row = [fv.recording_id, fv.subject_id, fv.label or "",
                   _float_cell(fv.aq) if fv.aq is not None else ""]
            row += [_float_cell(fv.values[n]) for n in names]
            writer.writerow(row)


def read_features_csv(path):
    """Inverse of write_features_csv; returns (features, names)."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[:4] != ["recording_id", "subject_id", "label", "aq"]:
            raise DataError(f"{path}: not a features CSV (unexpected header)")
        names = header[4:]
        features = []
        for row in reader:
            values = {n: float(v) for n, v in zip(names, row[4:])}
            features.append(FeatureVector(
                recording_id=row[0],
                subject_id=row[1],
                label=row[2] or None,
                aq=float(row[3]) if row[3] else None,
                values=values,
            ))
    return features, names


def featurize_results(results, proto):
    """Transform averaged scores to prototype-distance feature vectors."""
    features = []
    for res in results:
        if res.averaged is None:
            continue
        features.append(proto_mod.transform(
            res.averaged, proto,
            recording_id=res.recording_id,
            subject_id=res.subject_id,
            label=res.label,
            aq=res.aq,
        ))
    return features


TASKS = ("binary", "subtype", "aq")


def prepare_task(features, task):
    """Map feature vectors to (X, y, subjects) arrays for a task."""
    import numpy as np

    names = sorted(features[0].values) if features else []
    rows, ys, subjects = [], [], []
    for fv in features:
        if task == "binary":
            if fv.label is None:
                continue
            y = "control" if fv.label == "control" else "aphasia"
        elif task == "subtype":
            if fv.label not in ("control", "anomic", "broca", "wernicke"):
                continue
            y = fv.label
        elif task == "aq":
            if fv.aq is None:
                continue
            y = fv.aq
        else:
            raise DataError(f"unknown task {task!r}")
        rows.append([fv.values[n] for n in names])
        ys.append(y)
        subjects.append(fv.subject_id)
    if not rows:
        raise DataError(f"no eligible recordings for task {task!r}")
    return np.asarray(rows, dtype=float), np.asarray(ys), np.asarray(subjects), names


def evaluate_features(features, config, tasks=TASKS, per_category=True):
    """LOSO every requested task; returns the report document."""
    document = {}
    svc = LearnConfig(C=config.svc_C, max_iter=config.svc_max_iter,
                      tol=config.svc_tol, seed=config.seed)
    svr = LearnConfig(C=config.svr_C, max_iter=config.svc_max_iter,
                      tol=config.svc_tol, epsilon=config.svr_epsilon, seed=config.seed)
    for task in tasks:
        X, y, subjects, names = prepare_task(features, task)
        if task == "aq":
            document["aq"] = loso(X, y, subjects, task="regression", config=svr).to_dict()
        else:
            document[task] = loso(X, y, subjects, task="classification", config=svc).to_dict()
            if task == "subtype" and per_category:
                reports = ablation_by_category(X, y, subjects, names, config=svc)
                document["per_category"] = {
                    cat: rep.to_dict() for cat, rep in reports.items()
                }
    return document


class StageFailure(SpeechmarkError):
    def __init__(self, stage, cause, recording_id=None):
        at = f" (recording {recording_id})" if recording_id else ""
        super().__init__(f"stage {stage!r} failed{at}: {cause}")
        self.stage = stage
        self.cause = cause


def run_pipeline(config, log=None):
    """fit prototypes -> score -> featurize -> LOSO reports, all on disk.

    Writes prototype.json, scores.csv, features.csv and report.json under
    config.out_dir. Idempotent for identical inputs and seed. On failure,
    outputs already written by this run are removed.
    """
    for key in ("input_dir", "healthy_dir", "out_dir"):
        if getattr(config, key) is None:
            raise DataError(f"run_pipeline requires config.{key}")
    os.makedirs(config.out_dir, exist_ok=True)
    names = build_score_names(tuple(config.quantiles), tuple(config.mattr_windows))
    written = []

    def emit(filename, writer_fn):
        path = os.path.join(config.out_dir, filename)
        writer_fn(path)
        written.append(path)
        return path

    stage = "load"
    try:
        healthy = load_dataset(config.healthy_dir)
        recordings = load_dataset(config.input_dir)

        stage = "fit-prototypes"
        healthy_results = score_dataset(healthy, config, log=log)
        chunk_vectors = [v for res in healthy_results for v in res.chunk_vectors]
        if not chunk_vectors:
            raise DataError("healthy corpus produced no scorable chunks")
        proto = PrototypeNormalizer(names=names, floor=config.proto_floor)
        proto.fit(proto_mod.scores_to_matrix(chunk_vectors, names))
        emit("prototype.json", lambda p: proto_mod.save(proto, p))

        stage = "score"
        results = score_dataset(recordings, config, log=log)
        emit("scores.csv", lambda p: write_scores_csv(results, names, p))

        stage = "featurize"
        features = featurize_results(results, proto)
        if not features:
            raise DataError("no recording yielded at least one chunk")
        emit("features.csv", lambda p: write_features_csv(features, names, p))

        stage = "loso"
        document = evaluate_features(features, config)
        emit("report.json", lambda p: _write_json(document, p))
    except SpeechmarkError as exc:
        for path in written:
            try:
                os.unlink(path)
            except OSError:
                pass
        raise StageFailure(stage, exc) from exc
    return {
        "out_dir": config.out_dir,
        "recordings": len(recordings),
        "healthy": len(healthy),
        "features": len(features),
    }


def _write_json(document, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(document, fh, indent=1)
        fh.write("\n")
