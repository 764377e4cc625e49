import json
import os

import pytest

from speechmark.config import PipelineConfig
from speechmark.errors import DataError
from speechmark.pipeline import (
    StageFailure,
    featurize_results,
    prepare_task,
    process_recording,
    read_features_csv,
    run_pipeline,
    score_dataset,
    write_features_csv,
)
from speechmark.prototype import FeatureVector


def write_doc(directory, doc):
    path = directory / f"{doc['recording_id']}.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


class CollectLog:
    def __init__(self):
        self.events = []

    def event(self, name, **fields):
        self.events.append((name, fields))


def test_short_recording_skipped_and_reported(tmp_path):
    from speechmark.synth import generate_recording

    docs = [
        generate_recording("long_a", "s1", "control", seed=[1, 1], target_words=260),
        generate_recording("tiny_b", "s2", "control", seed=[1, 2], target_words=30),
    ]
    for d in docs:
        write_doc(tmp_path, d)
    from speechmark import load_dataset

    log = CollectLog()
    results = score_dataset(load_dataset(tmp_path), PipelineConfig(), log=log)
    by_id = {r.recording_id: r for r in results}
    assert by_id["long_a"].averaged is not None
    assert by_id["tiny_b"].averaged is None and by_id["tiny_b"].n_chunks == 0
    skipped = [f for n, f in log.events if n == "recording_scored" and f["skipped"]]
    assert [f["recording_id"] for f in [s for s in skipped]] == ["tiny_b"]


def test_features_csv_round_trip(tmp_path):
    features = [
        FeatureVector("r1", "s1", "control", 97.5, {"a": 1.0, "b": 0.25}),
        FeatureVector("r2", "s2", None, None, {"a": 0.5, "b": 1.0}),
    ]
    path = tmp_path / "f.csv"
    write_features_csv(features, ["a", "b"], path)
    loaded, names = read_features_csv(path)
    assert names == ["a", "b"]
    assert loaded == features


def test_read_features_rejects_foreign_csv(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text("foo,bar\n1,2\n", encoding="utf-8")
    with pytest.raises(DataError):
        read_features_csv(path)


def test_prepare_task_filters():
    features = [
        FeatureVector("r1", "s1", "control", 97.0, {"a": 1.0}),
        FeatureVector("r2", "s2", "broca", 44.0, {"a": 0.2}),
        FeatureVector("r3", "s3", "other", None, {"a": 0.3}),
        FeatureVector("r4", "s4", None, 60.0, {"a": 0.4}),
    ]
    X, y, subjects, names = prepare_task(features, "binary")
    assert sorted(set(y)) == ["aphasia", "control"] and len(y) == 3
    X, y, subjects, names = prepare_task(features, "subtype")
    assert len(y) == 2  # 'other' and unlabeled excluded
    X, y, subjects, names = prepare_task(features, "aq")
    assert len(y) == 3  # unlabeled-but-AQ'd r4 is eligible
    with pytest.raises(DataError):
        prepare_task(features, "speaker_id")


def test_run_pipeline_aborts_and_removes_partial_outputs(tmp_path):
    from speechmark.synth import generate_recording

    healthy = tmp_path / "healthy"
    broken = tmp_path / "input"
    healthy.mkdir()
    broken.mkdir()
    for i in range(3):
        write_doc(healthy, generate_recording(f"h{i}", f"s{i}", "control",
                                              seed=[2, i], target_words=230))
    # Input recordings all below the chunk minimum: featurize stage fails.
    for i in range(2):
        write_doc(broken, generate_recording(f"x{i}", f"t{i}", "control",
                                             seed=[3, i], target_words=40))
    out_dir = tmp_path / "out"
    config = PipelineConfig(input_dir=str(broken), healthy_dir=str(healthy),
                            out_dir=str(out_dir))
    with pytest.raises(StageFailure) as err:
        run_pipeline(config)
    assert err.value.stage == "featurize"
    assert os.listdir(out_dir) == []


def test_run_pipeline_requires_paths():
    with pytest.raises(DataError, match="input_dir"):
        run_pipeline(PipelineConfig())


def test_process_recording_deterministic(healthy_dir):
    from speechmark import load_recording

    rec = load_recording(healthy_dir / "healthy_003.json")
    a = process_recording(rec, PipelineConfig())
    b = process_recording(rec, PipelineConfig())
    assert a.averaged.values == b.averaged.values
    assert a.chunk_vectors == b.chunk_vectors


def test_featurize_skips_chunkless(healthy_dir):
    from speechmark import load_dataset
    from speechmark.prototype import PrototypeNormalizer, scores_to_matrix
    from speechmark.scores import SCORE_NAMES
    from speechmark.synth import generate_recording

    results = score_dataset(load_dataset(healthy_dir)[:3], PipelineConfig())
    vectors = [v for r in results for v in r.chunk_vectors]
    proto = PrototypeNormalizer(names=SCORE_NAMES).fit(scores_to_matrix(vectors))
    features = featurize_results(results, proto)
    assert len(features) == 3
    assert all(0.0 < v <= 1.0 for f in features for v in f.values.values())
