import io
import json

import pytest

from speechmark.cli import build_parser, main
from speechmark.config import PipelineConfig, load_config
from speechmark.errors import ConfigError
from speechmark.synth import write_corpus


@pytest.fixture(scope="module")
def small_corpus(tmp_path_factory):
    """A reduced synthetic corpus so CLI tests stay fast."""
    root = tmp_path_factory.mktemp("smallcorpus")
    write_corpus(root, seed=7)
    healthy = root / "healthy"
    corpus = root / "corpus"
    for extra in sorted(healthy.glob("*.json"))[6:]:
        extra.unlink()
    keep = (
        sorted(corpus.glob("control_*.json"))[:4]
        + sorted(corpus.glob("anomic_*.json"))[:2]
        + sorted(corpus.glob("broca_*.json"))[:2]
    )
    for path in corpus.glob("*.json"):
        if path not in keep:
            path.unlink()
    return root


class TestConfig:
    def test_defaults_valid(self):
        PipelineConfig().validate()

    def test_negative_pause_threshold(self):
        with pytest.raises(ConfigError, match="pause_threshold_s"):
            PipelineConfig(pause_threshold_s=-1.0).validate()

    def test_quantiles_must_increase(self):
        with pytest.raises(ConfigError, match="quantiles"):
            PipelineConfig(quantiles=(50, 25)).validate()

    def test_quantiles_open_interval(self):
        with pytest.raises(ConfigError, match="quantiles"):
            PipelineConfig(quantiles=(0, 50)).validate()

    def test_toml_file_and_overrides(self, tmp_path):
        cfg_file = tmp_path / "cfg.toml"
        cfg_file.write_text("min_chunk_words = 50\nseed = 5\n", encoding="utf-8")
        config = load_config(cfg_file, {"seed": 9}, env={})
        assert config.min_chunk_words == 50
        assert config.seed == 9  # flag beats file

    def test_env_seed_between_file_and_flags(self, tmp_path):
        cfg_file = tmp_path / "cfg.toml"
        cfg_file.write_text("seed = 5\n", encoding="utf-8")
        config = load_config(cfg_file, {}, env={"SPEECHMARK_SEED": "77"})
        assert config.seed == 77
        config = load_config(cfg_file, {"seed": 3}, env={"SPEECHMARK_SEED": "77"})
        assert config.seed == 3

    def test_unknown_key_rejected(self, tmp_path):
        cfg_file = tmp_path / "cfg.toml"
        cfg_file.write_text("banana = 1\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="banana"):
            load_config(cfg_file, {})


class TestParser:
    def test_help_lists_every_config_key(self):
        parser = build_parser()
        run_parser = None
        for action in parser._subparsers._group_actions[0].choices.items():
            if action[0] == "run":
                run_parser = action[1]
        text = run_parser.format_help()
        from speechmark.cli import _CONFIG_FLAGS

        for flag, _, _, _ in _CONFIG_FLAGS:
            assert flag in text
        assert "default" in text

    def test_subcommands_exist(self):
        parser = build_parser()
        choices = parser._subparsers._group_actions[0].choices
        for name in ("align", "annotate", "score", "fit-prototypes",
                     "featurize", "train", "loso", "report", "run"):
            assert name in choices


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


class TestCli:
    def test_align_summary_lines(self, small_corpus):
        code, text = run_cli("align", "--input", str(small_corpus / "healthy"))
        assert code == 0
        lines = [json.loads(l) for l in text.splitlines()]
        assert len(lines) == 6
        assert all("edit_cost" in l for l in lines)

    def test_align_dump_ops(self, small_corpus):
        code, text = run_cli("align", "--input", str(small_corpus / "healthy"), "--dump")
        assert code == 0
        first = json.loads(text.splitlines()[0])
        assert set(first) == {"recording_id", "kind", "acoustic_index", "clean_index"}

    def test_annotate_chunk_summaries(self, small_corpus):
        code, text = run_cli("annotate", "--input", str(small_corpus / "corpus"))
        assert code == 0
        rows = [json.loads(l) for l in text.splitlines()]
        assert all(
            set(r) == {"recording_id", "chunk_index", "words", "pauses", "fillers", "duration"}
            for r in rows
        )
        assert all(r["words"] >= 200 for r in rows)

    def test_score_writes_csv_with_missing_masks(self, small_corpus, tmp_path):
        out_csv = tmp_path / "scores.csv"
        code, _ = run_cli("score", "--input", str(small_corpus / "corpus"),
                          "--out", str(out_csv))
        assert code == 0
        header = out_csv.read_text().splitlines()[0].split(",")
        from speechmark.scores import SCORE_NAMES

        assert header[:4] == ["recording_id", "subject_id", "label", "aq"]
        assert len(header) == 4 + 2 * len(SCORE_NAMES)
        assert f"{SCORE_NAMES[0]}_missing" in header

    def test_full_cli_sequence(self, small_corpus, tmp_path):
        proto = tmp_path / "proto.json"
        feats = tmp_path / "features.csv"
        report = tmp_path / "report.json"
        model = tmp_path / "model.json"

        assert run_cli("fit-prototypes", "--healthy-dir", str(small_corpus / "healthy"),
                       "--out", str(proto))[0] == 0
        assert run_cli("featurize", "--input", str(small_corpus / "corpus"),
                       "--proto", str(proto), "--out", str(feats))[0] == 0
        assert run_cli("train", "--task", "binary", "--features", str(feats),
                       "--out", str(model))[0] == 0
        assert run_cli("loso", "--task", "binary", "--features", str(feats),
                       "--report", str(report))[0] == 0

        model_doc = json.loads(model.read_text())
        assert set(model_doc) >= {"task", "names", "classes", "weights", "bias"}
        report_doc = json.loads(report.read_text())
        assert "binary" in report_doc

        code, text = run_cli("report", "--report", str(report), "--format", "markdown")
        assert code == 0
        assert "| Method | Accuracy | F1 |" in text

    def test_loso_subtype_per_category(self, small_corpus, tmp_path):
        proto = tmp_path / "proto.json"
        feats = tmp_path / "features.csv"
        report = tmp_path / "report.json"
        run_cli("fit-prototypes", "--healthy-dir", str(small_corpus / "healthy"),
                "--out", str(proto))
        run_cli("featurize", "--input", str(small_corpus / "corpus"),
                "--proto", str(proto), "--out", str(feats))
        code, _ = run_cli("loso", "--task", "subtype", "--features", str(feats),
                          "--report", str(report), "--per-category")
        assert code == 0
        doc = json.loads(report.read_text())
        assert set(doc["per_category"]) == {
            "fluency", "lexical_richness", "syntax", "pronunciation", "coherence",
        }
        code, text = run_cli("report", "--report", str(report))
        assert "| Class | Precision | Recall | F1 |" in text
        assert "| Score category | Precision | Recall | F1 |" in text

    def test_run_pipeline_and_artifacts(self, small_corpus, tmp_path):
        out_dir = tmp_path / "out"
        code, text = run_cli(
            "run", "--input-dir", str(small_corpus / "corpus"),
            "--healthy-dir", str(small_corpus / "healthy"),
            "--out-dir", str(out_dir),
        )
        assert code == 0
        for artifact in ("prototype.json", "scores.csv", "features.csv", "report.json"):
            assert (out_dir / artifact).exists()

    def test_config_error_exit_code(self, small_corpus):
        code, _ = run_cli("annotate", "--input", str(small_corpus / "corpus"),
                          "--pause-threshold-s", "-1")
        assert code == 2

    def test_data_error_exit_code(self, tmp_path):
        empty = tmp_path / "empty"
        empty.mkdir()
        code, _ = run_cli("align", "--input", str(empty))
        assert code == 3

    def test_run_data_error_exit_code(self, tmp_path):
        code, _ = run_cli("run", "--input-dir", str(tmp_path / "nope"),
                          "--healthy-dir", str(tmp_path / "nope"),
                          "--out-dir", str(tmp_path / "out"))
        assert code == 3

    def test_parallel_scoring_matches_serial(self, small_corpus, tmp_path):
        serial = tmp_path / "serial.csv"
        parallel = tmp_path / "parallel.csv"
        run_cli("score", "--input", str(small_corpus / "corpus"), "--out", str(serial))
        run_cli("score", "--input", str(small_corpus / "corpus"), "--out", str(parallel),
                "--jobs", "2")
        assert serial.read_bytes() == parallel.read_bytes()

    def test_seed_env_var_applies(self, small_corpus, tmp_path, monkeypatch):
        monkeypatch.setenv("SPEECHMARK_SEED", "not-an-int")
        code, _ = run_cli("annotate", "--input", str(small_corpus / "corpus"))
        assert code == 2
