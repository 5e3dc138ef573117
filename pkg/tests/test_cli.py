import csv
import json

import pytest

from topicforge.cli import main
from topicforge.corpus import DocTermMatrix, Vocabulary


def run(*argv):
    return main(["--quiet", *argv])


@pytest.fixture()
def workdir(tmp_path):
    out = str(tmp_path)
    assert run("synth", "-k", "2", "--words", "8", "--docs", "10",
               "--len", "20", "--seed", "7", "--out", out) == 0
    assert run("preprocess", "--input", str(tmp_path / "corpus.txt"),
               "--out", out, "--min-df", "1", "--max-df-ratio", "1.0") == 0
    return tmp_path


class TestSynth:
    def test_writes_corpus_and_truth(self, tmp_path):
        out = str(tmp_path)
        assert run("synth", "-k", "3", "--words", "5", "--docs", "4",
                   "--len", "6", "--seed", "1", "--out", out) == 0
        lines = (tmp_path / "corpus.txt").read_text().splitlines()
        assert len(lines) == 12
        truth = json.loads((tmp_path / "truth.json").read_text())
        blocks = [set(v) for v in truth.values()]
        assert len(blocks) == 3
        for i in range(3):
            for j in range(i + 1, 3):
                assert not blocks[i] & blocks[j]

    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            assert run("synth", "-k", "2", "--words", "4", "--docs", "3",
                       "--len", "5", "--seed", "3", "--out", str(out)) == 0
        assert (a / "corpus.txt").read_bytes() == (b / "corpus.txt").read_bytes()
        assert (a / "truth.json").read_bytes() == (b / "truth.json").read_bytes()

    def test_invalid_count(self, tmp_path):
        assert run("synth", "-k", "0", "--words", "4", "--docs", "3",
                   "--len", "5", "--out", str(tmp_path)) == 2


class TestPreprocess:
    def test_artifacts_written(self, workdir):
        for name in ("vocab.txt", "counts.mtx", "tfidf.mtx", "stats.json",
                     "preprocess.manifest.json"):
            assert (workdir / name).exists(), name
        stats = json.loads((workdir / "stats.json").read_text())
        assert stats["docs_kept"] == 20
        assert stats["docs_dropped"] == 0
        assert stats["docs_in"] == stats["docs_kept"] + stats["docs_dropped"]

    def test_artifacts_parse(self, workdir):
        vocab = Vocabulary.load(workdir / "vocab.txt")
        counts = DocTermMatrix.load(workdir / "counts.mtx")
        weighted = DocTermMatrix.load(workdir / "tfidf.mtx")
        assert counts.n_terms == len(vocab)
        assert counts.n_docs == weighted.n_docs == 20

    def test_dropped_docs_counted(self, tmp_path):
        src = tmp_path / "in.txt"
        src.write_text("real narrative text here\n42 17\nmore actual words\n")
        assert run("preprocess", "--input", str(src), "--out", str(tmp_path),
                   "--min-df", "1", "--max-df-ratio", "1.0") == 0
        stats = json.loads((tmp_path / "stats.json").read_text())
        assert stats["docs_dropped"] == 1

    def test_csv_without_text_col(self, tmp_path):
        src = tmp_path / "in.csv"
        src.write_text("a,b\n1,2\n")
        assert run("preprocess", "--input", str(src), "--format", "csv",
                   "--out", str(tmp_path)) == 2

    def test_csv_missing_column(self, tmp_path):
        src = tmp_path / "in.csv"
        src.write_text("id,text\n1,some words here\n")
        assert run("preprocess", "--input", str(src), "--format", "csv",
                   "--text-col", "narrative", "--out", str(tmp_path)) == 2

    def test_missing_input_file(self, tmp_path):
        assert run("preprocess", "--input", str(tmp_path / "nope.txt"),
                   "--out", str(tmp_path)) == 2

    def test_stopword_env_override(self, tmp_path, monkeypatch):
        src = tmp_path / "in.txt"
        src.write_text("alpha bravo charlie\nalpha bravo delta\n")
        stops = tmp_path / "stops.txt"
        stops.write_text("alpha\n")
        monkeypatch.setenv("TOPICFORGE_STOPWORDS", str(stops))
        assert run("preprocess", "--input", str(src), "--out", str(tmp_path),
                   "--min-df", "1", "--max-df-ratio", "1.0") == 0
        vocab = Vocabulary.load(tmp_path / "vocab.txt")
        assert "alpha" not in vocab.index
        assert "bravo" in vocab.index


class TestFit:
    def test_all_models(self, workdir):
        out = str(workdir)
        for model in ("plsa", "lsa", "lda", "nmf"):
            args = ["fit", "--model", model, "-k", "2", "--seed", "42",
                    "--iters", "50", "--out", out]
            assert run(*args) == 0
            assert (workdir / f"{model}.json").exists()
            assert (workdir / f"{model}.manifest.json").exists()
        obj = json.loads((workdir / "lda.json").read_text())
        assert len(obj["phi"]) == 2

    def test_k_zero_usage_error(self, workdir):
        assert run("fit", "--model", "lsa", "-k", "0",
                   "--out", str(workdir)) == 2

    def test_k_too_large_fit_error(self, workdir):
        assert run("fit", "--model", "plsa", "-k", "9999",
                   "--out", str(workdir)) == 3

    def test_missing_artifacts(self, tmp_path):
        assert run("fit", "--model", "plsa", "-k", "2",
                   "--out", str(tmp_path / "empty")) == 2

    def test_byte_identical_rerun(self, workdir):
        out = str(workdir)
        blobs = []
        for _ in range(2):
            assert run("fit", "--model", "plsa", "-k", "2", "--seed", "5",
                       "--iters", "40", "--out", out) == 0
            blobs.append((workdir / "plsa.json").read_bytes())
        assert blobs[0] == blobs[1]


class TestReport:
    @pytest.fixture()
    def fitted(self, workdir):
        out = str(workdir)
        for model in ("plsa", "lsa", "lda", "nmf"):
            assert run("fit", "--model", model, "-k", "2", "--seed", "1",
                       "--iters", "60", "--out", out) == 0
        return workdir

    def test_no_models_is_error(self, workdir):
        assert run("report", "--out", str(workdir)) == 2

    def test_all_artifacts(self, fitted):
        assert run("report", "--out", str(fitted), "--top-n", "5") == 0
        for name in ("topics.csv", "prevalence.csv", "coherence.csv",
                     "variance_curve.csv", "compare.json", "compare.txt"):
            assert (fitted / name).exists(), name
        clouds = list(fitted.glob("wordcloud-*.json"))
        assert len(clouds) == 4 * 2  # 4 models x k=2 topics

    def test_topics_csv_row_count(self, fitted):
        assert run("report", "--out", str(fitted), "--top-n", "5") == 0
        with open(fitted / "topics.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 4 * 2 * 5  # models x topics x top_n

    def test_compare_rows_sorted(self, fitted):
        assert run("report", "--out", str(fitted)) == 0
        obj = json.loads((fitted / "compare.json").read_text())
        assert len(obj["rows"]) == 4
        cs = [r["mean_coherence"] for r in obj["rows"]]
        assert cs == sorted(cs, reverse=True)

    def test_variance_curve_monotone(self, fitted):
        assert run("report", "--out", str(fitted)) == 0
        with open(fitted / "variance_curve.csv") as fh:
            rows = list(csv.DictReader(fh))
        vals = [float(r["cumulative_variance"]) for r in rows]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))

    def test_compare_alias(self, fitted):
        assert run("compare", "--out", str(fitted)) == 0
        assert (fitted / "compare.json").exists()
        assert not (fitted / "topics.csv").exists()

    def test_lsa_only_report(self, workdir):
        out = str(workdir)
        assert run("fit", "--model", "lsa", "-k", "2", "--out", out) == 0
        assert run("report", "--out", out) == 0
        assert (workdir / "variance_curve.csv").exists()
        with open(workdir / "prevalence.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert {r["model"] for r in rows} == {"lsa"}
        total = sum(float(r["prevalence"]) for r in rows)
        assert total == pytest.approx(1.0, abs=1e-9)
