import json
import subprocess
import sys

import pytest

from folkbangla.cli import dispatch
from folkbangla.data import data_path


@pytest.fixture()
def tale_file(tmp_path):
    src = data_path("mini_tale.txt").read_text("utf-8")
    path = tmp_path / "tale.txt"
    path.write_text(src, encoding="utf-8")
    return path


class TestDispatch:
    def test_no_arguments_is_usage_error(self, capsys):
        assert dispatch([]) == 1
        assert "usage" in capsys.readouterr().err

    def test_unknown_subcommand_is_usage_error(self, capsys):
        assert dispatch(["frobnicate"]) == 1

    def test_bad_flag_is_usage_error(self, capsys):
        assert dispatch(["tokenize", "--mode", "nonsense"]) == 1

    def test_missing_input_is_data_error(self, capsys, tmp_path):
        assert dispatch(["stats", str(tmp_path / "none.txt")]) == 2
        assert "error" in capsys.readouterr().err

    def test_config_logged_to_stderr(self, capsys, tale_file):
        assert dispatch(["stats", str(tale_file)]) == 0
        captured = capsys.readouterr()
        assert "config:" in captured.err
        assert captured.out.strip().isdigit()

    def test_help_exits_zero(self, capsys):
        assert dispatch(["-h"]) == 0
        assert "tokenize" in capsys.readouterr().out

    def test_module_entry_point(self, tale_file):
        proc = subprocess.run(
            [sys.executable, "-m", "folkbangla", "stats", str(tale_file)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "49"

    def test_stdin_input(self):
        proc = subprocess.run(
            [sys.executable, "-m", "folkbangla", "tokenize", "--mode", "punct"],
            input="রাজা গেলেন।",
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert len(proc.stdout.splitlines()) == 3


class TestTokenizeCommand:
    def test_punct_rows(self, capsys, tmp_path):
        f = tmp_path / "in.txt"
        f.write_text("রাজা গেলেন।", encoding="utf-8")
        assert dispatch(["tokenize", "--mode", "punct", str(f)]) == 0
        rows = [line.split("\t") for line in capsys.readouterr().out.splitlines()]
        assert [r[0] for r in rows] == ["রাজা", "গেলেন", "।"]
        assert [r[3] for r in rows] == ["Word", "Word", "Punct"]

    def test_sentences_mode(self, capsys, tmp_path):
        f = tmp_path / "in.txt"
        f.write_text("ক। খ?", encoding="utf-8")
        assert dispatch(["tokenize", "--mode", "sentences", str(f)]) == 0
        rows = capsys.readouterr().out.splitlines()
        assert len(rows) == 2
        assert rows[0].endswith("Sentence")

    def test_out_flag_writes_file(self, tmp_path):
        f = tmp_path / "in.txt"
        f.write_text("ক খ", encoding="utf-8")
        out = tmp_path / "tokens.tsv"
        assert dispatch(["tokenize", "--mode", "basic", "--out", str(out), str(f)]) == 0
        assert len(out.read_text("utf-8").splitlines()) == 2


class TestSubwordCommands:
    def test_train_and_encode(self, capsys, tmp_path):
        corpus = tmp_path / "c.txt"
        corpus.write_text("রাজা রাজা রাজা রানী রানী", encoding="utf-8")
        model = tmp_path / "model.bpe"
        assert dispatch(["train-subword", "--vocab-size", "40", "--out", str(model), str(corpus)]) == 0
        capsys.readouterr()
        inp = tmp_path / "in.txt"
        inp.write_text("রাজা", encoding="utf-8")
        assert dispatch(["encode", "--model", str(model), str(inp)]) == 0
        rows = [line.split("\t") for line in capsys.readouterr().out.splitlines()]
        assert rows, "expected at least one encoded piece"
        assert all(len(r) == 3 and ":" in r[2] for r in rows)


class TestEmbedCommands:
    def test_train_and_query(self, capsys, tmp_path):
        corpus = tmp_path / "c.txt"
        corpus.write_text("রাজা রানী বন নদী। রাজা রানী বন নদী। রাজা বন রানী নদী।", encoding="utf-8")
        vecs = tmp_path / "vecs.txt"
        rc = dispatch(
            [
                "train-embed", "--mode", "word2vec", "--dim", "8", "--window", "2",
                "--min-count", "1", "--epochs", "2", "--seed", "7",
                "--out", str(vecs), str(corpus),
            ]
        )
        assert rc == 0
        capsys.readouterr()
        header = vecs.read_text("utf-8").splitlines()[0]
        assert header.split()[1] == "8"
        assert dispatch(["nn", "--model", str(vecs), "--word", "রাজা", "--k", "2"]) == 0
        rows = capsys.readouterr().out.splitlines()
        assert len(rows) == 2
        assert all(len(r.split("\t")) == 2 for r in rows)

    def test_nn_oov_word_is_data_error(self, capsys, tmp_path):
        vecs = tmp_path / "vecs.txt"
        vecs.write_text("1 2\nক 0.5 0.5\n", encoding="utf-8")
        assert dispatch(["nn", "--model", str(vecs), "--word", "অজানা", "--k", "1"]) == 2


class TestCharactersCommand:
    def test_default_data_files(self, capsys, tale_file):
        assert dispatch(["characters", str(tale_file)]) == 0
        rows = [line.split("\t") for line in capsys.readouterr().out.splitlines()]
        got = {r[0]: r[1] for r in rows}
        assert got == {"রাজকুমার": "Hero", "রাক্ষস": "Villain", "সন্ন্যাসী": "Donor"}
        assert [int(r[3]) for r in rows] == [5, 4, 3]

    def test_explicit_data_files(self, capsys, tale_file, tmp_path):
        lex = tmp_path / "lex.tsv"
        lex.write_text("রাজকুমার\tHero\t0.9\n", encoding="utf-8")
        assert dispatch(["characters", "--lexicon", str(lex), str(tale_file)]) == 0
        rows = capsys.readouterr().out.splitlines()
        assert any("রাজকুমার" in r for r in rows)

    def test_data_dir_override(self, capsys, tale_file, tmp_path, monkeypatch):
        from folkbangla.propp import CharacterLexicon

        override = tmp_path / "datadir"
        override.mkdir()
        (override / "character_lexicon.tsv").write_text("রাক্ষস\tVillain\t0.9\n", encoding="utf-8")
        monkeypatch.setenv("FOLKBANGLA_DATA", str(override))
        assert set(CharacterLexicon.default().priors) == {"রাক্ষস"}
        # un-overridden files still come from the bundled data
        assert dispatch(["characters", str(tale_file)]) == 0
        rows = [line.split("\t") for line in capsys.readouterr().out.splitlines()]
        got = {r[0]: r[1] for r in rows}
        assert got["রাক্ষস"] == "Villain"
        # the prince keeps its contextual Hero evidence but loses the 0.9 prior
        prince = next(r for r in rows if r[0] == "রাজকুমার")
        assert float(prince[2]) == pytest.approx(0.9)


class TestSummarizeCommand:
    def test_paragraph_output(self, capsys, tmp_path):
        f = tmp_path / "in.txt"
        f.write_text("ক খ। ক গ। ক ক।", encoding="utf-8")
        assert dispatch(["summarize", "--k", "1", str(f)]) == 0
        assert capsys.readouterr().out == "ক ক।\n"

    def test_scores_flag(self, capsys, tmp_path):
        f = tmp_path / "in.txt"
        f.write_text("ক খ। ক গ। ক ক।", encoding="utf-8")
        assert dispatch(["summarize", "--scores", str(f)]) == 0
        rows = [line.split("\t") for line in capsys.readouterr().out.splitlines()]
        assert [r[0] for r in rows] == ["0", "1", "2"]
        assert [float(r[1]) for r in rows] == [1.25, 1.25, 2.0]


class TestEvalCommand:
    def test_table_and_tsv(self, capsys, tmp_path):
        gold = tmp_path / "gold.tsv"
        pred = tmp_path / "pred.tsv"
        gold.write_text("d\tরাজা\tHero\nd\tরানী\tVillain\n", encoding="utf-8")
        pred.write_text("d\tরাজা\tHero\nd\tরানী\tVillain\n", encoding="utf-8")
        assert dispatch(["eval", "--gold", str(gold), "--pred", str(pred)]) == 0
        out = capsys.readouterr().out
        assert "FolkBangla" in out and "100.00" in out
        assert dispatch(["eval", "--gold", str(gold), "--pred", str(pred), "--tsv"]) == 0
        tsv = capsys.readouterr().out.splitlines()
        assert tsv[0].split("\t")[:3] == ["model", "precision", "recall"]
        assert tsv[1].split("\t")[1] == "1.0000"

    def test_bad_role_is_data_error(self, capsys, tmp_path):
        gold = tmp_path / "gold.tsv"
        pred = tmp_path / "pred.tsv"
        gold.write_text("d\tরাজা\tHero\n", encoding="utf-8")
        pred.write_text("d\tরাজা\tKing\n", encoding="utf-8")
        assert dispatch(["eval", "--gold", str(gold), "--pred", str(pred)]) == 2

    def test_missing_required_flag_is_usage_error(self, capsys, tmp_path):
        pred = tmp_path / "pred.tsv"
        pred.write_text("", encoding="utf-8")
        assert dispatch(["eval", "--pred", str(pred)]) == 1


class TestPipelineCommand:
    ARGS = ["--dim", "16", "--epochs", "3", "--vocab-size", "120"]

    def test_artifacts_and_manifest(self, capsys, tale_file, tmp_path):
        out = tmp_path / "run"
        assert dispatch(["pipeline", "--out-dir", str(out), *self.ARGS, str(tale_file)]) == 0
        names = sorted(p.name for p in out.iterdir())
        assert names == [
            "characters.tsv",
            "manifest.json",
            "subword.bpe",
            "summary.txt",
            "tokens.tsv",
            "vectors.txt",
        ]
        manifest = json.loads((out / "manifest.json").read_text("utf-8"))
        assert manifest["seed"] == 42
        assert set(manifest["artifacts"]) == set(names) - {"manifest.json"}
        assert all(len(h) == 64 for h in manifest["artifacts"].values())

    def test_deterministic_reruns(self, capsys, tale_file, tmp_path):
        runs = []
        for name in ("a", "b"):
            out = tmp_path / name
            assert dispatch(
                ["pipeline", "--out-dir", str(out), "--seed", "42", *self.ARGS, str(tale_file)]
            ) == 0
            runs.append({p.name: p.read_bytes() for p in out.iterdir()})
        assert runs[0] == runs[1]

    def test_missing_input_names_first_stage(self, capsys, tmp_path):
        rc = dispatch(["pipeline", "--out-dir", str(tmp_path / "x"), "nope.txt"])
        assert rc == 2
        assert "stage tokenize" in capsys.readouterr().err
