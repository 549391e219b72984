import json

import pytest

from jspg.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, main

from goldens import GOLDEN_HYPOTHESIS


@pytest.fixture()
def workdir(tmp_path, golden_resources_dir):
    (tmp_path / "dict.txt").write_text(
        "语音识别\n天气预报\n人工智能\n", encoding="utf-8"
    )
    rows = [
        {"id": "u1", "hypotheses": [GOLDEN_HYPOTHESIS], "gold_keywords": ["语音识别"]},
        {"id": "u2", "hypotheses": ["天气预报说明天有雨"], "gold_keywords": ["天气预报"]},
        {"id": "u3", "hypotheses": ["天气预报说明天有雨"], "gold_keywords": ["人工智能"]},
    ]
    (tmp_path / "data.jsonl").write_text(
        "\n".join(json.dumps(r, ensure_ascii=False) for r in rows) + "\n",
        encoding="utf-8",
    )
    return {
        "resources": str(golden_resources_dir),
        "dict": str(tmp_path / "dict.txt"),
        "data": str(tmp_path / "data.jsonl"),
        "tmp": tmp_path,
    }


def run(args):
    return main(args)


class TestRetrieve:
    def test_golden_pinyin_only(self, workdir, capsys):
        code = run(
            [
                "retrieve",
                "--resources", workdir["resources"],
                "--dictionary", workdir["dict"],
                "--dataset", workdir["data"],
                "--alpha", "1", "--beta", "0",
                "--top-k", "3",
            ]
        )
        assert code == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 3
        first = json.loads(lines[0])
        assert first["utterance_id"] == "u1"
        top = first["retrieved"][0]
        assert top["keyword"] == "语音识别"
        assert top["rank"] == 1
        assert top["f_p"] == 0.75
        assert top["f"] == 0.75
        assert top["f_s"] is None

    def test_feature_glyph_equals_zero_weights(self, workdir, capsys):
        base = [
            "retrieve",
            "--resources", workdir["resources"],
            "--dictionary", workdir["dict"],
            "--dataset", workdir["data"],
            "--top-k", "3",
        ]
        run(base + ["--feature", "glyph"])
        out_feature = capsys.readouterr().out
        run(base + ["--alpha", "0", "--beta", "0", "--feature", "pg"])
        out_weights = capsys.readouterr().out
        assert out_feature == out_weights

    def test_writes_file(self, workdir):
        out = workdir["tmp"] / "out.jsonl"
        code = run(
            [
                "retrieve",
                "--resources", workdir["resources"],
                "--dictionary", workdir["dict"],
                "--dataset", workdir["data"],
                "--out", str(out),
            ]
        )
        assert code == EXIT_OK
        assert len(out.read_text(encoding="utf-8").strip().splitlines()) == 3

    def test_top_k_zero_is_usage_error(self, workdir, capsys):
        code = run(
            [
                "retrieve",
                "--resources", workdir["resources"],
                "--dictionary", workdir["dict"],
                "--dataset", workdir["data"],
                "--top-k", "0",
            ]
        )
        assert code == EXIT_USAGE
        assert "top_k" in capsys.readouterr().err

    def test_unknown_flag_is_usage_error(self, workdir, capsys):
        code = run(["retrieve", "--nope"])
        assert code == EXIT_USAGE

    def test_missing_dataset_is_data_error(self, workdir, capsys):
        code = run(
            [
                "retrieve",
                "--resources", workdir["resources"],
                "--dictionary", workdir["dict"],
                "--dataset", str(workdir["tmp"] / "absent.jsonl"),
            ]
        )
        assert code == EXIT_DATA

    def test_malformed_dataset_names_line(self, workdir, capsys):
        bad = workdir["tmp"] / "bad.jsonl"
        bad.write_text('{"id": "u1", "hypotheses": ["a"]}\n{broken\n', encoding="utf-8")
        code = run(
            [
                "retrieve",
                "--resources", workdir["resources"],
                "--dictionary", workdir["dict"],
                "--dataset", str(bad),
            ]
        )
        assert code == EXIT_DATA
        assert ":2:" in capsys.readouterr().err

    def test_resources_env_default(self, workdir, capsys, monkeypatch):
        monkeypatch.setenv("JSPG_RESOURCES_DIR", workdir["resources"])
        code = run(
            [
                "retrieve",
                "--dictionary", workdir["dict"],
                "--dataset", workdir["data"],
            ]
        )
        assert code == EXIT_OK

    def test_missing_resources_is_usage_error(self, workdir, capsys, monkeypatch):
        monkeypatch.delenv("JSPG_RESOURCES_DIR", raising=False)
        code = run(
            [
                "retrieve",
                "--dictionary", workdir["dict"],
                "--dataset", workdir["data"],
            ]
        )
        assert code == EXIT_USAGE

    def test_embeddings_flow_through(self, workdir, capsys):
        emb = workdir["tmp"] / "emb.jsonl"
        records = [
            {"kind": "query", "key": "u1", "embedding": [1.0, 0.0]},
            {"kind": "keyword", "key": "语音识别", "embedding": [1.0, 0.0]},
        ]
        emb.write_text(
            "\n".join(json.dumps(r, ensure_ascii=False) for r in records) + "\n",
            encoding="utf-8",
        )
        code = run(
            [
                "retrieve",
                "--resources", workdir["resources"],
                "--dictionary", workdir["dict"],
                "--dataset", workdir["data"],
                "--embeddings", str(emb),
                "--feature", "semantic",
            ]
        )
        assert code == EXIT_OK
        first = json.loads(capsys.readouterr().out.strip().splitlines()[0])
        assert first["retrieved"][0]["keyword"] == "语音识别"
        assert first["retrieved"][0]["f_s"] == 1.0


class TestEval:
    def test_hand_counted_csv(self, workdir, capsys):
        out_csv = workdir["tmp"] / "report.csv"
        out_jsonl = workdir["tmp"] / "retrievals.jsonl"
        code = run(
            [
                "eval",
                "--resources", workdir["resources"],
                "--dictionary", workdir["dict"],
                "--dataset", workdir["data"],
                "--alpha", "1", "--beta", "0",
                "--k-list", "1,3",
                "--out-csv", str(out_csv),
                "--out-jsonl", str(out_jsonl),
            ]
        )
        assert code == EXIT_OK
        lines = out_csv.read_text().strip().splitlines()
        assert lines[0] == "k,recall_micro,recall_macro,hits,total"
        # u1 and u2 hit at rank 1; u3's gold is unrelated to its hypothesis.
        assert lines[1] == "1,0.666667,0.666667,2,3"
        assert lines[2] == "3,1.000000,1.000000,3,3"
        assert len(out_jsonl.read_text().strip().splitlines()) == 3
        assert "R@1" in capsys.readouterr().out

    def test_bad_k_list_is_usage_error(self, workdir, capsys):
        code = run(
            [
                "eval",
                "--resources", workdir["resources"],
                "--dictionary", workdir["dict"],
                "--dataset", workdir["data"],
                "--k-list", "1,zero",
            ]
        )
        assert code == EXIT_USAGE

    def test_empty_dataset_is_data_error(self, workdir, capsys):
        empty = workdir["tmp"] / "empty.jsonl"
        empty.write_text("", encoding="utf-8")
        code = run(
            [
                "eval",
                "--resources", workdir["resources"],
                "--dictionary", workdir["dict"],
                "--dataset", str(empty),
            ]
        )
        assert code == EXIT_DATA


class TestCharSim:
    def test_golden_pair(self, workdir, capsys):
        code = run(["char-sim", "--resources", workdir["resources"], "于", "语"])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "sim_pinyin: 0.8333" in out

    def test_identity_pair(self, workdir, capsys):
        code = run(["char-sim", "--resources", workdir["resources"], "语", "语"])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "sim_pinyin: 1.0000" in out
        assert "sim_glyph:  1.0000" in out

    def test_unknown_pair_notes_missing_data(self, workdir, capsys):
        code = run(["char-sim", "--resources", workdir["resources"], "猫", "狗"])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "sim_pinyin: 0.0000" in out
        assert "missing" in out

    def test_multichar_argument_is_usage_error(self, workdir, capsys):
        assert run(["char-sim", "--resources", workdir["resources"], "语音", "语"]) == EXIT_USAGE


class TestAlign:
    def test_golden_matrix_print(self, workdir, capsys):
        code = run(
            [
                "align",
                "--resources", workdir["resources"],
                "语音识别", GOLDEN_HYPOTHESIS,
                "--feature", "pinyin",
            ]
        )
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "RL:   0.7500" in out
        assert "cost: 1.0000" in out
        assert "0.95" in out  # a matrix interior cell
        assert "inf" in out  # blocked first-row cells
        assert "align(7,4)" in out

    def test_identical_pair(self, workdir, capsys):
        code = run(["align", "--resources", workdir["resources"], "语音", "语音"])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "RL:   1.0000" in out

    def test_keyword_longer_than_hypothesis(self, workdir, capsys):
        # Forced interior skip: align(语,语)=0 + skip(音)=1 + cost(音,别)=0.375.
        code = run(["align", "--resources", workdir["resources"], "语音别", "语音"])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "cost: 1.3750" in out
        assert "skip-kw(1,2)" in out


class TestValidate:
    def test_ok(self, workdir, capsys):
        code = run(["validate-resources", "--resources", workdir["resources"]])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "characters: 8" in out
        assert "OK" in out

    def test_broken_table_is_data_error(self, tmp_path, capsys):
        (tmp_path / "pinyin.tsv").write_text("语\tYU3\n", encoding="utf-8")
        code = run(["validate-resources", "--resources", str(tmp_path)])
        assert code == EXIT_DATA
        assert ":1:" in capsys.readouterr().err
