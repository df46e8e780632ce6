"""
Command-line tests
Drive every subcommand through main() and check output and exit codes
"""

import json

import pytest

from conftest import CAT_TREE, DISJOINT_TREE, DO_TREE, DOG_TREE, PO_TREE, make_record
from spikit.cli.main import main
from spikit.evalharness import load_report


def run(capsys, *argv):
    """Run the CLI; returns (exit code, stdout, stderr)"""
    code = main([str(arg) for arg in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def dog_and_cat(write_tree):
    return write_tree("dog.tree", DOG_TREE), write_tree("cat.tree", CAT_TREE)


@pytest.mark.e2e
class TestKernelCommand:
    """Test spikit kernel"""

    def test_text_output(self, capsys, dog_and_cat):
        dog, cat = dog_and_cat
        code, out, _ = run(capsys, "kernel", dog, cat, "--mode", "lexicalized")
        assert code == 0
        assert out == "K\t15.0\nK_norm\t0.625000\nd\t0.866025\n"

    def test_json_output(self, capsys, dog_and_cat):
        dog, cat = dog_and_cat
        code, out, _ = run(capsys, "kernel", dog, cat, "--json", "--lambda", "0.5")
        payload = json.loads(out)
        assert code == 0
        assert payload["K_norm"] == pytest.approx(1.0)
        assert payload["config"] == {"lambda": 0.5, "mode": "delexicalized"}

    def test_out_file(self, capsys, dog_and_cat, tmp_path):
        dog, _ = dog_and_cat
        target = tmp_path / "kernel.txt"
        code, out, _ = run(capsys, "kernel", dog, dog, "--out", target)
        assert code == 0
        assert out == ""
        assert target.read_text().startswith("K\t")

    def test_disjoint(self, capsys, write_tree, dog_and_cat):
        dog, _ = dog_and_cat
        other = write_tree("other.tree", DISJOINT_TREE)
        code, out, _ = run(capsys, "kernel", dog, other)
        assert code == 0
        assert "d\t1.414214" in out

    def test_syntax_error_location(self, capsys, write_tree, dog_and_cat):
        dog, _ = dog_and_cat
        bad = write_tree("bad.tree", "(S (NP (DT the))")
        code, _, err = run(capsys, "kernel", dog, bad)
        assert code == 2
        assert f"{bad}:1:" in err

    def test_invalid_tree(self, capsys, write_tree, dog_and_cat):
        dog, _ = dog_and_cat
        flat = write_tree("flat.tree", "(NP the dog)")
        code, out, err = run(capsys, "kernel", dog, flat)
        assert code == 2
        assert out == ""
        assert f"{flat}: invalid tree: FlatLeaves" in err

    def test_missing_file(self, capsys, dog_and_cat, tmp_path):
        dog, _ = dog_and_cat
        code, _, err = run(capsys, "kernel", dog, tmp_path / "absent.tree")
        assert code == 2
        assert err.startswith("spikit: ")

    @pytest.mark.parametrize("value", ["0", "1.5"])
    def test_bad_lambda(self, capsys, dog_and_cat, value):
        dog, cat = dog_and_cat
        code, _, err = run(capsys, "kernel", dog, cat, "--lambda", value)
        assert code == 3
        assert "configuration error" in err


@pytest.mark.e2e
class TestSpiCommand:
    """Test spikit spi"""

    @pytest.fixture
    def trees(self, write_tree):
        return (
            write_tree("po.tree", PO_TREE),
            write_tree("do.tree", DO_TREE),
            write_tree("ps.tree", PO_TREE),
        )

    def test_positive_probe(self, capsys, trees):
        code, out, _ = run(capsys, "spi", *trees)
        assert code == 0
        fields = dict(line.split("\t") for line in out.splitlines())
        assert fields["d_p"] == "1.000000"
        assert float(fields["spi"]) > 0
        assert fields["direction"] == "positive"

    def test_json_echoes_config(self, capsys, trees):
        code, out, _ = run(capsys, "spi", *trees, "--json", "--gamma", "5")
        payload = json.loads(out)
        assert code == 0
        assert payload["config"]["gamma"] == 5.0
        assert payload["config"]["variant"] == "tanh"
        assert payload["direction"] == "positive"

    def test_gamma_out_of_range(self, capsys, trees):
        code, _, err = run(capsys, "spi", *trees, "--gamma", "50")
        assert code == 3
        assert "gamma" in err

    def test_gamma_from_environment(self, capsys, trees, monkeypatch):
        monkeypatch.setenv("SPIKIT_GAMMA", "50")
        code, _, _ = run(capsys, "spi", *trees)
        assert code == 3

    def test_flag_beats_environment(self, capsys, trees, monkeypatch):
        monkeypatch.setenv("SPIKIT_GAMMA", "50")
        code, _, _ = run(capsys, "spi", *trees, "--gamma", "3")
        assert code == 0

    def test_epsilon_makes_neutral(self, capsys, write_tree):
        dog = write_tree("dog.tree", DOG_TREE)
        cat = write_tree("cat.tree", CAT_TREE)
        code, out, _ = run(capsys, "spi", dog, dog, cat, "--epsilon", "0.1")
        assert code == 0
        assert "direction\tneutral" in out


@pytest.mark.e2e
class TestEvalCommand:
    """Test spikit eval"""

    def test_report_to_stdout(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "eval", fixtures_dir / "sample_dataset.jsonl")
        assert code == 0
        report = load_report(out)
        assert len(report.per_record) == 6
        assert report.correlations is not None
        assert report.correlations.image.n == 5

    def test_report_file_and_summary(self, capsys, fixtures_dir, tmp_path):
        target = tmp_path / "report.csv"
        code, out, _ = run(
            capsys,
            "eval",
            fixtures_dir / "sample_dataset.jsonl",
            "--format",
            "csv",
            "--out",
            target,
        )
        assert code == 0
        assert target.read_text().splitlines()[1] == "id,type,d_p,d_n,spi,direction"
        assert out.splitlines()[0] == "type\tn\tmean_spi\tpositive_rate"
        assert any(line.startswith("simple_po\t2\t") for line in out.splitlines())
        assert any(line.startswith("image_similarity\tr=") for line in out.splitlines())

    def test_json_summary(self, capsys, fixtures_dir, tmp_path):
        code, out, _ = run(
            capsys,
            "eval",
            fixtures_dir / "sample_dataset.jsonl",
            "--out",
            tmp_path / "report.json",
            "--json",
        )
        summary = json.loads(out)
        assert code == 0
        assert summary["per_type"]["s_genitive"]["positive_rate"] == 1.0
        assert summary["config"]["lambda"] == 1.0

    def test_metrics_file(self, capsys, fixtures_dir, tmp_path):
        metrics = tmp_path / "metrics.prom"
        code, _, _ = run(
            capsys,
            "eval",
            fixtures_dir / "sample_dataset.jsonl",
            "--metrics-out",
            metrics,
        )
        assert code == 0
        assert "spikit_records_scored_total" in metrics.read_text()

    def test_malformed_lines(self, capsys, write_jsonl):
        path = write_jsonl([make_record("a"), "{broken", make_record("b", predicted="(X")])
        code, out, err = run(capsys, "eval", path)
        assert code == 2
        assert out == ""
        assert f"{path}: line 2:" in err
        assert f"{path}: line 3:" in err

    def test_empty_dataset(self, capsys, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("", encoding="utf-8")
        code, _, err = run(capsys, "eval", path)
        assert code == 2
        assert "no records" in err

    def test_constant_spi_omits_correlation(self, capsys, write_jsonl):
        path = write_jsonl(
            [
                make_record(f"r{i}", sentence_similarity=value)
                for i, value in enumerate([0.1, 0.2, 0.3, 0.4])
            ]
        )
        code, out, err = run(capsys, "eval", path)
        report = load_report(out)
        assert code == 0
        assert report.correlations.sentence is None
        assert "correlation_skipped" in err

    def test_without_similarities(self, capsys, write_jsonl):
        path = write_jsonl([make_record("a"), make_record("b", predicted=DO_TREE)])
        code, out, _ = run(capsys, "eval", path)
        assert code == 0
        assert load_report(out).correlations is None


@pytest.mark.e2e
class TestGenCommand:
    """Test spikit gen"""

    def test_fixture_bindings(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "gen", fixtures_dir / "bindings.txt")
        lines = [json.loads(line) for line in out.splitlines()]
        assert code == 0
        assert len(lines) == 8
        assert lines[0] == {
            "type": "simple_po",
            "role": "positive_prime",
            "text": "The talented artist performs art to the audience.",
            "tree": lines[0]["tree"],
        }
        assert lines[1]["text"] == "The talented artist performs the audience art."
        assert lines[5]["text"] == "Reflections from the uniforms of the firefighters."
        # a structure type name leads its pair
        assert lines[6]["type"] == "complex_do"

    def test_swap_roles(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "gen", fixtures_dir / "bindings.txt", "--swap-roles")
        first = json.loads(out.splitlines()[0])
        assert code == 0
        assert first["type"] == "simple_do"

    def test_perplexity_filter(self, capsys, tmp_path):
        bindings = tmp_path / "bindings.txt"
        bindings.write_text(
            "simple_dative | subject=A man | verb=tells | direct_object=stories"
            " | prep=to | indirect_object=people\n",
            encoding="utf-8",
        )
        scores = tmp_path / "ppl.txt"
        scores.write_text("86.37\n310\n", encoding="utf-8")
        code, out, _ = run(capsys, "gen", bindings, "--scores", scores)
        texts = [json.loads(line)["text"] for line in out.splitlines()]
        assert code == 0
        assert texts == ["A man tells stories to people."]

    def test_missing_slot(self, capsys, tmp_path):
        bindings = tmp_path / "bindings.txt"
        bindings.write_text(
            "# header\nsimple_dative | subject=A man | verb=tells"
            " | direct_object=stories | indirect_object=people\n",
            encoding="utf-8",
        )
        code, _, err = run(capsys, "gen", bindings)
        assert code == 2
        assert f"{bindings}:2: missing slot 'prep'" in err

    def test_unknown_type(self, capsys, tmp_path):
        bindings = tmp_path / "bindings.txt"
        bindings.write_text("cleft | subject=it\n", encoding="utf-8")
        code, _, err = run(capsys, "gen", bindings)
        assert code == 2
        assert "cleft" in err

    def test_empty_bindings(self, capsys, tmp_path):
        bindings = tmp_path / "bindings.txt"
        bindings.write_text("", encoding="utf-8")
        code, out, _ = run(capsys, "gen", bindings)
        assert code == 0
        assert out == ""


@pytest.mark.e2e
class TestSweepCommand:
    """Test spikit sweep"""

    def test_explicit_grid(self, capsys):
        code, out, _ = run(capsys, "sweep", "--x-values=-1,0,1", "--gamma-grid", "3")
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "x,gamma,spi"
        assert len(lines) == 4
        assert lines[2] == "0.0,3.0,0.0"

    def test_default_grid(self, capsys, tmp_path):
        target = tmp_path / "sweep.csv"
        code, _, _ = run(capsys, "sweep", "--out", target)
        assert code == 0
        assert len(target.read_text().splitlines()) == 1 + 9 * 100

    def test_bad_list(self, capsys):
        code, _, err = run(capsys, "sweep", "--x-values", "a,b")
        assert code == 3
        assert "number list" in err

    def test_gamma_grid_out_of_range(self, capsys):
        code, _, _ = run(capsys, "sweep", "--gamma-grid", "0.1,20")
        assert code == 3

    def test_x_out_of_range(self, capsys):
        code, _, _ = run(capsys, "sweep", "--x-values", "2")
        assert code == 3


@pytest.mark.e2e
class TestStatsCommand:
    """Test spikit stats"""

    def test_sentence_file(self, capsys, tmp_path):
        corpus = tmp_path / "corpus.txt"
        corpus.write_text("The dog saw the cat.\n\n", encoding="utf-8")
        code, out, _ = run(capsys, "stats", corpus)
        fields = dict(line.split("\t") for line in out.splitlines())
        assert code == 0
        assert fields["token_count"] == "5"
        assert fields["word_type_count"] == "4"
        assert fields["ttr"] == "0.8000"

    def test_perplexities_json(self, capsys, tmp_path):
        corpus = tmp_path / "corpus.txt"
        corpus.write_text("a b\nc d\n", encoding="utf-8")
        ppl = tmp_path / "ppl.txt"
        ppl.write_text("80\n92.74\n", encoding="utf-8")
        code, out, _ = run(capsys, "stats", corpus, "--perplexities", ppl, "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload["mean_perplexity"] == pytest.approx(86.37)
        assert payload["token_range"] == [2, 2]

    def test_dataset_trees(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "stats", fixtures_dir / "sample_dataset.jsonl")
        fields = dict(line.split("\t") for line in out.splitlines())
        assert code == 0
        assert fields["sentence_count"] == "18"

    def test_empty_corpus(self, capsys, tmp_path):
        corpus = tmp_path / "corpus.txt"
        corpus.write_text("\n", encoding="utf-8")
        code, _, _ = run(capsys, "stats", corpus)
        assert code == 2


@pytest.mark.e2e
class TestCorrelateCommand:
    """Test spikit correlate"""

    def test_text_output(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "correlate", fixtures_dir / "sample_dataset.jsonl")
        lines = out.splitlines()
        assert code == 0
        assert lines[0].startswith("sentence_similarity\tr=")
        assert "\tn=6\tskipped=0\tmethod=t" in lines[0]
        assert "\tn=5\tskipped=1\t" in lines[1]

    def test_permutations_and_scatter(self, capsys, fixtures_dir, tmp_path):
        scatter = tmp_path / "points.csv"
        code, out, _ = run(
            capsys,
            "correlate",
            fixtures_dir / "sample_dataset.jsonl",
            "--permutations",
            "99",
            "--scatter-out",
            scatter,
            "--json",
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["correlations"]["sentence"]["method"] == "permutation"
        rows = scatter.read_text().splitlines()
        assert rows[0] == "field,similarity,spi"
        assert len(rows) == 1 + 6 + 5

    def test_no_similarities(self, capsys, write_jsonl):
        path = write_jsonl([make_record("a"), make_record("b")])
        code, out, _ = run(capsys, "correlate", path)
        assert code == 0
        assert out == (
            "sentence_similarity\tomitted\tskipped=2\n"
            "image_similarity\tomitted\tskipped=2\n"
        )

    def test_constant_spi(self, capsys, write_jsonl):
        path = write_jsonl(
            [
                make_record(f"r{i}", sentence_similarity=value)
                for i, value in enumerate([0.1, 0.2, 0.3, 0.4])
            ]
        )
        code, out, _ = run(capsys, "correlate", path)
        assert code == 0
        assert out.splitlines()[0] == "sentence_similarity\tomitted\tskipped=0"

    def test_constant_similarity(self, capsys, write_jsonl):
        path = write_jsonl(
            [
                make_record(f"r{i}", predicted=tree, image_similarity=0.5)
                for i, tree in enumerate([PO_TREE, DO_TREE, PO_TREE, DO_TREE])
            ]
        )
        code, out, _ = run(capsys, "correlate", path)
        assert code == 0
        assert out.splitlines()[1] == "image_similarity\tomitted\tskipped=0"

    def test_too_few_points(self, capsys, write_jsonl):
        path = write_jsonl(
            [
                make_record("a", sentence_similarity=0.2),
                make_record("b", sentence_similarity=0.4),
            ]
        )
        code, _, err = run(capsys, "correlate", path)
        assert code == 2
        assert "sentence_similarity" in err


@pytest.mark.e2e
class TestGlobalFlags:
    """Test top-level options"""

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["--version"])
        assert info.value.code == 0
        assert capsys.readouterr().out.startswith("spikit ")

    def test_json_logs(self, capsys, fixtures_dir):
        code, _, err = run(
            capsys,
            "--log-level",
            "INFO",
            "--log-json",
            "eval",
            fixtures_dir / "sample_dataset.jsonl",
        )
        events = [json.loads(line)["event"] for line in err.splitlines()]
        assert code == 0
        assert "dataset_loaded" in events
        assert "records_evaluated" in events

    def test_bad_log_level(self, capsys, fixtures_dir):
        code, _, _ = run(
            capsys, "--log-level", "CHATTY", "stats", fixtures_dir / "bindings.txt"
        )
        assert code == 3
