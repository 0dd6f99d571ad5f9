"""End-to-end tests of the command line interface."""

from __future__ import annotations

import json

import pytest

from mscoupling.cli import main, run

SINGLE_EDGE_DESCRIPTOR = {
    "name": "pair",
    "services": [{"id": "A"}, {"id": "B"}],
    "edges": [{"source": "A", "target": "B"}],
}

CSV_FILES = (
    "service_metrics.csv",
    "pair_degree.csv",
    "pair_lwf.csv",
    "pair_gwf.csv",
    "pair_sc.csv",
    "summary.csv",
)


def write_descriptor(tmp_path, document, filename="project.json"):
    path = tmp_path / filename
    path.write_text(json.dumps(document), encoding="utf-8")
    return path


def write_corpus_project(root, dir_name, document):
    project_dir = root / dir_name
    project_dir.mkdir(parents=True)
    write_descriptor(project_dir, document)
    return project_dir


def read_tree(root):
    return {
        str(path.relative_to(root)): path.read_bytes()
        for path in sorted(root.rglob("*"))
        if path.is_file()
    }


class TestAnalyze:
    def test_default_outputs(self, tmp_path, capsys):
        source = write_descriptor(tmp_path, SINGLE_EDGE_DESCRIPTOR)
        out = tmp_path / "out"
        assert main(["analyze", str(source), "--out", str(out)]) == 0
        produced = {path.name for path in out.iterdir()}
        assert produced == set(CSV_FILES) | {"graph.dot"}
        line = capsys.readouterr().out.strip()
        assert line == "pair: services=2 edges=1 siy=0 sc_max=0.50 sc_avg=0.25"

    def test_emit_selection(self, tmp_path):
        source = write_descriptor(tmp_path, SINGLE_EDGE_DESCRIPTOR)
        out = tmp_path / "out"
        assert main(["analyze", str(source), "--out", str(out), "--emit", "svg"]) == 0
        assert {path.name for path in out.iterdir()} == {"graph.svg"}

    def test_no_leftover_temp_files(self, tmp_path):
        source = write_descriptor(tmp_path, SINGLE_EDGE_DESCRIPTOR)
        out = tmp_path / "out"
        main(["analyze", str(source), "--out", str(out), "--emit", "csv,dot,svg"])
        assert not list(out.glob("*.tmp"))

    def test_edge_csv_input(self, tmp_path, capsys):
        source = tmp_path / "deps.csv"
        source.write_text("source,target\nweb,db\n")
        assert main(["analyze", str(source), "--out", str(tmp_path / "out")]) == 0
        assert capsys.readouterr().out.startswith("deps: services=2 edges=1")

    def test_compose_input(self, tmp_path):
        source = tmp_path / "docker-compose.yml"
        source.write_text("services:\n  web:\n    depends_on: [db]\n  db: {}\n")
        out = tmp_path / "out"
        assert main(["analyze", str(source), "--out", str(out)]) == 0
        assert (out / "service_metrics.csv").exists()

    def test_format_override(self, tmp_path):
        source = tmp_path / "edges.txt"
        source.write_text("source,target\nA,B\n")
        command = ["analyze", str(source), "--out", str(tmp_path / "out")]
        assert main(command) == 1
        assert main(command + ["--format", "edges"]) == 0

    def test_edgeless_project_prints_dashes(self, tmp_path, capsys):
        source = write_descriptor(tmp_path, {"name": "quiet", "services": [{"id": "A"}]})
        assert main(["analyze", str(source), "--out", str(tmp_path / "out")]) == 0
        assert "siy=0 sc_max=- sc_avg=-" in capsys.readouterr().out

    def test_decimal_places_flag(self, tmp_path):
        source = write_descriptor(tmp_path, SINGLE_EDGE_DESCRIPTOR)
        out = tmp_path / "out"
        main(["analyze", str(source), "--out", str(out), "--decimal-places", "3"])
        assert "0.500" in (out / "pair_sc.csv").read_text()

    def test_malformed_input_exits_1_without_output(self, tmp_path, capsys):
        source = tmp_path / "project.json"
        source.write_text("{broken")
        out = tmp_path / "out"
        assert main(["analyze", str(source), "--out", str(out)]) == 1
        assert capsys.readouterr().err.startswith("error:")
        assert not out.exists()

    def test_missing_input_exits_2(self, tmp_path, capsys):
        assert main(["analyze", str(tmp_path / "absent.json")]) == 2
        assert capsys.readouterr().err.startswith("error:")

    @pytest.mark.parametrize(
        "flags",
        [
            ["--emit", "csv,hologram"],
            ["--emit", " , "],
            ["--hub-fraction", "1.5"],
            ["--decimal-places", "-1"],
        ],
    )
    def test_bad_options_exit_1(self, tmp_path, flags, capsys):
        source = write_descriptor(tmp_path, SINGLE_EDGE_DESCRIPTOR)
        assert main(["analyze", str(source), "--out", str(tmp_path / "out")] + flags) == 1
        capsys.readouterr()


class TestExample:
    def test_writes_demo_analysis(self, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["example", "--out", str(out)]) == 0
        line = capsys.readouterr().out.strip()
        assert line == "example: services=5 edges=5 siy=1 sc_max=0.90 sc_avg=0.85"
        table = (out / "service_metrics.csv").read_text()
        assert "A,4,1,5,50,,0.02,4,1,4" in table

    def test_runs_are_byte_identical(self, tmp_path):
        first, second = tmp_path / "first", tmp_path / "second"
        main(["example", "--out", str(first), "--emit", "csv,dot,svg"])
        main(["example", "--out", str(second), "--emit", "csv,dot,svg"])
        assert read_tree(first) == read_tree(second)


class TestRender:
    def test_emits_drawings_only(self, tmp_path, capsys):
        source = write_descriptor(tmp_path, SINGLE_EDGE_DESCRIPTOR)
        out = tmp_path / "out"
        assert main(["render", str(source), "--out", str(out), "--emit", "dot,svg"]) == 0
        assert {path.name for path in out.iterdir()} == {"graph.dot", "graph.svg"}
        assert capsys.readouterr().out == ""

    def test_default_emit_keeps_dot_part(self, tmp_path):
        source = write_descriptor(tmp_path, SINGLE_EDGE_DESCRIPTOR)
        out = tmp_path / "out"
        assert main(["render", str(source), "--out", str(out)]) == 0
        assert {path.name for path in out.iterdir()} == {"graph.dot"}

    def test_csv_only_emit_rejected(self, tmp_path, capsys):
        source = write_descriptor(tmp_path, SINGLE_EDGE_DESCRIPTOR)
        assert main(["render", str(source), "--out", str(tmp_path / "out"), "--emit", "csv"]) == 1
        capsys.readouterr()


class TestCorpus:
    def test_analyzes_every_project(self, tmp_path, capsys):
        root = tmp_path / "corpus"
        write_corpus_project(root, "alpha", SINGLE_EDGE_DESCRIPTOR | {"name": "alpha"})
        write_corpus_project(
            root,
            "beta",
            {
                "name": "beta",
                "services": [{"id": "A"}, {"id": "B"}, {"id": "C"}],
                "edges": [
                    {"source": "A", "target": "B"},
                    {"source": "B", "target": "C"},
                ],
            },
        )
        out = tmp_path / "out"
        assert main(["corpus", str(root), "--out", str(out)]) == 0
        stdout = capsys.readouterr().out.splitlines()
        assert stdout[0].startswith("alpha: ")
        assert stdout[1].startswith("beta: ")
        assert stdout[2] == "2 project(s) analyzed, 0 failed"
        summary_lines = (out / "corpus_summary.csv").read_text().splitlines()
        assert len(summary_lines) == 3
        assert summary_lines[1].startswith("alpha,")
        assert summary_lines[2].startswith("beta,")
        assert (out / "alpha" / "service_metrics.csv").exists()
        assert (out / "beta" / "graph.dot").exists()
        assert not (out / "corpus_errors.txt").exists()

    def test_partial_failure_exits_3(self, tmp_path, capsys):
        root = tmp_path / "corpus"
        write_corpus_project(root, "good", SINGLE_EDGE_DESCRIPTOR | {"name": "good"})
        bad = root / "bad"
        bad.mkdir()
        (bad / "project.json").write_text("{nope")
        out = tmp_path / "out"
        assert main(["corpus", str(root), "--out", str(out)]) == 3
        stdout = capsys.readouterr().out
        assert "1 project(s) analyzed, 1 failed" in stdout
        errors = (out / "corpus_errors.txt").read_text()
        assert errors.startswith("bad: ")
        summary_lines = (out / "corpus_summary.csv").read_text().splitlines()
        assert len(summary_lines) == 2

    def test_duplicate_project_names_flagged(self, tmp_path, capsys):
        root = tmp_path / "corpus"
        write_corpus_project(root, "one", SINGLE_EDGE_DESCRIPTOR | {"name": "same"})
        write_corpus_project(root, "two", SINGLE_EDGE_DESCRIPTOR | {"name": "same"})
        out = tmp_path / "out"
        assert main(["corpus", str(root), "--out", str(out)]) == 3
        assert "duplicate project name" in (out / "corpus_errors.txt").read_text()
        capsys.readouterr()

    def test_empty_corpus(self, tmp_path, capsys):
        root = tmp_path / "corpus"
        root.mkdir()
        out = tmp_path / "out"
        assert main(["corpus", str(root), "--out", str(out)]) == 0
        assert "0 project(s) analyzed, 0 failed" in capsys.readouterr().out
        assert len((out / "corpus_summary.csv").read_text().splitlines()) == 1

    def test_missing_root_exits_2(self, tmp_path, capsys):
        assert main(["corpus", str(tmp_path / "absent")]) == 2
        capsys.readouterr()

    def test_jobs_must_be_positive(self, tmp_path, capsys):
        root = tmp_path / "corpus"
        root.mkdir()
        assert main(["corpus", str(root), "--jobs", "0"]) == 1
        capsys.readouterr()

    def test_parallel_matches_serial(self, tmp_path, capsys):
        root = tmp_path / "corpus"
        for index in range(5):
            write_corpus_project(
                root,
                f"p{index}",
                {
                    "name": f"p{index}",
                    "services": [{"id": "A", "classes": 4 + index}, {"id": "B"}],
                    "edges": [{"source": "A", "target": "B", "weight": 1 + index}],
                },
            )
        serial, parallel = tmp_path / "serial", tmp_path / "parallel"
        assert main(["corpus", str(root), "--out", str(serial)]) == 0
        serial_stdout = capsys.readouterr().out
        assert main(["corpus", str(root), "--out", str(parallel), "--jobs", "4"]) == 0
        parallel_stdout = capsys.readouterr().out
        assert read_tree(serial) == read_tree(parallel)
        assert serial_stdout == parallel_stdout


class TestArgumentHandling:
    def test_no_command_exits_1(self, capsys):
        assert main([]) == 1
        capsys.readouterr()

    def test_help_exits_0(self, capsys):
        assert main(["--help"]) == 0
        assert "analyze" in capsys.readouterr().out

    def test_bad_format_choice_exits_1(self, tmp_path, capsys):
        assert main(["analyze", str(tmp_path / "x.json"), "--format", "sonar"]) == 1
        capsys.readouterr()

    def test_run_raises_system_exit(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setattr(
            "sys.argv", ["mscoupling", "example", "--out", str(tmp_path / "out")]
        )
        with pytest.raises(SystemExit) as excinfo:
            run()
        assert excinfo.value.code == 0
        capsys.readouterr()
