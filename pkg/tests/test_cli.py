import json
import socket
import threading
import time

import pytest

from lattir.cli import main


@pytest.fixture
def imaging_index(fixtures_dir, tmp_path):
    path = tmp_path / "imaging.idx"
    assert main([
        "index", str(fixtures_dir / "imaging_corpus.xml"),
        "-o", str(path),
        "--ontology", str(fixtures_dir / "segmentation_ontology.yaml"),
    ]) == 0
    return path


@pytest.fixture
def annotated_index(fixtures_dir, tmp_path):
    path = tmp_path / "annotated.idx"
    assert main([
        "index", str(fixtures_dir / "annotated_context.json"),
        "-o", str(path),
        "--ontology", str(fixtures_dir / "segmentation_ontology.yaml"),
    ]) == 0
    return path


class TestIndex:
    def test_counts_reported(self, fixtures_dir, tmp_path, capsys):
        out = tmp_path / "imaging.idx"
        code = main(["index", str(fixtures_dir / "imaging_corpus.xml"), "-o", str(out)])
        lines = capsys.readouterr().out.splitlines()
        assert code == 0
        assert "objects: 5" in lines
        assert "attributes: 6" in lines
        assert "concepts: 11" in lines

    def test_empty_corpus_succeeds(self, tmp_path, capsys):
        corpus = tmp_path / "empty.xml"
        corpus.write_text("<documents/>")
        code = main(["index", str(corpus), "-o", str(tmp_path / "empty.idx")])
        assert code == 0
        assert "objects: 0" in capsys.readouterr().out

    def test_malformed_corpus_fails_with_diagnostic(self, tmp_path, capsys):
        corpus = tmp_path / "bad.xml"
        corpus.write_text("<documents><document nom='x'>")
        code = main(["index", str(corpus), "-o", str(tmp_path / "bad.idx")])
        assert code != 0
        assert "error" in capsys.readouterr().err

    def test_missing_file_fails_before_work(self, tmp_path, capsys):
        code = main(["index", str(tmp_path / "ghost.xml"), "-o", str(tmp_path / "g.idx")])
        assert code != 0
        assert "no such file" in capsys.readouterr().err

    def test_json_format(self, fixtures_dir, tmp_path, capsys):
        code = main([
            "index", str(fixtures_dir / "synthetic_context.json"),
            "-o", str(tmp_path / "s.idx"), "--format", "json",
        ])
        assert code == 0
        data = json.loads(capsys.readouterr().out)
        assert data["concepts"] == 9


class TestQuery:
    def test_rank_prefixed_plain_listing(self, imaging_index, capsys):
        code = main(["query", str(imaging_index), "detection", "segmentation"])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert [line.split(" - ")[0] + " - " + line.split(" - ")[1] for line in lines] == [
            "0 - d4", "1 - d1", "1 - d2", "1 - d5",
        ]
        assert lines[0] == "0 - d4 - detection and segmentation with probability"

    def test_json_contains_plain_information(self, imaging_index, capsys):
        main(["query", str(imaging_index), "detection", "segmentation"])
        plain = capsys.readouterr().out
        code = main(["query", str(imaging_index), "detection", "segmentation", "--format", "json"])
        assert code == 0
        data = json.loads(capsys.readouterr().out)
        assert [(e["rank"], e["doc"]) for e in data["entries"]] == [
            (0, "d4"), (1, "d1"), (1, "d2"), (1, "d5"),
        ]
        for _, doc in [(0, "d4"), (1, "d1")]:
            assert doc in plain
        assert data["query_concept"]["intent"] == ["detection", "segmentation"]

    def test_quoted_multiword_specialize(self, annotated_index, capsys):
        code = main([
            "query", str(annotated_index), "'detection of contour'",
            "--mode", "specialize", "--format", "json",
        ])
        assert code == 0
        data = json.loads(capsys.readouterr().out)
        assert "canny filter" in data["effective_terms"]

    def test_unknown_term_exits_nonzero_listing_it(self, imaging_index, capsys):
        code = main(["query", str(imaging_index), "zzz"])
        assert code != 0
        assert "zzz" in capsys.readouterr().err

    def test_dropped_term_warning_on_stderr_only(self, imaging_index, capsys):
        code = main(["query", str(imaging_index), "image", "zzz"])
        captured = capsys.readouterr()
        assert code == 0
        assert "zzz" in captured.err
        assert "zzz" not in captured.out


class TestVerify:
    def test_index_passes(self, imaging_index, capsys):
        assert main(["verify", str(imaging_index)]) == 0
        out = capsys.readouterr().out
        assert "PASS concepts-match-batch-enumeration (11 = 11 concepts)" in out
        assert "FAIL" not in out

    def test_corpus_and_context_inputs(self, fixtures_dir, capsys):
        assert main(["verify", str(fixtures_dir / "imaging_corpus.xml")]) == 0
        assert main(["verify", str(fixtures_dir / "synthetic_context.json")]) == 0
        assert "9 = 9 concepts" in capsys.readouterr().out

    def test_empty_corpus_passes(self, tmp_path, capsys):
        corpus = tmp_path / "empty.xml"
        corpus.write_text("<documents/>")
        assert main(["verify", str(corpus)]) == 0

    def test_corrupted_edge_fails_naming_it(self, imaging_index, capsys):
        data = json.loads(imaging_index.read_text())
        data["lattice"]["covers"].pop()
        hacked = imaging_index.parent / "hacked.idx"
        hacked.write_text(json.dumps(data))
        code = main(["verify", str(hacked)])
        out = capsys.readouterr()
        assert code != 0
        # load-time validation refuses the file, naming the missing edge
        assert "cover" in out.err

    def test_mismatch_detected_when_concept_missing(self, imaging_index, tmp_path, capsys):
        # drop one concept and its edges: load validation must reject it
        data = json.loads(imaging_index.read_text())
        victim = next(
            i for i, c in enumerate(data["lattice"]["concepts"]) if len(c["intent"]) == 2
        )
        data["lattice"]["concepts"].pop(victim)

        def shift(i):
            return i - 1 if i > victim else i

        data["lattice"]["covers"] = [
            [shift(c), shift(p)]
            for c, p in data["lattice"]["covers"]
            if victim not in (c, p)
        ]
        data["lattice"]["top"] = shift(data["lattice"]["top"])
        data["lattice"]["bottom"] = shift(data["lattice"]["bottom"])
        hacked = tmp_path / "missing.idx"
        hacked.write_text(json.dumps(data))
        assert main(["verify", str(hacked)]) != 0


class TestExport:
    def test_dot_to_file(self, imaging_index, tmp_path, capsys):
        out = tmp_path / "lattice.dot"
        assert main(["export", str(imaging_index), "-o", str(out)]) == 0
        text = out.read_text()
        assert text.count("[label=") == 11
        assert text.startswith("digraph")

    def test_dot_to_stdout(self, imaging_index, capsys):
        assert main(["export", str(imaging_index)]) == 0
        assert "digraph" in capsys.readouterr().out

    def test_empty_index_single_node(self, tmp_path, capsys):
        corpus = tmp_path / "empty.xml"
        corpus.write_text("<documents/>")
        idx = tmp_path / "empty.idx"
        main(["index", str(corpus), "-o", str(idx)])
        capsys.readouterr()
        main(["export", str(idx)])
        assert capsys.readouterr().out.count("[label=") == 1


class TestServe:
    def test_serve_and_query_over_http(self, imaging_index):
        import urllib.request

        with socket.socket() as s:
            s.bind(("127.0.0.1", 0))
            port = s.getsockname()[1]

        worker = threading.Thread(
            target=main,
            args=([f"serve", str(imaging_index), "--listen", f"127.0.0.1:{port}"],),
            daemon=True,
        )
        worker.start()
        deadline = time.time() + 15
        data = None
        while time.time() < deadline:
            try:
                with urllib.request.urlopen(
                    f"http://127.0.0.1:{port}/api/lattice", timeout=2
                ) as resp:
                    data = json.loads(resp.read())
                break
            except OSError:
                time.sleep(0.2)
        assert data is not None, "server did not come up"
        assert len(data["concepts"]) == 11

    def test_serve_without_source_fails(self, capsys):
        assert main(["serve"]) != 0
        assert "nothing to serve" in capsys.readouterr().err


class TestConfig:
    def test_config_file_provides_corpus(self, fixtures_dir, tmp_path, monkeypatch):
        from lattir.cli import _serve_settings, build_parser

        cfg = tmp_path / "cfg.yaml"
        cfg.write_text(
            f"corpus: {fixtures_dir / 'imaging_corpus.xml'}\nlisten: 0.0.0.0:9999\n"
        )
        args = build_parser().parse_args(["serve", "--config", str(cfg)])
        settings = _serve_settings(args)
        assert settings["listen"] == "0.0.0.0:9999"
        assert settings["corpus"].endswith("imaging_corpus.xml")

        monkeypatch.setenv("LATTIR_LISTEN", "127.0.0.1:4242")
        settings = _serve_settings(args)
        assert settings["listen"] == "127.0.0.1:4242"

        args = build_parser().parse_args(["serve", "--config", str(cfg), "--listen", "127.0.0.1:1"])
        settings = _serve_settings(args)
        assert settings["listen"] == "127.0.0.1:1"
