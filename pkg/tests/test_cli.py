"""CLI subcommands, exit codes, and output determinism."""

import json

import gevo
from gevo.cli import main


def write_golden(tmp_path):
    path = tmp_path / "gr0.gevo"
    path.write_text(gevo.example_document_text(), encoding="utf-8")
    return str(path)


class TestValidate:
    def test_ok(self, tmp_path, capsys):
        assert main(["validate", write_golden(tmp_path)]) == 0
        assert "OK" in capsys.readouterr().out

    def test_parse_error_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.gevo"
        bad.write_text("node ;", encoding="utf-8")
        assert main(["validate", str(bad)]) == 2
        assert capsys.readouterr().err.strip()

    def test_dangling_endpoint_exit_2(self, tmp_path, capsys):
        doc = json.loads(json.dumps(gevo.to_json_document(gevo.example_engine())))
        doc["graphs"][0]["nodes"].remove("C3")
        path = tmp_path / "broken.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert main(["validate", str(path)]) == 2
        assert "DanglingEndpoint" in capsys.readouterr().err

    def test_usage_error_exit_1(self):
        assert main(["frobnicate"]) == 1


class TestApply:
    def test_golden_deletion(self, tmp_path, capsys):
        out = tmp_path / "out.json"
        code = main(["apply", write_golden(tmp_path), "--event",
                     "delete-node(C2)", "--trace", "--format", "json",
                     "-o", str(out)])
        assert code == 0
        trace = json.loads(capsys.readouterr().out)
        executed = [(e["rule"], e["event"]["target"]) for e in trace
                    if e["status"] == "executed"]
        assert executed == [
            ("R2", "C2"), ("R3", "GR0"), ("R4", "RC1"), ("R5", "GR0"),
            ("R6", "C1"), ("R6", "C2"), ("R4", "h2"), ("R5", "GR0"),
            ("R6", "C2"), ("R6", "C3"), ("R1", "RC1"),
        ]
        doc = json.loads(out.read_text(encoding="utf-8"))
        graph = doc["graphs"][0]
        assert graph["nodes"] == ["C1", "C3"]
        assert graph["relations"] == ["RC1"]

    def test_unknown_target_exit_3(self, tmp_path):
        assert main(["apply", write_golden(tmp_path), "--event",
                     "delete-node(C9)"]) == 3

    def test_aborted_exit_4(self, tmp_path):
        # versioning a class twice against the same file via a doctored
        # document: versioning C1 when C1@v1 already exists must abort
        engine = gevo.example_engine()
        engine.dispatch(gevo.parse_event_expr(engine, "delete-node(C2)"))
        engine.dispatch(gevo.parse_event_expr(engine, "create-version-node(C1)"))
        path = tmp_path / "versioned.json"
        path.write_text(json.dumps(gevo.to_json_document(engine)),
                        encoding="utf-8")
        assert main(["apply", str(path), "--event",
                     "create-version-node(C1)"]) == 4

    def test_dry_run_never_writes_changes(self, tmp_path):
        src = write_golden(tmp_path)
        before = open(src, encoding="utf-8").read()
        out = tmp_path / "out.json"
        code = main(["apply", src, "--event", "delete-node(C2)",
                     "--dry-run", "-o", str(out)])
        assert code == 0
        assert open(src, encoding="utf-8").read() == before
        written = json.loads(out.read_text(encoding="utf-8"))
        baseline = json.loads(json.dumps(
            gevo.to_json_document(gevo.example_engine()), sort_keys=True))
        assert written == baseline

    def test_trace_bytes_deterministic(self, tmp_path, capsys):
        src = write_golden(tmp_path)
        outputs = []
        for _ in range(2):
            main(["apply", src, "--event", "delete-node(C2)", "--trace",
                  "--format", "json"])
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]


class TestFmt:
    def test_canonicalizes(self, tmp_path, capsys):
        messy = tmp_path / "messy.gevo"
        messy.write_text("rule R4:relation direction = forward mode=extended"
                         "{on delete-relation(R) let G=graph-of(R) do{"
                         "raise modify-graph(G,R);exec delete-relation(R);}}",
                         encoding="utf-8")
        assert main(["fmt", str(messy)]) == 0
        printed = capsys.readouterr().out
        assert "direction=forward" in printed
        assert main(["fmt", str(messy)]) == 0

    def test_fmt_idempotent(self, tmp_path, capsys):
        src = write_golden(tmp_path)
        assert main(["fmt", src]) == 0
        once = capsys.readouterr().out
        again = tmp_path / "fmted.gevo"
        again.write_text(once, encoding="utf-8")
        assert main(["fmt", str(again)]) == 0
        assert capsys.readouterr().out == once

    def test_parse_error_exit_2(self, tmp_path):
        bad = tmp_path / "bad.gevo"
        bad.write_text("relation r : (", encoding="utf-8")
        assert main(["fmt", str(bad)]) == 2
