"""Ingestion formats, artifact schemas, manifests, CLI behavior."""

import json

import jsonschema
import numpy as np
import pytest

from conftest import inject_spikes, spaced_locations
from hcdetect.cli import main
from hcdetect.errors import NonFiniteError, ParseError
from hcdetect.io import (
    InputSpec,
    csv_payload,
    ingest,
    json_payload,
    write_raw_f64,
)

def _schema(name):
    import hcdetect

    from pathlib import Path

    path = Path(hcdetect.__file__).parent / "schemas" / name
    return json.loads(path.read_text())


class TestIngest:
    def test_single_column_csv(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("1.0\n2.0\n3.0\n")
        series = ingest(InputSpec(path=path))
        np.testing.assert_array_equal(series.values, [1.0, 2.0, 3.0])

    def test_header_auto_detected(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("value\n1.0\n2.0\n3.0\n")
        series = ingest(InputSpec(path=path))
        np.testing.assert_array_equal(series.values, [1.0, 2.0, 3.0])

    def test_time_value_keeps_value_column(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("t,v\n0.0,5.0\n0.1,6.0\n0.2,7.0\n")
        series = ingest(InputSpec(path=path, format="csv_time_value"))
        np.testing.assert_array_equal(series.values, [5.0, 6.0, 7.0])

    def test_channel_selects_column(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("1,10,100\n2,20,200\n3,30,300\n")
        series = ingest(InputSpec(path=path, channel=1))
        np.testing.assert_array_equal(series.values, [10.0, 20.0, 30.0])

    def test_raw_f64_le(self, tmp_path):
        path = tmp_path / "x.bin"
        np.array([1.0, 2.0, 3.0]).astype("<f8").tofile(path)
        series = ingest(InputSpec(path=path, format="raw_f64_le"))
        np.testing.assert_array_equal(series.values, [1.0, 2.0, 3.0])

    def test_raw_round_trip_bit_exact(self, tmp_path):
        rng = np.random.default_rng(0)
        values = rng.standard_normal(257)
        path = tmp_path / "x.bin"
        write_raw_f64(path, values)
        series = ingest(InputSpec(path=path, format="raw_f64_le"))
        np.testing.assert_array_equal(series.values, values)

    def test_nan_names_the_row(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("1.0\n2.0\nnan\n4.0\n")
        with pytest.raises(NonFiniteError) as err:
            ingest(InputSpec(path=path))
        assert "line 3" in str(err.value)

    def test_garbage_mid_file_is_parse_error(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("1.0\n2.0\npotato\n")
        with pytest.raises(ParseError) as err:
            ingest(InputSpec(path=path))
        assert err.value.line == 3

    def test_missing_column(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("1.0\n2.0\n")
        with pytest.raises(ParseError):
            ingest(InputSpec(path=path, channel=2))


def _write_spiked_csv(tmp_path, seed=42, m=100_000, count=10):
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal(m)
    locs = spaced_locations(rng, m, count)
    data = inject_spikes(noise, locs)
    path = tmp_path / "spiked.csv"
    path.write_text("".join(f"{float(v)!r}\n" for v in data))
    return path, locs


class TestCliDetect:
    def test_report_schema_and_recovery(self, tmp_path):
        path, locs = _write_spiked_csv(tmp_path)
        out = tmp_path / "report.json"
        code = main(
            ["detect", "--input", str(path), "--out", str(out), "--seed", "0"]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        jsonschema.validate(doc, _schema("report.v1.json"))
        assert doc["hc"]["reject_normality"] is True
        smallest = doc["thresholds"][0]
        assert len(smallest["segments"]) == len(locs)
        for loc in locs:
            assert any(
                seg["start"] <= loc <= seg["end"] for seg in smallest["segments"]
            )

    def test_min_threshold_override_gives_empty_segments(self, tmp_path, capsys):
        rng = np.random.default_rng(1)
        path = tmp_path / "noise.csv"
        path.write_text("".join(f"{float(v)!r}\n" for v in rng.standard_normal(5000)))
        code = main(
            ["detect", "--input", str(path), "--min-threshold", "1e30"]
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["thresholds"][0]["value"] == 1e30
        assert doc["thresholds"][0]["segments"] == []

    def test_masked_csv_written(self, tmp_path):
        path, _ = _write_spiked_csv(tmp_path, m=20_000, count=3)
        out = tmp_path / "report.json"
        prefix = tmp_path / "masked"
        code = main(
            [
                "detect", "--input", str(path), "--out", str(out),
                "--masked-csv", str(prefix),
            ]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        first = tmp_path / "masked_t0.csv"
        assert first.exists()
        body = csv_payload(first).decode().splitlines()
        assert body[0] == "value"
        values = np.array([float(v) for v in body[1:]])
        assert values.size == doc["stats"]["m"]
        covered = sum(
            seg["end"] - seg["start"] + 1
            for seg in doc["thresholds"][0]["segments"]
        )
        assert np.count_nonzero(values) <= covered

    def test_missing_file_exits_1(self, tmp_path, capsys):
        code = main(["detect", "--input", str(tmp_path / "absent.csv")])
        assert code == 1
        assert capsys.readouterr().err != ""

    def test_constant_input_exits_2(self, tmp_path, capsys):
        path = tmp_path / "const.csv"
        path.write_text("".join("5.0\n" for _ in range(100)))
        code = main(["detect", "--input", str(path)])
        assert code == 2
        assert "constant" in capsys.readouterr().err


class TestCliSimulate:
    def test_mean_sweep_finds_strong_signals(self, tmp_path):
        out = tmp_path / "curve.csv"
        code = main(
            [
                "simulate-mean", "--mu", "0.5,1.0",
                "--m-grid", "geom:100:10000:6",
                "--replicates", "20", "--seed", "0", "--out", str(out),
            ]
        )
        assert code == 0
        rows = csv_payload(out).decode().splitlines()
        assert rows[0] == "mu,m_star,found"
        assert len(rows) == 3
        assert all(row.endswith("true") for row in rows[1:])
        doc = json.loads(out.with_suffix(".json").read_text())
        jsonschema.validate(doc, _schema("curve.v1.json"))

    def test_eps_zero_exits_2(self, tmp_path, capsys):
        code = main(
            [
                "simulate-sparse", "--eps", "0.0", "--mu", "1.0",
                "--m-grid", "100,200", "--replicates", "2",
                "--out", str(tmp_path / "c.csv"),
            ]
        )
        assert code == 2
        assert "eps" in capsys.readouterr().err

    def test_byte_identical_reruns_and_thread_invariance(self, tmp_path):
        args = [
            "simulate-sparse", "--eps", "0.05,0.2", "--mu", "1.0",
            "--m-grid", "100,300,1000", "--replicates", "10", "--seed", "11",
        ]
        paths = [tmp_path / f"c{i}.csv" for i in range(3)]
        assert main(args + ["--out", str(paths[0])]) == 0
        assert main(args + ["--out", str(paths[1])]) == 0
        assert main(args + ["--out", str(paths[2]), "--threads", "4"]) == 0
        payloads = [csv_payload(p) for p in paths]
        assert payloads[0] == payloads[1] == payloads[2]
        json_payloads = [json_payload(p.with_suffix(".json")) for p in paths]
        assert json_payloads[0] == json_payloads[1] == json_payloads[2]

    def test_variant_selection(self, tmp_path):
        out = tmp_path / "c.csv"
        code = main(
            [
                "simulate-sparse", "--eps", "0.1", "--mu", "2.0",
                "--variant", "mixture", "--m-grid", "100,300",
                "--replicates", "4", "--out", str(out),
            ]
        )
        assert code == 0
        rows = csv_payload(out).decode().splitlines()
        assert len(rows) == 2
        assert rows[1].startswith("sparse_mixture")


class TestCliStats:
    def test_normal_sample_summary(self, tmp_path, capsys):
        rng = np.random.default_rng(2)
        path = tmp_path / "normal.bin"
        write_raw_f64(path, rng.standard_normal(200_000))
        code = main(["stats", "--input", str(path), "--format", "raw_f64_le"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["kurtosis_raw"] == pytest.approx(3.0, abs=0.05)
        assert doc["kurtosis_excess"] == pytest.approx(doc["kurtosis_raw"] - 3.0)
        assert doc["m"] == 200_000
        assert 0.3 < doc["ratio"] < 3.0
        assert doc["manifest"]["input_sha256"]

    def test_heavy_tailed_sample_kurtosis(self, tmp_path, capsys):
        rng = np.random.default_rng(3)
        path = tmp_path / "laplace.bin"
        write_raw_f64(path, rng.laplace(size=100_000))
        code = main(["stats", "--input", str(path), "--format", "raw_f64_le"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["kurtosis_raw"] > 4.0  # analytic Laplace kurtosis is 6

    def test_constant_exits_2(self, tmp_path):
        path = tmp_path / "const.csv"
        path.write_text("".join("1.5\n" for _ in range(50)))
        assert main(["stats", "--input", str(path)]) == 2


class TestManifest:
    def test_embedded_in_report_and_rerun_reproduces_payload(self, tmp_path):
        path, _ = _write_spiked_csv(tmp_path, m=20_000, count=3)
        out1 = tmp_path / "r1.json"
        out2 = tmp_path / "r2.json"
        argv = ["detect", "--input", str(path), "--seed", "3"]
        assert main(argv + ["--out", str(out1)]) == 0
        assert main(argv + ["--out", str(out2)]) == 0
        doc = json.loads(out1.read_text())
        assert doc["manifest"]["command"] == "detect"
        assert doc["manifest"]["config"]["window"] == 50
        assert json_payload(out1) == json_payload(out2)
