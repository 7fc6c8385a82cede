import json
import math

import pytest

import oracles
from coxstat.cli import main
from coxstat.groups import parse_descriptor
from coxstat.limits import llt_sup_distance
from coxstat.polynomials import ExactPolynomial, gf_des, gf_inv


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# ---------------------------------------------------------------------------
# gf

def test_gf_small_row_is_plain_json(capsys):
    rc, out, _ = run(capsys, "gf", "--group", "A2", "--stat", "des")
    assert rc == 0
    assert out.strip() == "[1,4,1]"


def test_gf_matches_oracle_tally(capsys):
    rc, out, _ = run(capsys, "gf", "--group", "B2", "--stat", "inv")
    assert rc == 0
    want = oracles.tally("B", 2, lambda w: oracles.inv_of(w, "B"))
    assert json.loads(out) == want


def test_gf_wide_coefficients_become_strings(capsys):
    rc, out, _ = run(capsys, "gf", "--group", "A20", "--stat", "inv")
    assert rc == 0
    values = json.loads(out)
    assert any(isinstance(v, str) for v in values)
    assert any(isinstance(v, int) for v in values)
    assert [int(v) for v in values] == list(gf_inv(parse_descriptor("A20")).coefficients)
    assert all(abs(v) < 2 ** 53 for v in values if isinstance(v, int))
    assert all(abs(int(v)) >= 2 ** 53 for v in values if isinstance(v, str))
    assert sum(int(v) for v in values) == math.factorial(21)


def test_gf_emit_poly_round_trips(capsys, tmp_path):
    path = tmp_path / "poly.json"
    rc, out, _ = run(capsys, "gf", "--group", "F4", "--stat", "des",
                     "--emit-poly", str(path))
    assert rc == 0
    f = ExactPolynomial.from_json(path.read_text())
    assert f == gf_des(parse_descriptor("F4"))
    assert json.loads(out) == list(f.coefficients)


def test_gf_empty_group_is_usage_error(capsys):
    rc, _, err = run(capsys, "gf", "--group", "", "--stat", "inv")
    assert rc == 2
    assert "error:" in err


def test_missing_required_flag_is_usage_error(capsys):
    rc, _, err = run(capsys, "gf", "--group", "A2")
    assert rc == 2
    assert "--stat" in err


def test_no_subcommand_is_usage_error(capsys):
    rc, _, _ = run(capsys)
    assert rc == 2


# ---------------------------------------------------------------------------
# moments

def test_moments_e6_inversions(capsys):
    rc, out, _ = run(capsys, "moments", "--group", "E6", "--stat", "inv")
    assert rc == 0
    doc = json.loads(out)
    assert doc["mean"] == "18"
    assert doc["variance"] == "29"
    assert doc["group"] == "E6"
    assert doc["cumulants"]["2"] == "29"
    assert set(doc["normalized_cumulants"]) == {"3", "4", "5", "6"}


def test_moments_rational_encoding(capsys):
    rc, out, _ = run(capsys, "moments", "--group", "A3", "--stat", "des",
                     "--k-max", "4")
    assert rc == 0
    doc = json.loads(out)
    assert doc["mean"] == "3/2"
    assert doc["variance"] == "5/12"
    assert "5" not in doc["cumulants"]


def test_moments_e8_descents_refused(capsys):
    rc, _, err = run(capsys, "moments", "--group", "E8", "--stat", "des")
    assert rc == 2
    assert "696729600" in err


# ---------------------------------------------------------------------------
# clt

def test_clt_json_fields(capsys):
    rc, out, _ = run(capsys, "clt", "--spec", "A(n)", "--stat", "inv",
                     "--range", "10..18")
    assert rc == 0
    doc = json.loads(out)
    assert doc["clt_holds"] is True
    assert doc["statistic"] == "inv"
    assert len(doc["per_n"]) == 9
    row = doc["per_n"][0]
    assert row["n"] == 10 and row["rank"] == 10 and row["d_n"] == 11
    assert row["variance"] == "165/4"
    assert 0 < row["ratio"] < 2


def test_clt_threads_and_order_invariance(capsys):
    args = ["clt", "--spec", "prod(I2(i), i=1..n)", "--stat", "des",
            "--range", "10..30"]
    rc, serial, _ = run(capsys, *args)
    assert rc == 0
    rc, threaded, _ = run(capsys, *args, "--threads", "4")
    assert rc == 0
    assert serial == threaded
    doc = json.loads(serial)
    assert doc["clt_holds"] is True
    assert doc["conditions"]["dihedral_divergence"] is True


def test_clt_table_output(capsys):
    rc, out, _ = run(capsys, "clt", "--spec", "B(n)", "--stat", "des",
                     "--range", "10..16", "--emit", "table")
    assert rc == 0
    assert "s_n" in out.splitlines()[0]
    assert "clt_holds: True" in out


def test_clt_bad_range_is_usage_error(capsys):
    rc, _, err = run(capsys, "clt", "--spec", "A(n)", "--stat", "inv",
                     "--range", "7")
    assert rc == 2
    assert "range" in err


def test_clt_bad_spec_is_usage_error(capsys):
    rc, _, err = run(capsys, "clt", "--spec", "Q9", "--stat", "inv",
                     "--range", "4..8")
    assert rc == 2
    assert "error:" in err


# ---------------------------------------------------------------------------
# llt

def test_llt_reports_distance(capsys):
    rc, out, _ = run(capsys, "llt", "--group", "B4", "--stat", "des")
    assert rc == 0
    doc = json.loads(out)
    want = llt_sup_distance(gf_des(parse_descriptor("B4")))
    assert doc["distance"] == pytest.approx(want.distance)
    assert doc["degenerate"] is False


# ---------------------------------------------------------------------------
# interp

def write_values_doc(path, sizes):
    doc = {"statistic": "des", "group": "S", "values": {}}
    for n in sizes:
        doc["values"][str(n)] = [
            oracles.des_of(w, "A") for w in oracles.iter_windows("A", n)]
    path.write_text(json.dumps(doc), encoding="utf-8")


def test_interp_recovers_descent_variance(capsys, tmp_path):
    path = tmp_path / "des.json"
    write_values_doc(path, (4, 5, 6, 7))
    rc, out, _ = run(capsys, "interp", "--input", str(path),
                     "--format", "values_json", "--target", "variance")
    assert rc == 0
    doc = json.loads(out)
    # keyed by window size, so the rank formula (n+2)/12 shifts to (n+1)/12
    assert doc["formulas"] == ["(n + 1)/12"]
    assert doc["rows"][0]["mean"] == "3/2"
    assert doc["rows"][0]["count"] == 24


def test_interp_too_few_points_reports_note(capsys, tmp_path):
    path = tmp_path / "des.json"
    write_values_doc(path, (4, 5))
    rc, out, _ = run(capsys, "interp", "--input", str(path),
                     "--format", "values_json", "--target", "mean")
    assert rc == 0
    doc = json.loads(out)
    assert doc["formulas"] == []
    assert "4" in doc["note"]


def test_interp_needs_input_or_fetch(capsys):
    rc, _, _ = run(capsys, "interp", "--target", "mean")
    assert rc == 2


def test_interp_fetch_uses_cache(capsys, tmp_path):
    lines = ["# seeded"]
    for w in oracles.iter_windows("A", 3):
        lines.append(f"[{','.join(str(v) for v in w)}];{oracles.inv_of(w, 'A')}")
    (tmp_path / "St000018.csv").write_text("\n".join(lines), encoding="utf-8")
    rc, out, _ = run(capsys, "interp", "--fetch", "St000018",
                     "--cache-dir", str(tmp_path), "--target", "mean")
    assert rc == 0
    doc = json.loads(out)
    assert doc["statistic"] == "St000018"
    assert doc["rows"][0]["mean"] == "3/2"


# ---------------------------------------------------------------------------
# enumerate

def test_enumerate_windows(capsys):
    rc, out, _ = run(capsys, "enumerate", "--group", "A2", "--limit", "100")
    assert rc == 0
    lines = out.strip().splitlines()
    assert len(lines) == 6
    assert lines[0] == "[1,2,3] inv=0 des=0 ides=0"
    assert all("inv=" in line and "ides=" in line for line in lines)


def test_enumerate_respects_limit(capsys):
    rc, out, _ = run(capsys, "enumerate", "--group", "B3", "--limit", "5")
    assert rc == 0
    assert len(out.strip().splitlines()) == 5


def test_enumerate_reflection_groups(capsys):
    rc, out, _ = run(capsys, "enumerate", "--group", "H3", "--limit", "4")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "inversions=0x0 length=0 des=0 ides=0"
    assert len(lines) == 4
    assert all(line.startswith("inversions=0x") for line in lines)


def test_enumerate_rejects_products(capsys):
    rc, _, err = run(capsys, "enumerate", "--group", "A2 x A1", "--limit", "3")
    assert rc == 2
    assert "irreducible" in err


# ---------------------------------------------------------------------------
# verify

def test_verify_quick_passes(capsys):
    rc, out, _ = run(capsys, "verify", "--suite", "quick")
    assert rc == 0
    lines = out.strip().splitlines()
    assert all(line.startswith("ok - ") for line in lines[:-1])
    assert "checks passed" in lines[-1]


def test_verify_full_suite_passes(capsys):
    rc, out, _ = run(capsys, "verify", "--suite", "full")
    assert rc == 0
    assert "FAIL" not in out
    assert out.strip().splitlines()[-1].endswith("checks passed")


def test_verify_seed_does_not_change_outcome(capsys):
    rc0, _, _ = run(capsys, "verify", "--suite", "moments", "--seed", "0")
    rc1, _, _ = run(capsys, "verify", "--suite", "moments", "--seed", "123")
    assert rc0 == 0 and rc1 == 0


def test_verify_unknown_suite_is_usage_error(capsys):
    rc, _, _ = run(capsys, "verify", "--suite", "nonsense")
    assert rc == 2


def test_verify_failure_exits_one(capsys, monkeypatch):
    import coxstat.verify as verify

    def broken(rng):
        yield ("forced mismatch", False, "intentional")

    monkeypatch.setitem(verify.SUITES, "quick", broken)
    rc, out, _ = run(capsys, "verify", "--suite", "quick")
    assert rc == 1
    assert "FAIL - forced mismatch" in out


# ---------------------------------------------------------------------------
# round trip: emitted histograms ingest back unchanged

def test_gf_round_trips_through_ingest(capsys, tmp_path):
    from coxstat.interplab import ingest

    rc, out, _ = run(capsys, "gf", "--group", "B3", "--stat", "des")
    assert rc == 0
    doc = {"statistic": "des",
           "histogram": {"3": [str(v) for v in json.loads(out)]}}
    path = tmp_path / "hist.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    back = ingest(path, "histogram_json")
    assert back.histograms[3] == gf_des(parse_descriptor("B3")).coefficients
