import io
import json
import math

import pytest

from core import settings
from core.cli_reports import run, fuzz_corpus, regular_corpus
from core.graph_core import classify


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def invoke_json(*argv):
    code, out, err = invoke(*argv)
    return code, (json.loads(out) if out else None), err


def test_certify_unit_triangle(sample_data):
    code, doc, _ = invoke_json("certify", sample_data / "k3_uniform.txt")
    assert code == 0
    assert doc["tool"] == "signed-laplacian-bounds"
    assert doc["kind"] == "certify"
    assert doc["result"]["lower"] == pytest.approx(3.0, abs=1e-10)
    assert doc["result"]["positivity_paper"] is True


def test_certify_signed_triangle_is_negative(sample_data):
    code, doc, _ = invoke_json("certify", sample_data / "k3_signed.txt", "--oracle")
    assert code == 1
    assert doc["result"]["lower"] == pytest.approx(-1.5, abs=1e-10)
    assert doc["result"]["oracle_eigenvalues"] == pytest.approx([-1.5, 1.5], abs=1e-10)


def test_malformed_edge_list_reports_line(sample_data):
    code, out, err = invoke("certify", sample_data / "malformed.txt")
    assert code == 2
    assert out == ""
    assert "line 4" in err


def test_unweighted_certify_is_an_input_error(sample_data):
    code, _, err = invoke("certify", sample_data / "p3.txt")
    assert code == 2
    assert "weighted" in err


def test_json_output_is_byte_identical(sample_data):
    first = invoke("certify", sample_data / "k3_signed.txt", "--oracle")
    second = invoke("certify", sample_data / "k3_signed.txt", "--oracle")
    assert first == second


def test_bounds_omit_positivity(sample_data):
    code, doc, _ = invoke_json("bounds", sample_data / "k3_uniform.txt")
    assert code == 0
    assert "positivity_paper" not in doc["result"]
    assert doc["result"]["upper"] == pytest.approx(3.0, abs=1e-10)


def test_mu_commands(sample_data):
    code, doc, _ = invoke_json("mu", sample_data / "p3.txt")
    assert code == 0
    assert doc["result"]["value"] == pytest.approx(3.0, abs=1e-10)
    assert doc["result"]["method"] == "projected_rayleigh"
    code, _, _ = invoke("mu", sample_data / "p3.txt", "--method", "closed")
    assert code == 2
    _, doc, _ = invoke_json("mu", sample_data / "c6.txt")
    assert doc["result"]["value"] == pytest.approx(5.0, abs=1e-10)
    assert doc["seed"] == settings.DEFAULT_SEED


def test_line_graph_spectrum_of_hexagon(sample_data):
    code, doc, _ = invoke_json("spectrum", sample_data / "c6.txt", "--matrix", "line")
    assert code == 0
    assert doc["result"]["eigenvalues_ascending"] == pytest.approx([-2, -1, -1, 1, 1, 2], abs=1e-10)


def test_generate_then_certify(tmp_path):
    path = tmp_path / "k5.txt"
    code, doc, _ = invoke_json("generate", "--family", "complete", "--n", 5, "--weights", "constant:c=2",
                               "--seed", 3, "--out", path)
    assert code == 0
    assert doc["result"]["e"] == 10
    assert path.read_text().startswith("# signed-laplacian-bounds")
    code, doc, _ = invoke_json("certify", path)
    assert code == 0
    assert doc["result"]["lower"] == pytest.approx(10.0, abs=1e-9)


def test_generate_to_stdout_is_reproducible():
    argv = ("generate", "--family", "er_supercritical", "--n", 20, "--p", 0.3, "--seed", 9)
    assert invoke(*argv) == invoke(*argv)


def test_complete_family_experiment(tmp_path):
    code, doc, _ = invoke_json("experiment", "--family", "complete", "--n", 8, "--trials", 20, "--seed", 1)
    assert code == 0
    assert doc["result"]["summary"]["sandwich_violations"] == 0
    assert len(doc["result"]["records"]) == 20

    out = tmp_path / "runs.jsonl"
    code, doc, _ = invoke_json("experiment", "--family", "complete", "--n", 8, "--trials", 5, "--seed", 1,
                               "--out", out)
    assert code == 0
    assert len(out.read_text().splitlines()) == 5
    summary = json.loads((tmp_path / "runs.summary.json").read_text())
    assert summary["summary"]["trials"] == 5


def test_cycle_experiment_ratio_below_one():
    _, doc, _ = invoke_json("experiment", "--family", "cycle", "--n", 64, "--trials", 3)
    assert doc["result"]["summary"]["improvement_ratio_max"] < 1


def test_degree_tail_experiment():
    code, doc, _ = invoke_json("experiment", "--family", "er_critical", "--n", 200, "--p0", 2.0,
                               "--degree-tail", "--trials", 5)
    assert code == 0
    assert 0.0 <= doc["result"]["fraction_within"] <= 1.0
    assert doc["result"]["min_sufficient_c"] == pytest.approx(math.e, abs=1e-6)


def test_experiment_rejects_bad_family_parameters():
    code, _, err = invoke("experiment", "--family", "er_critical", "--n", 50, "--trials", 2)
    assert code == 2
    assert "er_critical" in err


def test_tightness_command():
    code, doc, _ = invoke_json("tightness", "--n", 4, "--q", 0.0, "--p", 1.0, "--iterations", 4, "--restarts", 2)
    assert code == 0
    assert doc["result"]["best_gap_lower"] >= 0


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["identities", "sandwich", "duality"])
def test_verify_suites_pass(suite):
    code, doc, _ = invoke_json("verify", "--suite", suite, "--seed", 5)
    assert code == 0
    assert doc["result"]["passed"] is True


def test_text_and_csv_formats(sample_data):
    code, out, _ = invoke("certify", sample_data / "k3_uniform.txt", "--format", "text")
    assert code == 0
    assert out.startswith("signed-laplacian-bounds 1.0.0 certify")
    assert "Positive (moment condition): True" in out
    code, out, _ = invoke("spectrum", sample_data / "c6.txt", "--matrix", "equal", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "index,eigenvalue,abs_order_eigenvalue"
    assert len(out.splitlines()) == 7


def test_verification_corpora():
    corpus = fuzz_corpus(0)
    assert len(corpus) == 200
    assert all(3 <= g.vertex_count <= 40 and g.edge_count >= 2 for _, g in corpus)
    regular = regular_corpus(0)
    assert len(regular) == 62 + 10 + 50
    assert all(classify(g).regular_degree is not None and g.vertex_count <= 100 for _, g in regular)
