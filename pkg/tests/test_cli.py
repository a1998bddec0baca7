import json

import pytest

from qalpha.cli import main, max_m_bound
from qalpha.decomposition import FTable, solve_F_triangular


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decompose_symbolic(capsys):
    code, out, _ = run(capsys, "decompose", "--m", "1")
    assert code == 0
    assert out.splitlines() == [
        "F_{1,0} = 1/(q^2 + 1) - (q^2/(q^2 + 1))*alpha",
        "F_{1,1} = q^2/(q^2 + 1) + (q^2/(q^2 + 1))*alpha",
    ]
    code, out, _ = run(capsys, "decompose", "--m", "0")
    assert out.strip() == "F_{0,0} = 1"


def test_decompose_at_alpha(capsys):
    code, out, _ = run(capsys, "decompose", "--m", "1", "--alpha", "-1")
    assert code == 0
    assert out.splitlines()[-1] == "SL(1), total dim 1"
    _, out, _ = run(capsys, "decompose", "--m", "2", "--alpha", "q^-2")
    assert out.splitlines()[-1] == "SL(1) + SL(3) + SL(5), total dim 9"
    _, out, _ = run(capsys, "decompose", "--m", "1", "--alpha", "0", "--format", "json")
    data = json.loads(out)
    assert data["total_dimension"] == 4 and [r["nonzero"] for r in data["rows"]] == [True, True]


def test_decompose_json_matches_schema(capsys):
    _, out, _ = run(capsys, "decompose", "--m", "3", "--format", "json")
    assert FTable.from_json(json.loads(out)) == solve_F_triangular(3)


def test_bound(capsys, monkeypatch):
    monkeypatch.delenv("QALPHA_MAX_M", raising=False)
    assert max_m_bound() == 8
    code, _, err = run(capsys, "decompose", "--m", "9")
    assert code != 0 and "outside 0..8" in err
    code, _, _ = run(capsys, "classical", "--m", "-1")
    assert code != 0
    monkeypatch.setenv("QALPHA_MAX_M", "2")
    code, _, _ = run(capsys, "table", "--max-m", "3")
    assert code != 0
    monkeypatch.setenv("QALPHA_MAX_M", "9")
    code, out, _ = run(capsys, "decompose", "--m", "9")
    assert code == 0 and len(out.splitlines()) == 10
    monkeypatch.setenv("QALPHA_MAX_M", "lots")
    code, _, err = run(capsys, "decompose", "--m", "1")
    assert code != 0 and "QALPHA_MAX_M" in err


def test_table_formats(capsys):
    code, out, _ = run(capsys, "table", "--max-m", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data) == 3
    assert [FTable.from_json(t) for t in data] == [solve_F_triangular(m) for m in range(3)]
    _, out, _ = run(capsys, "table", "--max-m", "0", "--format", "latex")
    rows = [line for line in out.splitlines() if line.startswith("0 &")]
    assert rows == ["0 & 0 & $1$ \\\\"]
    assert "\\begin{tabular}" in out and "\\end{tabular}" in out
    _, out, _ = run(capsys, "table", "--max-m", "1", "--format", "text")
    assert "F_{1,1} = q^2/(q^2 + 1) + (q^2/(q^2 + 1))*alpha" in out
    with pytest.raises(SystemExit):
        main(["table", "--max-m", "1", "--format", "csv"])


def test_eval(capsys):
    assert run(capsys, "eval", "x22*x11")[1].strip() == "x11 x22 - (q - q^-1) x12 x21"
    assert run(capsys, "eval", "x11*x21", "--apply", "f")[1].strip() == "x11 x22 + q^-1 x12 x21"
    assert run(capsys, "eval", "detq", "--apply", "e")[1].strip() == "0"
    assert run(capsys, "eval", "x11", "--apply", "kK")[1].strip() == "x11"


def test_eval_errors(capsys):
    code, _, err = run(capsys, "eval", "x11 + * x12")
    assert code == 2
    assert "position 6" in err
    assert err.splitlines()[-1] == "        ^"
    code, _, err = run(capsys, "eval", "x11^65")
    assert code != 0 and "bound" in err
    assert run(capsys, "eval", "x11^65", "--max-degree", "65")[0] == 0
    code, _, err = run(capsys, "eval", "x11", "--apply", "h")
    assert code != 0


def test_classical(capsys):
    code, out, _ = run(capsys, "classical", "--m", "1")
    assert code == 0
    assert "line (i), parameter 2s+2 : 1/2 - 1/2*alpha" in out
    assert "line (i), parameter 2s+2 : 1/2 + 1/2*alpha" in out
    assert out.splitlines()[-1] == "c = 1/2, 1/2"
    assert "differs" in out
    code, out, _ = run(capsys, "classical", "--m", "0")
    assert code == 0 and "line (ii)                : 1" in out and out.splitlines()[-1] == "c = 1"
    code, out, _ = run(capsys, "classical", "--m", "4")
    assert code == 0 and out.count("all three agree") == 5


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemmas", "--max-m", "5")
    assert code == 0
    assert out.splitlines()[-1] == "3/3 checks passed"
    code, out, _ = run(capsys, "verify", "--suite", "identities", "--max-m", "8", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    names = [c["name"] for c in data["checks"]]
    assert names == sorted(names) and all(n.startswith("identities.") for n in names)
    assert all(isinstance(c["seconds"], float) for c in data["checks"])


def test_verify_jobs_deterministic(capsys):
    _, serial, _ = run(capsys, "verify", "--suite", "action", "--max-m", "3", "--format", "json", "--seed", "7")
    _, pooled, _ = run(
        capsys, "verify", "--suite", "action", "--max-m", "3", "--format", "json", "--seed", "7", "--jobs", "2"
    )

    def strip(text):
        return [(c["name"], c["passed"], c["detail"]) for c in json.loads(text)["checks"]]

    assert strip(serial) == strip(pooled)
