import ddrs


def test_builtins_list():
    names = ddrs.builtins()
    assert len(names) == 17
    assert "Zbud" in names
    assert "Zdub-verbatim" in names


def test_normal_form():
    assert ddrs.normal_form("Zbud", "2+1") == "1:b1"


def test_eval_and_encode():
    assert ddrs.eval_term("Ndub", "(9:d7):d5") == 975
    assert ddrs.encode("-2", "decimal") == "-2"
    assert ddrs.encode("7", "binary") == "(1:b1):b1"


def test_normalize_trace():
    tr = ddrs.normalize("Zbud", "P(-(-1))")
    assert tr["schema"] == "trace-v1"
    assert tr["outcome"] == "normal-form"
    assert tr["final"] == "0"
    assert all(step["n"] == i + 1 for i, step in enumerate(tr["steps"]))


def test_all_normal_forms_verbatim_peak():
    res = ddrs.all_normal_forms("Zubd-verbatim", "0+S(0)")
    assert res["forms"] == ["0", "S(0)"]


def test_soundness_report():
    rep = ddrs.check_soundness("Zubd-verbatim", trials=20)
    assert not rep["all_sound"]
    bad = [r for r in rep["rules"] if r["verdict"] == "unsound"]
    assert [r["tag"] for r in bad] == ["u8"]
    assert bad[0]["counterexample"] == {"x": "S(0)"}


def test_ground_confluence_report():
    rep = ddrs.check_ground_confluence("Zbud", max_size=3)
    assert rep["ok"]
    assert rep["checked"] == 2610
    assert rep["failure_count"] == 0
    assert rep["undecided"] == 0


def test_ring_weights():
    rep = ddrs.check_ring_weights(max_size=3)
    assert rep["ok"]


def test_grammar_and_enumeration():
    assert ddrs.grammar_contains("Zbud", "1:b0")
    assert not ddrs.grammar_contains("Zbud", "0:b0")
    terms = ddrs.enumerate_terms("Zbud", max_size=2, grammar_only=True)
    assert terms == ["0", "1", "-1", "1:b0", "1:b1"]


def test_load_system_text_errors():
    import pytest

    with pytest.raises(ValueError):
        ddrs.load_system_text("not a rule file")


def test_status_text():
    text = ddrs.status("Zdt")
    assert "termination: open" in text
