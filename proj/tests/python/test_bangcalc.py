import pytest

import bangcalc

T0 = r"der(!(\x.\y.x)) !(\z.z) !((\x.x x)(\x.x x))"


def test_golden_trace():
    r = bangcalc.normalize(T0)
    assert r["complete"]
    assert [s["rule"] for s in r["steps"]] == ["d!", "dB", "dB", "s!", "s!"]
    assert (r["b"], r["e"], r["w_size"]) == (2, 3, 1)
    assert bangcalc.alpha_eq(r["normal_form"], r"\z. z")


def test_tight_counters():
    r = bangcalc.tight(T0)
    assert r["status"] == "ok"
    assert r["counters"] == [2, 3, 1]
    assert bangcalc.check("e", r["derivation"]) == {"ok": True}


def test_persistent_closure_has_no_tight_expansion():
    r = bangcalc.tight(r"(\x. x) y")
    assert r["status"] == "no-tight-expansion"
    assert r["step"] == 1


def test_infer_and_check():
    r = bangcalc.infer(T0)
    assert r["status"] == "ok"
    assert r["size"] >= 6
    assert bangcalc.check("u", r["derivation"])["ok"]
    bad = dict(r["derivation"], type="o7")
    assert not bangcalc.check("u", bad)["ok"]


def test_untypable_and_fuel():
    assert bangcalc.infer(r"der((\y. \x. z) (der(y) y))")["status"] == "untypable"
    assert bangcalc.infer(r"(\x. x !x) !(\x. x !x)", fuel=30)["status"] == "fuel-exhausted"


def test_classes_and_clashes():
    assert bangcalc.classify("x") == {"ne": True, "na": True, "nb": True, "no": True, "wcf": True}
    assert bangcalc.clash("!x y") == {"kind": "AppOfBang", "position": []}
    assert bangcalc.clash(r"!(der(\x. x))") is None


def test_embeddings_and_strategies():
    assert bangcalc.embed_cbn("x y") == "x !y"
    assert bangcalc.embed_cbv("(x y) z") == "der(x !y) !z"
    r = bangcalc.normalize(r"(\x. x) y", calculus="cbn")
    assert [s["rule"] for s in r["steps"]] == ["dB", "s"]


def test_errors():
    with pytest.raises(ValueError):
        bangcalc.parse(r"(\x.")
    with pytest.raises(ValueError):
        bangcalc.embed_cbn("!x")


def test_acceptance_reports_every_criterion():
    results = bangcalc.acceptance()
    assert [r["id"] for r in results] == list(range(1, 12))
