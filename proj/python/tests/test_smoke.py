import pathlib

import pytest

import ordlang

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def test_ordinal_arithmetic():
    w = ordlang.Ordinal.omega()
    assert str(w * 2 + 3) == "w*2+3"
    assert ordlang.Ordinal(1) + w == w
    assert ordlang.Ordinal("w^2").fundamental(3) == "w*3"
    assert ordlang.Ordinal("w^w").size() == 3
    assert ordlang.Ordinal("w^2") < ordlang.Ordinal("w^w")
    assert ordlang.omega_pow(2) == "w^2"


def test_parse_errors():
    with pytest.raises(ordlang.ParseError):
        ordlang.Ordinal.parse("w^")
    with pytest.raises(ordlang.ParseError):
        ordlang.parse_program("<1")
    with pytest.raises(ordlang.Error):
        ordlang.Ordinal("w+1").fundamental(2)


def test_programs():
    p = ordlang.parse_program("<1><2>")
    assert p.length == 5
    assert p.depth == 1
    assert p.is_safe()
    assert p.ordinal == "w^2+w"
    assert str(ordlang.synthesize("w^2+w")) == "<1><2>"
    assert ordlang.synthesize("w^w") == ordlang.Program("<<1>>")


def test_run():
    assert ordlang.run(ordlang.Program("<<1>>"), 3)["finalLength"] == 259
    t = ordlang.run(ordlang.Program("<1>"), 2, trace=True)
    assert t["finalLength"] == 5
    assert [s["rule"] for s in t["steps"]] == ["omega", "A", "A", "A"]
    with pytest.raises(ordlang.FuelExhausted):
        ordlang.run(ordlang.Program("<<1>>"), 2, fuel=5)


def test_size_and_bounds():
    assert ordlang.size("w^2", 2) == 9
    assert ordlang.size("w^w", 3) == 256
    assert ordlang.size("w^w+w", 2) == 46659
    assert ordlang.size("w^w+w^2", 2) == 21 + 24**24
    with pytest.raises(ValueError, match="overflow"):
        ordlang.size("w^w*2", 2)
    assert ordlang.runtime_bound("w^2", 2) >= 30
    assert ordlang.wainer(2, 2) == 23
    assert ordlang.wainer("w", 2) == 23
    assert ordlang.tower(3, 2, 3) == 7625597484987


def test_classify():
    r = ordlang.classify("w^2")
    assert r["label"] == "TIMEF(n^2)"
    assert r["exact"] is True
    assert ordlang.classify("w^w")["label"] == "≈TIMEF(n_1)"
    assert ordlang.classify("w^(w+2)")["label"] == "≈TIMEF(F_4)"
    r = ordlang.classify_program(ordlang.Program("111"))
    assert r["family"] == ordlang.classify(3)["family"]
    assert r["depth"] == 0


def test_simulate():
    machine = (DATA / "machines" / "unary_appender.json").read_text()
    sim = ordlang.simulate(machine, "w^2")
    assert sim["steps"] == 9
    assert sim["matchesDirect"]


def test_verify_quick_criteria():
    for key in ["goldens", "wainer", "tower"]:
        r = ordlang.verify(key)
        assert r["passed"], r["detail"]
