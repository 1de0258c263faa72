import pyvpc


def test_replay():
    r = pyvpc.replay("integers", completeness=True)
    assert r["passed"] == r["total"] == 66
    assert r["failed"] == []


def test_session_thm17():
    s = pyvpc.Session("integers", ["neq [a 0] [ ]", "mult [a a] [b]"], until="thm 17")
    s.split(1)
    s.focus([0])
    s.step("lt [0 b] [ ]", "lem 2 [1 2]")
    s.focus([1])
    s.step("lt [0 b] [ ]", "lem 1 [1 2]")
    s.focus([])
    s.contract()
    assert s.complete
    block = s.extract("Theorem", "thm 17")
    with open(pyvpc.corpus_root() + "/integers/proofs/019_thm_17.prf") as f:
        assert block == f.read()


def test_errors():
    s = pyvpc.Session("integers", ["mult [a a] [b]"], until="thm 17")
    try:
        s.split(1)
    except pyvpc.ProverError as e:
        assert "disjunction" in str(e) or str(e)
    else:
        raise AssertionError("split of an atomic line")
    try:
        pyvpc.Session("integers", ["add [a b"])
    except pyvpc.ParseError:
        pass
    else:
        raise AssertionError("bad premise accepted")


def test_tent():
    t = pyvpc.tent_trajectory(50, 2, 100)
    assert (t["cycle_start"], t["cycle_length"]) == (2, 10)
    c = pyvpc.certify_tent(50, 0, 100)
    assert c["issued"] and c["validated_starts"] == 101


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
    print("python bindings OK")
