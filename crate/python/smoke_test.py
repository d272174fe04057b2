"""Smoke test for the frobmod extension module."""

import frobmod


def main():
    x = frobmod.Scalar(3, "poly", "x")
    one = x.like(1)
    assert str((x + one) * (x - one)) == "x^2+2"
    assert (x + one).frobenius() == x.frobenius() + one
    assert str(frobmod.Scalar(3, "perfect", "x").root(2)) == "(x, 2)"
    u = frobmod.Scalar(3, "ext:2", "u")
    assert u.frobenius(2) == u
    assert (u * u.inverse()) == u.like(1)

    m = frobmod.Module(3, "prime", [[0, 1], [1, 1]])
    assert m.is_unit()
    assert m.is_simple(1) and not m.is_simple(4)
    assert m.compose_twist(4).power_matrix(1) == [["2", "0"], ["0", "2"]]
    assert m.geometric_length() == (2, 4)
    assert m.length(4) == 2
    assert len(m.stable_subspaces(4)) == 6
    assert m.descent([[1, 0]]) == [["1", "2"]]
    assert frobmod.Module.parse(m.to_text()).to_text() == m.to_text()

    a = frobmod.Module(3, "poly", [["0", "1"], ["1", "x"]])
    assert a.power_matrix(2) == [["1", "x^3"], ["x", "x^4+1"]]
    root = a.root([[1, 0]])
    assert root["m_used"] == 2 and root["verified"]

    certs = frobmod.certify(3, 4)
    assert len(certs) == 4 and all(c["verdict"] for c in certs)
    assert frobmod.adjoined_root_check(2)["passed"]
    assert frobmod.coefficient_sequence(3, 2) == "x^4+1"

    try:
        frobmod.Module(3, "poly", [["x^^2"]])
    except frobmod.FrobmodError as e:
        assert str(e).startswith("parse_error")
    else:
        raise AssertionError("malformed literal accepted")

    print("frobmod smoke test passed")


if __name__ == "__main__":
    main()
