import pytest

import detksat


def test_solve_matches_brute_force():
    for seed in range(20):
        text = detksat.generate(3, 10, 42, seed)
        report = detksat.solve(text)
        assert report["schema"] == 1
        expected = detksat.brute_force(text) is not None
        assert (report["verdict"] == "SAT") == expected
        if expected:
            assert len(report["assignment"]) == 10


def test_modes_agree():
    text = detksat.generate(4, 9, 80, 7)
    verdicts = {detksat.solve(text, mode)["verdict"] for mode in ("full", "br", "dls", "oracle")}
    assert len(verdicts) == 1


def test_constants():
    rows = detksat.bounds(6)
    assert [r[0] for r in rows] == [3, 4, 5, 6]
    assert rows[0][1] == pytest.approx(detksat.c3())
    assert detksat.chain_lambda("*") == "3/7"
    assert detksat.chain_lambda("n*") == "27/110"
    assert detksat.ell_for(2, 3, "3/7") == 4
    assert detksat.chain_table_mismatches() == 0


def test_errors():
    with pytest.raises(ValueError):
        detksat.solve("p cnf 2 1\n1 3 0\n")
    with pytest.raises(ValueError):
        detksat.generate(5, 3, 1, 0)
