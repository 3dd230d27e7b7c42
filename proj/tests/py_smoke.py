#!/usr/bin/env python3
"""Smoke checks of the python bindings: every exported operation runs and
agrees with the values the unit suite pins down."""

import sys
import tempfile
from pathlib import Path

import tetkit

FAILURES = []

TYING_TABLE = """k=4
mode=finite
w=[1,1,1]
M=[2,-1,-1]
M=[-1,2,-1]
M=[-1,-1,2]
"""

ELECTION = """k=4
mode=finite
total=3
"1 2 3 4" = 2
"4 3 2 1" = 1
"""


def check(name, cond, detail=""):
    if not cond:
        FAILURES.append(name)
        print(f"FAIL {name} {detail}")
    else:
        print(f"ok   {name}")


def main():
    rep = tetkit.validate_table(TYING_TABLE)
    check("validate_table", rep["valid"] and rep["tying"] and rep["m0"] == [0, 0, 0]
          and rep["violations"] == [], rep)

    try:
        tetkit.validate_table("k=4\nmode=finite\nw=[1,oops]\nM=[1,1]\nM=[1,1]\n")
        check("validate_table raises", False)
    except ValueError:
        check("validate_table raises", True)

    check("rank", tetkit.rank(ELECTION) == [[1], [2], [3], [4]])
    check("rank reversed", tetkit.rank(ELECTION, w=-1) == [[4], [3], [2], [1]])
    check("rank tie rule", tetkit.rank(ELECTION, w=0) == [[1, 2, 3, 4]])
    check("borda_scores", tetkit.borda_scores(ELECTION) == ["6", "5", "4", "3"])

    found = tetkit.search(4, 2)
    check("search count", found["solutions"] == 3, found)
    check("search patterns", sorted(found["patterns"]) == ["+1", "-1", "0"], found)
    tie_table = found["tables"][found["patterns"].index("0")]
    check("search tie table", set(tie_table.values()) == {"T"})
    check("search w table", tie_table["0,0,1,1,0,0"] == "T"
          and found["tables"][found["patterns"].index("+1")]["0,0,0,2,0,0"] == "W")

    with tempfile.TemporaryDirectory(prefix="tetkit-py-") as tmp:
        cert = Path(tmp) / "tie"
        rep = tetkit.prove(4, 3, "0,0,2,0,1,0", out_dir=str(cert))
        check("prove tie", rep["accepted"] and rep["kind"] == "tie", rep)

        rep = tetkit.prove(4, 3, "0,1,0,0,2,0", out_dir=str(Path(tmp) / "sign"))
        check("prove reflected sign", rep["accepted"] and rep["kind"] == "sign"
              and rep["reflected"], rep)

        rep = tetkit.verify_certificate(str(cert))
        check("verify_certificate", rep["accepted"] and rep["error"] == "", rep)

        step = sorted(cert.glob("step-*.tet"))[0]
        original = step.read_text()
        step.write_text(original.replace("w=[1", "w=[2", 1))
        rep = tetkit.verify_certificate(str(cert))
        check("verify_certificate rejects a changed weight",
              not rep["accepted"] and rep["error"] != "", rep)

        step.write_text(original.replace("w=[", "w=[7,", 1))
        try:
            tetkit.verify_certificate(str(cert))
            check("verify_certificate rejects a malformed table", False)
        except RuntimeError:
            check("verify_certificate rejects a malformed table", True)

    joint = tetkit.couple(4, "0,0,1,1,0,0", "0,1,0,0,1,0")
    check("couple feasible", joint is not None and joint["third"] == "1,0,0,0,0,1"
          and ("k=4" in joint["election"]), joint)
    check("couple infeasible", tetkit.couple(4, "0,0,0,2,0,0", "0,0,0,0,0,2") is None)

    check("lemmas", len(tetkit.lemmas()) == 32 and "Ltwelvestep" in tetkit.lemmas())

    rep = tetkit.check_catalog("Ldiagonals", samples=30, seed=5)
    check("check_catalog", rep["violations"] == [] and rep["samples"] == 30, rep)

    check("margin_sum", tetkit.margin_sum(4, "0,1,0,0,2,0") == "2")
    check("reflect", tetkit.reflect(4, "0,1,0,0,2,0") == "0,2,0,0,1,0")

    if FAILURES:
        print(f"{len(FAILURES)} binding checks failed")
        return 1
    print("all binding checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
