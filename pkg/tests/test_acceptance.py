"""The eleven acceptance criteria plus the wall-time budget.

One full symbolic run and one full rational run of the default suite are
shared by all criteria; each test prints a single PASS/FAIL line.
"""
from __future__ import annotations

import time
from fractions import Fraction

import pytest

from qmonodromy.cli import RunConfig, run
from qmonodromy.rmatrix import r_matrix
from qmonodromy.scalars import SymbolicField

REPS = ("fund", "tensor:2", "tensor:3")


@pytest.fixture(scope="module")
def symbolic():
    t0 = time.perf_counter()
    code, report = run(RunConfig())
    return code, report, time.perf_counter() - t0


@pytest.fixture(scope="module")
def rational():
    t0 = time.perf_counter()
    code, report = run(RunConfig(q_mode="3/2"))
    return code, report, time.perf_counter() - t0


@pytest.fixture(scope="module")
def flipped():
    return run(RunConfig(checks=["mer", "uvw", "rll", "bar", "sigma-family"], reps=["fund"],
                         gradings=[(1, 1, 1)], flip_sign=True))


def results(report, check, rep=None):
    return [r for r in report["results"] if r["check-id"] == check and (rep is None or r["representation"] == rep)]


def details(rows):
    return {d["name"]: d["ok"] for r in rows for d in r["details"]}


def verdict(capsys, number: int, title: str, ok: bool, info: str = "") -> None:
    with capsys.disabled():
        print(f"\n[acceptance {number:2d}] {'PASS' if ok else 'FAIL'}  {title}{'  (' + info + ')' if info else ''}")
    assert ok, f"criterion {number} failed: {info}"


def all_pass(rows) -> bool:
    return bool(rows) and all(r["status"] == "pass" for r in rows)


def test_01_defining_relations(symbolic, capsys):
    _, rep, _ = symbolic
    ok = all(all_pass(results(rep, "gl3-relations", r)) for r in REPS)
    verdict(capsys, 1, "defining relations in dims 3, 9, 27", ok)


def test_02_affine_relations(symbolic, capsys):
    _, rep, _ = symbolic
    rows = results(rep, "affine-relations")
    names = details(rows)
    variants = {n.split(":")[0] for n in names}
    ok = all(all_pass(results(rep, "affine-relations", r)) for r in REPS) and {"gl3", "sl3"} <= variants
    verdict(capsys, 2, "affine relations, gl3 and sl3 homomorphisms", ok, f"{len(names)} relations per rep")


def test_03_r_matrix_and_ybe(symbolic, capsys):
    _, rep, _ = symbolic
    f = SymbolicField()
    q, kap = f.q, f.kappa
    rm = r_matrix(f)
    # the displayed table, entry for entry (B without e^f, then K)
    want_B = {}
    for a in range(3):
        want_B[((a, a), (a, a))] = [f.one, -q(-2)]
        for b in range(3):
            if a != b:
                want_B[((a, b), (a, b))] = [f.one, -f.one]
                want_B[((a, b), (b, a))] = [kap]
    want_K = {(a, b): q(Fraction(2, 3)) if a == b else q(Fraction(-1, 3)) for a in range(3) for b in range(3)}
    s = (1, 2, 4)
    powers = {((0, 1), (1, 0)): 2, ((0, 2), (2, 0)): 6, ((1, 2), (2, 1)): 4,
              ((1, 0), (0, 1)): 5, ((2, 0), (0, 2)): 1, ((1, 2), (2, 1)): 4, ((2, 1), (1, 2)): 3}
    ex = rm.explicit(s)
    table_ok = ({k: v for k, v in rm.B.items() if any(v)} == want_B and rm.K == want_K
                and all(min(ex[k]) == p for k, p in powers.items()))
    ybe_rows = results(rep, "ybe")
    sampled = all(any(n.endswith("at r=3/2") for n in (d["name"] for d in r["details"])) for r in ybe_rows)
    ok = table_ok and all_pass(ybe_rows) and sampled
    verdict(capsys, 3, "R-matrix table and Yang-Baxter (symbolic and r=3/2)", ok,
            f"{len(want_B)} nonzero B entries, {len(ybe_rows)} gradings")


def test_04_mer(symbolic, capsys):
    _, rep, _ = symbolic
    rows = results(rep, "mer")
    names = details(rows)
    ok = all_pass(rows) and names.get("pi(F) = f3(q^-4 t) + f3(t) + f3(q^2 t)") is True
    verdict(capsys, 4, "pi(M) = R-blocks including the scalar prefactor, order 6", ok)


SUB_IDENTITIES = {
    "m1": "(m1)", "m2": "(m2)", "m3": "(m3)", "m4": "(m4)", "m5": "(m5)",
    "bea": "1 + kappa E'_alpha(t) = V'11(-q^-2 t)^-1 V'22(-q^-2 t)",
    "beb": "1 + kappa E'_beta(t) = V'22(q^-3 t)^-1 V'33(q^-3 t)",
    "vvv": "V'11(q^2 t) V'22(t) V'33(q^-2 t) = 1",
    "omc": "1 - C1 t - C2 t^2 - C3 t^3 = N'11(q^2 t) N''22(t) N'''33(q^-2 t)",
    "fffc": "F(q^2 t) + F(t) + F(q^-2 t) = -log(1 - C1 t - C2 t^2 - C3 t^3)",
    "NE": "[N'11, e'_(",
    "UVW": "U V W = e^F N",
    "D": "D_11 matches the ansatz",
}


def test_05_uvw(symbolic, capsys):
    _, rep, _ = symbolic
    missing = []
    for r in REPS:
        names = details(results(rep, "uvw", r) + results(rep, "kt-factors", r))
        for key, prefix in SUB_IDENTITIES.items():
            hits = [ok for n, ok in names.items() if n.startswith(prefix)]
            if not hits or not all(hits):
                missing.append(f"{key}@{r}")
    ok = not missing and all(all_pass(results(rep, c, r)) for c in ("uvw", "kt-factors") for r in REPS)
    verdict(capsys, 5, "UVW = e^F N, D, and every sub-identity, three reps", ok, ", ".join(missing))


def test_06_casimir_centrality(symbolic, capsys):
    _, rep, _ = symbolic
    ok = all(all_pass(results(rep, "casimir-centrality", r)) for r in REPS)
    verdict(capsys, 6, "Casimir centrality, k = 1, 2, 3", ok)


def test_07_casimir_eigenvalues(symbolic, capsys):
    _, rep, _ = symbolic
    rows = results(rep, "casimir-eigenvalues")
    names = details(rows)
    weights = ["(1, 0, 0)", "(2, 0, 0)", "(1, 1, 0)", "(3, 0, 0)", "(2, 1, 0)", "(1, 1, 1)"]
    seen = [w for w in weights if any(w in n for n in names)]
    ok = all_pass(rows) and seen == weights
    verdict(capsys, 7, "C-polynomial factorization on highest-weight vectors", ok, f"{len(names)} eigenvalue checks")


def test_08_rll_family(symbolic, capsys):
    _, rep, _ = symbolic
    bad = []
    for r in ("fund", "tensor:2"):
        for check in ("rll", "bar", "sigma-family"):
            rows = results(rep, check, r)
            grads = {tuple(x["grading"]) for x in rows}
            if not all_pass(rows) or (1, 1, 1) not in grads or not (grads - {(1, 1, 1)}):
                bad.append(f"{check}@{r}")
    verdict(capsys, 8, "RLL for M, Mbar and the sigma family, uniform and non-uniform gradings", not bad, ", ".join(bad))


def test_09_symmetric_form(symbolic, capsys):
    _, rep, _ = symbolic
    ok = all(all_pass(results(rep, "symmetric-form", r)) for r in REPS)
    verdict(capsys, 9, "automorphism applied to M gives the symmetric display", ok)


def test_10_sl3_variant(symbolic, capsys):
    _, rep, _ = symbolic
    rows = results(rep, "sl3-variant")
    names = details(rows)
    ok = (all(all_pass(results(rep, "sl3-variant", r)) for r in REPS)
          and names.get("C3 = q^-2") is True and names.get("substitution route = displayed sl3 forms") is True)
    verdict(capsys, 10, "sl3 substitution route = displayed sl3 forms, C3 = q^-2", ok)


def test_11_falsifiability(flipped, capsys):
    code, rep = flipped
    failing = {r["check-id"] for r in rep["results"] if r["status"] == "fail" and r["first-failing-coefficient"]}
    ok = code == 1 and {"mer", "uvw", "rll"} <= failing
    verdict(capsys, 11, "flip-sign hook breaks mer, uvw and RLL", ok, "failing: " + ", ".join(sorted(failing)))


def test_wall_time_budget(symbolic, rational, capsys):
    code_s, rep_s, t_s = symbolic
    code_r, rep_r, t_r = rational
    ok = code_s == 0 and code_r == 0 and t_s < 300 and t_r < 30
    verdict(capsys, 12, "suite green; wall time symbolic < 5 min, rational < 30 s", ok,
            f"symbolic {t_s:.1f} s over {rep_s['summary']['total']} jobs, rational {t_r:.1f} s")
