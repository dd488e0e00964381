"""Canonical JSON and LaTeX serializations of the main objects."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .algebra import AlgebraExpression, ConfigError, casimir
from .linalg import Mat
from .monodromy import MonodromyForm, bar_M, closed_form_M, f_polynomials, f_series
from .representations import Representation
from .rmatrix import PAIRS, r_matrix
from .scalars import FieldScalar, LaurentScalar, SymbolicField, three_q

TARGETS = ("R", "M", "Mbar", "casimir1", "casimir2", "casimir3", "F-series")
FORMATS = ("json", "latex")


def dump_scalar(c: Any) -> Any:
    if isinstance(c, FieldScalar):
        return c.dump()
    if isinstance(c, LaurentScalar):
        return {"num": c.dump(), "den": [["0", "1"]]}
    return str(c)


def dump_matrix(m: Mat) -> list[list[Any]]:
    return [[i, j, dump_scalar(v)] for i, j, v in sorted(m.entries(), key=lambda e: (e[0], e[1]))]


# ---------------------------------------------------------------------------
# LaTeX


def _qpow(e: Fraction, symbol: str = "q") -> str:
    if e == 0:
        return ""
    if e == 1:
        return symbol
    if e.denominator == 1:
        return f"{symbol}^{{{e.numerator}}}"
    return f"{symbol}^{{{e.numerator}/{e.denominator}}}"


def latex_laurent(p: LaurentScalar) -> str:
    if not p:
        return "0"
    parts = []
    for e, c in sorted(p.terms().items(), reverse=True):
        mono = _qpow(e)
        mag = abs(c)
        coef = "" if mag == 1 and mono else (str(mag) if mag.denominator == 1 else f"\\tfrac{{{mag.numerator}}}{{{mag.denominator}}}")
        body = coef + mono or "1"
        parts.append(("-" if c < 0 else "+") + " " + body)
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def latex_scalar(c: Any) -> str:
    if isinstance(c, FieldScalar):
        num = latex_laurent(c.numerator)
        den = c.denominator
        if den == LaurentScalar({Fraction(0): 1}):
            return num
        return f"\\frac{{{num}}}{{{latex_laurent(den)}}}"
    if isinstance(c, LaurentScalar):
        return latex_laurent(c)
    f = Fraction(str(c))
    return str(f.numerator) if f.denominator == 1 else f"\\tfrac{{{f.numerator}}}{{{f.denominator}}}"


def _latex_factor(f: Any) -> str:
    if isinstance(f, tuple):
        parts = []
        for coeff, g in zip(f, ("G_1", "G_2", "G_3")):
            if coeff == 0:
                continue
            c = Fraction(coeff)
            mag = "" if abs(c) == 1 else (str(abs(c)) if c.denominator == 1 else f"\\tfrac{{{abs(c).numerator}}}{{{abs(c).denominator}}}")
            parts.append(("-" if c < 0 else "+") + mag + g)
        s = "".join(parts).lstrip("+")
        return f"q^{{{s}}}"
    return f"{f[0]}_{{{f[1:]}}}"


def latex_expression(e: AlgebraExpression) -> str:
    if not e.terms:
        return "0"
    out = []
    for w, c in e.terms.items():
        word = " ".join(_latex_factor(f) for f in w)
        coef = latex_scalar(c)
        if coef == "1" and word:
            out.append(word)
        elif coef == "-1" and word:
            out.append("-" + word)
        else:
            out.append(f"\\left({coef}\\right) {word}".rstrip())
    return " + ".join(out).replace("+ -", "- ")


def latex_series_entry(poly: dict[int, AlgebraExpression]) -> str:
    parts = []
    for k, e in sorted(poly.items()):
        t = "" if k == 0 else (" t" if k == 1 else f" t^{{{k}}}")
        parts.append(f"\\left({latex_expression(e)}\\right){t}" if t else latex_expression(e))
    return " + ".join(parts) or "0"


# ---------------------------------------------------------------------------
# targets


def export_r(field: Any) -> dict[str, Any]:
    rm = r_matrix(field)
    entries = []
    for ab in PAIRS:
        for cd in PAIRS:
            coeffs = rm.B.get((ab, cd), [])
            entries.append({"ab": f"{ab[0] + 1}{ab[1] + 1}", "cd": f"{cd[0] + 1}{cd[1] + 1}",
                            "B": [dump_scalar(c) for c in coeffs]})
    K = {f"{a + 1}{b + 1}": dump_scalar(v) for (a, b), v in sorted(rm.K.items())}
    return {"target": "R", "prefactor": "exp(f(t)), f = f3(q^2 t) + f3(t) + f3(q^-4 t)",
            "entries": entries, "nonzero-B": rm.nonzero_B(), "K": K}


def _export_form(form: MonodromyForm, rep: Representation | None, order: int) -> dict[str, Any]:
    out: dict[str, Any] = {"target": form.name, **form.dump()}
    if rep is not None:
        g = form.evaluate(rep, order)
        out["representation"] = rep.name
        out["evaluated"] = {f"{a + 1}{b + 1}": [dump_matrix(x) for x in s.coeffs]
                            for (a, b), s in sorted(g.entries.items())}
    return out


def export_f_series(order: int, rep: Representation | None) -> dict[str, Any]:
    polys = f_polynomials(order)
    coeffs = []
    for k, p in enumerate(polys, start=1):
        coeffs.append({"k": k, "numerator": str(p), "denominator": dump_scalar(three_q(k) * k)})
    out: dict[str, Any] = {"target": "F-series", "order": order, "coefficients": coeffs}
    if rep is not None:
        out["representation"] = rep.name
        out["evaluated"] = [dump_matrix(m) for m in f_series(rep, order).coeffs]
    return out


def export(target: str, rep: Representation | None = None, order: int = 6, fmt: str = "json") -> str:
    if fmt not in FORMATS:
        raise ConfigError(f"unknown format {fmt!r}")
    field = rep.field if rep is not None else SymbolicField()
    if target == "R":
        if fmt == "latex":
            return latex_r(field)
        data = export_r(field)
    elif target in ("M", "Mbar"):
        form = closed_form_M() if target == "M" else bar_M()
        if fmt == "latex":
            return latex_form(form)
        data = _export_form(form, rep, order)
    elif target.startswith("casimir") and target[7:] in ("1", "2", "3"):
        e = casimir(int(target[7:]))
        if fmt == "latex":
            return f"C^{{({target[7:]})}} = {latex_expression(e)}\n"
        data = {"target": target, "terms": e.dump()}
    elif target == "F-series":
        if fmt == "latex":
            return latex_f_series(order)
        data = export_f_series(order, rep)
    else:
        raise ConfigError(f"unknown export target {target!r}")
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def latex_r(field: Any) -> str:
    rm = r_matrix(field)
    lines = []
    for (ab, cd), coeffs in sorted(rm.B.items()):
        terms = []
        for k, c in enumerate(coeffs):
            if not c:
                continue
            t = "" if k == 0 else (" t" if k == 1 else f" t^{{{k}}}")
            s = latex_scalar(c)
            terms.append(f"\\left({s}\\right){t}" if t else s)
        lines.append(f"B_{{{ab[0] + 1}{ab[1] + 1}|{cd[0] + 1}{cd[1] + 1}}} &= {' + '.join(terms)} \\\\")
    for (a, b), v in sorted(rm.K.items()):
        lines.append(f"K_{{{a + 1}{b + 1}|{a + 1}{b + 1}}} &= {latex_scalar(v)} \\\\")
    return "\\begin{align*}\n" + "\n".join(lines) + "\n\\end{align*}\n"


def latex_form(form: MonodromyForm) -> str:
    rows = []
    for a in range(3):
        rows.append(" & ".join(latex_series_entry(form.entries.get((a, b), {})) for b in range(3)))
    return "\\begin{pmatrix}\n" + " \\\\\n".join(rows) + "\n\\end{pmatrix}\n"


def latex_f_series(order: int) -> str:
    lines = []
    for k, p in enumerate(f_polynomials(order), start=1):
        lines.append(f"F_{{{k}}} &= {str(p).replace('*', ' ')} ,\\quad "
                     f"\\text{{weight}}\\ \\frac{{1}}{{{k}\\left({latex_laurent(three_q(k).numerator)}\\right)}} \\\\")
    return "\\begin{align*}\n" + "\n".join(lines) + "\n\\end{align*}\n"


__all__ = ["TARGETS", "FORMATS", "export", "dump_scalar", "dump_matrix", "latex_scalar", "latex_expression"]
