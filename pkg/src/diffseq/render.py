"""Text, LaTeX and JSON rendering of polynomials, members and reports."""

from __future__ import annotations

import json
from fractions import Fraction
from functools import singledispatch

from .diffalg import DiffPoly, ExpDiffPoly

FORMATS = ("text", "latex", "json")


def _deriv_text(k):
    if k <= 3:
        return "y" + "'" * k
    return f"y^({k})"


def _deriv_latex(k):
    if k <= 3:
        return "y" + "'" * k
    return f"y^{{({k})}}"


def _factors(mono, latex):
    out = []
    if mono[0]:
        out.append(("x", mono[0]))
    for k, e in enumerate(mono[1:]):
        if e:
            out.append((_deriv_latex(k) if latex else _deriv_text(k), e))
    return out


def _coeff_text(c):
    return str(c)


def _coeff_latex(c):
    if c.denominator == 1:
        return str(c.numerator)
    return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


def _join(pieces):
    if not pieces:
        return "0"
    sign, body = pieces[0]
    out = ("-" if sign < 0 else "") + body
    for sign, body in pieces[1:]:
        out += (" - " if sign < 0 else " + ") + body
    return out


def text_diffpoly(p):
    pieces = []
    for mono, c in p.sorted_terms():
        factors = [f if e == 1 else f"{f}^{e}" for f, e in _factors(mono, False)]
        mag = abs(c)
        if not factors:
            body = _coeff_text(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_coeff_text(mag)] + factors)
        pieces.append((1 if c > 0 else -1, body))
    return _join(pieces)


def latex_diffpoly(p):
    pieces = []
    for mono, c in p.sorted_terms():
        factors = "".join(f if e == 1 else f"{f}^{{{e}}}" for f, e in _factors(mono, True))
        mag = abs(c)
        if not factors:
            body = _coeff_latex(mag)
        elif mag == 1:
            body = factors
        else:
            body = _coeff_latex(mag) + factors
        pieces.append((1 if c > 0 else -1, body))
    return _join(pieces)


def _exp_factor(lam, latex):
    if latex:
        if lam == 1:
            return r"e^{\int y\,dx}"
        return rf"e^{{{lam}\int y\,dx}}"
    return "E" if lam == 1 else f"E^{lam}"


def _render_exp(p, poly_fn, latex):
    if not p.levels:
        return "0"
    parts = []
    for lam in sorted(p.levels, reverse=True):
        body = poly_fn(p.levels[lam])
        if lam == 0:
            parts.append(body)
        elif latex:
            parts.append(f"{_exp_factor(lam, True)}\\left({body}\\right)")
        else:
            parts.append(f"{_exp_factor(lam, False)}*({body})")
    return " + ".join(parts)


def text_exp(p):
    return _render_exp(p, text_diffpoly, False)


def latex_exp(p):
    return _render_exp(p, latex_diffpoly, True)


def to_jsonable(obj):
    """Convert results into JSON-ready structures (Fractions become strings)."""
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def dumps(obj):
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=False)


@singledispatch
def render(result, fmt="text"):
    """Render any result object as ``text``, ``latex`` or ``json``."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if fmt == "json":
        return dumps(result)
    if hasattr(result, "to_text") and fmt == "text":
        return result.to_text()
    if hasattr(result, "to_latex") and fmt == "latex":
        return result.to_latex()
    if isinstance(result, dict) and not result:
        return ""
    return str(result)


@render.register
def _(result: DiffPoly, fmt="text"):
    if fmt == "json":
        return dumps(result.to_json())
    if fmt == "latex":
        return latex_diffpoly(result)
    return text_diffpoly(result)


@render.register
def _(result: ExpDiffPoly, fmt="text"):
    if fmt == "json":
        return dumps(result.to_json())
    if fmt == "latex":
        return latex_exp(result)
    return text_exp(result)
