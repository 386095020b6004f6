"""Polynomial system for two hyperboloidal configurations with equal center distances.

Ball w of the first configuration sits at

    (2 h t_w / (1 - t_w^2), (1 - t_w^2) / (1 + t_w^2), 2 t_w / (1 + t_w^2))

and the second uses (hp, t_wp). For a pair uv the squared center distance
is N_uv / D_uv with

    N_uv = 4 (t_u - t_v)^2 [h^2 (1 + t_u t_v)^2 (1 + t_u^2)(1 + t_v^2) + (1 - t_u^2)^2 (1 - t_v^2)^2]
    D_uv = (1 - t_u^2)^2 (1 - t_v^2)^2 (1 + t_u^2)(1 + t_v^2)

so matching a distance across the two configurations is N D' - N' D = 0,
and non-overlap is N - 4 D >= 0 since D > 0 away from |t| = 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy
from sympy.parsing.sympy_parser import parse_expr

from geometry.errors import InvalidInput

VARIABLES = ("u", "h", "ta", "tb", "tc", "td", "hp", "tap", "tbp", "tcp", "tdp")
SYMBOLS = sympy.symbols(" ".join(VARIABLES))
SYM = dict(zip(VARIABLES, SYMBOLS))
PAIRS = (("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d"))
FIRST_ORDER = "abcd"
SECOND_ORDER = "acdb"

EQ, GT, GE = "=", ">", ">="
_LINE = re.compile(r"^(.*?)\s*(>=|>|=)\s*0$")


@dataclass(frozen=True)
class Constraint:
    poly: sympy.Poly
    relation: str
    label: str = field(default="", compare=False)

    @property
    def degree(self) -> int:
        return self.poly.total_degree()


@dataclass(frozen=True)
class PolynomialSystem:
    variables: tuple[str, ...]
    equalities: tuple[Constraint, ...]
    inequalities: tuple[Constraint, ...]

    @property
    def degrees(self) -> dict[str, list[int]]:
        return {"equalities": [c.degree for c in self.equalities],
                "inequalities": [c.degree for c in self.inequalities]}

    def constraints(self) -> tuple[Constraint, ...]:
        return self.equalities + self.inequalities


def distance_parts(h, tu, tv):
    """(N, D) with |uv|^2 = N / D for two balls of one hyperboloidal configuration."""
    n = 4 * (tu - tv) ** 2 * (h ** 2 * (1 + tu * tv) ** 2 * (1 + tu ** 2) * (1 + tv ** 2)
                             + (1 - tu ** 2) ** 2 * (1 - tv ** 2) ** 2)
    d = (1 - tu ** 2) ** 2 * (1 - tv ** 2) ** 2 * (1 + tu ** 2) * (1 + tv ** 2)
    return n, d


def _poly(expr) -> sympy.Poly:
    return sympy.Poly(sympy.expand(expr), *SYMBOLS, domain="QQ")


def _t(label: str, primed: bool = False):
    return SYM[f"t{label}p" if primed else f"t{label}"]


def build_pinning_system() -> PolynomialSystem:
    h, hp, u = SYM["h"], SYM["hp"], SYM["u"]
    equalities = []
    for a, b in PAIRS:
        n1, d1 = distance_parts(h, _t(a), _t(b))
        n2, d2 = distance_parts(hp, _t(a, True), _t(b, True))
        equalities.append(Constraint(_poly(n1 * d2 - n2 * d1), EQ, f"dist_{a}{b}"))
    equalities.append(Constraint(_poly(u * h * hp - 1), EQ, "saturation"))

    inequalities = []
    for order, primed in ((FIRST_ORDER, False), (SECOND_ORDER, True)):
        for x, y in zip(order, order[1:]):
            inequalities.append(Constraint(_poly(_t(y, primed) - _t(x, primed)), GT,
                                           f"order_{x}{y}{'p' if primed else ''}"))
    for a, b in PAIRS:
        n1, d1 = distance_parts(h, _t(a), _t(b))
        inequalities.append(Constraint(_poly(n1 - 4 * d1), GE, f"apart_{a}{b}"))
    return PolynomialSystem(VARIABLES, tuple(equalities), tuple(inequalities))


def _sorted_terms(poly: sympy.Poly) -> list[tuple[tuple[int, ...], Fraction]]:
    terms = [(monom, Fraction(int(c.p), int(c.q))) for monom, c in poly.terms()]
    return sorted(terms, key=lambda item: (sum(item[0]), item[0]), reverse=True)


def _factors(monom: tuple[int, ...]) -> list[tuple[str, int]]:
    return [(name, e) for name, e in zip(VARIABLES, monom) if e]


def _plain_term(monom, coeff: Fraction) -> str:
    body = "*".join(name if e == 1 else f"{name}**{e}" for name, e in _factors(monom))
    magnitude = abs(coeff)
    if not body:
        return str(magnitude)
    if magnitude == 1:
        return body
    return f"{magnitude}*{body}"


def plain_poly(poly: sympy.Poly) -> str:
    terms = _sorted_terms(poly)
    if not terms:
        return "0"
    out = []
    for k, (monom, coeff) in enumerate(terms):
        text = _plain_term(monom, coeff)
        if k == 0:
            out.append(f"-{text}" if coeff < 0 else text)
        else:
            out.append(f" - {text}" if coeff < 0 else f" + {text}")
    return "".join(out)


def _smt_number(value: Fraction) -> str:
    magnitude = abs(value)
    text = str(magnitude.numerator) if magnitude.denominator == 1 else \
        f"(/ {magnitude.numerator} {magnitude.denominator})"
    return f"(- {text})" if value < 0 else text


def _smt_term(monom, coeff: Fraction) -> str:
    names = [name for name, e in _factors(monom) for _ in range(e)]
    if not names:
        return _smt_number(coeff)
    if abs(coeff) == 1:
        body = names[0] if len(names) == 1 else f"(* {' '.join(names)})"
        return f"(- {body})" if coeff < 0 else body
    return f"(* {_smt_number(coeff)} {' '.join(names)})"


def smt_poly(poly: sympy.Poly) -> str:
    terms = [_smt_term(m, c) for m, c in _sorted_terms(poly)]
    if not terms:
        return "0"
    if len(terms) == 1:
        return terms[0]
    return f"(+ {' '.join(terms)})"


def emit_system(system: PolynomialSystem, fmt: str = "plain") -> str:
    if fmt == "plain":
        lines = [f"# variables: {' '.join(system.variables)}"]
        lines += [f"{plain_poly(c.poly)} {c.relation} 0" for c in system.constraints()]
        return "\n".join(lines) + "\n"
    if fmt == "smtlib":
        lines = ["(set-logic QF_NRA)"]
        lines += [f"(declare-const {name} Real)" for name in system.variables]
        lines += [f"(assert ({c.relation} {smt_poly(c.poly)} 0))" for c in system.constraints()]
        lines += ["(check-sat)", "(exit)"]
        return "\n".join(lines) + "\n"
    raise InvalidInput(f"Unknown format {fmt!r}; expected plain or smtlib")


def parse_system(text: str) -> PolynomialSystem:
    """Inverse of emit_system(..., "plain")."""
    variables = VARIABLES
    equalities, inequalities = [], []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("# variables:"):
                variables = tuple(line.split(":", 1)[1].split())
            continue
        match = _LINE.match(line)
        if match is None:
            raise InvalidInput(f"Cannot parse constraint: {line}")
        expr = parse_expr(match.group(1), local_dict=SYM)
        constraint = Constraint(_poly(expr), match.group(2))
        (equalities if constraint.relation == EQ else inequalities).append(constraint)
    if variables != VARIABLES:
        raise InvalidInput(f"Unexpected variable list {variables}")
    return PolynomialSystem(variables, tuple(equalities), tuple(inequalities))


def lambdify_constraints(system: PolynomialSystem):
    """Vectorized evaluator: (M, 11) states -> (M, len(constraints)) polynomial values."""
    funcs = [sympy.lambdify(SYMBOLS, c.poly.as_expr(), "numpy") for c in system.constraints()]

    def evaluate(states: np.ndarray) -> np.ndarray:
        states = np.atleast_2d(np.asarray(states, dtype=float))
        cols = [np.broadcast_to(np.asarray(f(*states.T), dtype=float), (len(states),)) for f in funcs]
        return np.column_stack(cols)

    return evaluate
