"""Polynomial nonlinearities f(u, du) for n-component systems.

A nonlinearity is a sum of monomials ``c * prod_i u_i^{a_i} * prod_j (dx u_j)^{b_j}``,
optionally wrapped in an outer spatial divergence ``dx(...)`` (divergence form,
pure-u interior only).  Each monomial carries a degree index

    p = sum(a) + 2 * sum(b)

computed on the divergence-expanded form.  Terms are *relevant* for p < 3,
*marginal* for p = 3 and *irrelevant* for p > 3; p = 3 is the critical
(Fujita) threshold in one space dimension.  Burgers-type terms dx(u_i^2)
(equivalently u_i * dx(u_i)) are marginal; mixed terms draw factors from at
least two distinct components.

A full system is admissible for the small-data decay theory when all
velocities are pairwise distinct and every term with p <= 3, after divergence
expansion, is one of:

* a single u factor times a single dx(u) factor (covers Burgers expansions),
* two dx(u) factors (p = 4, listed for completeness),
* a pure-u cubic that is not a pure cube u_j^3.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

if TYPE_CHECKING:  # avoids a circular import; SystemSpec lives with the builders
    from .scenarios import SystemSpec

__all__ = [
    "Monomial",
    "TermClass",
    "Category",
    "NonlinearitySpec",
    "ParseError",
    "parse_nonlinearity",
    "expand_divergence",
    "classify_term",
    "classify_system",
    "evaluate_nonlinearity",
    "TermReport",
    "SystemVerdict",
    "format_monomial",
    "format_nonlinearity",
]


class ParseError(ValueError):
    """Syntax or semantic error in a nonlinearity expression.

    Carries the character position of the offending token in ``position``.
    """

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


@dataclass(frozen=True)
class Monomial:
    """One additive term c * prod u_i^{a_i} * prod (dx u_j)^{b_j}.

    With ``outer_divergence`` set, the monomial stands for dx(c * prod u_i^{a_i});
    the interior must then be pure-u of total degree >= 2.  Constant terms and
    bare linear terms are rejected: linear dynamics belong to the diffusion and
    advection matrices, not to f.
    """

    coefficient: float
    u_exponents: tuple[int, ...]
    du_exponents: tuple[int, ...]
    outer_divergence: bool = False

    def __post_init__(self):
        a, b = self.u_exponents, self.du_exponents
        if len(a) != len(b):
            raise ValueError("u/du exponent vectors differ in length")
        if any(e < 0 for e in a) or any(e < 0 for e in b):
            raise ValueError("exponents must be non-negative")
        total = sum(a) + sum(b)
        if total == 0:
            raise ValueError("constant terms are not allowed (f(0,0) = 0)")
        if self.outer_divergence:
            if any(b):
                raise ValueError(
                    "divergence wrapper around a term containing dx(.) "
                    "would introduce second derivatives"
                )
            if sum(a) < 2:
                raise ValueError(
                    "bare-linear term: dx(u_i) is advection, not part of f"
                )
        elif total == 1:
            raise ValueError("bare-linear term: linear dynamics belong to D and C")

    @property
    def n(self) -> int:
        return len(self.u_exponents)

    @property
    def degree(self) -> int:
        """Number of factors after divergence expansion."""
        return sum(self.u_exponents) + sum(self.du_exponents)

    @property
    def degree_index(self) -> int:
        """p = sum(a) + 2*sum(b), on the divergence-expanded form."""
        if self.outer_divergence:
            return sum(self.u_exponents) + 1
        return sum(self.u_exponents) + 2 * sum(self.du_exponents)


class Category(Enum):
    RELEVANT = "relevant"
    MARGINAL = "marginal"
    IRRELEVANT = "irrelevant"


@dataclass(frozen=True)
class TermClass:
    """Classification of a single monomial."""

    p: int
    category: Category
    is_mixed: bool
    is_burgers: bool


@dataclass(frozen=True)
class NonlinearitySpec:
    """Per-component term lists; ``terms[i]`` holds the monomials of f_i."""

    n: int
    terms: tuple[tuple[Monomial, ...], ...]

    def __post_init__(self):
        if len(self.terms) != self.n:
            raise ValueError("need one term list per component")
        for component_terms in self.terms:
            for m in component_terms:
                if m.n != self.n:
                    raise ValueError(
                        f"monomial has {m.n} components, spec has {self.n}"
                    )

    @property
    def is_zero(self) -> bool:
        return all(len(ts) == 0 for ts in self.terms)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def _tokenize(text: str):
    """Yield (kind, value, pos) tokens: NUM, NAME (u<int>), DX, ^, *, +, -, (, )."""
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch == "u":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("component index expected after 'u'", i)
            tokens.append(("COMP", int(text[i + 1 : j]), i))
            i = j
            continue
        if text.startswith("dx", i):
            tokens.append(("DX", "dx", i))
            i += 2
            continue
        if ch.isdigit() or ch == ".":
            j = i
            while j < len(text) and (text[j].isdigit() or text[j] in ".eE"):
                # allow exponent signs inside scientific notation
                if text[j] in "eE" and j + 1 < len(text) and text[j + 1] in "+-":
                    j += 2
                else:
                    j += 1
            try:
                value = float(text[i:j])
            except ValueError:
                raise ParseError(f"malformed number {text[i:j]!r}", i) from None
            tokens.append(("NUM", value, i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("END", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse_expression(self) -> list[Monomial]:
        terms = [self.parse_term(leading_sign=True)]
        while self.peek()[0] in "+-":
            sign_tok = self.next()
            term = self.parse_term(leading_sign=False)
            if sign_tok[0] == "-":
                term = Monomial(
                    -term.coefficient,
                    term.u_exponents,
                    term.du_exponents,
                    term.outer_divergence,
                )
            terms.append(term)
        self.expect("END")
        return terms

    def parse_term(self, leading_sign: bool) -> Monomial:
        sign = 1.0
        if leading_sign:
            while self.peek()[0] in "+-":
                if self.next()[0] == "-":
                    sign = -sign
        coeff = sign
        start = self.peek()
        if start[0] == "NUM":
            coeff *= self.next()[1]
            # a bare numeric term would be a constant; catch it here for position info
            if self.peek()[0] not in ("*",):
                raise ParseError("constant terms are not allowed", start[2])
            self.next()
        a = [0] * self.n
        b = [0] * self.n
        first = True
        wrapped: Monomial | None = None
        while True:
            factor_tok = self.peek()
            if factor_tok[0] == "COMP":
                idx, power = self.parse_u_factor()
                a[idx] += power
            elif factor_tok[0] == "DX":
                inner = self.parse_dx_factor()
                if isinstance(inner, tuple):  # derivative factor (idx, power)
                    idx, power = inner
                    b[idx] += power
                else:  # divergence wrapper
                    if not first or self.peek()[0] == "*":
                        raise ParseError(
                            "a divergence wrapper must be the only factor of its term",
                            factor_tok[2],
                        )
                    wrapped = inner
            else:
                raise ParseError(
                    f"factor expected, found {factor_tok[1]!r}", factor_tok[2]
                )
            first = False
            if self.peek()[0] == "*":
                self.next()
                continue
            break
        try:
            if wrapped is not None:
                return Monomial(
                    coeff * wrapped.coefficient,
                    wrapped.u_exponents,
                    wrapped.du_exponents,
                    outer_divergence=True,
                )
            return Monomial(coeff, tuple(a), tuple(b), outer_divergence=False)
        except ValueError as exc:
            raise ParseError(str(exc), start[2]) from None

    def parse_u_factor(self) -> tuple[int, int]:
        tok = self.expect("COMP")
        idx = tok[1]
        if not 1 <= idx <= self.n:
            raise ParseError(
                f"component index u{idx} out of range 1..{self.n}", tok[2]
            )
        power = self.parse_power(tok[2])
        return idx - 1, power

    def parse_power(self, pos: int) -> int:
        if self.peek()[0] == "^":
            self.next()
            tok = self.expect("NUM")
            value = tok[1]
            if value != int(value) or value < 1:
                raise ParseError("exponent must be a positive integer", tok[2])
            return int(value)
        return 1

    def parse_dx_factor(self):
        """Parse dx(...); returns (idx, power) for a derivative factor or a
        Monomial for a divergence wrapper."""
        dx_tok = self.expect("DX")
        self.expect("(")
        # A bare u<i> inside parses as the derivative factor dx(u_i).
        if self.peek()[0] == "COMP" and self.tokens[self.pos + 1][0] == ")":
            idx_tok = self.next()
            idx = idx_tok[1]
            if not 1 <= idx <= self.n:
                raise ParseError(
                    f"component index u{idx} out of range 1..{self.n}", idx_tok[2]
                )
            self.expect(")")
            power = self.parse_power(dx_tok[2])
            return idx - 1, power
        # Otherwise: a divergence wrapper around a pure-u monomial.
        inner = self.parse_term(leading_sign=True)
        self.expect(")")
        if self.peek()[0] == "^":
            raise ParseError(
                "a divergence wrapper cannot carry an exponent", self.peek()[2]
            )
        if inner.outer_divergence or any(inner.du_exponents):
            raise ParseError(
                "divergence wrapper must contain a pure-u monomial", dx_tok[2]
            )
        try:
            return Monomial(
                inner.coefficient,
                inner.u_exponents,
                inner.du_exponents,
                outer_divergence=True,
            )
        except ValueError as exc:
            raise ParseError(str(exc), dx_tok[2]) from None


def parse_nonlinearity(text: str | Sequence[str], n: int) -> NonlinearitySpec:
    """Parse per-component expressions into a NonlinearitySpec.

    ``text`` is one expression string per component (a single string is
    accepted for n = 1).  Grammar: sums of monomial terms
    ``c * u<i>^<a> * dx(u<j>)^<b>``, or a whole term wrapped as ``dx(...)``
    for divergence form.  Empty strings (or "0") give a term-free component.
    """
    if isinstance(text, str):
        text = [text]
    if len(text) != n:
        raise ValueError(f"need {n} component expressions, got {len(text)}")
    per_component = []
    for expr in text:
        stripped = expr.strip()
        if stripped in ("", "0"):
            per_component.append(())
            continue
        per_component.append(tuple(_Parser(stripped, n).parse_expression()))
    return NonlinearitySpec(n=n, terms=tuple(per_component))


# ---------------------------------------------------------------------------
# Pretty-printing (inverse of the parser, up to whitespace)
# ---------------------------------------------------------------------------

def _format_float(x: float) -> str:
    return repr(float(x))


def format_monomial(m: Monomial) -> str:
    factors = []
    for i, e in enumerate(m.u_exponents):
        if e == 1:
            factors.append(f"u{i + 1}")
        elif e > 1:
            factors.append(f"u{i + 1}^{e}")
    for i, e in enumerate(m.du_exponents):
        if e == 1:
            factors.append(f"dx(u{i + 1})")
        elif e > 1:
            factors.append(f"dx(u{i + 1})^{e}")
    body = "*".join(factors)
    if m.outer_divergence:
        if m.coefficient == 1.0:
            return f"dx({body})"
        return f"{_format_float(m.coefficient)}*dx({body})"
    if m.coefficient == 1.0:
        return body
    return f"{_format_float(m.coefficient)}*{body}"


def format_nonlinearity(spec: NonlinearitySpec) -> list[str]:
    """One grammar-conforming expression string per component."""
    out = []
    for component_terms in spec.terms:
        if not component_terms:
            out.append("0")
        else:
            out.append(" + ".join(format_monomial(m) for m in component_terms))
    return out


# ---------------------------------------------------------------------------
# Divergence expansion and classification
# ---------------------------------------------------------------------------

def expand_divergence(m: Monomial) -> list[Monomial]:
    """Product rule: dx(c * u^a) = sum_i a_i c u^{a - e_i} dx(u_i)."""
    if not m.outer_divergence:
        raise ValueError("expand_divergence expects a divergence-wrapped monomial")
    if any(m.du_exponents):
        raise ValueError("divergence wrapper around dx(.) factors is not supported")
    out = []
    for i, a_i in enumerate(m.u_exponents):
        if a_i == 0:
            continue
        a = list(m.u_exponents)
        a[i] -= 1
        b = [0] * m.n
        b[i] = 1
        out.append(Monomial(a_i * m.coefficient, tuple(a), tuple(b), False))
    return out


def _expanded(m: Monomial) -> list[Monomial]:
    return expand_divergence(m) if m.outer_divergence else [m]


def _support(m: Monomial) -> set[int]:
    return {
        i
        for i in range(m.n)
        if m.u_exponents[i] + m.du_exponents[i] > 0
    }


def classify_term(m: Monomial) -> TermClass:
    """Degree index and flags, computed on the divergence-expanded form.

    All expansion branches of a wrapped term share one p, one mixed flag and
    one Burgers flag, so the classification is expansion-invariant.
    """
    p = m.degree_index
    if p < 3:
        category = Category.RELEVANT
    elif p == 3:
        category = Category.MARGINAL
    else:
        category = Category.IRRELEVANT
    branches = _expanded(m)
    is_mixed = any(len(_support(br)) >= 2 for br in branches)
    is_burgers = _is_burgers(m)
    return TermClass(p=p, category=category, is_mixed=is_mixed, is_burgers=is_burgers)


def _is_burgers(m: Monomial) -> bool:
    # c*dx(u_i^2), or its expanded equal c'*u_i*dx(u_i).
    if m.outer_divergence:
        return sum(m.u_exponents) == 2 and max(m.u_exponents) == 2
    return (
        sum(m.u_exponents) == 1
        and sum(m.du_exponents) == 1
        and m.u_exponents == m.du_exponents
    )


# ---------------------------------------------------------------------------
# System admissibility
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TermReport:
    """Classification row for one term of one component equation."""

    component: int  # 1-based, matching u<i> naming
    monomial: Monomial
    term_class: TermClass
    violation: str | None


@dataclass(frozen=True)
class SystemVerdict:
    admissible: bool
    velocity_violations: tuple[str, ...]
    reports: tuple[TermReport, ...]

    @property
    def violations(self) -> list[str]:
        out = list(self.velocity_violations)
        out.extend(
            f"f_{r.component}: {format_monomial(r.monomial)}: {r.violation}"
            for r in self.reports
            if r.violation is not None
        )
        return out


def _shape_violation(m: Monomial) -> str | None:
    """Check one expanded monomial against the allowed small-p shapes."""
    p = m.degree_index
    if p > 3:
        return None  # irrelevant, always allowed
    sa, sb = sum(m.u_exponents), sum(m.du_exponents)
    if sa == 1 and sb == 1:
        return None  # one u factor, one dx(u) factor
    if sa == 0 and sb == 2:
        return None  # two dx(u) factors (p = 4, unreachable here)
    if sa == 3 and sb == 0:
        if max(m.u_exponents) == 3:
            return f"pure cube (p={p})"
        return None  # mixed pure-u cubic
    return f"relevant term (p={p})"


def classify_system(spec: "SystemSpec") -> SystemVerdict:
    """Admissibility verdict plus a per-term classification table.

    Admissible iff all velocities are pairwise distinct and every term with
    p <= 3 (on the divergence-expanded form) matches an allowed shape.
    """
    velocity_violations = []
    c = list(spec.c)
    for i in range(len(c)):
        for j in range(i + 1, len(c)):
            if c[i] == c[j]:
                velocity_violations.append(
                    f"velocities c{i + 1} = c{j + 1} = {c[i]} are not distinct"
                )
    reports = []
    for comp_index, component_terms in enumerate(spec.f.terms):
        for m in component_terms:
            violation = None
            for branch in _expanded(m):
                violation = _shape_violation(branch)
                if violation is not None:
                    break
            reports.append(
                TermReport(
                    component=comp_index + 1,
                    monomial=m,
                    term_class=classify_term(m),
                    violation=violation,
                )
            )
    admissible = not velocity_violations and all(
        r.violation is None for r in reports
    )
    return SystemVerdict(
        admissible=admissible,
        velocity_violations=tuple(velocity_violations),
        reports=tuple(reports),
    )


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def evaluate_nonlinearity(
    spec: NonlinearitySpec, u: np.ndarray, du: np.ndarray
) -> np.ndarray:
    """Pointwise evaluation of f(u, du) on physical fields of shape (n, N).

    Divergence-wrapped terms are evaluated on their expanded form, so the
    caller only ever supplies first derivatives.
    """
    u = np.asarray(u, dtype=float)
    du = np.asarray(du, dtype=float)
    if u.shape != du.shape:
        raise ValueError(f"u shape {u.shape} != du shape {du.shape}")
    if u.ndim != 2 or u.shape[0] != spec.n:
        raise ValueError(f"expected fields of shape ({spec.n}, N), got {u.shape}")
    out = np.zeros_like(u)
    for comp_index, component_terms in enumerate(spec.terms):
        acc = out[comp_index]
        for m in component_terms:
            for branch in _expanded(m):
                term = np.full(u.shape[1], branch.coefficient)
                for j, e in enumerate(branch.u_exponents):
                    if e:
                        term = term * u[j] ** e
                for j, e in enumerate(branch.du_exponents):
                    if e:
                        term = term * du[j] ** e
                acc += term
    return out
