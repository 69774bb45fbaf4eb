"""Polynomial interpretations: term evaluation, certificate checking, lifts.

An interpretation assigns to every n-ary function symbol a polynomial in
x1..xn over a domain tag (N, Q with delta, or R with delta and an optional
radicand).  Checking a certificate reduces to non-negativity queries:

* well-definedness of f:  f >= 0 on the carrier (plus integer coefficients
  over N, a structural condition);
* strict monotonicity in argument i:  f(.., xi + margin + h, ..) - f - margin
  >= 0, where margin is delta (1 over N); closed-form criteria are used for
  linear polynomials and univariate quadratics, the shifted difference
  otherwise;
* weak monotonicity: the same with shift h and margin 0;
* compatibility of a rule l -> r:  P_l - P_r - margin >= 0 with margin
  delta/1 (strict) or 0 (weak).

The certificate file format::

    (DOMAIN N) | (DOMAIN Q (DELTA 1)) | (DOMAIN R (DELTA 1) (SQRT 2))
    (INTERP (f (x1) 2*x1^2 - x1) (0 () 0) (h (x1 x2) x1 + x2) ...)

or, for incremental rule-removal proofs, a sequence of steps whose REMOVE
indices are 1-based positions in the residual system at that step::

    (STEPS (STEP (DOMAIN ..) (INTERP ..) (REMOVE 1 3 4)) ...)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .numeric import (
    DomainTag,
    QuadExt,
    Scalar,
    as_scalar,
    format_scalar,
    is_integer,
    parse_scalar,
    scalar_sign,
)
from .poly import Poly, format_poly, parse_poly
from .positivity import Verdict, excess_at_least, nonneg_on
from .trs import FunSym, Rule, Term, Trs, Var, term_symbols

__all__ = [
    "Interp",
    "Condition",
    "CheckReport",
    "Certificate",
    "eval_term",
    "eval_term_with",
    "step_conditions",
    "check_well_defined",
    "check_monotone",
    "check_rule",
    "check_certificate",
    "lift_q_to_r",
    "lift_linear_n_to_q",
    "parse_certificate",
    "format_certificate",
    "nat_quad_permissible",
    "linear_permissible",
    "qr_quad_strict_permissible",
    "qr_quad_weak_permissible",
]

_SHIFT_VAR = "x0"  # fresh: interpretation polynomials use x1..xn


def arg_var(i: int) -> str:
    """The canonical name of the i-th formal argument (1-based)."""
    return f"x{i}"


class Interp:
    """A domain tag plus one polynomial per function symbol (immutable)."""

    __slots__ = ("domain", "assignment")

    def __init__(self, domain: DomainTag, assignment: Mapping[FunSym, Poly]):
        table: dict[FunSym, Poly] = {}
        for sym, poly in assignment.items():
            allowed = {arg_var(i) for i in range(1, sym.arity + 1)}
            for v in poly.variables():
                if v not in allowed:
                    raise ValueError(
                        f"interpretation of {sym.name}/{sym.arity} uses "
                        f"unexpected variable {v!r}"
                    )
            for c in poly.coeffs():
                if isinstance(c, QuadExt):
                    if domain.kind != "R":
                        raise ValueError(
                            f"sqrt({c.d}) coefficient not allowed over {domain.kind}"
                        )
                    if domain.d != c.d:
                        raise ValueError(
                            f"coefficient uses sqrt({c.d}) but domain declares "
                            f"sqrt({domain.d})"
                        )
            table[sym] = poly
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "assignment", table)

    def __setattr__(self, name, value):
        raise AttributeError("Interp is immutable")

    def poly_for(self, sym: FunSym) -> Poly:
        try:
            return self.assignment[sym]
        except KeyError:
            raise ValueError(
                f"uninterpreted symbol {sym.name}/{sym.arity}"
            ) from None

    def symbols(self) -> list[FunSym]:
        return list(self.assignment)

    def __eq__(self, other):
        if not isinstance(other, Interp):
            return NotImplemented
        return self.domain == other.domain and self.assignment == other.assignment

    def __repr__(self):
        body = ", ".join(
            f"{s.name}->{format_poly(p)}" for s, p in self.assignment.items()
        )
        return f"Interp({self.domain}; {body})"


# -- term evaluation -----------------------------------------------------------


def eval_term_with(assignment: Mapping[FunSym, Poly], t: Term) -> Poly:
    """The polynomial of a term under a plain symbol -> polynomial table."""
    if isinstance(t, Var):
        return Poly.var(t.name)
    try:
        poly = assignment[t.sym]
    except KeyError:
        raise ValueError(f"uninterpreted symbol {t.sym.name}/{t.sym.arity}") from None
    if not t.args:
        return poly
    subst = {
        arg_var(i + 1): eval_term_with(assignment, arg)
        for i, arg in enumerate(t.args)
    }
    return poly.compose(subst)


def eval_term(interp: Interp, t: Term) -> Poly:
    """The polynomial of a term: composition of the symbol polynomials."""
    return eval_term_with(interp.assignment, t)


# -- closed-form criteria (univariate quadratics and linear shapes) -----------


def nat_quad_permissible(a, b, c) -> bool:
    """Strictly monotone and well-defined over N: a > 0, c >= 0, a + b > 0."""
    a, b, c = as_scalar(a), as_scalar(b), as_scalar(c)
    return (
        scalar_sign(a) > 0
        and scalar_sign(c) >= 0
        and scalar_sign(a + b) > 0
    )


def linear_permissible(a0, slopes: Iterable) -> bool:
    """Strictly monotone and well-defined linear shape: a0 >= 0, ai >= 1."""
    if scalar_sign(as_scalar(a0)) < 0:
        return False
    return all(scalar_sign(as_scalar(ai) - 1) >= 0 for ai in slopes)


def qr_quad_strict_permissible(a, b, c, delta) -> bool:
    """Strictly monotone (wrt the delta order) and well-defined over Q0/R0."""
    a, b, c, delta = map(as_scalar, (a, b, c, delta))
    return (
        scalar_sign(a) > 0
        and scalar_sign(c) >= 0
        and scalar_sign(a * delta + b - 1) >= 0
        and (scalar_sign(b) >= 0 or scalar_sign(4 * a * c - b * b) >= 0)
    )


def qr_quad_weak_permissible(a, b, c) -> bool:
    """Weakly monotone (and well-defined) over Q0/R0: a > 0 and b, c >= 0."""
    a, b, c = as_scalar(a), as_scalar(b), as_scalar(c)
    return scalar_sign(a) > 0 and scalar_sign(b) >= 0 and scalar_sign(c) >= 0


# -- monotonicity ---------------------------------------------------------------


def _mono_shift_diff(poly: Poly, var: str, kind: str, domain: DomainTag) -> tuple[Poly, Scalar]:
    """The shifted-difference polynomial and margin for a monotonicity check."""
    if kind == "strict":
        margin = domain.strict_margin
        if domain.kind == "N":
            shifted = poly.shift(var, Fraction(1))
        else:
            subst = {v: Poly.var(v) for v in poly.variables()}
            subst[var] = Poly.var(var) + Poly.const(margin) + Poly.var(_SHIFT_VAR)
            shifted = poly.compose(subst)
        return shifted - poly, margin
    if domain.kind == "N":
        shifted = poly.shift(var, Fraction(1))
    else:
        subst = {v: Poly.var(v) for v in poly.variables()}
        subst[var] = Poly.var(var) + Poly.var(_SHIFT_VAR)
        shifted = poly.compose(subst)
    return shifted - poly, Fraction(0)


def _mono_general(poly: Poly, var: str, kind: str, domain: DomainTag) -> Verdict:
    diff, margin = _mono_shift_diff(poly, var, kind, domain)
    return nonneg_on(diff - Poly.const(margin), domain.base)


def _mono_argument(poly: Poly, arity: int, i: int, kind: str, domain: DomainTag) -> Verdict:
    """Monotonicity of one argument; closed form when the shape matches."""
    var = arg_var(i)
    deg = poly.degree()
    if deg <= 1:
        slope = poly.coeff({var: 1})
        bound = 1 if kind == "strict" else 0
        if scalar_sign(slope - bound) >= 0:
            return Verdict.proved(f"criterion-linear-{kind}")
        fallback = _mono_general(poly, var, kind, domain)
        reason = f"slope {format_scalar(slope)} of {var} is below {bound}"
        if fallback.is_disproved:
            return Verdict.disproved(fallback.point(), fallback.value, reason)
        return Verdict.disproved(None, None, reason)
    if arity == 1 and deg == 2:
        a = poly.coeff({var: 2})
        b = poly.coeff({var: 1})
        ok: bool
        if domain.kind == "N":
            need = 1 if kind == "strict" else 0
            ok = scalar_sign(a) >= 0 and scalar_sign(a + b - need) >= 0
        elif kind == "strict":
            ok = scalar_sign(a) >= 0 and scalar_sign(a * domain.strict_margin + b - 1) >= 0
        else:
            ok = scalar_sign(a) >= 0 and scalar_sign(b) >= 0
        if ok:
            return Verdict.proved(f"criterion-quadratic-{kind}")
        fallback = _mono_general(poly, var, kind, domain)
        reason = "quadratic slope condition violated"
        if fallback.is_disproved:
            return Verdict.disproved(fallback.point(), fallback.value, reason)
        return Verdict.disproved(None, None, reason)
    return _mono_general(poly, var, kind, domain)


def check_monotone(interp: Interp, kind: str) -> dict[FunSym, tuple[Verdict, ...]]:
    """Per-symbol, per-argument monotonicity verdicts ("strict" or "weak")."""
    if kind not in ("strict", "weak"):
        raise ValueError(f"unknown monotonicity kind {kind!r}")
    return check_monotone_symbols(interp, kind, interp.assignment)


# -- well-definedness -----------------------------------------------------------


def check_well_defined(interp: Interp) -> dict[FunSym, Verdict]:
    """f maps the carrier into the carrier; over N also integer coefficients."""
    return {
        sym: check_well_defined_symbol(interp, sym) for sym in interp.assignment
    }


# -- compatibility ---------------------------------------------------------------


def check_rule(interp: Interp, rule: Rule, kind: str) -> Verdict:
    """Strict (margin delta/1) or weak (margin 0) compatibility of one rule."""
    lhs = eval_term(interp, rule.lhs)
    rhs = eval_term(interp, rule.rhs)
    if kind == "strict":
        return excess_at_least(lhs, rhs, interp.domain.strict_margin, interp.domain.base)
    if kind == "weak":
        return excess_at_least(lhs, rhs, Fraction(0), interp.domain.base)
    raise ValueError(f"unknown compatibility kind {kind!r}")


def _rule_detail(interp: Interp, rule: Rule, margin: Scalar) -> str:
    lhs = eval_term(interp, rule.lhs)
    rhs = eval_term(interp, rule.rhs)
    if scalar_sign(margin) == 0:
        return f"{format_poly(lhs)} >= {format_poly(rhs)}"
    return f"{format_poly(lhs)} >= {format_poly(rhs)} + {format_scalar(margin)}"


# -- reports ---------------------------------------------------------------------


@dataclass(frozen=True)
class Condition:
    """One checked condition with its verdict and report location."""

    kind: str  # well-defined | strict-mono | weak-mono | strict-compat | weak-compat | residual-empty
    required: bool
    verdict: Verdict
    symbol: str | None = None
    arg: int | None = None
    rule_index: int | None = None
    step: int | None = None
    detail: str | None = None

    def site(self) -> str:
        where = ""
        if self.step is not None:
            where += f"step {self.step} "
        if self.symbol is not None:
            where += f"symbol {self.symbol}"
            if self.arg is not None:
                where += f" arg {self.arg}"
        if self.rule_index is not None:
            where += f"rule {self.rule_index}"
        return f"{self.kind} of {where}".strip()


@dataclass(frozen=True)
class CheckReport:
    accepted: bool
    conditions: tuple[Condition, ...]

    def failures(self) -> list[Condition]:
        return [c for c in self.conditions if c.required and c.verdict.is_disproved]

    def unknowns(self) -> list[Condition]:
        return [c for c in self.conditions if c.required and c.verdict.is_unknown]

    @property
    def verdict_word(self) -> str:
        if self.accepted:
            return "accepted"
        if self.failures():
            return "rejected"
        if self.unknowns():
            return "unknown"
        return "rejected"

    def format(self) -> str:
        lines = [f"VERDICT {self.verdict_word}"]
        for c in self.conditions:
            status = c.verdict.status
            prefix = "" if c.step is None else f"STEP {c.step} "
            if c.kind in ("strict-compat", "weak-compat"):
                flavor = "strict" if c.kind == "strict-compat" else "weak"
                lines.append(f"  {prefix}RULE {c.rule_index} {flavor} {status}")
            elif c.kind in ("strict-mono", "weak-mono"):
                flavor = "strict" if c.kind == "strict-mono" else "weak"
                lines.append(
                    f"  {prefix}SYM {c.symbol} mono {flavor} arg {c.arg} {status}"
                )
            elif c.kind == "well-defined":
                lines.append(f"  {prefix}SYM {c.symbol} well-defined {status}")
            else:
                lines.append(f"  {prefix}{c.kind} {status}")
            if not c.verdict.is_proved:
                lines.append(f"    {c.verdict.describe()}")
                if c.detail:
                    lines.append(f"    {c.detail}")
        return "\n".join(lines)


def _certificate_conditions(
    interp: Interp,
    trs: Trs,
    *,
    step: int | None,
    require_weak: bool,
    strict_rules: Iterable[int],
    weak_required: bool,
) -> list[Condition]:
    """Shared condition builder for direct certificates and proof steps."""
    need = {sym for rule in trs.rules for t in (rule.lhs, rule.rhs) for sym in term_symbols(t)}
    missing = [s for s in need if s not in interp.assignment]
    if missing:
        raise ValueError(
            f"uninterpreted symbol {missing[0].name}/{missing[0].arity}"
        )

    conds: list[Condition] = []
    order = [s for s in interp.assignment if s in need]
    for sym in order:
        conds.append(
            Condition(
                "well-defined",
                True,
                check_well_defined_symbol(interp, sym),
                symbol=sym.name,
                step=step,
            )
        )
    strict_mono = check_monotone_symbols(interp, "strict", order)
    for sym in order:
        for i, v in enumerate(strict_mono[sym], start=1):
            conds.append(
                Condition("strict-mono", True, v, symbol=sym.name, arg=i, step=step)
            )
    if require_weak:
        weak_mono = check_monotone_symbols(interp, "weak", order)
        for sym in order:
            for i, v in enumerate(weak_mono[sym], start=1):
                conds.append(
                    Condition("weak-mono", True, v, symbol=sym.name, arg=i, step=step)
                )
    strict_set = set(strict_rules)
    for idx, rule in enumerate(trs.rules, start=1):
        strict_required = idx in strict_set
        margin = interp.domain.strict_margin
        if strict_required:
            conds.append(
                Condition(
                    "strict-compat",
                    True,
                    check_rule(interp, rule, "strict"),
                    rule_index=idx,
                    step=step,
                    detail=_rule_detail(interp, rule, margin),
                )
            )
        conds.append(
            Condition(
                "weak-compat",
                weak_required,
                check_rule(interp, rule, "weak"),
                rule_index=idx,
                step=step,
                detail=_rule_detail(interp, rule, Fraction(0)),
            )
        )
    return conds


def check_well_defined_symbol(interp: Interp, sym: FunSym) -> Verdict:
    if interp.domain.kind == "N":
        bad = [c for c in interp.poly_for(sym).coeffs() if not is_integer(c)]
        if bad:
            return Verdict.disproved(
                None, None, f"non-integer coefficient {format_scalar(bad[0])} over N"
            )
    return nonneg_on(interp.poly_for(sym), interp.domain.base)


def check_monotone_symbols(
    interp: Interp, kind: str, symbols: Iterable[FunSym]
) -> dict[FunSym, tuple[Verdict, ...]]:
    out = {}
    for sym in symbols:
        poly = interp.poly_for(sym)
        out[sym] = tuple(
            _mono_argument(poly, sym.arity, i, kind, interp.domain)
            for i in range(1, sym.arity + 1)
        )
    return out


def check_certificate(interp: Interp, trs: Trs) -> CheckReport:
    """Direct certificate: well-defined + strictly monotone + strictly compatible."""
    conds = _certificate_conditions(
        interp,
        trs,
        step=None,
        require_weak=False,
        strict_rules=range(1, len(trs.rules) + 1),
        weak_required=False,
    )
    accepted = all(c.verdict.is_proved for c in conds if c.required)
    return CheckReport(accepted, tuple(conds))


def step_conditions(
    interp: Interp, residual: Trs, removed: tuple[int, ...], step: int, is_last_full: bool
) -> list[Condition]:
    """Conditions of one rule-removal step against the current residual TRS.

    Every step needs well-definedness, strict monotonicity, weak compatibility
    with all residual rules, and strict compatibility on the removed ones.
    Intermediate steps additionally need weak monotonicity; a final step that
    removes everything is an ordinary (direct) certificate, where weak
    monotonicity and weak compatibility are not required.
    """
    if not removed:
        raise ValueError(f"step {step}: empty removal set")
    for idx in removed:
        if idx < 1 or idx > len(residual.rules):
            raise ValueError(f"step {step}: removal index {idx} out of range")
    if len(set(removed)) != len(removed):
        raise ValueError(f"step {step}: duplicate removal index")
    return _certificate_conditions(
        interp,
        residual,
        step=step,
        require_weak=not is_last_full,
        strict_rules=removed,
        weak_required=not is_last_full,
    )


# -- domain transfer --------------------------------------------------------------


def lift_q_to_r(interp: Interp) -> Interp:
    """Re-tag a Q-interpretation over R; the same polynomials apply."""
    if interp.domain.kind != "Q":
        raise ValueError(f"can only lift from Q, got {interp.domain.kind}")
    return Interp(DomainTag("R", interp.domain.delta, None), interp.assignment)


def lift_linear_n_to_q(interp: Interp) -> Interp:
    """Re-tag a linear N-interpretation over Q with delta = 1."""
    if interp.domain.kind != "N":
        raise ValueError(f"can only lift from N, got {interp.domain.kind}")
    for sym, poly in interp.assignment.items():
        if poly.degree() > 1:
            raise ValueError(
                f"interpretation of {sym.name} is not linear: {format_poly(poly)}"
            )
    return Interp(DomainTag("Q", Fraction(1)), interp.assignment)


# -- certificate files -------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """A parsed certificate file: direct interpretation or removal steps."""

    direct: Interp | None = None
    steps: tuple[tuple[Interp, tuple[int, ...]], ...] | None = None

    def __post_init__(self):
        if (self.direct is None) == (self.steps is None):
            raise ValueError("certificate is either direct or incremental")

    @property
    def is_incremental(self) -> bool:
        return self.steps is not None


def _read_sexprs(text: str):
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n:
            if text[pos] in " \t\r\n":
                pos += 1
            elif text[pos] == ";":
                while pos < n and text[pos] != "\n":
                    pos += 1
            else:
                break

    def read_form():
        nonlocal pos
        skip_ws()
        if pos >= n:
            raise ValueError("unexpected end of certificate")
        if text[pos] == "(":
            pos += 1
            items = []
            while True:
                skip_ws()
                if pos >= n:
                    raise ValueError("unbalanced parenthesis in certificate")
                if text[pos] == ")":
                    pos += 1
                    return items
                items.append(read_form())
        if text[pos] == ")":
            raise ValueError("unexpected ')' in certificate")
        start = pos
        while pos < n and text[pos] not in " \t\r\n();":
            pos += 1
        return text[start:pos]

    forms = []
    while True:
        skip_ws()
        if pos >= n:
            return forms
        forms.append(read_form())


def _render(form) -> str:
    if isinstance(form, str):
        return form
    return "( " + " ".join(_render(f) for f in form) + " )"


def _render_tail(items) -> str:
    return " ".join(_render(f) for f in items)


def _parse_domain(form) -> DomainTag:
    if not isinstance(form, list) or not form or form[0] != "DOMAIN":
        raise ValueError("expected (DOMAIN ...)")
    if len(form) < 2:
        raise ValueError("empty DOMAIN form")
    kind = form[1]
    if kind == "N":
        if len(form) != 2:
            raise ValueError("domain N takes no arguments")
        return DomainTag("N")
    delta: Scalar | None = None
    d: int | None = None
    for sub in form[2:]:
        if not isinstance(sub, list) or not sub:
            raise ValueError(f"bad domain attribute {sub!r}")
        if sub[0] == "DELTA":
            delta = parse_scalar(_render_tail(sub[1:]))
        elif sub[0] == "SQRT":
            if len(sub) != 2:
                raise ValueError("SQRT takes one integer")
            d = int(sub[1])
        else:
            raise ValueError(f"unknown domain attribute {sub[0]!r}")
    if kind == "Q":
        if d is not None:
            raise ValueError("domain Q carries no radicand")
        return DomainTag("Q", delta)
    if kind == "R":
        return DomainTag("R", delta, d)
    raise ValueError(f"unknown domain {kind!r}")


def _parse_interp(domain_form, interp_form) -> Interp:
    domain = _parse_domain(domain_form)
    if not isinstance(interp_form, list) or not interp_form or interp_form[0] != "INTERP":
        raise ValueError("expected (INTERP ...)")
    assignment: dict[FunSym, Poly] = {}
    for entry in interp_form[1:]:
        if not isinstance(entry, list) or len(entry) < 3 or not isinstance(entry[0], str):
            raise ValueError(f"bad interpretation entry {entry!r}")
        name = entry[0]
        params = entry[1]
        if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
            raise ValueError(f"bad parameter list for {name!r}")
        sym = FunSym(name, len(params))
        if sym in assignment:
            raise ValueError(f"duplicate interpretation for {name!r}")
        poly = parse_poly(_render_tail(entry[2:]), variables=params)
        renaming = {p: arg_var(i + 1) for i, p in enumerate(params)}
        assignment[sym] = poly.rename(renaming)
    return Interp(domain, assignment)


def parse_certificate(text: str) -> Certificate:
    """Parse a certificate file (direct or incremental)."""
    forms = _read_sexprs(text)
    if not forms:
        raise ValueError("empty certificate")
    if isinstance(forms[0], list) and forms[0] and forms[0][0] == "STEPS":
        if len(forms) != 1:
            raise ValueError("unexpected content after (STEPS ...)")
        steps = []
        for step_form in forms[0][1:]:
            if (
                not isinstance(step_form, list)
                or len(step_form) != 4
                or step_form[0] != "STEP"
            ):
                raise ValueError("expected (STEP (DOMAIN ..) (INTERP ..) (REMOVE ..))")
            interp = _parse_interp(step_form[1], step_form[2])
            rem_form = step_form[3]
            if not isinstance(rem_form, list) or not rem_form or rem_form[0] != "REMOVE":
                raise ValueError("expected (REMOVE i j ...)")
            removed = tuple(int(tok) for tok in rem_form[1:])
            steps.append((interp, removed))
        if not steps:
            raise ValueError("empty STEPS certificate")
        return Certificate(steps=tuple(steps))
    if len(forms) != 2:
        raise ValueError("expected (DOMAIN ...) followed by (INTERP ...)")
    return Certificate(direct=_parse_interp(forms[0], forms[1]))


def _format_domain(domain: DomainTag) -> str:
    if domain.kind == "N":
        return "(DOMAIN N)"
    parts = [f"(DELTA {format_scalar(domain.delta)})"]
    if domain.kind == "R" and domain.d is not None:
        parts.append(f"(SQRT {domain.d})")
    return f"(DOMAIN {domain.kind} {' '.join(parts)})"


def _format_interp_body(interp: Interp, indent: str = "") -> str:
    lines = [f"{indent}{_format_domain(interp.domain)}", f"{indent}(INTERP"]
    for sym, poly in interp.assignment.items():
        params = " ".join(arg_var(i) for i in range(1, sym.arity + 1))
        lines.append(f"{indent}  ({sym.name} ({params}) {format_poly(poly)})")
    lines.append(f"{indent})")
    return "\n".join(lines)


def format_certificate(cert: Certificate) -> str:
    """Render a certificate; parse_certificate round-trips it."""
    if cert.direct is not None:
        return _format_interp_body(cert.direct) + "\n"
    lines = ["(STEPS"]
    for interp, removed in cert.steps:
        lines.append("  (STEP")
        lines.append(_format_interp_body(interp, indent="    "))
        lines.append(f"    (REMOVE {' '.join(str(i) for i in removed)})")
        lines.append("  )")
    lines.append(")")
    return "\n".join(lines) + "\n"
