"""Bounded template search for certificates, direct and incremental.

The search space is a finite grid: every function symbol gets a template of
total degree at most ``max_degree`` (2 at most) whose coefficients range over

* integers |c| <= max_coeff                          over N,
* p/q with |p| <= max_coeff, q in denominators       over Q,
* a + b*sqrt(d) with a, b from the Q grid            over R (when sqrt_d set),

and delta ranges over the configured candidates.  Only candidates that are
well-defined and strictly monotone (plus weakly monotone for incremental
steps) enter the space; that filter discards nothing a certificate could
use.  Two sound prunings keep enumeration feasible and cannot drop an
acceptable candidate:

* degree shapes: a rule whose right-hand side out-degrees its left-hand
  side under a candidate degree assignment refutes weak compatibility for
  every coefficient choice of that shape (leading coefficients of monotone
  interpretations are positive, so composed degrees do not cancel);
* early rule rejection: as soon as all symbols of a rule are assigned, a
  failed compatibility check discards the whole subtree.

Candidates are enumerated canonically: symbols in signature order; per
symbol constants, then linear, then quadratic templates; coefficient tuples
lexicographically (positions ordered by descending monomial degree, each
position running through grid values sorted by magnitude, positive first).
Direct search returns the first acceptance in this order.  Incremental
search scans the whole space per step and keeps the interpretation that
removes the most rules, breaking ties toward the canonically least one, so
results do not depend on traversal order.  An exhaustion run enumerates the
space to the end and counts every certificate in it; its report is a
consistency statement, never a nonexistence proof.
"""

from __future__ import annotations

import functools
import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .interp import (
    CheckReport,
    Condition,
    Interp,
    _mono_argument,
    arg_var,
    eval_term_with,
    step_conditions,
)
from .numeric import DomainTag, Scalar, as_scalar, format_scalar, is_integer, quadext, scalar_abs, scalar_cmp, scalar_sign
from .poly import Poly, monomial
from .positivity import Verdict, nonneg_on
from .trs import FunSym, Rule, Term, Trs, Var, term_symbols

__all__ = [
    "SearchConfig",
    "SearchResult",
    "IncrementalProof",
    "IncrementalResult",
    "ExhaustionReport",
    "search_direct",
    "search_incremental",
    "check_incremental",
    "exhaustion_report",
]


@dataclass(frozen=True)
class SearchConfig:
    max_degree: int = 2
    max_coeff: int = 2
    denominators: tuple[int, ...] = (1,)
    deltas: tuple[Scalar, ...] = (Fraction(1),)
    sqrt_d: int | None = None
    budget_seconds: float | None = None
    max_steps: int = 8

    def __post_init__(self):
        if not (1 <= self.max_degree <= 2):
            raise ValueError("max_degree must be 1 or 2")
        if self.max_coeff < 1:
            raise ValueError("max_coeff must be positive")
        if not self.denominators or any(q < 1 for q in self.denominators):
            raise ValueError("denominators must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be positive")

    def bounds_text(self, domain_kind: str) -> str:
        parts = [f"degree<={self.max_degree}", f"coeff<={self.max_coeff}"]
        if domain_kind in ("Q", "R"):
            dens = ",".join(str(q) for q in self.denominators)
            deltas = ",".join(format_scalar(as_scalar(x)) for x in self.deltas)
            parts.append(f"dens={dens}")
            parts.append(f"deltas={deltas}")
        if domain_kind == "R":
            parts.append(f"sqrt={self.sqrt_d if self.sqrt_d is not None else '-'}")
        return " ".join(parts)


@dataclass(frozen=True)
class SearchResult:
    status: str  # "found" | "exhausted" | "budget"
    interp: Interp | None = None
    nodes: int = 0
    elapsed: float = 0.0

    @property
    def found(self) -> bool:
        return self.status == "found"


@dataclass(frozen=True)
class IncrementalProof:
    """Ordered removal steps; REMOVE indices are 1-based into each residual."""

    steps: tuple[tuple[Interp, tuple[int, ...]], ...]


@dataclass(frozen=True)
class IncrementalResult:
    status: str  # "found" | "exhausted" | "budget" | "no-progress"
    proof: IncrementalProof | None = None
    nodes: int = 0
    elapsed: float = 0.0

    @property
    def found(self) -> bool:
        return self.status == "found"


class _BudgetExceeded(Exception):
    pass


# -- coefficient grids -------------------------------------------------------


def _value_sort_key():
    def cmp(u: Scalar, v: Scalar) -> int:
        c = scalar_cmp(scalar_abs(u), scalar_abs(v))
        if c != 0:
            return c
        return -scalar_cmp(u, v)  # positive before negative

    return functools.cmp_to_key(cmp)


def coefficient_grid(domain_kind: str, cfg: SearchConfig) -> list[Scalar]:
    """Grid values in canonical order (by magnitude, positive first)."""
    values: set[Scalar] = set()
    if domain_kind == "N":
        for n in range(-cfg.max_coeff, cfg.max_coeff + 1):
            values.add(Fraction(n))
    else:
        rationals = set()
        for q in cfg.denominators:
            for p in range(-cfg.max_coeff, cfg.max_coeff + 1):
                rationals.add(Fraction(p, q))
        values |= rationals
        if domain_kind == "R" and cfg.sqrt_d is not None:
            for a in rationals:
                for b in rationals:
                    values.add(quadext(a, b, cfg.sqrt_d))
    return sorted(values, key=_value_sort_key())


# -- degree shapes -----------------------------------------------------------


def _shape_ub(t: Term, shape: Mapping[str, int]) -> int:
    if isinstance(t, Var):
        return 1
    d = shape[t.sym.name]
    if d == 0 or not t.args:
        return 0
    return d * max(_shape_ub(a, shape) for a in t.args)


def _shape_lb(t: Term, shape: Mapping[str, int]) -> int:
    if isinstance(t, Var):
        return 1
    d = shape[t.sym.name]
    if d == 0 or not t.args:
        return 0
    lbs = [_shape_lb(a, shape) for a in t.args]
    return max(max(lbs), d * min(lbs))


def _feasible_shapes(trs: Trs, cfg: SearchConfig) -> list[dict[str, int]]:
    """Degree assignments not refuted by per-rule degree comparison."""
    choices = []
    for sym in trs.signature:
        if sym.arity == 0:
            choices.append([0])
        else:
            choices.append(list(range(1, cfg.max_degree + 1)))
    shapes = []
    for combo in itertools.product(*choices):
        shape = {sym.name: d for sym, d in zip(trs.signature, combo)}
        if all(
            _shape_ub(r.lhs, shape) >= _shape_lb(r.rhs, shape) for r in trs.rules
        ):
            shapes.append(shape)
    return shapes


# -- per-symbol candidate enumeration -----------------------------------------


def _template_positions(arity: int, degree: int) -> list:
    """Monomials of total degree <= degree, highest degree first."""
    groups: dict[int, list] = {}
    varnames = [arg_var(i) for i in range(1, arity + 1)]
    for exps in itertools.product(range(degree + 1), repeat=arity):
        total = sum(exps)
        if total <= degree:
            groups.setdefault(total, []).append(
                monomial({v: e for v, e in zip(varnames, exps)})
            )
    out = []
    for total in sorted(groups, reverse=True):
        out.extend(sorted(groups[total]))
    return out


def _symbol_candidates(
    sym: FunSym,
    degree: int,
    domain: DomainTag,
    values: list[Scalar],
    require_weak: bool,
) -> list[Poly]:
    """Well-defined, strictly (and optionally weakly) monotone templates."""
    positions = _template_positions(sym.arity, degree)
    top = [i for i, m in enumerate(positions) if sum(e for _, e in m) == degree]
    # over Q0/R0 a weakly monotone well-defined template of degree <= 2
    # has no negative coefficient at all
    if require_weak and domain.kind != "N":
        values = [v for v in values if scalar_sign(v) >= 0]
    out: list[Poly] = []
    for coeffs in itertools.product(values, repeat=len(positions)):
        if degree > 0 and all(scalar_sign(coeffs[i]) == 0 for i in top):
            continue  # belongs to a lower-degree template
        poly = Poly({m: c for m, c in zip(positions, coeffs)})
        if not _candidate_permissible(poly, sym, domain, require_weak):
            continue
        out.append(poly)
    return out


def _candidate_permissible(
    poly: Poly, sym: FunSym, domain: DomainTag, require_weak: bool
) -> bool:
    for i in range(1, sym.arity + 1):
        if not _mono_argument(poly, sym.arity, i, "strict", domain).is_proved:
            return False
        if require_weak and not _mono_argument(poly, sym.arity, i, "weak", domain).is_proved:
            return False
    if domain.kind == "N" and not all(is_integer(c) for c in poly.coeffs()):
        return False
    return nonneg_on(poly, domain.base).is_proved


# -- the backtracking search engine --------------------------------------------


@dataclass
class _RuleSlot:
    rule: Rule
    index: int  # 1-based in the searched TRS
    sym_levels: tuple[int, ...]  # levels of the symbols this rule mentions
    ready_level: int
    lhs_levels: tuple[int, ...] = ()
    rhs_levels: tuple[int, ...] = ()


class _Searcher:
    """Joint enumeration over per-symbol candidate lists with rule pruning."""

    def __init__(
        self,
        trs: Trs,
        domain: DomainTag,
        cfg: SearchConfig,
        require_weak: bool,
        order: str,  # "signature" (canonical first-found) | "coverage" (fast scans)
        deadline: float | None,
    ):
        self.trs = trs
        self.domain = domain
        self.cfg = cfg
        self.require_weak = require_weak
        self.deadline = deadline
        self.nodes = 0

        values = coefficient_grid(domain.kind, cfg)
        shapes = _feasible_shapes(trs, cfg)
        by_symbol: dict[str, tuple[list[Poly], list[int]]] = {}
        for sym in trs.signature:
            degrees = sorted({shape[sym.name] for shape in shapes})
            polys: list[Poly] = []
            degs: list[int] = []
            for d in degrees:
                group = _symbol_candidates(sym, d, domain, values, require_weak)
                polys.extend(group)
                degs.extend([d] * len(group))
            by_symbol[sym.name] = (polys, degs)

        if order == "signature":
            level_symbols = list(trs.signature)
        else:
            cand_map = {name: polys for name, (polys, _) in by_symbol.items()}
            level_symbols = _plan_order(
                trs, cand_map, domain, "weak" if require_weak else "strict"
            )
        self.symbols = level_symbols
        self.shape_tuples = {
            tuple(shape[s.name] for s in level_symbols) for shape in shapes
        }
        self._prefixes = [
            {t[:k] for t in self.shape_tuples} for k in range(len(level_symbols) + 1)
        ]
        self.cands = [by_symbol[s.name][0] for s in level_symbols]
        self.cand_degrees = [by_symbol[s.name][1] for s in level_symbols]

        level_of = {sym.name: lvl for lvl, sym in enumerate(level_symbols)}
        self.rules: list[_RuleSlot] = []
        for idx, rule in enumerate(trs.rules, start=1):
            lhs_lv = tuple(sorted({level_of[s.name] for s in term_symbols(rule.lhs)}))
            rhs_lv = tuple(sorted({level_of[s.name] for s in term_symbols(rule.rhs)}))
            lv = tuple(sorted(set(lhs_lv) | set(rhs_lv)))
            self.rules.append(_RuleSlot(rule, idx, lv, max(lv), lhs_lv, rhs_lv))
        self.by_ready: list[list[_RuleSlot]] = [[] for _ in level_symbols]
        for slot in self.rules:
            self.by_ready[slot.ready_level].append(slot)
        # at each level, the largest group of ready rules sharing one
        # dependency key drives a memoized pass-list over the candidates
        self.driver_rules: list[list[_RuleSlot]] = []
        self.driver_deps: list[tuple[int, ...]] = []
        self.other_rules: list[list[_RuleSlot]] = []
        for lvl, slots in enumerate(self.by_ready):
            groups: dict[tuple[int, ...], list[_RuleSlot]] = {}
            for slot in slots:
                dep = tuple(l for l in slot.sym_levels if l != lvl)
                groups.setdefault(dep, []).append(slot)
            if groups:
                dep = max(groups, key=lambda k: len(groups[k]))
                self.driver_rules.append(groups[dep])
                self.driver_deps.append(dep)
                self.other_rules.append(
                    [s for s in slots if s not in groups[dep]]
                )
            else:
                self.driver_rules.append([])
                self.driver_deps.append(())
                self.other_rules.append([])
        self._driver_memo: list[dict[tuple, list[int]]] = [
            {} for _ in level_symbols
        ]

        self.table: dict[FunSym, Poly] = {}
        self.idx: list[int] = [-1] * len(level_symbols)
        self.sig_pos = {
            sym.name: i for i, sym in enumerate(trs.signature)
        }
        self._compat_cache: dict[tuple, dict[tuple[int, ...], bool]] = {}
        self._eval_cache: dict[int, dict[tuple[int, ...], Poly]] = {}
        self._diff_cache: dict[int, dict[tuple[int, ...], Poly]] = {}

    # cache key: candidate indices of the rule's symbols only
    def _rule_key(self, slot: _RuleSlot) -> tuple[int, ...]:
        return tuple(self.idx[lvl] for lvl in slot.sym_levels)

    def _eval_side(self, term: Term, levels: tuple[int, ...]) -> Poly:
        cache = self._eval_cache.setdefault(id(term), {})
        key = tuple(self.idx[lvl] for lvl in levels)
        poly = cache.get(key)
        if poly is None:
            poly = eval_term_with(self.table, term)
            cache[key] = poly
        return poly

    def _compat(self, slot: _RuleSlot, mode: str) -> bool:
        cache = self._compat_cache.setdefault((slot.index, mode), {})
        key = self._rule_key(slot)
        hit = cache.get(key)
        if hit is not None:
            return hit
        diffs = self._diff_cache.setdefault(slot.index, {})
        diff = diffs.get(key)
        if diff is None:
            lhs = self._eval_side(slot.rule.lhs, slot.lhs_levels)
            rhs = self._eval_side(slot.rule.rhs, slot.rhs_levels)
            diff = lhs - rhs
            diffs[key] = diff
        if mode == "strict":
            diff = diff - Poly.const(self.domain.strict_margin)
        ok = nonneg_on(diff, self.domain.base).is_proved
        cache[key] = ok
        return ok

    def _tick(self):
        self.nodes += 1
        if self.deadline is not None and self.nodes % 512 == 0:
            if time.monotonic() > self.deadline:
                raise _BudgetExceeded

    def _level_candidates(self, level: int, mode: str) -> "list[int]":
        """Candidate indices at a level, pre-filtered by the driver rules.

        The pass-list only depends on the candidates of the driver rules'
        other symbols, so it is shared across every prefix agreeing there.
        """
        driver = self.driver_rules[level]
        if not driver:
            return range(len(self.cands[level]))  # type: ignore[return-value]
        key = (mode,) + tuple(self.idx[l] for l in self.driver_deps[level])
        memo = self._driver_memo[level]
        passing = memo.get(key)
        if passing is None:
            sym = self.symbols[level]
            passing = []
            for ci, poly in enumerate(self.cands[level]):
                self.idx[level] = ci
                self.table[sym] = poly
                if all(self._compat(slot, mode) for slot in driver):
                    passing.append(ci)
            self.idx[level] = -1
            self.table.pop(sym, None)
            memo[key] = passing
        return passing

    def _shape_feasible(self, prefix_degrees: tuple[int, ...]) -> bool:
        return prefix_degrees in self._prefixes[len(prefix_degrees)]

    def canonical_key(self) -> tuple[int, ...]:
        """Candidate indices reordered to signature order, for tie-breaking."""
        pairs = sorted(
            range(len(self.symbols)),
            key=lambda lvl: self.sig_pos[self.symbols[lvl].name],
        )
        return tuple(self.idx[lvl] for lvl in pairs)

    def iterate(self, prune_mode: str, on_leaf) -> None:
        """DFS over assignments; prune with weak or strict compatibility."""

        def descend(level: int, degrees: tuple[int, ...]):
            if level == len(self.symbols):
                on_leaf()
                return
            sym = self.symbols[level]
            cands = self.cands[level]
            cand_degrees = self.cand_degrees[level]
            for ci in self._level_candidates(level, prune_mode):
                d = cand_degrees[ci]
                new_degrees = degrees + (d,)
                if not self._shape_feasible(new_degrees):
                    continue
                self._tick()
                self.idx[level] = ci
                self.table[sym] = cands[ci]
                ok = all(
                    self._compat(slot, prune_mode)
                    for slot in self.other_rules[level]
                )
                if ok:
                    descend(level + 1, new_degrees)
            self.idx[level] = -1
            self.table.pop(sym, None)

        if not self.symbols:
            on_leaf()
            return
        descend(0, ())

    def scan_removal(
        self, target: int | None = None
    ) -> "int | tuple[Interp, tuple[int, ...]] | None":
        """Branch-and-bound scan of the weakly compatible space.

        With ``target=None``: return the maximum number of strictly
        compatible rules any valid interpretation achieves (0 if none).
        A completed rule whose strict check fails caps the score of the
        whole subtree, so only subtrees that could still improve are
        entered; no tie-chasing happens in this pass.

        With a ``target``: return the first interpretation reaching it, or
        None.  Run on a signature-ordered searcher, depth-first order is
        canonical-key order, so the first hit is the canonically least.
        """
        total = len(self.rules)
        best_score = 0
        n = len(self.symbols)

        class _Hit(Exception):
            pass

        found: list = []

        def descend(level: int, degrees: tuple[int, ...], fails: int):
            nonlocal best_score
            if level == n:
                score = total - fails
                if target is not None:
                    if score == target:
                        strict = tuple(
                            slot.index
                            for slot in self.rules
                            if self._compat(slot, "strict")
                        )
                        found.append((self.interp_from_state(), strict))
                        raise _Hit
                elif score > best_score:
                    best_score = score
                return
            sym = self.symbols[level]
            cands = self.cands[level]
            cand_degrees = self.cand_degrees[level]
            for ci in self._level_candidates(level, "weak"):
                d = cand_degrees[ci]
                new_degrees = degrees + (d,)
                if not self._shape_feasible(new_degrees):
                    continue
                self._tick()
                self.idx[level] = ci
                self.table[sym] = cands[ci]
                new_fails = fails
                ok = True
                for slot in self.driver_rules[level]:
                    if not self._compat(slot, "strict"):
                        new_fails += 1
                for slot in self.other_rules[level]:
                    if not self._compat(slot, "weak"):
                        ok = False
                        break
                    if not self._compat(slot, "strict"):
                        new_fails += 1
                if ok:
                    optimistic = total - new_fails
                    needed = target if target is not None else best_score + 1
                    if optimistic >= max(needed, 1):
                        descend(level + 1, new_degrees, new_fails)
            self.idx[level] = -1
            self.table.pop(sym, None)

        if n == 0:
            return None if target is not None else 0
        try:
            descend(0, (), 0)
        except _Hit:
            pass
        if target is not None:
            return found[0] if found else None
        return best_score

    def interp_from_state(self) -> Interp:
        return Interp(self.domain, dict(self.table))


def _rule_selectivity(
    rule: Rule,
    candidates: Mapping[str, list[Poly]],
    domain: DomainTag,
    mode: str,
    rng: random.Random,
    samples: int = 160,
) -> float:
    """Estimated pass rate of one compatibility check over random candidates."""
    syms = list({s for t in (rule.lhs, rule.rhs) for s in term_symbols(t)})
    if any(not candidates[s.name] for s in syms):
        return 0.0
    margin = domain.strict_margin if mode == "strict" else Fraction(0)
    passed = 0
    for _ in range(samples):
        table = {s: rng.choice(candidates[s.name]) for s in syms}
        lhs = eval_term_with(table, rule.lhs)
        rhs = eval_term_with(table, rule.rhs)
        diff = lhs - rhs - Poly.const(margin)
        if nonneg_on(diff, domain.base).is_proved:
            passed += 1
    return (passed + 1) / (samples + 2)


def _plan_order(
    trs: Trs,
    candidates: Mapping[str, list[Poly]],
    domain: DomainTag,
    mode: str,
) -> list[FunSym]:
    """Level order minimizing estimated enumeration volume.

    A rule prunes a prefix as soon as all its symbols are assigned, with a
    selectivity measured on a random sample; a subset dynamic program then
    picks the order whose summed per-level volume estimate is least.  The
    order only affects speed: full scans and canonical tie-breaking do not
    depend on it.
    """
    symbols = list(trs.signature)
    n = len(symbols)
    if n == 0:
        return []
    if n > 14:
        return sorted(symbols, key=lambda s: (len(candidates[s.name]), symbols.index(s)))
    rng = random.Random(0)
    rule_masks: list[tuple[int, float]] = []
    for rule in trs.rules:
        mask = 0
        for s in {s for t in (rule.lhs, rule.rhs) for s in term_symbols(t)}:
            mask |= 1 << symbols.index(s)
        sigma = _rule_selectivity(rule, candidates, domain, mode, rng)
        rule_masks.append((mask, sigma))

    counts = [max(1, len(candidates[s.name])) for s in symbols]
    full = (1 << n) - 1
    sel = [1.0] * (full + 1)
    prod = [1.0] * (full + 1)
    for mask in range(1, full + 1):
        low = mask & -mask
        rest = mask ^ low
        prod[mask] = prod[rest] * counts[low.bit_length() - 1]
    for mask in range(full + 1):
        s = 1.0
        for rmask, sigma in rule_masks:
            if rmask & mask == rmask:
                s *= sigma
        sel[mask] = s

    INF = float("inf")
    cost = [INF] * (full + 1)
    choice = [-1] * (full + 1)
    cost[0] = 0.0
    for mask in range(1, full + 1):
        for i in range(n):
            bit = 1 << i
            if not mask & bit:
                continue
            prev = mask ^ bit
            c = cost[prev] + prod[mask] * sel[prev]
            if c < cost[mask]:
                cost[mask] = c
                choice[mask] = i
    order: list[FunSym] = []
    mask = full
    while mask:
        i = choice[mask]
        order.append(symbols[i])
        mask ^= 1 << i
    order.reverse()
    return order


def _domains_to_try(domain, cfg: SearchConfig) -> list[DomainTag]:
    """A DomainTag fixes delta; a kind string tries every configured delta."""
    if isinstance(domain, DomainTag):
        return [domain]
    if domain == "N":
        return [DomainTag("N")]
    if domain == "Q":
        return [DomainTag("Q", as_scalar(dl)) for dl in cfg.deltas]
    if domain == "R":
        return [DomainTag("R", as_scalar(dl), cfg.sqrt_d) for dl in cfg.deltas]
    raise ValueError(f"unknown domain {domain!r}")


def _deadline(cfg: SearchConfig) -> float | None:
    if cfg.budget_seconds is None:
        return None
    return time.monotonic() + cfg.budget_seconds


# -- public operations ----------------------------------------------------------


def search_direct(trs: Trs, domain, cfg: SearchConfig) -> SearchResult:
    """First certificate in canonical order, or exhausted/budget status."""
    start = time.monotonic()
    deadline = _deadline(cfg)
    nodes = 0
    for tag in _domains_to_try(domain, cfg):
        searcher = _Searcher(
            trs, tag, cfg, require_weak=False, order="signature", deadline=deadline,
        )
        found: list[Interp] = []

        def grab():
            found.append(searcher.interp_from_state())
            raise _Found

        try:
            searcher.iterate("strict", grab)
        except _Found:
            pass
        except _BudgetExceeded:
            return SearchResult("budget", nodes=nodes + searcher.nodes,
                                elapsed=time.monotonic() - start)
        nodes += searcher.nodes
        if found:
            return SearchResult(
                "found", found[0], nodes=nodes, elapsed=time.monotonic() - start
            )
    return SearchResult("exhausted", nodes=nodes, elapsed=time.monotonic() - start)


class _Found(Exception):
    pass


def _best_step(
    trs: Trs, tag: DomainTag, cfg: SearchConfig, deadline: float | None
) -> "tuple[tuple[Interp, tuple[int, ...]] | None, int]":
    """The valid interpretation removing the most rules (ties: least key)."""
    scout = _Searcher(
        trs, tag, cfg, require_weak=True, order="planned", deadline=deadline,
    )
    top = scout.scan_removal()
    if not top:
        return None, scout.nodes
    picker = _Searcher(
        trs, tag, cfg, require_weak=True, order="signature", deadline=deadline,
    )
    choice = picker.scan_removal(target=top)
    return choice, scout.nodes + picker.nodes


def search_incremental(trs: Trs, domain, cfg: SearchConfig) -> IncrementalResult:
    """Greedy removal loop per Definition of stepwise polynomial termination."""
    start = time.monotonic()
    deadline = _deadline(cfg)
    tags = _domains_to_try(domain, cfg)
    steps: list[tuple[Interp, tuple[int, ...]]] = []
    residual = trs
    nodes = 0
    while residual.rules:
        if len(steps) >= cfg.max_steps:
            return IncrementalResult(
                "no-progress", nodes=nodes, elapsed=time.monotonic() - start
            )
        best_choice = None
        for tag in tags:
            try:
                choice, used = _best_step(residual, tag, cfg, deadline)
            except _BudgetExceeded:
                return IncrementalResult(
                    "budget", nodes=nodes, elapsed=time.monotonic() - start
                )
            nodes += used
            if choice is not None:
                removed = choice[1]
                if best_choice is None or len(removed) > len(best_choice[1]):
                    best_choice = choice
                if len(removed) == len(residual.rules):
                    break
        if best_choice is None:
            return IncrementalResult(
                "no-progress", nodes=nodes, elapsed=time.monotonic() - start
            )
        interp, removed = best_choice
        steps.append((interp, removed))
        keep = [i for i in range(len(residual.rules)) if (i + 1) not in removed]
        residual = residual.subsystem(keep)
    proof = IncrementalProof(tuple(steps))
    return IncrementalResult(
        "found", proof, nodes=nodes, elapsed=time.monotonic() - start
    )


def check_incremental(proof, trs: Trs, domain=None) -> CheckReport:
    """Verify an incremental proof clause by clause against the shrinking TRS."""
    steps = proof.steps if isinstance(proof, IncrementalProof) else tuple(proof)
    if not steps:
        raise ValueError("incremental proof needs at least one step")
    expected_kind = None
    if domain is not None:
        expected_kind = domain.kind if isinstance(domain, DomainTag) else str(domain)
    conds: list[Condition] = []
    residual = trs
    for number, (interp, removed) in enumerate(steps, start=1):
        if expected_kind is None:
            expected_kind = interp.domain.kind
        elif interp.domain.kind != expected_kind:
            raise ValueError(
                f"step {number} is over {interp.domain.kind}, expected {expected_kind}"
            )
        is_last_full = (
            number == len(steps)
            and set(removed) == set(range(1, len(residual.rules) + 1))
        )
        conds.extend(
            step_conditions(interp, residual, tuple(removed), number, is_last_full)
        )
        keep = [i for i in range(len(residual.rules)) if (i + 1) not in set(removed)]
        residual = residual.subsystem(keep)
    if residual.rules:
        conds.append(
            Condition(
                "residual-empty",
                True,
                Verdict.disproved(
                    None, None, f"{len(residual.rules)} rules were never removed"
                ),
            )
        )
    accepted = all(c.verdict.is_proved for c in conds if c.required)
    return CheckReport(accepted, tuple(conds))


# -- exhaustion reports -----------------------------------------------------------


@dataclass(frozen=True)
class ExhaustionReport:
    trs_name: str
    domain_kind: str
    bounds: str
    complete: bool
    cert_count: int
    examples: tuple[str, ...] = ()
    nodes: int = 0
    elapsed: float = 0.0

    def line(self) -> str:
        word = "EXHAUSTED" if self.complete else "INCONCLUSIVE"
        return f"{word} {self.bounds} CERTS {self.cert_count}"

    def format(self) -> str:
        out = [self.line()]
        out.append("  a zero count is a bounded-search consistency check, not a nonexistence proof")
        for ex in self.examples:
            out.append("  found: " + ex.replace("\n", " "))
        return "\n".join(out)


def exhaustion_report(
    trs: Trs, domain, cfg: SearchConfig, keep_examples: int = 3
) -> ExhaustionReport:
    """Enumerate the whole space, counting every direct certificate in it."""
    start = time.monotonic()
    deadline = _deadline(cfg)
    kind = domain.kind if isinstance(domain, DomainTag) else str(domain)
    count = 0
    examples: list[str] = []
    nodes = 0
    complete = True
    for tag in _domains_to_try(domain, cfg):
        searcher = _Searcher(
            trs, tag, cfg, require_weak=False, order="planned", deadline=deadline,
        )

        def leaf():
            nonlocal count
            count += 1
            if len(examples) < keep_examples:
                examples.append(repr(searcher.interp_from_state()))

        try:
            searcher.iterate("strict", leaf)
        except _BudgetExceeded:
            complete = False
            nodes += searcher.nodes
            break
        nodes += searcher.nodes
    return ExhaustionReport(
        trs.name or "trs",
        kind,
        cfg.bounds_text(kind),
        complete,
        count,
        tuple(examples),
        nodes,
        time.monotonic() - start,
    )
