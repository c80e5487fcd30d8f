"""Exact linear feasibility over rationals with deterministic witnesses.

The solver answers "is this system of linear constraints satisfiable?" and,
when it is, produces the lexicographically minimal solution (minimize x1,
then x2 subject to that minimum, and so on).  All arithmetic is exact
Fraction arithmetic; there is no tolerance anywhere.

Equality constraints are eliminated by substitution first.  The systems
built by the splitter bind most variables through equalities, so this
usually collapses them to zero or one free variable, which are decided
directly; anything larger goes to an exact two-phase simplex with Bland's
rule (which cannot cycle).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import UnboundedLexMin
from .model import ZERO, ONE, as_rational

LE, EQ, GE = "<=", "=", ">="
_RELATIONS = (LE, EQ, GE)


@dataclass(frozen=True)
class LinearConstraint:
    """coefficients . x  <relation>  bound"""

    coefficients: tuple[Fraction, ...]
    relation: str
    bound: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(as_rational(c) for c in self.coefficients))
        object.__setattr__(self, "bound", as_rational(self.bound))
        rel = "=" if self.relation == "==" else self.relation
        object.__setattr__(self, "relation", rel)
        if rel not in _RELATIONS:
            raise ValueError(f"relation must be one of {_RELATIONS}, got {self.relation!r}")


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: Optional[tuple[Fraction, ...]] = None


# A row is (coeffs, relation, rhs).  Constraints may be LinearConstraint
# objects or bare triples; the hot enumeration loops build triples directly.


def _normalize(num_vars: int, constraints: Iterable) -> list:
    rows = []
    for c in constraints:
        if isinstance(c, LinearConstraint):
            coeffs, rel, rhs = list(c.coefficients), c.relation, c.bound
        else:
            coeffs, rel, rhs = list(c[0]), c[1], c[2]
        if len(coeffs) != num_vars:
            raise ValueError(f"constraint has {len(coeffs)} coefficients, expected {num_vars}")
        rows.append((coeffs, rel, rhs))
    return rows


def _eliminate_equalities(num_vars: int, rows: Sequence) -> Optional[tuple]:
    """Substitute equalities away.

    Returns (free_vars, ineqs, solved) where ``solved`` maps an eliminated
    variable to an affine expression (const, {free_var: coeff}) over the
    free variables, and ``ineqs`` are sparse rows  expr . x <= rhs  touching
    free variables only.  Returns None if the equalities alone are
    inconsistent.
    """
    eqs = []
    raw_ineqs = []
    for coeffs, rel, rhs in rows:
        if rel == EQ:
            eqs.append((coeffs, rhs))
        elif rel == LE:
            raw_ineqs.append((coeffs, rhs))
        else:
            raw_ineqs.append(([-c for c in coeffs], -rhs))

    solved: dict[int, tuple[Fraction, dict[int, Fraction]]] = {}

    def substitute(coeffs):
        """Rewrite a dense row over the not-yet-eliminated variables,
        returning (expr, constant contributed by solved variables)."""
        const = ZERO
        expr: dict[int, Fraction] = {}
        for j, c in enumerate(coeffs):
            if c == ZERO:
                continue
            if j in solved:
                s_const, s_expr = solved[j]
                const += c * s_const
                for k, sc in s_expr.items():
                    expr[k] = expr.get(k, ZERO) + c * sc
            else:
                expr[j] = expr.get(j, ZERO) + c
        return {k: c for k, c in expr.items() if c != ZERO}, const

    for coeffs, rhs in eqs:
        expr, const = substitute(coeffs)
        rhs = rhs - const
        if not expr:
            if rhs != ZERO:
                return None
            continue
        pivot = min(expr)
        pc = expr.pop(pivot)
        p_const = rhs / pc
        p_expr = {k: -c / pc for k, c in expr.items()}
        for var, (s_const, s_expr) in list(solved.items()):
            if pivot in s_expr:
                w = s_expr.pop(pivot)
                s_const += w * p_const
                for k, c in p_expr.items():
                    s_expr[k] = s_expr.get(k, ZERO) + w * c
                solved[var] = (s_const, {k: c for k, c in s_expr.items() if c != ZERO})
        solved[pivot] = (p_const, dict(p_expr))

    free = [j for j in range(num_vars) if j not in solved]
    ineqs = []
    for coeffs, rhs in raw_ineqs:
        expr, const = substitute(coeffs)
        ineqs.append((expr, rhs - const))
    return free, ineqs, solved


def _interval_of(var: int, ineqs: Sequence) -> Optional[tuple]:
    """Feasible (lo, hi) of a one-variable system; None in a slot means
    unbounded on that side; returns None altogether on contradiction."""
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    for expr, rhs in ineqs:
        c = expr.get(var, ZERO)
        if c == ZERO:
            if rhs < ZERO:
                return None
            continue
        bound = rhs / c
        if c > ZERO:
            if hi is None or bound < hi:
                hi = bound
        else:
            if lo is None or bound > lo:
                lo = bound
    if lo is not None and hi is not None and lo > hi:
        return None
    return lo, hi


def _simplex_min(free: Sequence[int], ineqs: Sequence, objective: dict) -> tuple:
    """Minimize objective . x over {x : expr . x <= rhs for each row}.

    Returns ("optimal", value, point) | ("infeasible",) | ("unbounded",).
    Dense two-phase tableau over Fractions.  Free variables are split
    x = u - w with u, w >= 0; Bland's rule is used throughout.
    """
    d = len(free)
    pos = {v: i for i, v in enumerate(free)}
    m = len(ineqs)
    n_struct = 2 * d + m  # u's, w's, slacks

    rows = []
    for r, (expr, rhs) in enumerate(ineqs):
        row = [ZERO] * n_struct
        for v, c in expr.items():
            row[pos[v]] = c
            row[d + pos[v]] = -c
        row[2 * d + r] = ONE
        if rhs < ZERO:
            row = [-c for c in row]
            rhs = -rhs
        row.append(rhs)
        rows.append(row)

    basis: list[int] = []
    art_cols: list[int] = []
    total_cols = n_struct
    for r in range(m):
        if rows[r][2 * d + r] == ONE:
            basis.append(2 * d + r)
        else:
            for row in rows:
                row.insert(-1, ONE if row is rows[r] else ZERO)
            basis.append(total_cols)
            art_cols.append(total_cols)
            total_cols += 1

    def reduced_row(costs):
        # z_j = cB . B^-1 A_j - c_j ; z[-1] = current objective value
        z = [-c for c in costs] + [ZERO]
        for r, b in enumerate(basis):
            cb = costs[b]
            if cb != ZERO:
                row = rows[r]
                for j in range(total_cols + 1):
                    if row[j] != ZERO:
                        z[j] += cb * row[j]
        return z

    def run(costs, forbidden):
        z = reduced_row(costs)
        while True:
            enter = -1
            for j in range(total_cols):
                if z[j] > ZERO and j not in forbidden:
                    enter = j
                    break
            if enter < 0:
                return "optimal", z
            leave, best = -1, None
            for r in range(m):
                a = rows[r][enter]
                if a > ZERO:
                    ratio = rows[r][-1] / a
                    if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                        best, leave = ratio, r
            if leave < 0:
                return "unbounded", z
            piv = rows[leave][enter]
            if piv != ONE:
                rows[leave] = [c / piv for c in rows[leave]]
            pivot_row = rows[leave]
            for r in range(m):
                if r != leave and rows[r][enter] != ZERO:
                    f = rows[r][enter]
                    rows[r] = [c - f * p for c, p in zip(rows[r], pivot_row)]
            if z[enter] != ZERO:
                f = z[enter]
                z = [c - f * p for c, p in zip(z, pivot_row)]
            basis[leave] = enter

    if art_cols:
        phase1 = [ZERO] * total_cols
        for j in art_cols:
            phase1[j] = ONE
        status, z = run(phase1, forbidden=frozenset())
        assert status == "optimal", "phase 1 is bounded below by zero"
        if z[-1] != ZERO:
            return ("infeasible",)
        art_set = frozenset(art_cols)
        for r in range(m):
            if basis[r] in art_set:
                for j in range(n_struct):
                    if rows[r][j] != ZERO:
                        piv = rows[r][j]
                        rows[r] = [c / piv for c in rows[r]]
                        for rr in range(m):
                            if rr != r and rows[rr][j] != ZERO:
                                f = rows[rr][j]
                                rows[rr] = [c - f * p for c, p in zip(rows[rr], rows[r])]
                        basis[r] = j
                        break
    else:
        art_set = frozenset()

    costs = [ZERO] * total_cols
    for v, c in objective.items():
        costs[pos[v]] = c
        costs[d + pos[v]] = -c
    status, z = run(costs, forbidden=art_set)
    if status == "unbounded":
        return ("unbounded",)
    values = [ZERO] * total_cols
    for r, b in enumerate(basis):
        values[b] = rows[r][-1]
    point = {v: values[pos[v]] - values[d + pos[v]] for v in free}
    return "optimal", z[-1], point


def _reduced_feasible(free: Sequence[int], ineqs: Sequence) -> bool:
    for expr, rhs in ineqs:
        if not expr and rhs < ZERO:
            return False
    if not free:
        return True
    if len(free) == 1:
        return _interval_of(free[0], ineqs) is not None
    live = [(expr, rhs) for expr, rhs in ineqs if expr]
    if not live:
        return True
    return _simplex_min(free, live, {})[0] != "infeasible"


def check_feasible(num_vars: int, constraints: Iterable) -> bool:
    """Decision-only fast path: is the system satisfiable?

    Agrees exactly with solve_feasibility but skips witness construction;
    the enumeration loops in the splitter and the cut oracle live on this.
    """
    reduced = _eliminate_equalities(num_vars, _normalize(num_vars, constraints))
    if reduced is None:
        return False
    free, ineqs, _ = reduced
    return _reduced_feasible(free, ineqs)


def _minimize_variable(num_vars: int, rows: list, var: int) -> Fraction:
    """Exact minimum of x_var over a system already known to be feasible."""
    reduced = _eliminate_equalities(num_vars, rows)
    assert reduced is not None, "caller guarantees feasibility"
    free, ineqs, solved = reduced
    if var in solved:
        offset, objective = solved[var]
        objective = {v: c for v, c in objective.items() if c != ZERO}
    else:
        offset, objective = ZERO, {var: ONE}
    if not objective:
        return offset
    if len(free) == 1:
        (v, c), = objective.items()
        interval = _interval_of(v, ineqs)
        assert interval is not None
        lo, hi = interval
        at = lo if c > ZERO else hi
        if at is None:
            raise UnboundedLexMin(f"minimizing variable {var + 1} is unbounded below")
        return offset + c * at
    live = [(expr, rhs) for expr, rhs in ineqs if expr]
    result = _simplex_min(free, live, objective)
    if result[0] == "unbounded":
        raise UnboundedLexMin(f"minimizing variable {var + 1} is unbounded below")
    assert result[0] == "optimal"
    return offset + result[1]


def solve_feasibility(num_vars: int, constraints: Iterable) -> FeasibilityResult:
    """Decide the system and return the lexicographically minimal witness.

    The witness minimizes x1 first, then x2 subject to that minimum, and so
    on, which makes repeated calls byte-for-byte reproducible.  Raises
    UnboundedLexMin if some minimization step has no finite optimum.
    """
    if num_vars < 1:
        raise ValueError("need at least one variable")
    rows = _normalize(num_vars, constraints)
    reduced = _eliminate_equalities(num_vars, rows)
    if reduced is None or not _reduced_feasible(reduced[0], reduced[1]):
        return FeasibilityResult(False, None)
    witness: list[Fraction] = []
    for var in range(num_vars):
        value = _minimize_variable(num_vars, rows, var)
        witness.append(value)
        pin = [ZERO] * num_vars
        pin[var] = ONE
        rows.append((pin, EQ, value))
    for coeffs, rel, rhs in _normalize(num_vars, constraints):
        lhs = sum((c * w for c, w in zip(coeffs, witness)), ZERO)
        ok = lhs == rhs if rel == EQ else (lhs <= rhs if rel == LE else lhs >= rhs)
        assert ok, "witness failed exact re-evaluation"
    return FeasibilityResult(True, tuple(witness))
