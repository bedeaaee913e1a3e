"""Exact rational linear programming with self-verifying answers.

The solver is a dense two-phase simplex over ``fractions.Fraction``.  It
prices with Dantzig's rule for speed and falls back to Bland's rule after a
fixed number of pivots, which guarantees termination under exact arithmetic.
Every answer is re-checked by substitution before it is returned:

* ``Feasible`` carries a point satisfying every row;
* ``Optimal`` carries a point achieving the reported value;
* ``Infeasible`` carries a combination of rows that contradicts itself
  (nonnegative multipliers on inequality rows, any sign on equalities);
* ``Unbounded`` carries an improving ray.

Strict inequalities are not handled by ``solve`` directly; ``strict_feasible``
reduces them exactly, either by homogenisation (replace ``> 0`` by ``>= 1``
when every right-hand side is zero) or by maximising a slack bounded by 1 and
testing whether the optimum is positive.

``fm_project`` implements Fourier-Motzkin elimination, kept deliberately
independent of the simplex so the two can cross-check each other.  It is an
oracle for small systems only and raises a budget error beyond its guards.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import BudgetExceededError, DimensionMismatchError, ExactnessError

GE = ">="
EQ = "="
GT = ">"

_WEAK_RELS = (GE, EQ)
_ALL_RELS = (GE, EQ, GT)

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _check_coeffs(coeffs: Sequence[Fraction], want: int, what: str) -> None:
    if len(coeffs) != want:
        raise DimensionMismatchError(
            "%s has %d coefficients, expected %d" % (what, len(coeffs), want)
        )
    for c in coeffs:
        if not isinstance(c, Fraction):
            raise ExactnessError("%s must hold Fractions, got %r" % (what, c))


@dataclass(frozen=True)
class LinRow:
    """One linear constraint ``coeffs . x  rel  rhs``."""

    coeffs: tuple[Fraction, ...]
    rel: str
    rhs: Fraction

    def __post_init__(self) -> None:
        if self.rel not in _ALL_RELS:
            raise ValueError("unknown relation %r" % (self.rel,))
        if not isinstance(self.rhs, Fraction):
            raise ExactnessError("row rhs must be a Fraction, got %r" % (self.rhs,))
        for c in self.coeffs:
            if not isinstance(c, Fraction):
                raise ExactnessError("row coefficients must be Fractions")

    def value_at(self, point: Sequence[Fraction]) -> Fraction:
        return sum((c * x for c, x in zip(self.coeffs, point)), _ZERO)

    def holds_at(self, point: Sequence[Fraction]) -> bool:
        v = self.value_at(point)
        if self.rel == GE:
            return v >= self.rhs
        if self.rel == EQ:
            return v == self.rhs
        return v > self.rhs


@dataclass(frozen=True)
class LinSystem:
    """A finite list of rows over named variables, with an optional objective."""

    var_names: tuple[str, ...]
    rows: tuple[LinRow, ...]
    objective: Optional[tuple[Fraction, ...]] = None
    sense: str = "max"

    def __post_init__(self) -> None:
        for k, row in enumerate(self.rows):
            _check_coeffs(row.coeffs, len(self.var_names), "row %d" % k)
        if self.objective is not None:
            _check_coeffs(self.objective, len(self.var_names), "objective")
        if self.sense not in ("max", "min"):
            raise ValueError("sense must be 'max' or 'min'")

    @property
    def n_vars(self) -> int:
        return len(self.var_names)


@dataclass(frozen=True)
class Feasible:
    witness: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    farkas: tuple[Fraction, ...]


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    witness: tuple[Fraction, ...]


@dataclass(frozen=True)
class Unbounded:
    ray: tuple[Fraction, ...]


LPOutcome = Union[Feasible, Infeasible, Optimal, Unbounded]


def verify_point(system: LinSystem, point: Sequence[Fraction]) -> bool:
    """Substitution check: does ``point`` satisfy every row?"""
    return all(row.holds_at(point) for row in system.rows)


def verify_farkas(system: LinSystem, farkas: Sequence[Fraction]) -> bool:
    """Substitution check for an infeasibility certificate.

    The multipliers must be nonnegative on inequality rows, combine the
    coefficient vectors to zero, and yield either a positive combined
    right-hand side or a zero one with positive mass on strict rows.
    """
    if len(farkas) != len(system.rows):
        return False
    combined = [_ZERO] * system.n_vars
    combined_rhs = _ZERO
    strict_mass = _ZERO
    for lam, row in zip(farkas, system.rows):
        if row.rel != EQ and lam < 0:
            return False
        for j, c in enumerate(row.coeffs):
            if c:
                combined[j] += lam * c
        combined_rhs += lam * row.rhs
        if row.rel == GT:
            strict_mass += lam
    if any(c != 0 for c in combined):
        return False
    return combined_rhs > 0 or (combined_rhs == 0 and strict_mass > 0)


def verify_ray(system: LinSystem, ray: Sequence[Fraction]) -> bool:
    """A recession direction along which the objective strictly improves."""
    if system.objective is None:
        return False
    for row in system.rows:
        v = row.value_at(ray)
        if row.rel == EQ and v != 0:
            return False
        if row.rel != EQ and v < 0:
            return False
    gain = sum((c * r for c, r in zip(system.objective, ray)), _ZERO)
    return gain > 0 if system.sense == "max" else gain < 0


# ---------------------------------------------------------------------------
# simplex core
# ---------------------------------------------------------------------------


class _Simplex:
    """Two-phase tableau simplex on the weak rows of a system.

    Free variables are split into positive and negative parts unless a row of
    the form ``c * x_j >= 0`` (single positive coefficient, zero rhs) lets the
    variable be folded into a single nonnegative column.  Folded rows do not
    enter the tableau; their certificate multipliers are reconstructed from
    the reduced costs afterwards.
    """

    def __init__(self, system: LinSystem):
        self.system = system
        n = system.n_vars
        self.bound_row_of: dict[int, int] = {}
        bound_scale: dict[int, Fraction] = {}
        tableau_rows: list[int] = []
        for i, row in enumerate(system.rows):
            j = self._simple_bound(row)
            if j is not None and j not in self.bound_row_of:
                self.bound_row_of[j] = i
                bound_scale[j] = row.coeffs[j]
            else:
                tableau_rows.append(i)
        self.bound_scale = bound_scale

        # Column layout: per variable either one folded column or a +/- pair,
        # then one surplus column per inequality row, then one artificial per
        # tableau row.  The last tableau entry of each row is the rhs.
        self.cols: list[tuple[str, int]] = []
        self.var_cols: list[tuple[int, Optional[int]]] = []
        for j in range(n):
            if j in self.bound_row_of:
                self.var_cols.append((self._add_col("xn", j), None))
            else:
                plus = self._add_col("x+", j)
                minus = self._add_col("x-", j)
                self.var_cols.append((plus, minus))

        self.row_orig: list[int] = []
        self.sigma: list[Fraction] = []
        surplus_of: list[Optional[int]] = []
        for i in tableau_rows:
            row = system.rows[i]
            self.row_orig.append(i)
            self.sigma.append(_ONE if row.rhs >= 0 else Fraction(-1))
            surplus_of.append(self._add_col("s", len(self.row_orig) - 1)
                              if row.rel == GE else None)
        self.art_col: list[int] = []
        for k in range(len(self.row_orig)):
            self.art_col.append(self._add_col("a", k))

        width = len(self.cols) + 1
        self.T: list[list[Fraction]] = []
        for k, i in enumerate(self.row_orig):
            row = system.rows[i]
            sig = self.sigma[k]
            line = [_ZERO] * width
            for j, c in enumerate(row.coeffs):
                if not c:
                    continue
                plus, minus = self.var_cols[j]
                line[plus] += sig * c
                if minus is not None:
                    line[minus] -= sig * c
            if surplus_of[k] is not None:
                line[surplus_of[k]] = -sig
            line[self.art_col[k]] = _ONE
            line[-1] = sig * row.rhs
            self.T.append(line)
        self.basis: list[int] = list(self.art_col)
        self.live: list[bool] = [True] * len(self.T)
        self._entering_allowed = [kind != "a" for kind, _ in self.cols]
        self.pivots = 0

    @staticmethod
    def _simple_bound(row: LinRow) -> Optional[int]:
        if row.rel != GE or row.rhs != 0:
            return None
        nz = [j for j, c in enumerate(row.coeffs) if c]
        if len(nz) == 1 and row.coeffs[nz[0]] > 0:
            return nz[0]
        return None

    def _add_col(self, kind: str, payload: int) -> int:
        self.cols.append((kind, payload))
        return len(self.cols) - 1

    # -- pivoting ---------------------------------------------------------

    def _pivot(self, cost: list[Fraction], prow: int, pcol: int) -> None:
        T = self.T
        line = T[prow]
        piv = line[pcol]
        if piv != 1:
            inv = _ONE / piv
            T[prow] = line = [v * inv for v in line]
        for r, other in enumerate(T):
            if r == prow or not self.live[r]:
                continue
            f = other[pcol]
            if f:
                T[r] = [a - f * b for a, b in zip(other, line)]
        f = cost[pcol]
        if f:
            # The cost row has the same width as a tableau row; its last slot
            # holds the negated objective value and updates like any other.
            cost[:] = [a - f * b for a, b in zip(cost, line)]
        self.basis[prow] = pcol
        self.pivots += 1

    def _run(self, cost: list[Fraction], bland_after: int) -> None:
        """Minimise the cost row until no reduced cost is negative."""
        ncols = len(self.cols)
        iteration = 0
        while True:
            iteration += 1
            if iteration > 100000:
                raise RuntimeError("simplex failed to terminate (engine bug)")
            use_bland = iteration > bland_after
            enter = -1
            if use_bland:
                for c in range(ncols):
                    if self._entering_allowed[c] and cost[c] < 0:
                        enter = c
                        break
            else:
                best = _ZERO
                for c in range(ncols):
                    if self._entering_allowed[c] and cost[c] < best:
                        best = cost[c]
                        enter = c
            if enter < 0:
                return
            prow = -1
            best_ratio: Optional[Fraction] = None
            for r, line in enumerate(self.T):
                if not self.live[r]:
                    continue
                a = line[enter]
                if a > 0:
                    ratio = line[-1] / a
                    if (best_ratio is None or ratio < best_ratio
                            or (ratio == best_ratio
                                and self.basis[r] < self.basis[prow])):
                        best_ratio = ratio
                        prow = r
            if prow < 0:
                raise _UnboundedSignal(enter)
            self._pivot(cost, prow, enter)

    # -- phases -----------------------------------------------------------

    def phase1(self) -> Optional[tuple[Fraction, ...]]:
        """Returns None when feasible, else the Farkas multipliers."""
        ncols = len(self.cols)
        cost = [_ZERO] * (ncols + 1)
        for line in self.T:
            for c in range(ncols):
                if self.cols[c][0] != "a" and line[c]:
                    cost[c] -= line[c]
            cost[-1] -= line[-1]
        self._run(cost, bland_after=200 + 10 * len(self.T))
        gap = -cost[-1]
        if gap > 0:
            y = [_ONE - cost[self.art_col[k]] for k in range(len(self.row_orig))]
            return self._original_multipliers(y)
        # Pivot out any artificial still basic (at level zero), dropping
        # redundant rows.
        for r in range(len(self.T)):
            if not self.live[r] or self.cols[self.basis[r]][0] != "a":
                continue
            done = False
            for c in range(ncols):
                if self._entering_allowed[c] and self.T[r][c] != 0:
                    self._pivot(cost, r, c)
                    done = True
                    break
            if not done:
                self.live[r] = False
        return None

    def phase2(self, cost_min: Sequence[Fraction]) -> Optional[int]:
        """Minimise ``cost_min . x``; returns the entering column on unboundedness."""
        ncols = len(self.cols)
        q = [_ZERO] * ncols
        for j, cj in enumerate(cost_min):
            if not cj:
                continue
            plus, minus = self.var_cols[j]
            q[plus] += cj
            if minus is not None:
                q[minus] -= cj
        cost = list(q) + [_ZERO]
        for r, line in enumerate(self.T):
            if not self.live[r]:
                continue
            qb = cost[self.basis[r]]
            if qb:
                cost = [a - qb * b for a, b in zip(cost, line)]
        self._phase2_cost = cost
        try:
            self._run(cost, bland_after=200 + 10 * len(self.T))
        except _UnboundedSignal as sig:
            return sig.column
        return None

    # -- extraction ---------------------------------------------------------

    def point(self) -> tuple[Fraction, ...]:
        level = {self.basis[r]: self.T[r][-1] for r in range(len(self.T)) if self.live[r]}
        out = []
        for plus, minus in self.var_cols:
            v = level.get(plus, _ZERO)
            if minus is not None:
                v -= level.get(minus, _ZERO)
            out.append(v)
        return tuple(out)

    def ray(self, enter: int) -> tuple[Fraction, ...]:
        d = {enter: _ONE}
        for r in range(len(self.T)):
            if self.live[r]:
                a = self.T[r][enter]
                if a:
                    d[self.basis[r]] = -a
        out = []
        for plus, minus in self.var_cols:
            v = d.get(plus, _ZERO)
            if minus is not None:
                v -= d.get(minus, _ZERO)
            out.append(v)
        return tuple(out)

    def duals_phase2(self) -> list[Fraction]:
        cost = self._phase2_cost
        return [-cost[self.art_col[k]] for k in range(len(self.row_orig))]

    def _original_multipliers(self, y_std: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Map standardised-row multipliers back to original rows.

        Folded bound rows get the residual needed to cancel the coefficient of
        their nonnegative variable exactly.
        """
        lam = [_ZERO] * len(self.system.rows)
        for k, i in enumerate(self.row_orig):
            if self.live[k]:
                lam[i] = self.sigma[k] * y_std[k]
        for j, bound_row in self.bound_row_of.items():
            acc = _ZERO
            for i, row in enumerate(self.system.rows):
                if lam[i]:
                    acc += lam[i] * row.coeffs[j]
            lam[bound_row] = -acc / self.bound_scale[j]
        return tuple(lam)


class _UnboundedSignal(Exception):
    def __init__(self, column: int):
        self.column = column


def _engine_check(ok: bool, what: str) -> None:
    if not ok:
        raise RuntimeError("exactlp self-verification failed: %s (engine bug)" % what)


def _solve_engine(system: LinSystem) -> tuple[LPOutcome, _Simplex]:
    for row in system.rows:
        if row.rel == GT:
            raise ValueError("solve handles weak rows only; use strict_feasible")

    simplex = _Simplex(system)
    farkas = simplex.phase1()
    if farkas is not None:
        _engine_check(verify_farkas(system, farkas), "farkas")
        return Infeasible(tuple(farkas)), simplex
    if system.objective is None:
        witness = simplex.point()
        _engine_check(verify_point(system, witness), "feasible point")
        return Feasible(witness), simplex

    sign = -1 if system.sense == "max" else 1
    cost_min = tuple(sign * c for c in system.objective)
    enter = simplex.phase2(cost_min)
    if enter is not None:
        ray = simplex.ray(enter)
        _engine_check(verify_ray(system, ray), "unbounded ray")
        return Unbounded(ray), simplex
    witness = simplex.point()
    _engine_check(verify_point(system, witness), "optimal point")
    value = sum((c * x for c, x in zip(system.objective, witness)), _ZERO)
    return Optimal(value, witness), simplex


def solve(system: LinSystem) -> LPOutcome:
    """Solve a weak-relation system exactly.

    Without an objective the answer is ``Feasible`` or ``Infeasible``; with
    one it is ``Optimal``, ``Unbounded`` or ``Infeasible``.  Strict rows are
    rejected here; use :func:`strict_feasible`.
    """
    return _solve_engine(system)[0]


# ---------------------------------------------------------------------------
# strict feasibility
# ---------------------------------------------------------------------------


def strict_feasible(system: LinSystem, method: str = "auto") -> Union[Feasible, Infeasible]:
    """Decide whether the system, strict rows included, has a solution.

    ``method`` selects the exact reduction: ``"homogeneous"`` replaces each
    ``> 0`` row by ``>= 1`` (valid only when every rhs is zero, by positive
    scaling), ``"slack"`` maximises a strictness gap bounded by 1 and tests
    the optimum for positivity, ``"auto"`` picks the first when applicable.
    """
    if method not in ("auto", "homogeneous", "slack"):
        raise ValueError("unknown method %r" % (method,))
    if not any(row.rel == GT for row in system.rows):
        outcome = solve(LinSystem(system.var_names, system.rows))
        assert isinstance(outcome, (Feasible, Infeasible))
        return outcome

    homogeneous = all(row.rhs == 0 for row in system.rows)
    if method == "homogeneous" and not homogeneous:
        raise ValueError("homogeneous reduction needs every rhs to be zero")
    if method == "auto":
        method = "homogeneous" if homogeneous else "slack"

    if method == "homogeneous":
        rows = tuple(
            LinRow(r.coeffs, GE, _ONE) if r.rel == GT else r for r in system.rows
        )
        outcome = solve(LinSystem(system.var_names, rows))
        if isinstance(outcome, Feasible):
            _engine_check(verify_point(system, outcome.witness), "strict point")
            return Feasible(outcome.witness)
        assert isinstance(outcome, Infeasible)
        _engine_check(verify_farkas(system, outcome.farkas), "strict farkas")
        return Infeasible(outcome.farkas)

    # Slack reduction: append a variable eps, turn each strict row into
    # "coeffs.x - eps >= rhs", cap eps at 1, and maximise eps.
    names = system.var_names + ("_eps",)
    rows = []
    for r in system.rows:
        if r.rel == GT:
            rows.append(LinRow(r.coeffs + (Fraction(-1),), GE, r.rhs))
        else:
            rows.append(LinRow(r.coeffs + (_ZERO,), r.rel, r.rhs))
    rows.append(LinRow((_ZERO,) * system.n_vars + (Fraction(-1),), GE, Fraction(-1)))
    rows.append(LinRow((_ZERO,) * system.n_vars + (_ONE,), GE, _ZERO))
    objective = (_ZERO,) * system.n_vars + (_ONE,)
    relaxed = LinSystem(tuple(names), tuple(rows), objective, "max")
    outcome, simplex = _solve_engine(relaxed)
    if isinstance(outcome, Infeasible):
        lam = outcome.farkas[: len(system.rows)]
        _engine_check(verify_farkas(system, lam), "strict farkas")
        return Infeasible(tuple(lam))
    assert isinstance(outcome, Optimal), "slack objective is bounded by its cap"
    if outcome.value > 0:
        witness = outcome.witness[: system.n_vars]
        _engine_check(verify_point(system, witness), "strict point")
        return Feasible(tuple(witness))
    # Optimum zero: only boundary points exist.  The optimal duals of the
    # slack program combine into a Motzkin-style certificate over the
    # original rows.
    lam_all = simplex._original_multipliers(simplex.duals_phase2())
    lam = tuple(lam_all[: len(system.rows)])
    _engine_check(verify_farkas(system, lam), "strict farkas at zero optimum")
    return Infeasible(lam)


# ---------------------------------------------------------------------------
# Fourier-Motzkin projection
# ---------------------------------------------------------------------------


def _normalise_row(row: LinRow) -> LinRow:
    lead = next((c for c in row.coeffs if c), None)
    if lead is None:
        return row
    scale = _ONE / abs(lead)
    return LinRow(tuple(c * scale for c in row.coeffs), row.rel, row.rhs * scale)


def fm_project(
    system: LinSystem,
    eliminate: Sequence[str],
    *,
    max_rows: int = 10000,
    max_vars: int = 32,
) -> LinSystem:
    """Eliminate variables by Fourier-Motzkin, exactly, strict rows included.

    Independent of the simplex by construction; use it as an oracle on small
    systems.  Raises BudgetExceededError when intermediate row counts or the
    variable count exceed the guards.
    """
    if system.n_vars > max_vars:
        raise BudgetExceededError(
            "fm_project limited to %d variables, got %d" % (max_vars, system.n_vars)
        )
    names = list(system.var_names)
    rows = [LinRow(r.coeffs, r.rel, r.rhs) for r in system.rows]
    for name in eliminate:
        if name not in names:
            raise ValueError("cannot eliminate unknown variable %r" % (name,))
        j = names.index(name)
        pivot = next(
            (r for r in rows if r.rel == EQ and r.coeffs[j] != 0), None
        )
        new_rows: list[LinRow] = []
        if pivot is not None:
            pc = pivot.coeffs[j]
            for r in rows:
                if r is pivot:
                    continue
                f = r.coeffs[j] / pc
                if f:
                    coeffs = tuple(a - f * b for a, b in zip(r.coeffs, pivot.coeffs))
                    r = LinRow(coeffs, r.rel, r.rhs - f * pivot.rhs)
                new_rows.append(r)
        else:
            pos = [r for r in rows if r.coeffs[j] > 0]
            neg = [r for r in rows if r.coeffs[j] < 0]
            new_rows.extend(r for r in rows if r.coeffs[j] == 0)
            for rp in pos:
                for rn in neg:
                    fp = _ONE / rp.coeffs[j]
                    fn = -_ONE / rn.coeffs[j]
                    coeffs = tuple(
                        fp * a + fn * b for a, b in zip(rp.coeffs, rn.coeffs)
                    )
                    rel = GT if GT in (rp.rel, rn.rel) else GE
                    new_rows.append(LinRow(coeffs, rel, fp * rp.rhs + fn * rn.rhs))
        # Drop the eliminated coordinate and deduplicate.
        seen = set()
        rows = []
        for r in new_rows:
            coeffs = r.coeffs[:j] + r.coeffs[j + 1 :]
            r2 = _normalise_row(LinRow(coeffs, r.rel, r.rhs))
            key = (r2.coeffs, r2.rel, r2.rhs)
            if key not in seen:
                seen.add(key)
                rows.append(r2)
        names.pop(j)
        if len(rows) > max_rows:
            raise BudgetExceededError(
                "fm_project exceeded %d rows while eliminating %r" % (max_rows, name)
            )
    return LinSystem(tuple(names), tuple(rows))


def fm_feasible(system: LinSystem, **guards) -> bool:
    """Feasibility by full projection; the constant rows tell the answer."""
    projected = fm_project(system, list(system.var_names), **guards)
    for row in projected.rows:
        if row.rel == GE and not (0 >= row.rhs):
            return False
        if row.rel == GT and not (0 > row.rhs):
            return False
        if row.rel == EQ and row.rhs != 0:
            return False
    return True
