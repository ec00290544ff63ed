"""LP search for eigenfunctions with a small weighted sign-change radius.

Each sign class is a convex cone of Laguerre expansions, so near-extremal
eigenfunctions can be hunted by feasibility problems: sample the sign
constraint P f >= 0 on a radial grid beyond a trial radius, force the
weighted integral nonpositive, pin the leading coefficient, and run a
phase-1 simplex.  The grid is only a heuristic.  Every feasible candidate
is re-certified through the exact root isolation in radius.py, and only
certified radii are ever reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import corollary_power, sharp_constant, thm1_upper
from .radius import RadiusResult, last_sign_change
from .reps import GaussianMixture, LaguerreFunction, weighted_integral
from .shift import class_sign_flip
from .weights import HarmonicFactor, HarmonicKind, Weight

__all__ = [
    "LpProblem",
    "LpOutcome",
    "OptimizeResult",
    "CascadeReport",
    "eigenbasis",
    "build_problem",
    "solve_at_radius",
    "bisect_upper_bound",
    "verify_corollary4",
]

_RADIAL = HarmonicFactor(HarmonicKind.ONE, 0)

_COST_TOL = 1e-9
# columns whose best allowed pivot entry is below this are numerically
# unusable; a pivot on a 1e-10 entry amplifies tableau roundoff ten
# orders, so such columns are skipped instead
_PIVOT_TOL = 1e-8
# basic values are allowed to drift this far below zero before the run
# is declared stuck; micro-negativity is normal under a loosened ratio
# test, and the extraction re-solve plus the residual screens gate what
# actually leaves the solver
_DECAY_TOL = 1e-4
# basic values this close below zero may still leave the basis, via a
# forced degenerate step, instead of being locked out of the ratio test
_CLAMP_TOL = 1e-7
_FEAS_TOL = 1e-9
_MAX_PIVOTS = 10**6
_CERT_TOL = 1e-9
_INTEGRAL_SLACK = 1e-10
_INTEGRAL_MARGIN = 1e-9


# ---------------------------------------------------------------------------
# eigenbasis
# ---------------------------------------------------------------------------


def eigenbasis(
    s: int, dim: int, ell: int, n_basis: int
) -> tuple[LaguerreFunction, ...]:
    """Single-term Laguerre eigenfunctions spanning the class of sign s.

    The k-th term carries eigenvalue (-i)^ell (-1)^k, so the class keeps
    every other k: even k when s * class_sign_flip(ell) = +1, odd k
    otherwise.  All indices k <= 2 n_basis of the right parity are kept,
    in increasing order, each as a LaguerreFunction with a single unit
    coefficient.
    """
    if s not in (-1, 1):
        raise ValueError("s must be +1 or -1")
    if n_basis < 2:
        raise ValueError("n_basis must be at least 2")
    flip = class_sign_flip(ell)  # validates ell >= 0
    if ell > 0:
        harmonic = HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, ell)
    else:
        harmonic = _RADIAL
    if dim < max(1, harmonic.min_dimension):
        raise ValueError(
            f"dimension {dim} cannot carry a degree-{ell} coordinate product"
        )
    parity = 0 if s * flip > 0 else 1
    funcs = []
    for k in range(parity, 2 * n_basis + 1, 2):
        coeffs = (0.0,) * k + (1.0,)
        funcs.append(LaguerreFunction(dim, harmonic, coeffs))
    return tuple(funcs)


# ---------------------------------------------------------------------------
# the discretized feasibility problem
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LpProblem:
    """Grid discretization of the sign class at one trial radius.

    sign_rows holds the damped polynomial values e^{-t_i/2} p_k(t_i) at
    t_i = 2 pi r_i^2 for the grid radii; a nonnegative row combination
    is the pointwise constraint P f >= 0 there.  integral_row holds the
    exact weighted integral of each basis element.  The normalization
    row pins the coefficient of the top basis element to lead_sign, which
    makes the leading monomial coefficient of the polynomial positive, and
    the tail-sign row keeps the same combination above a fixed margin.
    """

    radii: tuple[float, ...]
    root_bound_radius: float
    sign_rows: np.ndarray
    integral_row: np.ndarray
    lead_column: int
    lead_sign: float

    def __post_init__(self) -> None:
        m = len(self.radii)
        if m < 2:
            raise ValueError("grid needs at least two radii")
        if any(b <= a for a, b in zip(self.radii, self.radii[1:])):
            raise ValueError("grid radii must increase strictly")
        if self.radii[-1] + 1e-12 < self.root_bound_radius:
            raise ValueError("grid must reach the polynomial root bound")
        if self.sign_rows.shape != (m, len(self.integral_row)):
            raise ValueError("sign rows and integral row disagree on shape")
        if not 0 <= self.lead_column < len(self.integral_row):
            raise ValueError("lead column out of range")


def _check_basis(basis: tuple[LaguerreFunction, ...], weight: Weight) -> None:
    if len(basis) < 2:
        raise ValueError("basis needs at least two elements")
    for f in basis:
        if not isinstance(f, LaguerreFunction):
            raise TypeError("basis elements must be LaguerreFunctions")
        if f.dim != weight.dim:
            raise ValueError("basis and weight live in different dimensions")
    degrees = [f.degree for f in basis]
    if any(b <= a for a, b in zip(degrees, degrees[1:])):
        raise ValueError("basis degrees must increase strictly")


# Sign rows past the root bound, geometrically spaced.  The classical
# largest-root bound holds for one Laguerre polynomial, not for a
# combination with large mixed coefficients, whose last root can sit far
# beyond it; a sparse far block makes such blowups infeasible instead of
# leaving them for certification to reject.
_FAR_ROWS = 12
_FAR_SPREAD = 32.0


def build_problem(
    basis: tuple[LaguerreFunction, ...],
    weight: Weight,
    r: float,
    m_points: int,
    extra_radii: tuple[float, ...] = (),
) -> LpProblem:
    """Assemble the grid LP for the trial radius r.

    The main grid is Chebyshev-spaced on [r, R] where R is the radius
    image of the classical largest-root bound 4k + 2 alpha + 2 for the
    top basis degree k; a sparse geometric block continues past R to
    hold down combinations whose roots escape the single-polynomial
    bound, and beyond that the tail sign governs.  extra_radii adds
    sign rows at specific radii (all beyond r), which the bisection
    uses to cut off profiles that dipped between grid nodes.
    """
    _check_basis(basis, weight)
    if r <= 0.0:
        raise ValueError("trial radius must be positive")
    if m_points < max(8, 4 * (len(basis) - 1)):
        raise ValueError("need at least four grid points per basis element")
    top = basis[-1]
    u_bound = 4.0 * top.degree + 2.0 * top.alpha + 2.0
    root_bound = math.sqrt(u_bound / (2.0 * math.pi))
    r_top = max(root_bound, 1.25 * r)
    steps = np.arange(m_points, dtype=float)
    radii = r + (r_top - r) * 0.5 * (1.0 - np.cos(math.pi * steps / (m_points - 1)))
    u_far_start = max(u_bound, 2.0 * math.pi * r_top**2)
    # raw values out here grow like u^deg / deg!; stay under exp(700)
    u_safe = math.exp((700.0 + math.lgamma(top.degree + 1)) / top.degree)
    spread = max(1.2, min(_FAR_SPREAD, u_safe / u_far_start))
    u_far = u_far_start * np.geomspace(1.1, spread, _FAR_ROWS)
    all_radii = np.concatenate([radii, np.sqrt(u_far / (2.0 * math.pi))])
    if extra_radii:
        if min(extra_radii) <= r:
            raise ValueError("extra radii must lie beyond the trial radius")
        merged = np.concatenate([all_radii, np.asarray(extra_radii, dtype=float)])
        merged.sort()
        # drop near-duplicates; equal radii would break strict monotonicity
        keep = np.concatenate([[True], np.diff(merged) > 1e-12 * merged[-1]])
        all_radii = merged[keep]
    else:
        all_radii.sort()
    t = 2.0 * math.pi * all_radii**2
    # The e^{-t/2} damping cancels in the row scaling and is only there
    # to keep entries away from float extremes; past the root bound it
    # would underflow, so the raw values are used instead.
    damp = np.where(t < 2.0 * u_bound, np.exp(-0.5 * np.minimum(t, 2.0 * u_bound)), 1.0)
    sign_rows = np.empty((all_radii.size, len(basis)))
    for j, f in enumerate(basis):
        sign_rows[:, j] = f.polynomial_values(t) * damp
    integral_row = np.array([weighted_integral(f, weight) for f in basis])
    lead_sign = -1.0 if top.degree % 2 else 1.0
    return LpProblem(
        radii=tuple(float(x) for x in all_radii),
        root_bound_radius=root_bound,
        sign_rows=sign_rows,
        integral_row=integral_row,
        lead_column=len(basis) - 1,
        lead_sign=lead_sign,
    )


# ---------------------------------------------------------------------------
# two-phase simplex
# ---------------------------------------------------------------------------


class _NumericBreakdown(Exception):
    """The tableau degraded past the point of trusting any verdict."""


# phase 2 is a quality pass, so running out of budget just stops it early
_PHASE2_PIVOTS = 20000
# upper bound on the uniform margin variable; keeps phase 2 bounded
_MARGIN_CAP = 0.99
# step-bound loosening for the Harris ratio test
_HARRIS_EPS = 1e-9
# rebuild the tableau from pristine columns this often
_REFACTOR_EVERY = 64


def _refactored(
    full: np.ndarray, b: np.ndarray, cost_orig: np.ndarray, basis: list[int]
) -> tuple[np.ndarray, np.ndarray]:
    """Tableau and reduced-cost row for a basis, from pristine data.

    Each pivot applies a rank-one update to the whole tableau, so error
    compounds along the pivot sequence.  Solving the basis system fresh
    (with one step of iterative refinement on the right hand side)
    resets that error to a single factorization's worth.
    """
    m, n_cols = full.shape
    bmat = full[:, basis]
    try:
        body = np.linalg.solve(bmat, full)
        rhs = np.linalg.solve(bmat, b)
        rhs += np.linalg.solve(bmat, b - bmat @ rhs)
    except np.linalg.LinAlgError as exc:
        raise _NumericBreakdown("singular basis in refactorization") from exc
    tab = np.empty((m, n_cols + 1))
    tab[:, :n_cols] = body
    tab[:, -1] = rhs
    if not np.all(np.isfinite(tab)):
        raise _NumericBreakdown("refactored tableau turned non-finite")
    cb = cost_orig[np.asarray(basis)]
    cost = np.empty(n_cols + 1)
    cost[:n_cols] = cost_orig - cb @ body
    cost[-1] = -(cb @ rhs)
    return tab, cost


def _pivot_until_optimal(
    full: np.ndarray,
    b: np.ndarray,
    cost_orig: np.ndarray,
    tab: np.ndarray,
    cost: np.ndarray,
    basis: list[int],
    n_active: int,
    budget: int,
    hard_budget: bool,
    stop_below: float | None = None,
) -> int:
    """Pivot in place until cost[:n_active] has no descent column.

    Pivoting is Dantzig's rule with a Harris-style two-pass ratio test
    (every positive entry blocks; the pivot element is the strongest
    entry the loosened step bound allows), switching to Bland's rule
    (smallest entering index, exact minimal ratio, ties by smallest
    basic variable) whenever the objective stalls, and back once it
    moves, so the sequence is deterministic and cannot cycle.  The
    tableau is refactorized from the pristine columns every
    _REFACTOR_EVERY pivots, and again whenever a basic value drifts
    visibly negative or a verdict (optimal, or no eligible pivot) is
    about to be rendered on a stale tableau, so verdicts always come
    from fresh arithmetic.  Returns the pivot count.  Raises
    _NumericBreakdown if a fresh tableau still shows decay, RuntimeError
    on a hard budget overrun.
    """

    def refactor() -> None:
        tab_new, cost_new = _refactored(full, b, cost_orig, basis)
        tab[:] = tab_new
        cost[:] = cost_new

    pivots = 0
    fresh = 0
    stall = 0
    bland = False
    objective = -cost[-1]
    while True:
        if stop_below is not None and -cost[-1] <= stop_below:
            # the objective has hit its known floor; grinding further
            # only gives roundoff a chance to wreck a finished run
            break
        low = tab[:, -1].min()
        if not math.isfinite(low):
            raise _NumericBreakdown("simplex tableau turned non-finite")
        if low < -_DECAY_TOL:
            # feasibility decayed; a fresh factorization usually cures
            # it, and if one does not the run is genuinely stuck
            if fresh == 0:
                raise _NumericBreakdown("simplex lost feasibility to roundoff")
            refactor()
            fresh = 0
            objective = -cost[-1]
            continue
        negative = np.nonzero(cost[:n_active] < -_COST_TOL)[0]
        if negative.size == 0:
            if fresh:
                refactor()
                fresh = 0
                objective = -cost[-1]
                continue
            break
        if pivots >= budget:
            if hard_budget:
                raise RuntimeError("simplex pivot limit reached")
            break
        if not bland:
            # most negative reduced cost first; the stable sort keeps
            # the choice deterministic on ties
            order = negative[np.argsort(cost[negative], kind="stable")]
        else:
            order = negative
        rhs = tab[:, -1]
        enter, leave = -1, -1
        for j in order:
            col = tab[:, j]
            # every strictly positive entry blocks the step; excluding
            # small ones lets a long step drive their rows negative
            block = np.nonzero(col > 0.0)[0]
            if block.size == 0:
                continue
            # Harris-style two-pass ratio test.  Already-negative basic
            # values block at ratio zero instead of their (negative)
            # true ratio, and the step bound comes from the slightly
            # loosened ratios, which caps the damage any row can take
            # at the loosening even when its column entry is large.
            safe = np.maximum(rhs[block], 0.0)
            ratios = safe / col[block]
            theta = ((safe + _HARRIS_EPS) / col[block]).min()
            if not math.isfinite(theta):
                raise _NumericBreakdown("simplex ratios turned non-finite")
            near = block[ratios <= theta]
            # the leaving row needs a basic value that is nonnegative up
            # to drift (a visibly negative row would pivot with a
            # negative step and spray infeasibility across the unblocked
            # rows) and a pivot entry strong enough to divide by
            near = near[(rhs[near] > -_CLAMP_TOL) & (col[near] > _PIVOT_TOL)]
            if near.size == 0:
                continue
            if bland:
                leave = int(min(near, key=lambda i: basis[i]))
            else:
                leave = int(near[np.argmax(col[near])])
            enter = int(j)
            break
        if enter < 0:
            # no descent column admits a safe pivot; make sure that
            # conclusion is not an artifact of accumulated error
            if fresh:
                refactor()
                fresh = 0
                objective = -cost[-1]
                continue
            break
        pivot_row = tab[leave] / tab[leave, enter]
        # a leaving value that drifted below zero steps exactly zero
        # instead of negatively; the small lie stays put, while a
        # negative step would be amplified through every later pivot
        if pivot_row[-1] < 0.0:
            pivot_row[-1] = 0.0
        tab -= np.outer(tab[:, enter], pivot_row)
        tab[leave] = pivot_row
        cost -= cost[enter] * pivot_row
        basis[leave] = enter
        pivots += 1
        fresh += 1
        if fresh >= _REFACTOR_EVERY:
            refactor()
            fresh = 0
        moved = -cost[-1]
        if not math.isfinite(moved):
            raise _NumericBreakdown("simplex objective turned non-finite")
        if moved < objective - 1e-14 * (1.0 + abs(objective)):
            objective = moved
            stall = 0
            bland = False
        else:
            stall += 1
            if stall >= 40:
                bland = True
    return pivots


def _basic_solution(
    full: np.ndarray,
    b: np.ndarray,
    tab: np.ndarray,
    basis: list[int],
    n_struct: int,
) -> np.ndarray | None:
    """Recover the structural solution from the pristine constraints.

    The tableau value of each basic variable carries the roundoff of
    every pivot since the last refactorization, so the final basic
    system is re-solved from the original columns, with one step of
    iterative refinement.  Returns None when an artificial variable
    (column index n_struct or beyond) is left basic above tolerance,
    which means the recovered point does not actually satisfy the
    constraints.
    """
    bmat = full[:, basis]
    values = tab[:, -1].copy()
    try:
        xb = np.linalg.solve(bmat, b)
        xb += np.linalg.solve(bmat, b - bmat @ xb)
        if np.all(np.isfinite(xb)) and xb.min() > -_DECAY_TOL:
            values = xb
    except np.linalg.LinAlgError:
        pass
    for i, bv in enumerate(basis):
        if bv >= n_struct and values[i] > _FEAS_TOL:
            return None
    x = np.zeros(n_struct)
    for i, bv in enumerate(basis):
        if bv < n_struct:
            x[bv] = values[i]
    if not np.all(np.isfinite(x)):
        raise _NumericBreakdown("simplex solution turned non-finite")
    return x


def _two_phase_simplex(
    a: np.ndarray, b: np.ndarray, seed: list[int], obj: np.ndarray
) -> tuple[np.ndarray | None, int]:
    """Minimize obj @ x subject to A x = b, x >= 0.

    seed gives a starting basic column per row (a unit column in A), or
    -1 where an artificial variable is needed.  Phase 1 drives the
    artificial objective to zero and returns (None, pivots) when it
    cannot.  Phase 2 then minimizes obj, which the caller shapes so the
    vertex lands deep inside the feasible cone: a bare feasibility
    vertex rides its active constraints, and for a sign grid that means
    a profile that hugs zero and dips through it between nodes.  Phase 2
    is best effort; it stops at its budget, and if it strands an
    artificial variable above zero the phase-1 point is returned
    instead.
    """
    m, n = a.shape
    art_rows = [i for i, j in enumerate(seed) if j < 0]
    n_cols = n + len(art_rows)
    full = np.zeros((m, n_cols))
    full[:, :n] = a
    basis = list(seed)
    for idx, i in enumerate(art_rows):
        full[i, n + idx] = 1.0
        basis[i] = n + idx
    cost1 = np.zeros(n_cols)
    cost1[n:] = 1.0
    # the seed basis is all unit columns, so this first solve is exact
    tab, cost = _refactored(full, b, cost1, basis)

    pivots = _pivot_until_optimal(
        full, b, cost1, tab, cost, basis, n_cols, _MAX_PIVOTS, True,
        stop_below=0.1 * _FEAS_TOL,
    )
    if -cost[-1] > _FEAS_TOL:
        return None, pivots
    x1 = _basic_solution(full, b, tab, basis, n)
    if x1 is None:
        return None, pivots

    # artificial columns never re-enter: the scan stops at column n.
    # The quality pass is best effort all the way down: numerical
    # trouble here forfeits the improvement, not the feasible point.
    try:
        cost2 = np.zeros(n_cols)
        cost2[:n] = obj
        tab, cost = _refactored(full, b, cost2, basis)
        pivots += _pivot_until_optimal(
            full, b, cost2, tab, cost, basis, n, _PHASE2_PIVOTS, False
        )
        x2 = _basic_solution(full, b, tab, basis, n)
    except _NumericBreakdown:
        x2 = None
    if x2 is None:
        return x1, pivots
    return x2, pivots


@dataclass(frozen=True)
class LpOutcome:
    """Raw result of one grid LP: feasibility, coefficients, pivot count."""

    feasible: bool
    coeffs: tuple[float, ...] | None
    pivots: int


def _scale_rows(rows: np.ndarray) -> np.ndarray:
    scale = np.abs(rows).max(axis=1, keepdims=True)
    scale[scale == 0.0] = 1.0
    return rows / scale


def _solve_problem(problem: LpProblem) -> LpOutcome:
    sr = _scale_rows(problem.sign_rows)
    g = problem.integral_row
    g_scale = np.abs(g).max()
    gs = g / g_scale if g_scale > 0.0 else g
    m, n = sr.shape
    top = problem.lead_column
    sigma = problem.lead_sign
    radii = np.asarray(problem.radii)
    # t applies to the rows inside the single-polynomial root bound;
    # rows beyond it ask for bare nonnegativity.  Out there the top
    # degree dominates every row, so a uniform margin would demand
    # clearances that only top-heavy combinations can reach and would
    # evict exactly the low-degree profiles the class contains.
    margined = radii <= problem.root_bound_radius * (1.0 + 1e-12)

    # Variables: y+ (n), y- (n), the uniform margin t, one slack per
    # row.  Scale is pinned by the mass row sum(y+ + y-) = 1, and the
    # tail-sign row only constrains the top coefficient's orientation,
    # without forcing it nonzero, so a basis extension never evicts the
    # smaller basis' feasible points.  Two rows need artificial
    # variables (mass, integral); everything else seeds on its slack.
    # Feasibility is decided by phase 1 with no margin floor, so the
    # verdict tracks the class and not a tuning knob.  Phase 2 then
    # maximizes t, pushing the vertex deep into the sign cone instead
    # of leaving it to ride the constraint floor, where the profile
    # dips through zero between grid nodes.
    t_col = 2 * n
    # rows 0..m-1: p(u_i) - t - s_i = 0 (t only where margined)
    row_int = m  # integral: -g c - s = _INTEGRAL_MARGIN
    row_mass = m + 1  # sum(y+ + y-) = 1, no slack
    row_tail = m + 2  # s - lead_sign * c_top = 0
    row_cap = m + 3  # t + s = _MARGIN_CAP
    n_rows = m + 4
    n_slack = n_rows - 1  # every row but the mass row carries a slack
    n_struct = t_col + 1 + n_slack

    a = np.zeros((n_rows, n_struct))
    b = np.zeros(n_rows)
    seed = [-1] * n_rows

    def slack(i: int) -> int:
        return t_col + 1 + (i if i < row_mass else i - 1)

    for i in range(m):
        a[i, :n] = sr[i]
        a[i, n : 2 * n] = -sr[i]
        if margined[i]:
            a[i, t_col] = -1.0
        a[i, slack(i)] = -1.0
        # stored negated so the slack seeds the basis at a nonnegative
        # value; the start vertex is heavily degenerate (every sign row
        # at zero), which the Harris ratio test resolves by pivot
        # magnitude instead of rhs perturbation
        a[i] = -a[i]
        seed[i] = slack(i)
    a[row_int, :n] = -gs
    a[row_int, n : 2 * n] = gs
    a[row_int, slack(row_int)] = -1.0
    b[row_int] = _INTEGRAL_MARGIN
    a[row_mass, : 2 * n] = 1.0
    b[row_mass] = 1.0
    a[row_tail, slack(row_tail)] = 1.0
    a[row_tail, top] = -sigma
    a[row_tail, n + top] = sigma
    seed[row_tail] = slack(row_tail)
    a[row_cap, t_col] = 1.0
    a[row_cap, slack(row_cap)] = 1.0
    b[row_cap] = _MARGIN_CAP
    seed[row_cap] = slack(row_cap)

    obj = np.zeros(n_struct)
    obj[t_col] = -1.0
    try:
        x, pivots = _two_phase_simplex(a, b, seed, obj)
    except _NumericBreakdown:
        # an untrustworthy tableau downgrades the trial to infeasible,
        # which can only make the certified bound more conservative
        return LpOutcome(False, None, 0)
    if x is None:
        return LpOutcome(False, None, pivots)
    coeffs = x[:n] - x[n : 2 * n]

    # A vertex can park mass on cancelling y+/y- pairs, so unit mass
    # does not rule out a numerically zero coefficient vector, and one
    # of those passes every sign row vacuously.  Real witnesses keep
    # their mass; phase 2 cannot raise the margin without it.
    if float(np.abs(coeffs).sum()) < 0.01:
        return LpOutcome(False, None, pivots)
    # screen against the raw scaled rows; anything visibly below zero
    # means the vertex is numerical junk, not a witness candidate
    resid = sr @ coeffs
    if bool(np.any(resid < -1e-8)):
        return LpOutcome(False, None, pivots)
    if gs @ coeffs > 0.0:
        return LpOutcome(False, None, pivots)
    if sigma * coeffs[top] < -1e-9:
        return LpOutcome(False, None, pivots)
    return LpOutcome(True, tuple(float(v) for v in coeffs), pivots)


def solve_at_radius(
    basis: tuple[LaguerreFunction, ...],
    weight: Weight,
    r: float,
    m_points: int,
) -> LpOutcome:
    """Run the grid feasibility LP for the class at trial radius r.

    Feasible means the simplex found a unit-mass combination whose
    polynomial is nonnegative at every grid point at or beyond r, has
    nonpositive weighted integral, and does not orient its top
    coefficient against the tail.  Grid feasibility is
    necessary-but-heuristic; pass the coefficients through the radius
    module for a certified bound.
    """
    return _solve_problem(build_problem(basis, weight, r, m_points))


# ---------------------------------------------------------------------------
# certified bisection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OptimizeResult:
    """Certified upper bound for one sign class and weight.

    r_upper is always the radius module's last_sign_change of the
    witness, never an LP grid value, and integral_value is the exact
    weighted integral of the witness.  from_fallback marks runs where no
    grid LP candidate survived certification and the explicit
    Gaussian-mixture witness behind the analytic bound is reported
    instead.
    """

    r_upper: float
    witness: LaguerreFunction | GaussianMixture
    n_basis: int
    lp_iterations: int
    certification: RadiusResult
    integral_value: float
    from_fallback: bool = False

    def __post_init__(self) -> None:
        if self.r_upper != self.certification.r:
            raise ValueError("r_upper must equal the certified radius")
        if self.certification.sign_at_infinity <= 0:
            raise ValueError("witness must be eventually nonnegative")
        if not self.integral_value <= _INTEGRAL_SLACK * self._coeff_scale():
            raise ValueError("witness integral is not certifiably nonpositive")

    def _coeff_scale(self) -> float:
        if isinstance(self.witness, LaguerreFunction):
            vals = self.witness.coeffs
        else:
            vals = tuple(c for c, _ in self.witness.terms)
        return max(1.0, math.sqrt(math.fsum(v * v for v in vals)))

    def to_dict(self) -> dict:
        return {
            "r_upper": self.r_upper,
            "n_basis": self.n_basis,
            "lp_iterations": self.lp_iterations,
            "integral_value": self.integral_value,
            "from_fallback": self.from_fallback,
            "certified_tail_from": self.certification.certified_tail_from,
            "bracketing_interval": list(self.certification.bracketing_interval),
        }


def _assemble_witness(
    basis: tuple[LaguerreFunction, ...], coeffs: tuple[float, ...]
) -> LaguerreFunction | None:
    """Dense-coefficient eigenfunction for an LP vertex, or None.

    The mass normalization leaves the top coefficient free to be zero,
    so trailing coefficients that are zero at working precision are
    trimmed; a near-zero leading coefficient would poison exact root
    isolation.  What remains is certified as-is.
    """
    top = basis[-1]
    dense = [0.0] * (top.degree + 1)
    for f, c in zip(basis, coeffs):
        dense[f.degree] = c
    cut = max(abs(c) for c in dense) * 1e-14
    while dense and abs(dense[-1]) <= cut:
        dense.pop()
    if not dense:
        return None
    return LaguerreFunction(top.dim, top.harmonic, tuple(dense))


# exchange loop: rounds of cut generation per trial radius, and the cap
# on how many dip locations one scan may contribute
_EXCHANGE_ROUNDS = 6
_DIPS_PER_ROUND = 48
_DIP_REL_TOL = 1e-12


def _profile_dips(
    basis: tuple[LaguerreFunction, ...],
    coeffs: tuple[float, ...],
    r_from: float,
) -> tuple[float, ...]:
    """Radii beyond r_from where the combination dips negative.

    Scans the polynomial part on a dense float grid (linear through the
    oscillatory range, geometric beyond it) and returns the deepest
    point of each negative run, deepest runs first.  Depth is relative
    to the locally attainable magnitude, so the test is scale-free.
    The scan is a screen for the LP exchange loop, not a proof; exact
    certification stays the arbiter.
    """
    top = basis[-1]
    u_bound = 4.0 * top.degree + 2.0 * top.alpha + 2.0
    u_from = 2.0 * math.pi * r_from**2
    u_safe = math.exp((700.0 + math.lgamma(top.degree + 1)) / top.degree)
    u_mid = max(u_bound * 1.05, u_from * 1.2)
    dense = np.arange(u_from, u_mid, 0.05)
    tail = u_mid * np.geomspace(1.0, min(_FAR_SPREAD, u_safe / u_mid), 240)
    u = np.concatenate([dense, tail])
    vals = np.empty((u.size, len(basis)))
    for j, f in enumerate(basis):
        vals[:, j] = f.polynomial_values(u)
    c = np.asarray(coeffs)
    profile = vals @ c
    envelope = np.abs(vals) @ np.abs(c)
    envelope[envelope == 0.0] = 1.0
    rel = profile / envelope
    bad = rel < -_DIP_REL_TOL
    if not bad.any():
        return ()
    # deepest point of each maximal negative run
    edges = np.flatnonzero(np.diff(bad.astype(np.int8)))
    starts = [i + 1 for i in edges if not bad[i]]
    if bad[0]:
        starts.insert(0, 0)
    stops = [i + 1 for i in edges if bad[i]]
    if bad[-1]:
        stops.append(bad.size)
    dips = []
    for a, z in zip(starts, stops):
        i = a + int(np.argmin(rel[a:z]))
        dips.append((float(rel[i]), float(u[i])))
    dips.sort()
    radii = [math.sqrt(uu / (2.0 * math.pi)) for _, uu in dips[:_DIPS_PER_ROUND]]
    return tuple(radii)


def _certify(
    witness: LaguerreFunction, weight: Weight
) -> tuple[RadiusResult, float] | None:
    value = weighted_integral(witness, weight)
    scale = max(1.0, math.sqrt(math.fsum(c * c for c in witness.coeffs)))
    if not value <= _INTEGRAL_SLACK * scale:
        return None
    try:
        res = last_sign_change(witness, weight, tol=_CERT_TOL)
    except RuntimeError as err:
        # a root cluster too tight to isolate means this candidate
        # cannot be certified, not that the search is broken
        if "depth limit" in str(err):
            return None
        raise
    if res.sign_at_infinity <= 0:
        return None
    return res, value


def _class_degree(weight: Weight) -> int:
    kind = weight.harmonic.kind
    if kind is HarmonicKind.ONE:
        return 0
    if kind is HarmonicKind.COORDINATE_PRODUCT:
        return weight.harmonic.degree
    if kind is HarmonicKind.PLANE_HARMONIC and weight.harmonic.degree == 1:
        return 1
    raise ValueError(
        "optimizer supports radial, coordinate-product and degree-one "
        "plane-harmonic weights only"
    )


def _proven_floors(s: int, weight: Weight, ell: int) -> list[tuple[str, float]]:
    floors: list[tuple[str, float]] = []
    if weight.harmonic.kind is HarmonicKind.ONE and not weight.sign_wrapped:
        report = corollary_power(s, weight.dim, weight.radial_power)
        if report.lower is not None and report.lower > 0.0:
            floors.append(("power-weight lower bound", report.lower))
    if weight.radial_power == 0.0 and not weight.sign_wrapped:
        sharp = sharp_constant(s, weight.dim, ell)
        if sharp is not None:
            floors.append(("sharp constant", sharp - 1e-3))
    return floors


def bisect_upper_bound(
    s: int,
    weight: Weight,
    n_basis: int,
    tolerance: float = 1e-4,
    m_points: int | None = None,
) -> OptimizeResult:
    """Smallest certified last-sign-change radius found by LP bisection.

    Bisects the trial radius between 0 and the analytic upper bound for
    the class.  Each grid-feasible candidate is re-certified with exact
    root isolation and the exact integral; the reported r_upper is the
    best certified radius, which the LP grid can neither inflate nor
    fake.  When no candidate survives certification the explicit witness
    behind the analytic bound is returned with from_fallback set.

    tolerance controls only the bisection window (floor 1e-4; the grid
    LP turns degenerate well before that).  The result is deterministic:
    fixed grid, Bland pivoting, no randomness anywhere.
    """
    if tolerance < 1e-4:
        raise ValueError("tolerance below the 1e-4 floor")
    if weight.radial_power < 0.0:
        raise ValueError("optimizer expects nonnegative radial power")
    ell = _class_degree(weight)
    head = thm1_upper(s, weight)
    if head.analytic <= 0.0:
        raise ValueError("class has vanishing radii; nothing left to optimize")
    basis = eigenbasis(s, weight.dim, ell, n_basis)
    if m_points is None:
        # Chebyshev spacing is coarsest mid-grid, where the gap in
        # u = 2 pi r^2 grows to pi * span / (m - 1).  The polynomial
        # oscillates on a unit-ish u scale, so size the grid to keep
        # that worst gap near one; the exchange cuts below handle the
        # dips that still slip between nodes.
        u_bound = 4.0 * basis[-1].degree + 2.0 * basis[-1].alpha + 2.0
        m = max(4 * n_basis, int(math.ceil(1.0 + 0.5 * math.pi * u_bound)))
    else:
        m = m_points

    lo = 0.0
    hi = head.analytic
    pivots_total = 0
    candidates: list[tuple[float, tuple[float, ...]]] = []
    # Cut radii where some earlier vertex dipped negative between grid
    # nodes.  A sign row at radius r' is a valid class constraint for
    # every trial radius below r', so cuts accumulate across the whole
    # bisection.  A vertex that still dips after the exchange rounds
    # steers the bisection as feasible but is never a candidate; exact
    # certification would only charge its dip in full.
    cuts: list[float] = []
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        extras = tuple(sorted({c for c in cuts if c > mid}))
        problem = build_problem(basis, weight, mid, m, extras)
        outcome = _solve_problem(problem)
        pivots_total += outcome.pivots
        clean = False
        for _ in range(_EXCHANGE_ROUNDS):
            if not outcome.feasible:
                break
            dips = _profile_dips(basis, outcome.coeffs, mid)
            if not dips:
                clean = True
                break
            cuts.extend(dips)
            extras = tuple(sorted({c for c in cuts if c > mid}))
            problem = build_problem(basis, weight, mid, m, extras)
            outcome = _solve_problem(problem)
            pivots_total += outcome.pivots
        if outcome.feasible:
            hi = mid
            if clean:
                candidates.append((mid, outcome.coeffs))
        else:
            lo = mid

    # Exact certification is the expensive step, so it runs after the
    # grid bisection, over the feasible trial radii in increasing order.
    # The walk stops once the next trial radius can no longer beat the
    # best certified radius.  Grid feasibility alone counts for nothing.
    best: tuple[LaguerreFunction, RadiusResult, float] | None = None
    for mid, coeffs in sorted(candidates, key=lambda pair: pair[0]):
        if best is not None and mid >= best[1].r:
            break
        witness = _assemble_witness(basis, coeffs)
        if witness is None:
            continue
        cert = _certify(witness, weight)
        if cert is not None and (best is None or cert[0].r < best[1].r):
            best = (witness, cert[0], cert[1])

    if best is None:
        fallback = head.witness
        res = last_sign_change(fallback, weight, tol=_CERT_TOL)
        value = weighted_integral(fallback, weight)
        result = OptimizeResult(
            r_upper=res.r,
            witness=fallback,
            n_basis=n_basis,
            lp_iterations=pivots_total,
            certification=res,
            integral_value=value,
            from_fallback=True,
        )
    else:
        result = OptimizeResult(
            r_upper=best[1].r,
            witness=best[0],
            n_basis=n_basis,
            lp_iterations=pivots_total,
            certification=best[1],
            integral_value=best[2],
        )

    for name, floor in _proven_floors(s, weight, ell):
        if result.r_upper < floor - 1e-9:
            raise RuntimeError(
                f"certified radius {result.r_upper:.12g} undercuts the "
                f"{name} {floor:.12g}; the pairing or the certification "
                "is broken"
            )
    return result


# ---------------------------------------------------------------------------
# descent through the sharp cascade
# ---------------------------------------------------------------------------

_CASCADE_SIGN = {8: -1, 12: 1, 24: -1}
_CASCADE_MAX_DROP = {8: 2, 12: 4, 24: 8}


@dataclass(frozen=True)
class CascadeReport:
    """Sharp constant versus certified LP bound after an ell-fold drop."""

    base_dim: int
    ell: int
    dim: int
    sign: int
    sharp: float
    r_upper: float
    gap: float
    n_basis: int
    lp_iterations: int

    def to_dict(self) -> dict:
        return {
            "base_dim": self.base_dim,
            "ell": self.ell,
            "dim": self.dim,
            "sign": self.sign,
            "sharp": self.sharp,
            "r_upper": self.r_upper,
            "gap": self.gap,
            "n_basis": self.n_basis,
            "lp_iterations": self.lp_iterations,
        }


def verify_corollary4(
    base: int, ell: int, n_basis: int = 24, tolerance: float = 1e-3
) -> CascadeReport:
    """Check the LP bound against a sharp descendant constant.

    base picks one of the dimensions with a known sharp constant and ell
    how many coordinates to split off; the class sign in dimension
    base - 2 ell follows the drop sign law.  The certified upper bound
    must land within 1e-3 above the sharp value (it can never land
    below), and the report carries the remaining gap.
    """
    if base not in _CASCADE_SIGN:
        raise ValueError("base dimension must be one of 8, 12, 24")
    if not 0 <= ell <= _CASCADE_MAX_DROP[base]:
        raise ValueError(
            f"ell must lie in [0, {_CASCADE_MAX_DROP[base]}] for base {base}"
        )
    dim = base - 2 * ell
    sign = _CASCADE_SIGN[base] * class_sign_flip(ell)
    sharp = sharp_constant(sign, dim, ell)
    if sharp is None:
        raise RuntimeError("sharp table is missing a cascade entry")
    if ell > 0:
        harmonic = HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, ell)
    else:
        harmonic = _RADIAL
    weight = Weight(dim, harmonic)
    result = bisect_upper_bound(sign, weight, n_basis, tolerance)
    if result.r_upper < sharp - 1e-3:
        raise RuntimeError(
            f"certified radius {result.r_upper:.12g} undercuts the sharp "
            f"constant {sharp:.12g} in dimension {dim}"
        )
    return CascadeReport(
        base_dim=base,
        ell=ell,
        dim=dim,
        sign=sign,
        sharp=sharp,
        r_upper=result.r_upper,
        gap=result.r_upper - sharp,
        n_basis=n_basis,
        lp_iterations=result.lp_iterations,
    )
