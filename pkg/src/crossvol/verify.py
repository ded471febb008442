"""Verification batteries behind the ``crossvol verify`` command.

Each check exercises one matrix- or function-level guarantee on seeded
deterministic inputs at desk scale and reports a single pass/fail line.
Tolerances are fixed here, not tuned per run.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

import numpy as np

from . import bounds, cross, funcross, gallery, maxvol
from .core import classify, singular_values

REL_SLACK = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name=name, passed=bool(passed), detail=detail)


# -- principal-submatrix optimality ----------------------------------------

def check_spsd_principal() -> CheckResult:
    """50 seeded SPSD matrices, n in 4..7, k in 1..3: a principal block attains the max volume."""
    start = time.perf_counter()
    failures = 0
    checks = 0
    for i in range(50):
        n = 4 + i % 4
        a = gallery.random_spsd(n, seed=100 + i)
        for k in (1, 2, 3):
            verdict = maxvol.check_principal_optimality(a, k, rel_tol=REL_SLACK)
            checks += 1
            if not verdict.holds:
                failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 30.0
    return _result(
        "principal-maxvol-spsd",
        ok,
        f"{checks} checks, {failures} violations, {elapsed:.1f}s (limit 30s)",
    )


def check_dd_principal() -> CheckResult:
    """Same battery over strictly diagonally dominant matrices."""
    failures = 0
    checks = 0
    for i in range(50):
        n = 4 + i % 4
        a = gallery.random_dd(n, seed=200 + i)
        for k in (1, 2, 3):
            verdict = maxvol.check_principal_optimality(a, k, rel_tol=REL_SLACK)
            checks += 1
            if not verdict.holds:
                failures += 1
    return _result("principal-maxvol-dd", failures == 0, f"{checks} checks, {failures} violations")


def check_indefinite_counterexample() -> CheckResult:
    """The 2k x 2k block matrix [[0, I], [I, 0]] with block size k in 1..3.

    The battery expects, for every k, that no principal k x k block has
    nonzero volume while the overall maximum is exactly 1.  For even k this
    expectation is mathematically false: with k = 2 the principal rows
    {1, 3} (1-based) pick the submatrix [[0, 1], [1, 0]] of volume 1, so the
    k = 2 sub-check cannot pass and is reported as a failure here.
    """
    problems = []
    for k in (1, 2, 3):
        a = gallery.offdiag_identity(k)
        verdict = maxvol.check_principal_optimality(a, k)
        if verdict.holds or verdict.principal.volume != 0.0 or verdict.overall.volume != 1.0:
            problems.append(
                f"k={k}: holds={verdict.holds}, principal={verdict.principal.volume:g} "
                f"at {tuple(i + 1 for i in verdict.principal.row_set)}, "
                f"overall={verdict.overall.volume:g}"
            )
    return _result(
        "indefinite-counterexample",
        not problems,
        "; ".join(problems) if problems else "principal volume 0 and overall 1 for k in 1..3",
    )


def check_triangular_dominance() -> CheckResult:
    """Strictly dominant unit upper triangular: off-principal volumes stay strictly below principal ones."""
    min_margin = np.inf
    pairs = 0
    for i in range(50):
        n = 3 + i % 4
        t = gallery.random_unit_upper_dd(n, seed=300 + i)
        for k in range(1, n + 1):
            combos = list(itertools.combinations(range(n), k))
            for rows in combos:
                principal = maxvol.volume(t, rows, rows)
                for cols in combos:
                    if cols == rows:
                        continue
                    pairs += 1
                    margin = principal - maxvol.volume(t, rows, cols)
                    min_margin = min(min_margin, margin)
    return _result(
        "triangular-dd-dominance",
        min_margin > 0.0,
        f"{pairs} off-principal pairs, min margin {min_margin:.3e}",
    )


def check_gram_correspondence() -> CheckResult:
    """Column volumes of B square to principal volumes of B^T B; maximizers coincide."""
    worst_rel = 0.0
    mismatches = 0
    for i in range(30):
        b = np.random.default_rng(400 + i).standard_normal((6, 6))
        gram = b.T @ b
        for k in (1, 2, 3):
            combos = list(itertools.combinations(range(6), k))
            col_vols = np.array([maxvol.column_volume(b, c) ** 2 for c in combos])
            prin_vols = np.array([maxvol.volume(gram, c, c) for c in combos])
            scale = np.maximum(np.maximum(col_vols, prin_vols), 1e-12)
            worst_rel = max(worst_rel, float(np.max(np.abs(col_vols - prin_vols) / scale)))
            top_col = set(np.flatnonzero(col_vols >= col_vols.max() * (1 - REL_SLACK)))
            top_prin = set(np.flatnonzero(prin_vols >= prin_vols.max() * (1 - REL_SLACK)))
            if top_col != top_prin:
                mismatches += 1
    ok = worst_rel <= REL_SLACK and mismatches == 0
    return _result(
        "gram-column-correspondence",
        ok,
        f"max relative volume gap {worst_rel:.3e}, {mismatches} maximizer mismatches",
    )


# -- pivot and skeleton-error bounds ----------------------------------------

def _bound_battery_matrices():
    for i in range(25):
        yield np.random.default_rng(500 + i).standard_normal((10, 10))
    for i in range(25):
        yield gallery.random_spsd(10, seed=600 + i)
    for i in range(25):
        yield gallery.random_dd(10, seed=700 + i)
    for i in range(25):
        yield gallery.random_doubly_dd(10, seed=800 + i)


def check_pivot_minimum_chain() -> CheckResult:
    """min |p_1..p_{m+1}| <= F(class, m) sigma_{m+1} on 100 seeded matrices, m in 1..8."""
    violations = 0
    checks = 0
    for a in _bound_battery_matrices():
        mclass = classify(a)
        for m in range(1, 9):
            result = cross.cross_approximate(a, m)
            report = bounds.min_pivot_check(a, result, mclass)
            checks += 1
            if not report.holds:
                violations += 1
    return _result("pivot-minimum-chain", violations == 0, f"{checks} checks, {violations} violations")


def check_skeleton_error_bounds() -> CheckResult:
    """Achieved skeleton errors stay below every class bound; SPSD pivots never grow."""
    violations = []
    checks = 0
    for a in _bound_battery_matrices():
        mclass = classify(a)
        sigma = singular_values(a)
        for m in range(1, 9):
            result = cross.cross_approximate(a, m)
            err = cross.skeleton_error(a, result)
            sigma_next = float(sigma[m])
            rhs = {"general": bounds.rhs_bound("general", m, sigma_next,
                                               rho=bounds.wilkinson_bound(m))}
            if mclass.is_spsd:
                rhs["spsd"] = bounds.rhs_bound("spsd", m, sigma_next)
                values = np.abs(np.asarray(result.all_pivot_values))
                if np.any(values[1:] > values[:-1] * (1.0 + REL_SLACK)):
                    violations.append(f"m={m}: SPSD pivots increased")
            if mclass.is_dd:
                rhs["dd"] = bounds.rhs_bound("dd", m, sigma_next)
            if mclass.is_doubly_dd:
                rhs["doubly_dd"] = bounds.rhs_bound("doubly_dd", m, sigma_next)
            for kind, value in rhs.items():
                checks += 1
                if err > value * (1.0 + REL_SLACK):
                    violations.append(f"m={m} {kind}: {err:.3e} > {value:.3e}")
    return _result(
        "skeleton-error-bounds",
        not violations,
        f"{checks} bound checks, {len(violations)} violations"
        + (f"; first: {violations[0]}" if violations else ""),
    )


def check_full_sweep_mixed_bound() -> CheckResult:
    """Full n-1 sweep: |p_n| <= 2^(2(n-1)+1) wilkinson(n-1) gamma_last(A)."""
    violations = 0
    worst_ratio = 0.0
    for i in range(30):
        n = 4 + i % 5
        a = np.random.default_rng(900 + i).standard_normal((n, n))
        result = cross.cross_approximate(a, n - 1)
        if result.lookahead is None or result.termination != cross.TERMINATION_RANK:
            violations += 1
            continue
        p_last = abs(result.lookahead[2])
        rhs = 2.0 ** (2 * (n - 1) + 1) * bounds.wilkinson_bound(n - 1) * bounds.gamma_last(a)
        worst_ratio = max(worst_ratio, p_last / rhs)
        if p_last > rhs * (1.0 + REL_SLACK):
            violations += 1
    return _result(
        "full-sweep-mixed-bound",
        violations == 0,
        f"30 matrices, {violations} violations, worst ratio {worst_ratio:.3e}",
    )


# -- tightness sweeps --------------------------------------------------------

QUAD_GROWTH_SIZES = tuple(range(8, 49, 4))
LAST_PIVOT_ATOL = 1e-12

SLOPE_WINDOWS = {
    "norm_L_inv": (1.2, 1.8),
    "norm_U_inv": (0.7, 1.3),
    "r_m": (1.7, 2.3),
}


def fit_slope(sizes, values) -> float:
    """Least-squares slope of log(values) against log(sizes)."""
    return float(np.polyfit(np.log(np.asarray(sizes, float)),
                            np.log(np.asarray(values, float)), 1)[0])


def tightness_sweep(family: str, sizes) -> list[dict]:
    """Per-size LDU diagnostics of a gallery family under complete pivoting."""
    records = []
    for n in sizes:
        a = gallery.generate(family, n)
        result = cross.cross_approximate(a, a.shape[0] - 1)
        diag = cross.ldu_diagnostics(a, result)
        records.append({
            "n": a.shape[0],
            "norm_L_inv": diag.norm_L_inv,
            "norm_U_inv": diag.norm_U_inv,
            "norm_D_inv": diag.norm_D_inv,
            "r_m": diag.r_m,
            "last_pivot_abs": abs(result.lookahead[2]),
            "interchanges": diag.interchanges_performed,
        })
    return records


def check_quad_growth_tightness() -> CheckResult:
    """Quadratic-growth family: no interchanges, final pivot 1/2, fitted slopes in range."""
    records = tightness_sweep("quad_growth", QUAD_GROWTH_SIZES)
    problems = []
    for rec in records:
        if rec["interchanges"]:
            problems.append(f"n={rec['n']}: interchanges performed")
        if abs(rec["last_pivot_abs"] - 0.5) > LAST_PIVOT_ATOL:
            problems.append(f"n={rec['n']}: |p_n|={rec['last_pivot_abs']!r}")
    ns = [rec["n"] for rec in records]
    slopes = {key: fit_slope(ns, [rec[key] for rec in records]) for key in SLOPE_WINDOWS}
    for key, (lo, hi) in SLOPE_WINDOWS.items():
        if not lo <= slopes[key] <= hi:
            problems.append(f"slope({key})={slopes[key]:.2f} outside [{lo}, {hi}]")
    detail = ", ".join(f"slope({k})={v:.2f}" for k, v in slopes.items())
    return _result(
        "tightness-quad-growth",
        not problems,
        detail + ("; " + "; ".join(problems) if problems else ""),
    )


def check_bidiagonal_tightness() -> CheckResult:
    """Bidiagonal family: the pivot/singular-value ratio grows linearly."""
    records = tightness_sweep("bidiagonal", QUAD_GROWTH_SIZES)
    slope = fit_slope([rec["n"] for rec in records], [rec["r_m"] for rec in records])
    ok = 0.7 <= slope <= 1.3
    return _result("tightness-bidiagonal", ok, f"slope(r_m)={slope:.2f}, window [0.7, 1.3]")


def check_no_pivoting_block() -> CheckResult:
    """diag(I_m, B_m): greedy selection keeps the identity block while the
    tridiagonal block's volume grows like ((1+sqrt 2)/2)^m."""
    problems = []
    for m in range(4, 11):
        a = gallery.block_remark(m)
        result = cross.cross_approximate(a, m)
        expected = tuple((k, k, 1.0) for k in range(m))
        if result.pivots != expected:
            problems.append(f"m={m}: pivots {result.pivots[:3]}... differ from the identity walk")
        det_direct = maxvol.volume(gallery.tridiag_bm(m), range(m), range(m))
        det_rec = gallery.tridiag_bm_det(m)
        if abs(det_direct - det_rec) > 1e-12 * det_rec:
            problems.append(f"m={m}: determinant {det_direct!r} vs recurrence {det_rec!r}")
    rate = gallery.tridiag_bm_det(10) ** (1.0 / 10.0)
    target = (1.0 + np.sqrt(2.0)) / 2.0
    if abs(rate - target) > 0.02:
        problems.append(f"det growth rate {rate:.4f} vs {target:.4f} beyond 0.02")
    return _result(
        "no-pivoting-block",
        not problems,
        f"det(B_10)^(1/10)={rate:.4f}, target {target:.4f}"
        + ("; " + "; ".join(problems) if problems else ""),
    )


# -- bivariate function approximation ----------------------------------------

FUNCROSS_GRID_SIZE = 65


def check_function_matrix_consistency() -> CheckResult:
    """Grid cross approximation of f picks exactly the pivots of the sampled matrix."""
    grid = funcross.Grid.chebyshev(FUNCROSS_GRID_SIZE)
    problems = []
    for name in ("gauss", "runge2d", "expxy"):
        f = funcross.get_function(name)
        fun = funcross.function_cross(f, 6, grid)
        samples = funcross.sample_grid(f, grid.points_x, grid.points_y)
        mat = cross.cross_approximate(samples, 6)
        mat_indices = tuple(zip(mat.row_indices, mat.col_indices))
        if fun.point_indices != mat_indices:
            problems.append(f"{name}: pivot positions differ")
        elif fun.pivot_values != mat.pivot_values:
            problems.append(f"{name}: pivot values differ")
    return _result(
        "function-matrix-consistency",
        not problems,
        "; ".join(problems) if problems else "3 functions, identical pivot sequences",
    )


def check_function_analytic_bound() -> CheckResult:
    """1/(x+y+4): sampled residuals below the analyticity bound at r=5 for m <= 8."""
    f = funcross.get_function("runge2d", c=4.0)
    grid = funcross.Grid.chebyshev(FUNCROSS_GRID_SIZE)
    m_sup = funcross.ellipse_sup(f, r=5.0)
    worst = 0.0
    violations = 0
    for m in range(1, 9):
        res = funcross.function_cross(f, m, grid)
        bound = funcross.function_bound(2.0 * m_sup, 5.0, bounds.wilkinson_bound(m), m)
        worst = max(worst, res.error_max / bound)
        if res.error_max > bound * (1.0 + REL_SLACK):
            violations += 1
    return _result(
        "function-analytic-bound",
        violations == 0,
        f"sampled sup {m_sup:.3f} (x2 safety), worst error/bound {worst:.3e}",
    )


def check_function_spsd_kernel() -> CheckResult:
    """Gaussian kernel: non-increasing pivots and the growth-free bound variant."""
    f = funcross.get_function("gauss")
    grid = funcross.Grid.chebyshev(FUNCROSS_GRID_SIZE)
    m_sup = funcross.ellipse_sup(f, r=5.0)
    problems = []
    for m in range(1, 9):
        res = funcross.function_cross(f, m, grid)
        values = np.abs(np.asarray(res.pivot_values))
        if np.any(values[1:] > values[:-1] * (1.0 + REL_SLACK)):
            problems.append(f"m={m}: pivots increased")
        bound = funcross.function_bound(2.0 * m_sup, 5.0, 1.0, m)
        if res.error_max > bound * (1.0 + REL_SLACK):
            problems.append(f"m={m}: error {res.error_max:.3e} > bound {bound:.3e}")
    return _result(
        "function-spsd-kernel",
        not problems,
        "; ".join(problems) if problems else "pivots non-increasing, growth-free bound holds",
    )


SUITES = {
    "theorems2": (
        check_spsd_principal,
        check_dd_principal,
        check_indefinite_counterexample,
        check_triangular_dominance,
        check_gram_correspondence,
    ),
    "bounds3": (
        check_pivot_minimum_chain,
        check_skeleton_error_bounds,
        check_full_sweep_mixed_bound,
    ),
    "tightness": (
        check_quad_growth_tightness,
        check_bidiagonal_tightness,
        check_no_pivoting_block,
    ),
    "funcross": (
        check_function_matrix_consistency,
        check_function_analytic_bound,
        check_function_spsd_kernel,
    ),
}


def run_suite(name: str, budget: float | None = None) -> list[CheckResult]:
    """Run one battery; a budget overrun appends a failing pseudo-check."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    start = time.perf_counter()
    results = [check() for check in SUITES[name]]
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed > budget:
        results.append(_result("budget", False, f"suite took {elapsed:.1f}s > budget {budget:.1f}s"))
    return results
