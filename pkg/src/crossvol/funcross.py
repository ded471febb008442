"""Cross approximation of bivariate functions on the square [-1, 1]^2.

The continuous argmax of the residual is replaced by an argmax over a tensor
grid (Chebyshev points of the second kind by default).  On a grid the
function algorithm is exactly the matrix algorithm applied to the sample
matrix ``F[i, j] = f(x_i, y_j)``, so every matrix-side bound transfers to the
sampled function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .cross import TERMINATION_BREAKDOWN, TERMINATION_RANK, _eliminate, _search_full
from .exceptions import AnalyticityError, NumericalError, PreconditionError

DEFAULT_GRID_SIZE = 129
DEFAULT_BREAKDOWN_TOL = 1e-12


def chebyshev_points(n: int) -> np.ndarray:
    """``n`` Chebyshev points of the second kind on [-1, 1], increasing, endpoints included."""
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n}")
    return -np.cos(np.pi * np.arange(n) / (n - 1))


@dataclass(frozen=True)
class Grid:
    """Tensor sampling grid; both axes must be strictly increasing in [-1, 1]."""

    points_x: np.ndarray
    points_y: np.ndarray

    def __post_init__(self):
        for name, pts in (("points_x", self.points_x), ("points_y", self.points_y)):
            arr = np.asarray(pts, dtype=float)
            if arr.ndim != 1 or arr.size < 2:
                raise ValueError(f"{name} must be a 1-D array of at least 2 points")
            if np.any(np.diff(arr) <= 0):
                raise ValueError(f"{name} must be strictly increasing")
            if arr.min() < -1.0 or arr.max() > 1.0:
                raise ValueError(f"{name} must lie in [-1, 1]")
            object.__setattr__(self, name, arr)

    @classmethod
    def chebyshev(cls, size: int = DEFAULT_GRID_SIZE) -> "Grid":
        pts = chebyshev_points(size)
        return cls(points_x=pts, points_y=pts.copy())


@dataclass(frozen=True)
class FunctionCrossResult:
    """Chosen cross points, pivot values, and the sampled residual."""

    points: tuple[tuple[float, float], ...]
    point_indices: tuple[tuple[int, int], ...]
    pivot_values: tuple[float, ...]
    residual_grid: np.ndarray
    error_max: float
    steps_completed: int
    termination: str

    @property
    def xs(self) -> tuple[float, ...]:
        return tuple(x for x, _ in self.points)

    @property
    def ys(self) -> tuple[float, ...]:
        return tuple(y for _, y in self.points)


def sample_grid(f: Callable, xs, ys) -> np.ndarray:
    """Evaluate ``f`` on the tensor grid ``xs x ys``; broadcasts when possible."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    try:
        vals = np.asarray(f(xs[:, None], ys[None, :]), dtype=float)
        if vals.shape != (xs.size, ys.size):
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([[float(f(x, y)) for y in ys] for x in xs])
    if not np.all(np.isfinite(vals)):
        raise NumericalError("function returned a non-finite sample on the grid")
    return vals


def function_cross(f: Callable, m: int, grid: Grid | None = None,
                   breakdown_tol: float = DEFAULT_BREAKDOWN_TOL) -> FunctionCrossResult:
    """Greedy cross approximation of ``f`` with the argmax restricted to a grid.

    Each step picks the grid point where the current residual has maximum
    modulus (ties by smallest x-index, then y-index), then subtracts the
    separable cross through that point.  The residual is maintained exactly
    at the grid nodes, so the returned ``residual_grid`` samples the rank-m
    remainder and ``error_max`` is its max-norm over the grid.
    """
    if m < 1:
        raise ValueError(f"need at least one step, got m={m}")
    if grid is None:
        grid = Grid.chebyshev()
    xs, ys = grid.points_x, grid.points_y
    samples = sample_grid(f, xs, ys)
    fmax = float(np.abs(samples).max())
    tol_abs = breakdown_tol * fmax

    residual = samples.copy()
    row_ok = np.ones(xs.size, dtype=bool)
    col_ok = np.ones(ys.size, dtype=bool)
    indices: list[tuple[int, int]] = []
    values: list[float] = []
    termination = TERMINATION_RANK
    for step in range(min(m, xs.size, ys.size)):
        i, j = _search_full(residual, row_ok, col_ok)
        p = float(residual[i, j])
        if abs(p) <= tol_abs:
            if step == 0:
                raise NumericalError("function is numerically zero on the grid")
            termination = TERMINATION_BREAKDOWN
            break
        _eliminate(residual, i, j)
        indices.append((i, j))
        values.append(p)
        row_ok[i] = False
        col_ok[j] = False

    return FunctionCrossResult(
        points=tuple((float(xs[i]), float(ys[j])) for i, j in indices),
        point_indices=tuple(indices),
        pivot_values=tuple(values),
        residual_grid=residual,
        error_max=float(np.abs(residual).max()),
        steps_completed=len(indices),
        termination=termination,
    )


def build_interpolation_matrix(f: Callable, xs, ys, x: float, y: float) -> np.ndarray:
    """Sample matrix of ``f`` over the points ``(xs + [x]) x (ys + [y])``.

    Running the matrix algorithm on it reproduces the function pivots and
    leaves the residual value at ``(x, y)`` as the single nonzero entry.
    """
    xs_all = [float(v) for v in xs] + [float(x)]
    ys_all = [float(v) for v in ys] + [float(y)]
    if len(set(xs_all)) != len(xs_all) or len(set(ys_all)) != len(ys_all):
        raise PreconditionError("interpolation points must be distinct")
    return sample_grid(f, xs_all, ys_all)


@dataclass(frozen=True)
class BernsteinEllipse:
    """Ellipse with foci at -1 and 1 and semi-axis sum ``r > 1``."""

    r: float

    def __post_init__(self):
        if self.r <= 1.0:
            raise ValueError(f"ellipse parameter must exceed 1, got {self.r}")

    @property
    def semi_major(self) -> float:
        return (self.r + 1.0 / self.r) / 2.0

    @property
    def semi_minor(self) -> float:
        return (self.r - 1.0 / self.r) / 2.0

    def boundary(self, theta) -> np.ndarray:
        """Boundary point(s) ``(u + 1/u)/2`` with ``u = r e^(i theta)``."""
        u = self.r * np.exp(1j * np.asarray(theta, dtype=float))
        return (u + 1.0 / u) / 2.0


def ellipse_sup(f_ext: Callable, r: float, n_theta: int = 512,
                y_grid=None) -> float:
    """Sampled sup of ``|f_ext(eta, y)|`` over the ellipse boundary and ``y`` in [-1, 1].

    ``f_ext`` must accept a complex first argument.  The result is a lower
    estimate of the true supremum (finitely many samples); bound checks
    should inflate it before use.  A pole on or inside the sampled region
    surfaces as a non-finite value and raises.
    """
    ellipse = BernsteinEllipse(r)
    if n_theta < 4:
        raise ValueError(f"need at least 4 boundary samples, got {n_theta}")
    etas = ellipse.boundary(np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False))
    ys = np.asarray(chebyshev_points(65) if y_grid is None else y_grid, dtype=float)
    try:
        with np.errstate(all="ignore"):
            vals = np.abs(np.asarray(f_ext(etas[:, None], ys[None, :]), dtype=complex))
        if vals.shape != (etas.size, ys.size):
            raise TypeError
    except (TypeError, ValueError):
        try:
            vals = np.array([[abs(f_ext(e, y)) for y in ys] for e in etas], dtype=float)
        except (ArithmeticError, ValueError) as exc:
            raise AnalyticityError(f"complex extension failed on the ellipse boundary: {exc}") from exc
    except ArithmeticError as exc:
        raise AnalyticityError(f"complex extension failed on the ellipse boundary: {exc}") from exc
    vals = np.asarray(vals, dtype=float)
    if not np.all(np.isfinite(vals)):
        raise AnalyticityError(
            "non-finite value on the ellipse boundary; the extension is not analytic there"
        )
    return float(vals.max())


def function_bound(m_sup: float, r: float, rho: float, m: int) -> float:
    """Residual bound ``2 M rho / (1 - 1/r) * (r/4)^(-m)`` after ``m`` steps.

    Decays only for ``r > 4``; at ``r = 4`` it is constant in ``m``.
    """
    if r <= 1.0:
        raise ValueError(f"ellipse parameter must exceed 1, got {r}")
    if m_sup < 0:
        raise ValueError("the supremum estimate must be nonnegative")
    if rho < 1.0:
        raise ValueError("the growth factor bound must be at least 1")
    return 2.0 * m_sup * rho / (1.0 - 1.0 / r) * (r / 4.0) ** (-m)


def _product(x, y):
    return x * y


def _gauss(x, y):
    return np.exp(-((x - y) ** 2))


def _expxy(x, y):
    return np.exp(x * y)


FUNCTION_NAMES = ("product", "gauss", "runge2d", "expxy")


def get_function(name: str, c: float = 4.0) -> Callable:
    """Named test functions; all accept complex first arguments.

    ``product``: x*y; ``gauss``: exp(-(x-y)^2); ``runge2d``: 1/(x+y+c);
    ``expxy``: exp(x*y).
    """
    if name == "product":
        return _product
    if name == "gauss":
        return _gauss
    if name == "expxy":
        return _expxy
    if name == "runge2d":
        def runge(x, y, _c=float(c)):
            return 1.0 / (x + y + _c)
        return runge
    raise ValueError(f"unknown function {name!r}; choose from {', '.join(FUNCTION_NAMES)}")
