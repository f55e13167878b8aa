"""
Gradient-descent threshold solver with Armijo backtracking.

Each iteration tries tau - step * g'(tau), halving the step until the
sufficient-decrease test

    g(tau_new) <= g(tau) - c * g'(tau) * (tau - tau_new)   and   g(tau_new) < g(tau)

passes. Without projection tau - tau_new = step * g'(tau), which is the
usual Armijo rule; ternary iterates are projected onto tau >= 0 and the
test uses the projected displacement. Once the achievable decrease drops
below the rounding of g no step passes; that stall counts as convergence
when |g'| is already below `stall_grad_tol`.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, List, Optional, Sequence, Tuple, Union

from ..errors import DomainError
from ..gaussian_stats.standardize import ClassPairModel
from ..quant_core.quantizer import QuantKind
from .objectives import MeanObjective


logger = logging.getLogger(__name__)

Models = Union[ClassPairModel, Sequence[ClassPairModel]]


@dataclass(frozen=True)
class SolverConfig:
    """
    Solver settings.

    Attributes:
        armijo_c: Sufficient-decrease constant c in (0, 1)
        grad_tol: Stop once |g'(tau)| < grad_tol
        max_iters: Iteration cap
        tau0: Initial threshold
        step_init: First trial step of every line search
        step_shrink: Backtracking factor in (0, 1)
        max_shrinks: Trial steps per line search before giving up
        stall_grad_tol: A stalled line search counts as converged when |g'| is below this
    """

    armijo_c: float = 1e-3
    grad_tol: float = 1e-12
    max_iters: int = 10_000
    tau0: float = 0.0
    step_init: float = 1.0
    step_shrink: float = 0.5
    max_shrinks: int = 60
    stall_grad_tol: float = 1e-6

    def __post_init__(self) -> None:
        if not 0.0 < self.armijo_c < 1.0:
            raise DomainError(f"armijo_c must lie in (0, 1), got {self.armijo_c}")
        if self.grad_tol <= 0.0:
            raise DomainError(f"grad_tol must be positive, got {self.grad_tol}")
        if int(self.max_iters) < 1:
            raise DomainError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.step_init <= 0.0:
            raise DomainError(f"step_init must be positive, got {self.step_init}")
        if not 0.0 < self.step_shrink < 1.0:
            raise DomainError(f"step_shrink must lie in (0, 1), got {self.step_shrink}")
        if int(self.max_shrinks) < 1:
            raise DomainError(f"max_shrinks must be >= 1, got {self.max_shrinks}")
        if self.stall_grad_tol < self.grad_tol:
            raise DomainError(f"stall_grad_tol must be >= grad_tol, got {self.stall_grad_tol}")

    @classmethod
    def from_config(cls, config: Any, **overrides: Any) -> "SolverConfig":
        """Read the `solver` config section, then apply non-None overrides."""
        defaults = cls()
        values = {
            name: type(getattr(defaults, name))(config.get("solver", name, getattr(defaults, name)))
            for name in (
                "armijo_c",
                "grad_tol",
                "max_iters",
                "tau0",
                "step_init",
                "step_shrink",
                "max_shrinks",
                "stall_grad_tol",
            )
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True)
class SolverResult:
    """Outcome of one solve: the best iterate over all starts."""

    kind: QuantKind
    tau_star: float
    objective_value: float
    gradient: float
    iterations: int
    converged: bool
    start: float
    trace: Tuple[float, ...] = field(default=(), repr=False)

    @property
    def condition_satisfied(self) -> bool:
        return self.objective_value < 0.0

    def to_dict(self) -> dict:
        data = asdict(self)
        data.pop("trace")
        data["kind"] = self.kind.value
        data["condition_satisfied"] = self.condition_satisfied
        return data


def _project(kind: QuantKind, tau: float) -> float:
    return max(tau, 0.0) if kind is QuantKind.TERNARY else tau


def _descend(objective: MeanObjective, start: float, cfg: SolverConfig) -> SolverResult:
    kind = objective.kind
    tau = _project(kind, float(start))
    value, slope = objective(tau)
    trace: List[float] = [value]
    converged = False
    iterations = 0

    while iterations < cfg.max_iters:
        if abs(slope) < cfg.grad_tol:
            converged = True
            break
        if kind is QuantKind.TERNARY and tau == 0.0 and slope > 0.0:
            # Minimum on the boundary of tau >= 0
            converged = True
            break

        step = cfg.step_init
        accepted = False
        for _ in range(int(cfg.max_shrinks)):
            candidate = _project(kind, tau - step * slope)
            if candidate == tau:
                break
            candidate_value, candidate_slope = objective(candidate)
            bound = value - cfg.armijo_c * slope * (tau - candidate)
            if candidate_value <= bound and candidate_value < value:
                accepted = True
                break
            step *= cfg.step_shrink

        if not accepted:
            converged = abs(slope) <= cfg.stall_grad_tol
            logger.debug("Line search stalled at tau=%.12g (g'=%.3g)", tau, slope)
            break

        tau, value, slope = candidate, candidate_value, candidate_slope
        trace.append(value)
        iterations += 1
        logger.debug("iter %d: tau=%.12g g=%.12g g'=%.3g step=%.3g", iterations, tau, value, slope, step)

    return SolverResult(
        kind=kind,
        tau_star=tau,
        objective_value=value,
        gradient=slope,
        iterations=iterations,
        converged=converged,
        start=float(start),
        trace=tuple(trace),
    )


def default_starts(objective: MeanObjective, cfg: SolverConfig) -> List[float]:
    """
    tau0 plus a second start offset by half the (mean) class deviation.

    A single start can sit on a flat stretch or on the wrong side of the
    objective's hump; the better of the two runs is kept.
    """
    offset = 0.5 * objective.mean_sigma
    if objective.kind is QuantKind.TERNARY:
        first = _project(objective.kind, cfg.tau0)
        second = offset if first > offset else first + offset
        return [first, second]
    return [cfg.tau0, cfg.tau0 + offset]


def solve_threshold(
    models: Models,
    kind: QuantKind,
    cfg: Optional[SolverConfig] = None,
    starts: Optional[Sequence[float]] = None,
) -> SolverResult:
    """
    Minimize g(tau) for one model, or the mean of g over several models.

    Args:
        models: A ClassPairModel or a sequence of per-dimension models
        kind: Binary or ternary quantization
        cfg: Solver settings (defaults when None)
        starts: Initial thresholds; default_starts(...) when None

    Returns:
        The SolverResult with the lowest objective value over all starts
    """
    cfg = cfg or SolverConfig()
    kind = QuantKind(kind)
    model_list = [models] if isinstance(models, ClassPairModel) else list(models)
    objective = MeanObjective(model_list, kind)

    start_points = list(starts) if starts is not None else default_starts(objective, cfg)
    if not start_points:
        raise DomainError("at least one start point is required")

    results = [_descend(objective, s, cfg) for s in start_points]
    best = min(results, key=lambda r: r.objective_value)

    if not best.converged:
        logger.warning(
            "%s solve did not reach |g'| < %.1e: tau=%.6g, g'=%.3g after %d iterations",
            kind.value,
            cfg.grad_tol,
            best.tau_star,
            best.gradient,
            best.iterations,
        )
    else:
        logger.debug(
            "%s solve: tau*=%.6g g=%.6g in %d iterations (%d model(s))",
            kind.value,
            best.tau_star,
            best.objective_value,
            best.iterations,
            len(objective),
        )
    return best
