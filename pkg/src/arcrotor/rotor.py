"""Rotor solvers for the discrete logarithm x^k = y (mod p).

Both solvers advance the accumulated power of x by x-fold repeated addition
(so one outer step costs exactly x additions), wrap the result by repeated
subtraction with a strict ``>`` comparison, and test against the reduced
target once per outer step.  ``rotor_solve_real`` runs on the 360-degree arc
projection in a selectable numeric mode; ``rotor_solve_int`` runs the same
recurrence directly on integer residues with wrap bound p.

Faithfulness notes that shape the observable behaviour:

* The strict ``>`` wrap means an exact positive multiple of the bound
  settles at the bound itself, never at 0; the accumulator therefore lives
  in [1, p] (numerator units) rather than [0, p).
* The main loop's first comparison sees x^2, so the solutions k=0 (y = 1)
  and k=1 (y = x) are answered by explicit pre-checks before the loop.
* The loop runs at most p-1 outer steps; if the accumulator revisits its
  initial value x^1 beforehand, the orbit is exhausted and the solve stops
  with ``CycleDetected``.  Unreachable targets are a valid outcome, not an
  error.
* In exact and fixed-point modes every add/subtract is an exact integer
  operation, so the repeated addition is folded into one multiplication and
  the wrap loop into one division with identical results and identical
  operation counts.  float64 mode executes the literal loops, because their
  per-operation rounding is precisely what a precision scan measures.

Counter policy: ``comparisons`` counts target-equality tests (including the
two pre-checks); the cycle-detection test is bookkeeping and is not charged.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .counters import OpCounters
from .numerics import (
    EXACT,
    AngleResidue,
    ApproxAngle,
    NumericMode,
    default_tolerance,
    project,
    reduce_by_subtraction,
    scale_angle,
)


class InvalidInstanceError(ValueError):
    """Raised when a problem triple violates 1 <= x < p, 1 <= y < p, p >= 2."""


@dataclass(frozen=True)
class DlogInstance:
    """A discrete-log problem triple (p, x, y) over the residues mod p.

    p need not be prime; the solvers are defined on any multiplicative
    structure mod p, with "no solution" a legitimate outcome.
    """

    p: int
    x: int
    y: int

    def __post_init__(self) -> None:
        if self.p < 2:
            raise InvalidInstanceError(f"p must be >= 2, got p={self.p}")
        if not 1 <= self.x < self.p:
            raise InvalidInstanceError(f"x must satisfy 1 <= x < p, got x={self.x}, p={self.p}")
        if not 1 <= self.y < self.p:
            raise InvalidInstanceError(f"y must satisfy 1 <= y < p, got y={self.y}, p={self.p}")


class SolveReason(str, Enum):
    FOUND = "Found"
    EXHAUSTED_ITERATIONS = "ExhaustedIterations"
    CYCLE_DETECTED = "CycleDetected"


@dataclass(frozen=True)
class RotorState:
    """Loop state of one rotor solve.

    acc is the accumulated power (x^exponent up to the strict-> wrap quirk),
    scratch the unreduced inner-loop sum that produced it, target the reduced
    comparison value.  The value types follow the mode: AngleResidue for the
    exact arc, ApproxAngle for approximate arcs, plain int for the integer
    field.
    """

    acc: AngleResidue | ApproxAngle | int | float
    scratch: AngleResidue | ApproxAngle | int | float
    target: AngleResidue | ApproxAngle | int | float
    exponent: int


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a solve: exponent (if found), termination reason, exact counts."""

    k: int | None
    reason: SolveReason
    counters: OpCounters
    steps: int

    def __post_init__(self) -> None:
        if (self.reason is SolveReason.FOUND) != (self.k is not None):
            raise ValueError("k must be present exactly when the reason is Found")

    @property
    def found(self) -> bool:
        return self.reason is SolveReason.FOUND


# ---------------------------------------------------------------------------
# Single step
# ---------------------------------------------------------------------------


def rotor_step(
    state: RotorState,
    x: int,
    wrap: int | float,
    counters: OpCounters,
) -> RotorState:
    """Advance one outer iteration: x-fold add, wrap, increment the exponent.

    ``wrap`` is in the state's native units: p for integer-field and
    exact-arc states (numerator units), 360 for degree-valued approximate
    states.  Exactly x additions and one wrap's worth of subtractions are
    charged to ``counters``.
    """
    acc = state.acc
    if isinstance(acc, AngleResidue):
        scratch = scale_angle(x, acc)
        counters.additions += x
        reduced = reduce_by_subtraction(scratch.numerator, wrap, counters)
        new_acc: AngleResidue | ApproxAngle | int | float = AngleResidue(reduced, acc.modulus)
    elif isinstance(acc, ApproxAngle):
        if acc.mode.kind == "float64":
            total = 0.0
            for _ in range(x):
                total += acc.raw
            scratch = ApproxAngle(total, acc.mode)
        else:
            scratch = ApproxAngle(acc.raw * x, acc.mode)
        counters.additions += x
        new_acc = reduce_by_subtraction(scratch, wrap, counters)
    elif isinstance(acc, float):
        total = 0.0
        for _ in range(x):
            total += acc
        scratch = total
        counters.additions += x
        new_acc = reduce_by_subtraction(scratch, wrap, counters)
    else:
        scratch = acc * x
        counters.additions += x
        new_acc = reduce_by_subtraction(scratch, wrap, counters)
    return RotorState(
        acc=new_acc, scratch=scratch, target=state.target, exponent=state.exponent + 1
    )


def initial_state(inst: DlogInstance) -> RotorState:
    """Integer-field start state: acc = x^1, target = y, exponent = 1."""
    return RotorState(acc=inst.x, scratch=0, target=inst.y, exponent=1)


def initial_projected_state(inst: DlogInstance, mode: NumericMode = EXACT) -> RotorState:
    """Arc-projected start state in the given mode.

    Approximate modes mirror the solver's own initialisation: the step
    theta = 360/p is computed first in mode arithmetic, then scaled by the
    integers x and y (two rounding steps in float64, one in fixed point).
    """
    p = inst.p
    if mode.is_exact:
        return RotorState(
            acc=project(inst.x, p),
            scratch=project(0, p),
            target=project(inst.y, p),
            exponent=1,
        )
    if mode.kind == "float64":
        theta = 360.0 / p
        return RotorState(
            acc=ApproxAngle(inst.x * theta, mode),
            scratch=ApproxAngle(0.0, mode),
            target=ApproxAngle(inst.y * theta, mode),
            exponent=1,
        )
    scale = 1 << mode.fractional_bits
    theta_raw = round(Fraction(360 * scale, p))
    return RotorState(
        acc=ApproxAngle(inst.x * theta_raw, mode),
        scratch=ApproxAngle(0, mode),
        target=ApproxAngle(inst.y * theta_raw, mode),
        exponent=1,
    )


# ---------------------------------------------------------------------------
# Solvers
# ---------------------------------------------------------------------------


def _precheck(y: int, x: int) -> SolveReport | None:
    # The loop's first comparison sees x^2; answer k=0 and k=1 beforehand.
    if y == 1:
        return SolveReport(0, SolveReason.FOUND, OpCounters(comparisons=1), 0)
    if y == x:
        return SolveReport(1, SolveReason.FOUND, OpCounters(comparisons=2), 0)
    return None


def rotor_solve_int(inst: DlogInstance) -> SolveReport:
    """Rotor solve directly on integer residues, wrap bound p.

    Pure integer recurrence: one outer step multiplies the accumulator by x
    (charged as x additions) and wraps it back into [1, p] by the strict->
    rule (each subtraction charged).  Always agrees with the brute-force
    oracle on existence and least k.
    """
    if not isinstance(inst, DlogInstance):
        raise InvalidInstanceError(f"expected a DlogInstance, got {type(inst).__name__}")
    p, x, y = inst.p, inst.x, inst.y
    early = _precheck(y, x)
    if early is not None:
        return early

    acc = x
    first = x
    exponent = 1
    adds = subs = steps = 0
    cmps = 2
    k: int | None = None
    reason = SolveReason.EXHAUSTED_ITERATIONS
    for _ in range(p - 1):
        s = acc * x  # exact fold of x-fold repeated addition
        adds += x
        if s > p:
            m = (s - 1) // p  # exact fold of the strict-> subtraction loop
            s -= m * p
            subs += m
        acc = s
        exponent += 1
        steps += 1
        cmps += 1
        if acc == y:
            k = exponent
            reason = SolveReason.FOUND
            break
        if acc == first:
            reason = SolveReason.CYCLE_DETECTED
            break
    return SolveReport(k, reason, OpCounters(adds, subs, cmps, steps), steps)


def rotor_solve_real(
    inst: DlogInstance,
    mode: NumericMode = EXACT,
    tolerance: float | None = None,
) -> SolveReport:
    """Rotor solve on the 360-degree arc projection.

    In exact mode the result always agrees with the oracle and the tolerance
    is ignored.  In approximate modes the comparison uses ``tolerance``
    degrees (default: half the angular step, 180/p); a wrong or missing k is
    a measurable outcome, not an error.
    """
    if not isinstance(inst, DlogInstance):
        raise InvalidInstanceError(f"expected a DlogInstance, got {type(inst).__name__}")
    if not isinstance(mode, NumericMode):
        raise ValueError(f"expected a NumericMode, got {type(mode).__name__}")
    if tolerance is None:
        tolerance = default_tolerance(mode, inst.p)
    elif tolerance < 0:
        raise ValueError(f"tolerance must be non-negative, got {tolerance}")
    if mode.is_exact:
        return _solve_arc_exact(inst)
    if mode.kind == "float64":
        return _solve_arc_float64(inst, tolerance)
    return _solve_arc_fixed(inst, tolerance, mode)


def _solve_arc_exact(inst: DlogInstance) -> SolveReport:
    # Rational-angle semantics: theta carries numerator 1, so x' = x*theta
    # and y' = y*theta carry numerators x and y, and the 360-degree wrap
    # point is numerator p.  The loop below is that numerator arithmetic.
    p, x, y = inst.p, inst.x, inst.y
    early = _precheck(y, x)
    if early is not None:
        return early

    acc = x  # numerator of x^1 * theta
    first = x
    target = y  # numerator of y * theta
    exponent = 1
    adds = subs = steps = 0
    cmps = 2
    k: int | None = None
    reason = SolveReason.EXHAUSTED_ITERATIONS
    for _ in range(p - 1):
        s = acc * x
        adds += x
        if s > p:
            m = (s - 1) // p
            s -= m * p
            subs += m
        acc = s
        exponent += 1
        steps += 1
        cmps += 1
        if acc == target:
            k = exponent
            reason = SolveReason.FOUND
            break
        if acc == first:
            reason = SolveReason.CYCLE_DETECTED
            break
    return SolveReport(k, reason, OpCounters(adds, subs, cmps, steps), steps)


def _solve_arc_float64(inst: DlogInstance, tolerance: float) -> SolveReport:
    p, x, y = inst.p, inst.x, inst.y
    early = _precheck(y, x)
    if early is not None:
        return early

    theta = 360.0 / p
    x1 = x * theta
    y2 = y * theta
    first = x1
    exponent = 1
    adds = subs = steps = 0
    cmps = 2
    k: int | None = None
    reason = SolveReason.EXHAUSTED_ITERATIONS
    for _ in range(p - 1):
        x2 = 0.0
        for _ in range(x):  # literal repeated addition; rounding accumulates
            x2 += x1
        adds += x
        x1 = x2
        exponent += 1
        while x1 > 360.0:
            x1 -= 360.0
            subs += 1
        steps += 1
        cmps += 1
        if abs(x1 - y2) <= tolerance:
            k = exponent
            reason = SolveReason.FOUND
            break
        if x1 == first:
            reason = SolveReason.CYCLE_DETECTED
            break
    return SolveReport(k, reason, OpCounters(adds, subs, cmps, steps), steps)


def _solve_arc_fixed(inst: DlogInstance, tolerance: float, mode: NumericMode) -> SolveReport:
    # Only theta (and the tolerance) are rounded; adds, subtracts and
    # comparisons on the raw units are exact integer operations, so the
    # loops fold to closed forms exactly as in the integer field.
    p, x, y = inst.p, inst.x, inst.y
    early = _precheck(y, x)
    if early is not None:
        return early

    scale = 1 << mode.fractional_bits
    theta_raw = round(Fraction(360 * scale, p))
    wrap = 360 * scale
    tol_raw = round(tolerance * scale)
    x1 = x * theta_raw
    y2 = y * theta_raw
    first = x1
    exponent = 1
    adds = subs = steps = 0
    cmps = 2
    k: int | None = None
    reason = SolveReason.EXHAUSTED_ITERATIONS
    for _ in range(p - 1):
        s = x1 * x
        adds += x
        if s > wrap:
            m = (s - 1) // wrap
            s -= m * wrap
            subs += m
        x1 = s
        exponent += 1
        steps += 1
        cmps += 1
        if abs(x1 - y2) <= tol_raw:
            k = exponent
            reason = SolveReason.FOUND
            break
        if x1 == first:
            reason = SolveReason.CYCLE_DETECTED
            break
    return SolveReport(k, reason, OpCounters(adds, subs, cmps, steps), steps)
