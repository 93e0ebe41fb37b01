"""Seeded random generators shared across the equivalence and acceptance tests.

Everything here is driven by an explicit ``random.Random`` so tests are
reproducible; hypothesis-based strategies live in the test modules that use
them.
"""

from __future__ import annotations

import random
from fractions import Fraction

from jetcheck import Scalar, eval_jet, nth_derivative
from jetcheck.exprs import (
    Add,
    Apply,
    Const,
    Div,
    Expr,
    Mul,
    Neg,
    PowInt,
    Sub,
    Var,
    add,
    const,
    mul,
    pow_int,
)
from jetcheck.numeric import DomainError

TRANSCENDENTALS = ("exp", "log", "sin", "cos", "sqrt")


def rand_fraction(rng: random.Random, num_bound: int = 4, den_bound: int = 4) -> Fraction:
    return Fraction(rng.randint(-num_bound, num_bound), rng.randint(1, den_bound))


def rand_polynomial(rng: random.Random, degree_bound: int = 4, coeff_bound: int = 4) -> Expr:
    poly: Expr = const(0)
    for j in range(rng.randint(0, degree_bound) + 1):
        poly = add(poly, mul(const(Scalar(rand_fraction(rng, coeff_bound, coeff_bound))), pow_int(Var(), j)))
    return poly


def rand_rational_closed(rng: random.Random, depth: int) -> Expr:
    """Random expression with no transcendental nodes and exact constants."""
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.5:
            return Var()
        return Const(Scalar(rand_fraction(rng)))
    op = rng.choice(("add", "sub", "mul", "mul", "div", "neg", "pow"))
    if op == "neg":
        return Neg(rand_rational_closed(rng, depth - 1))
    if op == "pow":
        return PowInt(rand_rational_closed(rng, depth - 1), rng.choice((0, 1, 2, 2, 3, 3, -1)))
    a = rand_rational_closed(rng, depth - 1)
    b = rand_rational_closed(rng, depth - 1)
    return {"add": Add, "sub": Sub, "mul": Mul, "div": Div}[op](a, b)


def rand_transcendental(rng: random.Random, depth: int) -> Expr:
    """Random expression built around the elementary functions; float mode."""
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.6:
            return Var()
        return Const(Scalar.inexact(rng.randint(-3, 3) / rng.randint(1, 4)))
    op = rng.choice(("add", "sub", "mul", "apply", "apply", "pow"))
    if op == "apply":
        return Apply(rng.choice(TRANSCENDENTALS), rand_transcendental(rng, depth - 1))
    if op == "pow":
        return PowInt(rand_transcendental(rng, depth - 1), rng.choice((1, 2, 3)))
    a = rand_transcendental(rng, depth - 1)
    b = rand_transcendental(rng, depth - 1)
    return {"add": Add, "sub": Sub, "mul": Mul}[op](a, b)


def pick_exact_point(rng: random.Random, e: Expr, kmax: int, attempts: int = 40) -> Scalar | None:
    """A rational point where both the jet route and the symbolic route are
    defined for all derivative orders up to kmax."""
    for _ in range(attempts):
        x0 = Scalar(Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
        try:
            eval_jet(e, x0, kmax)
            for k in range(kmax + 1):
                nth_derivative(e, k, x0)
        except (DomainError, ZeroDivisionError):
            continue
        return x0
    return None


def pick_float_point(
    rng: random.Random, e: Expr, kmax: int, attempts: int = 40, magnitude_cap: float = 1e6
) -> Scalar | None:
    """A float point where both routes are defined and values stay small
    enough that a 1e-9 relative comparison is meaningful."""
    for _ in range(attempts):
        x0 = Scalar.inexact(round(rng.uniform(0.2, 1.6), 3))
        try:
            jet = eval_jet(e, x0, kmax)
            values = [float(nth_derivative(e, k, x0)) for k in range(kmax + 1)]
        except (DomainError, ZeroDivisionError, OverflowError):
            continue
        if any(abs(v) > magnitude_cap for v in values):
            continue
        if any(abs(float(c)) > magnitude_cap for c in jet.coeffs):
            continue
        return x0
    return None


def rel_close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))
