"""Verifiers for a family of higher-order derivative identities.

Every verifier evaluates both sides of one identity for concrete inputs and
returns a :class:`VerificationReport` with the left- and right-hand values,
their residual, and a verdict.  Most left-hand sides are alternating sums
whose terms cancel, so each report also carries the cancellation scale (the
sum of the absolute values of the summands): in float mode the verdict
tolerance is relative to that scale, because the pre-cancellation magnitude
is what limits the achievable accuracy.

In exact mode a verdict of ``pass`` means the residual is exactly zero;
there is no tolerance.  Hypotheses (a zero sum of functions at the
evaluation point, a zero coefficient sum, a root of f at the point) are
checked first and reported as ``precondition_violated`` rather than being
silently assumed.

The identity family, in the naming used throughout (also the CLI tokens):

* ``theorem1`` - the general form: r function pairs (f_i, g_i) with
  sum(g_i) vanishing at the point; the multinomial-weighted sum of products
  of derivatives of f_i * g_i^(k_i) collapses to 0 for |s| < n and to
  n! * prod(f_i) * prod(g_i')^(s_i) for |s| = n.
* ``corollary2`` - the special case g_i = c_i * g with sum(c) = 0.
* ``symmetric_pair`` - the two-function form (c = (-1, 1), s = (p, n-p)).
* ``baran`` - the classic single-f form: the k-th summand carries an
  undifferentiated factor g(x0)^k and the sum is normalized by 1/n!.
* ``leibniz_product`` - a related convolution identity with no sign
  alternation and no hypothesis:
  x * sum_k C(n,k) (x^k f)^(k) (x^(n-k) g)^(n-k) = (x^(n+1) f g)^(n).
* ``power_family`` / ``exp_family`` - the fully combinatorial binomial
  reductions obtained from corollary2 for pure powers x^a with g = x^b
  (via generalized binomial coefficients) and for exponentials e^(a x)
  with g = e^(b x).
* ``zero_power_lemma`` - the supporting fact behind the general collapse:
  if f(x0) = 0 then (f^n)^(s)(x0) = 0 for s < n and
  (f^n)^(n)(x0) = n! * f'(x0)^n.

All verifiers are pure functions; :func:`sweep` derives one RNG per trial
from the master seed, so summaries are reproducible regardless of the order
or parallelism with which trials would be evaluated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .exprs import (
    Expr,
    add,
    const,
    contains_float,
    eval_jet,
    eval_scalar,
    mul,
    neg,
    pow_int,
    sub,
    to_text,
    X,
)
from .jets import Jet
from .numeric import (
    MultiIndex,
    Scalar,
    compositions,
    factorial,
    generalized_binomial,
    multinomial,
    one,
    zero,
)

DEFAULT_TOL = 1e-9
HYPOTHESIS_TOL = 1e-12

IDENTITIES = (
    "theorem1",
    "corollary2",
    "symmetric_pair",
    "baran",
    "leibniz_product",
    "power_family",
    "exp_family",
    "zero_power_lemma",
)

# Identities whose statement carries a hypothesis that a negative-mode sweep
# can deliberately break.
PERTURBABLE_IDENTITIES = (
    "theorem1",
    "corollary2",
    "power_family",
    "exp_family",
    "zero_power_lemma",
)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking one identity instance."""

    identity: str
    params: dict[str, str]
    mode: str  # "exact" | "float"
    lhs: Scalar | None
    rhs: Scalar | None
    residual: Scalar | None
    cancellation_scale: Scalar | None
    tolerance: float | None
    verdict: str  # "pass" | "fail" | "precondition_violated"
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


@dataclass(frozen=True)
class TheoremInstance:
    """One instance of the general identity: n, r, the functions, the
    derivative orders s, and the evaluation point."""

    n: int
    r: int
    f: tuple[Expr, ...]
    g: tuple[Expr, ...]
    s: MultiIndex
    x0: Scalar

    def __post_init__(self) -> None:
        object.__setattr__(self, "f", tuple(self.f))
        object.__setattr__(self, "g", tuple(self.g))
        if not isinstance(self.s, MultiIndex):
            object.__setattr__(self, "s", MultiIndex(tuple(self.s)))
        if self.n < 0:
            raise ValueError(f"n must be non-negative, got {self.n}")
        if self.r < 1:
            raise ValueError(f"r must be positive, got {self.r}")
        if len(self.f) != self.r or len(self.g) != self.r or len(self.s) != self.r:
            raise ValueError(
                f"f, g, s must all have length r = {self.r} "
                f"(got {len(self.f)}, {len(self.g)}, {len(self.s)})"
            )
        if self.s.weight > self.n:
            raise ValueError(
                f"|s| = {self.s.weight} exceeds n = {self.n}; "
                "the identity asserts nothing there"
            )


def _mode_for(x0: Scalar, exprs: Sequence[Expr], scalars: Sequence[Scalar] = ()) -> tuple[Scalar, str]:
    """Evaluation point and ambient mode: float as soon as any input is."""
    lift = (
        not x0.is_exact
        or any(contains_float(e) for e in exprs)
        or any(not s.is_exact for s in scalars)
    )
    return (x0.to_float() if lift else x0), ("float" if lift else "exact")


def _lift(s: Scalar, mode: str) -> Scalar:
    return s.to_float() if mode == "float" else s


def _verdict_for(residual: Scalar, scale: Scalar, mode: str, tol: float) -> str:
    if mode == "exact":
        return "pass" if residual == 0 else "fail"
    limit = tol * max(1.0, float(scale))
    return "pass" if abs(float(residual)) <= limit else "fail"


def _finish(
    identity: str,
    params: dict[str, str],
    mode: str,
    lhs: Scalar,
    rhs: Scalar,
    scale: Scalar,
    tol: float,
    notes: tuple[str, ...] = (),
    rhs_shift: Scalar | None = None,
) -> VerificationReport:
    if rhs_shift is not None:
        rhs = rhs + _lift(rhs_shift, mode)
        notes = notes + (f"rhs perturbed by {rhs_shift.as_text()}",)
    residual = lhs - rhs
    return VerificationReport(
        identity=identity,
        params=params,
        mode=mode,
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        cancellation_scale=scale,
        tolerance=tol if mode == "float" else None,
        verdict=_verdict_for(residual, scale, mode, tol),
        notes=notes,
    )


def _precondition_violated(
    identity: str, params: dict[str, str], mode: str, tol: float, note: str
) -> VerificationReport:
    return VerificationReport(
        identity=identity,
        params=params,
        mode=mode,
        lhs=None,
        rhs=None,
        residual=None,
        cancellation_scale=None,
        tolerance=tol if mode == "float" else None,
        verdict="precondition_violated",
        notes=(note,),
    )


def _sum_is_zero(total: Scalar, scale: Scalar, mode: str) -> bool:
    if mode == "exact":
        return total == 0
    return abs(float(total)) <= HYPOTHESIS_TOL * (1.0 + float(scale))


def _exprs_text(exprs: Sequence[Expr]) -> str:
    return ",".join(to_text(e) for e in exprs)


def _scalars_text(scalars: Sequence[Scalar]) -> str:
    return ",".join(s.as_text() for s in scalars)


def theorem1_verify(
    inst: TheoremInstance,
    *,
    tol: float = DEFAULT_TOL,
    rhs_shift: Scalar | None = None,
) -> VerificationReport:
    """Check the general r-function identity on one instance.

    The hypothesis is checked pointwise at x0 (which is all the collapse
    argument needs); instances whose g_i sum to zero identically satisfy it
    a fortiori.
    """
    n, r, s = inst.n, inst.r, inst.s
    params = {
        "n": str(n),
        "r": str(r),
        "s": s.as_text(),
        "f": _exprs_text(inst.f),
        "g": _exprs_text(inst.g),
        "x0": inst.x0.as_text(),
    }
    x0, mode = _mode_for(inst.x0, inst.f + inst.g)
    fjets = [eval_jet(e, x0, n) for e in inst.f]
    gjets = [eval_jet(e, x0, n) for e in inst.g]

    gsum = zero(mode)
    gmag = zero(mode)
    for gj in gjets:
        gsum = gsum + gj.value
        gmag = gmag + abs(gj.value)
    if not _sum_is_zero(gsum, gmag, mode):
        return _precondition_violated(
            "theorem1", params, mode, tol,
            f"hypothesis failed: sum of g_i at x0 is {gsum.as_text()}, not 0",
        )

    gpows = [_jet_powers(gj, n) for gj in gjets]
    lhs = zero(mode)
    scale = zero(mode)
    for k in compositions(n, r):
        term = _lift(multinomial(n, k), mode)
        for i in range(r):
            term = term * (fjets[i] * gpows[i][k[i]]).derivative(s[i])
        lhs = lhs + term
        scale = scale + abs(term)

    if s.weight == n:
        rhs = _lift(factorial(n), mode)
        for fj in fjets:
            rhs = rhs * fj.value
        if n >= 1:
            for i in range(r):
                rhs = rhs * gjets[i].derivative(1) ** s[i]
    else:
        rhs = zero(mode)
    return _finish("theorem1", params, mode, lhs, rhs, scale, tol, (), rhs_shift)


def _jet_powers(base: Jet, max_power: int) -> list[Jet]:
    """[base**0, base**1, ..., base**max_power], built by repeated products."""
    powers = [Jet.constant(one(base.mode), base.order)]
    for _ in range(max_power):
        powers.append(powers[-1] * base)
    return powers


def _corollary2_core(
    identity: str,
    params: dict[str, str],
    n: int,
    f: Sequence[Expr],
    g: Expr,
    c: Sequence[Scalar],
    s: MultiIndex,
    x0: Scalar,
    tol: float,
    rhs_shift: Scalar | None,
) -> VerificationReport:
    r = len(f)
    x0, mode = _mode_for(x0, tuple(f) + (g,), tuple(c))
    c = [_lift(ci, mode) for ci in c]

    csum = zero(mode)
    cmag = zero(mode)
    for ci in c:
        csum = csum + ci
        cmag = cmag + abs(ci)
    if not _sum_is_zero(csum, cmag, mode):
        return _precondition_violated(
            identity, params, mode, tol,
            f"hypothesis failed: sum of c is {csum.as_text()}, not 0",
        )

    fjets = [eval_jet(e, x0, n) for e in f]
    gjet = eval_jet(g, x0, n)
    gpow = _jet_powers(gjet, n)

    lhs = zero(mode)
    scale = zero(mode)
    for k in compositions(n, r):
        term = _lift(multinomial(n, k), mode)
        for i in range(r):
            term = term * c[i] ** k[i]
            term = term * (fjets[i] * gpow[k[i]]).derivative(s[i])
        lhs = lhs + term
        scale = scale + abs(term)

    if s.weight == n:
        rhs = _lift(factorial(n), mode)
        for i in range(r):
            rhs = rhs * c[i] ** s[i]
        for i in range(r):
            rhs = rhs * fjets[i].value
        if n >= 1:
            rhs = rhs * gjet.derivative(1) ** s.weight
    else:
        rhs = zero(mode)
    return _finish(identity, params, mode, lhs, rhs, scale, tol, (), rhs_shift)


def corollary2_verify(
    n: int,
    f: Sequence[Expr],
    g: Expr,
    c: Sequence[Scalar],
    s: MultiIndex | Sequence[int],
    x0: Scalar,
    *,
    r: int | None = None,
    tol: float = DEFAULT_TOL,
    rhs_shift: Scalar | None = None,
) -> VerificationReport:
    """Check the constant-multiples form: g_i = c_i * g with sum(c) = 0."""
    f = tuple(f)
    c = tuple(c)
    if not isinstance(s, MultiIndex):
        s = MultiIndex(tuple(s))
    if r is None:
        r = len(f)
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if len(f) != r or len(c) != r or len(s) != r:
        raise ValueError(
            f"f, c, s must all have length r = {r} (got {len(f)}, {len(c)}, {len(s)})"
        )
    if s.weight > n:
        raise ValueError(f"|s| = {s.weight} exceeds n = {n}; the identity asserts nothing there")
    params = {
        "n": str(n),
        "r": str(r),
        "s": s.as_text(),
        "c": _scalars_text(c),
        "f": _exprs_text(f),
        "g": to_text(g),
        "x0": x0.as_text(),
    }
    return _corollary2_core("corollary2", params, n, f, g, c, s, x0, tol, rhs_shift)


def symmetric_pair_verify(
    n: int,
    p: int,
    f1: Expr,
    f2: Expr,
    g: Expr,
    x0: Scalar,
    *,
    tol: float = DEFAULT_TOL,
    rhs_shift: Scalar | None = None,
) -> VerificationReport:
    """Two-function alternating form: c = (-1, 1) and s = (p, n - p), with
    right-hand side (-1)^p n! f1 f2 g'^n."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if not 0 <= p <= n:
        raise ValueError(f"p must lie in 0..{n}, got {p}")
    params = {
        "n": str(n),
        "p": str(p),
        "f1": to_text(f1),
        "f2": to_text(f2),
        "g": to_text(g),
        "x0": x0.as_text(),
    }
    s = MultiIndex((p, n - p))
    c = (Scalar.exact(-1), Scalar.exact(1))
    return _corollary2_core("symmetric_pair", params, n, (f1, f2), g, c, s, x0, tol, rhs_shift)


def baran_verify(
    n: int,
    f: Expr,
    g: Expr,
    x0: Scalar,
    *,
    tol: float = DEFAULT_TOL,
    rhs_shift: Scalar | None = None,
) -> VerificationReport:
    """Single-f alternating form, normalized by 1/n!:

        (1/n!) sum_k (-1)^k C(n,k) g(x0)^k (f g^(n-k))^(n)(x0) = f(x0) g'(x0)^n

    The g^k factor is a plain value at x0, not differentiated.  There is no
    hypothesis beyond the expressions being defined at x0.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    params = {"n": str(n), "f": to_text(f), "g": to_text(g), "x0": x0.as_text()}
    x0, mode = _mode_for(x0, (f, g))
    fjet = eval_jet(f, x0, n)
    gjet = eval_jet(g, x0, n)
    gpow = _jet_powers(gjet, n)
    gval_pow = _scalar_powers(gjet.value, n)
    inv_nfact = one(mode) / _lift(factorial(n), mode)

    lhs = zero(mode)
    scale = zero(mode)
    for k in range(n + 1):
        term = _lift(multinomial(n, MultiIndex((k,))), mode)
        if k % 2:
            term = -term
        term = term * gval_pow[k] * (fjet * gpow[n - k]).derivative(n) * inv_nfact
        lhs = lhs + term
        scale = scale + abs(term)

    rhs = fjet.value * (gjet.derivative(1) ** n if n >= 1 else one(mode))
    return _finish("baran", params, mode, lhs, rhs, scale, tol, (), rhs_shift)


def _scalar_powers(base: Scalar, max_power: int) -> list[Scalar]:
    powers = [one(base.mode)]
    for _ in range(max_power):
        powers.append(powers[-1] * base)
    return powers


def leibniz_product_verify(
    n: int,
    f: Expr,
    g: Expr,
    x0: Scalar,
    *,
    tol: float = DEFAULT_TOL,
    rhs_shift: Scalar | None = None,
) -> VerificationReport:
    """Convolution identity with monomial weights and no sign alternation:

        x * sum_k C(n,k) (x^k f)^(k) (x^(n-k) g)^(n-k) = (x^(n+1) f g)^(n)

    evaluated at x0.  No hypothesis beyond the expression domains.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    params = {"n": str(n), "f": to_text(f), "g": to_text(g), "x0": x0.as_text()}
    x0, mode = _mode_for(x0, (f, g))
    fjet = eval_jet(f, x0, n)
    gjet = eval_jet(g, x0, n)
    xjet = Jet.variable(x0, n)
    xpow = _jet_powers(xjet, n + 1)

    lhs = zero(mode)
    scale = zero(mode)
    for k in range(n + 1):
        term = _lift(multinomial(n, MultiIndex((k,))), mode)
        term = term * (xpow[k] * fjet).derivative(k)
        term = term * (xpow[n - k] * gjet).derivative(n - k)
        term = term * x0
        lhs = lhs + term
        scale = scale + abs(term)

    rhs = (xpow[n + 1] * fjet * gjet).derivative(n)
    return _finish("leibniz_product", params, mode, lhs, rhs, scale, tol, (), rhs_shift)


def _family_common(
    identity: str,
    n: int,
    alpha: Sequence[Scalar],
    beta: Scalar,
    c: Sequence[Scalar],
    s: MultiIndex | Sequence[int],
    r: int | None,
) -> tuple[int, tuple[Scalar, ...], MultiIndex, dict[str, str]]:
    alpha = tuple(alpha)
    c = tuple(c)
    if not isinstance(s, MultiIndex):
        s = MultiIndex(tuple(s))
    if r is None:
        r = len(alpha)
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if len(alpha) != r or len(c) != r or len(s) != r:
        raise ValueError(
            f"alpha, c, s must all have length r = {r} "
            f"(got {len(alpha)}, {len(c)}, {len(s)})"
        )
    params = {
        "n": str(n),
        "r": str(r),
        "s": s.as_text(),
        "alpha": _scalars_text(alpha),
        "beta": beta.as_text(),
        "c": _scalars_text(c),
    }
    return r, c, s, params


def _family_mode(alpha: Sequence[Scalar], beta: Scalar, c: Sequence[Scalar]) -> str:
    scalars = tuple(alpha) + (beta,) + tuple(c)
    return "float" if any(not s.is_exact for s in scalars) else "exact"


def _check_family_pre(
    identity: str,
    params: dict[str, str],
    mode: str,
    tol: float,
    c: Sequence[Scalar],
    s: MultiIndex,
    n: int,
) -> VerificationReport | None:
    csum = zero(mode)
    cmag = zero(mode)
    for ci in c:
        csum = csum + ci
        cmag = cmag + abs(ci)
    if not _sum_is_zero(csum, cmag, mode):
        return _precondition_violated(
            identity, params, mode, tol,
            f"hypothesis failed: sum of c is {csum.as_text()}, not 0",
        )
    if s.weight != n:
        return _precondition_violated(
            identity, params, mode, tol,
            f"this closed form needs |s| = n, got |s| = {s.weight} with n = {n}",
        )
    return None


def power_family_check(
    n: int,
    alpha: Sequence[Scalar],
    beta: Scalar,
    c: Sequence[Scalar],
    s: MultiIndex | Sequence[int],
    *,
    r: int | None = None,
    tol: float = DEFAULT_TOL,
    rhs_shift: Scalar | None = None,
) -> VerificationReport:
    """Binomial reduction for the pure power family f_i = x^(alpha_i),
    g = x^beta.  Fully combinatorial:

        sum_{|k|=n} multinomial(n,k) prod_i c_i^(k_i) C(alpha_i + k_i beta, s_i)
            = multinomial(n,s) beta^n prod_i c_i^(s_i)

    Exact for rational alpha, beta, c; needs sum(c) = 0 and |s| = n.
    """
    r, c, s, params = _family_common("power_family", n, alpha, beta, c, s, r)
    mode = _family_mode(alpha, beta, c)
    alpha = [_lift(a, mode) for a in alpha]
    beta = _lift(beta, mode)
    c = [_lift(ci, mode) for ci in c]
    pre = _check_family_pre("power_family", params, mode, tol, c, s, n)
    if pre is not None:
        return pre

    lhs = zero(mode)
    scale = zero(mode)
    for k in compositions(n, r):
        term = _lift(multinomial(n, k), mode)
        for i in range(r):
            term = term * c[i] ** k[i]
            term = term * generalized_binomial(alpha[i] + beta * k[i], s[i])
        lhs = lhs + term
        scale = scale + abs(term)

    rhs = _lift(multinomial(n, s), mode) * beta ** n
    for i in range(r):
        rhs = rhs * c[i] ** s[i]
    return _finish("power_family", params, mode, lhs, rhs, scale, tol, (), rhs_shift)


def exp_family_check(
    n: int,
    alpha: Sequence[Scalar],
    beta: Scalar,
    c: Sequence[Scalar],
    s: MultiIndex | Sequence[int],
    rhs_form: str = "corrected",
    *,
    r: int | None = None,
    tol: float = DEFAULT_TOL,
    rhs_shift: Scalar | None = None,
) -> VerificationReport:
    """Reduction for the exponential family f_i = e^(alpha_i x),
    g = e^(beta x).  Fully combinatorial:

        LHS = sum_{|k|=n} multinomial(n,k) prod_i c_i^(k_i) (alpha_i + k_i beta)^(s_i)

    Two right-hand forms are offered.  ``corrected`` (the default) uses
    n! * beta^n * prod(c^s), which is what substituting the family into the
    constant-multiples identity gives, and what the two-function special
    case states.  ``as_printed`` uses multinomial(n,s) * beta^n * prod(c^s),
    an alternative form that disagrees with the corrected one whenever
    multinomial(n, s) != n!; it is kept so the discrepancy can be exhibited
    rather than suppressed.
    """
    if rhs_form not in ("corrected", "as_printed"):
        raise ValueError(f"rhs_form must be 'corrected' or 'as_printed', got {rhs_form!r}")
    r, c, s, params = _family_common("exp_family", n, alpha, beta, c, s, r)
    params["rhs_form"] = rhs_form
    mode = _family_mode(alpha, beta, c)
    alpha = [_lift(a, mode) for a in alpha]
    beta = _lift(beta, mode)
    c = [_lift(ci, mode) for ci in c]
    pre = _check_family_pre("exp_family", params, mode, tol, c, s, n)
    if pre is not None:
        return pre

    lhs = zero(mode)
    scale = zero(mode)
    for k in compositions(n, r):
        term = _lift(multinomial(n, k), mode)
        for i in range(r):
            term = term * c[i] ** k[i]
            term = term * (alpha[i] + beta * k[i]) ** s[i]
        lhs = lhs + term
        scale = scale + abs(term)

    c_weight = one(mode)
    for i in range(r):
        c_weight = c_weight * c[i] ** s[i]
    corrected = _lift(factorial(n), mode) * beta ** n * c_weight
    printed = _lift(multinomial(n, s), mode) * beta ** n * c_weight

    if rhs_form == "corrected":
        rhs = corrected
        notes = (f"as_printed rhs would be {printed.as_text()}",)
    else:
        rhs = printed
        notes = (
            "as_printed rhs uses multinomial(n,s) where the derivation from the "
            f"constant-multiples identity gives n!; corrected rhs would be {corrected.as_text()}",
        )
    return _finish("exp_family", params, mode, lhs, rhs, scale, tol, notes, rhs_shift)


def zero_power_lemma_check(
    f: Expr,
    n: int,
    x0: Scalar,
    *,
    tol: float = DEFAULT_TOL,
    rhs_shift: Scalar | None = None,
) -> VerificationReport:
    """Supporting lemma: for f with f(x0) = 0, every derivative of f^n below
    order n vanishes at x0 and the order-n derivative equals n! * f'(x0)^n.

    The report's lhs/rhs compare the order-n derivative; the lower orders
    are folded into the verdict (any nonzero one fails, with a note).
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    params = {"f": to_text(f), "n": str(n), "x0": x0.as_text()}
    x0, mode = _mode_for(x0, (f,))
    fjet = eval_jet(f, x0, n)
    fval = fjet.value
    if not _sum_is_zero(fval, abs(fval), mode):
        return _precondition_violated(
            "zero_power_lemma", params, mode, tol,
            f"hypothesis failed: f(x0) is {fval.as_text()}, not 0",
        )

    power = fjet ** n
    lows = [power.derivative(k) for k in range(n)]
    lhs = power.derivative(n)
    rhs = _lift(factorial(n), mode) * (fjet.derivative(1) ** n if n >= 1 else one(mode))

    scale = abs(lhs)
    for low in lows:
        scale = scale + abs(low)

    report = _finish("zero_power_lemma", params, mode, lhs, rhs, scale, tol, (), rhs_shift)
    if mode == "exact":
        bad = [k for k, low in enumerate(lows) if not low == 0]
    else:
        limit = tol * max(1.0, float(scale))
        bad = [k for k, low in enumerate(lows) if abs(float(low)) > limit]
    if bad:
        values = ",".join(lows[k].as_text() for k in bad)
        report = replace(
            report,
            verdict="fail",
            notes=report.notes + (f"derivatives of f^n at orders {bad} are nonzero: {values}",),
        )
    return report


# Randomized sweeps ---------------------------------------------------------


@dataclass(frozen=True)
class SweepConfig:
    """Configuration for a seeded randomized sweep.

    Instances are generated so the checked identity's hypothesis holds by
    construction (e.g. the last g is the negated sum of the others); with
    ``negative`` set, the hypothesis is deliberately broken by adding 1, so
    every trial must come back ``precondition_violated``.
    """

    seed: int = 0
    trials: int = 10
    max_n: int = 4
    max_r: int = 3
    coeff_bound: int = 4
    degree_bound: int = 3
    identities: tuple[str, ...] = IDENTITIES
    negative: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "identities", tuple(self.identities))
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.max_n < 0 or self.max_r < 2:
            raise ValueError("need max_n >= 0 and max_r >= 2")
        if self.coeff_bound < 1 or self.degree_bound < 0:
            raise ValueError("need coeff_bound >= 1 and degree_bound >= 0")
        if not self.identities:
            raise ValueError("identity set must not be empty")
        for name in self.identities:
            if name not in IDENTITIES:
                raise ValueError(f"unknown identity {name!r}")
            if self.negative and name not in PERTURBABLE_IDENTITIES:
                raise ValueError(f"identity {name!r} has no hypothesis to perturb")


@dataclass(frozen=True)
class SweepSummary:
    config: SweepConfig
    total: int
    counts: dict[str, int]
    per_identity: dict[str, dict[str, int]]
    first_failure: VerificationReport | None


def sweep(config: SweepConfig) -> SweepSummary:
    """Run ``config.trials`` seeded random instances, cycling through the
    configured identities.

    Trial t draws from ``random.Random(f"{seed}:{t}")``; summaries therefore
    do not depend on evaluation order, and a parallel driver splitting
    trials across workers would reproduce them byte for byte.
    """
    counts = {"pass": 0, "fail": 0, "precondition_violated": 0}
    per_identity = {
        name: {"pass": 0, "fail": 0, "precondition_violated": 0}
        for name in config.identities
    }
    first_failure: VerificationReport | None = None
    for t in range(config.trials):
        identity = config.identities[t % len(config.identities)]
        rng = random.Random(f"{config.seed}:{t}")
        report = _random_trial(identity, rng, config)
        counts[report.verdict] += 1
        per_identity[identity][report.verdict] += 1
        if report.verdict != "pass" and first_failure is None:
            first_failure = report
    return SweepSummary(
        config=config,
        total=config.trials,
        counts=counts,
        per_identity=per_identity,
        first_failure=first_failure,
    )


def _rand_fraction(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _rand_scalar(rng: random.Random, bound: int) -> Scalar:
    return Scalar(_rand_fraction(rng, bound))


def _rand_poly(rng: random.Random, degree_bound: int, coeff_bound: int) -> Expr:
    degree = rng.randint(0, degree_bound)
    terms: Expr = const(0)
    for j in range(degree + 1):
        coeff = _rand_fraction(rng, coeff_bound)
        terms = add(terms, mul(const(Scalar(coeff)), pow_int(X, j)))
    return terms


def _rand_split(rng: random.Random, total: int, parts: int) -> MultiIndex:
    entries = []
    remaining = total
    for _ in range(parts - 1):
        v = rng.randint(0, remaining)
        entries.append(v)
        remaining -= v
    entries.append(remaining)
    return MultiIndex(tuple(entries))


def _balanced_scalars(rng: random.Random, r: int, bound: int, broken: bool) -> tuple[Scalar, ...]:
    head = [_rand_fraction(rng, bound) for _ in range(r - 1)]
    last = -sum(head, Fraction(0))
    if broken:
        last += 1
    return tuple(Scalar(v) for v in head + [last])


def _random_trial(identity: str, rng: random.Random, config: SweepConfig) -> VerificationReport:
    n = rng.randint(0, config.max_n)
    broken = config.negative
    poly = lambda: _rand_poly(rng, config.degree_bound, config.coeff_bound)  # noqa: E731
    point = lambda: _rand_scalar(rng, config.coeff_bound)  # noqa: E731

    if identity == "theorem1":
        r = rng.randint(2, config.max_r)
        f = tuple(poly() for _ in range(r))
        g_head = [poly() for _ in range(r - 1)]
        g_last: Expr = const(0)
        for e in g_head:
            g_last = add(g_last, e)
        g_last = neg(g_last)
        if broken:
            g_last = add(g_last, const(1))
        s = _rand_split(rng, rng.randint(0, n), r)
        inst = TheoremInstance(n=n, r=r, f=f, g=tuple(g_head + [g_last]), s=s, x0=point())
        return theorem1_verify(inst)
    if identity == "corollary2":
        r = rng.randint(2, config.max_r)
        f = tuple(poly() for _ in range(r))
        c = _balanced_scalars(rng, r, config.coeff_bound, broken)
        s = _rand_split(rng, rng.randint(0, n), r)
        return corollary2_verify(n, f, poly(), c, s, point())
    if identity == "symmetric_pair":
        p = rng.randint(0, n)
        return symmetric_pair_verify(n, p, poly(), poly(), poly(), point())
    if identity == "baran":
        return baran_verify(n, poly(), poly(), point())
    if identity == "leibniz_product":
        return leibniz_product_verify(n, poly(), poly(), point())
    if identity == "power_family":
        r = rng.randint(2, config.max_r)
        alpha = tuple(_rand_scalar(rng, config.coeff_bound) for _ in range(r))
        beta = _rand_scalar(rng, config.coeff_bound)
        c = _balanced_scalars(rng, r, config.coeff_bound, broken)
        s = _rand_split(rng, n, r)
        return power_family_check(n, alpha, beta, c, s)
    if identity == "exp_family":
        r = rng.randint(2, config.max_r)
        alpha = tuple(_rand_scalar(rng, config.coeff_bound) for _ in range(r))
        beta = _rand_scalar(rng, config.coeff_bound)
        c = _balanced_scalars(rng, r, config.coeff_bound, broken)
        s = _rand_split(rng, n, r)
        return exp_family_check(n, alpha, beta, c, s)
    if identity == "zero_power_lemma":
        x0 = point()
        h = poly()
        f = sub(h, const(eval_scalar(h, x0)))
        if broken:
            f = add(f, const(1))
        return zero_power_lemma_check(f, n, x0)
    raise ValueError(f"unknown identity {identity!r}")
