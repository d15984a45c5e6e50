"""Falsify real stability of polynomials with exact zero certificates.

A real-coefficient polynomial is real stable when it has no zero with every
coordinate in the open upper half-plane.  Substituting real values for some
variables preserves stability (or collapses to zero), and a univariate real
stable polynomial is exactly a real-rooted one, so two exact attacks work:

  * probe: fix all but one variable at small random rationals and test the
    restriction for real-rootedness with Sturm sequences; a quadratic
    failure whose |discriminant| is a rational square yields a closed-form
    upper-half-plane root;
  * solve: fix all but two variables at rationals, set one of the remaining
    pair to a small Gaussian rational above the real axis, and solve the
    last variable exactly when it appears linearly; a solution above the
    axis is an exact zero certificate.

When only a degree>2 real-rootedness failure is found, that restriction is
itself reported as a weaker but still machine-checkable witness.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonpositiveWeight, VariableMismatch, ZeroPolynomial
from .polynomials import (
    GaussianRational,
    Polynomial,
    is_real_rooted,
    uni_trim,
)


@dataclass(frozen=True)
class ZeroCertificate:
    """Exact witness of non-stability.

    After substituting the real values, the polynomial is not identically
    zero, yet vanishes at `hpoint`, whose coordinates all have strictly
    positive imaginary part.
    """

    real_substitutions: dict[int, Fraction]
    hpoint: dict[int, GaussianRational]


@dataclass(frozen=True)
class RealRootednessViolation:
    """A univariate restriction at real points that is not real-rooted.

    Weaker than a ZeroCertificate (no explicit zero is exhibited) but still
    exact: stability would force this restriction to be real-rooted.
    """

    real_substitutions: dict[int, Fraction]
    free: int
    coefficients: tuple[Fraction, ...]


@dataclass(frozen=True)
class FalsifyNotFound:
    trials: int


FalsifyResult = ZeroCertificate | RealRootednessViolation | FalsifyNotFound

# Real substitutions live on a small grid: counterexamples in this problem
# family sit at tiny rational points, and small values keep arithmetic cheap.
REAL_GRID: tuple[Fraction, ...] = tuple(
    sorted({Fraction(k, d) for d in (1, 2, 3, 4) for k in range(-3 * d, 3 * d + 1)})
)

H_GRID: tuple[GaussianRational, ...] = tuple(
    GaussianRational(Fraction(a_num, 2), Fraction(b_num, 2))
    for a_num in (-4, -2, -1, 0, 1, 2, 4)
    for b_num in (1, 2, 4)
)


def _sqrt_exact(value: Fraction) -> Fraction | None:
    """Exact rational square root, or None if irrational."""
    if value < 0:
        return None
    num = math.isqrt(value.numerator)
    den = math.isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def verify_certificate(p: Polynomial, cert: ZeroCertificate) -> bool:
    """Exact replay of the stability definition.

    True iff the substitution/hpoint variables partition the polynomial's
    variables, every hpoint coordinate lies strictly above the real axis,
    the restriction by the real substitutions is not identically zero, and
    the restricted polynomial evaluates to exactly zero at the hpoint.
    """
    real_vars = set(cert.real_substitutions)
    h_vars = set(cert.hpoint)
    if real_vars & h_vars or real_vars | h_vars != set(range(p.nvars)):
        raise VariableMismatch("certificate variables must partition the polynomial's variables")
    if not h_vars:
        return False
    if any(not z.in_upper_half_plane() for z in cert.hpoint.values()):
        return False
    restricted = p
    for v, value in cert.real_substitutions.items():
        restricted = restricted.substitute_value(v, value)
    if restricted.is_zero():
        return False
    point = [GaussianRational() for _ in range(p.nvars)]
    for v, value in cert.real_substitutions.items():
        point[v] = GaussianRational(Fraction(value), Fraction(0))
    for v, z in cert.hpoint.items():
        point[v] = z
    return p.eval_complex(point).is_zero()


def verify_violation(p: Polynomial, witness: RealRootednessViolation) -> bool:
    """Check that the recorded restriction is genuine and not real-rooted."""
    expected = set(range(p.nvars)) - {witness.free}
    if set(witness.real_substitutions) != expected:
        raise VariableMismatch("violation substitutions must cover all variables but the free one")
    coeffs = p.restrict_univariate(dict(witness.real_substitutions), witness.free)
    return tuple(coeffs) == tuple(uni_trim(list(witness.coefficients))) and not is_real_rooted(coeffs)


def falsify(p: Polynomial, trials: int = 1000, seed: int = 0) -> FalsifyResult:
    """Search for an exact upper-half-plane zero of a nonzero polynomial.

    Deterministic for fixed (seed, trials): trial t draws everything from
    its own generator seeded by (seed, t), so results do not depend on
    scheduling.  Returns the first exact certificate found; failing that,
    the first real-rootedness violation; failing that, NotFound.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot falsify the zero polynomial")
    present = sorted({v for m in p.terms for v, _ in m})
    if not present:
        return FalsifyNotFound(trials)
    weak: RealRootednessViolation | None = None
    for t in range(trials):
        rng = random.Random(seed * 1_000_003 + t)
        use_solver = len(present) >= 2 and rng.random() < 0.5
        if use_solver:
            cert = _linear_solve_trial(p, present, rng)
            if cert is not None:
                return cert
        else:
            found = _univariate_trial(p, present, rng)
            if isinstance(found, ZeroCertificate):
                return found
            if found is not None and weak is None:
                weak = found
    return weak if weak is not None else FalsifyNotFound(trials)


def _univariate_trial(
    p: Polynomial, present: list[int], rng: random.Random
) -> ZeroCertificate | RealRootednessViolation | None:
    free = rng.choice(present)
    assignment = {v: rng.choice(REAL_GRID) for v in range(p.nvars) if v != free}
    coeffs = p.restrict_univariate(assignment, free)
    if not coeffs or is_real_rooted(coeffs):
        return None
    if len(coeffs) == 3:
        c0, c1, c2 = coeffs
        disc = c1 * c1 - 4 * c2 * c0
        root_disc = _sqrt_exact(-disc)
        if root_disc is not None:
            cert = ZeroCertificate(
                real_substitutions=assignment,
                hpoint={
                    free: GaussianRational(-c1 / (2 * c2), abs(root_disc / (2 * c2)))
                },
            )
            if verify_certificate(p, cert):
                return cert
    return RealRootednessViolation(assignment, free, tuple(coeffs))


def _linear_solve_trial(
    p: Polynomial, present: list[int], rng: random.Random
) -> ZeroCertificate | None:
    h_var, solve_var = rng.sample(present, 2)
    assignment = {v: rng.choice(REAL_GRID) for v in range(p.nvars) if v not in (h_var, solve_var)}
    h_value = rng.choice(H_GRID)
    gaussian_assignment = {
        v: GaussianRational(Fraction(value), Fraction(0)) for v, value in assignment.items()
    }
    gaussian_assignment[h_var] = h_value
    coeffs = p.restrict_gaussian(gaussian_assignment, solve_var)
    if len(coeffs) != 2:
        return None
    root = (-coeffs[0]) / coeffs[1]
    if not root.in_upper_half_plane():
        return None
    cert = ZeroCertificate(
        real_substitutions=assignment,
        hpoint={h_var: h_value, solve_var: root},
    )
    if verify_certificate(p, cert):
        return cert
    return None


def k4_discriminant(e1: Fraction, e2: Fraction, e3: Fraction) -> Polynomial:
    """Quadratic form deciding stability of the apex-normalized K4.

    With the three apex edges scaled to weight 1 and opposite edges e1, e2,
    e3, the spanning polynomial is quadratic in the apex variable; this is
    its discriminant as a form in the other three variables.  It takes the
    value -3 at x_i = 1/(e_{i+1} - e_{i+2}) whenever the e_i are pairwise
    distinct, which certifies rejection.
    """
    e1, e2, e3 = Fraction(e1), Fraction(e2), Fraction(e3)
    if e1 <= 0 or e2 <= 0 or e3 <= 0:
        raise NonpositiveWeight("K4 edge weights must be positive")
    d1, d2, d3 = e2 - e3, e3 - e1, e1 - e2
    terms = {
        ((0, 2),): d1 * d1,
        ((1, 2),): d2 * d2,
        ((2, 2),): d3 * d3,
        ((0, 1), (1, 1)): -2 * d1 * d2,
        ((1, 1), (2, 1)): -2 * d2 * d3,
        ((0, 1), (2, 1)): -2 * d3 * d1,
    }
    return Polynomial(terms, 3)
