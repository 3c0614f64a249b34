"""Closed-form roots of a complex monic cubic."""
from __future__ import annotations

import cmath
from functools import cmp_to_key

_OMEGA = cmath.exp(2j * cmath.pi / 3)


def polyval(coeffs, x):
    """Evaluate x^3 + a x^2 + b x + c by Horner's rule."""
    a, b, c = coeffs
    return ((x + a) * x + b) * x + c


def _newton(coeffs, x, steps):
    a, b, _ = coeffs
    value = abs(polyval(coeffs, x))
    for _ in range(steps):
        deriv = (3 * x + 2 * a) * x + b
        if deriv == 0:
            break
        trial = x - polyval(coeffs, x) / deriv
        # near a multiple root the derivative is tiny and a step can overshoot
        trial_value = abs(polyval(coeffs, trial))
        if not trial_value < value:
            break
        x, value = trial, trial_value
    return x


def solve_monic_cubic(a: complex, b: complex, c: complex, polish: int = 2) -> list[complex]:
    """Roots of x^3 + a x^2 + b x + c = 0 (Cardano, then Newton polish).

    The cube-root branch is chosen to avoid cancellation in u^3 = -q/2 +- sqrt(D).
    Roots come back unsorted.
    """
    a, b, c = complex(a), complex(b), complex(c)
    shift = a / 3
    p = b - a * a / 3
    q = 2 * a**3 / 27 - a * b / 3 + c
    s = cmath.sqrt(q * q / 4 + p**3 / 27)
    w1, w2 = -q / 2 + s, -q / 2 - s
    w = w1 if abs(w1) >= abs(w2) else w2
    if w == 0:
        zs = [0j, 0j, 0j]
    else:
        u = w ** (1 / 3)
        zs = []
        for k in range(3):
            uk = u * _OMEGA**k
            zs.append(uk - p / (3 * uk))
    return [_newton((a, b, c), z - shift, polish) for z in zs]


def sort_roots(roots, rel_tie: float = 1e-12) -> list[complex]:
    """Descending real part; near-equal real parts ordered by descending imaginary part."""
    scale = max((abs(r) for r in roots), default=0.0) or 1.0

    def cmp(x, y):
        if abs(x.real - y.real) > rel_tie * scale:
            return -1 if x.real > y.real else 1
        if x.imag != y.imag:
            return -1 if x.imag > y.imag else 1
        return 0

    return sorted(roots, key=cmp_to_key(cmp))
