"""Exact isolation of positive real polynomial roots.

Coefficients are converted to Fractions (binary floats convert exactly), so
every Descartes count and every bisection sign is rigorous for the
polynomial actually given.  The pipeline is

    squarefree decomposition (Yun)  ->  per-factor root isolation
    (Descartes/bisection on dyadic intervals)  ->  refinement,

and the caller learns each positive root together with the parity of its
multiplicity, which is what sign-change analysis needs: the sign of the
polynomial flips only at roots of odd multiplicity.

Polynomials are lists of Fractions, low degree first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["IsolatedRoot", "positive_roots", "cauchy_bound", "root_magnitude_bound"]

_MAX_DEPTH = 160


# ---------------------------------------------------------------------------
# exact polynomial arithmetic
# ---------------------------------------------------------------------------


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _degree(p: Sequence[Fraction]) -> int:
    return len(p) - 1


def _derivative(p: Sequence[Fraction]) -> list[Fraction]:
    return _trim([k * c for k, c in enumerate(p)][1:])


def _eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _divmod_exact(num: Sequence[Fraction], den: Sequence[Fraction]) -> list[Fraction]:
    """Quotient of an exact division (remainder must vanish)."""
    num = list(num)
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    inv_lead = 1 / den[-1]
    for k in range(len(q) - 1, -1, -1):
        q[k] = num[k + len(den) - 1] * inv_lead
        if q[k] != 0:
            for j, c in enumerate(den):
                num[k + j] -= q[k] * c
    if any(c != 0 for c in num[: len(den) - 1]):
        raise ArithmeticError("division was not exact")
    return _trim(q)


def _rem(num: Sequence[Fraction], den: Sequence[Fraction]) -> list[Fraction]:
    num = list(num)
    inv_lead = 1 / den[-1]
    for k in range(len(num) - len(den), -1, -1):
        f = num[k + len(den) - 1] * inv_lead
        if f != 0:
            for j, c in enumerate(den):
                num[k + j] -= f * c
    return _trim(num[: len(den) - 1])


def _monic(p: Sequence[Fraction]) -> list[Fraction]:
    lead = p[-1]
    return [c / lead for c in p]


def _gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _rem(a, b)
    if not a:
        return []
    return _monic(a)


# Two fixed Mersenne primes for the modular squarefree certificate.
_SQF_PRIMES = (2**61 - 1, 2**31 - 1)


def _provably_squarefree(p: Sequence[Fraction]) -> bool:
    """Rigorous one-sided squarefree test by a modular gcd.

    Clear denominators and reduce modulo a prime q that does not divide
    the leading coefficient.  Any true factor G of gcd(p, p') over Z[x]
    has its leading coefficient dividing lead(p), so its image modulo q
    keeps full degree and divides the modular gcd.  A constant modular
    gcd therefore proves p squarefree; anything else falls back to the
    exact decomposition.
    """
    scale = math.lcm(*(c.denominator for c in p))
    ints = [int(c * scale) for c in p]
    for q in _SQF_PRIMES:
        if ints[-1] % q != 0:
            return _gcd_is_constant_mod(ints, q)
    return False


def _gcd_is_constant_mod(ints: list[int], q: int) -> bool:
    def trim(v: list[int]) -> list[int]:
        while v and v[-1] == 0:
            v.pop()
        return v

    a = trim([c % q for c in ints])
    b = trim([(k * c) % q for k, c in enumerate(ints)][1:])
    while b:
        if len(b) == 1:
            return True
        inv = pow(b[-1], q - 2, q)
        r = list(a)
        while len(r) >= len(b):
            f = (r[-1] * inv) % q
            if f:
                shift = len(r) - len(b)
                for i, c in enumerate(b[:-1]):
                    r[shift + i] = (r[shift + i] - f * c) % q
            r.pop()
            trim(r)
        a, b = b, trim(r)
    return len(a) == 1


def _squarefree_factors(p: Sequence[Fraction]) -> list[tuple[int, list[Fraction]]]:
    """Yun's algorithm: p = prod A_i^i with the A_i squarefree and coprime.

    Returns [(multiplicity, factor), ...] for the nonconstant factors.
    A fast modular certificate short-circuits the generic (squarefree)
    case first; the exact gcd cascade below is quadratic in the degree
    with heavy coefficient growth, which high-degree inputs cannot
    afford.
    """
    if _degree(p) >= 1 and _provably_squarefree(p):
        return [(1, _monic(list(p)))]
    dp = _derivative(p)
    a = _gcd(p, dp)
    if _degree(a) < 1:
        return [(1, _monic(list(p)))]
    out: list[tuple[int, list[Fraction]]] = []
    b = _divmod_exact(p, a)
    c = _divmod_exact(dp, a)
    d = _trim([ci - bi for ci, bi in _zip_pad(c, _derivative(b))])
    i = 1
    while _degree(b) > 0:
        ai = _gcd(b, d) if d else _monic(b)
        if _degree(ai) > 0:
            out.append((i, ai))
        b = _divmod_exact(b, ai)
        c = _divmod_exact(d, ai) if d else []
        d = _trim([ci - bi for ci, bi in _zip_pad(c, _derivative(b))])
        i += 1
    return out


def _zip_pad(a: Sequence[Fraction], b: Sequence[Fraction]):
    n = max(len(a), len(b))
    for k in range(n):
        va = a[k] if k < len(a) else Fraction(0)
        vb = b[k] if k < len(b) else Fraction(0)
        yield va, vb


# ---------------------------------------------------------------------------
# Descartes / bisection isolation
# ---------------------------------------------------------------------------


def _variations(p: Sequence[Fraction]) -> int:
    count = 0
    last = 0
    for c in p:
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if last != 0 and s != last:
            count += 1
        last = s
    return count


def _taylor_shift_1(p: Sequence[Fraction]) -> list[Fraction]:
    """p(x+1), by repeated synthetic addition (exact, O(n^2))."""
    q = list(p)
    n = len(q)
    for i in range(1, n):
        for j in range(n - 2, i - 2, -1):
            q[j] += q[j + 1]
    return _trim(q)


def _count_01(p: Sequence[Fraction]) -> int:
    """Descartes bound for the number of roots in the open interval (0,1)."""
    rev = list(reversed(p))
    return _variations(_taylor_shift_1(rev))


def _half_left(p: Sequence[Fraction]) -> list[Fraction]:
    return _trim([c / 2**k for k, c in enumerate(p)])


def _isolate_01(p: list[Fraction]) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for the roots of a squarefree p inside (0,1).

    Returns disjoint intervals (a, b], each containing exactly one simple
    root; an exact dyadic root x is reported as the point interval (x, x).
    """
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(Fraction(0), Fraction(1), p, 0)]
    while stack:
        lo, hi, q, depth = stack.pop()
        v = _count_01(q)
        if v == 0:
            continue
        if v == 1:
            out.append((lo, hi))
            continue
        if depth >= _MAX_DEPTH:
            raise RuntimeError("root isolation exceeded depth limit")
        mid = (lo + hi) / 2
        left = _half_left(q)
        right = _taylor_shift_1(left)
        if right and right[0] == 0:
            out.append((mid, mid))
            right = right[1:]
        stack.append((lo, mid, left, depth + 1))
        stack.append((mid, hi, right, depth + 1))
    return sorted(out)


def cauchy_bound(p: Sequence[Fraction]) -> Fraction:
    """1 + max |a_i / a_n|: every root has magnitude below this."""
    lead = abs(p[-1])
    if lead == 0:
        raise ValueError("leading coefficient must be nonzero")
    worst = max((abs(c) for c in p[:-1]), default=Fraction(0))
    return 1 + worst / lead


def _log_fraction(x: Fraction) -> float:
    # math.log takes arbitrary-size ints, so this never overflows
    return math.log(x.numerator) - math.log(x.denominator)


def root_magnitude_bound(p: Sequence[Fraction]) -> Fraction:
    """A strict upper bound on root magnitudes, Cauchy or Fujiwara.

    The Cauchy bound degrades badly when the leading coefficient is tiny
    against the rest (a factor k! for Laguerre expansions); Fujiwara's
    2 max_k |a_{n-k}/a_n|^{1/k} takes the k-th root and stays near the
    true root region.  The k-th roots are taken in floating point and
    padded, which keeps the bound rigorous.
    """
    lead = abs(p[-1])
    if lead == 0:
        raise ValueError("leading coefficient must be nonzero")
    cauchy = cauchy_bound(p)
    log_lead = _log_fraction(lead)
    worst = -math.inf
    n = _degree(p)
    for k in range(1, n + 1):
        c = abs(p[n - k])
        if c == 0:
            continue
        worst = max(worst, (_log_fraction(c) - log_lead) / k)
    if worst == -math.inf:
        return Fraction(1)
    log_fujiwara = math.log(2.0) + worst
    # compare in logs: the Cauchy bound can overflow a float
    if not math.isfinite(log_fujiwara) or log_fujiwara >= _log_fraction(cauchy):
        return cauchy
    return Fraction(2.0 * math.exp(worst) * (1.0 + 1e-9))


@dataclass(frozen=True)
class IsolatedRoot:
    """One positive real root: refined bracket and multiplicity."""

    lo: float
    hi: float
    multiplicity: int

    @property
    def sign_change(self) -> bool:
        return self.multiplicity % 2 == 1


def _refine(
    factor: list[Fraction], lo: Fraction, hi: Fraction, rel_tol: float
) -> tuple[Fraction, Fraction]:
    """Shrink an isolating bracket of a simple root by exact-sign bisection.

    The interval holds exactly one root of `factor`, strictly inside.  An
    endpoint may still evaluate to zero when it happens to be a different
    (already reported) root, so the bisection anchors on whichever endpoint
    has a usable sign.
    """
    if lo == hi:
        return lo, hi
    f_lo = _eval(factor, lo)
    f_hi = _eval(factor, hi)
    if f_lo == 0 and f_hi == 0:
        raise RuntimeError("both bracket endpoints are roots")
    while (hi - lo) > rel_tol * max(1, abs(hi)):
        mid = (lo + hi) / 2
        f_mid = _eval(factor, mid)
        if f_mid == 0:
            return mid, mid
        if f_lo != 0:
            if (f_mid > 0) == (f_lo > 0):
                lo, f_lo = mid, f_mid
            else:
                hi, f_hi = mid, f_mid
        else:
            if (f_mid > 0) == (f_hi > 0):
                hi, f_hi = mid, f_mid
            else:
                lo, f_lo = mid, f_mid
    return lo, hi


def positive_roots(coeffs: Sequence[float | Fraction], rel_tol: float = 1e-12) -> list[IsolatedRoot]:
    """All real roots in (0, inf) of sum_k coeffs[k] x^k, with multiplicity.

    Roots at 0 are dropped.  Brackets are refined until their width is at
    most rel_tol relative to the root location.  Raises on the zero
    polynomial.
    """
    p = _trim([Fraction(c) for c in coeffs])
    if not p:
        raise ValueError("zero polynomial")
    # strip the root at 0
    k0 = 0
    while p[k0] == 0:
        k0 += 1
    p = p[k0:]
    if _degree(p) < 1:
        return []
    bound = root_magnitude_bound(p)
    out: list[IsolatedRoot] = []
    for mult, factor in _squarefree_factors(p):
        if _degree(factor) < 1:
            continue
        # map (0, bound) to (0, 1); the magnitude bound is strict
        scaled = [c * bound**k for k, c in enumerate(factor)]
        for lo01, hi01 in _isolate_01(scaled):
            lo, hi = _refine(factor, lo01 * bound, hi01 * bound, rel_tol)
            out.append(IsolatedRoot(float(lo), float(hi), mult))
    out.sort(key=lambda root: root.lo)
    return out
