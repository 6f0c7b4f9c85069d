"""Elliptic kernel: AGM, complete integrals, nome, thetas, singular moduli.

Conventions. Every operation takes the *modulus* k, never the parameter
m = k^2 (software libraries that write EllipticK[m] expect m; here
``ell_k(k)`` corresponds to EllipticK[k^2]). The complementary modulus is
k' = sqrt(1 - k^2). The singular modulus k_r is the unique k in (0,1) with
K(k')/K(k) = sqrt(r); it is computed from theta constants at the nome
q = exp(-pi*sqrt(r)).

Error model. Series are truncated with a geometric-tail majorant and each
operation carries 8 guard bits beyond the requested precision, so a returned
BigReal at ``prec`` bits is accurate to a few ulps (2^(-prec+4) for agm,
2^(-prec+8) for K/E and theta-derived quantities). Doubling ``prec`` must
reproduce any result to within 2^(-prec+8); the test suite enforces this.

All values are immutable after construction and all operations are pure
functions of their inputs, so contexts can be shared and evaluated in
parallel. The per-precision pi cache fills idempotently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .bigreal import BigReal, as_fraction, mpf_of, pi_bits, round_to
from .errors import DomainError, InsufficientPrecisionError

GUARD = 8

# headroom added on top of the strict underflow bound in precision hints
MINIMUM_HEADROOM = 64


def _prec_of(prec, *xs, default=None):
    if prec is not None:
        return int(prec)
    ps = [x.prec for x in xs if isinstance(x, BigReal)]
    if ps:
        return max(ps)
    if default is not None:
        return default
    raise ValueError("precision required when no BigReal argument is given")


def agm(a, b, prec: int | None = None) -> BigReal:
    """Common limit of the arithmetic-geometric iteration of (a, b).

    Terminates once |a_n - b_n| < 2^(-prec) * a_n; quadratic convergence
    makes the returned midpoint accurate to 2^(-prec+4). Requires a, b > 0.
    """
    prec = _prec_of(prec, a, b)
    wprec = prec + GUARD
    with mp.workprec(wprec):
        av, bv = mpf_of(a, wprec), mpf_of(b, wprec)
        if av <= 0 or bv <= 0:
            raise DomainError("agm requires positive arguments")
        eps = mpmath.mpf(2) ** (-prec)
        while abs(av - bv) >= eps * av:
            av, bv = (av + bv) / 2, mpmath.sqrt(av * bv)
        out = (av + bv) / 2
    return round_to(out, prec)


def _agm_with_side_sum(kv: mpmath.mpf, prec: int):
    """AGM of (1, k') plus the side sum S = sum 2^(n-1) c_n^2 with c_0 = k.

    Internal helper for K and E; assumes the current mp context is set by
    the caller and 0 <= k < 1.
    """
    av = mpmath.mpf(1)
    bv = mpmath.sqrt(1 - kv * kv)
    eps = mpmath.mpf(2) ** (-prec)
    side = kv * kv / 2  # 2^(-1) c_0^2
    n = 0
    while abs(av - bv) >= eps * av:
        c = (av - bv) / 2
        n += 1
        side += mpmath.mpf(2) ** (n - 1) * c * c
        av, bv = (av + bv) / 2, mpmath.sqrt(av * bv)
    return (av + bv) / 2, side


def ell_k(k, prec: int | None = None) -> BigReal:
    """Complete elliptic integral of the first kind, K(k) = pi/(2 agm(1, k')).

    Modulus convention: equals EllipticK[k^2] in parameter-based libraries.
    Accurate to 2^(-prec+8); requires 0 <= k < 1.
    """
    prec = _prec_of(prec, k)
    wprec = prec + 2 * GUARD
    with mp.workprec(wprec):
        kv = mpf_of(k, wprec)
        if kv < 0 or kv >= 1:
            raise DomainError(f"modulus must satisfy 0 <= k < 1, got {mpmath.nstr(kv, 8)}")
        m, _ = _agm_with_side_sum(kv, prec + GUARD)
        out = pi_bits(wprec) / (2 * m)
    return round_to(out, prec)


def ell_e(k, prec: int | None = None) -> BigReal:
    """Complete elliptic integral of the second kind via the AGM side sum.

    E = K * (1 - sum_{n>=0} 2^(n-1) c_n^2) where c_n are the AGM difference
    terms of agm(1, k') and c_0 = k. Accurate to 2^(-prec+8).
    """
    prec = _prec_of(prec, k)
    wprec = prec + 2 * GUARD
    with mp.workprec(wprec):
        kv = mpf_of(k, wprec)
        if kv < 0 or kv >= 1:
            raise DomainError(f"modulus must satisfy 0 <= k < 1, got {mpmath.nstr(kv, 8)}")
        m, side = _agm_with_side_sum(kv, prec + GUARD)
        out = pi_bits(wprec) / (2 * m) * (1 - side)
    return round_to(out, prec)


def nome(r, prec: int) -> BigReal:
    """The nome q = exp(-pi*sqrt(r)) for rational r > 0, accurate to 2^(-prec+4)."""
    rf = as_fraction(r)
    if rf <= 0:
        raise DomainError(f"r must be positive, got {rf}")
    wprec = prec + 2 * GUARD
    with mp.workprec(wprec):
        sr = mpmath.sqrt(mpmath.mpf(rf.numerator) / rf.denominator)
        out = mpmath.exp(-pi_bits(wprec) * sr)
    return round_to(out, prec)


def _theta_sum(qv: mpmath.mpf, prec: int, kind: int) -> mpmath.mpf:
    # theta2 = 2 q^(1/4) sum q^(n(n+1)); theta3/4 = 1 + 2 sum (+-1)^n q^(n^2).
    # Terms decay super-geometrically; stop once the next term is below
    # 2^(-prec-GUARD), which bounds the tail by twice that.
    eps = mpmath.mpf(2) ** (-(prec + GUARD))
    if qv == 0:
        return mpmath.mpf(0) if kind == 2 else mpmath.mpf(1)
    if kind == 2:
        s = mpmath.mpf(0)
        n = 0
        t = mpmath.mpf(1)  # q^(n(n+1)), updated by q^(2n+2)
        while True:
            s += t
            if t < eps:
                break
            t *= qv ** (2 * n + 2)
            n += 1
        return 2 * mpmath.root(qv, 4) * s
    s = mpmath.mpf(1)
    n = 1
    t = qv  # q^(n^2), updated by q^(2n+1)
    while True:
        if kind == 4 and n % 2 == 1:
            s -= 2 * t
        else:
            s += 2 * t
        if 2 * t < eps:
            break
        t *= qv ** (2 * n + 1)
        n += 1
    return s


def _theta(q, prec, kind) -> BigReal:
    prec = _prec_of(prec, q)
    wprec = prec + 2 * GUARD
    with mp.workprec(wprec):
        qv = mpf_of(q, wprec)
        if qv < 0 or qv >= 1:
            raise DomainError(f"nome must satisfy 0 <= q < 1, got {mpmath.nstr(qv, 8)}")
        out = _theta_sum(qv, prec, kind)
    return round_to(out, prec)


def theta2(q, prec: int | None = None) -> BigReal:
    """theta_2(q) = 2 sum_{n>=0} q^((n+1/2)^2), accurate to 2^(-prec+8)."""
    return _theta(q, prec, 2)


def theta3(q, prec: int | None = None) -> BigReal:
    """theta_3(q) = 1 + 2 sum_{n>=1} q^(n^2), accurate to 2^(-prec+8)."""
    return _theta(q, prec, 3)


def theta4(q, prec: int | None = None) -> BigReal:
    """theta_4(q) = 1 + 2 sum_{n>=1} (-1)^n q^(n^2), accurate to 2^(-prec+8)."""
    return _theta(q, prec, 4)


def eta_f(q, prec: int | None = None) -> BigReal:
    """Euler product f(-q) = prod_{n>=1} (1 - q^n) for 0 <= q < 1.

    Truncated once the geometric tail bound q^(n+1)/(1-q) on the remaining
    log-sum drops below 2^(-prec-8).
    """
    prec = _prec_of(prec, q)
    wprec = prec + 2 * GUARD
    with mp.workprec(wprec):
        qv = mpf_of(q, wprec)
        if qv < 0 or qv >= 1:
            raise DomainError(f"argument must satisfy 0 <= q < 1, got {mpmath.nstr(qv, 8)}")
        if qv == 0:
            return BigReal.of(1, prec)
        eps = mpmath.mpf(2) ** (-(prec + GUARD))
        one_minus_q = 1 - qv
        prod = mpmath.mpf(1)
        qn = mpmath.mpf(1)
        while True:
            qn *= qv
            prod *= 1 - qn
            if qn / one_minus_q < eps:
                break
    return round_to(prod, prec)


@dataclass(frozen=True)
class ModulusContext:
    """Per-r evaluation bundle: nome, singular modulus, complement, K and E.

    Invariants (enforced to working accuracy by construction and rechecked
    by the test suite): 0 < k < 1, k^2 + kprime^2 = 1 within 2^(-prec+8),
    and the defining property K(kprime)/K(k) = sqrt(r) within 2^(-prec+16).
    """

    r: Fraction
    q: BigReal
    k: BigReal
    kprime: BigReal
    big_k: BigReal
    big_e: BigReal
    prec: int

    def sqrt_r(self) -> BigReal:
        with mp.workprec(self.prec + GUARD):
            v = mpmath.sqrt(mpmath.mpf(self.r.numerator) / self.r.denominator)
        return round_to(v, self.prec)

    def defining_residual(self) -> BigReal:
        """|K(k')/K(k) - sqrt(r)|, the residual of the defining equation."""
        kk = ell_k(self.kprime, self.prec)
        with mp.workprec(self.prec + GUARD):
            v = abs(kk.value / self.big_k.value - self.sqrt_r().value)
        return round_to(v, self.prec)

    def series_argument(self) -> BigReal:
        """x = 4 k^2 k'^2, the argument of the associated hypergeometric series."""
        with mp.workprec(self.prec + GUARD):
            v = 4 * self.k.value ** 2 * self.kprime.value ** 2
        return round_to(v, self.prec)


def singular_modulus(r, prec: int) -> ModulusContext:
    """Build the ModulusContext for rational r > 0 at ``prec`` bits.

    k_r = theta2(q)^2/theta3(q)^2 with q = exp(-pi*sqrt(r)). Raises
    InsufficientPrecisionError when k_r^2 underflows below one ulp of 1
    (then kprime would round to exactly 1 and K(kprime) would be
    indistinguishable from a pole); the error carries a sufficient
    precision estimate instead of returning a silent zero.
    """
    rf = as_fraction(r)
    if rf <= 0:
        raise DomainError(f"r must be positive, got {rf}")
    wprec = prec + 4 * GUARD
    qb = nome(rf, wprec)
    with mp.workprec(wprec):
        qv = qb.value
        t2 = _theta_sum(qv, wprec, 2)
        t3 = _theta_sum(qv, wprec, 3)
        kv = (t2 / t3) ** 2
        if kv == 0 or (1 - kv * kv) == 1:
            # k_r ~ 4 exp(-pi sqrt(r)/2), so k_r^2 needs about pi*sqrt(r)/ln 2 bits
            need = math.ceil(math.pi * math.sqrt(float(rf)) / math.log(2)) + MINIMUM_HEADROOM
            raise InsufficientPrecisionError(
                f"singular modulus k_r indistinguishable from 0 at {prec} bits for r={rf}",
                required_bits=need,
            )
        kpv = mpmath.sqrt(1 - kv * kv)
    k = round_to(kv, prec)
    kprime = round_to(kpv, prec)
    big_k = ell_k(round_to(kv, wprec), prec)
    big_e = ell_e(round_to(kv, wprec), prec)
    return ModulusContext(r=rf, q=round_to(qv, prec), k=k, kprime=kprime,
                          big_k=big_k, big_e=big_e, prec=prec)


def dk_dk(ctx: ModulusContext) -> BigReal:
    """dK/dk evaluated on a context: E/(k(1-k^2)) - K/k."""
    with mp.workprec(ctx.prec + GUARD):
        kv = ctx.k.value
        v = ctx.big_e.value / (kv * (1 - kv * kv)) - ctx.big_k.value / kv
    return round_to(v, ctx.prec)


# Backwards-friendly alias matching the operation's usual typography.
dK_dk = dk_dk
