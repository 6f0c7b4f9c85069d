"""Exact differentiation of K-powers and the series-coefficient solver.

The generating function of the degree-p coefficient sequence c_p(n) is
F(z) = phi(z)^p with phi(z) = sum C(2n,n)^3 (z/64)^n and p = 2*nu. Under
z = 4 k^2 (1-k^2) (equivalently k^2 = (1 - sqrt(1-z))/2) one has
phi(z) = (2/pi)^2 K(k)^2, so F = (2/pi)^(2p) K(k)^(2p) and every z-derivative
of F is a polynomial in the formal symbols K, E with exact rational-function
coefficients in k:

    dK/dk = E/(k(1-k^2)) - K/k,      dE/dk = (E - K)/k,
    d/dz  = (dz/dk)^(-1) d/dk,       dz/dk = 8k(1 - 2k^2).

Differentiation preserves the total (K,E)-degree 2p.

KEPoly carries that representation exactly (no rounding anywhere in the
derivative stack). Substituting the alpha relation

    E = K (1 - a(r)/sqrt(r)) + pi/(4 K sqrt(r))

at k = k_r turns each z^m F^(m)(z) into a Laurent polynomial in K with even
exponents 0..2p and numeric coefficients (pi folded in); requiring every
positive K-power of sum A_m z^m F^(m) to vanish with A_0 = 1 yields a square
linear system of size 2*nu for A_1..A_{2nu}, and the surviving K^0 term is
g/pi^(2nu) after restoring the (2/pi)^(2p) prefactor. The solver reports the
residual of the eliminated coefficients and fails loudly on rank defects.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .alpha import AlphaValue, alpha_from_context
from .bigreal import BigReal, as_fraction, pi_bits, round_to
from .elliptic import GUARD, ModulusContext, singular_modulus
from .errors import DegenerateSystemError, DomainError, VerificationError

# ---------------------------------------------------------------------------
# exact univariate polynomials over Q (little-endian coefficient tuples)
# ---------------------------------------------------------------------------


def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class Poly:
    """Immutable univariate polynomial in the formal modulus symbol over Q."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, (int, Fraction)):
            coeffs = (coeffs,)
        self.coeffs = _trim(Fraction(c) for c in coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, o):
        a, b = self.coeffs, o.coeffs
        n = max(len(a), len(b))
        return Poly(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                          for i in range(n)))

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return Poly(tuple(c * o for c in self.coeffs))
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(tuple(out))

    def deriv(self) -> "Poly":
        return Poly(tuple(c * i for i, c in enumerate(self.coeffs) if i))

    def divmod(self, o: "Poly"):
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(1, len(rem) - len(o.coeffs) + 1)
        ob = o.coeffs
        while len(rem) >= len(ob) and rem:
            s = rem[-1] / ob[-1]
            d = len(rem) - len(ob)
            q[d] += s
            for i, c in enumerate(ob):
                rem[d + i] -= s * c
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(tuple(q)), Poly(tuple(rem))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return Poly(tuple(c / lead for c in self.coeffs))

    def gcd(self, o: "Poly") -> "Poly":
        a, b = self, o
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def eval_exact(self, x: Fraction) -> Fraction:
        v = Fraction(0)
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def eval_mpf(self, x: mpmath.mpf) -> mpmath.mpf:
        v = mpmath.mpf(0)
        for c in reversed(self.coeffs):
            v = v * x + mpmath.mpf(c.numerator) / c.denominator
        return v

    def __eq__(self, o):
        return isinstance(o, Poly) and self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly{self.coeffs}"


@dataclass(frozen=True)
class RatFunc:
    """Reduced rational function num/den over Q[k]; den monic and nonzero.

    Reduction divides out the gcd and rescales the denominator to be monic,
    which makes structural equality an exact equality test.
    """

    num: Poly
    den: Poly

    @staticmethod
    def of(num, den=None) -> "RatFunc":
        n = num if isinstance(num, Poly) else Poly(num)
        d = den if isinstance(den, Poly) else Poly(1 if den is None else den)
        if d.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if n.is_zero():
            return RatFunc(Poly(), Poly(1))
        g = n.gcd(d)
        if g.degree > 0:
            n = n.divmod(g)[0]
            d = d.divmod(g)[0]
        lead = d.coeffs[-1]
        if lead != 1:
            n = n * (Fraction(1) / lead)
            d = d * (Fraction(1) / lead)
        return RatFunc(n, d)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, o):
        return RatFunc.of(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return RatFunc.of(self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return RatFunc.of(self.num * o, self.den)
        return RatFunc.of(self.num * o.num, self.den * o.den)

    def __truediv__(self, o):
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc.of(self.num * o.den, self.den * o.num)

    def deriv(self) -> "RatFunc":
        return RatFunc.of(self.num.deriv() * self.den - self.num * self.den.deriv(),
                          self.den * self.den)

    def eval_mpf(self, x: mpmath.mpf) -> mpmath.mpf:
        dv = self.den.eval_mpf(x)
        if dv == 0:
            raise ZeroDivisionError("rational-function pole at the evaluation point")
        return self.num.eval_mpf(x) / dv


RF_ZERO = RatFunc.of(0)
RF_ONE = RatFunc.of(1)

# derivative tables: dK = DK_E*E + DK_K*K, dE = DE_E*E + DE_K*K
_DK_E = RatFunc.of(Poly((1,)), Poly((0, 1, 0, -1)))   # 1/(k - k^3)
_DK_K = RatFunc.of(Poly((-1,)), Poly((0, 1)))         # -1/k
_DE_E = RatFunc.of(Poly((1,)), Poly((0, 1)))          # 1/k
_DE_K = RatFunc.of(Poly((-1,)), Poly((0, 1)))         # -1/k

# z = 4k^2 - 4k^4 and dz/dk = 8k - 16k^3 as exact objects
_Z = RatFunc.of(Poly((0, 0, 4, 0, -4)))
_DZ = RatFunc.of(Poly((0, 8, 0, -16)))


class KEPoly:
    """Polynomial in the commuting formal symbols K, E over RatFunc coefficients.

    Stored as a map (i, j) -> coefficient of K^i E^j with zero entries pruned.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {key: c for key, c in (terms or {}).items() if not c.is_zero()}

    @staticmethod
    def monomial(i: int, j: int, coeff: RatFunc = RF_ONE) -> "KEPoly":
        if i < 0 or j < 0:
            raise ValueError("exponents must be nonnegative")
        return KEPoly({(i, j): coeff})

    @staticmethod
    def symbol_k() -> "KEPoly":
        return KEPoly.monomial(1, 0)

    @staticmethod
    def symbol_e() -> "KEPoly":
        return KEPoly.monomial(0, 1)

    def _acc(self, out, key, rf):
        if rf.is_zero():
            return
        if key in out:
            s = out[key] + rf
            if s.is_zero():
                del out[key]
            else:
                out[key] = s
        else:
            out[key] = rf

    def __add__(self, o: "KEPoly") -> "KEPoly":
        out = dict(self.terms)
        for key, c in o.terms.items():
            self._acc(out, key, c)
        return KEPoly(out)

    def __sub__(self, o: "KEPoly") -> "KEPoly":
        out = dict(self.terms)
        for key, c in o.terms.items():
            self._acc(out, key, c * Fraction(-1))
        return KEPoly(out)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            o = RatFunc.of(Poly((Fraction(o),)))
        if isinstance(o, RatFunc):
            return KEPoly({key: c * o for key, c in self.terms.items()})
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in o.terms.items():
                self._acc(out, (i1 + i2, j1 + j2), c1 * c2)
        return KEPoly(out)

    def is_zero(self) -> bool:
        return not self.terms

    def total_degrees(self) -> set[int]:
        return {i + j for (i, j) in self.terms}

    def eval_numeric(self, ctx: ModulusContext, prec: int | None = None) -> BigReal:
        """Numeric value with K, E, k taken from the context."""
        prec = ctx.prec if prec is None else prec
        return self._eval_triplet(ctx.k.value, ctx.big_k.value, ctx.big_e.value, prec)

    def eval_at_modulus(self, k, prec: int) -> BigReal:
        """Numeric value at an arbitrary modulus k in (0,1) (K, E computed)."""
        from .elliptic import ell_e, ell_k

        kb = k if isinstance(k, BigReal) else BigReal.of(k, prec + GUARD)
        Kv = ell_k(kb, prec + GUARD)
        Ev = ell_e(kb, prec + GUARD)
        return self._eval_triplet(kb.value, Kv.value, Ev.value, prec)

    def _eval_triplet(self, kv, Kv, Ev, prec: int) -> BigReal:
        with mp.workprec(prec + GUARD):
            v = mpmath.mpf(0)
            for (i, j), c in self.terms.items():
                v += c.eval_mpf(kv) * Kv ** i * Ev ** j
        return round_to(v, prec)

    def __eq__(self, o):
        return isinstance(o, KEPoly) and self.terms == o.terms

    def __repr__(self):
        body = " + ".join(f"[{c!r}] K^{i} E^{j}" for (i, j), c in sorted(self.terms.items()))
        return f"KEPoly({body or '0'})"


def diff_k(p: KEPoly) -> KEPoly:
    """Exact d/dk on a KEPoly; linear, obeys the product rule, and keeps
    the total (K,E)-degree of every term."""
    out: dict = {}
    acc = p._acc
    for (i, j), c in p.terms.items():
        acc(out, (i, j), c.deriv())
        if i:
            ci = c * Fraction(i)
            acc(out, (i - 1, j + 1), ci * _DK_E)
            acc(out, (i, j), ci * _DK_K)
        if j:
            cj = c * Fraction(j)
            acc(out, (i, j), cj * _DE_E)
            acc(out, (i + 1, j - 1), cj * _DE_K)
    return KEPoly(out)


@functools.lru_cache(maxsize=None)
def derivative_stack(nu: int) -> tuple[KEPoly, ...]:
    """[z^m (d/dz)^m K^(4nu)] for m = 0..2nu, exact.

    The physical object is (2/pi)^(4nu) times each entry; the prefactor is
    constant under d/dz, so it is reattached only when g is extracted.
    """
    if nu < 1:
        raise DomainError(f"nu must be a positive integer, got {nu}")
    stack = [KEPoly.monomial(4 * nu, 0)]
    f_m = stack[0]
    z_pow = RF_ONE
    for _ in range(2 * nu):
        f_m = diff_k(f_m) * (RF_ONE / _DZ)
        z_pow = z_pow * _Z
        stack.append(f_m * z_pow)
    return tuple(stack)


@dataclass(frozen=True)
class LaurentK:
    """Numeric Laurent polynomial in K.

    ``entries`` maps the K-exponent to its BigReal coefficient (powers of pi
    arising from substitution are folded into the coefficients);
    ``pi_power`` tracks a globally factored-out power of pi. Exponents share
    the parity of the substituted polynomial's homogeneous degree; the
    solver's inputs have even degree 4nu, so there they are even and lie in
    0..4nu.
    """

    entries: dict
    prec: int
    pi_power: int = 0

    def coefficient(self, e: int) -> BigReal:
        return self.entries.get(e, BigReal.of(0, self.prec))

    def eval_at(self, big_k: BigReal) -> BigReal:
        with mp.workprec(self.prec + GUARD):
            v = mpmath.mpf(0)
            for e, c in self.entries.items():
                v += c.value * big_k.value ** e
            if self.pi_power:
                v *= pi_bits(self.prec + GUARD) ** self.pi_power
        return round_to(v, self.prec)


def substitute_alpha(p: KEPoly, ctx: ModulusContext, a: AlphaValue) -> LaurentK:
    """Replace every E by K (1 - a/sqrt(r)) + pi/(4 K sqrt(r)) and evaluate
    the rational-function coefficients at k = k_r.

    For a homogeneous input of (K,E)-degree d the result has exponents of
    the same parity as d, collected with pi-powers folded in.
    """
    if ctx.r != a.r:
        raise DomainError(f"context is at r={ctx.r} but alpha at r={a.r}")
    prec = min(ctx.prec, a.prec)
    wprec = prec + 2 * GUARD
    with mp.workprec(wprec):
        kv = ctx.k.value
        sr = ctx.sqrt_r().value
        lam = 1 - a.value.value / sr          # coefficient of K in E
        mu = pi_bits(wprec) / (4 * sr)        # coefficient of 1/K in E
        out: dict = {}
        for (i, j), c in p.terms.items():
            cv = c.eval_mpf(kv)
            for t in range(j + 1):
                e = i + j - 2 * t
                val = cv * mpmath.binomial(j, t) * lam ** (j - t) * mu ** t
                out[e] = out.get(e, mpmath.mpf(0)) + val
    entries = {e: round_to(v, prec) for e, v in out.items() if v != 0}
    return LaurentK(entries=entries, prec=prec)


@dataclass(frozen=True)
class CoefficientSolution:
    """Solved A-coefficients for one (nu, r): A[0] = 1, len(A) = 2nu+1.

    ``residual`` is the largest leftover K-power coefficient after the
    solve (the quantities that the construction forces to vanish);
    ``rank`` is the size of the solved square system.
    """

    nu: int
    r: Fraction
    a_coeffs: tuple
    g: BigReal
    residual: BigReal
    rank: int
    prec: int


def solve_coefficients(nu: int, r, prec: int) -> CoefficientSolution:
    """Determine A_1..A_{2nu} and g so that sum A_m z^m F^(m)(z_r) = g/pi^(2nu).

    Builds the derivative stack exactly, substitutes the alpha relation at
    k_r, and solves the square linear system that kills every positive
    K-power (A_0 = 1). Raises DegenerateSystemError when the system is
    singular, and VerificationError when the residual of the eliminated
    coefficients does not come out below 2^(-prec+48).
    """
    if nu not in (1, 2, 3):
        raise DomainError(f"nu must be in {{1, 2, 3}}, got {nu}")
    rf = as_fraction(r)
    if rf == 1:
        raise DomainError("r = 1 sits on the branch point z = 1 (dz/dk = 0); "
                          "no convergent series exists there")
    wprec = prec + 8 * GUARD
    ctx = singular_modulus(rf, wprec)
    a = alpha_from_context(ctx)
    stack = derivative_stack(nu)
    try:
        laurents = [substitute_alpha(p, ctx, a) for p in stack]
    except ZeroDivisionError as exc:
        raise DegenerateSystemError(f"derivative stack has a pole at r={rf}") from exc

    exps = sorted({e for L in laurents for e in L.entries if e != 0}, reverse=True)
    n_unknown = 2 * nu
    with mp.workprec(wprec):
        M = mpmath.matrix(len(exps), n_unknown)
        rhs = mpmath.matrix(len(exps), 1)
        for row, e in enumerate(exps):
            for m in range(1, n_unknown + 1):
                M[row, m - 1] = laurents[m].coefficient(e).value
            rhs[row] = -laurents[0].coefficient(e).value
        try:
            if len(exps) == n_unknown:
                sol = mpmath.lu_solve(M, rhs)
            else:
                sol, _ = mpmath.qr_solve(M, rhs)
        except (ZeroDivisionError, ValueError) as exc:
            raise DegenerateSystemError(
                f"singular coefficient system at nu={nu}, r={rf}",
                rank=len(exps)) from exc
        a_coeffs = [mpmath.mpf(1)] + [sol[i] for i in range(n_unknown)]
        residual = mpmath.mpf(0)
        for e in exps:
            left = mpmath.mpf(0)
            for m in range(n_unknown + 1):
                left += a_coeffs[m] * laurents[m].coefficient(e).value
            residual = max(residual, abs(left))
        # K^0 coefficient; restoring (2/pi)^(4nu) and multiplying by pi^(2nu)
        # leaves g = c0 * 2^(4nu) / pi^(2nu)
        c0 = mpmath.mpf(0)
        for m in range(n_unknown + 1):
            c0 += a_coeffs[m] * laurents[m].coefficient(0).value
        g = c0 * mpmath.mpf(2) ** (4 * nu) / pi_bits(wprec) ** (2 * nu)
        if residual >= mpmath.mpf(2) ** (-(prec - 48)):
            raise VerificationError(
                f"coefficient solve at nu={nu}, r={rf}: residual "
                f"{mpmath.nstr(residual, 8)} exceeds 2^-{prec - 48} "
                f"(rank {len(exps)})")
    return CoefficientSolution(
        nu=nu,
        r=rf,
        a_coeffs=tuple(round_to(v, prec) for v in a_coeffs),
        g=round_to(g, prec),
        residual=round_to(residual, prec),
        rank=len(exps),
        prec=prec,
    )
