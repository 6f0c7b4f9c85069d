"""Series assembly, evaluation, and digit-level verification.

The coefficient sequences are exact rationals throughout: rounding enters
only in the final accumulation of a partial sum. c_2(n) is

    c_2(n) = 2^(-6n) sum_{s=0}^{n} C(2s,s)^3 C(2n-2s,n-s)^3

and c_p for even p is the p-fold convolution power of the base sequence
C(2n,n)^3/64^n (equivalently c_{p-2} convolved with c_2). ``ExactRational``
is Python's Fraction: unbounded integers, always reduced, positive
denominator, which is exactly the contract the coefficients need.

A SeriesSpec is a fully determined series

    sum_{n>=n_start} c_{2nu}(n) x^n B(n) = g / pi^(2nu),

with x = 4 (k_r k'_r)^2 and B the degree-2nu bracket polynomial obtained
from the solved A-coefficients by the falling-factorial-to-monomial
conversion (signed Stirling numbers of the first kind). Internally B_0 is
normalized to 1; published normalizations are handled by the catalog.

Evaluation is plain accumulation in fixed-size chunks with a deterministic
reduction order, so repeated runs are bit-identical and chunks could be
summed in parallel without changing the result.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath
from mpmath import mp

from .bigreal import BigReal, as_fraction, decimal_digits, pi_bits, round_to
from .elliptic import GUARD, singular_modulus
from .errors import DomainError, InsufficientPrecisionError, NonConvergentSeriesError
from .symbolic import solve_coefficients

#: exact rational carrier for the series coefficients
ExactRational = Fraction

SCHEMA = "piforge/1"
_CHUNK = 32


@functools.lru_cache(maxsize=None)
def _base(n: int) -> Fraction:
    return Fraction(comb(2 * n, n) ** 3, 64 ** n)


@functools.lru_cache(maxsize=None)
def c2(n: int) -> Fraction:
    """c_2(n) = 2^(-6n) sum_s C(2s,s)^3 C(2n-2s,n-s)^3, exact."""
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    return sum((_base(s) * _base(n - s) for s in range(n + 1)), Fraction(0))


@functools.lru_cache(maxsize=None)
def cp(p: int, n: int) -> Fraction:
    """c_p(n) for even p >= 2: convolution of c_{p-2} with c_2, memoized.

    The lru caches fill idempotently, so concurrent readers are safe.
    """
    if p % 2 != 0 or p < 2:
        raise DomainError(f"p must be a positive even integer, got {p}")
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    if p == 2:
        return c2(n)
    return sum((cp(p - 2, s) * c2(n - s) for s in range(n + 1)), Fraction(0))


@functools.lru_cache(maxsize=None)
def stirling_first(m: int, j: int) -> int:
    """Signed Stirling numbers of the first kind: n^(m) = sum_j s(m,j) n^j."""
    if m == j == 0:
        return 1
    if m <= 0 or j < 0 or j > m:
        return 0
    return stirling_first(m - 1, j - 1) - (m - 1) * stirling_first(m - 1, j)


def bracket_from_a(a_coeffs, nu: int):
    """Convert falling-factorial coefficients A_m to monomial coefficients B_j:

        sum_m A_m n(n-1)...(n-m+1) = sum_j B_j n^j.

    Accepts any coefficients supporting + and * by int (BigReal, Fraction,
    mpf); returns the same kind. Requires len(a_coeffs) = 2nu + 1.
    """
    if len(a_coeffs) != 2 * nu + 1:
        raise DomainError(f"expected {2 * nu + 1} coefficients, got {len(a_coeffs)}")
    top = 2 * nu
    out = []
    for j in range(top + 1):
        acc = None
        for m in range(j, top + 1):
            s = stirling_first(m, j)
            if s == 0:
                continue
            term = a_coeffs[m] * s
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else a_coeffs[0] * 0)
    return out


@dataclass(frozen=True)
class SeriesSpec:
    """A fully determined series for 1/pi^(2nu) ready to evaluate."""

    nu: int
    r: Fraction
    x: BigReal
    bracket: tuple
    g: BigReal
    prec: int
    provenance: str = "solved"
    n_start: int = 0
    label: str = ""

    def __post_init__(self):
        if len(self.bracket) != 2 * self.nu + 1:
            raise DomainError(
                f"bracket needs {2 * self.nu + 1} coefficients, got {len(self.bracket)}")
        if abs(self.x.value) >= 1:
            raise NonConvergentSeriesError(
                f"series argument |x| = {mpmath.nstr(abs(self.x.value), 8)} >= 1")

    def dpt(self) -> float:
        """Decimal digits gained per term: -log10 |x|."""
        with mp.workprec(64):
            return float(-mpmath.log(abs(self.x.value), 10))

    def target(self, prec: int | None = None) -> BigReal:
        """g / pi^(2nu) at the requested precision (library pi)."""
        prec = self.prec if prec is None else prec
        with mp.workprec(prec + GUARD):
            v = self.g.value / pi_bits(prec + GUARD) ** (2 * self.nu)
        return round_to(v, prec)


def build_series(nu: int, r, prec: int) -> SeriesSpec:
    """Full pipeline: context, alpha, coefficient solve, bracket conversion."""
    rf = as_fraction(r)
    ctx = singular_modulus(rf, prec + 2 * GUARD)
    x = ctx.series_argument()
    if abs(x.value) >= 1:
        raise NonConvergentSeriesError(
            f"series argument x = {mpmath.nstr(x.value, 8)} at r={rf} does not converge")
    sol = solve_coefficients(nu, rf, prec)
    bracket = tuple(bracket_from_a(list(sol.a_coeffs), nu))
    return SeriesSpec(nu=nu, r=rf, x=round_to(x.value, prec), bracket=bracket,
                      g=sol.g, prec=prec, provenance="solved",
                      label=f"solved nu={nu} r={rf}")


def evaluate(spec: SeriesSpec, terms: int, prec: int | None = None) -> BigReal:
    """Partial sum of ``terms`` consecutive terms starting at spec.n_start.

    Coefficients are exact; x^n and the bracket are accumulated at
    prec + 64 working bits in fixed chunks with a deterministic reduction
    order. Raises InsufficientPrecisionError when the truncation target
    (terms * dpt digits) cannot be represented at ``prec``.
    """
    if terms < 1:
        raise DomainError(f"terms must be >= 1, got {terms}")
    prec = spec.prec if prec is None else prec
    predicted = terms * spec.dpt()
    capacity = decimal_digits(prec)
    if predicted > capacity + 10:
        need = int((predicted + 20) / 0.30103) + 1
        raise InsufficientPrecisionError(
            f"{terms} terms promise ~{predicted:.0f} digits but prec={prec} bits "
            f"holds only ~{capacity}", required_bits=need)
    wprec = prec + 2 * GUARD + 48
    p = 2 * spec.nu
    with mp.workprec(wprec):
        xv = spec.x.value
        bvals = [b.value for b in spec.bracket]
        total = mpmath.mpf(0)
        chunk = mpmath.mpf(0)
        xn = xv ** spec.n_start
        for i in range(terms):
            n = spec.n_start + i
            c = cp(p, n)
            bn = mpmath.mpf(0)
            for b in reversed(bvals):
                bn = bn * n + b
            chunk += mpmath.mpf(c.numerator) / c.denominator * xn * bn
            xn *= xv
            if (i + 1) % _CHUNK == 0:
                total += chunk
                chunk = mpmath.mpf(0)
        total += chunk
    return round_to(total, prec)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking a partial sum against its closed-form target."""

    label: str
    nu: int
    r: Fraction
    terms: int
    partial_sum: BigReal
    target: BigReal
    abs_error: BigReal
    matched_digits: float
    predicted_digits: float
    dpt: float
    threshold_digits: float
    passed: bool


def verify(spec: SeriesSpec, terms: int, prec: int | None = None,
           target: BigReal | None = None) -> VerificationReport:
    """Evaluate and compare against the closed form.

    ``matched_digits`` counts agreeing significant digits,
    -log10(|sum - target| / |target|). The pass rule is the predicted-digit
    threshold: matched >= terms * dpt - 10.
    """
    prec = spec.prec if prec is None else prec
    s = evaluate(spec, terms, prec)
    t = spec.target(prec) if target is None else target
    with mp.workprec(prec + GUARD):
        err = abs(s.value - t.value)
        if err == 0:
            matched = float(decimal_digits(prec))
        else:
            matched = float(-mpmath.log(err / abs(t.value), 10))
    d = spec.dpt()
    predicted = terms * d
    threshold = predicted - 10
    return VerificationReport(
        label=spec.label or f"nu={spec.nu} r={spec.r}",
        nu=spec.nu, r=spec.r, terms=terms,
        partial_sum=s, target=t, abs_error=round_to(err, prec),
        matched_digits=matched, predicted_digits=predicted, dpt=d,
        threshold_digits=threshold, passed=matched >= threshold,
    )


# ---------------------------------------------------------------------------
# serialization (schema piforge/1): flat JSON, decimal strings at full prec
# ---------------------------------------------------------------------------


def to_json(spec: SeriesSpec) -> str:
    digits = decimal_digits(spec.prec) + 4
    doc = {
        "schema": SCHEMA,
        "nu": spec.nu,
        "r": f"{spec.r.numerator}/{spec.r.denominator}",
        "x_decimal": spec.x.to_decimal(digits),
        "bracket_decimals": [b.to_decimal(digits) for b in spec.bracket],
        "g_decimal": spec.g.to_decimal(digits),
        "prec_bits": spec.prec,
        "dpt": spec.dpt(),
        "provenance": spec.provenance,
        "n_start": spec.n_start,
        "label": spec.label,
    }
    return json.dumps(doc, sort_keys=True)


def from_json(text: str) -> SeriesSpec:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise DomainError(f"unsupported schema {doc.get('schema')!r}")
    prec = int(doc["prec_bits"])
    return SeriesSpec(
        nu=int(doc["nu"]),
        r=as_fraction(doc["r"]),
        x=BigReal.of(doc["x_decimal"], prec),
        bracket=tuple(BigReal.of(s, prec) for s in doc["bracket_decimals"]),
        g=BigReal.of(doc["g_decimal"], prec),
        prec=prec,
        provenance=str(doc.get("provenance", "solved")),
        n_start=int(doc.get("n_start", 0)),
        label=str(doc.get("label", "")),
    )
