"""Exact radial convolution algebra on the free group.

A radial function f = sum_n f_n chi_n is constant on spheres and is
stored as its coefficient sequence.  Products live in the same algebra:
chi_n * chi_m = sum_l c(n, m, l) chi_l with nonnegative integer
structure constants c(n, m, l), where c counts, for any fixed word z of
length l, the factorizations z = x*y with |x| = n and |y| = m.  The
count depends only on (n, m, l), which is what makes radial functions a
commutative algebra under convolution.

Coefficients are exact rationals by default.  Float coefficients are
accepted (needed for families like f_n = q^{-n/2}); any arithmetic that
touches them degrades to floating point and is documented as such.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math

from .errors import BudgetExceededError
from .words import PAIR_BUDGET, FreeGroupCtx, sphere_size
from . import _kernels


@lru_cache(maxsize=None)
def _structure_constant(q: int, n: int, m: int, l: int) -> int:
    if n < m:
        n, m = m, n
    if m == 0:
        return 1 if l == n else 0
    if l < n - m or l > n + m or (n + m - l) % 2 != 0:
        return 0
    j = (n + m - l) // 2  # letters cancelled at the seam
    if j == 0:
        return 1
    if j < m:
        return (q - 1) * q ** (j - 1)
    if n > m:
        return q**m
    return (q + 1) * q ** (n - 1)  # n == m, l == 0


def structure_constant(ctx: FreeGroupCtx, n: int, m: int, l: int) -> int:
    """Exact coefficient of chi_l in chi_n * chi_m."""
    if n < 0 or m < 0 or l < 0:
        raise ValueError("sphere indices must be nonnegative")
    return _structure_constant(ctx.q, n, m, l)


def paper_display_coefficient(ctx: FreeGroupCtx, n: int, m: int, l: int) -> int:
    """Majorant coefficient q^{(n+m-l)/2}, plus q^{n-1} at l = 0 when n = m >= 1.

    Used only to certify the two-sided bound exact <= display <= 2*exact;
    the exact constants are authoritative everywhere else.
    """
    if n < 0 or m < 0 or l < 0:
        raise ValueError("sphere indices must be nonnegative")
    if l < abs(n - m) or l > n + m or (n + m - l) % 2 != 0:
        return 0
    q = ctx.q
    val = q ** ((n + m - l) // 2)
    if l == 0 and n == m >= 1:
        val += q ** (n - 1)
    return val


def _as_coeff(x):
    if isinstance(x, float):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class RadialFunction:
    """Finitely supported radial function sum_n coeffs[n] * chi_n."""

    ctx: FreeGroupCtx
    coeffs: tuple

    def __post_init__(self):
        vals = [_as_coeff(x) for x in self.coeffs]
        while vals and not vals[-1]:
            vals.pop()
        object.__setattr__(self, "coeffs", tuple(vals))

    @property
    def degree(self) -> int:
        """Last nonzero index; -1 for the zero function."""
        return len(self.coeffs) - 1

    def coefficient(self, n: int):
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def nonzero_items(self):
        """(n, f_n) pairs over the support, in increasing n."""
        return [(n, c) for n, c in enumerate(self.coeffs) if c]

    def __add__(self, other: "RadialFunction") -> "RadialFunction":
        if self.ctx != other.ctx:
            raise ValueError("mismatched group contexts")
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        vals = list(a)
        for i, c in enumerate(b):
            vals[i] = vals[i] + c
        return RadialFunction(self.ctx, tuple(vals))

    def __rmul__(self, scalar) -> "RadialFunction":
        s = _as_coeff(scalar)
        return RadialFunction(self.ctx, tuple(s * c for c in self.coeffs))

    def __str__(self) -> str:
        return format_radial_literal(self)


def chi(ctx: FreeGroupCtx, n: int) -> RadialFunction:
    """Indicator of the sphere of radius n, the algebra's basis vector."""
    if n < 0:
        raise ValueError("sphere index must be nonnegative")
    return RadialFunction(ctx, (0,) * n + (1,))


def parse_radial_literal(ctx: FreeGroupCtx, text: str) -> RadialFunction:
    """Parse a comma-separated rational literal such as "1,1/3,0,2"."""
    toks = [t.strip() for t in text.split(",")]
    try:
        vals = tuple(Fraction(t) for t in toks)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed radial literal {text!r}: {exc}") from None
    return RadialFunction(ctx, vals)


def format_radial_literal(f: RadialFunction) -> str:
    parts = []
    for c in f.coeffs:
        if isinstance(c, float):
            parts.append("%.12g" % c)
        else:
            parts.append(str(c))
    return ",".join(parts) if parts else "0"


def convolve_radial(f: RadialFunction, g: RadialFunction) -> RadialFunction:
    """Exact product f * g via the structure constants."""
    if f.ctx != g.ctx:
        raise ValueError("mismatched group contexts")
    if f.is_zero() or g.is_zero():
        return RadialFunction(f.ctx, ())
    q = f.ctx.q
    out = [Fraction(0)] * (f.degree + g.degree + 1)
    for n, fn in enumerate(f.coeffs):
        if not fn:
            continue
        for m, gm in enumerate(g.coeffs):
            if not gm:
                continue
            w = fn * gm
            for l in range(abs(n - m), n + m + 1, 2):
                out[l] = out[l] + w * _structure_constant(q, n, m, l)
    return RadialFunction(f.ctx, tuple(out))


def oracle_convolve(ctx: FreeGroupCtx, n: int, m: int) -> RadialFunction:
    """chi_n * chi_m by brute enumeration of all |S_n| x |S_m| products.

    Independent ground truth for convolve_radial: tallies |x*y| over all
    pairs, checks the tally on each sphere is divisible by the sphere
    size (radiality), and returns the quotients.
    """
    pairs = sphere_size(ctx, n) * sphere_size(ctx, m)
    if pairs > PAIR_BUDGET:
        raise BudgetExceededError("sphere pair enumeration", pairs, PAIR_BUDGET)
    tk = ctx.alphabet
    hist = _kernels.prod_len_hist(tk, _kernels.sphere_keys(tk, n), _kernels.sphere_keys(tk, m))
    coeffs = []
    for l, tally in enumerate(hist):
        size = sphere_size(ctx, l)
        if tally % size != 0:
            raise AssertionError(f"product tally not radial at length {l}")
        coeffs.append(Fraction(tally // size))
    return RadialFunction(ctx, tuple(coeffs))


def a_functional_parts(f: RadialFunction):
    """The quadratic functional A(f) split by parity of n + m.

    Returns (even, odd) with A(f) = even + odd*sqrt(q); both parts are
    exact rationals when the coefficients are, since q^{(n+m)/2} is an
    integer for even n + m and an integer times sqrt(q) otherwise.
    """
    q = f.ctx.q
    even = Fraction(0)
    odd = Fraction(0)
    for n, fn in enumerate(f.coeffs):
        if not fn:
            continue
        for m, fm in enumerate(f.coeffs):
            if not fm:
                continue
            w = abs(fn) * abs(fm) * (1 + min(n, m))
            e, r = divmod(n + m, 2)
            if r:
                odd = odd + w * q**e
            else:
                even = even + w * q**e
    return even, odd


def a_functional(f: RadialFunction):
    """A(f) = sum_{n,m} |f_n| |f_m| q^{(n+m)/2} (1 + min(n, m)).

    Exact rational when every contributing pair has even n + m;
    otherwise evaluated in floating point through sqrt(q).
    """
    even, odd = a_functional_parts(f)
    if not odd:
        return even
    return float(even) + float(odd) * math.sqrt(f.ctx.q)


def conjecture_functional(f: RadialFunction, s: float, exponent_sign: int = 1) -> float:
    """sum_{n,m} f_n f_m q^{(n+m)/2} {1 + min(n^{1/s'}, m^{1/s'})}, s' = s/(s-1).

    At s = 1 the convention is 1/s' = 0 with 0^0 = 0, the limit of
    min(n, m)^{1/s'} as s decreases to 1: the min term is 1 on pairs
    with min(n, m) >= 1 and 0 when either index vanishes, which keeps
    the functional continuous in s and gives 1 at chi_0 for every s.
    exponent_sign = -1 evaluates the variant with q^{-(n+m)/2} so
    reports can show both.
    """
    if not 1 <= s <= 2:
        raise ValueError("s must lie in [1, 2]")
    if exponent_sign not in (1, -1):
        raise ValueError("exponent_sign must be +1 or -1")
    if not f.is_nonnegative():
        raise ValueError("requires nonnegative coefficients")
    inv_sp = 1.0 - 1.0 / s  # 1/s'
    q = float(f.ctx.q)
    terms = []
    for n, fn in enumerate(f.coeffs):
        if not fn:
            continue
        for m, fm in enumerate(f.coeffs):
            if not fm:
                continue
            low = min(n, m)
            mn = 0.0 if low == 0 else (1.0 if s == 1 else low**inv_sp)
            terms.append(float(fn) * float(fm) * q ** (exponent_sign * 0.5 * (n + m)) * (1.0 + mn))
    return math.fsum(terms)
