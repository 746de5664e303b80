"""End-versus-side hitting ratios in an r x 1 rectangle.

A Schwarz-Christoffel map sends the upper half-plane to the rectangle with
the prevertices of the short sides at +-1 and +-alpha.  A density that
transforms with exponent b gives the ratio R(alpha, b) of first hits on
the ends to first hits on the long sides; b = 1 is Brownian motion and
b = 5/8 the conjectured self-avoiding walk limit.

Every function takes ``precision="double"`` or ``"extended"``; the latter
runs in mpmath at 50 digits and returns mpmath numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .quadrature import Quadrature, numeric

ALPHA_R10 = "1.00000120561454706472212"
BROWNIAN_R10 = 3.8375894519594e-7
TREFETHEN_PE = 3.83758797925e-7
TREFETHEN_RATIO = "0.00000038375894519599411176841999126970034234598936"
SAW_RATIO_R10 = 6.682989935e-5
ASYMPTOTIC_R10 = 6.6824528e-5
ASYMPTOTIC_PREFACTOR_SAW = 1.2263431442
REFINED_R10 = 0.00006682989679


@dataclass(frozen=True)
class HittingParams:
    """Aspect ratio r, density exponent b and the map parameter alpha = d^2.

    ``alpha_minus_one`` is carried separately because alpha - 1 is of
    order e^(-pi r / 2) and cannot be recovered from ``alpha`` in double
    precision.
    """

    r: float
    b: float
    alpha: object
    d: object
    alpha_minus_one: object
    precision: str = "double"

    def __post_init__(self):
        if not 0.25 < float(self.b) <= 1.0:
            raise DomainError("b must lie in (1/4, 1]")
        if not self.alpha_minus_one > 0:
            raise DomainError("alpha must exceed 1")


def _agm(a, b, M):
    for _ in range(200):
        an = (a + b) / 2
        bn = M.sqrt(a * b)
        if abs(an - bn) <= M.eps * abs(an):
            return an
        a, b = an, bn
    return (a + b) / 2


def elliptic_K(k, precision: str = "double", kprime=None):
    """Complete elliptic integral of the first kind by the AGM.

    ``kprime`` may supply sqrt(1 - k^2) directly when k is close to 1.
    """
    if k < 0 or k >= 1:
        raise DomainError("elliptic_K needs 0 <= k < 1")
    with numeric(precision) as M:
        k = M.mpf(k)
        kc = M.sqrt((1 - k) * (1 + k)) if kprime is None else M.mpf(kprime)
        return M.pi / (2 * _agm(M.mpf(1), kc, M))


def _theta_series(terms, M):
    total = M.mpf(0)
    tol = M.mpf(10) ** -17 if not M.extended else M.eps / 1000
    for t in terms:
        total += t
        if abs(t) < tol * abs(total):
            break
    return total


def jacobi_theta(j: int, q, precision: str = "double"):
    """theta_j(0, q) for j = 2, 3 (and 4), as a q-series."""
    if not 0 < q < 1:
        raise DomainError("nome must lie in (0, 1)")
    with numeric(precision) as M:
        q = M.mpf(q)
        lq = M.log(q)
        if j == 2:
            return 2 * _theta_series((M.exp(lq * (n + M.mpf(1) / 2) ** 2) for n in range(10 ** 6)), M)
        if j == 3:
            return 1 + 2 * _theta_series((M.exp(lq * n * n) for n in range(1, 10 ** 6)), M)
        if j == 4:
            return 1 + 2 * _theta_series(((-1) ** n * M.exp(lq * n * n) for n in range(1, 10 ** 6)), M)
    raise DomainError("j must be 2, 3 or 4")


def alpha_series(r, precision: str = "double"):
    """Inversion series alpha - 1 = 8 e^(-pi r/2) + 32 e^(-pi r), error O(e^(-3 pi r/2))."""
    with numeric(precision) as M:
        Q = M.exp(-M.pi * M.mpf(r) / 2)
        return 8 * Q + 32 * Q * Q


def alpha_from_r(r, b=1.0, precision: str = "double") -> HittingParams:
    """alpha = (theta3(q) / theta2(q))^2 at q = e^(-2 pi / r).

    alpha - 1 is evaluated through the conjugate nome Q = e^(-pi r / 2),
    where alpha = (theta3(Q) / theta4(Q))^2 and theta3 - theta4 =
    4 sum_{n odd} Q^(n^2), so no cancellation occurs.  The two routes and
    the inversion series are cross-checked.
    """
    if not r > 1:
        raise DomainError("aspect ratio must exceed 1")
    with numeric(precision) as M:
        r = M.mpf(r)
        q = M.exp(-2 * M.pi / r)
        alpha = (jacobi_theta(3, q, precision) / jacobi_theta(2, q, precision)) ** 2
        Q = M.exp(-M.pi * r / 2)
        lQ = M.log(Q)
        diff = 4 * _theta_series((M.exp(lQ * n * n) for n in range(1, 10 ** 6, 2)), M)
        t4 = jacobi_theta(4, Q, precision)
        am1 = diff * (2 * t4 + diff) / t4 ** 2
        # the direct route loses about log10(1/(alpha-1)) digits of alpha - 1
        if abs((alpha - 1) - am1) > 1e3 * M.eps * alpha + 1e-6 * am1:
            raise AssertionError("theta routes for alpha disagree")
        if r >= 4 and abs(alpha_series(r, precision) - am1) > 200 * M.exp(-3 * M.pi * r / 2) + 10 * M.eps * am1:
            raise AssertionError("alpha disagrees with the inversion series")
        return HittingParams(r, b, 1 + am1, M.sqrt(1 + am1), am1, precision)


def aspect_from_alpha(alpha, precision: str = "double", alpha_minus_one=None):
    """r = 2 K(1/alpha) / K(sqrt(alpha^2 - 1) / alpha)."""
    with numeric(precision) as M:
        am1 = M.mpf(alpha) - 1 if alpha_minus_one is None else M.mpf(alpha_minus_one)
        if not am1 > 0:
            raise DomainError("alpha must exceed 1")
        alpha = 1 + am1
        s = M.sqrt(am1 * (2 + am1)) / alpha
        return 2 * elliptic_K(1 / alpha, precision, kprime=s) / elliptic_K(s, precision, kprime=1 / alpha)


def brownian_ratio(alpha, precision: str = "double", alpha_minus_one=None):
    """R(alpha, 1) = (atan sqrt(alpha) - atan(1/sqrt(alpha))) / (2 atan(1/sqrt(alpha)))."""
    if isinstance(alpha, HittingParams):
        alpha_minus_one = alpha.alpha_minus_one
        alpha = alpha.alpha
    with numeric(precision) as M:
        am1 = M.mpf(alpha) - 1 if alpha_minus_one is None else M.mpf(alpha_minus_one)
        if not am1 > 0:
            raise DomainError("alpha must exceed 1")
        sa = M.sqrt(1 + am1)
        # atan(sqrt a) - atan(1/sqrt a) = atan((a - 1) / (2 sqrt a))
        return M.atan(am1 / (2 * sa)) / (2 * M.atan(1 / sa))


def default_quadrature(precision: str = "double") -> Quadrature:
    if precision == "extended":
        return Quadrature(level=12, rel_tol=1e-24, precision="extended")
    return Quadrature(level=12, rel_tol=1e-13, precision="double")


def hitting_integrals(params: HittingParams, quad: Quadrature | None = None):
    """Numerator and denominator integrals of R(alpha, b).

    The numerator is returned with its (alpha - 1)^b scale included.
    """
    quad = quad or default_quadrature(params.precision)
    with numeric(quad.precision) as M:
        b = M.mpf(params.b)
        eps = M.mpf(params.alpha_minus_one)
        alpha = 1 + eps
        e = (b - 1) / 2

        def num(t, t0, t1):
            u = 1 + t0 * eps
            return ((t0 * t1) ** e * (u * u + alpha) ** (-b)
                    * ((2 + t0 * eps) * (2 + eps + t0 * eps)) ** e)

        def den(u, u0, u1):
            # u in [0, 1] by symmetry; u1 = 1 - u exactly
            return (u * u + alpha) ** (-b) * (u1 * (1 + u)) ** e * ((eps + u1) * (alpha + u)) ** e

        numerator = eps ** b * quad.integrate(num, 0, 1)
        denominator = 2 * quad.integrate(den, 0, 1)
        return numerator, denominator


def hitting_ratio(params: HittingParams, quad: Quadrature | None = None):
    """R(alpha, b) by double-exponential quadrature."""
    n, d = hitting_integrals(params, quad)
    return n / d


def denominator_limit(b, precision: str = "double"):
    """Beta-function value sqrt(pi) Gamma(b/2) / (2 Gamma(b/2 + 1/2)) of the denominator at alpha = 1."""
    with numeric(precision) as M:
        b = M.mpf(b)
        return M.sqrt(M.pi) * M.gamma(b / 2) / (2 * M.gamma(b / 2 + M.mpf(1) / 2))


def asymptotic_prefactor(b, precision: str = "double"):
    with numeric(precision) as M:
        b = M.mpf(b)
        return 2 ** (2 * b) * M.gamma(M.mpf(1) / 2 + b / 2) ** 2 / (M.gamma(1 + b / 2) * M.gamma(b / 2))


def asymptotic_ratio(r, b, precision: str = "double"):
    """Leading large-r behaviour prefactor(b) e^(-pi b r / 2)."""
    if r < 4:
        raise DomainError("asymptotic formula needs r >= 4")
    if not 0 < b <= 1:
        raise DomainError("b must lie in (0, 1]")
    with numeric(precision) as M:
        return asymptotic_prefactor(b, precision) * M.exp(-M.pi * M.mpf(b) * M.mpf(r) / 2)


def refined_ratio(r, b, precision: str = "double"):
    """Two-term Mellin-transform expansion of R(r, b) for 0 < b < 1.

    With Lam = (Gamma((1+b)/2) / Gamma(b/2))^2 and E = e^(-b pi r / 2):
    (2^(2b+1) Lam / b) E [1 + 2^(2b+1) Lam / (b sin(pi b / 2)) E
    + 4 (b - 1 + 2 Lam) e^(-pi r / 2)].  The power of two in the second
    bracket term is 2b+1; with b+1 the expansion misses the quadrature
    value at r = 10 in the fifth digit.
    """
    if r < 4:
        raise DomainError("refined formula needs r >= 4")
    if not 0 < b < 1:
        raise DomainError("refined formula needs 0 < b < 1")
    with numeric(precision) as M:
        b = M.mpf(b)
        r = M.mpf(r)
        lam = (M.gamma((1 + b) / 2) / M.gamma(b / 2)) ** 2
        E = M.exp(-b * M.pi * r / 2)
        lead = 2 ** (2 * b + 1) * lam / b * E
        corr = (lam * 2 ** (2 * b + 1) / (b * M.sin(M.pi * b / 2)) * E
                + 4 * (b - 1 + 2 * lam) * M.exp(-M.pi * r / 2))
        return lead * (1 + corr)


def trefethen_pe(precision: str = "double"):
    """Closed-form end-hitting probability from the centre of a 10 x 1 rectangle."""
    with numeric(precision) as M:
        s2, s5, s10 = M.sqrt(2), M.sqrt(5), M.sqrt(10)
        arg = (3 - 2 * s2) ** 2 * (2 + s5) ** 2 * (s10 - 3) ** 2 * (M.sqrt(s5) - s2) ** 4
        return 2 / M.pi * M.asin(arg)


def trefethen_ratio(precision: str = "extended"):
    """p_e / (1 - p_e) for the 10 x 1 rectangle."""
    with numeric(precision) as M:
        p = trefethen_pe(precision)
        return p / (1 - p)

