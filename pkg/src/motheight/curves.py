"""Motivic height zeta functions of rational curves on split toric varieties.

``[U_{0,d}]`` is the class of the space of morphisms ``P^1 -> X_Sigma`` of
anticanonical degree ``d`` whose image meets the open torus.  It equals
``(L-1)^dim`` times the sum of ``[(P^1)^B_d]`` over the degree vectors ``d``
in ``N_*`` of total degree ``d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import StructuralError
from .euler import phi_psi
from .exactring import ONE, ZERO, LaurentPoly, PowerSeries1
from .fan import (
    AlphaStar,
    Fan,
    alpha_star,
    b_sigma,
    fan_validate,
    hirzebruch_fan,
    mu0_density,
    nstar_enumerate,
    phi_toric,
    pic_rank,
)
from .moebius import P1, MultiDegreeTable, mobius_table, xb_class_at

LM1 = LaurentPoly({1: 1, 0: -1})


@lru_cache(maxsize=32)
def _mu_for(f: Fan, D: int) -> MultiDegreeTable:
    return mobius_table(b_sigma(f), D)


def _require_smooth_complete(f: Fan):
    rep = fan_validate(f)
    if not rep:
        raise ValueError(f"fan must be smooth and complete: {'; '.join(rep.issues)}")


def u0d_class(f: Fan, d: int) -> LaurentPoly:
    if d < 0:
        raise ValueError("degree must be >= 0")
    mu = _mu_for(f, d)
    acc = ZERO
    for v in nstar_enumerate(f, d):
        acc = acc + xb_class_at(mu, v)
    return LM1 ** f.rank * acc


@dataclass
class HeightSeries:
    fan: Fan
    D: int
    classes: list
    components: list

    def series(self, start: int = 0) -> PowerSeries1:
        cs = [ZERO] * start + self.classes[start:]
        return PowerSeries1(cs, self.D)

    def supported(self):
        return [d for d in range(self.D + 1) if self.components[d] > 0]


def height_series(f: Fan, D: int) -> HeightSeries:
    """``sum_d [U_{0,d}] T^d`` to degree ``D`` with component counts ``n_Sigma(d)``."""
    if D < 0:
        raise ValueError("D must be >= 0")
    _require_smooth_complete(f)
    mu = _mu_for(f, D)
    prefactor = LM1 ** f.rank
    classes, comps = [], []
    for d in range(D + 1):
        vecs = nstar_enumerate(f, d)
        acc = ZERO
        for v in vecs:
            acc = acc + xb_class_at(mu, v)
        cls = prefactor * acc
        if not cls.is_integral():
            raise StructuralError(f"non-integral class at degree {d}")
        classes.append(cls)
        comps.append(len(vecs))
    if classes[0] != prefactor:
        raise StructuralError("degree-0 class is not the class of the torus")
    return HeightSeries(f, D, classes, comps)


# ---------------------------------------------------------------------------
# Hirzebruch surfaces


def hirzebruch_closed_form(m: int, D: int) -> PowerSeries1:
    """Expansion of the rational function for the m-th Hirzebruch surface.

    (L-1) * ( L (1-T^2)(1 + L^(m+1) T^(m+2)) / ((1 - L^2 T^2)(1 - L^(m+2) T^(m+2)))
              - (1 + L T^(m+2)) / (1 - L^(m+2) T^(m+2)) )
    """
    if m < 0:
        raise ValueError("m must be >= 0")

    def poly(terms):
        cs = [ZERO] * (D + 1)
        for k, c in terms.items():
            if k <= D:
                cs[k] = cs[k] + c
        return PowerSeries1(cs, D)

    Lm = LaurentPoly.monomial
    num1 = poly({0: ONE, 2: -ONE}) * poly({0: ONE, m + 2: Lm(m + 1)})
    den1 = poly({0: ONE, 2: -Lm(2)}) * poly({0: ONE, m + 2: -Lm(m + 2)})
    num2 = poly({0: ONE, m + 2: Lm(1)})
    den2 = poly({0: ONE, m + 2: -Lm(m + 2)})
    return (num1 * den1.inverse() * Lm(1) - num2 * den2.inverse()) * LM1


def hirzebruch_prefactor(m: int) -> list:
    """Coefficients of ``(1+LT)(1+LT+...+L^(m+1)T^(m+1))(1-LT)^2``."""
    D = m + 4
    s = PowerSeries1([ONE, LaurentPoly.monomial(1)], D)
    s = s * PowerSeries1([LaurentPoly.monomial(i) for i in range(m + 2)], D)
    s = s * PowerSeries1([ONE, -LaurentPoly.monomial(1)], D) ** 2
    return list(s.coeffs)


@dataclass
class HirzebruchCheck:
    m: int
    D: int
    is_polynomial: bool
    value_at_Linv: LaurentPoly
    poly_degree: int
    first_offending: int | None = None


def hirzebruch_theorem_check(m: int, D: int, series: PowerSeries1 | None = None) -> HirzebruchCheck:
    """Multiply ``sum_{d>=1} [U_{0,d}] T^d`` by the prefactor and test it is a polynomial.

    The numerator of the closed form has degree ``m + 4``; every coefficient
    from ``m + 5`` to ``D`` must vanish.  The value at ``T = L^-1`` is
    returned as an exact Laurent polynomial.
    """
    if D < 2 * (m + 3):
        raise ValueError(f"D = {D} leaves no room to witness vanishing; need D >= {2 * (m + 3)}")
    if series is None:
        series = height_series(hirzebruch_fan(m), D).series(start=1)
    pref = PowerSeries1(hirzebruch_prefactor(m), D)
    prod = pref * series
    deg = m + 4
    first = next((k for k in range(deg + 1, D + 1) if prod[k]), None)
    value = ZERO
    for k in range(min(deg, D) + 1):
        value = value + prod[k] * LaurentPoly.monomial(-k)
    return HirzebruchCheck(m, D, first is None, value, deg, first)


# ---------------------------------------------------------------------------
# the Tamagawa-type constant at T = L^-1


@dataclass
class TamagawaResult:
    exp_path: float
    mu_path: float
    alpha: AlphaStar
    N: int
    D: int
    L: float
    last_term: float
    terms: list = field(default_factory=list, repr=False)

    @property
    def difference(self) -> float:
        return abs(self.exp_path - self.mu_path)


def _exact_L(L_val) -> Fraction:
    x = Fraction(L_val)
    if x <= 1:
        raise ValueError("L must be > 1")
    return x


def _prefactor(f: Fan, alpha: AlphaStar, Lx: Fraction) -> float:
    rk = pic_rank(f)
    return float(alpha.value) * float(Lx**f.rank / (1 - 1 / Lx) ** rk)


def _alpha(f: Fan, approx: bool) -> AlphaStar:
    a = alpha_star(f)
    if not a.exact and not approx:
        raise ValueError("alpha* is only approximate for Picard rank > 2; pass approx=True (--approx on the command line)")
    return a


def tamagawa_constant(f: Fan, L_val: float, N: int, approx: bool = False) -> float:
    """Euler-product evaluation truncated after ``n = N``."""
    return tamagawa_exp_terms(f, L_val, N, approx)[0]


def tamagawa_exp_terms(f: Fan, L_val: float, N: int, approx: bool = False):
    """Value and per-``n`` terms ``Psi_n(P^1) log(local density at n)``."""
    _require_smooth_complete(f)
    Lx = _exact_L(L_val)
    alpha = _alpha(f, approx)
    rk = pic_rank(f)
    psi = phi_psi(P1, N)
    terms = []
    for n in range(1, N + 1):
        density = (ONE - LaurentPoly.monomial(-n)) ** rk * phi_toric(f, n) * LaurentPoly.monomial(-n * f.rank)
        eps = float((density - 1).eval(Lx))
        terms.append(float(psi.Psi(n).eval(Lx)) * math.log1p(eps))
    value = _prefactor(f, alpha, Lx) * math.exp(math.fsum(terms))
    return value, terms, alpha


def tamagawa_mu_sum(f: Fan, L_val: float, D: int, approx: bool = False) -> float:
    """``alpha* L^dim (1-1/L)^-rk sum_{|e|<=D} mu(e) L^-|e|``."""
    _require_smooth_complete(f)
    Lx = _exact_L(L_val)
    alpha = _alpha(f, approx)
    mu = _mu_for(f, D)
    s = sum((v.eval(Lx) * Lx ** (-sum(e)) for e, v in mu.items()), Fraction(0))
    return _prefactor(f, alpha, Lx) * float(s)


def tamagawa_report(f: Fan, L_val: float, N: int = 16, D: int = 16, approx: bool = False) -> TamagawaResult:
    value, terms, alpha = tamagawa_exp_terms(f, L_val, N, approx)
    mu_val = tamagawa_mu_sum(f, L_val, D, approx)
    return TamagawaResult(value, mu_val, alpha, N, D, float(L_val), abs(terms[-1]) if terms else 0.0, terms)


def hirzebruch_tamagawa_expected(m: int, L_val) -> float:
    Lx = _exact_L(L_val)
    return float(Lx**2 * (1 - Lx**-2) ** 2 / (2 * (m + 2)))


def density_identity_holds(f: Fan, n: int) -> bool:
    """``P_B(L^-n) == (1-L^-n)^rk Phi_n(X) L^(-n dim)`` exactly."""
    lhs = mu0_density(f, n)
    rhs = (ONE - LaurentPoly.monomial(-n)) ** pic_rank(f) * phi_toric(f, n) * LaurentPoly.monomial(-n * f.rank)
    return lhs == rhs
