"""Kapranov zeta functions, the Phi/Psi sequences and motivic Euler products.

Everything here works with *cellular* classes, i.e. integer combinations of
powers of ``L``.  For such a class ``X = sum_i c_i L^i`` the zeta function
factors as ``prod_i (1 - L^i T)^(-c_i)``.

The Euler product ``exp(sum_n Psi_n log P(T^n))`` is available through two
unrelated algorithms: a direct exp/log evaluation and a binomial expansion
over nondecreasing tuples of "point degrees".  Tests hold them against each
other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from sympy import divisors, factorint

from .exactring import (
    ONE,
    ZERO,
    LaurentPoly,
    PowerSeries1,
    PowerSeriesMulti,
    binomial_elem,
)


def mobius_int(n: int) -> int:
    """Number-theoretic Moebius function."""
    if n < 1:
        raise ValueError("mobius_int needs n >= 1")
    exps = factorint(n).values()
    if any(e > 1 for e in exps):
        return 0
    return -1 if len(exps) % 2 else 1


@dataclass(frozen=True)
class CellularClass:
    """A class ``sum_i cells[i] * L^i`` together with its dimension."""

    cells: tuple
    dim: int
    virtual: bool = False

    def __init__(self, cells: dict, dim: int | None = None, virtual: bool = False):
        clean = tuple(sorted((int(i), int(c)) for i, c in cells.items() if c))
        if any(c < 0 for _, c in clean) and not virtual:
            raise ValueError(
                "negative cell multiplicities need virtual=True "
                f"(cells {dict(clean)})"
            )
        top = max((i for i, _ in clean), default=0)
        if dim is None:
            dim = top
        if not virtual and dim < top:
            raise ValueError(f"declared dimension {dim} below top cell L^{top}")
        object.__setattr__(self, "cells", clean)
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "virtual", bool(virtual))

    @classmethod
    def point(cls):
        return cls({0: 1}, 0)

    @classmethod
    def affine(cls, d: int):
        return cls({d: 1}, d)

    @classmethod
    def projective(cls, n: int):
        return cls({i: 1 for i in range(n + 1)}, n)

    @classmethod
    def torus(cls, n: int):
        lp = (LaurentPoly({1: 1}) - 1) ** n
        return cls({k: int(v) for k, v in lp.coeffs.items()}, n, virtual=True)

    @classmethod
    def from_laurent(cls, value: LaurentPoly, dim: int | None = None):
        cs = value.coeffs
        if any(v.denominator != 1 for v in cs.values()) or any(k < 0 for k in cs):
            raise ValueError(f"{value} is not an integer polynomial in L")
        virtual = any(v < 0 for v in cs.values())
        return cls({k: int(v) for k, v in cs.items()}, dim, virtual=virtual)

    @property
    def value(self) -> LaurentPoly:
        return LaurentPoly(dict(self.cells))

    def __mul__(self, other: "CellularClass") -> "CellularClass":
        out: dict = {}
        for i, a in self.cells:
            for j, b in other.cells:
                out[i + j] = out.get(i + j, 0) + a * b
        return CellularClass(out, self.dim + other.dim, self.virtual or other.virtual)


def kapranov_zeta(x: CellularClass, D: int, virtual_ok: bool = False) -> PowerSeries1:
    """``Z_X(T) = sum_n [X^<n>] T^n`` to degree ``D``."""
    if D < 0:
        raise ValueError("D must be >= 0")
    if x.virtual and not virtual_ok:
        raise ValueError("virtual class passed to kapranov_zeta without virtual_ok=True")
    z = PowerSeries1.one(D)
    for i, c in x.cells:
        # (1 - L^i T)^{-1} = sum_n L^{in} T^n
        geom = PowerSeries1([LaurentPoly.monomial(i * n) for n in range(D + 1)], D)
        if c > 0:
            z = z * geom**c
        else:
            z = z * PowerSeries1([ONE, -LaurentPoly.monomial(i)], D) ** (-c)
    return z


@dataclass(frozen=True)
class PhiPsiSeq:
    """``phi[n-1] = Phi_n`` and ``psi[n-1] = Psi_n`` for ``1 <= n <= N``."""

    N: int
    phi: tuple = field(repr=False)
    psi: tuple = field(repr=False)

    def Phi(self, n: int) -> LaurentPoly:
        return self.phi[n - 1]

    def Psi(self, n: int) -> LaurentPoly:
        return self.psi[n - 1]

    @classmethod
    def from_psi(cls, psi) -> "PhiPsiSeq":
        psi = tuple(LaurentPoly.monomial(0, p) if not isinstance(p, LaurentPoly) else p for p in psi)
        N = len(psi)
        phi = []
        for n in range(1, N + 1):
            acc = ZERO
            for d in divisors(n):
                acc = acc + psi[d - 1] * d
            phi.append(acc)
        return cls(N, tuple(phi), psi)

    @classmethod
    def from_phi(cls, phi) -> "PhiPsiSeq":
        phi = tuple(phi)
        N = len(phi)
        psi = []
        for n in range(1, N + 1):
            acc = ZERO
            for d in divisors(n):
                mu = mobius_int(n // d)
                if mu:
                    acc = acc + phi[d - 1] * mu
            psi.append(acc / n)
        return cls(N, phi, tuple(psi))


def phi_psi(x: CellularClass, N: int) -> PhiPsiSeq:
    """Phi from the log-derivative of the zeta function, Psi by divisor inversion."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return _phi_psi_cached(x, N)


@lru_cache(maxsize=64)
def _phi_psi_cached(x: CellularClass, N: int) -> PhiPsiSeq:
    z = kapranov_zeta(x, N, virtual_ok=True)
    dlog = z.log_derivative()
    return PhiPsiSeq.from_phi([dlog[n] for n in range(1, N + 1)])


def phi_explicit(symmetric_power_classes, n: int) -> LaurentPoly:
    """Phi_n from the classes ``[X^<0>], ..., [X^<n>]`` by the composition formula.

    ``Phi_n = sum_k (-1)^(k+1) (n/k) sum_{m_1+..+m_k=n} prod [X^<m_i>]``.
    The inner sum over compositions is accumulated part by part.
    """
    s = list(symmetric_power_classes)
    if n < 1:
        raise ValueError("n must be >= 1")
    if len(s) < n + 1:
        raise ValueError(f"need classes of X^<0>..X^<{n}>, got {len(s)}")
    s = [c if isinstance(c, LaurentPoly) else LaurentPoly.monomial(0, c) for c in s]
    # comp[t] = sum over compositions of t into the current number of parts
    comp = [ZERO] + s[1 : n + 1]
    total = comp[n] * n
    for k in range(2, n + 1):
        nxt = [ZERO] * (n + 1)
        for t in range(k, n + 1):
            acc = ZERO
            for m in range(1, t - k + 2):
                if s[m] and comp[t - m]:
                    acc = acc + s[m] * comp[t - m]
            nxt[t] = acc
        comp = nxt
        sign = 1 if k % 2 else -1
        total = total + comp[n] * n / k * sign
    return total


def _as_multi(P) -> PowerSeriesMulti:
    if isinstance(P, PowerSeriesMulti):
        return P
    if isinstance(P, PowerSeries1):
        return PowerSeriesMulti((P.var,), {(n,): c for n, c in enumerate(P.coeffs)}, P.trunc)
    raise TypeError("expected a power series")


def euler_product(psi, P, D: int, algo: str = "direct") -> PowerSeriesMulti:
    """``exp(sum_{n>=1} psi_n log P(T^n))`` to total degree ``D``.

    ``psi`` is a :class:`PhiPsiSeq` or a plain sequence ``psi_1, psi_2, ...``.
    ``algo`` is ``"direct"`` (exp/log) or ``"closed_form"`` (binomial
    expansion over nondecreasing degree tuples).
    """
    if not isinstance(psi, PhiPsiSeq):
        psi = PhiPsiSeq.from_psi(psi)
    P = _as_multi(P)
    if P.trunc < D:
        raise ValueError(f"P known to degree {P.trunc}, need {D}")
    P = P.truncate(D)
    if P.constant() != ONE:
        raise ValueError("non-invertible constant term: Euler product needs P(0) = 1")
    v = (P - 1).valuation()
    if v is None:
        return PowerSeriesMulti.one(P.vars, D)
    nmax = D // v
    if psi.N < nmax:
        raise ValueError(f"Psi known to n={psi.N}, need n={nmax}")
    if algo == "direct":
        return _euler_direct(psi, P, D, nmax)
    if algo == "closed_form":
        return _euler_closed_form(psi, P, D, v)
    raise ValueError(f"unknown algorithm {algo!r}")


def _euler_direct(psi: PhiPsiSeq, P: PowerSeriesMulti, D: int, nmax: int) -> PowerSeriesMulti:
    logP = P.log()
    acc: dict = {}
    for n in range(1, nmax + 1):
        x = psi.Psi(n)
        if not x:
            continue
        for key, c in logP.compose_scale(1, n, trunc=D).items():
            t = c * x
            acc[key] = acc[key] + t if key in acc else t
    S = PowerSeriesMulti(P.vars, acc, D)
    return S.exp()


def _euler_closed_form(psi: PhiPsiSeq, P: PowerSeriesMulti, D: int, v: int) -> PowerSeriesMulti:
    # A nondecreasing tuple f groups into distinct values f_g with multiplicities
    # n_g; the inner sum over ordered (n_1..n_r) is the coefficient of
    # prod_g A(T^{f_g})^{n_g}, weighted by prod_g binom(psi_{f_g}, n_g).
    A = P - 1
    fmax = D // v
    powers: dict = {}

    def power(f: int, k: int) -> PowerSeriesMulti:
        if (f, k) not in powers:
            if k == 0:
                powers[(f, k)] = PowerSeriesMulti.one(P.vars, D)
            else:
                base = A.compose_scale(1, f, trunc=D)
                powers[(f, k)] = power(f, k - 1) * base
        return powers[(f, k)]

    total: dict = {}

    def walk(f: int, budget: int, weight: LaurentPoly, series: PowerSeriesMulti | None):
        if f > fmax or f * v > budget:
            if series is not None:
                for key, c in series.items():
                    t = c * weight
                    total[key] = total[key] + t if key in total else t
            return
        walk(f + 1, budget, weight, series)
        x = psi.Psi(f)
        k = 1
        while k * f * v <= budget:
            w = weight * binomial_elem(x, k)
            if w:
                s = power(f, k) if series is None else series * power(f, k)
                walk(f + 1, budget - k * f * v, w, s)
            k += 1

    walk(1, D, ONE, None)
    out = PowerSeriesMulti(P.vars, total, D)
    return out + 1


def psi_integrality(x: CellularClass, N: int) -> list:
    """Which ``Psi_n(x)`` have integer coefficients, for ``n <= N`` (observation only)."""
    seq = phi_psi(x, N)
    return [p.is_integral() for p in seq.psi]
