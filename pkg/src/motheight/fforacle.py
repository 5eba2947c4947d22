"""Brute-force point counts over prime fields.

An effective divisor of degree ``d`` on ``P^1`` over ``F_p`` is a nonzero
binary form of degree ``d`` up to scalars; we normalize the first nonzero
coefficient to 1.  A family of forms has a common zero over the algebraic
closure iff either all of them vanish at infinity or the gcd of their
dehomogenizations is non-constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from sympy import divisors, isprime

from .errors import BudgetExceeded
from .euler import mobius_int
from .fan import Fan, ObstructionSet, b_sigma, mu0_table, nstar_enumerate

DEFAULT_BUDGET = 10**8


def _check_prime(p: int):
    if not isprime(p):
        raise ValueError(f"{p} is not prime")


# polynomials over F_p as tuples of coefficients, lowest degree first


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, b, p):
    a = _trim(a)
    b = _trim(b)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        q = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - q * c) % p
        a = _trim(a)
    return a


def _gcd_degree(polys, p) -> int:
    """Degree of the gcd of the given polynomials (-1 if all are zero)."""
    g: list = []
    for f in polys:
        f = _trim(f)
        while f:
            g, f = f, _polymod(g, f, p)
        if len(g) == 1:
            return 0
    return len(g) - 1


@lru_cache(maxsize=None)
def normalized_forms(p: int, degree: int) -> tuple:
    """All forms ``sum_i c_i u^i v^(degree-i)`` with first nonzero ``c_i = 1``."""
    out = []
    for coeffs in product(range(p), repeat=degree + 1):
        nz = [c for c in coeffs if c]
        if nz and nz[0] == 1:
            out.append(coeffs)
    return tuple(out)


def _common_zero(forms, p) -> bool:
    if not forms:
        return False
    if all(f[-1] == 0 for f in forms):
        return True  # every form vanishes at [1:0]
    return _gcd_degree(forms, p) > 0


def count_divisor_tuples(B: ObstructionSet, p: int, d, budget: int = DEFAULT_BUDGET) -> int:
    """Tuples of normalized forms of degrees ``d`` with no forbidden common zero."""
    _check_prime(p)
    d = tuple(d)
    if len(d) != B.size:
        raise ValueError(f"degree vector {d} has wrong length for |E| = {B.size}")
    sizes = [len(normalized_forms(p, k)) for k in d]
    required = 1
    for s in sizes:
        required *= s
    if required > budget:
        raise BudgetExceeded(required, budget)
    n = B.size
    # smallest coordinates outermost; each constraint is tested as soon as
    # its last coordinate is assigned
    order = sorted(range(n), key=lambda e: (sizes[e], e))
    pos = {e: i for i, e in enumerate(order)}
    checks: list = [[] for _ in range(n)]
    for b in B.bmin:
        members = [e for e in range(n) if b[e]]
        checks[max(pos[e] for e in members)].append(members)
    pools = [normalized_forms(p, d[e]) for e in order]
    cache: dict = {}

    def bad(members, chosen):
        key = tuple(chosen[e] for e in members)
        if key not in cache:
            cache[key] = _common_zero(key, p)
        return cache[key]

    chosen: dict = {}

    def rec(k):
        if k == n:
            return 1
        e = order[k]
        total = 0
        for form in pools[k]:
            chosen[e] = form
            if any(bad(m, chosen) for m in checks[k]):
                continue
            total += rec(k + 1)
        return total

    return rec(0)


def count_u0d(f: Fan, p: int, d: int, budget: int = DEFAULT_BUDGET) -> int:
    """Morphisms ``P^1 -> X_Sigma`` of anticanonical degree ``d`` meeting the torus."""
    _check_prime(p)
    B = b_sigma(f)
    return (p - 1) ** f.rank * sum(
        count_divisor_tuples(B, p, v, budget) for v in nstar_enumerate(f, d)
    )


def closed_points_p1(p: int, n: int) -> int:
    """Closed points of degree ``n`` on ``P^1`` over ``F_p``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = sum(mobius_int(n // k) * (p**k + 1) for k in divisors(n))
    assert total % n == 0
    return total // n


# small integer multivariate series, kept apart from the exact-ring code


def _imul(a: dict, b: dict, D: int) -> dict:
    out: dict = {}
    for ka, va in a.items():
        sa = sum(ka)
        for kb, vb in b.items():
            if sa + sum(kb) > D:
                continue
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def _ipow(a: dict, e: int, n: int, D: int) -> dict:
    res = {(0,) * n: 1}
    for _ in range(e):
        res = _imul(res, a, D)
    return res


def _subst_power(a: dict, k: int, D: int) -> dict:
    return {tuple(x * k for x in key): v for key, v in a.items() if sum(key) * k <= D}


def _p_int(B: ObstructionSet) -> dict:
    n = B.size
    return {tuple((m >> i) & 1 for i in range(n)): v for m, v in mu0_table(B).items() if v}


def _q_int(B: ObstructionSet, D: int) -> dict:
    out = _p_int(B)
    n = B.size
    for i in range(n):
        geom = {tuple(k if j == i else 0 for j in range(n)): 1 for k in range(D + 1)}
        out = _imul(out, geom, D)
    return out


def finite_euler_product(poly: dict, n_vars: int, p: int, D: int) -> dict:
    """``prod_{k>=1} poly(T^k)^(#closed points of degree k)`` to total degree ``D``."""
    res = {(0,) * n_vars: 1}
    for k in range(1, D + 1):
        factor = _subst_power(poly, k, D)
        res = _imul(res, _ipow(factor, closed_points_p1(p, k), n_vars, D), D)
    return res


@dataclass
class FFEulerReport:
    ok: bool
    checked: int
    mismatches: list = field(default_factory=list)


def check_ff_euler(B: ObstructionSet, p: int, D: int, mu_table=None) -> FFEulerReport:
    """Compare finite Euler products of ``Q_B`` / ``P_B`` with brute-force counts.

    ``mu_table`` (a specialization source for ``P_B``) defaults to the exact
    Moebius table evaluated at ``L = p``.
    """
    _check_prime(p)
    n = B.size
    zq = finite_euler_product(_q_int(B, D), n, p, D)
    zp = finite_euler_product(_p_int(B), n, p, D)
    if mu_table is None:
        from .moebius import mobius_table

        mu_table = mobius_table(B, D)
    mismatches = []
    checked = 0
    for d in _vectors(n, D):
        brute = count_divisor_tuples(B, p, d)
        if zq.get(d, 0) != brute:
            mismatches.append(("Q_B", d, zq.get(d, 0), brute))
        spec = mu_table[d].eval(p)
        if zp.get(d, 0) != spec:
            mismatches.append(("P_B", d, zp.get(d, 0), spec))
        checked += 1
    return FFEulerReport(not mismatches, checked, mismatches)


def _vectors(n: int, D: int):
    def rec(k, budget, acc):
        if k == n:
            yield tuple(acc)
            return
        for v in range(budget + 1):
            yield from rec(k + 1, budget - v, acc + [v])

    yield from rec(0, D, [])
