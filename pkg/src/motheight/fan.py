"""Fans of smooth projective toric varieties and the combinatorics derived from them.

A fan is given by primitive rays in ``Z^r`` and its maximal cones (sets of
ray indices).  From it we build the obstruction set ``B`` (subsets of rays
whose Cox coordinates may not vanish together), the Boolean Moebius function
``mu0_B``, the polynomials ``P_B``/``Q_B``, the lattice of degree vectors
``d`` with ``sum d_a rho_a = 0`` and the cone constant ``alpha*``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations

import sympy

from .errors import FanError, StructuralError
from .exactring import ONE, ZERO, LaurentPoly, PowerSeriesMulti

# ---------------------------------------------------------------------------
# the fan itself


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: tuple
    max_cones: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        if self.rank < 1:
            raise FanError("rank must be >= 1")
        for i, r in enumerate(rays):
            if len(r) != self.rank:
                raise FanError(f"ray {i} has {len(r)} entries, expected {self.rank}")
            if reduce(math.gcd, r, 0) != 1:
                raise FanError(f"ray {i} = {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise FanError("rays are not pairwise distinct")
        for j, c in enumerate(cones):
            if not c:
                raise FanError(f"max cone {j} is empty")
            if len(set(c)) != len(c):
                raise FanError(f"max cone {j} repeats a ray index")
            bad = [i for i in c if not 0 <= i < len(rays)]
            if bad:
                raise FanError(f"max cone {j} refers to unknown rays {bad}")
            if sympy.Matrix([rays[i] for i in c]).rank() != len(c):
                raise FanError(f"max cone {j} has linearly dependent rays {list(c)}")

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @property
    def dim(self) -> int:
        return self.rank

    @cached_property
    def cones(self) -> tuple:
        """All cones (as sorted index tuples), faces of maximal ones included."""
        out = set()
        for c in self.max_cones:
            for k in range(len(c) + 1):
                out.update(combinations(c, k))
        return tuple(sorted(out, key=lambda c: (len(c), c)))

    def to_dict(self) -> dict:
        return {"rank": self.rank, "rays": [list(r) for r in self.rays],
                "max_cones": [list(c) for c in self.max_cones]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def fan_from_dict(data: dict, name: str = "") -> Fan:
    try:
        return Fan(int(data["rank"]), data["rays"], data["max_cones"], name=name)
    except KeyError as exc:
        raise FanError(f"fan data is missing key {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FanError):
            raise
        raise FanError(f"malformed fan data: {exc}") from None


def fan_from_json(text: str, name: str = "") -> Fan:
    """Parse the fan JSON format; unknown keys are ignored."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FanError(f"JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise FanError("fan JSON must be an object")
    return fan_from_dict(data, name=name)


def projective_space_fan(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = [tuple(j for j in range(n + 1) if j != i) for i in range(n + 1)]
    return Fan(n, rays, cones, name=f"P{n}")


def hirzebruch_fan(m: int) -> Fan:
    """Rays (1,0), (-1,m), (0,1), (0,-1)."""
    if m < 0:
        raise FanError("Hirzebruch index must be >= 0")
    rays = [(1, 0), (-1, m), (0, 1), (0, -1)]
    cones = [(0, 2), (0, 3), (1, 2), (1, 3)]
    return Fan(2, rays, cones, name=f"hirzebruch:{m}")


def product_fan(a: Fan, b: Fan) -> Fan:
    rays = [r + (0,) * b.rank for r in a.rays] + [(0,) * a.rank + r for r in b.rays]
    off = a.n_rays
    cones = [ca + tuple(i + off for i in cb) for ca in a.max_cones for cb in b.max_cones]
    return Fan(a.rank + b.rank, rays, cones, name=f"{a.name}x{b.name}")


def builtin_fan(name: str) -> Fan:
    """Registry: ``p1``, ``p2``, ``p3``, ``p1xp1``, ``p1xp1xp1``, ``hirzebruch:m``."""
    key = name.strip().lower()
    if key in ("p1", "p2", "p3"):
        return projective_space_fan(int(key[1]))
    if key == "p1xp1":
        f = product_fan(projective_space_fan(1), projective_space_fan(1))
        return Fan(f.rank, f.rays, f.max_cones, name="p1xp1")
    if key == "p1xp1xp1":
        p1 = projective_space_fan(1)
        f = product_fan(product_fan(p1, p1), p1)
        return Fan(f.rank, f.rays, f.max_cones, name="p1xp1xp1")
    if key.startswith("hirzebruch:"):
        try:
            m = int(key.split(":", 1)[1])
        except ValueError:
            raise FanError(f"bad Hirzebruch index in {name!r}") from None
        return hirzebruch_fan(m)
    raise FanError(f"unknown builtin fan {name!r}")


BUNDLED_FANS = ("p1", "p2", "p3", "p1xp1") + tuple(f"hirzebruch:{m}" for m in range(5))


# ---------------------------------------------------------------------------
# validation


@dataclass
class FanReport:
    smooth: bool
    complete: bool
    issues: list

    def __bool__(self):
        return self.smooth and self.complete


def _minors_gcd(rows) -> int:
    M = sympy.Matrix(rows)
    k = M.rows
    g = 0
    for cols in combinations(range(M.cols), k):
        g = math.gcd(g, int(M.extract(list(range(k)), list(cols)).det()))
        if g == 1:
            break
    return g


def fan_validate(f: Fan) -> FanReport:
    issues = []
    smooth = True
    for j, c in enumerate(f.max_cones):
        g = _minors_gcd([f.rays[i] for i in c])
        if g != 1:
            smooth = False
            issues.append(f"cone {j} {list(c)} is not unimodular (minor gcd {g})")
    complete = True
    lowdim = [j for j, c in enumerate(f.max_cones) if len(c) != f.rank]
    if lowdim:
        complete = False
        issues.append(f"max cones {lowdim} are not full-dimensional")
    else:
        facets: dict = {}
        for c in f.max_cones:
            for face in combinations(c, f.rank - 1):
                facets[face] = facets.get(face, 0) + 1
        unpaired = sorted(face for face, k in facets.items() if k != 2)
        if unpaired:
            complete = False
            issues.append(f"facets not shared by exactly two cones: {[list(x) for x in unpaired]}")
    return FanReport(smooth, complete, issues)


def pic_rank(f: Fan) -> int:
    return f.n_rays - f.rank


# ---------------------------------------------------------------------------
# obstruction sets and the Boolean Moebius function


def _mask(vec) -> int:
    return sum(1 << i for i, x in enumerate(vec) if x)


def _vec(mask: int, n: int) -> tuple:
    return tuple((mask >> i) & 1 for i in range(n))


@dataclass(frozen=True)
class ObstructionSet:
    """Up-closed ``B`` in ``{0,1}^E`` given by its antichain of minimal elements."""

    size: int
    bmin: tuple

    def __post_init__(self):
        vecs = tuple(sorted({tuple(int(x) for x in b) for b in self.bmin}, reverse=True))
        for b in vecs:
            if len(b) != self.size or any(x not in (0, 1) for x in b):
                raise ValueError(f"bad 0/1 vector {b} for |E| = {self.size}")
        masks = [_mask(b) for b in vecs]
        for a in masks:
            for b in masks:
                if a != b and a & b == a:
                    raise ValueError("bmin is not an antichain")
        object.__setattr__(self, "bmin", vecs)

    @classmethod
    def from_masks(cls, size: int, masks) -> "ObstructionSet":
        return cls(size, tuple(_vec(m, size) for m in masks))

    @cached_property
    def masks(self) -> tuple:
        return tuple(_mask(b) for b in self.bmin)

    def in_B(self, n) -> bool:
        m = n if isinstance(n, int) else _mask(n)
        return any(b & m == b for b in self.masks)

    def ind_A(self, n) -> int:
        return 0 if self.in_B(n) else 1

    def ell(self, n) -> int:
        m = n if isinstance(n, int) else _mask(n)
        return sum(1 for b in self.masks if b & m == b)

    def partition_blocks(self):
        """``(blocks, free)`` if the minimal elements have pairwise disjoint supports."""
        seen = 0
        for b in self.masks:
            if b & seen:
                return None
            seen |= b
        blocks = [tuple(i for i in range(self.size) if (b >> i) & 1) for b in self.masks]
        free = tuple(i for i in range(self.size) if not (seen >> i) & 1)
        return blocks, free


def b_sigma(f: Fan) -> ObstructionSet:
    """Minimal sets of rays meeting the complement of every maximal cone."""
    n = f.n_rays
    comps = [((1 << n) - 1) & ~_mask([int(i in c) for i in range(n)]) for c in f.max_cones]
    hitting = [m for m in range(1 << n) if all(m & c for c in comps)]
    minimal = [m for m in hitting if not any(h != m and h & m == h for h in hitting)]
    return ObstructionSet.from_masks(n, minimal)


def mu0_table(B: ObstructionSet, method: str = "crosscut") -> dict:
    """``mask -> mu0_B`` over all of ``{0,1}^E``.

    ``"inversion"`` sums ``(-1)^{|n|-|n'|} ind_A(n')`` over the interval below
    ``n``; ``"crosscut"`` sums ``(-1)^{|S|}`` over subsets ``S`` of the
    minimal elements whose join is ``n``.
    """
    n = B.size
    if method == "inversion":
        ind = [B.ind_A(m) for m in range(1 << n)]
        out = {}
        for m in range(1 << n):
            s = 0
            sub = m
            while True:
                if ind[sub]:
                    s += -1 if (bin(m).count("1") - bin(sub).count("1")) % 2 else 1
                if sub == 0:
                    break
                sub = (sub - 1) & m
            out[m] = s
        return out
    if method == "crosscut":
        joins = {0: 1}
        for b in B.masks:
            nxt = dict(joins)
            for m, v in joins.items():
                nxt[m | b] = nxt.get(m | b, 0) - v
            joins = nxt
        return {m: joins.get(m, 0) for m in range(1 << n)}
    raise ValueError(f"unknown method {method!r}")


def mu0(B: ObstructionSet, n) -> int:
    """``mu0_B(n)`` by the crosscut sum, restricted to minimal elements below ``n``."""
    m = n if isinstance(n, int) else _mask(n)
    joins = {0: 1}
    for b in B.masks:
        if b & m != b:
            continue
        nxt = dict(joins)
        for j, v in joins.items():
            nxt[j | b] = nxt.get(j | b, 0) - v
        joins = nxt
    return joins.get(m, 0)


def _vars(B: ObstructionSet) -> tuple:
    return tuple(f"T{i}" for i in range(B.size))


def p_poly(B: ObstructionSet, D: int | None = None) -> PowerSeriesMulti:
    """``P_B = sum_n mu0_B(n) T^n``; exact when ``D >= |E|`` (default)."""
    D = B.size if D is None else D
    terms = {_vec(m, B.size): v for m, v in mu0_table(B).items() if v}
    return PowerSeriesMulti(_vars(B), terms, D)


def q_series(B: ObstructionSet, D: int) -> PowerSeriesMulti:
    """``Q_B = P_B / prod_e (1 - T_e)`` to total degree ``D``."""
    vars_ = _vars(B)
    Q = p_poly(B, D)
    for i in range(B.size):
        geom = PowerSeriesMulti(
            vars_, {tuple(k if j == i else 0 for j in range(B.size)): ONE for k in range(D + 1)}, D
        )
        Q = Q * geom
    return Q


# ---------------------------------------------------------------------------
# the monoid N_* of degree vectors


def _solve_cone(f: Fan):
    """A full-dimensional cone and the integer inverse of its ray matrix."""
    for c in f.max_cones:
        if len(c) == f.rank:
            M = sympy.Matrix([f.rays[i] for i in c]).T
            if abs(M.det()) == 1:
                return c, [[int(x) for x in row] for row in M.inv().tolist()]
    raise FanError("no unimodular full-dimensional cone to parametrize N_*")


def _iter_nstar(f: Fan, dmax: int):
    """Yield every ``d`` in ``N_*`` with total degree ``<= dmax``."""
    cone, Minv = _solve_cone(f)
    free = [i for i in range(f.n_rays) if i not in cone]
    r = f.rank

    def rec(k, budget, vals, partial):
        if k == len(free):
            # cone coordinates solve sum_{cone} d_a rho_a = -partial
            cvals = [-sum(Minv[i][j] * partial[j] for j in range(r)) for i in range(r)]
            if min(cvals, default=0) < 0 or sum(cvals) > budget:
                return
            d = [0] * f.n_rays
            for i, v in zip(free, vals):
                d[i] = v
            for i, v in zip(cone, cvals):
                d[i] = v
            yield tuple(d)
            return
        ray = f.rays[free[k]]
        for v in range(budget + 1):
            yield from rec(
                k + 1, budget - v, vals + [v],
                [p + v * x for p, x in zip(partial, ray)],
            )

    yield from rec(0, dmax, [], [0] * r)


def nstar_enumerate(f: Fan, d: int) -> list:
    """All ``d in N^rays`` with ``sum d_a rho_a = 0`` and ``sum d_a = d``."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    return sorted(v for v in _iter_nstar(f, d) if sum(v) == d)


def nstar_counts(f: Fan, dmax: int) -> list:
    """``[n_Sigma(0), ..., n_Sigma(dmax)]``."""
    counts = [0] * (dmax + 1)
    for v in _iter_nstar(f, dmax):
        counts[sum(v)] += 1
    return counts


def _integer_kernel(rows, ncols) -> list:
    """Lattice basis (as column vectors) of ``{x in Z^ncols : rows . x = 0}``."""
    A = [list(r) for r in rows]
    U = [[int(i == j) for j in range(ncols)] for i in range(ncols)]  # columns of U

    def colop(dst, src, k):
        # column dst -= k * column src
        for row in A:
            row[dst] -= k * row[src]
        for row in U:
            row[dst] -= k * row[src]

    def swap(a, b):
        for row in A + U:
            row[a], row[b] = row[b], row[a]

    piv = 0
    for row in A:
        if piv >= ncols:
            break
        while True:
            nz = [j for j in range(piv, ncols) if row[j]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(row[j]))
            swap(piv, j0)
            done = True
            for j in range(piv + 1, ncols):
                if row[j]:
                    colop(j, piv, row[j] // row[piv])
                    if row[j]:
                        done = False
            if done:
                piv += 1
                break
    return [[U[i][j] for i in range(ncols)] for j in range(piv, ncols)]


@dataclass
class AlphaStar:
    value: Fraction | float
    exact: bool
    generators: list = field(default_factory=list)

    def __float__(self):
        return float(self.value)


def _monoid_generators(f: Fan):
    """Kernel basis and, for Picard rank <= 2, the Hilbert basis of N_* in it."""
    n = f.n_rays
    rows = [[f.rays[a][i] for a in range(n)] for i in range(f.rank)]
    K = _integer_kernel(rows, n)
    k = len(K)

    def embed(x):
        return tuple(sum(K[j][a] * x[j] for j in range(k)) for a in range(n))

    if k == 1:
        g = embed((1,))
        if min(g) < 0:
            g = tuple(-x for x in g)
        return K, [g]
    if k != 2:
        return K, None
    # constraint a: <w_a, x> >= 0 with w_a = (K[0][a], K[1][a])
    ws = [(K[0][a], K[1][a]) for a in range(n)]
    cands = set()
    for wx, wy in ws:
        if (wx, wy) == (0, 0):
            continue
        g = math.gcd(wx, wy)
        for s in (1, -1):
            x = (-s * wy // g, s * wx // g)
            if all(ax * x[0] + ay * x[1] >= 0 for ax, ay in ws):
                cands.add(x)
    if len(cands) != 2:
        raise StructuralError(f"cone of N_* is not a pointed 2-dim cone: rays {sorted(cands)}")
    u, v = sorted(cands)
    if u[0] * v[1] - u[1] * v[0] < 0:
        u, v = v, u
    det = u[0] * v[1] - u[1] * v[0]
    # lattice points of the closed parallelogram spanned by u and v
    xs = [0, u[0], v[0], u[0] + v[0]]
    ys = [0, u[1], v[1], u[1] + v[1]]
    pts = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            a = Fraction(x * v[1] - y * v[0], det)
            b = Fraction(u[0] * y - u[1] * x, det)
            if 0 <= a <= 1 and 0 <= b <= 1 and (x, y) != (0, 0):
                pts.append((x, y))

    def cross(o, p, q):
        return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])

    # the boundary of conv(points) facing the origin, walked from u to v;
    # sort by position between the rays and keep the nearest point per direction
    def key(p):
        a = p[0] * v[1] - p[1] * v[0]
        b = u[0] * p[1] - u[1] * p[0]
        return Fraction(b, a + b)

    nearest: dict = {}
    for p in pts:
        k_ = key(p)
        if k_ not in nearest or abs(p[0]) + abs(p[1]) < abs(nearest[k_][0]) + abs(nearest[k_][1]):
            nearest[k_] = p
    chain = []
    for _, p in sorted(nearest.items()):
        while len(chain) >= 2 and cross(chain[-2], chain[-1], p) > 0:
            chain.pop()
        chain.append(p)
    hb = chain
    basis = [embed(p) for p in hb]
    for p, q in zip(hb, hb[1:]):
        if abs(p[0] * q[1] - p[1] * q[0]) != 1:
            raise StructuralError(f"non-unimodular consecutive Hilbert basis pair {p}, {q}")
    return K, basis


def alpha_star(f: Fan, approx_dmax: int = 40) -> AlphaStar:
    """``lim_{t->1} (1-t)^rk sum_{d in N_*} t^{|d|}``.

    Exact for Picard rank <= 2 through a unimodular decomposition of the cone
    of ``N_*``; otherwise a polynomial fit of cumulative counts, flagged
    inexact.
    """
    rk = pic_rank(f)
    _, basis = _monoid_generators(f)
    if basis is not None:
        degs = [sum(g) for g in basis]
        if rk == 1:
            return AlphaStar(Fraction(1, degs[0]), True, basis)
        val = sum(Fraction(1, a * b) for a, b in zip(degs, degs[1:]))
        return AlphaStar(val, True, basis)
    import numpy as np

    # cumulative counts grow like alpha*/rk! (D + c)^rk, so their rk-th root
    # is asymptotically linear in D; its fitted slope recovers alpha*
    counts = nstar_counts(f, approx_dmax)
    cum = np.cumsum(counts).astype(float)
    lo = approx_dmax // 2
    ds = np.arange(lo, approx_dmax + 1, dtype=float)
    slope = np.polyfit(ds, cum[lo:] ** (1.0 / rk), 1)[0]
    return AlphaStar(float(slope**rk * math.factorial(rk)), False, [])


def monoid_period(f: Fan) -> int:
    """lcm of generator degrees of N_*; n_Sigma is polynomial on residue classes mod it."""
    _, basis = _monoid_generators(f)
    if basis is None:
        raise NotImplementedError("period needs Picard rank <= 2")
    return reduce(math.lcm, (sum(g) for g in basis), 1)


# ---------------------------------------------------------------------------
# Phi_n of the toric variety


def orbit_class(f: Fan, n: int = 1) -> LaurentPoly:
    """``sum_{cones} (L^n - 1)^(r - dim cone)``."""
    t = LaurentPoly.monomial(n) - 1
    acc = ZERO
    for c in f.cones:
        acc = acc + t ** (f.rank - len(c))
    return acc


def mu0_density(f: Fan, n: int, B: ObstructionSet | None = None) -> LaurentPoly:
    """``sum_{x in {0,1}^E} mu0_B(x) L^(-n|x|)``, i.e. ``P_B`` at ``T_e = L^-n``."""
    B = b_sigma(f) if B is None else B
    acc = ZERO
    for m, v in mu0_table(B).items():
        if v:
            acc = acc + LaurentPoly.monomial(-n * bin(m).count("1"), v)
    return acc


def phi_toric(f: Fan, n: int) -> LaurentPoly:
    """``Phi_n(X_Sigma)`` by torus-orbit stratification, checked against ``mu0``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    phi = orbit_class(f, n)
    rk = pic_rank(f)
    rhs = (ONE - LaurentPoly.monomial(-n)) ** rk * phi * LaurentPoly.monomial(-n * f.rank)
    if mu0_density(f, n) != rhs:
        raise StructuralError(f"mu0 density identity fails for {f.name or f.rays} at n={n}")
    return phi
