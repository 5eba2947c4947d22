"""Motivic Moebius functions over the projective line.

For an obstruction set ``B`` on ``E`` the function ``mu_B`` is pinned by

    [(P^1)^B_d] = sum_{d' <= d} mu_B(d') prod_e [P^(d_e - d'_e)]

where ``(P^1)^B_d`` is the open set of tuples of effective divisors of
degrees ``d`` whose supports have empty common intersection along every
minimal element of ``B``.  Its generating series is the Euler product of
``P_B`` over the points of ``P^1``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from itertools import product

from .errors import StructuralError
from .euler import CellularClass, euler_product, kapranov_zeta, phi_psi
from .exactring import ONE, ZERO, LaurentPoly, TruncationError
from .fan import ObstructionSet, p_poly, q_series

P1 = CellularClass.projective(1)


def proj_class(n: int) -> LaurentPoly:
    """``[P^n] = 1 + L + ... + L^n``."""
    return LaurentPoly({i: 1 for i in range(n + 1)})


@dataclass
class MultiDegreeTable:
    """Values at degree vectors of total degree ``<= trunc``; absent keys are zero."""

    size: int
    trunc: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = {tuple(k): v for k, v in self.values.items() if v and sum(k) <= self.trunc}

    def __getitem__(self, d) -> LaurentPoly:
        d = tuple(d)
        if len(d) != self.size:
            raise KeyError(f"degree vector {d} has wrong length")
        if sum(d) > self.trunc:
            raise TruncationError(f"{d} is beyond total degree {self.trunc}")
        return self.values.get(d, ZERO)

    def __eq__(self, other):
        if not isinstance(other, MultiDegreeTable):
            return NotImplemented
        return self.size == other.size and self.trunc == other.trunc and self.values == other.values

    def keys(self):
        return self.values.keys()

    def items(self):
        return self.values.items()

    def restrict(self, trunc: int) -> "MultiDegreeTable":
        if trunc > self.trunc:
            raise TruncationError("cannot extend a table past its truncation")
        return MultiDegreeTable(self.size, trunc, self.values)

    def rows(self):
        for d in sorted(self.values, key=lambda k: (sum(k), k)):
            yield d, self.values[d]

    def to_json(self) -> str:
        return json.dumps(
            {
                "size": self.size,
                "trunc": self.trunc,
                "rows": [{"d": list(d), "value": str(v)} for d, v in self.rows()],
            },
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str) -> "MultiDegreeTable":
        data = json.loads(text)
        vals = {tuple(r["d"]): LaurentPoly.parse(r["value"]) for r in data["rows"]}
        return cls(data["size"], data["trunc"], vals)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d", "value"])
        for d, v in self.rows():
            w.writerow([" ".join(map(str, d)), str(v)])
        return buf.getvalue()


def mu_x_single(x: CellularClass, D: int) -> list:
    """Coefficients of ``1 / Z_X(T)`` up to ``T^D``."""
    z = kapranov_zeta(x, D, virtual_ok=x.virtual)
    return list(z.inverse().coeffs)


def mobius_table(B: ObstructionSet, D: int, algo: str = "direct") -> MultiDegreeTable:
    """``mu_B`` from the Euler product of ``P_B`` over ``P^1``, to total degree ``D``.

    The computation passes through rational ``Psi_n``; integer coefficients of
    the result are checked, not assumed.
    """
    if D < 0:
        raise ValueError("D must be >= 0")
    P = p_poly(B, max(D, B.size))
    if D == 0 or (P - 1).valuation() is None:
        return MultiDegreeTable(B.size, D, {(0,) * B.size: ONE})
    psi = phi_psi(P1, max(1, D))
    Z = euler_product(psi, P.truncate(D), D, algo=algo)
    table = MultiDegreeTable(B.size, D, dict(Z.items()))
    bad = [d for d, v in table.items() if not v.is_integral()]
    if bad:
        raise StructuralError(f"non-integral Moebius values at {bad[:5]}")
    return table


def mobius_special_case(B: ObstructionSet, D: int) -> MultiDegreeTable:
    """Closed form when the minimal elements of ``B`` have disjoint supports.

    On each block ``mu`` is ``mu_P1(k)`` along the diagonal ``(k,..,k)`` and 0
    off it; coordinates outside every block only allow degree 0.
    """
    blocks = B.partition_blocks()
    if blocks is None:
        raise ValueError("minimal elements of B overlap; no product closed form")
    blocks, free = blocks
    mu1 = mu_x_single(P1, D)
    # per block: list of (k, value) with k*|block| <= D
    per_block = []
    for blk in blocks:
        opts = [(k, mu1[k]) for k in range(D // len(blk) + 1) if mu1[k]]
        per_block.append((blk, opts))
    values = {}
    for choice in product(*[opts for _, opts in per_block]):
        d = [0] * B.size
        val = ONE
        for (blk, _), (k, v) in zip(per_block, choice):
            for e in blk:
                d[e] = k
            val = val * v
        if sum(d) <= D:
            values[tuple(d)] = val
    return MultiDegreeTable(B.size, D, values)


def xb_class_at(mu: MultiDegreeTable, d) -> LaurentPoly:
    """``[(P^1)^B_d] = sum_{d'<=d} mu(d') prod_e [P^(d_e - d'_e)]``."""
    d = tuple(d)
    if sum(d) > mu.trunc:
        raise TruncationError(f"need mu to total degree {sum(d)}, have {mu.trunc}")
    acc = ZERO
    for e, v in mu.items():
        if all(a <= b for a, b in zip(e, d)):
            term = v
            for a, b in zip(e, d):
                term = term * proj_class(b - a)
            acc = acc + term
    return acc


def xb_classes(B: ObstructionSet, D: int, path: str = "both") -> MultiDegreeTable:
    """Classes ``[(P^1)^B_d]`` for all ``d`` of total degree ``<= D``.

    ``path`` is ``"euler_QB"`` (Euler product of ``Q_B``), ``"convolution"``
    (``mu_B`` convolved with the zeta functions of ``P^1``) or ``"both"``,
    which computes the two and insists they agree.
    """
    if path not in ("euler_QB", "convolution", "both"):
        raise ValueError(f"unknown path {path!r}")
    out = None
    if path in ("euler_QB", "both"):
        Q = q_series(B, D)
        if D == 0:
            out = MultiDegreeTable(B.size, 0, {(0,) * B.size: ONE})
        else:
            Z = euler_product(phi_psi(P1, D), Q, D)
            out = MultiDegreeTable(B.size, D, dict(Z.items()))
    if path in ("convolution", "both"):
        mu = mobius_table(B, D)
        vals = {}
        for d in _vectors_upto(B.size, D):
            v = xb_class_at(mu, d)
            if v:
                vals[d] = v
        conv = MultiDegreeTable(B.size, D, vals)
        if out is not None and conv != out:
            diff = [d for d in _vectors_upto(B.size, D) if conv[d] != out[d]]
            raise StructuralError(f"Euler-product and convolution classes differ at {diff[:5]}")
        out = conv
    return out


def _vectors_upto(n: int, D: int):
    def rec(k, budget, acc):
        if k == n:
            yield tuple(acc)
            return
        for v in range(budget + 1):
            yield from rec(k + 1, budget - v, acc + [v])

    yield from rec(0, D, [])
