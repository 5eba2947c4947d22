"""Exact arithmetic in Q[L, 1/L] and truncated power series over it.

``LaurentPoly`` is the value type for every class handled by the package.
Internally it keeps a dense run of integer numerators starting at the lowest
exponent plus one shared positive denominator; this keeps multiplication in
plain Python ints, which matters inside the exp/log recurrences.

Power series carry their truncation explicitly.  Coefficients past ``trunc``
are unknown, never zero, and every binary operation truncates to the smaller
of its operands' orders.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from numbers import Rational

__all__ = [
    "LaurentPoly",
    "PowerSeries1",
    "PowerSeriesMulti",
    "TruncationError",
    "binomial_elem",
    "L",
    "ONE",
    "ZERO",
]


class TruncationError(ValueError):
    """Raised when an operation would need coefficients that were never known."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class LaurentPoly:
    """Laurent polynomial in the Lefschetz symbol ``L`` with rational coefficients.

    Instances are immutable and hashable.  ``LaurentPoly({3: 1, 1: -1})`` is
    ``L^3 - L``.
    """

    __slots__ = ("_lo", "_num", "_den", "_hash")

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif not isinstance(coeffs, dict):
            coeffs = {0: coeffs}
        fr = {int(k): _as_fraction(v) for k, v in coeffs.items() if v != 0}
        if not fr:
            self._set(0, (), 1)
            return
        den = reduce(math.lcm, (v.denominator for v in fr.values()), 1)
        lo, hi = min(fr), max(fr)
        num = [0] * (hi - lo + 1)
        for k, v in fr.items():
            num[k - lo] = v.numerator * (den // v.denominator)
        self._set(lo, num, den)

    # construction helpers -------------------------------------------------

    def _set(self, lo, num, den):
        # strip zeros and reduce the shared denominator
        num = list(num)
        i = 0
        while i < len(num) and num[i] == 0:
            i += 1
        j = len(num)
        while j > i and num[j - 1] == 0:
            j -= 1
        num = num[i:j]
        if not num:
            lo, den = 0, 1
        else:
            lo += i
            g = reduce(math.gcd, num, den)
            if g > 1:
                num = [c // g for c in num]
                den //= g
        self._lo = lo
        self._num = tuple(num)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, lo, num, den=1):
        obj = cls.__new__(cls)
        obj._set(lo, num, den)
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "LaurentPoly":
        c = _as_fraction(coeff)
        return cls._raw(exp, [c.numerator], c.denominator)

    @classmethod
    def from_int_cells(cls, cells: dict) -> "LaurentPoly":
        return cls({k: v for k, v in cells.items()})

    # accessors ------------------------------------------------------------

    @property
    def coeffs(self) -> dict:
        """Sparse exponent -> Fraction map (zero entries omitted)."""
        return {
            self._lo + i: Fraction(c, self._den)
            for i, c in enumerate(self._num)
            if c
        }

    def __getitem__(self, exp: int) -> Fraction:
        i = exp - self._lo
        if 0 <= i < len(self._num):
            return Fraction(self._num[i], self._den)
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._num

    def __bool__(self):
        return bool(self._num)

    def is_integral(self) -> bool:
        return self._den == 1

    def vdim(self) -> int:
        """Top exponent of ``L``; the class lies in filtration step ``-vdim``."""
        if not self._num:
            raise ValueError("undefined filtration level: vdim of zero")
        return self._lo + len(self._num) - 1

    def low_degree(self) -> int:
        if not self._num:
            raise ValueError("lowest exponent of zero is undefined")
        return self._lo

    def constant(self) -> Fraction:
        return self[0]

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.monomial(0, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._num:
            return self
        if not self._num:
            return other
        den = math.lcm(self._den, other._den)
        sa, sb = den // self._den, den // other._den
        lo = min(self._lo, other._lo)
        hi = max(self._lo + len(self._num), other._lo + len(other._num))
        out = [0] * (hi - lo)
        off = self._lo - lo
        for i, c in enumerate(self._num):
            out[off + i] += c * sa
        off = other._lo - lo
        for i, c in enumerate(other._num):
            out[off + i] += c * sb
        return LaurentPoly._raw(lo, out, den)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self._lo, [-c for c in self._num], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._num, other._num
        if not a or not b:
            return ZERO
        if len(a) == 1 and a[0] == 1 and self._den == 1:
            return LaurentPoly._raw(self._lo + other._lo, b, other._den)
        if len(b) == 1 and b[0] == 1 and other._den == 1:
            return LaurentPoly._raw(self._lo + other._lo, a, self._den)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return LaurentPoly._raw(self._lo + other._lo, out, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only scalar division is defined
        if isinstance(other, LaurentPoly):
            if len(other._num) != 1:
                raise TypeError("division by a non-monomial Laurent polynomial")
            c = Fraction(other._num[0], other._den)
            return self.shift(-other._lo) * (1 / c)
        c = _as_fraction(other)
        if c == 0:
            raise ZeroDivisionError("division of a Laurent polynomial by zero")
        sign = 1 if c > 0 else -1
        return LaurentPoly._raw(
            self._lo,
            [sign * x * c.denominator for x in self._num],
            self._den * abs(c.numerator),
        )

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            # negative powers only make sense for monomials
            if isinstance(n, int) and len(self._num) == 1:
                c = Fraction(self._num[0], self._den) ** n
                return LaurentPoly.monomial(self._lo * n, c)
            raise ValueError("power exponent must be a non-negative integer")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``L^k``."""
        if not self._num:
            return self
        return LaurentPoly._raw(self._lo + k, self._num, self._den)

    def substitute_power(self, k: int) -> "LaurentPoly":
        """Return ``a(L^k)`` for ``k >= 1``."""
        if k == 1 or not self._num:
            return self
        if k < 1:
            raise ValueError("substitute_power needs k >= 1")
        out = [0] * ((len(self._num) - 1) * k + 1)
        for i, c in enumerate(self._num):
            out[i * k] = c
        return LaurentPoly._raw(self._lo * k, out, self._den)

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.monomial(0, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (
            self._num == other._num
            and self._lo == other._lo
            and self._den == other._den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._lo, self._num, self._den))
        return self._hash

    # evaluation -----------------------------------------------------------

    def eval(self, x):
        """Substitute ``L = x``.  Exact for int/Fraction input, float otherwise."""
        if not self._num:
            return 0 if not isinstance(x, float) else 0.0
        if x == 0:
            if self._lo < 0:
                raise ZeroDivisionError("pole at zero")
        if isinstance(x, float):
            # Horner from the top, then scale by x^lo
            acc = 0.0
            for c in reversed(self._num):
                acc = acc * x + c
            return acc * x ** self._lo / self._den
        x = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self._num):
            acc = acc * x + c
        val = acc * x ** self._lo / self._den
        return val.numerator if val.denominator == 1 else val

    __call__ = eval

    # text -----------------------------------------------------------------

    def __str__(self):
        if not self._num:
            return "0"
        parts = []
        cs = self.coeffs
        for exp in sorted(cs, reverse=True):
            c = cs[exp]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if exp == 0:
                body = str(a)
            else:
                mono = "L" if exp == 1 else f"L^{exp}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly('{self}')"

    _TERM = re.compile(
        r"\s*([+-])?\s*"
        r"(?:(\d+(?:/\d+)?)\s*(\*)?\s*)?"
        r"(L(?:\s*\^\s*(-?\d+))?)?\s*"
    )

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``: accepts e.g. ``"1/2*L^2 - 1/2*L + L^-1 - 3"``."""
        s = text.strip()
        if not s:
            raise ValueError("empty Laurent polynomial text")
        pos = 0
        coeffs: dict = {}
        first = True
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"cannot parse {text!r} at offset {pos}")
            sign, num, star, mono, exp = m.groups()
            if sign is None and not first:
                raise ValueError(f"missing operator in {text!r} at offset {pos}")
            if num is None and mono is None:
                raise ValueError(f"dangling operator in {text!r} at offset {pos}")
            if star and mono is None:
                raise ValueError(f"dangling '*' in {text!r} at offset {pos}")
            c = Fraction(num) if num is not None else Fraction(1)
            if sign == "-":
                c = -c
            e = 0
            if mono is not None:
                e = int(exp) if exp is not None else 1
            coeffs[e] = coeffs.get(e, 0) + c
            pos = m.end()
            first = False
        return cls(coeffs)


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
L = LaurentPoly({1: 1})


def _lp(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly.monomial(0, x)


def binomial_elem(x, n: int) -> LaurentPoly:
    """``x (x-1) ... (x-n+1) / n!`` for a ring element ``x``."""
    if n < 0:
        raise ValueError("binomial order must be non-negative")
    x = _lp(x)
    out = ONE
    for i in range(n):
        out = out * (x - i)
    return out / math.factorial(n)


# ---------------------------------------------------------------------------
# one variable


class PowerSeries1:
    """Truncated series ``sum_{n<=trunc} c_n T^n`` with LaurentPoly coefficients."""

    __slots__ = ("coeffs", "trunc", "var")

    def __init__(self, coeffs, trunc: int | None = None, var: str = "T"):
        cs = [_lp(c) for c in coeffs]
        if trunc is None:
            trunc = len(cs) - 1
        if trunc < 0:
            raise ValueError("truncation order must be >= 0")
        cs = cs[: trunc + 1] + [ZERO] * (trunc + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.trunc = trunc
        self.var = var

    @classmethod
    def one(cls, trunc, var="T"):
        return cls([ONE], trunc, var)

    def __getitem__(self, n: int) -> LaurentPoly:
        if n < 0:
            return ZERO
        if n > self.trunc:
            raise TruncationError(f"coefficient {n} is beyond truncation {self.trunc}")
        return self.coeffs[n]

    def __len__(self):
        return self.trunc + 1

    def __eq__(self, other):
        if not isinstance(other, PowerSeries1):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def truncate(self, trunc: int) -> "PowerSeries1":
        if trunc > self.trunc:
            raise TruncationError("cannot extend a series past its truncation")
        return PowerSeries1(self.coeffs[: trunc + 1], trunc, self.var)

    def _other(self, other):
        if isinstance(other, PowerSeries1):
            return other
        return PowerSeries1([_lp(other)], self.trunc, self.var)

    def __add__(self, other):
        other = self._other(other)
        D = min(self.trunc, other.trunc)
        return PowerSeries1([self.coeffs[i] + other.coeffs[i] for i in range(D + 1)], D, self.var)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries1([-c for c in self.coeffs], self.trunc, self.var)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            c = _lp(other)
            return PowerSeries1([x * c for x in self.coeffs], self.trunc, self.var)
        D = min(self.trunc, other.trunc)
        a, b = self.coeffs, other.coeffs
        out = [ZERO] * (D + 1)
        for i in range(D + 1):
            if not a[i]:
                continue
            for j in range(D + 1 - i):
                if b[j]:
                    out[i + j] = out[i + j] + a[i] * b[j]
        return PowerSeries1(out, D, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = PowerSeries1.one(self.trunc, self.var)
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "PowerSeries1":
        c0 = self.coeffs[0]
        if not c0 or len(c0.coeffs) != 1:
            raise ValueError("non-invertible constant term")
        inv0 = ONE / c0
        D = self.trunc
        out = [inv0] + [ZERO] * D
        for n in range(1, D + 1):
            acc = ZERO
            for k in range(1, n + 1):
                if self.coeffs[k]:
                    acc = acc + self.coeffs[k] * out[n - k]
            out[n] = -(acc * inv0)
        return PowerSeries1(out, D, self.var)

    def log(self) -> "PowerSeries1":
        if self.coeffs[0] != ONE:
            raise ValueError("non-invertible constant term: log needs constant term 1")
        D = self.trunc
        a = self.coeffs
        g = [ZERO] * (D + 1)
        # n g_n = n a_n - sum_{k<n} k g_k a_{n-k}
        for n in range(1, D + 1):
            acc = a[n] * n
            for k in range(1, n):
                if g[k] and a[n - k]:
                    acc = acc - g[k] * a[n - k] * k
            g[n] = acc / n
        return PowerSeries1(g, D, self.var)

    def exp(self) -> "PowerSeries1":
        if self.coeffs[0]:
            raise ValueError("non-invertible constant term: exp needs constant term 0")
        D = self.trunc
        s = self.coeffs
        f = [ONE] + [ZERO] * D
        # n f_n = sum_{k=1}^n k s_k f_{n-k}
        for n in range(1, D + 1):
            acc = ZERO
            for k in range(1, n + 1):
                if s[k] and f[n - k]:
                    acc = acc + s[k] * f[n - k] * k
            f[n] = acc / n
        return PowerSeries1(f, D, self.var)

    def compose_scale(self, c=1, k: int = 1) -> "PowerSeries1":
        """Substitute ``T -> c T^k``; the result is known to degree ``k*trunc``."""
        if k < 1:
            raise ValueError("compose_scale needs k >= 1")
        c = _lp(c)
        D = self.trunc * k + (k - 1)
        out = [ZERO] * (D + 1)
        cp = ONE
        for n, a in enumerate(self.coeffs):
            out[n * k] = a * cp
            cp = cp * c
        return PowerSeries1(out, D, self.var)

    def log_derivative(self) -> "PowerSeries1":
        """``T d/dT log f``; constant term is zero."""
        g = self.log()
        return PowerSeries1([g.coeffs[n] * n for n in range(self.trunc + 1)], self.trunc, self.var)

    def eval_poly(self, x: LaurentPoly, upto: int | None = None) -> LaurentPoly:
        """Evaluate ``sum_{n<=upto} c_n x^n`` (a polynomial in T)."""
        upto = self.trunc if upto is None else upto
        acc = ZERO
        p = ONE
        for n in range(upto + 1):
            if self.coeffs[n]:
                acc = acc + self.coeffs[n] * p
            p = p * x
        return acc

    def __repr__(self):
        terms = [f"({c})*{self.var}^{n}" for n, c in enumerate(self.coeffs) if c]
        return f"PowerSeries1({' + '.join(terms) or '0'}; O({self.var}^{self.trunc + 1}))"


# ---------------------------------------------------------------------------
# several variables


def _add_vec(a, b):
    return tuple(x + y for x, y in zip(a, b))


class PowerSeriesMulti:
    """Series in variables ``vars`` truncated at total degree ``trunc``.

    ``coeffs`` maps exponent tuples (aligned with ``vars``) to nonzero
    LaurentPoly values.
    """

    __slots__ = ("vars", "trunc", "coeffs")

    def __init__(self, vars, coeffs, trunc: int):
        self.vars = tuple(vars)
        self.trunc = trunc
        n = len(self.vars)
        clean = {}
        for k, v in coeffs.items():
            k = tuple(int(x) for x in k)
            if len(k) != n or min(k, default=0) < 0:
                raise ValueError(f"bad exponent vector {k} for variables {self.vars}")
            v = _lp(v)
            if v and sum(k) <= trunc:
                clean[k] = v
        self.coeffs = clean

    @classmethod
    def one(cls, vars, trunc):
        return cls(vars, {(0,) * len(tuple(vars)): ONE}, trunc)

    @classmethod
    def from_polynomial(cls, vars, terms: dict, trunc: int):
        return cls(vars, terms, trunc)

    @property
    def nvars(self):
        return len(self.vars)

    def __getitem__(self, key) -> LaurentPoly:
        key = tuple(key)
        if sum(key) > self.trunc:
            raise TruncationError(f"coefficient {key} is beyond total degree {self.trunc}")
        return self.coeffs.get(key, ZERO)

    def items(self):
        return self.coeffs.items()

    def __eq__(self, other):
        if not isinstance(other, PowerSeriesMulti):
            return NotImplemented
        return self.vars == other.vars and self.trunc == other.trunc and self.coeffs == other.coeffs

    def truncate(self, trunc: int) -> "PowerSeriesMulti":
        if trunc > self.trunc:
            raise TruncationError("cannot extend a series past its truncation")
        return PowerSeriesMulti(self.vars, self.coeffs, trunc)

    def constant(self) -> LaurentPoly:
        return self.coeffs.get((0,) * self.nvars, ZERO)

    def valuation(self) -> int | None:
        """Lowest total degree of a nonzero non-constant term (None if there is none)."""
        degs = [sum(k) for k in self.coeffs if sum(k) > 0]
        return min(degs) if degs else None

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def _other(self, other):
        if isinstance(other, PowerSeriesMulti):
            self._check(other)
            return other
        return PowerSeriesMulti(self.vars, {(0,) * self.nvars: _lp(other)}, self.trunc)

    def __add__(self, other):
        other = self._other(other)
        D = min(self.trunc, other.trunc)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return PowerSeriesMulti(self.vars, out, D)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeriesMulti(self.vars, {k: -v for k, v in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            c = _lp(other)
            return PowerSeriesMulti(self.vars, {k: v * c for k, v in self.coeffs.items()}, self.trunc)
        other = self._other(other)
        D = min(self.trunc, other.trunc)
        out: dict = {}
        bs = [(k, sum(k), v) for k, v in other.coeffs.items()]
        for ka, va in self.coeffs.items():
            da = sum(ka)
            for kb, db, vb in bs:
                if da + db > D:
                    continue
                k = _add_vec(ka, kb)
                p = va * vb
                out[k] = out[k] + p if k in out else p
        return PowerSeriesMulti(self.vars, out, D)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = PowerSeriesMulti.one(self.vars, self.trunc)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def _graded(self):
        g = [dict() for _ in range(self.trunc + 1)]
        for k, v in self.coeffs.items():
            g[sum(k)][k] = v
        return g

    @staticmethod
    def _accumulate(target, ga, gb, weight=None):
        for ka, va in ga.items():
            for kb, vb in gb.items():
                k = _add_vec(ka, kb)
                p = va * vb
                target[k] = target[k] + p if k in target else p

    def inverse(self) -> "PowerSeriesMulti":
        c0 = self.constant()
        if not c0 or len(c0.coeffs) != 1:
            raise ValueError("non-invertible constant term")
        inv0 = ONE / c0
        D = self.trunc
        a = self._graded()
        f = [dict() for _ in range(D + 1)]
        f[0][(0,) * self.nvars] = inv0
        for n in range(1, D + 1):
            acc: dict = {}
            for k in range(1, n + 1):
                if a[k] and f[n - k]:
                    self._accumulate(acc, a[k], f[n - k])
            f[n] = {key: -(v * inv0) for key, v in acc.items() if v}
        out = {k: v for layer in f for k, v in layer.items()}
        return PowerSeriesMulti(self.vars, out, D)

    def log(self) -> "PowerSeriesMulti":
        if self.constant() != ONE:
            raise ValueError("non-invertible constant term: log needs constant term 1")
        D = self.trunc
        a = self._graded()
        g = [dict() for _ in range(D + 1)]
        # graded by total degree: n g_n = n a_n - sum_{k<n} k g_k a_{n-k}
        for n in range(1, D + 1):
            acc = {key: v * n for key, v in a[n].items()}
            for k in range(1, n):
                if g[k] and a[n - k]:
                    part: dict = {}
                    self._accumulate(part, g[k], a[n - k])
                    for key, v in part.items():
                        acc[key] = acc[key] - v * k if key in acc else v * (-k)
            g[n] = {key: v / n for key, v in acc.items() if v}
        out = {k: v for layer in g for k, v in layer.items()}
        return PowerSeriesMulti(self.vars, out, D)

    def exp(self) -> "PowerSeriesMulti":
        if self.constant():
            raise ValueError("non-invertible constant term: exp needs constant term 0")
        D = self.trunc
        s = self._graded()
        f = [dict() for _ in range(D + 1)]
        f[0][(0,) * self.nvars] = ONE
        # n f_n = sum_{k=1}^n k s_k f_{n-k}
        for n in range(1, D + 1):
            acc: dict = {}
            for k in range(1, n + 1):
                if s[k] and f[n - k]:
                    part: dict = {}
                    self._accumulate(part, s[k], f[n - k])
                    for key, v in part.items():
                        v = v * k
                        acc[key] = acc[key] + v if key in acc else v
            f[n] = {key: v / n for key, v in acc.items() if v}
        out = {k: v for layer in f for k, v in layer.items()}
        return PowerSeriesMulti(self.vars, out, D)

    def compose_scale(self, c=1, k: int = 1, trunc: int | None = None) -> "PowerSeriesMulti":
        """Substitute ``T_e -> c T_e^k`` for every variable.

        Known to total degree ``k*trunc + k - 1``; ``trunc`` may lower that.
        """
        if k < 1:
            raise ValueError("compose_scale needs k >= 1")
        c = _lp(c)
        D = self.trunc * k + (k - 1)
        if trunc is not None:
            D = min(D, trunc)
        out = {}
        for key, v in self.coeffs.items():
            n = sum(key)
            if n * k > D:
                continue
            out[tuple(x * k for x in key)] = v * c**n if c != ONE else v
        return PowerSeriesMulti(self.vars, out, D)

    def __repr__(self):
        return f"PowerSeriesMulti(vars={self.vars}, terms={len(self.coeffs)}, trunc={self.trunc})"
