"""Exact arithmetic over the Gaussian rationals.

Polynomials live in two formal variables ``z`` and ``w``, where ``w`` stands
in for the complex conjugate of ``z``.  A function of ``z`` that is real on the
locus ``w = conj(z)`` is represented by a polynomial fixed by
:func:`conj_involution`.

Internally a :class:`BiPoly` keeps integer numerators (real and imaginary
parts separately) over one positive common denominator.  Large products go
through Kronecker substitution so that the heavy lifting happens inside
Python's big-integer multiplication.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Key = Tuple[int, int]
Scalar = Union[int, Fraction, "GaussianRational"]

__all__ = [
    "GaussianRational",
    "BiPoly",
    "RatFn",
    "conj_involution",
    "derive",
    "ddbar_log",
    "ratfn_equal",
    "ratfn_residual",
]


class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction] = 0):
        if isinstance(re, str):
            parsed = GaussianRational.parse(re)
            re, im = parsed.re, parsed.im
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        if isinstance(x, str):
            return cls.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    _TOKEN = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*(\*?\s*i)?\s*")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"a/b"``, ``"a/b+c/d i"``, ``"-i"``, ``"3/2 i"`` and similar."""
        s = text.strip()
        if not s:
            raise ValueError("empty Gaussian rational")
        pos = 0
        re_part, im_part = Fraction(0), Fraction(0)
        seen = 0
        while pos < len(s):
            m = cls._TOKEN.match(s, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"malformed Gaussian rational: {text!r}")
            sign, mag, imag = m.groups()
            if mag is None and imag is None:
                raise ValueError(f"malformed Gaussian rational: {text!r}")
            if seen and not sign:
                raise ValueError(f"malformed Gaussian rational: {text!r}")
            value = Fraction(mag) if mag is not None else Fraction(1)
            if sign == "-":
                value = -value
            if imag:
                im_part += value
            else:
                re_part += value
            seen += 1
            pos = m.end()
        if seen > 2:
            raise ValueError(f"malformed Gaussian rational: {text!r}")
        return cls(re_part, im_part)

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)} i"

    def __repr__(self) -> str:
        return f"GaussianRational({str(self)!r})"

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.re) if not self.im else hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other) -> "GaussianRational":
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "GaussianRational":
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "GaussianRational":
        return (-self) + other

    def __mul__(self, other) -> "GaussianRational":
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        if not self.im and not other.im:
            return GaussianRational(self.re * other.re)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussianRational":
        other = GaussianRational.coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero Gaussian rational")
        n = other.re * other.re + other.im * other.im
        return self * GaussianRational(other.re / n, -other.im / n)

    def __rtruediv__(self, other) -> "GaussianRational":
        return GaussianRational.coerce(other) / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


# -- integer polynomial kernel ------------------------------------------------

_NAIVE_LIMIT = 600


def _mul_naive(a: Dict[Key, int], b: Dict[Key, int]) -> Dict[Key, int]:
    out: Dict[Key, int] = {}
    get = out.get
    for (i, j), c in a.items():
        for (k, l), d in b.items():
            key = (i + k, j + l)
            out[key] = get(key, 0) + c * d
    return {k: v for k, v in out.items() if v}


def _pack(d: Dict[Key, int], stride: int, nb: int, length: int) -> int:
    pos = bytearray(length * nb)
    neg = bytearray(length * nb)
    for (i, j), c in d.items():
        k = (i + stride * j) * nb
        if c > 0:
            pos[k:k + nb] = c.to_bytes(nb, "little")
        else:
            neg[k:k + nb] = (-c).to_bytes(nb, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _mul_kronecker(a: Dict[Key, int], b: Dict[Key, int]) -> Dict[Key, int]:
    if not a or not b:
        return {}
    stride = max(i for i, _ in a) + max(i for i, _ in b) + 1
    la = max(i + stride * j for i, j in a) + 1
    lb = max(i + stride * j for i, j in b) + 1
    bits = (
        max(abs(v) for v in a.values()).bit_length()
        + max(abs(v) for v in b.values()).bit_length()
        + min(len(a), len(b)).bit_length()
    )
    nb = bits // 8 + 1
    length = la + lb - 1
    prod = _pack(a, stride, nb, la) * _pack(b, stride, nb, lb)
    # shift every digit into [0, 2^(8nb)) so the bytes decode independently
    bias = int.from_bytes((b"\x00" * (nb - 1) + b"\x80") * length, "little")
    data = (prod + bias).to_bytes(length * nb, "little")
    half = 1 << (8 * nb - 1)
    out: Dict[Key, int] = {}
    frm = int.from_bytes
    for k in range(length):
        v = frm(data[k * nb:(k + 1) * nb], "little") - half
        if v:
            out[(k % stride, k // stride)] = v
    return out


def _mul_int(a: Dict[Key, int], b: Dict[Key, int]) -> Dict[Key, int]:
    if not a or not b:
        return {}
    if len(a) * len(b) <= _NAIVE_LIMIT or min(len(a), len(b)) <= 2:
        return _mul_naive(a, b)
    return _mul_kronecker(a, b)


def _add_into(out: Dict[Key, int], d: Dict[Key, int], scale: int = 1) -> None:
    get = out.get
    for k, v in d.items():
        out[k] = get(k, 0) + v * scale


class BiPoly:
    """Sparse polynomial in ``z`` and ``w`` with Gaussian rational coefficients.

    Immutable.  Coefficients are stored as integer numerators ``_re``/``_im``
    over the common positive denominator ``_den`` in lowest terms.
    """

    __slots__ = ("_re", "_im", "_den", "_hash")

    def __init__(self, terms=None):
        re_t: Dict[Key, Fraction] = {}
        im_t: Dict[Key, Fraction] = {}
        if terms is None:
            items: Iterable = ()
        elif isinstance(terms, Mapping):
            items = ((k[0], k[1], v) for k, v in terms.items())
        else:
            items = terms
        for dz, dw, c in items:
            dz, dw = int(dz), int(dw)
            if dz < 0 or dw < 0:
                raise ValueError("negative exponent")
            c = GaussianRational.coerce(c)
            if c.re:
                re_t[(dz, dw)] = re_t.get((dz, dw), 0) + c.re
            if c.im:
                im_t[(dz, dw)] = im_t.get((dz, dw), 0) + c.im
        den = 1
        for v in (*re_t.values(), *im_t.values()):
            den = den * v.denominator // math.gcd(den, v.denominator)
        re_i = {k: int(v * den) for k, v in re_t.items()}
        im_i = {k: int(v * den) for k, v in im_t.items()}
        self._set(re_i, im_i, den)

    def _set(self, re_i: Dict[Key, int], im_i: Dict[Key, int], den: int) -> None:
        re_i = {k: v for k, v in re_i.items() if v}
        im_i = {k: v for k, v in im_i.items() if v}
        if not re_i and not im_i:
            den = 1
        else:
            g = math.gcd(den, *re_i.values(), *im_i.values())
            if g > 1:
                den //= g
                re_i = {k: v // g for k, v in re_i.items()}
                im_i = {k: v // g for k, v in im_i.items()}
        self._re = re_i
        self._im = im_i
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, re_i: Dict[Key, int], im_i: Dict[Key, int], den: int) -> "BiPoly":
        obj = cls.__new__(cls)
        obj._set(re_i, im_i, den)
        return obj

    # -- constructors --------------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def z(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def w(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, dz: int, dw: int, c: Scalar = 1) -> "BiPoly":
        return cls({(dz, dw): c})

    @classmethod
    def from_triples(cls, triples) -> "BiPoly":
        return cls((int(a), int(b), GaussianRational.coerce(c)) for a, b, c in triples)

    def to_triples(self):
        """Serialize as sorted ``[deg_z, deg_w, "coeff"]`` triples."""
        return [[k[0], k[1], str(c)] for k, c in sorted(self.items())]

    # -- inspection ----------------------------------------------------------
    def items(self) -> Iterator[Tuple[Key, GaussianRational]]:
        den = self._den
        for k in self.keys():
            yield k, GaussianRational(Fraction(self._re.get(k, 0), den), Fraction(self._im.get(k, 0), den))

    def keys(self):
        if not self._im:
            return sorted(self._re)
        return sorted(set(self._re) | set(self._im))

    def coeff(self, dz: int, dw: int = 0) -> GaussianRational:
        k = (dz, dw)
        return GaussianRational(Fraction(self._re.get(k, 0), self._den), Fraction(self._im.get(k, 0), self._den))

    def __len__(self) -> int:
        if not self._im:
            return len(self._re)
        return len(set(self._re) | set(self._im))

    def is_zero(self) -> bool:
        return not self._re and not self._im

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self._re) and all(k == (0, 0) for k in self._im)

    def is_real(self) -> bool:
        """True when every coefficient lies in Q."""
        return not self._im

    @property
    def deg_z(self) -> int:
        return max((k[0] for k in (*self._re, *self._im)), default=-1)

    @property
    def deg_w(self) -> int:
        return max((k[1] for k in (*self._re, *self._im)), default=-1)

    def is_real_symmetric(self) -> bool:
        return self == conj_involution(self)

    # -- equality ------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._den == other._den and self._re == other._re and self._im == other._im

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._re.items()), frozenset(self._im.items()), self._den))
        return self._hash

    # -- arithmetic ----------------------------------------------------------
    @staticmethod
    def _lift(x) -> "BiPoly":
        if isinstance(x, BiPoly):
            return x
        return BiPoly.const(GaussianRational.coerce(x))

    def __neg__(self) -> "BiPoly":
        return BiPoly._raw({k: -v for k, v in self._re.items()}, {k: -v for k, v in self._im.items()}, self._den)

    def __add__(self, other) -> "BiPoly":
        try:
            other = BiPoly._lift(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        den = self._den * other._den // math.gcd(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        re_i = {k: v * fa for k, v in self._re.items()}
        im_i = {k: v * fa for k, v in self._im.items()}
        _add_into(re_i, other._re, fb)
        _add_into(im_i, other._im, fb)
        return BiPoly._raw(re_i, im_i, den)

    __radd__ = __add__

    def __sub__(self, other) -> "BiPoly":
        try:
            other = BiPoly._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "BiPoly":
        return (-self) + other

    def scale(self, c: Scalar) -> "BiPoly":
        c = GaussianRational.coerce(c)
        if not c:
            return BiPoly()
        q = c.re.denominator * c.im.denominator // math.gcd(c.re.denominator, c.im.denominator)
        p_re = int(c.re * q)
        p_im = int(c.im * q)
        re_i: Dict[Key, int] = {}
        im_i: Dict[Key, int] = {}
        if p_re:
            _add_into(re_i, self._re, p_re)
            _add_into(im_i, self._im, p_re)
        if p_im:
            _add_into(re_i, self._im, -p_im)
            _add_into(im_i, self._re, p_im)
        return BiPoly._raw(re_i, im_i, self._den * q)

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        a_re, a_im, b_re, b_im = self._re, self._im, other._re, other._im
        re_i = _mul_int(a_re, b_re)
        im_i: Dict[Key, int] = {}
        if a_im or b_im:
            if a_im and b_im:
                _add_into(re_i, _mul_int(a_im, b_im), -1)
            if b_im:
                _add_into(im_i, _mul_int(a_re, b_im))
            if a_im:
                _add_into(im_i, _mul_int(a_im, b_re))
        return BiPoly._raw(re_i, im_i, self._den * other._den)

    def __rmul__(self, other) -> "BiPoly":
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other) -> "BiPoly":
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(1 / GaussianRational.coerce(other))
        return NotImplemented

    def __pow__(self, e: int) -> "BiPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = BiPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def derive(self, var: str) -> "BiPoly":
        if var == "z":
            f = lambda d: {(i - 1, j): v * i for (i, j), v in d.items() if i}
        elif var == "w":
            f = lambda d: {(i, j - 1): v * j for (i, j), v in d.items() if j}
        else:
            raise ValueError(f"unknown variable {var!r}")
        return BiPoly._raw(f(self._re), f(self._im), self._den)

    def conj(self) -> "BiPoly":
        return BiPoly._raw(
            {(j, i): v for (i, j), v in self._re.items()},
            {(j, i): -v for (i, j), v in self._im.items()},
            self._den,
        )

    def subs_w(self, value: Scalar) -> "BiPoly":
        """Substitute a constant for ``w``; leaves a polynomial in ``z``."""
        v = GaussianRational.coerce(value)
        out = BiPoly()
        for (i, j), c in self.items():
            out = out + BiPoly.monomial(i, 0, c * _gr_pow(v, j))
        return out

    def evaluate(self, z: complex, w: complex) -> complex:
        den = self._den
        total = 0j
        zp, wp = {}, {}
        for (i, j) in self.keys():
            zi = zp.get(i)
            if zi is None:
                zi = zp[i] = z ** i
            wj = wp.get(j)
            if wj is None:
                wj = wp[j] = w ** j
            c = complex(self._re.get((i, j), 0) / den, self._im.get((i, j), 0) / den)
            total += c * zi * wj
        return total

    def evaluate_exact(self, z: Scalar, w: Scalar) -> GaussianRational:
        """Exact value at Gaussian-rational arguments.

        Arguments are brought to a common denominator ``d`` so the sum runs
        over Gaussian integers: ``sum c_ij zn^i wn^j d^(N-i-j) / d^N``.
        """
        z, w = GaussianRational.coerce(z), GaussianRational.coerce(w)
        if self.is_zero():
            return GaussianRational(0)
        d = math.lcm(z.re.denominator, z.im.denominator, w.re.denominator, w.im.denominator)
        zn = (int(z.re * d), int(z.im * d))
        wn = (int(w.re * d), int(w.im * d))
        top = max(i + j for i, j in self.keys())
        zp, wp = _gi_powers(zn, top), _gi_powers(wn, top)
        dp = [d ** k for k in range(top + 1)]
        re_acc = im_acc = 0
        for (i, j) in self.keys():
            (ar, ai), (br, bi) = zp[i], wp[j]
            mr, mi = ar * br - ai * bi, ar * bi + ai * br
            a, b = self._re.get((i, j), 0), self._im.get((i, j), 0)
            scale = dp[top - i - j]
            re_acc += (a * mr - b * mi) * scale
            im_acc += (a * mi + b * mr) * scale
        den = self._den * dp[top]
        return GaussianRational(Fraction(re_acc, den), Fraction(im_acc, den))

    def primitive(self) -> Tuple[GaussianRational, "BiPoly"]:
        """Split ``self = c * p`` with ``p`` integral, content 1, normalized lead.

        The lead is the coefficient of the largest key; it is rotated by a unit
        of Z[i] so that its real part is positive (or zero with positive
        imaginary part).
        """
        if self.is_zero():
            raise ValueError("primitive part of the zero polynomial")
        g = math.gcd(*self._re.values(), *self._im.values())
        lead = max((*self._re, *self._im))
        re_i = {k: v // g for k, v in self._re.items()}
        im_i = {k: v // g for k, v in self._im.items()}
        unit = GaussianRational(1)
        # rotate by i until the lead sits in {re > 0, im >= 0}
        for _ in range(4):
            lr, li = re_i.get(lead, 0), im_i.get(lead, 0)
            if lr > 0 and li >= 0:
                break
            re_i, im_i = {k: -v for k, v in im_i.items()}, re_i
            unit = unit * GaussianRational(0, 1)
        p = BiPoly._raw(re_i, im_i, 1)
        # self = c * p with p = unit * self * den / g
        c = GaussianRational(Fraction(g, self._den)) / unit
        return c, p

    def __repr__(self) -> str:
        if self.is_zero():
            return "BiPoly(0)"
        return f"BiPoly({self.pretty()})"

    def pretty(self) -> str:
        parts = []
        for (i, j), c in sorted(self.items(), key=lambda t: (t[0][0] + t[0][1], t[0])):
            mono = "".join(
                s for s in (
                    "" if i == 0 else ("z" if i == 1 else f"z^{i}"),
                    "" if j == 0 else ("w" if j == 1 else f"w^{j}"),
                ) if s
            )
            coef = f"({c})" if c.im else str(c)
            if not mono:
                parts.append(coef)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts) if parts else "0"


def _gi_powers(v: Tuple[int, int], top: int) -> list:
    """``[v^0, ..., v^top]`` for a Gaussian integer ``v = (re, im)``."""
    out = [(1, 0)]
    for _ in range(top):
        a, b = out[-1]
        out.append((a * v[0] - b * v[1], a * v[1] + b * v[0]))
    return out


def _gr_pow(v: GaussianRational, e: int) -> GaussianRational:
    out = GaussianRational(1)
    for _ in range(e):
        out = out * v
    return out


def conj_involution(p: BiPoly) -> BiPoly:
    """Swap ``z`` and ``w`` and conjugate every coefficient."""
    return p.conj()


def derive(p: BiPoly, var: str) -> BiPoly:
    """Formal partial derivative with respect to ``"z"`` or ``"w"``."""
    return p.derive(var)


class RatFn:
    """A quotient ``num / prod(f ** e)`` with the denominator kept factored.

    Every stored factor is a primitive polynomial (see :meth:`BiPoly.primitive`),
    so identical factors arising from different computations are recognized
    and common denominators stay small.  Equality never relies on reduction:
    it is decided by cross-multiplication in :func:`ratfn_equal`.
    """

    __slots__ = ("num", "factors")

    def __init__(self, num, den=None):
        num = BiPoly._lift(num)
        if den is None:
            self.num, self.factors = num, ()
            return
        den = BiPoly._lift(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        built = RatFn.from_factors(num, [(den, 1)])
        self.num, self.factors = built.num, built.factors

    @classmethod
    def from_factors(cls, num: BiPoly, factors) -> "RatFn":
        merged: Dict[BiPoly, int] = {}
        scale = GaussianRational(1)
        for f, e in factors:
            if e < 0:
                raise ValueError("negative factor exponent")
            if e == 0:
                continue
            if f.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            c, p = f.primitive()
            if p.is_constant():
                # a constant primitive part can still be a non-unit such as 1+i
                c = c * p.coeff(0, 0)
            scale = scale * _gr_pow(c, e)
            if p.is_constant():
                continue
            merged[p] = merged.get(p, 0) + e
        obj = cls.__new__(cls)
        obj.num = num.scale(1 / scale) if scale != 1 else num
        obj.factors = tuple(merged.items()) if not obj.num.is_zero() else ()
        return obj

    @property
    def den(self) -> BiPoly:
        out = BiPoly.const(1)
        for f, e in self.factors:
            out = out * f ** e
        return out

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _scaled_to(self, target: Dict[BiPoly, int]) -> BiPoly:
        mine = dict(self.factors)
        out = self.num
        for f, e in target.items():
            extra = e - mine.get(f, 0)
            if extra:
                out = out * f ** extra
        return out

    @staticmethod
    def _common(a: "RatFn", b: "RatFn") -> Dict[BiPoly, int]:
        common = dict(a.factors)
        for f, e in b.factors:
            if common.get(f, 0) < e:
                common[f] = e
        return common

    @staticmethod
    def _coerce(x) -> "RatFn":
        if isinstance(x, RatFn):
            return x
        return RatFn(BiPoly._lift(x))

    def __add__(self, other) -> "RatFn":
        try:
            other = RatFn._coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        common = RatFn._common(self, other)
        num = self._scaled_to(common) + other._scaled_to(common)
        return RatFn.from_factors(num, list(common.items()))

    __radd__ = __add__

    def __neg__(self) -> "RatFn":
        obj = RatFn.__new__(RatFn)
        obj.num, obj.factors = -self.num, self.factors
        return obj

    def __sub__(self, other) -> "RatFn":
        return self + (-RatFn._coerce(other))

    def __rsub__(self, other) -> "RatFn":
        return (-self) + other

    def __mul__(self, other) -> "RatFn":
        if isinstance(other, (int, Fraction, GaussianRational)):
            obj = RatFn.__new__(RatFn)
            obj.num = self.num.scale(other)
            obj.factors = self.factors if not obj.num.is_zero() else ()
            return obj
        try:
            other = RatFn._coerce(other)
        except TypeError:
            return NotImplemented
        return RatFn.from_factors(self.num * other.num, list(self.factors) + list(other.factors))

    __rmul__ = __mul__

    def evaluate(self, z: complex, w: complex) -> complex:
        d = 1 + 0j
        for f, e in self.factors:
            d *= f.evaluate(z, w) ** e
        return self.num.evaluate(z, w) / d

    def evaluate_exact(self, z: Scalar, w: Scalar) -> GaussianRational:
        d = GaussianRational(1)
        for f, e in self.factors:
            d = d * _gr_pow(f.evaluate_exact(z, w), e)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the sample point")
        return self.num.evaluate_exact(z, w) / d

    def __eq__(self, other) -> bool:
        if isinstance(other, (RatFn, BiPoly, int, Fraction, GaussianRational)):
            return ratfn_equal(self, RatFn._coerce(other))
        return NotImplemented

    __hash__ = None  # equality is semantic, not structural

    def __repr__(self) -> str:
        if not self.factors:
            return f"RatFn({self.num.pretty()})"
        den = " * ".join(f"({f.pretty()})" + (f"^{e}" if e > 1 else "") for f, e in self.factors)
        return f"RatFn(({self.num.pretty()}) / {den})"


def ratfn_residual(a: RatFn, b: RatFn) -> BiPoly:
    """Numerator of ``a - b`` over the merged denominator; zero iff ``a == b``."""
    a, b = RatFn._coerce(a), RatFn._coerce(b)
    common = RatFn._common(a, b)
    return a._scaled_to(common) - b._scaled_to(common)


def ratfn_equal(a, b) -> bool:
    """Exact equality of rational functions by cross-multiplication."""
    return ratfn_residual(a, b).is_zero()


def _ddbar_log_poly(p: BiPoly) -> RatFn:
    if p.is_zero():
        raise ValueError("log of zero function")
    _, q = p.primitive()
    if q.deg_z <= 0 or q.deg_w <= 0:
        # a function of one variable only is killed by d_z d_w log
        return RatFn(BiPoly())
    qz, qw = q.derive("z"), q.derive("w")
    num = q * qz.derive("w") - qz * qw
    return RatFn.from_factors(num, [(q, 2)])


def ddbar_log(f) -> RatFn:
    """``d_w d_z log f`` for a polynomial or rational function ``f``.

    Uses ``d_w (f_z / f) = (f f_zw - f_z f_w) / f^2`` on each polynomial piece
    and additivity of the logarithm across products and quotients.
    """
    if isinstance(f, (int, Fraction, GaussianRational)):
        f = BiPoly.const(f)
    if isinstance(f, BiPoly):
        return _ddbar_log_poly(f)
    if not isinstance(f, RatFn):
        raise TypeError(f"ddbar_log of {type(f).__name__}")
    if f.is_zero():
        raise ValueError("log of zero function")
    out = _ddbar_log_poly(f.num)
    for fac, e in f.factors:
        out = out - _ddbar_log_poly(fac) * e
    return out
