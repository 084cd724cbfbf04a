"""Exact coefficient arithmetic.

Three coefficient domains:

* ``LaurentPoly2`` -- Laurent polynomials in two variables (r, s) with
  arbitrary-precision rational coefficients,
* ``RatFunc2`` -- the fraction field Q(r, s) in a canonical form so that
  equality is structural equality,
* ``CycloNum`` -- elements of Q[x]/Phi_ell(x), used after specializing
  r = theta^y, s = theta^z at a primitive ell-th root of unity theta.

All values are immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ

_Q0 = QQ(0)
_Q1 = QQ(1)


class CoeffError(ArithmeticError):
    pass


class SpecializationError(CoeffError):
    """A denominator vanished under a root-of-unity specialization."""


# ---------------------------------------------------------------------------
# Laurent polynomials in r, s
# ---------------------------------------------------------------------------


class LaurentPoly2:
    """Finite map (exp_r, exp_s) -> rational, zero coefficients never stored."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None, _clean=False):
        if terms is None:
            terms = {}
        if not _clean:
            terms = {e: QQ(c) for e, c in terms.items() if c != 0}
        self.terms = terms
        self._hash = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero():
        return _LP_ZERO

    @staticmethod
    def one():
        return _LP_ONE

    @staticmethod
    def monomial(er, es, coeff=1):
        c = QQ(coeff)
        if c == 0:
            return _LP_ZERO
        return LaurentPoly2({(er, es): c}, _clean=True)

    @staticmethod
    def const(c):
        return LaurentPoly2.monomial(0, 0, c)

    # -- predicates ----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def is_one(self):
        return self.terms == {(0, 0): _Q1}

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        big, small = (self.terms, other.terms)
        if len(big) < len(small):
            big, small = small, big
        out = dict(big)
        for e, c in small.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPoly2(out, _clean=True)

    def __neg__(self):
        return LaurentPoly2({e: -c for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = -c
            else:
                v = v - c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPoly2(out, _clean=True)

    def __mul__(self, other):
        a, b = self.terms, other.terms
        if not a or not b:
            return _LP_ZERO
        if len(a) == 1:
            (ea, sa), ca = next(iter(a.items()))
            return LaurentPoly2(
                {(ea + eb, sa + sb): ca * cb for (eb, sb), cb in b.items()},
                _clean=True,
            )
        if len(b) == 1:
            (eb, sb), cb = next(iter(b.items()))
            return LaurentPoly2(
                {(ea + eb, sa + sb): ca * cb for (ea, sa), ca in a.items()},
                _clean=True,
            )
        out = {}
        for (ea, sa), ca in a.items():
            for (eb, sb), cb in b.items():
                e = (ea + eb, sa + sb)
                v = out.get(e)
                if v is None:
                    out[e] = ca * cb
                else:
                    out[e] = v + ca * cb
        return LaurentPoly2(out)

    def scale(self, c):
        c = QQ(c)
        if c == 0:
            return _LP_ZERO
        return LaurentPoly2({e: v * c for e, v in self.terms.items()}, _clean=True)

    def shift(self, dr, ds):
        if not (dr or ds):
            return self
        return LaurentPoly2(
            {(er + dr, es + ds): c for (er, es), c in self.terms.items()}, _clean=True
        )

    def __pow__(self, n):
        if n < 0:
            raise CoeffError("negative power of a Laurent polynomial")
        out = _LP_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def swap_rs(self):
        return LaurentPoly2(
            {(es, er): c for (er, es), c in self.terms.items()}, _clean=True
        )

    # -- structure -------------------------------------------------------------

    def min_exps(self):
        ers = [e[0] for e in self.terms]
        ess = [e[1] for e in self.terms]
        return (min(ers), min(ess))

    def lead_exp(self):
        """Lexicographically greatest (exp_r, exp_s)."""
        return max(self.terms)

    def lead_coeff(self):
        return self.terms[max(self.terms)]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self.terms.items()))
            self._hash = h
        return h

    def __repr__(self):
        return f"LaurentPoly2({poly_to_text(self)!r})"


_LP_ZERO = LaurentPoly2({}, _clean=True)
_LP_ONE = LaurentPoly2({(0, 0): _Q1}, _clean=True)


# -- polynomial gcd helpers (non-negative exponents) -------------------------


def _uni_normalize(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _uni_add(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else _Q0) + (b[i] if i < len(b) else _Q0) for i in range(n)]
    return _uni_normalize(out)


def _uni_mul(a, b):
    if not a or not b:
        return []
    out = [_Q0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return _uni_normalize(out)

def _uni_scale(a, c):
    if c == 0:
        return []
    return [x * c for x in a]


def _uni_divmod(a, b):
    """Division in Q[r] by a nonzero divisor."""
    a = list(a)
    q = [_Q0] * max(0, len(a) - len(b) + 1)
    inv = _Q1 / b[-1]
    while len(a) >= len(b) and _uni_normalize(a):
        if len(a) < len(b):
            break
        k = len(a) - len(b)
        c = a[-1] * inv
        q[k] = c
        for i in range(len(b)):
            a[k + i] -= c * b[i]
        _uni_normalize(a)
    return _uni_normalize(q), a


def _uni_gcd(a, b):
    a, b = list(a), list(b)
    while b:
        _, r = _uni_divmod(a, b)
        a, b = b, r
    if a:
        inv = _Q1 / a[-1]
        a = [c * inv for c in a]
    return a


def _as_s_poly(p: LaurentPoly2):
    """Represent p (exps >= 0) as a list over s-degree of r-coefficient lists."""
    deg_s = max(es for (_, es) in p.terms)
    out = [[] for _ in range(deg_s + 1)]
    for (er, es), c in p.terms.items():
        row = out[es]
        if len(row) <= er:
            row.extend([_Q0] * (er + 1 - len(row)))
        row[er] = c
    return [_uni_normalize(row) for row in out]


def _from_s_poly(rows):
    terms = {}
    for es, row in enumerate(rows):
        for er, c in enumerate(row):
            if c:
                terms[(er, es)] = c
    return LaurentPoly2(terms, _clean=True)


def _s_normalize(rows):
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _s_content(rows):
    g = []
    for row in rows:
        if row:
            g = _uni_gcd(g, row)
            if len(g) == 1:
                break
    return g


def _s_scale_uni(rows, u):
    return _s_normalize([_uni_mul(row, u) for row in rows])


def _s_div_uni(rows, u):
    out = []
    for row in rows:
        q, r = _uni_divmod(row, u) if row else ([], [])
        if r:
            raise CoeffError("inexact content division")
        out.append(q)
    return _s_normalize(out)


def _s_prem(a, b):
    """Pseudo-remainder of a by b as polynomials in s over Q[r]."""
    a = [list(r) for r in a]
    lb = b[-1]
    while len(a) >= len(b) and _s_normalize(a):
        if len(a) < len(b):
            break
        k = len(a) - len(b)
        la = a[-1]
        a = [_uni_mul(row, lb) for row in a]
        for i in range(len(b)):
            a[k + i] = _uni_add(a[k + i], _uni_scale(_uni_mul(b[i], la), QQ(-1)))
        _s_normalize(a)
    return a


def lp_gcd(a: LaurentPoly2, b: LaurentPoly2) -> LaurentPoly2:
    """gcd in Q[r, s] (inputs must have non-negative exponents), monic-ish."""
    if not a or not b:
        return a + b
    if a.is_monomial() or b.is_monomial():
        ma, mb = a.min_exps(), b.min_exps()
        return LaurentPoly2.monomial(min(ma[0], mb[0]), min(ma[1], mb[1]))
    A, B = _as_s_poly(a), _as_s_poly(b)
    ca, cb = _s_content(A), _s_content(B)
    cg = _uni_gcd(ca, cb)
    A, B = _s_div_uni(A, ca), _s_div_uni(B, cb)
    while B:
        R = _s_prem(A, B)
        if _s_normalize(R):
            cr = _s_content(R)
            R = _s_div_uni(R, cr)
        A, B = B, R
    cA = _s_content(A)
    A = _s_div_uni(A, cA)
    g = _s_scale_uni(A, cg) if len(cg) > 1 else A if cg else []
    out = _from_s_poly(g)
    lc = out.lead_coeff()
    if lc != 1:
        out = out.scale(_Q1 / lc)
    return out


def lp_div_exact(a: LaurentPoly2, b: LaurentPoly2) -> LaurentPoly2:
    """Exact division a / b in the Laurent ring; raises if not divisible."""
    if not a:
        return _LP_ZERO
    if b.is_monomial():
        (er, es), c = next(iter(b.terms.items()))
        return a.shift(-er, -es).scale(_Q1 / c)
    rem = a
    out = {}
    bl = b.lead_exp()
    blc = b.terms[bl]
    while rem:
        al = rem.lead_exp()
        e = (al[0] - bl[0], al[1] - bl[1])
        c = rem.terms[al] / blc
        out[e] = c
        rem = rem - b * LaurentPoly2.monomial(e[0], e[1], c)
        if rem and rem.lead_exp() >= al:
            raise CoeffError("inexact polynomial division")
    return LaurentPoly2(out)


# ---------------------------------------------------------------------------
# Rational functions in r, s
# ---------------------------------------------------------------------------


class RatFunc2:
    """Canonical fraction of Laurent polynomials.

    Invariants: den is a true polynomial with min exponent 0 in each variable,
    its lexicographically greatest term has coefficient +1, and
    gcd(num, den) = 1 after clearing Laurent shifts.  Structural equality is
    then field equality.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly2, den: LaurentPoly2, _canonical=False):
        if _canonical:
            self.num, self.den = num, den
            self._hash = None
            return
        if not den:
            raise ZeroDivisionError("zero denominator in Q(r, s)")
        if not num:
            self.num, self.den = _LP_ZERO, _LP_ONE
            self._hash = None
            return
        # clear Laurent shifts
        nr, ns = num.min_exps()
        dr, ds = den.min_exps()
        num = num.shift(-nr, -ns)
        den = den.shift(-dr, -ds)
        if not den.is_one():
            g = lp_gcd(num, den)
            if not g.is_one():
                num = lp_div_exact(num, g)
                den = lp_div_exact(den, g)
        lc = den.lead_coeff()
        if lc != 1:
            inv = _Q1 / lc
            num = num.scale(inv)
            den = den.scale(inv)
        # the denominator keeps shift 0; the numerator carries the Laurent shift
        self.num = num.shift(nr - dr, ns - ds)
        self.den = den
        self._hash = None

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def from_laurent(p: LaurentPoly2):
        return RatFunc2(p, _LP_ONE, _canonical=True)

    @staticmethod
    def monomial(er, es, coeff=1):
        return RatFunc2.from_laurent(LaurentPoly2.monomial(er, es, coeff))

    @staticmethod
    def const(c):
        return RatFunc2.from_laurent(LaurentPoly2.const(c))

    # -- predicates -------------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.den.is_one() and self.num.is_one()

    def is_monomial(self):
        return self.den.is_one() and self.num.is_monomial()

    # -- field operations ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RatFunc2):
            return NotImplemented
        if self.den is other.den or self.den == other.den:
            if self.den.is_one():
                return RatFunc2(self.num + other.num, _LP_ONE, _canonical=True)
            return RatFunc2(self.num + other.num, self.den)
        return RatFunc2(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        if not isinstance(other, RatFunc2):
            return NotImplemented
        if self.den is other.den or self.den == other.den:
            if self.den.is_one():
                return RatFunc2(self.num - other.num, _LP_ONE, _canonical=True)
            return RatFunc2(self.num - other.num, self.den)
        return RatFunc2(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RatFunc2(-self.num, self.den, _canonical=True)

    def __mul__(self, other):
        if not isinstance(other, RatFunc2):
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFunc2(self.num * other.num, _LP_ONE, _canonical=True)
        return RatFunc2(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc2):
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero in Q(r, s)")
        return RatFunc2(self.num * other.den, self.den * other.num)

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(r, s)")
        return RatFunc2(self.den, self.num)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = RF_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def swap_rs(self):
        return RatFunc2(self.num.swap_rs(), self.den.swap_rs())

    def __eq__(self, other):
        if not isinstance(other, RatFunc2):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.num, self.den))
            self._hash = h
        return h

    def __repr__(self):
        return f"RatFunc2({ratfunc_to_text(self)!r})"


RF_ZERO = RatFunc2.from_laurent(_LP_ZERO)
RF_ONE = RatFunc2.from_laurent(_LP_ONE)
RF_R = RatFunc2.monomial(1, 0)
RF_S = RatFunc2.monomial(0, 1)


def ratfunc_arith(a: RatFunc2, b: RatFunc2, op: str):
    """Dispatch table for the coefficient field operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    if op == "eq":
        return a == b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Canonical text grammar
# ---------------------------------------------------------------------------
#
# Polynomials print as signed integer-coefficient Laurent terms joined by
# " + " / " - ", e.g. "3*r^2*s^-1 - 2"; fractions print as "num / den".
# Parsing round-trips printing bit-exactly.


def _term_to_text(er, es, c, vr, vs):
    parts = []
    ac = abs(c)
    if ac != 1 or (er == 0 and es == 0):
        parts.append(str(ac))
    if er != 0:
        parts.append(vr if er == 1 else f"{vr}^{er}")
    if es != 0:
        parts.append(vs if es == 1 else f"{vs}^{es}")
    return "*".join(parts)


def _int_scaled(coeffs):
    """Scale factor lambda such that lambda * c is an integer for every c,
    with joint content 1."""
    denoms = 1
    for c in coeffs:
        d = int(c.denominator)
        denoms = denoms * d // math.gcd(denoms, d)
    numers = 0
    for c in coeffs:
        numers = math.gcd(numers, abs(int(c.numerator) * (denoms // int(c.denominator))))
    return QQ(denoms, numers if numers else 1)


def poly_to_text(p: LaurentPoly2, vr="r", vs="s"):
    if not p:
        return "0"
    out = []
    for (er, es), c in p.sorted_terms():
        t = _term_to_text(er, es, c, vr, vs)
        if not out:
            out.append(t if c > 0 else "-" + t)
        else:
            out.append(("+ " if c > 0 else "- ") + t)
    return " ".join(out)


def ratfunc_to_text(f: RatFunc2, vr="r", vs="s"):
    if not f:
        return "0"
    lam = _int_scaled(list(f.num.terms.values()) + list(f.den.terms.values()))
    num = f.num.scale(lam)
    den = f.den.scale(lam)
    if den.is_monomial() and den.lead_coeff() == 1 and den.lead_exp() == (0, 0):
        return poly_to_text(num, vr, vs)
    return f"{poly_to_text(num, vr, vs)} / {poly_to_text(den, vr, vs)}"


def _parse_poly(text, vr="r", vs="s"):
    text = text.strip()
    if text == "0":
        return _LP_ZERO
    terms = {}
    for chunk in text.replace("- ", "+ -").split("+ "):
        chunk = chunk.strip()
        if not chunk:
            continue
        neg = chunk.startswith("-")
        if neg:
            chunk = chunk[1:]
        coeff = QQ(1)
        er = es = 0
        for factor in chunk.split("*"):
            factor = factor.strip()
            if factor.startswith(vr):
                er = int(factor[len(vr) + 1 :]) if "^" in factor else 1
            elif factor.startswith(vs):
                es = int(factor[len(vs) + 1 :]) if "^" in factor else 1
            else:
                coeff = coeff * QQ(factor)
        if neg:
            coeff = -coeff
        key = (er, es)
        terms[key] = terms.get(key, _Q0) + coeff
    return LaurentPoly2(terms)


def parse_ratfunc(text, vr="r", vs="s") -> RatFunc2:
    if "/" in text:
        ntext, dtext = text.split("/", 1)
        return RatFunc2(_parse_poly(ntext, vr, vs), _parse_poly(dtext, vr, vs))
    return RatFunc2(_parse_poly(text, vr, vs), _LP_ONE)


# ---------------------------------------------------------------------------
# Cyclotomic fields
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int):
    """Coefficients (ascending, ints) of Phi_n, by dividing x^n - 1 by the
    cyclotomic polynomials of the proper divisors of n."""
    p = [QQ(-1)] + [_Q0] * (n - 1) + [_Q1]
    for d in range(1, n):
        if n % d == 0:
            q, rem = _uni_divmod(p, list(cyclotomic_poly(d)))
            assert not rem
            p = q
    return tuple(p)


class CycloField:
    """Q[x]/Phi_n(x); the class of x is a primitive n-th root of unity."""

    _cache: dict[int, "CycloField"] = {}

    def __new__(cls, order: int):
        f = cls._cache.get(order)
        if f is not None:
            return f
        f = super().__new__(cls)
        f._init(order)
        cls._cache[order] = f
        return f

    def _init(self, order):
        self.order = order
        phi_poly = cyclotomic_poly(order)
        self.phi = len(phi_poly) - 1
        # x^k mod Phi_n for 0 <= k < n
        powers = []
        cur = [_Q0] * self.phi
        cur[0] = _Q1
        for _ in range(order):
            powers.append(tuple(cur))
            nxt = [_Q0] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(self.phi):
                    nxt[i] -= top * phi_poly[i]
            cur = nxt[: self.phi]
        self.powers = powers
        self.phi_poly = phi_poly
        self.zero = CycloNum(self, (( _Q0,) * self.phi))
        self.one = CycloNum(self, powers[0])

    def theta(self, k=1):
        return CycloNum(self, self.powers[k % self.order])

    def from_rational(self, c):
        c = QQ(c)
        coords = [_Q0] * self.phi
        coords[0] = c
        return CycloNum(self, tuple(coords))

    def _reduce(self, coords):
        """Reduce a coefficient list of length < 2*phi modulo Phi_n."""
        phi = self.phi
        if len(coords) <= phi:
            return tuple(coords) + (_Q0,) * (phi - len(coords))
        out = list(coords[:phi])
        for k in range(phi, len(coords)):
            c = coords[k]
            if c:
                row = self.powers[k % self.order]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(out)

    def __repr__(self):
        return f"CycloField({self.order})"


class CycloNum:
    """Element of a cyclotomic field, as coordinates modulo Phi_n."""

    __slots__ = ("field", "coords", "_hash")

    def __init__(self, field: CycloField, coords):
        self.field = field
        self.coords = tuple(coords)
        self._hash = None

    def __bool__(self):
        return any(self.coords)

    def __add__(self, other):
        return CycloNum(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return CycloNum(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return CycloNum(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        a, b = self.coords, other.coords
        n = self.field.phi
        out = [_Q0] * (2 * n - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return CycloNum(self.field, self.field._reduce(out))

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        # extended Euclid in Q[x] against Phi_n
        a = list(self.field.phi_poly)
        b = _uni_normalize(list(self.coords))
        s0, s1 = [], [_Q1]
        while b:
            q, r = _uni_divmod(a, b)
            a, b = b, r
            s0, s1 = s1, _uni_add(s0, _uni_scale(_uni_mul(q, s1), QQ(-1)))
        assert len(a) == 1, "Phi_n and a nonzero residue must be coprime"
        inv_lead = _Q1 / a[0]
        return CycloNum(self.field, self.field._reduce(_uni_scale(s0, inv_lead)))

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, CycloNum):
            return NotImplemented
        return self.field is other.field and self.coords == other.coords

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.field.order, self.coords))
            self._hash = h
        return h

    def __repr__(self):
        parts = []
        for k, c in enumerate(self.coords):
            if c:
                parts.append(f"{c}" if k == 0 else (f"{c}*t^{k}" if k > 1 else f"{c}*t"))
        return "CycloNum(" + (" + ".join(parts) if parts else "0") + ")"


# ---------------------------------------------------------------------------
# Specialization parameters
# ---------------------------------------------------------------------------


class SpecValidationError(ValueError):
    pass


@dataclass(frozen=True)
class SpecParams:
    """Root-of-unity parameters: r = theta^y, s = theta^z with theta a
    primitive ell-th root of unity."""

    ell: int
    y: int
    z: int

    def __post_init__(self):
        ell, y, z = self.ell, self.y, self.z
        if ell <= 0 or ell % 2 == 0:
            raise SpecValidationError(f"ell must be a positive odd integer, got {ell}")
        if math.gcd(y - z, ell) != 1:
            raise SpecValidationError(
                f"gcd(y - z, ell) = {math.gcd(y - z, ell)} != 1: r*s^-1 is not a "
                f"primitive {ell}-th root of unity"
            )
        if (2 * (y - z)) % ell == 0:
            raise SpecValidationError("r^2 = s^2 at this specialization")
        if (3 * (y - z)) % ell == 0:
            raise SpecValidationError("r^3 = s^3 at this specialization")

    @property
    def d(self):
        """Multiplicative order of r."""
        return self.ell // math.gcd(self.y, self.ell)

    @property
    def d_prime(self):
        """Multiplicative order of s."""
        return self.ell // math.gcd(self.z, self.ell)

    def embedding(self):
        return FieldEmbedding(CycloField(self.ell), self.y, self.z, self.ell)


@dataclass(frozen=True)
class FieldEmbedding:
    """A concrete realization r = xi^rexp, s = xi^sexp inside Q[x]/Phi_n,
    with ell the truncation order of the restricted algebra.

    For SpecParams this is the ell-th cyclotomic field itself; parameter
    flips like (r, s) -> (-r, -s) embed into the 2*ell-th field instead.
    """

    field: CycloField
    rexp: int
    sexp: int
    ell: int

    def r(self):
        return self.field.theta(self.rexp)

    def s(self):
        return self.field.theta(self.sexp)

    def eval_monomial_exp(self, er, es):
        return (er * self.rexp + es * self.sexp) % self.field.order

    def theta_pow(self, k):
        return self.field.theta(k)


def eval_laurent(p: LaurentPoly2, emb: FieldEmbedding) -> CycloNum:
    coords = [_Q0] * emb.field.phi
    powers = emb.field.powers
    for (er, es), c in p.terms.items():
        row = powers[emb.eval_monomial_exp(er, es)]
        for i in range(emb.field.phi):
            if row[i]:
                coords[i] += c * row[i]
    return CycloNum(emb.field, coords)


def specialize(f: RatFunc2, emb: FieldEmbedding | SpecParams) -> CycloNum:
    """Ring homomorphism Q(r, s) -> Q[x]/Phi_n on defined elements."""
    if isinstance(emb, SpecParams):
        emb = emb.embedding()
    den = eval_laurent(f.den, emb)
    if not den:
        raise SpecializationError(
            f"denominator {poly_to_text(f.den)} vanishes at "
            f"(order={emb.field.order}, r=theta^{emb.rexp}, s=theta^{emb.sexp})"
        )
    num = eval_laurent(f.num, emb)
    if f.den.is_one():
        return num
    return num * den.inverse()


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def gauss_binomial_coeffs(m: int, n: int):
    """Integer coefficient list (ascending) of the Gaussian binomial [m n]_t."""
    if n < 0 or n > m:
        raise ValueError(f"need 0 <= n <= m, got ({m}, {n})")
    if n == 0 or n == m:
        return (1,)
    prev_hi = gauss_binomial_coeffs(m - 1, n)
    prev_lo = gauss_binomial_coeffs(m - 1, n - 1)
    # [m n]_t = [m-1 n]_t + t^(m-n) [m-1 n-1]_t
    out = list(prev_hi) + [0] * max(0, (m - n) + len(prev_lo) - len(prev_hi))
    for k, c in enumerate(prev_lo):
        out[m - n + k] += c
    return tuple(out)


def _eval_int_poly(coeffs, t, one):
    out = None
    tp = one
    for k, c in enumerate(coeffs):
        if c:
            term = tp if c == 1 else _scalar_times(tp, c)
            out = term if out is None else out + term
        if k + 1 < len(coeffs):
            tp = tp * t
    return out if out is not None else _scalar_times(one, 0)


def _scalar_times(x, c):
    if isinstance(x, RatFunc2):
        return x * RatFunc2.const(c)
    if isinstance(x, CycloNum):
        return x * x.field.from_rational(c)
    raise TypeError(type(x))


def _one_like(t):
    if isinstance(t, RatFunc2):
        return RF_ONE
    if isinstance(t, CycloNum):
        return t.field.one
    raise TypeError(type(t))


def qnumber(n: int, t):
    """[n]_t = 1 + t + ... + t^(n-1), with [0]_t = 0."""
    if n < 0:
        raise ValueError("qnumber needs n >= 0")
    one = _one_like(t)
    out = _scalar_times(one, 0)
    tp = one
    for k in range(n):
        out = out + tp
        if k + 1 < n:
            tp = tp * t
    return out


def qfactorial(n: int, t):
    one = _one_like(t)
    out = one
    for k in range(2, n + 1):
        out = out * qnumber(k, t)
    return out


def qbinomial(m: int, n: int, t):
    """Gaussian binomial in denominator-free polynomial form."""
    if n < 0 or n > m:
        raise ValueError(f"qbinomial needs 0 <= n <= m, got ({m}, {n})")
    return _eval_int_poly(gauss_binomial_coeffs(m, n), t, _one_like(t))


def qbinomial_at_root(m: int, n: int, spec, t: CycloNum) -> CycloNum:
    """Evaluate the polynomial form of [m n] at a root of unity t."""
    del spec  # the value depends only on t; spec kept for call-site clarity
    return qbinomial(m, n, t)
