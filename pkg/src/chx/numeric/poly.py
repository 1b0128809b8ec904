"""Univariate rational polynomials, Sturm chains and sign certificates."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .interval import Interval


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Poly:
    """Polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_fr(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def const(cls, a):
        return cls([a])

    @classmethod
    def from_roots(cls, roots, lead=1):
        p = cls([lead])
        for r in roots:
            p = p * cls([-_fr(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    @property
    def lead(self) -> Fraction:
        return self.c[-1] if self.c else Fraction(0)

    def _co(self, o):
        return o if isinstance(o, Poly) else Poly([o])

    def __add__(self, o):
        o = self._co(o)
        n = max(len(self.c), len(o.c))
        a = self.c + (Fraction(0),) * (n - len(self.c))
        b = o.c + (Fraction(0),) * (n - len(o.c))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-a for a in self.c)

    def __sub__(self, o):
        return self + (-self._co(o))

    def __rsub__(self, o):
        return self._co(o) - self

    def __mul__(self, o):
        o = self._co(o)
        if not self.c or not o.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(o.c):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly([1])
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, o):
        if not isinstance(o, Poly):
            o = Poly([o])
        return self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def divmod(self, d: "Poly"):
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [Fraction(0)] * max(0, len(r) - len(d.c) + 1)
        while len(r) >= len(d.c) and any(r):
            k = len(r) - len(d.c)
            f = r[-1] / d.lead
            q[k] = f
            for i, b in enumerate(d.c):
                r[i + k] -= f * b
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return Poly(q), Poly(r)

    def __mod__(self, d):
        return self.divmod(d)[1]

    def __floordiv__(self, d):
        return self.divmod(d)[0]

    def deriv(self) -> "Poly":
        return Poly(i * a for i, a in enumerate(self.c) if i)

    def __call__(self, x):
        if isinstance(x, Interval):
            # Horner in interval arithmetic
            acc = Interval(0)
            for a in reversed(self.c):
                acc = acc * x + Interval.enclose(a)
            return acc
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def monic(self):
        return Poly(a / self.lead for a in self.c) if self.c else self

    def gcd(self, o: "Poly") -> "Poly":
        a, b = self, o
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree(self) -> "Poly":
        g = self.gcd(self.deriv())
        return self // g if g.degree > 0 else self

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i, a in enumerate(self.c):
            if a:
                terms.append(f"{a}" + ("" if i == 0 else ("*x" if i == 1 else f"*x^{i}")))
        return " + ".join(reversed(terms))


def _sgn(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sturm_chain(p: Poly) -> list:
    p = p.squarefree()
    chain = [p, p.deriv()]
    while not chain[-1].is_zero():
        r = chain[-2] % chain[-1]
        chain.append(-r)
    return [q for q in chain if not q.is_zero()]


def _variations(chain, x: Fraction) -> int:
    signs = [_sgn(q(x)) for q in chain]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p: Poly, a, b) -> int:
    """Number of distinct real roots of p in the half-open interval (a, b]."""
    if p.is_zero():
        raise ValueError("indeterminate root set")
    a, b = _fr(a), _fr(b)
    if not a < b:
        raise ValueError("need a < b")
    if p.degree == 0:
        return 0
    ch = sturm_chain(p)
    return _variations(ch, a) - _variations(ch, b)


def count_closed(p: Poly, a, b) -> int:
    """Distinct roots in [a, b] via (a, b] plus the endpoint a."""
    a, b = _fr(a), _fr(b)
    return sturm_count(p, a, b) + (1 if p(a) == 0 else 0)


def count_open(p: Poly, a, b) -> int:
    a, b = _fr(a), _fr(b)
    return sturm_count(p, a, b) - (1 if p(b) == 0 else 0)


def isolate_roots(p: Poly, a, b, width=Fraction(1, 2 ** 20)) -> list:
    """Disjoint rational intervals (lo, hi] each holding exactly one root in (a, b]."""
    a, b = _fr(a), _fr(b)
    out = []
    stack = [(a, b)]
    ch = sturm_chain(p)
    while stack:
        lo, hi = stack.pop()
        n = _variations(ch, lo) - _variations(ch, hi)
        if n == 0:
            continue
        if n == 1 and hi - lo <= width:
            out.append((lo, hi))
            continue
        m = (lo + hi) / 2
        stack.append((m, hi))
        stack.append((lo, m))
    return sorted(out)


class SignClaimError(ValueError):
    def __init__(self, msg, witness=None, value=None, roots=None):
        super().__init__(msg)
        self.witness = witness
        self.value = value
        self.roots = roots


@dataclass
class Certificate:
    claim: str
    interval: tuple
    rootCount: int
    allowedRoots: list
    samplePoint: list
    sampleSign: list
    ok: bool
    poly: str = ""
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "interval": [str(self.interval[0]), str(self.interval[1])],
            "rootCount": self.rootCount,
            "allowedRoots": [str(r) for r in self.allowedRoots],
            "samplePoint": [str(s) for s in self.samplePoint],
            "sampleSign": list(self.sampleSign),
            "ok": self.ok,
        }


NonNegative = "NonNegative"
NonPositive = "NonPositive"
Positive = "Positive"
Negative = "Negative"


def certify_sign(p: Poly, a, b, claim: str, allowed_roots: Sequence = (), note: str = "") -> Certificate:
    """Certify p >= 0 (or <= 0) on [a, b] with zeros only at allowed_roots.

    Positive / Negative are the strict variants with allowed_roots empty.
    """
    a, b = _fr(a), _fr(b)
    if not a < b:
        raise ValueError("need a < b")
    if claim in (Positive, Negative):
        if allowed_roots:
            raise ValueError("strict claims take no allowed roots")
    want = 1 if claim in (NonNegative, Positive) else -1
    allowed = sorted({_fr(r) for r in allowed_roots if a <= _fr(r) <= b})
    for r in allowed:
        if p(r) != 0:
            raise SignClaimError(f"allowed root {r} is not a root", witness=r, value=p(r))
    total = count_closed(p, a, b)
    extra = total - len(allowed)
    if extra:
        roots = isolate_roots(p, a - Fraction(1, 2 ** 40), b)
        w = _find_witness(p, a, b, want)
        raise SignClaimError(f"{extra} root(s) outside the allowed set", witness=w,
                             value=None if w is None else p(w), roots=roots)
    # no other roots: the sign is constant between consecutive allowed roots
    cuts = [a] + [r for r in allowed if a < r < b] + [b]
    samples, signs = [], []
    for lo, hi in zip(cuts, cuts[1:]):
        m = (lo + hi) / 2
        s = _sgn(p(m))
        samples.append(m)
        signs.append(s)
        if s != want:
            raise SignClaimError(f"sign at {m} is {s}", witness=m, value=p(m))
    return Certificate(claim, (a, b), total, allowed, samples, signs, True, repr(p), note)


def _find_witness(p: Poly, a, b, want):
    """Rational point in [a, b] with strict sign opposite to `want`, if any."""
    roots = isolate_roots(p, a - Fraction(1, 2 ** 40), b, width=Fraction(1, 2 ** 30))
    pts = [a, b]
    edges = [a] + [r for iv in roots for r in iv] + [b]
    edges = sorted(e for e in edges if a <= e <= b)
    for lo, hi in zip(edges, edges[1:]):
        pts.append((lo + hi) / 2)
    for x in pts:
        if _sgn(p(x)) == -want:
            return x
    return None


class SqrtPoly:
    """P(x) + Q(x)*y with y = sqrt(1 - x^2): arithmetic in Q[x][y]/(y^2 - 1 + x^2).

    Used only to check trigonometric identities after the substitution
    x = sin s, cos s = -y on the arc where cos s <= 0.
    """

    __slots__ = ("p", "q")
    _Y2 = Poly([1, 0, -1])

    def __init__(self, p=0, q=0):
        self.p = p if isinstance(p, Poly) else Poly([p])
        self.q = q if isinstance(q, Poly) else Poly([q])

    @classmethod
    def x(cls):
        return cls(Poly.x())

    @classmethod
    def y(cls):
        return cls(Poly(), Poly([1]))

    def _c(self, o):
        return o if isinstance(o, SqrtPoly) else SqrtPoly(o)

    def __add__(self, o):
        o = self._c(o)
        return SqrtPoly(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __neg__(self):
        return SqrtPoly(-self.p, -self.q)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        return SqrtPoly(self.p * o.p + self.q * o.q * self._Y2, self.p * o.q + self.q * o.p)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = SqrtPoly(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, o):
        o = self._c(o)
        return self.p == o.p and self.q == o.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"({self.p}) + ({self.q})*sqrt(1-x^2)"
