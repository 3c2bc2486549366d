#!/usr/bin/env python3
"""Generate data/catalog.json and the example term files.

Run from the repository root:  python3 tools/gen_catalog.py
"""

import json
import re
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


# ---------------------------------------------------------------- polynomials


class P:
    """Polynomial in n, k with rational coefficients: {(en, ek): Fraction}."""

    def __init__(self, c=None):
        if c is None:
            c = {}
        elif not isinstance(c, dict):
            c = {(0, 0): Fraction(c)} if c != 0 else {}
        self.c = {m: Fraction(v) for m, v in c.items() if v != 0}

    @staticmethod
    def lift(x):
        return x if isinstance(x, P) else P(x)

    def __add__(self, o):
        o = P.lift(o)
        r = dict(self.c)
        for m, v in o.c.items():
            r[m] = r.get(m, 0) + v
        return P(r)

    __radd__ = __add__

    def __neg__(self):
        return P({m: -v for m, v in self.c.items()})

    def __sub__(self, o):
        return self + (-P.lift(o))

    def __rsub__(self, o):
        return P.lift(o) - self

    def __mul__(self, o):
        if isinstance(o, RF):
            return RF(self) * o
        o = P.lift(o)
        r = {}
        for (a, b), v in self.c.items():
            for (c, d), w in o.c.items():
                r[(a + c, b + d)] = r.get((a + c, b + d), 0) + v * w
        return P(r)

    __rmul__ = __mul__

    def __pow__(self, e):
        r = P(1)
        for _ in range(e):
            r = r * self
        return r

    def __truediv__(self, o):
        return RF(self) / o

    def __rtruediv__(self, o):
        return RF(P.lift(o)) / RF(self)

    def json(self):
        return [[str(a), str(b), str(v.numerator), str(v.denominator)] for (a, b), v in sorted(self.c.items())]


class RF:
    def __init__(self, num, den=None):
        self.num = P.lift(num)
        self.den = P.lift(1 if den is None else den)

    @staticmethod
    def lift(x):
        return x if isinstance(x, RF) else RF(x)

    def __mul__(self, o):
        o = RF.lift(o)
        return RF(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = RF.lift(o)
        return RF(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return RF.lift(o) / self

    def __neg__(self):
        return RF(-self.num, self.den)

    def __add__(self, o):
        o = RF.lift(o)
        return RF(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, o):
        return self + (-RF.lift(o))


n = P({(1, 0): 1})
k = P({(0, 1): 1})
x = k  # the continuous summation variable of the f_j is stored as k


def Q(p, q=1):
    return Fraction(p, q)


# ---------------------------------------------------------------- terms


def rat(v):
    v = Fraction(v)
    return {"p": str(v.numerator), "q": str(v.denominator)}


def G(cn, ck, off, e=1, **params):
    """Gamma(cn*n + ck*k + off + sum params)^e."""
    return (cn, ck, Fraction(off), e, params)


def Fa(cn, ck, off, e=1, **params):
    """(cn*n + ck*k + off + sum params)!^e."""
    return G(cn, ck, Fraction(off) + 1, e, **params)


def term(pre=1, sign=(0, 0), phase=None, geom=(), gammas=(), domain=(0, 0), params=()):
    pre = RF.lift(pre)
    t = {"prefactor": {"num": pre.num.json(), "den": pre.den.json()}}
    if sign != (0, 0):
        t["sign"] = {"n": str(sign[0]), "k": str(sign[1])}
    if phase is not None:
        t["phase"] = {"var": "x", **rat(phase)}
    if geom:
        gl = []
        for g in geom:
            base, en, ek = g[:3]
            o = {"base": rat(base), "exp_n": str(en), "exp_k": str(ek)}
            if len(g) > 3 and g[3]:
                o["params"] = {a: str(b) for a, b in g[3].items()}
            gl.append(o)
        t["geometric"] = gl
    gs = []
    for cn, ck, off, e, ps in gammas:
        o = {"cn": str(cn), "ck": str(ck), "offset": rat(off), "exp": str(e)}
        if ps:
            o["params"] = {a: str(b) for a, b in ps.items()}
        gs.append(o)
    t["gammas"] = gs
    t["domain"] = {"n0": str(domain[0]), "k0": str(domain[1])}
    if params:
        t["params"] = list(params)
    return t


# binomials in k as Gamma lists
def binom(a, b, e=1):
    """C(a k, b k)^e."""
    return [G(0, a, 1, e), G(0, b, 1, -e), G(0, a - b, 1, -e)]


def merged(*lists):
    acc = {}
    order = []
    for lst in lists:
        for cn, ck, off, e, ps in lst:
            key = (cn, ck, off, tuple(sorted(ps.items())))
            if key not in acc:
                acc[key] = 0
                order.append(key)
            acc[key] += e
    return [(cn, ck, off, acc[(cn, ck, off, ps)], dict(ps)) for (cn, ck, off, ps) in order
            if acc[(cn, ck, off, ps)] != 0]


# ---------------------------------------------------------------- constants


class CE:
    """Sum of monomials; a monomial is a sorted tuple of atoms."""

    def __init__(self, t=None):
        self.t = {}
        for m, v in (t or {}).items():
            self._add(m, Fraction(v))

    def _add(self, mono, v):
        mono, v = normal(mono, v)
        if v == 0:
            return
        self.t[mono] = self.t.get(mono, 0) + v
        if self.t[mono] == 0:
            del self.t[mono]

    @staticmethod
    def num(v):
        return CE({(): v})

    @staticmethod
    def atom(kind, *args):
        return CE({((kind, args),): 1})

    def __add__(self, o):
        r = CE(self.t)
        for m, v in o.t.items():
            r._add(m, v)
        return r

    def __neg__(self):
        return CE({m: -v for m, v in self.t.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        r = CE()
        for m, v in self.t.items():
            for m2, w in o.t.items():
                r._add(m + m2, v * w)
        return r

    def inverse(self):
        if len(self.t) != 1:
            raise ValueError("division by a non-monomial")
        (mono, v), = self.t.items()
        inv = []
        scale = 1 / v
        for kind, args in mono:
            if kind == "Pi":
                inv.append(("Pi", (-args[0],)))
            elif kind == "I":
                inv.append(("I", ()))
                scale = -scale
            elif kind == "Sqrt2":
                inv.append(("Sqrt2", ()))
                scale /= 2
            elif kind == "Sqrt3":
                inv.append(("Sqrt3", ()))
                scale /= 3
            else:
                raise ValueError("cannot divide by " + kind)
        return CE({tuple(inv): scale})

    def json(self):
        terms = []
        for mono, v in sorted(self.t.items(), key=lambda mv: repr(mv[0])):
            terms.append({"coeff": rat(v), "atoms": [{"kind": a, "args": list(b)} for a, b in mono]})
        return {"terms": terms}


def normal(mono, v):
    pi = 0
    rest = []
    for kind, args in mono:
        if kind == "Pi":
            pi += args[0]
        else:
            rest.append((kind, tuple(args)))
    out = []
    for kind in ("I", "Sqrt2", "Sqrt3"):
        c = sum(1 for a in rest if a[0] == kind)
        rest = [a for a in rest if a[0] != kind]
        v *= {"I": -1, "Sqrt2": 2, "Sqrt3": 3}[kind] ** (c // 2)
        if c % 2:
            out.append((kind, ()))
    out += rest
    if pi:
        out.append(("Pi", (pi,)))
    return tuple(sorted(out)), v


class ConstParser:
    def __init__(self, s):
        self.s = s
        self.i = 0

    def run(self):
        e = self.expr()
        self.ws()
        if self.i != len(self.s):
            raise ValueError("trailing input in %r at %d" % (self.s, self.i))
        return e

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def eat(self, c):
        self.ws()
        if self.s.startswith(c, self.i):
            self.i += len(c)
            return True
        return False

    def expr(self):
        e = self.term()
        while True:
            if self.eat("+"):
                e = e + self.term()
            elif self.eat("-"):
                e = e - self.term()
            else:
                return e

    def term(self):
        e = self.unary()
        while True:
            if self.eat("*"):
                e = e * self.unary()
            elif self.eat("/"):
                e = e * self.unary().inverse()
            else:
                return e

    def unary(self):
        if self.eat("-"):
            return -self.unary()
        return self.power()

    def power(self):
        b = self.primary()
        if self.eat("^"):
            m = re.compile(r"\s*(-?\d+)").match(self.s, self.i)
            self.i = m.end()
            p = int(m.group(1))
            r = CE.num(1)
            for _ in range(abs(p)):
                r = r * b
            return r if p >= 0 else r.inverse()
        return b

    def args(self):
        m = re.compile(r"\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)").match(self.s, self.i)
        self.i = m.end()
        return tuple(int(g) for g in m.groups() if g is not None)

    def primary(self):
        if self.eat("("):
            e = self.expr()
            if not self.eat(")"):
                raise ValueError("expected ')' in %r" % self.s)
            return e
        self.ws()
        m = re.compile(r"\d+").match(self.s, self.i)
        if m:
            self.i = m.end()
            return CE.num(int(m.group()))
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_]*").match(self.s, self.i)
        if not m:
            raise ValueError("bad constant expression %r at %d" % (self.s, self.i))
        self.i = m.end()
        name = m.group()
        if name == "pi":
            return CE.atom("Pi", 1)
        if name == "log2":
            return CE.atom("Log2")
        if name == "I":
            return CE.atom("I")
        if name in ("sqrt2", "sqrt3"):
            return CE.atom("Sqrt" + name[-1])
        if name == "zeta":
            a = self.args()
            return CE.atom("Zeta" if len(a) == 1 else "DoubleZeta", *a)
        if name == "L3":
            return CE.atom("LMinus3", *self.args())
        raise ValueError("unknown name " + name)


def C(text):
    return ConstParser(text).run().json()


# ---------------------------------------------------------------- WZ pairs

PAIRS = {
    "th1": dict(sign=(1, 0), geom=[(Q(1, 16), 1, 0)],
                gammas=[G(1, 1, Q(3, 2)), Fa(0, 1, 0), Fa(2, 0, 0, 4), Fa(2, 1, 1, -2), G(3, 0, Q(1, 2), -1),
                        Fa(1, 0, 0, -2)]),
    "f1": dict(pre=Q(1, 3) / ((k + 1 + n) * (1 + 2 * n + k)), gammas=[Fa(1, 1, 0), Fa(1, 0, 0), Fa(2, 1, 0, -1)]),
    "f2": dict(pre=-Q(2, 5) / ((k + n + 1) ** 2 * (2 * n + 1 + k)), sign=(1, 0),
               gammas=[Fa(1, 0, 0, 2), Fa(0, 1, 0), Fa(2, 1, 0, -1)]),
    "f3": dict(pre=8 * n / ((1 + 6 * n + 3 * k) * (6 * n + 2 + 3 * k)), geom=[(3, 0, 3)],
               gammas=[Fa(3, 0, 0, 2), Fa(2, 1, 0), Fa(1, 1, 0, 2), Fa(1, 0, 0, -2), Fa(6, 3, 0, -1),
                       Fa(2, 0, 0, -1)]),
    "f4": dict(pre=-Q(1, 2) * (n + 1) * (3 + 4 * n + 4 * k)
               / ((2 * k + 1 + 2 * n) * (1 + 3 * n + 2 * k) * (2 + 3 * n + 2 * k) * (k + n + 1)),
               sign=(1, 0), gammas=[Fa(1, 2, 0), Fa(1, 0, 0, 2), Fa(3, 2, 0, -1)]),
    "f5": dict(pre=4 / ((k + n + 1) * (2 * n + 1 + k) ** 2), gammas=[Fa(0, 1, 0, 2), Fa(1, 0, 0, 4), Fa(2, 1, 0, -2)]),
    "f6": dict(pre=-4 / ((1 + 3 * n + k) * (2 * n + 1 + k) ** 2), sign=(1, 0),
               gammas=[Fa(1, 0, 0, 2), Fa(1, 1, 0), Fa(3, 1, 0, -1)]),
    "f7": dict(pre=1 / ((2 * n + 1 + k) ** 2), gammas=[Fa(1, 1, 0, 2), Fa(1, 0, 0, 4), Fa(2, 1, 0, -2), Fa(2, 0, 0, -1)]),
    "f8": dict(pre=2 * (5 * n + 1) * (3 + 6 * n + 4 * k)
               / ((2 * k + 1 + 2 * n) * (5 * n + 1 + 2 * k) * (5 * n + 2 + 2 * k) * (1 + 3 * n + k)),
               gammas=[Fa(2, 0, 0), Fa(2, 1, 0), Fa(1, 2, 0), Fa(0, 2, 0), Fa(5, 0, 0), Fa(1, 0, 0, 2), Fa(1, 1, 0),
                       Fa(0, 1, 0, -1), Fa(2, 2, 0, -1), Fa(3, 0, 0, -1), Fa(5, 2, 0, -1), Fa(3, 1, 0, -1)]),
    "f9": dict(pre=-(2 + 3 * n + 2 * k) * (2 * k + 1 + 2 * n) / ((4 * n + 1 + 2 * k) * (2 * n + 1 + k) ** 3),
               sign=(1, 0),
               gammas=[Fa(2, 0, 0, 4), Fa(1, 1, 0, 2), Fa(2, 2, 0), Fa(2, 1, 0, -2), Fa(4, 2, 0, -1), Fa(4, 0, 0, -1)]),
    "f10": dict(pre=2 * (2 + 3 * n + 2 * k) / ((1 + 3 * n + k) * (2 * n + 1 + k) ** 3),
                gammas=[Fa(0, 1, 0), Fa(1, 1, 0, 3), Fa(2, 0, 0, 3), Fa(1, 0, 0, 3), Fa(3, 1, 0, -1), Fa(2, 1, 0, -3),
                        Fa(3, 0, 0, -1)]),
    "f11": dict(pre=-2 * (3 + 6 * n + 4 * k) * (2 * n + 1)
                / ((6 * n + 1 + 2 * k) * (2 * n + 1 + k) ** 2 * (2 * k + 1 + 2 * n)),
                sign=(1, 0),
                gammas=[Fa(0, 1, 0), Fa(2, 2, 0), Fa(2, 0, 0, 3), Fa(3, 1, 0), Fa(1, 1, 0, -1), Fa(1, 0, 0, -2),
                        Fa(2, 1, 0, -1), Fa(6, 2, 0, -1)]),
    "f12": dict(pre=-(2 + 3 * n + 2 * k) / ((2 * n + 1 + k) ** 4), sign=(1, 0),
                gammas=[Fa(1, 1, 0, 4), Fa(1, 0, 0, 6), Fa(2, 1, 0, -4), Fa(2, 0, 0, -1)]),
    "f13": dict(pre=(2 + 3 * n + 2 * k) * (4 * n + 1 + 2 * k) / ((2 * k + 1 + 2 * n) * (2 * n + 1 + k) ** 3),
                gammas=[Fa(1, 1, 0, 4), Fa(1, 0, 0, 4), Fa(4, 2, 0), Fa(2, 1, 0, -4), Fa(2, 2, 0, -1), Fa(2, 0, 0, -1)]),
    "f14": dict(pre=4 * (6 * n + 1 + 2 * k) / ((2 * k + 1 + 2 * n) * (1 + 3 * n + k) ** 2),
                gammas=[Fa(1, 0, 0, 4), Fa(6, 2, 0), Fa(1, 1, 0, 3), Fa(3, 1, 0, -3), Fa(2, 0, 0, -1),
                        Fa(2, 2, 0, -1)]),
    "f15": dict(pre=-3 * (6 * n + 1 + 2 * k) * (2 + 3 * n + 2 * k) / ((2 * n + 1 + k) ** 3 * (2 * k + 1)),
                gammas=[Fa(0, 1, 0), Fa(1, 0, 0, 6), Fa(1, 1, 0, 3), Fa(6, 2, 0), Fa(2, 1, 0, -3), Fa(0, 2, 0, -1),
                        Fa(2, 0, 0, -3), Fa(3, 1, 0, -1)]),
    # parameters a, c; the unit factor (-1)^(c-a) is omitted, pi^-3 is Gamma(1/2)^-6
    "th2": dict(pre=6, sign=(1, 1), geom=[(2, 0, 2, {"c": -2})],
                gammas=[G(1, 0, Q(1, 2), 2, a=-1), G(0, -1, Q(-1, 2), 1, c=1), G(1, 1, Q(1, 2), 2),
                        G(1, 0, Q(1, 2), 1, a=1, c=2), G(1, 1, Q(1, 2), 1, a=-1, c=-1), G(1, 0, 0, -1, a=-1),
                        G(1, 0, 0, -2, c=1), G(3, 2, Q(3, 2), -1, a=-1), G(0, 0, Q(1, 2), -6)],
                params=("a", "c")),
}

PAIR_PROVENANCE = {
    "th1": "WZ pair for the 2 log 2 series",
    "th2": "parameterized WZ pair for the 3/pi series and its harmonic variants",
    "f1": "WZ pair for the derivative sums of f1",
    "f2": "WZ pair for the derivative sums of f2",
}

# g(n) = lim G(n,k) for th2, without its sqrt(2) and (-1)^a factors
BOUNDARY_G = dict(pre=Q(3, 4), sign=(1, 0), geom=[(2, -9, 0, {"a": 3, "c": -6})],
                  gammas=[G(6, 0, 2, 1, a=-2, c=4), G(6, 0, 1, -1, a=-2, c=4), G(2, 0, 1, 2, a=-2),
                          G(2, 0, 1, 1, a=2, c=4), G(1, 0, 1, -3, a=-1), G(1, 0, 1, -1, a=1, c=2),
                          G(1, 0, 1, -2, c=1)],
                  params=("a", "c"))

# ---------------------------------------------------------------- summands

# f_j(x), x stored as k
F = {
    1: dict(pre=1 / x ** 2, gammas=[G(0, 1, 1, 2), G(0, 2, 1, -1)]),
    2: dict(pre=1 / x ** 3, phase=1, gammas=[G(0, 1, 1, 2), G(0, 2, 1, -1)]),
    3: dict(pre=(21 * x ** 2 + 27 * x + 8) / ((2 * x + 1) * (6 * x + 1) * (6 * x + 5)),
            gammas=[G(0, 3, 1, 2), G(0, 6, 1, -1)]),
    4: dict(pre=(7 * x - 2) / ((2 * x - 1) * x ** 2), phase=1, gammas=[G(0, 1, 1, 3), G(0, 3, 1, -1)]),
    5: dict(pre=(30 * x - 11) / (4 * x * (2 * x - 1)), gammas=[G(0, 1, 0, 4), G(0, 2, 0, -2)]),
    6: dict(pre=(56 * x ** 2 - 32 * x + 5) / ((2 * x - 1) ** 2), phase=1, gammas=[G(0, 1, 0, 3), G(0, 3, 1, -1)]),
    7: dict(pre=(21 * x - 8) / P(8), gammas=[G(0, 1, 0, 6), G(0, 2, 0, -3)]),
    8: dict(pre=2 * (145 * x ** 2 - 104 * x + 18) / (9 * (2 * x - 1)),
            gammas=[G(0, 2, 0), G(0, 1, 0, 4), G(0, 3, 0, -2)]),
    9: dict(pre=(410 * x ** 2 - 197 * x + 24) / (2 * (2 * x - 1)), phase=1,
            gammas=[G(0, 2, 0, 3), G(0, 1, 0, 2), G(0, 4, 0, -2)]),
    10: dict(pre=(364 * x ** 2 - 227 * x + 36) / (9 * (2 * x - 1)), gammas=[G(0, 1, 0, 6), G(0, 3, 0, -2)]),
    11: dict(pre=4 * (112 * x ** 3 - 8 * x ** 2 - 6 * x + 1) / x ** 2, phase=1,
             gammas=[G(0, 3, 0), G(0, 2, -1, 3), G(0, 1, 0, -3), G(0, 6, 0, -1)]),
    12: dict(pre=(205 * x ** 2 - 160 * x + 32) / P(32), phase=1, gammas=[G(0, 1, 0, 10), G(0, 2, 0, -5)]),
    13: dict(pre=(60 * x ** 2 - 43 * x + 8) / (16 * (4 * x - 1)),
             gammas=[G(0, 4, 0), G(0, 1, 0, 8), G(0, 2, 0, -6)]),
    14: dict(pre=(69 * x ** 2 - 40 * x + 6) / (18 * (6 * x - 1)),
             gammas=[G(0, 6, 0), G(0, 1, 0, 7), G(0, 3, 0, -3), G(0, 2, 0, -2)]),
    15: dict(pre=(74 * x ** 2 - 47 * x + 8) / P(32),
             gammas=[G(0, 6, -1), G(0, 1, 0, 9), G(0, 3, 0, -1), G(0, 2, 0, -6)]),
}
START = {j: (0 if j == 3 else 1) for j in F}
ORDERS = {1: range(2, 9), 2: range(2, 7), 3: range(1, 4), 4: range(1, 8), 5: range(1, 7), 6: range(1, 7),
          7: range(2, 8), 8: range(1, 8), 9: range(1, 8), 10: range(1, 7), 11: range(1, 8), 12: range(1, 7),
          13: range(1, 8), 14: range(1, 8), 15: range(1, 8)}

# printed right hand sides, keyed by (j, m)
RHS = {
    (1, 0): "pi^2/18",
    (1, 1): "-4/3*zeta(3)",
    (1, 2): "31/6*zeta(4)",
    (1, 3): "-38*zeta(5)+8*zeta(2)*zeta(3)",
    (1, 4): "-32*zeta(3)^2+979/6*zeta(6)",
    (1, 5): "760*zeta(2)*zeta(5)+360*zeta(3)*zeta(4)-2465*zeta(7)",
    (1, 6): "110483/12*zeta(8)-5088*zeta(3)*zeta(5)+960*zeta(2)*zeta(3)^2-672*zeta(3,5)",
    (1, 7): "-9744703*zeta(9)+103530*zeta(7)*zeta(2)+33180*zeta(6)*zeta(3)+71820*zeta(5)*zeta(4)"
            "-4480*zeta(3)^3",
    (1, 8): "13510461/10*zeta(10)-967680*zeta(3)*zeta(7)+322560*zeta(2)*zeta(3)*zeta(5)+120960*zeta(4)*zeta(3)^2"
            "-618480*zeta(5)^2-37632*zeta(2)*zeta(5,3)+49200*zeta(7,3)",
    (2, 0): "-2/5*zeta(3)",
    (2, 1): "9/5*zeta(4)-2/5*pi*zeta(3)*I",
    (2, 2): "pi^5/25*I+8/15*pi^2*zeta(3)-52/5*zeta(5)",
    (2, 3): "(4*pi*I*(pi^2*zeta(3)-39*zeta(5))-6*(2*zeta(3)^2+3*zeta(6)))/5",
    (2, 4): "(4*(52*zeta(2)*zeta(5)-9*zeta(3)*zeta(4)-58*zeta(7))+pi*I*(57*zeta(6)-4*zeta(3)^2))*12/5",
    (2, 5): "6*(32*zeta(5,3)-48*zeta(3)*zeta(5)+32*zeta(2)*zeta(3)^2-303*zeta(8)"
            "+8*pi*I*(26*zeta(2)*zeta(5)-zeta(3)*zeta(4)-58*zeta(7)))",
    (2, 6): "96*(696*zeta(2)*zeta(7)+3*zeta(3)*zeta(6)-2*zeta(3)^3-351*zeta(4)*zeta(5)-598*zeta(9))"
            "+36*pi*I*(161*zeta(8)+16*zeta(2)*zeta(3)^2-48*zeta(3)*zeta(5)+32*zeta(5,3))",
    (3, 0): "8*pi/(9*sqrt3)",
    (3, 1): "-12*L3(2)",
    (3, 2): "32*pi^3/(9*sqrt3)",
    (3, 3): "54*(2*pi^2*L3(2)-27*L3(4))",
    (4, 0): "-pi^2/12",
    (4, 1): "7/2*zeta(3)-pi^3/12*I",
    (4, 2): "7*pi*zeta(3)*I-15*zeta(4)",
    (4, 3): "279*zeta(5)-21*pi^2*zeta(3)-2/3*pi^5*I",
    (4, 4): "6*(56*zeta(3)^2-75*zeta(6))+4*pi*I*(29*zeta(5)-14*pi^2*zeta(3))",
    (4, 5): "360*(127*zeta(7)+21*zeta(3)*zeta(4)-93*zeta(2)*zeta(5))+60*pi*I*(28*zeta(3)^2-111*zeta(6))",
    (4, 6): "72*(61*zeta(8)-84*zeta(2)*zeta(3)^2+1680*zeta(3)*zeta(5)-408*zeta(5,3)"
            "+30*pi*I*(127*zeta(7)-62*zeta(2)*zeta(5)))",
    (4, 7): "168*(5*(17009*zeta(9)+224*zeta(3)^3-13716*zeta(2)*zeta(7)-336*zeta(3)*zeta(6)+5022*zeta(4)*zeta(5))"
            "+3*pi*I*(1680*zeta(3)*zeta(5)-408*zeta(5,3)-560*zeta(2)*zeta(3)^2-2039*zeta(8)))",
    (5, 0): "4*zeta(3)",
    (5, 1): "-24*zeta(4)",
    (5, 2): "8*(23*zeta(5)-2*zeta(2)*zeta(3))",
    (5, 3): "24*(2*zeta(3)^2-49*zeta(6))",
    (5, 4): "96*(177*zeta(7)-46*zeta(2)*zeta(5)-2*zeta(3)*zeta(4))",
    (5, 5): "640*(9*zeta(3)*zeta(5)-3*zeta(2)*zeta(3)^2-12*zeta(5,3)-146*zeta(8))",
    (5, 6): "960*(3001*zeta(9)+8*zeta(3)^3-6*zeta(3)*zeta(6)-138*zeta(4)*zeta(5)-1062*zeta(2)*zeta(7))",
    (6, 0): "-4*zeta(3)",
    (6, 1): "pi^4/3-4*pi*I*zeta(3)",
    (6, 2): "8*pi^2*zeta(3)-288*zeta(5)+2/3*pi^5*I",
    (6, 3): "1410*zeta(6)-96*zeta(3)^2+16*pi*I*(pi^2*zeta(3)-54*zeta(5))",
    (6, 4): "576*(36*zeta(2)*zeta(5)-3*zeta(3)*zeta(4)-73*zeta(7)+pi*I/6*(85*zeta(6)-4*zeta(3)^2))",
    (6, 5): "48*(1715*zeta(8)+240*zeta(2)*zeta(3)^2-480*zeta(3)*zeta(5)+48*zeta(5,3)"
            "+60*pi*I*(24*zeta(2)*zeta(5)-73*zeta(7)))",
    (6, 6): "3840*(1971*zeta(2)*zeta(7)+12*zeta(3)*zeta(6)-486*zeta(4)*zeta(5)-8*zeta(3)^3-2959*zeta(9)"
            "+pi*I/4*(1417*zeta(8)+48*zeta(2)*zeta(3)^2-144*zeta(3)*zeta(5)+144*zeta(5,3)))",
    (7, 0): "zeta(2)",
    (7, 1): "-6*zeta(3)",
    (7, 2): "57/2*zeta(4)",
    (7, 3): "18*pi^2*zeta(3)-324*zeta(5)",
    (7, 4): "1959/2*zeta(6)-432*zeta(3)^2",
    (7, 5): "19440*zeta(2)*zeta(5)-540*zeta(3)*zeta(4)-31860*zeta(7)",
    (7, 6): "31104*zeta(5,3)+38880*zeta(2)*zeta(3)^2-77760*zeta(3)*zeta(5)-84807/4*zeta(8)",
    (7, 7): "630*(6372*zeta(2)*zeta(7)-213*zeta(3)*zeta(6)-324*zeta(4)*zeta(5)-288*zeta(3)^3-8812*zeta(9))",
    (8, 0): "pi^2/3",
    (8, 1): "-16*zeta(3)",
    (8, 2): "107*zeta(4)",
    (8, 3): "20*(4*pi^2*zeta(3)-81*zeta(5))",
    (8, 4): "21*(415*zeta(6)-128*zeta(3)^2)",
    (8, 5): "30*(5400*zeta(2)*zeta(5)+272*zeta(3)*zeta(4)-10761*zeta(7))",
    (8, 6): "15/2*(90665*zeta(8)-138240*zeta(3)*zeta(5)+44928*zeta(5,3)+53760*zeta(2)*zeta(3)^2)",
    (8, 7): "420*(161415*zeta(2)*zeta(7)+2340*zeta(3)*zeta(6)+13770*zeta(4)*zeta(5)-6272*zeta(3)^3-284755*zeta(9))",
    (9, 0): "-pi^2/3",
    (9, 1): "22*zeta(3)-I*pi^3/3",
    (9, 2): "44*pi*zeta(3)*I-174*zeta(4)",
    (9, 3): "4140*zeta(5)-1584*zeta(2)*zeta(3)-97/15*pi^5*I",
    (9, 4): "24*(374*zeta(3)^2-763*zeta(6))+80*pi*I*(207*zeta(5)-11*pi^2*zeta(3))",
    (9, 5): "720*(2083*zeta(7)+209*zeta(3)*zeta(4)-1380*zeta(2)*zeta(5))+60*pi*I*(748*zeta(3)^2-2219*zeta(6))",
    (9, 6): "108*(1875*zeta(8)+57200*zeta(3)*zeta(5)-19840*zeta(5,3)-2992*zeta(2)*zeta(3)^2"
            "+40*pi*I*(2083*zeta(7)-1150*zeta(2)*zeta(5)+33*zeta(3)*zeta(4)))",
    (9, 7): "3360*(295695*zeta(9)-224964*zeta(2)*zeta(7)+58995*zeta(4)*zeta(5)-1023*zeta(3)*zeta(6)+6358*zeta(3)^3"
            "+pi*I/8*(102960*zeta(3)*zeta(5)-35712*zeta(5,3)-4488*zeta(2)*zeta(3)^2-43801*zeta(8)))",
    (10, 0): "4*zeta(3)",
    (10, 1): "-36*zeta(4)",
    (10, 2): "24*(17*zeta(5)-2*zeta(2)*zeta(3))",
    (10, 3): "12*(16*zeta(3)^2-261*zeta(6))",
    (10, 4): "288*(265*zeta(7)+2*zeta(3)*zeta(4)-102*zeta(2)*zeta(5))",
    (10, 5): "2880*(16*zeta(3)*zeta(5)-99*zeta(8)-24*zeta(5,3)-8*zeta(2)*zeta(3)^2)",
    (10, 6): "960*(25849*zeta(9)+128*zeta(3)^3+30*zeta(3)*zeta(6)+918*zeta(4)*zeta(5)-14310*zeta(2)*zeta(7))",
    (11, 0): "-2/3*pi^2",
    (11, 1): "44*zeta(3)-2/3*pi^3*I",
    (11, 2): "44*(2*zeta(3)*pi*I-9*zeta(4))",
    (11, 3): "9696*zeta(5)-528*pi^2*zeta(3)-218/15*pi^5*I",
    (11, 4): "672*(44*zeta(3)^2-119*zeta(6))+32*pi*I*(1212*zeta(5)-55*pi^2*zeta(3))",
    (11, 5): "5760*(905*zeta(7)-404*zeta(2)*zeta(5)-110*zeta(3)*zeta(4))+840*pi*I*(176*zeta(3)^2-587*zeta(6))",
    (11, 6): "2304*(20460*zeta(3)*zeta(5)-1564*zeta(5,3)-4620*zeta(2)*zeta(3)^2-17197*zeta(8)"
             "+5*pi*I*(2715*zeta(7)-1010*zeta(2)*zeta(5)-462*zeta(3)*zeta(4)))",
    (11, 7): "26880*(225097*zeta(9)+4312*zeta(3)^3-9774*zeta(2)*zeta(7)-21483*zeta(3)*zeta(6)-36360*zeta(4)*zeta(5)"
             "+pi*I/5*(61380*zeta(3)*zeta(5)-4692*zeta(5,3)-11550*zeta(2)*zeta(3)^2-64921*zeta(8)))",
    (12, 0): "-2*zeta(3)",
    (12, 1): "15*zeta(4)-2*zeta(3)*pi*I",
    (12, 2): "16/3*pi^2*zeta(3)-140*zeta(5)+pi^5/3*I",
    (12, 3): "60*(4*zeta(6)-zeta(3)^2)+12*pi*I*(pi^2*zeta(3)-35*zeta(5))",
    (12, 4): "240*(56*zeta(2)*zeta(5)-11*zeta(3)*zeta(4)-69*zeta(7))+4*pi*I/63*(37*pi^6-3780*zeta(3)^2)",
    (12, 5): "10*(1536*zeta(5,3)-720*zeta(3)*zeta(5)+160*pi^2*zeta(3)^2-6157*zeta(8))"
             "+24*pi*I*(350*pi^2*zeta(5)-3*pi^4*zeta(3)-3450*zeta(7))",
    (12, 6): "480*(8280*zeta(2)*zeta(7)+288*zeta(3)*zeta(6)-5775*zeta(4)*zeta(5)-50*zeta(3)^3-6565*zeta(9))"
             "+180*pi*I*(40*pi^2*zeta(3)^2-240*zeta(3)*zeta(5)+512*zeta(5,3)-679*zeta(8))",
    (13, 0): "pi^2/3",
    (13, 1): "-8*zeta(3)",
    (13, 2): "24*zeta(4)",
    (13, 3): "-48*zeta(5)",
    (13, 4): "48*(16*zeta(3)^2-25*zeta(6))",
    (13, 5): "2880*(19*zeta(7)-14*zeta(3)*zeta(4))",
    (13, 6): "5760*(32*zeta(5,3)+168*zeta(3)*zeta(5)-215*zeta(8))",
    (13, 7): "13440*(2489*zeta(9)-1860*zeta(3)*zeta(6)-32*zeta(3)^3-126*zeta(4)*zeta(5))",
    (14, 0): "2/3*pi^2",
    (14, 1): "-12*zeta(3)",
    (14, 2): "28*zeta(4)",
    (14, 3): "72*(7*zeta(5)-4*zeta(2)*zeta(3))",
    (14, 4): "48*(126*zeta(3)^2-181*zeta(6))",
    (14, 5): "720*(623*zeta(7)+56*zeta(2)*zeta(5)-554*zeta(3)*zeta(4))",
    (14, 6): "24*(121824*zeta(5,3)+503280*zeta(3)*zeta(5)+30240*zeta(2)*zeta(3)^2-701863*zeta(8))",
    (14, 7): "20160*(22657*zeta(9)+3738*zeta(2)*zeta(7)+5817*zeta(4)*zeta(5)-27711*zeta(3)*zeta(6)-882*zeta(3)^3)",
    (15, 0): "2*pi^2",
    (15, 1): "-18*zeta(3)",
    (15, 2): "18*zeta(4)",
    (15, 3): "36*(35*zeta(5)-3*pi^2*zeta(3))",
    (15, 4): "36*(300*zeta(3)^2-437*zeta(6))",
    (15, 5): "2160*(305*zeta(7)+70*zeta(2)*zeta(5)-327*zeta(3)*zeta(4))",
    (15, 6): "540*(600*pi^2*zeta(3)^2+9856*zeta(5,3)+35280*zeta(3)*zeta(5)-52735*zeta(8))",
    (15, 7): "5040*(116890*zeta(9)-7500*zeta(3)^3-192789*zeta(3)*zeta(6)+68670*zeta(4)*zeta(5)+32940*zeta(2)*zeta(7))",
}

# printed values that disagree with the 40-digit sums, with the reading that matches
ALTERNATIVES = {
    (1, 7): [("zeta(9) coefficient -974470/3",
              "-974470/3*zeta(9)+103530*zeta(7)*zeta(2)+33180*zeta(6)*zeta(3)+71820*zeta(5)*zeta(4)"
              "-4480*zeta(3)^3")],
    (4, 4): [("imaginary zeta(5) coefficient 279",
              "6*(56*zeta(3)^2-75*zeta(6))+4*pi*I*(279*zeta(5)-14*pi^2*zeta(3))")],
    (4, 6): [("zeta(2)zeta(3)^2 coefficient -840",
              "72*(61*zeta(8)-840*zeta(2)*zeta(3)^2+1680*zeta(3)*zeta(5)-408*zeta(5,3)"
              "+30*pi*I*(127*zeta(7)-62*zeta(2)*zeta(5)))")],
    (6, 5): [("zeta(5,3) coefficient 480",
              "48*(1715*zeta(8)+240*zeta(2)*zeta(3)^2-480*zeta(3)*zeta(5)+480*zeta(5,3)"
              "+60*pi*I*(24*zeta(2)*zeta(5)-73*zeta(7)))")],
    (9, 6): [("zeta(2)zeta(3)^2 coefficient -29920",
              "108*(1875*zeta(8)+57200*zeta(3)*zeta(5)-19840*zeta(5,3)-29920*zeta(2)*zeta(3)^2"
              "+40*pi*I*(2083*zeta(7)-1150*zeta(2)*zeta(5)+33*zeta(3)*zeta(4)))")],
    (9, 7): [("imaginary zeta(2)zeta(3)^2 coefficient -44880",
              "3360*(295695*zeta(9)-224964*zeta(2)*zeta(7)+58995*zeta(4)*zeta(5)-1023*zeta(3)*zeta(6)"
              "+6358*zeta(3)^3+pi*I/8*(102960*zeta(3)*zeta(5)-35712*zeta(5,3)-44880*zeta(2)*zeta(3)^2"
              "-43801*zeta(8)))")],
    (11, 7): [("zeta(2)zeta(7) coefficient -97740",
               "26880*(225097*zeta(9)+4312*zeta(3)^3-97740*zeta(2)*zeta(7)-21483*zeta(3)*zeta(6)"
               "-36360*zeta(4)*zeta(5)+pi*I/5*(61380*zeta(3)*zeta(5)-4692*zeta(5,3)-11550*zeta(2)*zeta(3)^2"
               "-64921*zeta(8)))")],
}

# the two groupings of the unbalanced f11 fourth-derivative display
F11_D4 = [
    ("672*(44*zeta(3)^2-119*zeta(6)) + 32*pi*I*(1212*zeta(5)-55*pi^2*zeta(3))",
     "672*(44*zeta(3)^2-119*zeta(6))+32*pi*I*(1212*zeta(5)-55*pi^2*zeta(3))"),
    ("672*(44*zeta(3)^2-119*zeta(6) + 32*pi*I*(1212*zeta(5)-55*pi^2*zeta(3)))",
     "672*(44*zeta(3)^2-119*zeta(6)+32*pi*I*(1212*zeta(5)-55*pi^2*zeta(3)))"),
]

BASE_REMARKS = {
    2: ("r_apery", "Apery series"),
    3: ("r_cz115", "Chu-Zhang example 115"),
    4: ("r_cz24", "Chu-Zhang example 24"),
    5: ("r_cz11", "Chu-Zhang example 11"),
    6: ("r_cz21", "Chu-Zhang example 21"),
    7: ("r_zeilberger", "Zeilberger series for zeta(2)"),
    8: ("r_au_f8", "series of f8, proved by Au"),
    9: ("r_cz63", "Chu-Zhang example 63"),
    10: ("r_cz118", "Chu-Zhang example 118"),
    11: ("r_cz93", "Chu-Zhang example 93"),
    12: ("r_az_f12", "Amdeberhan-Zeilberger series"),
    13: ("r_cz14", "Chu-Zhang example 14"),
    14: ("r_cz32", "Chu-Zhang example 32"),
    15: ("r_cz52", "Chu-Zhang example 52"),
}


def H(mult, offset=0, order=1, exp=1):
    return {"mult": str(mult), "offset": str(offset), "order": str(order), "exp": str(exp)}


def mono(coeff, harmonics=(), scalar=None):
    coeff = RF.lift(coeff)
    m = {"coeff": {"num": coeff.num.json(), "den": coeff.den.json()}, "harmonics": list(harmonics)}
    if scalar is not None:
        m["scalar"] = C(scalar)
    return m


def entry(id_, summand, rhs, provenance, m=0, start=1, pair=None, weight=None, flagged=False, candidates=None,
          boundary=None, group=None):
    e = {"id": id_, "group": group or id_.split("_")[0], "summand": summand, "derivative_order": m,
         "start": start, "rhs": C(rhs), "rhs_text": rhs, "provenance": provenance}
    if pair:
        e["pair"] = pair
    if weight:
        e["weight"] = weight
    if flagged:
        e["flagged"] = True
        e["candidates"] = [{"label": lab, "rhs": C(txt), "rhs_text": txt, **({"derivative_order": mm}
                            if mm is not None else {})} for lab, txt, mm in candidates]
    if boundary:
        e["boundary"] = boundary
    return e


def build():
    entries = []

    # 2 log 2 series, start 1
    th1 = term(pre=-(28 * k ** 2 - 8 * k + 1) / ((2 * k - 1) ** 2 * k), sign=(0, 1),
               gammas=merged(binom(2, 1, 2), binom(6, 3, -1), binom(3, 1, -1)), domain=(0, 1))
    entries.append(entry("th1", th1, "2*log2", "2 log 2 series", start=1, pair="th1"))

    p28 = 28 * k ** 2 + 10 * k + 1
    base = dict(geom=[(-64, 0, -1)], gammas=merged(binom(2, 1, 5), binom(3, 1, -1), binom(6, 3, -1)))
    th2_base = term(pre=1 / (6 * k + 1), **base)
    th2a = term(pre=p28 / (6 * k + 1), **base)
    w_b = [mono(2 * p28, [H(2)]), mono(-3 * p28, [H(1)]), mono(20 * k + 4)]
    fk = 4 * (138 * k ** 2 + 52 * k + 5) / (3 * (6 * k + 1))
    w_c = [mono(2 * p28, [H(6)]), mono(-p28, [H(3)]), mono(-3 * p28, [H(1)]), mono(fk)]
    entries.append(entry("th2a", th2a, "3/pi", "Ramanujan-type 3/pi series", start=0, pair="th2",
                         boundary={"combination": {}}))
    entries.append(entry("th2b", th2_base, "18*log2/pi", "harmonic variant of the 3/pi series with 2H_2k-3H_k",
                         start=0, pair="th2", weight=w_b,
                         boundary={"combination": {"c": "1"},
                                   "lhs_weight": w_b + [mono(-6 * p28, scalar="log2")]}))
    entries.append(entry("th2c", th2_base, "30*log2/pi",
                         "harmonic variant of the 3/pi series with 2H_6k-H_3k-3H_k", start=0, pair="th2",
                         weight=w_c,
                         boundary={"combination": {"c": "2", "a": "1"},
                                   "lhs_weight": w_c + [mono(-10 * p28, scalar="log2")]}))

    for j, spec in F.items():
        st = START[j]
        f = term(domain=(0, st), **spec)
        prefix = "f%d_m" % j if j in (1, 2) else "f%d_d" % j
        for mm in ORDERS[j]:
            id_ = prefix + str(mm)
            prov = "derivative sum of f%d, order %d" % (j, mm)
            if (j, mm) == (11, 4):
                entries.append(entry(id_, f, F11_D4[0][1], prov, m=mm, start=st, pair="f%d" % j, flagged=True,
                                     candidates=[(lab, txt, None) for lab, txt in F11_D4]))
            elif (j, mm) in ALTERNATIVES:
                cands = [("as printed", RHS[(j, mm)], None)] + [(lab, txt, None) for lab, txt in
                                                                ALTERNATIVES[(j, mm)]]
                entries.append(entry(id_, f, RHS[(j, mm)], prov, m=mm, start=st, pair="f%d" % j, flagged=True,
                                     candidates=cands))
            else:
                entries.append(entry(id_, f, RHS[(j, mm)], prov, m=mm, start=st, pair="f%d" % j))
        if j in BASE_REMARKS:
            rid, prov = BASE_REMARKS[j]
            entries.append(entry(rid, f, RHS[(j, 0)], prov, start=st, group="f%d" % j))

    f1 = term(domain=(0, 1), **F[1])
    f2 = term(domain=(0, 1), **F[2])
    f7 = term(domain=(0, 1), **F[7])
    entries.append(entry("r_f1_base", f1, "pi^2/18", "classical sum of 1/(k^2 C(2k,k))", group="f1", flagged=True,
                         candidates=[("pi^2/18", "pi^2/18", None), ("-zeta(2)/3", "-zeta(2)/3", None)]))
    entries.append(entry("r_f1_sum_claim", f1, "-4/3*zeta(3)", "harmonic companion of the f1 series", group="f1",
                         flagged=True,
                         candidates=[("sum of f1", "-4/3*zeta(3)", 0), ("sum of f1'", "-4/3*zeta(3)", 1)]))
    binv = term(pre=1 / k ** 2, gammas=merged(binom(2, 1, -1)), domain=(0, 1))
    entries.append(entry("r_f1_harmonic", binv, "-4/3*zeta(3)", "harmonic companion of the f1 series", group="f1",
                         weight=[mono(P(-2), [H(2)]), mono(P(2), [H(1)]), mono(-2 / k)]))
    entries.append(entry("r_f2_prime", f2, RHS[(2, 1)], "first derivative sum of f2", m=1, group="f2"))
    givord = term(pre=1 / k ** 3, sign=(0, 1), gammas=merged(binom(2, 1, -1)), domain=(0, 1))
    entries.append(entry("r_givord", givord, "-9/10*zeta(4)", "Givord reduction of the f2 derivative sum",
                         group="f2", weight=[mono(P(1), [H(2)]), mono(P(-1), [H(1)]), mono(Q(3, 2) / k)]))
    entries.append(entry("r_f7_prime", f7, RHS[(7, 1)], "first derivative sum of f7", m=1, group="f7"))
    au = term(pre=1 / k ** 3, gammas=merged(binom(2, 1, -3)), domain=(0, 1))
    entries.append(entry("r_au_harmonic", au, "zeta(3)", "Au harmonic series for zeta(3)", group="f7",
                         weight=[mono(21 * k - 8, [H(2, -1)]), mono(8 - 21 * k, [H(1, -1)]), mono(P(Q(-7, 2)))]))

    az = term(pre=(205 * k ** 2 + 250 * k + 77) / P(64), sign=(0, 1), gammas=[G(0, 1, 1, 10), G(0, 2, 2, -5)])
    entries.append(entry("r_az_zeta3", az, "zeta(3)", "Amdeberhan-Zeilberger series for zeta(3)", start=0))
    gu = term(pre=(3 * k + 2) / P(1), geom=[(4, 0, -1)], gammas=[G(0, 1, 1, 3), G(0, 1, Q(3, 2), -3),
                                                                G(0, 0, Q(3, 2), 3)])
    entries.append(entry("r_guillera_pi24", gu, "pi^2/4", "Guillera series at a = 1/2", start=0))
    gb = term(pre=(3 * k - 1) / k ** 3, geom=[(16, 0, 1)], gammas=merged(binom(2, 1, -3)), domain=(0, 1))
    entries.append(entry("r_guillera_binomial", gb, "pi^2/4", "Guillera series at a = 1/2, binomial form",
                         flagged=True, group="r_guillera",
                         candidates=[("pi^2/4", "pi^2/4", None), ("pi^2/2", "pi^2/2", None)]))
    ram = term(pre=6 * k + 1, sign=(0, 1), geom=[(512, 0, -1)], gammas=merged(binom(2, 1, 3)))
    entries.append(entry("r_ramanujan3pi", ram, "2*sqrt2/pi", "Ramanujan series for 1/pi", start=0))
    ramh = term(sign=(0, 1), geom=[(512, 0, -1)], gammas=merged(binom(2, 1, 3)))
    entries.append(entry("r_ramanujan_harmonic", ramh, "3*sqrt2*log2/pi", "harmonic Ramanujan series", start=0,
                         group="r_ramanujan",
                         weight=[mono(6 * k + 1, [H(2)]), mono(-6 * k - 1, [H(1)]), mono(P(1))]))

    # second derivative of the f2 pair at n = 0 written with harmonic numbers
    kp = k + 1
    hs = [mono(Q(-8, 5) / kp ** 3, [H(1, 0, 2)]), mono(Q(-8, 5) / kp ** 3, [H(1, 0, 1, 2)]),
          mono(Q(-8, 5) / kp ** 3, scalar="-pi^2/3"), mono(Q(-32, 5) / kp ** 4, [H(1)]),
          mono(Q(-44, 5) / kp ** 5), mono(Q(-8, 5) / kp ** 3, [H(1)], scalar="-I*pi"),
          mono(Q(-8, 5) / kp ** 4, scalar="-2*I*pi")]
    hsum = {"id": "f2_hsum", "weight": hs, "start": 0, "rhs": C(RHS[(2, 2)]), "rhs_text": RHS[(2, 2)],
            "provenance": "harmonic-number form of the second n-derivative of the f2 pair at n = 0",
            "compare_with": "f2_m2"}

    pairs = []
    for pid in ["th1", "th2"] + ["f%d" % j for j in range(1, 16)]:
        prov = PAIR_PROVENANCE.get(pid, "WZ pair for the derivative sums of " + pid)
        pairs.append({"id": pid, "F": term(**PAIRS[pid]), "provenance": prov})

    boundary = {"th2": {"term": term(**BOUNDARY_G), "scalar": C("sqrt2"), "variable": "n", "start": 0,
                        "provenance": "limit of G(n,k) as k grows for the parameterized 3/pi pair"}}
    return {"version": 1, "pairs": pairs, "entries": entries, "hsum": [hsum], "boundary": boundary}


def main():
    cat = build()
    ids = [e["id"] for e in cat["entries"]]
    if len(ids) != len(set(ids)):
        sys.exit("duplicate ids")
    data = ROOT / "data"
    data.mkdir(exist_ok=True)
    (data / "catalog.json").write_text(json.dumps(cat, indent=1) + "\n")
    ex = ROOT / "examples"
    pairs = {p["id"]: p["F"] for p in cat["pairs"]}
    (ex / "th1_F.term").write_text(json.dumps(pairs["th1"], indent=1) + "\n")
    (ex / "f2_F.term").write_text(json.dumps(pairs["f2"], indent=1) + "\n")
    (ex / "f7_summand.term").write_text(json.dumps(term(domain=(0, 1), **F[7]), indent=1) + "\n")
    print("%d pairs, %d entries" % (len(cat["pairs"]), len(ids)))


if __name__ == "__main__":
    main()
