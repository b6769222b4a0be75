"""
q-analogues of Kostant's partition function.

``P(lam, q)`` is the coefficient of ``e^{-lam}`` in ``prod_beta d_beta(q)^{-1}``
where, for ``beta`` an indivisible positive relative coroot,

* type I:  ``d_beta = 1 - q^{b} e^{beta}``
* type II: ``d_beta = (1 - q^{2b} e^{beta/2}) (1 + q^{b} e^{beta/2})``.

The product is a product of one-variable geometric series, and
``P`` is evaluated by the recursion ``f_j(nu) = sum_k c_j^k f_{j-1}(nu - k gamma_j)``
memoised on ``(j, nu)``.  The vectors are held in integer coordinates with
respect to ``RelativeDatum.lattice_basis``.

Polynomials in ``q`` are coefficient tuples, lowest degree first.  The public
``QPolynomial`` is a Laurent polynomial in ``v = q^{-1/2}``.
"""

import threading
from fractions import Fraction
from math import comb

import numpy as np
from sympy import prevprime
from sympy.ntheory.modular import crt

from .root_data import fmt_frac, vec

__all__ = [
    "QPolynomial", "KostantPartition", "KostantEngine", "engine", "d_beta",
    "p_poly", "p_q", "kostant_partitions", "kostant_count", "p_kos",
    "BoxEvaluator", "poly_add", "poly_shift", "poly_eval",
]


# ---------------------------------------------------------------------------
# Laurent polynomials in v = q^{-1/2}
# ---------------------------------------------------------------------------

class QPolynomial:
    """Laurent polynomial in ``v = q^{-1/2}`` with integer coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c = {k: int(x) for k, x in (coeffs or {}).items() if x}

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def q_power(cls, e):
        """``q^e`` for ``e`` in ``(1/2) Z``."""
        k = -2 * Fraction(e)
        if k.denominator != 1:
            raise ValueError("q-exponent must be a half integer")
        return cls({int(k): 1})

    @classmethod
    def from_q_poly(cls, coeffs):
        """From a polynomial in ``q`` given as a coefficient tuple."""
        return cls({-2 * i: x for i, x in enumerate(coeffs) if x})

    @classmethod
    def from_qinv_poly(cls, coeffs):
        """From a polynomial in ``q^{-1}`` given as a coefficient tuple."""
        return cls({2 * i: x for i, x in enumerate(coeffs) if x})

    def __add__(self, other):
        out = dict(self.c)
        for k, x in other.c.items():
            out[k] = out.get(k, 0) + x
        return QPolynomial(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return QPolynomial({k: -x for k, x in self.c.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return QPolynomial({k: other * x for k, x in self.c.items()})
        out = {}
        for k1, x1 in self.c.items():
            for k2, x2 in other.c.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + x1 * x2
        return QPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPolynomial({0: other})
        return isinstance(other, QPolynomial) and self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def is_zero(self):
        return not self.c

    def integral_in_qinv(self):
        """True when only integer powers of ``q^{-1}`` occur."""
        return all(k % 2 == 0 for k in self.c)

    def substitute_power(self, d):
        """``q -> q^d``."""
        return QPolynomial({k * d: x for k, x in self.c.items()})

    def at_q(self, q):
        """Exact value at a rational ``q``; odd powers of ``v`` need ``q`` a
        rational square."""
        q = Fraction(q)
        total = Fraction(0)
        for k, x in self.c.items():
            if k % 2:
                root = _rational_sqrt(q)
                if root is None:
                    raise ValueError("half-integral power of q at a non-square q")
                total += x * root ** (-k)
            else:
                total += x * q ** (-(k // 2))
        return total

    def at_one(self):
        return sum(self.c.values())

    def qinv_coeffs(self):
        """``[(degree in q^{-1}, coefficient), ...]``; degrees may be half
        integers."""
        return [(Fraction(k, 2), x) for k, x in sorted(self.c.items())]

    def to_json(self):
        if self.integral_in_qinv():
            return {"var": "qinv", "coeffs": [[k // 2, x] for k, x in sorted(self.c.items())]}
        return {"var": "v", "coeffs": [[k, x] for k, x in sorted(self.c.items())]}

    @classmethod
    def from_json(cls, obj):
        if obj["var"] == "qinv":
            return cls({2 * k: x for k, x in obj["coeffs"]})
        return cls({k: x for k, x in obj["coeffs"]})

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for k, x in sorted(self.c.items()):
            e = Fraction(-k, 2)
            if e == 0:
                terms.append("%d" % x)
            else:
                terms.append("%d*q^%s" % (x, fmt_frac(e)))
        return " + ".join(terms)


def _rational_sqrt(q):
    from math import isqrt
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# polynomials in q as coefficient tuples
# ---------------------------------------------------------------------------

def poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_shift(p, k, sign=1):
    """``sign * q^k * p``."""
    if not p:
        return ()
    if sign == 1:
        return (0,) * k + tuple(p)
    return (0,) * k + tuple(-x for x in p)


def poly_eval(p, x):
    total = Fraction(0)
    for c in reversed(p):
        total = total * x + c
    return total


# ---------------------------------------------------------------------------
# the engine
# ---------------------------------------------------------------------------

class KostantPartition:
    """A multiplicity map on the positive relative coroots."""

    __slots__ = ("m", "sigma", "size")

    def __init__(self, m, rel):
        self.m = {b: k for b, k in m.items() if k}
        total = [Fraction(0)] * rel.dim
        size = 0
        for beta, k in self.m.items():
            for i, x in enumerate(beta):
                total[i] += k * x
            size += k * rel.F_b[beta]
        self.sigma = tuple(total)
        self.size = size

    def __repr__(self):
        return "KostantPartition(|m|=%d)" % self.size


class KostantEngine:
    """Memoised evaluation of ``P(lam, q)`` for one relative datum."""

    def __init__(self, rel):
        self.rel = rel
        self._lock = threading.Lock()
        self._memo = {}
        self._p_cache = {}
        r = rel.rank
        units = []
        others = []
        for gamma, k, sign in rel.factors:
            c = rel.lattice_int_coords(gamma)
            if sum(c) == 1:
                units.append((c.index(1), k, sign))
            else:
                others.append((c, k, sign))
        # leading unit factors on distinct coordinates give a closed form
        base = {}
        rest = []
        for i, k, sign in units:
            if i in base:
                e = [0] * r
                e[i] = 1
                rest.append((tuple(e), k, sign))
            else:
                base[i] = (k, sign)
        self._base = base
        others.sort(key=lambda f: (sum(f[0]), f[0]))
        self._factors = rest + others
        # b on the whole of F_coroots (b of a divisible coroot is its
        # indivisible partner's b; only used by KostantPartition sizes)
        rel.F_b = self._F_b()

    def _F_b(self):
        rel = self.rel
        out = {}
        for a in rel.rel_roots_pos:
            beta = rel.datum.coroot(a)
            if a in rel.type_of_root:
                out[beta] = rel.b_of[beta]
            else:
                half = tuple(x / 2 for x in a)
                out[beta] = rel.b_of[rel.datum.coroot(half)]
        return out

    def _base_value(self, nu):
        k_tot = 0
        sign = 1
        for i, x in enumerate(nu):
            if x == 0:
                continue
            if i not in self._base:
                return ()
            k, s = self._base[i]
            k_tot += k * x
            if s == -1 and x % 2:
                sign = -sign
        return tuple([0] * k_tot + [sign])

    def _f(self, j, nu):
        if j < 0:
            return self._base_value(nu)
        key = (j, nu)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        g, k, sign = self._factors[j]
        total = ()
        m = 0
        cur = nu
        while all(x >= 0 for x in cur):
            val = self._f(j - 1, cur)
            if val:
                s = 1 if (sign == 1 or m % 2 == 0) else -1
                total = poly_add(total, poly_shift(val, k * m, s))
            m += 1
            cur = tuple(x - y for x, y in zip(cur, g))
        with self._lock:
            self._memo[key] = total
        return total

    def p_coords(self, nu):
        """``P`` at a vector given in lattice coordinates."""
        nu = tuple(int(x) for x in nu)
        if any(x < 0 for x in nu):
            return ()
        return self._f(len(self._factors) - 1, nu)

    def p_q(self, lam):
        """``P(lam, q)`` as a coefficient tuple in ``q``."""
        lam = vec(lam)
        hit = self._p_cache.get(lam)
        if hit is not None:
            return hit
        c = self.rel.lattice_int_coords(lam)
        out = () if c is None else self.p_coords(c)
        with self._lock:
            self._p_cache[lam] = out
        return out

    def clear(self):
        with self._lock:
            self._memo.clear()
            self._p_cache.clear()


def engine(rel):
    eng = getattr(rel, "_kostant_engine", None)
    if eng is None:
        eng = KostantEngine(rel)
        rel._kostant_engine = eng
    return eng


def d_beta(rel, beta):
    """The factor ``d_beta`` as a list of ``(sign, q_power, gamma)`` triples,
    meaning ``prod (1 - sign q^k e^gamma)``."""
    beta = vec(beta)
    if beta not in rel.b_of:
        raise ValueError("beta is not an indivisible positive relative coroot")
    b = rel.b_of[beta]
    if rel.type_of[beta] == "I":
        return [(1, b, beta)]
    half = tuple(x / 2 for x in beta)
    return [(1, 2 * b, half), (-1, b, half)]


def p_q(rel, lam):
    return engine(rel).p_q(lam)


def p_poly(rel, lam):
    """``P(lam, q)`` as a ``QPolynomial``."""
    return QPolynomial.from_q_poly(p_q(rel, lam))


# ---------------------------------------------------------------------------
# explicit Kostant partitions
# ---------------------------------------------------------------------------

def kostant_partitions(rel, lam, L=None):
    """Stream of Kostant partitions of ``lam`` into positive relative
    coroots, optionally only those with ``|m| = L``."""
    engine(rel)
    lam = vec(lam)
    coords = rel.lattice_int_coords(lam)
    if coords is None or any(x < 0 for x in coords):
        return
    betas = list(rel.F_coroots_pos)
    bc = [rel.lattice_int_coords(b) for b in betas]
    bw = [rel.F_b[b] for b in betas]
    n = len(betas)
    m = [0] * n

    def rec(j, rem, size):
        if L is not None and size > L:
            return
        if j < 0:
            if all(x == 0 for x in rem) and (L is None or size == L):
                yield KostantPartition({betas[i]: m[i] for i in range(n)}, rel)
            return
        g = bc[j]
        k = 0
        cur = rem
        while all(x >= 0 for x in cur):
            m[j] = k
            yield from rec(j - 1, cur, size + k * bw[j])
            k += 1
            cur = tuple(x - y for x, y in zip(cur, g))
        m[j] = 0

    yield from rec(n - 1, coords, 0)


def kostant_count(rel, lam, L=None):
    return sum(1 for _ in kostant_partitions(rel, lam, L))


def p_kos(rel, lam):
    """``sum_m q^{|m|}`` over Kostant partitions, as a coefficient tuple."""
    out = {}
    for part in kostant_partitions(rel, lam):
        out[part.size] = out.get(part.size, 0) + 1
    if not out:
        return ()
    top = max(out)
    return tuple(out.get(i, 0) for i in range(top + 1))


# ---------------------------------------------------------------------------
# numeric evaluation on a box, modulo primes
# ---------------------------------------------------------------------------

class BoxEvaluator:
    """Values of ``P(nu, 1/q)`` for every ``nu`` in a coordinate box, exactly.

    For each prime ``p`` the scaled integers ``G(nu) = q^{B ht(nu)} P(nu, 1/q)``
    are computed modulo ``p`` on the whole box
    ``0 <= nu <= top`` by applying each geometric factor through the binary
    expansion ``(1 - c x)^{-1} = prod_t (1 + c^{2^t} x^{2^t})``, which is a
    handful of shifted vector additions.  Linear combinations requested through
    ``add_query`` are reduced modulo each prime and recombined by the Chinese
    remainder theorem against an explicit size bound.
    """

    def __init__(self, rel, top, q):
        self.rel = rel
        self.top = tuple(int(x) for x in top)
        self.q = int(q)
        facs = []
        B = 0
        for gamma, k, sign in rel.factors:
            c = rel.lattice_int_coords(gamma)
            h = sum(c)
            facs.append((c, k, sign, h))
            B = max(B, -(-k // h))
        self.B = B
        self.facs = facs
        self.queries = []

    def add_query(self, terms, height, bound):
        """Register ``sum coeff * q^{B (height - ht nu)} G(nu)`` over
        ``terms = [(nu, coeff), ...]``; ``bound`` bounds its absolute value."""
        idx = len(self.queries)
        self.queries.append((terms, height, bound))
        return idx

    def _box_mod(self, p):
        shape = tuple(t + 1 for t in self.top)
        arr = np.zeros(shape, dtype=np.int64)
        arr[(0,) * len(shape)] = 1
        q = self.q
        for c, k, sign, h in self.facs:
            coef = pow(q, self.B * h - k, p)
            if sign == -1:
                coef = (-coef) % p
            g = list(c)
            while all(gi <= ti for gi, ti in zip(g, self.top)):
                dst = tuple(slice(gi, None) for gi in g)
                src = tuple(slice(0, s - gi) for gi, s in zip(g, shape))
                arr[dst] = (arr[dst] + coef * arr[src]) % p
                coef = coef * coef % p
                g = [2 * gi for gi in g]
        return arr

    def evaluate(self):
        """Exact values ``sum coeff * q^{B (height - ht nu)} G(nu)`` of all
        queries, as integers."""
        need = max((q[2] for q in self.queries), default=1)
        primes = []
        prod = 1
        p = 2 ** 31
        while prod <= 2 * need:
            p = prevprime(p)
            primes.append(p)
            prod *= p
        residues = [[] for _ in self.queries]
        for p in primes:
            arr = self._box_mod(p)
            for qi, (terms, height, _) in enumerate(self.queries):
                if not terms:
                    residues[qi].append(0)
                    continue
                nus = np.array([t[0] for t in terms], dtype=np.int64)
                coeffs = np.array([t[1] % p for t in terms], dtype=np.int64)
                hts = nus.sum(axis=1)
                vals = arr[tuple(nus.T)]
                pw = np.array([pow(self.q, self.B * (height - int(h)), p) for h in hts],
                              dtype=np.int64)
                acc = 0
                for a, b, c in zip(vals.tolist(), coeffs.tolist(), pw.tolist()):
                    acc = (acc + a * b % p * c) % p
                residues[qi].append(acc)
            del arr
        out = []
        for res in residues:
            x, m = crt(primes, res)
            x = int(x)
            if x > m // 2:
                x -= int(m)
            out.append(x)
        return out

    def growth_bound(self, height):
        """A crude bound for ``|G(nu)|`` with ``ht(nu) <= height``: at most
        ``q^{B height}`` times the number of factor-partitions."""
        n = len(self.facs)
        return self.q ** (self.B * height) * comb(height + n, n)
