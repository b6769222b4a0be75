"""
Based root data for the simple types A, B, C, D, E6 and E7 in explicit
coordinates, with exact rational arithmetic throughout.

Conventions
-----------
Vectors are tuples of ``Fraction``.  The ambient space carries the standard
inner product, so roots, coroots, weights and coweights all live in the same
space and ``alpha^vee = 2 alpha / (alpha, alpha)``.

Cocharacters of ``G`` (equivalently characters of the dual group) are the
primary objects.  A cocharacter ``lam`` is dominant when ``<lam, alpha_i> >= 0``
for every simple root ``alpha_i`` of ``G``, and ``lam <= mu`` when ``mu - lam``
is a non-negative rational combination of positive coroots.

Coordinates:

* ``A1`` is one dimensional with ``alpha = 1`` and ``alpha^vee = 2``; for
  ``n >= 2`` the type ``A_n`` lives in ``R^{n+1}`` with ``alpha_i = e_i - e_{i+1}``.
* ``B_n``, ``C_n``, ``D_n`` follow Bourbaki in ``R^n``.
* ``E6`` lives in ``R^9 = R^3 + R^3 + R^3`` and ``E7`` in ``R^8``.

A twist suffix ``:2`` or ``:3`` attaches a pinned automorphism ``theta``.
"""

import re
from fractions import Fraction
from functools import cached_property
from itertools import permutations, product

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

__all__ = [
    "vec", "add", "sub", "scale", "dot", "neg", "is_zero", "fmt_vec",
    "parse_vec", "solve_rational", "LinearCoordinates", "RootDatum",
    "build_root_datum", "weyl_orbit", "dominant_rep", "dominance_leq",
    "FundamentalGroup", "fundamental_group", "reflect",
]

ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# exact vector helpers
# ---------------------------------------------------------------------------

def vec(xs):
    return tuple(Fraction(x) for x in xs)


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a):
    return tuple(c * x for x in a)


def neg(a):
    return tuple(-x for x in a)


def dot(a, b):
    return sum((x * y for x, y in zip(a, b)), ZERO)


def is_zero(a):
    return all(x == 0 for x in a)


def reflect(x, alpha, alpha_check):
    """Reflection ``x - <x, alpha> alpha_check``."""
    c = dot(x, alpha)
    if c == 0:
        return x
    return tuple(xi - c * ai for xi, ai in zip(x, alpha_check))


def fmt_frac(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def fmt_vec(v):
    return [fmt_frac(x) for x in v]


def parse_vec(text):
    """Parse ``"1/2,-1/2,0"`` into a vector of fractions."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(Fraction(t.strip()) for t in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise ValueError("malformed vector %r" % text)


def mat_vec(m, x):
    return tuple(dot(row, x) for row in m)


def mat_mul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_inverse(m):
    """Gauss-Jordan inverse of a square matrix over the rationals."""
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def solve_rational(rows, x):
    """Coefficients ``c`` with ``sum c_i rows[i] == x``, or ``None``."""
    return LinearCoordinates(rows).coords(x)


class LinearCoordinates:
    """Coordinates with respect to a linearly independent family of vectors.

    A set of pivot coordinates is chosen once so that each query is a single
    matrix-vector product followed by an exact membership check.
    """

    def __init__(self, basis):
        self.basis = [tuple(b) for b in basis]
        k = len(self.basis)
        dim = len(self.basis[0]) if k else 0
        # row-reduce the transpose to find k independent coordinates
        pivots = []
        work = [list(col) for col in zip(*self.basis)] if k else []
        rows = []
        for i in range(dim):
            cand = list(work[i])
            for r, p in rows:
                if cand[p] != 0:
                    f = cand[p] / r[p]
                    cand = [x - f * y for x, y in zip(cand, r)]
            nz = next((j for j, x in enumerate(cand) if x != 0), None)
            if nz is not None:
                rows.append((cand, nz))
                pivots.append(i)
            if len(pivots) == k:
                break
        if len(pivots) != k:
            raise ValueError("basis vectors are linearly dependent")
        self.pivots = pivots
        sub_m = tuple(tuple(b[i] for b in self.basis) for i in pivots)
        self._inv = mat_inverse(sub_m)

    def coords(self, x):
        y = tuple(x[i] for i in self.pivots)
        c = mat_vec(self._inv, y)
        recon = [ZERO] * len(x)
        for ci, b in zip(c, self.basis):
            if ci:
                for j, bj in enumerate(b):
                    recon[j] += ci * bj
        if tuple(recon) != tuple(x):
            return None
        return c


# ---------------------------------------------------------------------------
# the datum
# ---------------------------------------------------------------------------

_SPEC_RE = re.compile(r"^([ABCDE])(\d+)(?::(\d+))?$")


class RootDatum:
    """A based root datum of adjoint type together with a pinned automorphism.

    ``simple_roots`` are the simple roots of ``G``; the cocharacter lattice is
    the coweight lattice (adjoint group), the coroot lattice is spanned by the
    simple coroots.
    """

    def __init__(self, family, rank, simple_roots, theta=None, theta_order=1,
                 name=None, lattice_denominator=1):
        self.family = family
        self.rank = rank
        self.simple_roots = [vec(a) for a in simple_roots]
        self.dim = len(self.simple_roots[0])
        self.simple_coroots = [self.coroot(a) for a in self.simple_roots]
        self.theta_order = theta_order
        self.theta = theta if theta is not None else identity(self.dim)
        self.name = name or ("%s%d" % (family, rank))
        self.lattice_denominator = lattice_denominator
        self._root_coords = LinearCoordinates(self.simple_roots)
        self._coroot_coords = LinearCoordinates(self.simple_coroots)
        self._build_positive_roots()
        self._check()

    # -- basic constructions -------------------------------------------------

    @staticmethod
    def coroot(alpha):
        return scale(Fraction(2) / dot(alpha, alpha), alpha)

    def pair(self, x, y):
        return dot(x, y)

    def _build_positive_roots(self):
        seen = set(self.simple_roots)
        frontier = list(self.simple_roots)
        while frontier:
            nxt = []
            for r in frontier:
                for a, ac in zip(self.simple_roots, self.simple_coroots):
                    s = reflect(r, a, ac)
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        pos = []
        for r in seen:
            c = self._root_coords.coords(r)
            if all(x >= 0 for x in c):
                pos.append((sum(c), tuple(c), r))
        pos.sort()
        self.positive_roots = [r for _, _, r in pos]
        self.positive_coroots = [self.coroot(r) for r in self.positive_roots]
        self.roots = self.positive_roots + [neg(r) for r in self.positive_roots]

    def _check(self):
        n = len(self.simple_roots)
        for i in range(n):
            for j in range(n):
                v = dot(self.fundamental_coweights[i], self.simple_roots[j])
                assert v == int(i == j)
                v = dot(self.simple_coroots[i], self.fundamental_weights[j])
                assert v == int(i == j)
        t = self.theta
        power = identity(self.dim)
        for _ in range(self.theta_order):
            power = mat_mul(t, power)
        assert power == identity(self.dim), "theta has the wrong order"
        for a in self.simple_roots:
            assert mat_vec(t, a) in self.simple_roots, "theta does not permute simple roots"
        tt = tuple(zip(*t))
        assert mat_mul(tt, t) == identity(self.dim), "theta is not orthogonal"

    # -- derived data ------------------------------------------------------

    @cached_property
    def cartan_matrix(self):
        """``A[i][j] = <alpha_j^vee, alpha_i>``."""
        return [[int(dot(cj, ai)) for cj in self.simple_coroots] for ai in self.simple_roots]

    @cached_property
    def fundamental_coweights(self):
        """Dual basis to the simple roots, inside the span of the roots."""
        gram = tuple(tuple(dot(a, b) for b in self.simple_roots) for a in self.simple_roots)
        inv = mat_inverse(gram)
        out = []
        for i in range(len(self.simple_roots)):
            v = [ZERO] * self.dim
            for k, a in enumerate(self.simple_roots):
                v = [x + inv[i][k] * y for x, y in zip(v, a)]
            out.append(tuple(v))
        return out

    @cached_property
    def fundamental_weights(self):
        """Dual basis to the simple coroots."""
        gram = tuple(tuple(dot(a, b) for b in self.simple_coroots) for a in self.simple_coroots)
        inv = mat_inverse(gram)
        out = []
        for i in range(len(self.simple_coroots)):
            v = [ZERO] * self.dim
            for k, a in enumerate(self.simple_coroots):
                v = [x + inv[i][k] * y for x, y in zip(v, a)]
            out.append(tuple(v))
        return out

    @cached_property
    def rho(self):
        """Half the sum of the positive roots of ``G``."""
        return scale(Fraction(1, 2), _vsum(self.positive_roots, self.dim))

    @cached_property
    def rho_check(self):
        """Half the sum of the positive coroots."""
        return scale(Fraction(1, 2), _vsum(self.positive_coroots, self.dim))

    @cached_property
    def two_rho(self):
        return _vsum(self.positive_roots, self.dim)

    @cached_property
    def highest_root(self):
        return max(self.positive_roots, key=lambda r: sum(self.root_coords(r)))

    @cached_property
    def highest_root_coefficients(self):
        return [int(c) for c in self.root_coords(self.highest_root)]

    @cached_property
    def coxeter_number(self):
        return sum(self.highest_root_coefficients) + 1

    @cached_property
    def theta_perm(self):
        """``theta(alpha_i) = alpha_{perm[i]}``."""
        return [self.simple_roots.index(mat_vec(self.theta, a)) for a in self.simple_roots]

    def apply_theta(self, x, times=1):
        for _ in range(times % self.theta_order):
            x = mat_vec(self.theta, x)
        return x

    def root_coords(self, x):
        c = self._root_coords.coords(x)
        if c is None:
            raise ValueError("vector not in the span of the roots")
        return c

    def coroot_coords(self, x):
        """Coordinates in the simple coroots; ``None`` off their span."""
        return self._coroot_coords.coords(x)

    def coweight_coords(self, x):
        """``(<x, alpha_i>)_i``."""
        return tuple(dot(x, a) for a in self.simple_roots)

    def from_coweight_coords(self, c):
        v = [ZERO] * self.dim
        for ci, w in zip(c, self.fundamental_coweights):
            if ci:
                v = [x + ci * y for x, y in zip(v, w)]
        return tuple(v)

    def in_root_span(self, x):
        return self._root_coords.coords(x) is not None

    def is_coweight(self, x):
        return self.in_root_span(x) and all(
            Fraction(c).denominator == 1 for c in self.coweight_coords(x))

    def is_coroot_lattice(self, x):
        c = self.coroot_coords(x)
        return c is not None and all(ci.denominator == 1 for ci in c)

    def is_dominant(self, x):
        return all(dot(x, a) >= 0 for a in self.simple_roots)

    def simple_reflection(self, i, x):
        return reflect(x, self.simple_roots[i], self.simple_coroots[i])

    @cached_property
    def weyl_group_order(self):
        return _parabolic_order(self, tuple(range(self.rank)))

    @cached_property
    def longest_length(self):
        """``l(w_0)``, found by sorting ``-rho^vee`` into the dominant chamber."""
        _, word = dominant_rep(self, neg(self.rho_check), return_word=True)
        return len(word)

    def to_json(self):
        return {
            "type": self.name,
            "ambient_dim": self.dim,
            "simple_roots": [fmt_vec(a) for a in self.simple_roots],
            "simple_coroots": [fmt_vec(a) for a in self.simple_coroots],
            "fundamental_weights": [fmt_vec(a) for a in self.fundamental_weights],
            "fundamental_coweights": [fmt_vec(a) for a in self.fundamental_coweights],
            "coroot_lattice": [fmt_vec(a) for a in self.simple_coroots],
            "coweight_lattice": [fmt_vec(a) for a in self.fundamental_coweights],
            "theta_order": self.theta_order,
            "theta_permutation": [i + 1 for i in self.theta_perm],
            "positive_roots": len(self.positive_roots),
        }

    def __repr__(self):
        return "RootDatum(%s)" % self.name


def _vsum(vs, dim):
    out = [ZERO] * dim
    for v in vs:
        for i, x in enumerate(v):
            out[i] += x
    return tuple(out)


def _parabolic_order(datum, J):
    """Order of the parabolic subgroup generated by ``s_j, j in J``.

    Uses ``|W_J| = |W_J . w| * |W_{J - j}|`` for a fundamental coweight ``w``
    whose stabiliser in ``W_J`` is ``W_{J - j}``.
    """
    if not J:
        return 1
    j = J[-1]
    rest = J[:-1]
    start = datum.fundamental_coweights[j]
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for i in J:
                y = datum.simple_reflection(i, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen) * _parabolic_order(datum, rest)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _e(n, i, c=1):
    v = [0] * n
    v[i] = c
    return v


def _type_a(n):
    if n == 1:
        return [[1]]
    return [[1 if k == i else -1 if k == i + 1 else 0 for k in range(n + 1)] for i in range(n)]


def _type_b(n):
    roots = [[1 if k == i else -1 if k == i + 1 else 0 for k in range(n)] for i in range(n - 1)]
    roots.append(_e(n, n - 1))
    return roots


def _type_c(n):
    roots = [[1 if k == i else -1 if k == i + 1 else 0 for k in range(n)] for i in range(n - 1)]
    roots.append(_e(n, n - 1, 2))
    return roots


def _type_d(n):
    roots = [[1 if k == i else -1 if k == i + 1 else 0 for k in range(n)] for i in range(n - 1)]
    last = [0] * n
    last[n - 2] = 1
    last[n - 1] = 1
    roots.append(last)
    return roots


def _type_e6():
    F = Fraction
    t = F(1, 3)
    return [
        [0, 0, 0, 0, 1, -1, 0, 0, 0],
        [0, 0, 0, 1, -1, 0, 0, 0, 0],
        [t, -2 * t, t, -2 * t, t, t, -2 * t, t, t],
        [0, 1, -1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, -1, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, -1],
    ]


def _type_e7():
    h = Fraction(1, 2)
    return [
        [0, 0, 0, 0, 0, 0, -1, 1],
        [0, 0, 0, 0, 0, -1, 1, 0],
        [0, 0, 0, 0, -1, 1, 0, 0],
        [0, 0, 0, -1, 1, 0, 0, 0],
        [h, h, h, h, -h, -h, -h, -h],
        [0, 0, -1, 1, 0, 0, 0, 0],
        [0, -1, 1, 0, 0, 0, 0, 0],
    ]


def _perm_matrix(perm):
    """Matrix sending ``e_j`` to ``e_{perm[j]}``."""
    n = len(perm)
    m = [[Fraction(0)] * n for _ in range(n)]
    for j, pj in enumerate(perm):
        m[pj][j] = Fraction(1)
    return tuple(tuple(r) for r in m)


def _signed_diag(signs):
    n = len(signs)
    return tuple(tuple(Fraction(signs[i]) if i == j else Fraction(0) for j in range(n))
                 for i in range(n))


def _matrix_from_root_permutation(simple, perm):
    """The linear map with ``alpha_i -> alpha_{perm[i]}`` on a full-rank basis."""
    n = len(simple)
    src = tuple(tuple(Fraction(simple[j][i]) for j in range(n)) for i in range(n))
    dst = tuple(tuple(Fraction(simple[perm[j]][i]) for j in range(n)) for i in range(n))
    return mat_mul(dst, mat_inverse(src))


def build_root_datum(spec):
    """Build the datum named by a group-spec string such as ``"D5:2"``."""
    m = _SPEC_RE.match(spec.strip())
    if not m:
        raise ValueError("unknown group spec %r" % spec)
    fam, n, tw = m.group(1), int(m.group(2)), m.group(3)
    order = int(tw) if tw else 1
    if order not in (1, 2, 3):
        raise ValueError("unsupported twist order %d" % order)
    theta = None
    den = 1
    if fam == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        simple = _type_a(n)
        if order == 3:
            raise ValueError("order-3 twist only exists for D4")
        if order == 2:
            if n < 2:
                raise ValueError("A1 has no diagram automorphism")
            # x -> -reverse(x)
            d = n + 1
            theta = tuple(tuple(Fraction(-1) if i == d - 1 - j else Fraction(0)
                                for j in range(d)) for i in range(d))
        den = n + 1
    elif fam == "B":
        if n < 2:
            raise ValueError("B_n needs n >= 2")
        if order != 1:
            raise ValueError("type B has no diagram automorphism")
        simple = _type_b(n)
    elif fam == "C":
        if n < 2:
            raise ValueError("C_n needs n >= 2")
        if order != 1:
            raise ValueError("type C has no diagram automorphism")
        simple = _type_c(n)
        den = 2
    elif fam == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        simple = _type_d(n)
        den = 2
        if order == 2:
            theta = _signed_diag([1] * (n - 1) + [-1])
        elif order == 3:
            if n != 4:
                raise ValueError("order-3 twist only exists for D4")
            theta = _matrix_from_root_permutation(simple, [2, 1, 3, 0])
    elif fam == "E":
        if n == 6:
            simple = _type_e6()
            den = 3
            if order == 3:
                raise ValueError("order-3 twist only exists for D4")
            if order == 2:
                theta = _perm_matrix([0, 1, 2, 6, 7, 8, 3, 4, 5])
        elif n == 7:
            simple = _type_e7()
            den = 4
            if order != 1:
                raise ValueError("E7 has no diagram automorphism")
        else:
            raise ValueError("only E6 and E7 are supported")
    return RootDatum(fam, n, simple, theta=theta, theta_order=order,
                     name=spec.strip(), lattice_denominator=den)


# ---------------------------------------------------------------------------
# Weyl group operations
# ---------------------------------------------------------------------------

def weyl_orbit(datum, lam, generators=None):
    """The orbit of ``lam`` under the group generated by simple reflections.

    ``generators`` restricts to a parabolic subgroup.
    """
    lam = vec(lam)
    gens = range(datum.rank) if generators is None else generators
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for x in frontier:
            for i in gens:
                y = datum.simple_reflection(i, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def dominant_rep(datum, lam, return_word=False):
    """Dominant conjugate of ``lam`` and the parity of the sorting word.

    Returns ``(lam_plus, parity)``, or ``(lam_plus, word)`` with the indices of
    the simple reflections applied, first to last.
    """
    x = vec(lam)
    word = []
    while True:
        for i, a in enumerate(datum.simple_roots):
            if dot(x, a) < 0:
                x = datum.simple_reflection(i, x)
                word.append(i)
                break
        else:
            break
    if return_word:
        return x, word
    return x, (-1) ** len(word)


def dominance_leq(datum, lam, mu):
    """``lam <= mu``: ``mu - lam`` is a non-negative rational combination of
    positive coroots.  Since the simple coroots form a basis of their span this
    is a triangular solve."""
    d = sub(vec(mu), vec(lam))
    c = datum.coroot_coords(d)
    return c is not None and all(x >= 0 for x in c)


# ---------------------------------------------------------------------------
# fundamental group
# ---------------------------------------------------------------------------

class FundamentalGroup:
    """``pi_1(G)``, the coweight lattice modulo the coroot lattice, with the
    action of ``theta`` and the coinvariant quotient ``pi_1(G)_theta``.

    Coweights are handled through ``c_i = <lam, alpha_i>``; the coroot lattice
    is then the column span of the Cartan matrix, and both quotients are read
    off Smith normal forms.
    """

    def __init__(self, datum):
        self.datum = datum
        r = datum.rank
        A = Matrix(datum.cartan_matrix)
        D, U, _ = smith_normal_decomp(A)
        self._U = U
        diag = [int(D[i, i]) for i in range(r)]
        self._slots = [i for i, d in enumerate(diag) if d != 1]
        self.invariant_factors = [diag[i] for i in self._slots]
        perm = datum.theta_perm
        # c_i(theta lam) = <lam, theta^{-1} alpha_i> = c_{perm^{-1}(i)}
        P = Matrix.zeros(r, r)
        for i in range(r):
            P[perm[i], i] = 1
        self._theta_coords = P
        rel = A.row_join(Matrix.eye(r) - P)
        D2, U2, _ = smith_normal_decomp(rel)
        diag2 = [int(D2[i, i]) for i in range(r)]
        self._U2 = U2
        self._slots2 = [i for i, d in enumerate(diag2) if d != 1]
        self.coinvariant_factors = [diag2[i] for i in self._slots2]
        if any(d == 0 for d in self.coinvariant_factors):
            raise ValueError("coinvariants are not finite")

    @property
    def order(self):
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def coinvariant_order(self):
        out = 1
        for d in self.coinvariant_factors:
            out *= d
        return out

    def _coords(self, lam):
        c = self.datum.coweight_coords(vec(lam))
        if not self.datum.in_root_span(vec(lam)) or any(x.denominator != 1 for x in c):
            raise ValueError("not in the coweight lattice: %s" % (fmt_vec(lam),))
        return Matrix([int(x) for x in c])

    def class_of(self, lam):
        u = self._U * self._coords(lam)
        return tuple(int(u[i]) % d for i, d in zip(self._slots, self.invariant_factors))

    def coinvariant_class_of(self, lam):
        u = self._U2 * self._coords(lam)
        return tuple(int(u[i]) % d for i, d in zip(self._slots2, self.coinvariant_factors))

    def elements(self):
        return list(product(*[range(d) for d in self.invariant_factors]))

    def coinvariant_elements(self):
        return list(product(*[range(d) for d in self.coinvariant_factors]))

    def representative(self, cls):
        """A coweight in the given class of ``pi_1(G)``."""
        r = self.datum.rank
        u = [0] * r
        for i, x in zip(self._slots, cls):
            u[i] = x
        c = self._U.inv() * Matrix(u)
        return self.datum.from_coweight_coords([Fraction(int(x)) for x in c])

    def coinvariant_representative(self, cls):
        r = self.datum.rank
        u = [0] * r
        for i, x in zip(self._slots2, cls):
            u[i] = x
        c = self._U2.inv() * Matrix(u)
        return self.datum.from_coweight_coords([Fraction(int(x)) for x in c])

    def theta_action(self, cls):
        lam = self.representative(cls)
        return self.class_of(self.datum.apply_theta(lam))

    def to_json(self):
        return {
            "invariant_factors": self.invariant_factors,
            "generators": [fmt_vec(self.representative(tuple(int(i == j) for j in range(len(self.invariant_factors)))))
                           for i in range(len(self.invariant_factors))],
            "theta_action": [list(self.theta_action(tuple(int(i == j) for j in range(len(self.invariant_factors)))))
                             for i in range(len(self.invariant_factors))],
            "coinvariant_factors": self.coinvariant_factors,
        }


def fundamental_group(datum):
    return FundamentalGroup(datum)
