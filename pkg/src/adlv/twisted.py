"""
The relative (folded) root datum attached to a pinned automorphism ``theta``.

Everything is kept in the ambient coordinates of the absolute datum: the
cocharacters ``Y* = X_*(T)^theta`` and the characters ``X*(S^)`` of the
relative dual torus both sit inside the ``theta``-fixed subspace, and an
element of ``X*(S^)`` is stored as the ``theta``-average of any lift.

For a relative root ``a`` (the average of an absolute root) the relative
coroot is ``a^vee = 2a/(a, a)``.  A root ``a`` is of type II when ``2a`` is a
relative root as well; ``b(a^vee)`` is the size of the ``theta``-orbit for type
I and half of it for type II.
"""

from fractions import Fraction
from functools import cached_property

import numpy as np

from .root_data import (
    LinearCoordinates, add, dot, fmt_vec, identity, is_zero, mat_mul, mat_vec,
    scale, sub, vec, _vsum,
)

__all__ = ["RelativeDatum", "restrict", "WeylElement"]


class WeylElement:
    """An element of ``W^1`` stored as an integer matrix acting on the
    coordinates of the relative coroot lattice, with its length."""

    __slots__ = ("word", "matrix", "length")

    def __init__(self, word, matrix):
        self.word = tuple(word)
        self.matrix = matrix
        self.length = len(word)

    @property
    def sign(self):
        return -1 if self.length % 2 else 1

    def __repr__(self):
        return "WeylElement(%s)" % (list(self.word),)


class RelativeDatum:
    """Relative root datum of ``(datum, theta)``.

    Attributes
    ----------
    rel_simple : list of relative simple roots ``a_i`` of ``G`` (averages of
        the absolute simple roots over ``theta``-orbits).
    F_coroots_pos : positive relative coroots, including divisible ones.
    Phi1_coroots_pos : coroots of the indivisible positive relative roots.
    b_of, type_of : dictionaries keyed by elements of ``Phi1_coroots_pos``.
    factors : the one-variable geometric factors ``(gamma, k, sign)`` with
        ``prod_beta d_beta^{-1} = prod (1 - sign q^k e^gamma)^{-1}``.
    """

    def __init__(self, datum):
        self.datum = datum
        self.d = datum.theta_order
        self.dim = datum.dim
        acc = identity(self.dim)
        power = identity(self.dim)
        total = [list(r) for r in acc]
        for _ in range(1, self.d):
            power = mat_mul(datum.theta, power)
            total = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(total, power)]
        self.P = tuple(tuple(x / self.d for x in row) for row in total)
        self._build_roots()
        self._build_lattices()

    # -- construction --------------------------------------------------------

    def average(self, x):
        return mat_vec(self.P, vec(x))

    def _build_roots(self):
        datum = self.datum
        fibres = {}
        for r in datum.positive_roots:
            a = self.average(r)
            assert not is_zero(a)
            fibres.setdefault(a, []).append(r)
        for a, rs in fibres.items():
            orbit = {rs[0]}
            x = rs[0]
            for _ in range(self.d):
                x = datum.apply_theta(x)
                orbit.add(x)
            assert orbit == set(rs), "fibre of restriction is not a single orbit"
        self.rel_roots_pos = sorted(fibres, key=lambda a: (sum(datum.root_coords(a)), a))
        rel_set = set(self.rel_roots_pos)
        self.orbit_size = {a: len(fibres[a]) for a in self.rel_roots_pos}
        indiv = [a for a in self.rel_roots_pos if scale(Fraction(1, 2), a) not in rel_set]
        self.Phi1_pos = indiv
        self.type_of_root = {a: ("II" if scale(2, a) in rel_set else "I") for a in indiv}
        cor = datum.coroot
        self.F_coroots_pos = [cor(a) for a in self.rel_roots_pos]
        self.Phi1_coroots_pos = [cor(a) for a in indiv]
        self.b_of = {}
        self.type_of = {}
        for a in indiv:
            beta = cor(a)
            t = self.type_of_root[a]
            self.type_of[beta] = t
            n = self.orbit_size[a]
            self.b_of[beta] = n if t == "I" else n // 2
            assert self.b_of[beta] >= 1
        # relative simple roots: one per theta-orbit of absolute simple roots
        seen = set()
        self.orbits = []
        perm = datum.theta_perm
        for i in range(datum.rank):
            if i in seen:
                continue
            orb = [i]
            j = perm[i]
            while j != i:
                orb.append(j)
                j = perm[j]
            seen.update(orb)
            self.orbits.append(orb)
        self.rel_simple = [self.average(datum.simple_roots[o[0]]) for o in self.orbits]
        self.rel_simple_coroots = [cor(a) for a in self.rel_simple]
        self.rank = len(self.rel_simple)
        # generators of the lattice spanned by F_coroots
        self.lattice_basis = []
        for a in self.rel_simple:
            if self.type_of_root[a] == "II":
                self.lattice_basis.append(cor(scale(2, a)))
            else:
                self.lattice_basis.append(cor(a))
        self._lat = LinearCoordinates(self.lattice_basis)
        for g in self.F_coroots_pos:
            c = self._lat.coords(g)
            assert c is not None and all(x >= 0 and x.denominator == 1 for x in c)
        # factors of the deformed denominator
        self.factors = []
        for beta in self.Phi1_coroots_pos:
            b = self.b_of[beta]
            if self.type_of[beta] == "I":
                self.factors.append((beta, b, 1))
            else:
                g = scale(Fraction(1, 2), beta)
                self.factors.append((g, 2 * b, 1))
                self.factors.append((g, b, -1))
        assert self.rho_check == scale(Fraction(1, 2), _vsum(self.Phi1_coroots_pos, self.dim))

    def _build_lattices(self):
        datum = self.datum
        # X*(S^): averages of fundamental coweights, one per orbit
        self.S_basis = [self.average(datum.fundamental_coweights[o[0]]) for o in self.orbits]
        self._S = LinearCoordinates(self.S_basis)
        # Y* = X_*(T)^theta: orbit sums of fundamental coweights
        self.Y_basis = [_vsum([datum.fundamental_coweights[j] for j in o], self.dim)
                        for o in self.orbits]
        self._Y = LinearCoordinates(self.Y_basis)
        # relative simple roots of the dual group inside X*(S^)
        self.rel_simple_dual = [self.average(datum.simple_coroots[o[0]]) for o in self.orbits]
        self._Qhat = LinearCoordinates(self.rel_simple_dual)

    # -- basic queries ---------------------------------------------------------

    @cached_property
    def rho_check(self):
        return self.datum.rho_check

    @property
    def is_split(self):
        return self.d == 1

    def pair(self, x, y):
        return dot(x, y)

    def is_dominant(self, x):
        return all(dot(x, a) >= 0 for a in self.rel_simple)

    def lattice_coords(self, x):
        """Coordinates in ``lattice_basis`` (``None`` off its span)."""
        return self._lat.coords(vec(x))

    def lattice_int_coords(self, x):
        c = self.lattice_coords(x)
        if c is None or any(ci.denominator != 1 for ci in c):
            return None
        return tuple(int(ci) for ci in c)

    def in_R_plus(self, x):
        """Non-negative integer combination of positive relative coroots."""
        c = self.lattice_int_coords(x)
        return c is not None and all(ci >= 0 for ci in c)

    def in_cone(self, x):
        """Non-negative rational combination of positive relative coroots."""
        c = self.lattice_coords(x)
        return c is not None and all(ci >= 0 for ci in c)

    def height(self, x):
        return sum(self.lattice_int_coords(x))

    def in_Y(self, x):
        c = self._Y.coords(vec(x))
        return c is not None and all(ci.denominator == 1 for ci in c)

    def in_S(self, x):
        c = self._S.coords(vec(x))
        return c is not None and all(ci.denominator == 1 for ci in c)

    def S_coords(self, x):
        return self._S.coords(vec(x))

    def in_Qhat(self, x):
        c = self._Qhat.coords(vec(x))
        return c is not None and all(ci.denominator == 1 for ci in c)

    def Qhat_coords(self, x):
        return self._Qhat.coords(vec(x))

    def restrict_weight(self, lam):
        """The image of ``lam`` in ``X*(S^)`` (stored as its average)."""
        return self.average(lam)

    # -- display helpers ---------------------------------------------------

    @cached_property
    def _drop_last(self):
        """For the diagonal ``D_n`` twist the fixed space is the first ``n-1``
        coordinates; display drops the last one."""
        dat = self.datum
        return dat.family == "D" and self.d == 2

    def to_display(self, x):
        x = vec(x)
        if self._drop_last:
            assert x[-1] == 0
            return x[:-1]
        return x

    def from_display(self, x):
        x = vec(x)
        if self._drop_last and len(x) == self.dim - 1:
            return x + (Fraction(0),)
        if len(x) != self.dim:
            raise ValueError("expected %d coordinates, got %d" % (self.dim, len(x)))
        return x

    # -- the Weyl group W^1 ------------------------------------------------

    def reflect(self, i, x):
        a = self.rel_simple[i]
        c = dot(x, a)
        if c == 0:
            return x
        return sub(x, scale(c, self.rel_simple_coroots[i]))

    def act(self, word, x):
        """Apply a word (applied right to left, as a product) to ``x``."""
        for i in reversed(word):
            x = self.reflect(i, x)
        return x

    def dot_action(self, word, mu):
        """``w . mu = w(mu + rho^vee) - rho^vee``."""
        r = self.rho_check
        return sub(self.act(word, add(vec(mu), r)), r)

    def to_dominant(self, x):
        """``(x_plus, word)`` with ``act(word, x) == x_plus`` dominant."""
        x = vec(x)
        word = []
        while True:
            for i, a in enumerate(self.rel_simple):
                if dot(x, a) < 0:
                    x = self.reflect(i, x)
                    word.insert(0, i)
                    break
            else:
                return x, word

    def dominant_rep(self, x):
        return self.to_dominant(x)[0]

    def is_dot_singular(self, mu):
        y = add(vec(mu), self.rho_check)
        return any(dot(y, a) == 0 for a in self.Phi1_pos)

    def e_classify(self, mu):
        """Return ``(True, None)`` when some reflection dot-fixes ``mu`` and
        ``(False, w)`` with ``w . mu`` dominant otherwise."""
        if self.is_dot_singular(mu):
            return True, None
        _, word = self.to_dominant(add(vec(mu), self.rho_check))
        return False, word

    def w1_cosets(self, mu):
        """Minimal-length representatives of ``W^1 / W^1_mu`` as
        ``(w mu, word)`` pairs, ``mu`` dominant."""
        mu = vec(mu)
        if not self.is_dominant(mu):
            raise ValueError("mu is not dominant")
        reps = {mu: ()}
        frontier = [mu]
        while frontier:
            nxt = []
            for x in frontier:
                for i, a in enumerate(self.rel_simple):
                    if dot(x, a) > 0:
                        y = self.reflect(i, x)
                        if y not in reps:
                            reps[y] = (i,) + reps[x]
                            nxt.append(y)
            frontier = nxt
        return list(reps.items())

    def orbit(self, x):
        return [y for y, _ in self.w1_cosets(self.dominant_rep(x))]

    @cached_property
    def reflection_matrices(self):
        """Simple reflections as integer matrices on ``lattice_basis``
        coordinates (column convention)."""
        mats = []
        for i in range(self.rank):
            cols = [self.lattice_int_coords(self.reflect(i, g)) for g in self.lattice_basis]
            mats.append(np.array(cols, dtype=np.int64).T)
        return mats

    def elements(self, limit=200000):
        """All elements of ``W^1``, generated breadth first; the recorded
        word is reduced and its length is ``l_1``."""
        key = lambda m: m.tobytes()
        ident = np.eye(self.rank, dtype=np.int64)
        seen = {key(ident): WeylElement((), ident)}
        frontier = [seen[key(ident)]]
        while frontier:
            nxt = []
            for w in frontier:
                for i, s in enumerate(self.reflection_matrices):
                    m = s @ w.matrix
                    k = key(m)
                    if k not in seen:
                        e = WeylElement((i,) + w.word, m)
                        seen[k] = e
                        nxt.append(e)
                        if len(seen) > limit:
                            raise MemoryError("W^1 larger than %d" % limit)
            frontier = nxt
        return list(seen.values())

    @cached_property
    def weyl_elements(self):
        return self.elements()

    def length1(self, word):
        """``l_1(w)``: the number of positive indivisible coroots sent to
        negatives."""
        count = 0
        for beta in self.Phi1_coroots_pos:
            y = self.act(word, beta)
            c = self.lattice_coords(y)
            if all(ci <= 0 for ci in c):
                count += 1
        return count

    # -- X*(S^) and the map lambda -> lambda^(s) ----------------------------

    def lambda_power_s(self, lam, s):
        """``lam^(s) = s * lam^(1)``, defined for ``d | s``."""
        if s <= 0 or s % self.d:
            raise ValueError("s must be a positive multiple of %d" % self.d)
        return scale(s, vec(lam))

    def to_json(self):
        return {
            "type": self.datum.name,
            "relative_rank": self.rank,
            "relative_simple_roots": [fmt_vec(self.to_display(a)) for a in self.rel_simple],
            "relative_simple_roots_dual": [fmt_vec(self.to_display(a)) for a in self.rel_simple_dual],
            "F_coroots_pos": [fmt_vec(self.to_display(b)) for b in self.F_coroots_pos],
            "Phi1_coroots_pos": [
                {"beta": fmt_vec(self.to_display(b)), "b": self.b_of[b], "type": self.type_of[b]}
                for b in self.Phi1_coroots_pos],
            "rho_check": fmt_vec(self.to_display(self.rho_check)),
        }


def restrict(datum):
    return RelativeDatum(datum)
