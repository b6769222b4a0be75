"""
Basic sigma-conjugacy classes of an adjoint group: the invariant ``kappa``,
the weight ``lambda_b``, the defect, the Kottwitz sign and volumes of
standard parahoric subgroups of ``J_b``.

Basic classes are indexed by ``pi_1(G)_sigma``.  For each supported type the
non-trivial classes are numbered ``b_1, b_2, ...`` by a fixed coweight
representative, so that the numbering agrees with the usual case-by-case
tables for types ``B``, ``C``, ``D`` and ``E``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

import sympy

from .affine_weyl import (
    AffineElement, _barycenter, affine_simple_reflections, node_permutation,
    omega_elements,
)
from .root_data import (
    FundamentalGroup, add, dot, fmt_vec, mat_mul, scale, sub, vec,
)

__all__ = [
    "BasicClass", "basic_classes", "lambda_b", "defect", "kottwitz_sign",
    "in_B_G_mu", "parahoric_volume", "class_representative", "extended_dynkin",
    "lifts", "standard_parahorics", "volume_at_zero",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BasicClass:
    """A basic class, given by ``kappa`` in ``pi_1(G)_sigma``.

    ``nu_bar`` is central and vanishes for adjoint groups; ``s0`` is the order
    of ``kappa``, so that ``b sigma(b) ... sigma^{s-1}(b)`` is trivial for the
    length-zero representative whenever ``s0`` divides ``s``.
    """
    index: int
    kappa: tuple
    representative: tuple
    nu_bar: tuple
    s0: int = 1
    name: str = field(default="")

    @property
    def is_trivial(self):
        return all(k == 0 for k in self.kappa)

    def to_json(self):
        return {"index": self.index, "name": self.name, "kappa": list(self.kappa),
                "representative": fmt_vec(self.representative),
                "nu_bar": fmt_vec(self.nu_bar), "s0": self.s0}


def _e(n, i):
    return tuple(Fraction(int(j == i)) for j in range(n))


def _halves(n, sign_last=1):
    return tuple([HALF] * (n - 1) + [sign_last * HALF])


def _named_representatives(datum):
    """Coweights representing ``b_1, b_2, ...`` in a fixed order."""
    fam, n, d = datum.family, datum.rank, datum.theta_order
    w = datum.fundamental_coweights
    if d == 1:
        if fam == "A":
            return [scale(k, w[0]) for k in range(1, n + 1)]
        if fam == "B":
            return [_e(n, 0)]
        if fam == "C":
            return [_halves(n)]
        if fam == "D":
            h = _halves(n)
            if n % 2:
                return [scale(i, h) for i in (1, 2, 3)]
            return [h, _e(n, 0), add(h, _e(n, 0))]
        if fam == "E" and n == 6:
            return [w[0], w[5]]
        if fam == "E" and n == 7:
            return [w[0]]
        return []
    if fam == "D" and d == 2:
        x = [Fraction(0)] * n
        last = n - 2 if n % 2 else n - 1
        for i in range(0, last, 2):
            x[i] -= HALF
            x[i + 1] += HALF
        if n % 2:
            x[n - 1] += HALF
        return [tuple(x)]
    return []


def basic_classes(datum):
    """``[b_0, b_1, ...]``: ``b_0`` is the unramified class with ``kappa = 0``."""
    pi1 = FundamentalGroup(datum)
    zero = tuple(0 for _ in pi1.coinvariant_factors)
    origin = (Fraction(0),) * datum.dim
    reps = [origin]
    seen = {zero}
    for r in _named_representatives(datum):
        k = pi1.coinvariant_class_of(r)
        if k not in seen:
            seen.add(k)
            reps.append(r)
    for k in pi1.coinvariant_elements():
        if k not in seen:
            seen.add(k)
            reps.append(pi1.coinvariant_representative(k))
    out = []
    for i, r in enumerate(reps):
        k = pi1.coinvariant_class_of(r)
        out.append(BasicClass(i, k, r, origin, _order(k, pi1.coinvariant_factors), "b%d" % i))
    return out


def _order(k, factors):
    o = 1
    for x, d in zip(k, factors):
        if x:
            o = sympy.ilcm(o, d // sympy.igcd(x, d))
    return int(o)


def class_representative(datum, index):
    classes = basic_classes(datum)
    if not 0 <= index < len(classes):
        raise ValueError("%s has %d basic classes" % (datum.name, len(classes)))
    return classes[index]


def lambda_b(rel, b):
    """``(lambda_b, lambda_b^+)``.

    The image of a lift of ``kappa`` in ``X*(S^)`` is written in the relative
    simple roots of the dual group; replacing each coefficient ``c`` by
    ``c - ceil(c)`` gives the unique representative with coefficients in
    ``(-1, 0]``.
    """
    x = sub(rel.average(b.representative), b.nu_bar)
    c = rel.Qhat_coords(x)
    assert c is not None
    lam = tuple(Fraction(0) for _ in x)
    for ci, a in zip(c, rel.rel_simple_dual):
        lam = add(lam, scale(ci - ceil(ci), a))
    lam = add(lam, b.nu_bar)
    return lam, rel.dominant_rep(lam)


# ---------------------------------------------------------------------------
# extended Dynkin diagram and defect
# ---------------------------------------------------------------------------

def extended_dynkin(datum):
    """Nodes ``0..r`` with edges, the action of ``theta`` and of ``Omega``."""
    gens = affine_simple_reflections(datum)
    normals = []
    h = datum.highest_root
    normals.append(scale(-1, h))
    normals.extend(datum.simple_roots)
    edges = []
    for i in range(len(normals)):
        for j in range(i + 1, len(normals)):
            a, b = normals[i], normals[j]
            m = dot(a, b) * dot(a, b) * 4 / (dot(a, a) * dot(b, b))
            if m:
                edges.append((i, j, int(m)))
    theta = node_permutation(datum, AffineElement((0,) * datum.dim, datum.theta))
    omega = {k: node_permutation(datum, tau) for k, tau in omega_elements(datum).items()}
    return {"nodes": list(range(len(gens))), "edges": edges, "theta": theta, "omega": omega}


def _orbits(perm):
    seen = set()
    count = 0
    for i in range(len(perm)):
        if i in seen:
            continue
        count += 1
        j = i
        while j not in seen:
            seen.add(j)
            j = perm[j]
    return count


def lifts(datum, b):
    """All classes in ``pi_1(G)`` mapping to ``kappa(b)``."""
    pi1 = FundamentalGroup(datum)
    return [c for c in pi1.elements()
            if pi1.coinvariant_class_of(pi1.representative(c)) == b.kappa]


def _tau(datum, b, lift=None):
    pi1 = FundamentalGroup(datum)
    if lift is None:
        lift = pi1.class_of(b.representative)
    elif pi1.coinvariant_class_of(pi1.representative(lift)) != b.kappa:
        raise ValueError("lift does not map to kappa(b)")
    return omega_elements(datum)[tuple(lift)]


def defect(datum, b, lift=None):
    """``#theta-orbits - #(tau theta)-orbits`` on the extended Dynkin nodes."""
    th = node_permutation(datum, AffineElement((0,) * datum.dim, datum.theta))
    tau = _tau(datum, b, lift)
    tp = node_permutation(datum, tau)
    combined = [tp[th[i]] for i in range(len(th))]
    return _orbits(th) - _orbits(combined)


def kottwitz_sign(datum, b, lift=None):
    return -1 if defect(datum, b, lift) % 2 else 1


def in_B_G_mu(rel, b, mu):
    """``kappa(b) = mu^natural`` and ``nu_bar_b <= mu^diamond``."""
    datum = rel.datum
    mu = vec(mu)
    if not datum.is_dominant(mu):
        raise ValueError("mu is not dominant")
    pi1 = FundamentalGroup(datum)
    if pi1.coinvariant_class_of(mu) != b.kappa:
        return False
    return rel.in_cone(sub(rel.average(mu), b.nu_bar))


# ---------------------------------------------------------------------------
# volumes of parahoric subgroups
# ---------------------------------------------------------------------------

def _poincare_fixed(datum, gens, frob):
    """``sum t^l(w)`` over the elements ``w`` of the group generated by the
    affine reflections ``gens`` with ``frob(w) = w``.

    The barycenter ``p`` of the base alcove has trivial stabiliser, so ``w``
    is recorded as the point ``w(p)``.  ``frob`` is an affine map fixing the
    alcove, hence ``p``, and ``frob w frob^{-1}`` fixes ``w`` exactly when
    ``frob`` fixes ``w(p)``.
    """
    p = _barycenter(datum)
    dist = {p: 0}
    frontier = [p]
    while frontier:
        nxt = []
        for y in frontier:
            for s in gens:
                z = s.act(y)
                if z not in dist:
                    dist[z] = dist[y] + 1
                    nxt.append(z)
        frontier = nxt
        if len(dist) > 2000000:
            raise ValueError("parahoric subgroup is infinite")
    poly = [0] * (max(dist.values()) + 1)
    for y, ell in dist.items():
        if frob.act(y) == y:
            poly[ell] += 1
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def standard_parahorics(datum, b, lift=None):
    """All proper subsets of the nodes stable under ``tau theta``."""
    th = node_permutation(datum, AffineElement((0,) * datum.dim, datum.theta))
    tp = node_permutation(datum, _tau(datum, b, lift))
    perm = [tp[th[i]] for i in range(len(th))]
    r = len(perm)
    out = []
    for mask in range(2 ** r - 1):
        J = [i for i in range(r) if mask >> i & 1]
        if all(perm[i] in J for i in J):
            out.append(tuple(J))
    return out


def _charpoly(m):
    t = sympy.Symbol("t")
    M = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m])
    p = M.charpoly(t)
    return [int(c) for c in reversed(p.all_coeffs())]


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def parahoric_volume(datum, b, K_J, lift=None):
    """``R(t)`` with ``vol = R(q)`` for the standard parahoric of ``J_b``
    given by the nodes ``K_J``.

    Returns ``(numerator, denominator)`` as coefficient lists in ``t``
    (constant term first):

        R = P_{K_J}^{tau sigma}(t) det(t - tau_lin theta) /
            (P_{W_0}^{sigma}(t) det(t - theta)).
    """
    K_J = tuple(sorted(set(K_J)))
    gens_all = affine_simple_reflections(datum)
    r = len(gens_all)
    if any(not 0 <= i < r for i in K_J):
        raise ValueError("nodes must lie in 0..%d" % (r - 1))
    if len(K_J) == r:
        raise ValueError("K_J generates an infinite group")
    th = node_permutation(datum, AffineElement((0,) * datum.dim, datum.theta))
    tau = _tau(datum, b, lift)
    tp = node_permutation(datum, tau)
    if any(tp[th[i]] not in K_J for i in K_J):
        raise ValueError("K_J is not tau sigma-stable")
    sigma = AffineElement((0,) * datum.dim, datum.theta)
    num = _poincare_fixed(datum, [gens_all[i] for i in K_J], tau * sigma)
    den = getattr(datum, "_special_poincare", None)
    if den is None:
        den = _poincare_fixed(datum, gens_all[1:], sigma)
        datum._special_poincare = den
    num = _pmul(num, _charpoly(mat_mul(tau.finite, datum.theta)))
    den = _pmul(den, _charpoly(datum.theta))
    return num, den


def volume_at_zero(num, den):
    return Fraction(num[0], den[0])
