"""
The extended affine Weyl group ``W = X_*(T) x| W_0`` of an adjoint group.

Elements are pairs ``t^lam w`` acting on ``V = X_*(T) (x) R`` by
``x -> lam + w x``.  The base alcove is the anti-dominant one,

    a = { x : <x, alpha> < 0 for alpha > 0,  <x, theta_h> > -1 },

with vertices ``0`` and ``v_i = -varpi_i^vee / c_i`` where ``theta_h =
sum c_i alpha_i`` is the highest root.  Lengths count the affine root
hyperplanes ``<x, alpha> = k`` separating ``a`` from ``w a``.
"""

from fractions import Fraction
from math import floor, lcm

from .root_data import (
    FundamentalGroup, add, dominant_rep, dot, identity, mat_mul, mat_vec, neg,
    scale, sub, vec,
)

__all__ = [
    "AffineElement", "aw_length", "base_alcove_vertices", "affine_simple_reflections",
    "omega_elements", "newton_kappa", "is_sigma_straight", "straight_classes",
    "word_matrix", "sigma_action", "node_permutation",
]


def word_matrix(datum, word):
    """Matrix of ``s_{word[0]} ... s_{word[-1]}`` on ambient coordinates."""
    n = datum.dim
    cols = []
    for j in range(n):
        x = tuple(Fraction(int(i == j)) for i in range(n))
        for i in reversed(word):
            x = datum.simple_reflection(i, x)
        cols.append(x)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def _transpose(m):
    return tuple(zip(*m))


class AffineElement:
    """``t^translation * finite``; ``finite`` is an orthogonal matrix."""

    __slots__ = ("translation", "finite", "_hash")

    def __init__(self, translation, finite):
        self.translation = vec(translation)
        self.finite = tuple(tuple(Fraction(x) for x in row) for row in finite)
        self._hash = hash((self.translation, self.finite))

    @classmethod
    def identity(cls, dim):
        return cls((0,) * dim, identity(dim))

    @classmethod
    def translation_by(cls, lam):
        lam = vec(lam)
        return cls(lam, identity(len(lam)))

    def __mul__(self, other):
        return AffineElement(add(self.translation, mat_vec(self.finite, other.translation)),
                             mat_mul(self.finite, other.finite))

    def inverse(self):
        winv = _transpose(self.finite)
        return AffineElement(neg(mat_vec(winv, self.translation)), winv)

    def act(self, x):
        return add(self.translation, mat_vec(self.finite, vec(x)))

    def __eq__(self, other):
        return (isinstance(other, AffineElement) and self.translation == other.translation
                and self.finite == other.finite)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "AffineElement(t=%s)" % (self.translation,)


def sigma_action(datum, w):
    """``sigma(w) = theta w theta^{-1}``."""
    th = datum.theta
    thinv = _transpose(th)
    return AffineElement(mat_vec(th, w.translation), mat_mul(mat_mul(th, w.finite), thinv))


def _sigma_elt(datum):
    return AffineElement((0,) * datum.dim, datum.theta)


def base_alcove_vertices(datum):
    """``[0, v_1, ..., v_r]`` with ``v_i = -varpi_i^vee / c_i``."""
    c = datum.highest_root_coefficients
    out = [(Fraction(0),) * datum.dim]
    for i, w in enumerate(datum.fundamental_coweights):
        out.append(scale(Fraction(-1, c[i]), w))
    return out


def _barycenter(datum):
    vs = base_alcove_vertices(datum)
    tot = (Fraction(0),) * datum.dim
    for v in vs:
        tot = add(tot, v)
    return scale(Fraction(1, len(vs)), tot)


def aw_length(datum, w):
    """Number of affine root hyperplanes separating ``a`` and ``w a``."""
    p = _barycenter(datum)
    wp = w.act(p)
    total = 0
    for a in datum.positive_roots:
        total += abs(floor(dot(p, a)) - floor(dot(wp, a)))
    return total


def affine_simple_reflections(datum):
    """``[s_0, s_1, ..., s_r]``; ``s_0`` is the reflection in
    ``<x, theta_h> = -1``."""
    n = datum.dim
    out = []
    h = datum.highest_root
    hc = datum.coroot(h)
    sh = tuple(tuple(Fraction(int(i == j)) - hc[i] * h[j] for j in range(n)) for i in range(n))
    out.append(AffineElement(neg(hc), sh))
    for i in range(datum.rank):
        out.append(AffineElement((0,) * n, word_matrix(datum, [i])))
    return out


def omega_elements(datum):
    """``{pi_1 class: tau}`` for the length-zero elements ``tau``.

    ``tau = t^lam w`` with ``lam`` a lattice vertex of ``a`` (``0`` or a
    minuscule ``-varpi_i^vee``) and ``w a = a - lam``.
    """
    cache = getattr(datum, "_omega_elements", None)
    if cache is not None:
        return cache
    pi1 = FundamentalGroup(datum)
    p = _barycenter(datum)
    c = datum.highest_root_coefficients
    out = {}
    cands = [(Fraction(0),) * datum.dim]
    cands += [neg(w) for i, w in enumerate(datum.fundamental_coweights) if c[i] == 1]
    for lam in cands:
        target = sub(p, lam)
        top1, w1 = dominant_rep(datum, p, return_word=True)
        top2, w2 = dominant_rep(datum, target, return_word=True)
        if top1 != top2:
            continue
        # top = s_{w1[-1]} ... s_{w1[0]} p, likewise for target
        a = word_matrix(datum, list(reversed(w1)))
        b = word_matrix(datum, list(reversed(w2)))
        w = mat_mul(_transpose(b), a)
        tau = AffineElement(lam, w)
        assert aw_length(datum, tau) == 0
        out[pi1.class_of(lam)] = tau
    assert len(out) == pi1.order, "length-zero elements do not exhaust pi_1(G)"
    datum._omega_elements = out
    return out


def node_permutation(datum, g):
    """Permutation of the extended Dynkin nodes ``0..r`` induced by an
    affine map ``g`` stabilising the base alcove, read off its vertices."""
    vs = base_alcove_vertices(datum)
    index = {v: i for i, v in enumerate(vs)}
    perm = []
    for v in vs:
        img = g.act(v)
        if img not in index:
            raise ValueError("map does not stabilise the base alcove")
        perm.append(index[img])
    return perm


# ---------------------------------------------------------------------------
# Newton point, Kottwitz invariant and straightness
# ---------------------------------------------------------------------------

def _order_of_matrix(m, limit=1000):
    n = len(m)
    ident = identity(n)
    x = m
    for k in range(1, limit + 1):
        if x == ident:
            return k
        x = mat_mul(m, x)
    raise ValueError("finite part has infinite order")


def newton_kappa(datum, w, sigma=True):
    """``(nu_bar, kappa)`` of ``w`` (twisted by ``theta`` when ``sigma``).

    ``(w sigma)^m`` is a translation ``t^eta`` for ``m`` the order of the
    linear part; ``nu_bar`` is the dominant conjugate of ``eta / m`` and
    ``kappa`` the class of the translation part in ``pi_1(G)_sigma``.
    """
    th = datum.theta if sigma else identity(datum.dim)
    lin = mat_mul(w.finite, th)
    m = _order_of_matrix(lin)
    x = (Fraction(0),) * datum.dim
    for _ in range(m):
        x = add(w.translation, mat_vec(lin, x))
    nu = dominant_rep(datum, scale(Fraction(1, m), x))[0]
    pi1 = FundamentalGroup(datum)
    kappa = pi1.coinvariant_class_of(w.translation) if sigma else pi1.class_of(w.translation)
    return nu, kappa


def is_sigma_straight(datum, w, sigma=True):
    nu, _ = newton_kappa(datum, w, sigma)
    return aw_length(datum, w) == dot(nu, datum.two_rho)


def _elements_up_to(datum, bound):
    """All ``w_a tau`` with ``l(w_a) <= bound``, with their lengths."""
    gens = affine_simple_reflections(datum)
    ident = AffineElement.identity(datum.dim)
    layers = [[ident]]
    seen = {ident}
    for ell in range(1, bound + 1):
        nxt = []
        for x in layers[-1]:
            for s in gens:
                y = x * s
                if y in seen:
                    continue
                if aw_length(datum, y) == ell:
                    seen.add(y)
                    nxt.append(y)
        layers.append(nxt)
    omega = list(omega_elements(datum).values())
    out = []
    for ell, layer in enumerate(layers):
        for x in layer:
            for tau in omega:
                out.append((x * tau, ell))
    return out


def straight_classes(datum, bound, sigma=True, max_elements=200000):
    """Straight ``sigma``-conjugacy classes met by elements of length at most
    ``bound``: ``[(representative, nu_bar, kappa)]``.

    Straight elements are grouped by conjugation ``w -> x w sigma(x)^{-1}``
    with ``x`` an affine simple reflection or a length-zero element, staying
    among straight elements of the same length.
    """
    elts = _elements_up_to(datum, bound)
    if len(elts) > max_elements:
        raise ValueError("length bound too large for enumeration")
    straight = {}
    for w, ell in elts:
        if is_sigma_straight(datum, w, sigma):
            straight[w] = ell
    movers = affine_simple_reflections(datum) + list(omega_elements(datum).values())
    sig = (lambda x: sigma_action(datum, x)) if sigma else (lambda x: x)
    parent = {w: w for w in straight}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for w in straight:
        for x in movers:
            y = x * w * sig(x).inverse()
            if y in straight and straight[y] == straight[w]:
                a, b = find(w), find(y)
                if a != b:
                    parent[a] = b
    classes = {}
    for w in straight:
        classes.setdefault(find(w), []).append(w)
    out = []
    for members in classes.values():
        rep = min(members, key=lambda z: (straight[z], z.translation, z.finite))
        nu, kappa = newton_kappa(datum, rep, sigma)
        out.append((rep, nu, kappa))
    out.sort(key=lambda t: (aw_length(datum, t[0]), t[1], t[2]))
    return out
