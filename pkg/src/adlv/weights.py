"""
Weight multiplicities of highest weight representations of the dual group.

A coweight ``mu`` of ``G`` is a weight of the dual group; the roots of the
dual group are the coroots of ``G``.  Multiplicities are computed by the
Freudenthal recursion over the dominant weights below ``mu``; the Kostant
alternating sum is kept as an independent cross-check for small Weyl groups.
"""

import threading
from fractions import Fraction

from .root_data import add, dominant_rep, dot, sub, vec

__all__ = [
    "dominant_weights", "weight_table", "weight_mult", "weight_mult_kostant",
    "weyl_dim", "orbit_size", "rel_weight_table", "rel_weight_mult",
]

_lock = threading.Lock()
_tables = {}


def _dual_roots(datum):
    """Pairs ``(coroot, root)`` over the positive roots of ``G``."""
    return list(zip(datum.positive_coroots, datum.positive_roots))


def dominant_weights(datum, mu):
    """Dominant weights of ``V_mu``, closed under root strings."""
    mu = vec(mu)
    if not datum.is_dominant(mu):
        raise ValueError("mu is not dominant")
    found = {mu}
    stack = [mu]
    pairs = _dual_roots(datum)
    while stack:
        lam = stack.pop()
        for cor, root in pairs:
            n = dot(lam, root)
            x = lam
            for _ in range(int(n)):
                x = sub(x, cor)
                y = dominant_rep(datum, x)[0]
                if y not in found:
                    found.add(y)
                    stack.append(y)
    return found


def _key(datum, mu):
    return (datum.name, tuple(map(tuple, datum.simple_roots)), vec(mu))


def weight_table(datum, mu):
    """``{lam: dim V_mu(lam)}`` over dominant ``lam`` (Freudenthal)."""
    key = _key(datum, mu)
    with _lock:
        if key in _tables:
            return _tables[key]
    mu = vec(mu)
    rho = datum.rho_check
    pairs = _dual_roots(datum)
    dom = dominant_weights(datum, mu)
    order = sorted(dom, key=lambda lam: (sum(datum.coroot_coords(sub(mu, lam))), lam))
    mult = {}
    rep_cache = {}

    def m(x):
        r = rep_cache.get(x)
        if r is None:
            r = dominant_rep(datum, x)[0]
            rep_cache[x] = r
        return mult.get(r, 0)

    top = dot(add(mu, rho), add(mu, rho))
    for lam in order:
        if lam == mu:
            mult[lam] = 1
            continue
        acc = Fraction(0)
        for cor, _ in pairs:
            x = add(lam, cor)
            while True:
                v = m(x)
                if not v:
                    break
                acc += v * dot(x, cor)
                x = add(x, cor)
        den = top - dot(add(lam, rho), add(lam, rho))
        val = 2 * acc / den
        assert val.denominator == 1 and val >= 0
        mult[lam] = int(val)
    with _lock:
        _tables[key] = mult
    return mult


def weight_mult(datum, mu, lam):
    """``dim V_mu(lam)``; ``lam`` need not be dominant."""
    lam = dominant_rep(datum, vec(lam))[0]
    return weight_table(datum, mu).get(lam, 0)


def weight_mult_kostant(datum, mu, lam):
    """``dim V_mu(lam)`` from Kostant's multiplicity formula."""
    from .kostant import engine
    from .satake import dot_orbit_terms
    from .twisted import restrict
    if datum.theta_order != 1:
        raise ValueError("the Kostant cross-check needs a split datum")
    rel = restrict(datum)
    lam = dominant_rep(datum, vec(lam))[0]
    signs, coords = dot_orbit_terms(rel, vec(mu), shift=lam)
    eng = engine(rel)
    return sum(s * sum(eng.p_coords(tuple(c))) for s, c in zip(signs.tolist(), coords.tolist()))


def weyl_dim(datum, mu):
    mu = vec(mu)
    rho = datum.rho_check
    num = Fraction(1)
    for cor in datum.positive_coroots:
        num *= dot(add(mu, rho), cor) / dot(rho, cor)
    assert num.denominator == 1
    return int(num)


def orbit_size(datum, lam):
    """``|W lam|`` for dominant ``lam``, by orbit-stabilizer."""
    from .root_data import _parabolic_order
    lam = vec(lam)
    J = tuple(i for i, a in enumerate(datum.simple_roots) if dot(lam, a) == 0)
    return datum.weyl_group_order // _parabolic_order(datum, J)


def rel_weight_table(rel, mu):
    """``{lam: dim V_mu(lam)_rel}`` over the ``W^1``-dominant restrictions
    ``lam`` of the weights of ``V_mu``."""
    from .root_data import weyl_orbit
    datum = rel.datum
    table = weight_table(datum, mu)
    out = {}
    if rel.is_split:
        return dict(table)
    for lam, m in table.items():
        for x in weyl_orbit(datum, lam):
            y = rel.average(x)
            if rel.is_dominant(y):
                out[y] = out.get(y, 0) + m
    return out


def rel_weight_mult(rel, mu, lam):
    """``dim V_mu(lam)_rel``: the sum of ``dim V_mu(lam')`` over weights
    ``lam'`` restricting to ``lam``."""
    lam = rel.dominant_rep(rel.average(vec(lam)))
    return rel_weight_table(rel, mu).get(lam, 0)
