"""
Transition coefficients between the bases ``m_mu``, ``tau_mu`` and ``f_mu``
of the spherical Hecke algebra.

* ``K_{lam', lam}(q) = sum_w (-1)^{l_1(w)} P(w . lam' - lam, q)``
* ``n_mu^lam``: van Leeuwen's coefficients with ``m_mu = sum n_mu^lam tau_lam``
* ``t_mu^lam = K_{mu, lam}(q^{-1}) q^{-<lam, rho>}`` (Kato-Lusztig)
* ``M_mu^lam = q^{-<lam, rho>} sum_{w'} sum_w (-1)^{l_1(w)} (1 - e_0(w' mu))
  P(w . (w' mu) - lam, q^{-1})`` and ``M^0_mu = M_mu^0``.

The double sums run over the orbit ``W^1 mu`` and the whole of ``W^1``; the
group elements act on integer lattice coordinates in one batched numpy
product, and terms outside the cone ``R^+`` are discarded before any
``P``-lookup.
"""

import os
from fractions import Fraction
from math import lcm

import numpy as np

from .kostant import BoxEvaluator, QPolynomial, engine
from .root_data import add, dot, scale, sub, vec

__all__ = [
    "ResourceError", "work_budget", "k_poly", "tau_coefficient", "n_coeff",
    "n_row", "t_coeff", "m_coeff", "m0_poly", "m_row", "dominant_below",
    "bc_evaluate", "scaled_b", "dot_orbit_terms", "m0_numeric",
]


class ResourceError(RuntimeError):
    """Raised when a computation would exceed the configured work budget."""


def work_budget():
    return int(os.environ.get("ADLV_WORK_BUDGET", "50000000"))


def _weyl_stack(rel):
    st = getattr(rel, "_weyl_stack", None)
    if st is None:
        els = rel.weyl_elements
        mats = np.stack([e.matrix for e in els])
        signs = np.array([e.sign for e in els], dtype=np.int64)
        st = (mats, signs)
        rel._weyl_stack = st
    return st


def _scaled_coords(rel, x):
    """Lattice coordinates of ``x`` and of ``rho^vee``, both multiplied by a
    common integer ``L``."""
    cx = rel.lattice_coords(x)
    cr = rel.lattice_coords(rel.rho_check)
    L = 1
    for c in list(cx) + list(cr):
        L = lcm(L, c.denominator)
    return (np.array([int(c * L) for c in cx], dtype=np.int64),
            np.array([int(c * L) for c in cr], dtype=np.int64), L)


def dot_orbit_terms(rel, x, shift=None):
    """All ``(sign(w), coords(w . x - shift))`` with ``w . x - shift`` in
    ``R^+``, as a pair of numpy arrays."""
    mats, signs = _weyl_stack(rel)
    if len(mats) * 1 > work_budget():
        raise ResourceError("alternating sum exceeds the work budget")
    target = add(vec(x), rel.rho_check)
    cx, cr, L = _scaled_coords(rel, target)
    y = mats @ cx - cr
    if shift is not None:
        cs = rel.lattice_coords(shift)
        if cs is None:
            return signs[:0], np.zeros((0, rel.rank), dtype=np.int64)
        y = y - np.array([int(c * L) for c in cs], dtype=np.int64)
    ok = np.all(y >= 0, axis=1) & np.all(y % L == 0, axis=1)
    return signs[ok], y[ok] // L


def _poly_sum(rel, signs, coords):
    """``sum sign * P(coords, q)`` as a coefficient tuple in ``q``."""
    eng = engine(rel)
    acc = {}
    for s, c in zip(signs.tolist(), coords.tolist()):
        p = eng.p_coords(tuple(c))
        for i, a in enumerate(p):
            acc[i] = acc.get(i, 0) + s * a
    if not acc:
        return ()
    top = max(acc)
    out = [acc.get(i, 0) for i in range(top + 1)]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _require_dominant(rel, *xs):
    for x in xs:
        if not rel.is_dominant(vec(x)):
            raise ValueError("expected a dominant element")


def k_poly(rel, lam_prime, lam):
    """``K_{lam', lam}(q)`` as a ``QPolynomial``."""
    _require_dominant(rel, lam_prime, lam)
    signs, coords = dot_orbit_terms(rel, lam_prime, shift=vec(lam))
    return QPolynomial.from_q_poly(_poly_sum(rel, signs, coords))


def tau_coefficient(rel, lam_prime, lam):
    """Coefficient of ``e^lam`` in ``tau_{lam'}(q)``; the same as ``k_poly``."""
    return k_poly(rel, lam_prime, lam)


def _regular_orbit(rel, mu):
    """``[(nu, sign(u), u . nu)]`` over ``nu`` in ``W^1 mu`` with ``nu`` dot
    regular, ``u . nu`` dominant."""
    out = []
    for nu, _ in rel.w1_cosets(vec(mu)):
        singular, word = rel.e_classify(nu)
        if singular:
            continue
        out.append((nu, -1 if len(word) % 2 else 1, rel.dot_action(word, nu)))
    return out


def n_row(rel, mu):
    """``{lam: n_mu^lam}`` for the non-zero van Leeuwen coefficients."""
    _require_dominant(rel, mu)
    row = {}
    for _, sgn, lam in _regular_orbit(rel, mu):
        row[lam] = row.get(lam, 0) + sgn
    return {k: v for k, v in row.items() if v}


def n_coeff(rel, mu, lam):
    _require_dominant(rel, mu, lam)
    return n_row(rel, mu).get(vec(lam), 0)


def _rho_pairing(rel, lam):
    return dot(vec(lam), rel.datum.rho)


def t_coeff(rel, mu, lam):
    """``t_mu^lam = K_{mu, lam}(q^{-1}) q^{-<lam, rho>}``."""
    k = _poly_sum(rel, *dot_orbit_terms(rel, mu, shift=vec(lam)))
    _require_dominant(rel, mu, lam)
    return QPolynomial.from_qinv_poly(k) * QPolynomial.q_power(-_rho_pairing(rel, lam))


def m_coeff(rel, mu, lam):
    """``M_mu^lam`` by the double alternating sum."""
    _require_dominant(rel, mu, lam)
    acc = {}
    for nu, _ in rel.w1_cosets(vec(mu)):
        if rel.is_dot_singular(nu):
            continue
        p = _poly_sum(rel, *dot_orbit_terms(rel, nu, shift=vec(lam)))
        for i, a in enumerate(p):
            acc[i] = acc.get(i, 0) + a
    top = max(acc) if acc else -1
    k = tuple(acc.get(i, 0) for i in range(top + 1))
    return QPolynomial.from_qinv_poly(k) * QPolynomial.q_power(-_rho_pairing(rel, lam))


def m0_poly(rel, mu):
    """``M^0_mu``; zero unless ``mu`` lies in the relative coroot lattice."""
    mu = vec(mu)
    if rel.lattice_int_coords(mu) is None:
        return QPolynomial()
    return m_coeff(rel, mu, tuple(0 for _ in mu))


def dominant_below(rel, mu):
    """Dominant ``lam`` with ``mu - lam`` in ``R^+``, sorted by height."""
    mu = vec(mu)
    _require_dominant(rel, mu)
    low = rel.dominant_rep(tuple(-x for x in mu))
    low = tuple(-x for x in low)  # w_0 mu
    span = rel.lattice_int_coords(sub(mu, low))
    if span is None:
        raise ValueError("mu - w_0 mu is not in the coroot lattice")
    out = []
    basis = rel.lattice_basis

    def rec(i, x, c):
        if i == len(basis):
            if rel.is_dominant(x):
                out.append((c, x))
            return
        y = x
        for k in range(span[i] + 1):
            rec(i + 1, y, c + k)
            y = sub(y, basis[i])

    rec(0, mu, 0)
    out.sort(key=lambda t: (t[0], t[1]))
    return [x for _, x in out]


def m_row(rel, mu):
    return {lam: m_coeff(rel, mu, lam) for lam in dominant_below(rel, mu)}


def scaled_b(rel, d0):
    """A copy of ``rel`` with every ``b`` multiplied by ``d0``, the relative
    datum of a ``d0``-fold Weil restriction."""
    import copy
    new = copy.copy(rel)
    new.b_of = {k: v * d0 for k, v in rel.b_of.items()}
    new.factors = [(g, k * d0, s) for g, k, s in rel.factors]
    for attr in ("_kostant_engine", "F_b"):
        new.__dict__.pop(attr, None)
    return new


# ---------------------------------------------------------------------------
# numerical evaluation of M^0 on large inputs
# ---------------------------------------------------------------------------

def _m0_terms(rel, mu):
    """Aggregated ``{coords: multiplicity}`` with
    ``M^0_mu = sum mult * P(coords, q^{-1})``."""
    mats, signs = _weyl_stack(rel)
    orbit = _regular_orbit(rel, mu)
    if len(orbit) * len(mats) > work_budget():
        raise ResourceError("M^0 double sum exceeds the work budget (%d terms)"
                            % (len(orbit) * len(mats)))
    by_dom = {}
    for _, sgn, lam in orbit:
        by_dom[lam] = by_dom.get(lam, 0) + sgn
    rows = []
    weights = []
    for lam, mult in by_dom.items():
        if not mult:
            continue
        s, c = dot_orbit_terms(rel, lam)
        rows.append(c)
        weights.append(s * mult)
    if not rows:
        return {}
    allc = np.concatenate(rows)
    allw = np.concatenate(weights)
    uniq, inv = np.unique(allc, axis=0, return_inverse=True)
    tot = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(tot, inv.ravel(), allw)
    return {tuple(u): int(t) for u, t in zip(uniq.tolist(), tot.tolist()) if t}


def m0_numeric(rel, mus, q):
    """Exact values ``M^0_mu(q^{-1})`` for several ``mu`` at an integer
    ``q >= 2``, through one ``BoxEvaluator`` covering all of them."""
    q = int(q)
    results = {}
    jobs = []
    tops = []
    for mu in mus:
        mu = vec(mu)
        c = rel.lattice_int_coords(mu)
        if c is None:
            results[mu] = Fraction(0)
            continue
        terms = _m0_terms(rel, mu)
        jobs.append((mu, c, terms))
        tops.append(c)
    if not jobs:
        return results
    top = tuple(max(t[i] for t in tops) for i in range(rel.rank))
    ev = BoxEvaluator(rel, top, q)
    for mu, c, terms in jobs:
        h = sum(c)
        n_terms = sum(abs(m) for m in terms.values())
        bound = max(1, n_terms) * ev.growth_bound(h)
        ev.add_query(list(terms.items()), h, bound)
    vals = ev.evaluate()
    for (mu, c, _), v in zip(jobs, vals):
        results[mu] = Fraction(v, q ** (ev.B * sum(c)))
    return results


# ---------------------------------------------------------------------------
# base change evaluation
# ---------------------------------------------------------------------------

def bc_evaluate(rel, mu, nu_b, s, q, s0=1):
    """``sum_lam dim V_mu(lam)_rel M^0_{lam^(s) - s nu_b}(q^{-1})`` over the
    dominant relative weights ``lam`` of ``V_mu``."""
    from .weights import rel_weight_table
    if s % rel.d or s % s0:
        raise ValueError("s must be divisible by d = %d and s0 = %d" % (rel.d, s0))
    table = rel_weight_table(rel, vec(mu))
    total = Fraction(0)
    for lam, mult in table.items():
        target = sub(rel.lambda_power_s(lam, s), scale(s, vec(nu_b)))
        m0 = m0_poly(rel, target)
        if not m0.is_zero():
            total += mult * m0.at_q(q)
    return total
