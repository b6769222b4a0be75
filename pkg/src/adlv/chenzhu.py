"""
Numerics around the count of top-dimensional irreducible components of
affine Deligne-Lusztig varieties ``X_mu(b)`` for basic ``b``.

* ``count_components``: ``N(mu, b) = dim V_mu(lambda_b)_rel``
* ``adlv_dimension``: ``<mu - nu_b, rho> - def(b) / 2``
* ``enumerate_lambda_set``: the set ``Lambda(b)`` up to a norm bound, with
  the good/bad split used for the key estimate
* ``key_estimate_scan`` and ``limit_scan``: exact tables of
  ``q^{s def/2} M^0_{lambda^(s)}(q^{-1})`` and of the base change sums
* ``suggested_mu``: the coweights ``mu_1`` (and ``mu_2`` for split ``E_6``).
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .isocrystal import basic_classes, defect, in_B_G_mu, lambda_b
from .root_data import add, dot, fmt_frac, fmt_vec, scale, sub, vec
from .satake import m0_numeric, m0_poly
from .weights import rel_weight_mult, rel_weight_table

__all__ = [
    "EmptyADLVError", "LambdaSetEntry", "DecayScan", "count_components",
    "adlv_dimension", "norm_sq", "norm_constant", "enumerate_lambda_set",
    "bad_set", "key_estimate_scan", "limit_scan", "suggested_mu",
    "admissible_s", "m0_values",
]

HALF = Fraction(1, 2)


class EmptyADLVError(ValueError):
    """``b`` is not in ``B(G, mu)``, so ``X_mu(b)`` is empty."""


def _check_nonempty(rel, b, mu):
    if not in_B_G_mu(rel, b, mu):
        raise EmptyADLVError("X_mu(b) is empty: b is not in B(G, mu) "
                             "(kappa(b) must equal the image of mu and nu_b <= mu)")


def count_components(rel, b, mu):
    """``dim V_mu(lambda_b)_rel``."""
    _check_nonempty(rel, b, mu)
    lam, _ = lambda_b(rel, b)
    return rel_weight_mult(rel, vec(mu), lam)


def adlv_dimension(rel, b, mu):
    _check_nonempty(rel, b, mu)
    d = defect(rel.datum, b)
    return dot(sub(vec(mu), b.nu_bar), rel.datum.rho) - Fraction(d, 2)


# ---------------------------------------------------------------------------
# norms and the set Lambda(b)
# ---------------------------------------------------------------------------

def _uses_l1(rel):
    return rel.datum.family in "ABCD"


def norm_sq(rel, lam):
    """Square of the type-appropriate norm: ``l^1`` for classical types,
    Euclidean for ``E``."""
    lam = vec(lam)
    if _uses_l1(rel):
        n = sum(abs(x) for x in lam)
        return n * n
    return dot(lam, lam)


def norm_constant(rel):
    """``delta^2``, where ``delta`` bounds the norm of every coroot."""
    return max(norm_sq(rel, c) for c in rel.datum.positive_coroots)


def _omega(datum, coeffs):
    out = (Fraction(0),) * datum.dim
    for c, w in zip(coeffs, datum.fundamental_coweights):
        out = add(out, scale(c, w))
    return out


def bad_set(rel, b):
    """``({lam: label}, lambda_bad)`` over ``Lambda(b) - Lambda(b)_good``.

    Labels are ``"bad"`` for the named bad weights of odd split ``D_n`` and of
    split ``E_6``, and ``"exceptional"`` for the remaining excluded weights,
    which satisfy the key estimate by a separate argument.  ``lambda_bad`` is
    the weight where the estimate fails (split ``E_6`` only), else ``None``.
    """
    datum = rel.datum
    fam, n, d = datum.family, datum.rank, datum.theta_order
    if d != 1 or b.is_trivial:
        return {}, None
    if fam == "D" and n % 2 == 1 and b.index in (1, 3):
        x = [HALF] * n
        x[0] = Fraction(3, 2)
        if b.index == 1:
            x[-1] = -HALF
        return {tuple(x): "bad"}, None
    if fam == "E" and n == 6:
        def om(*idx):
            return _omega(datum, [idx.count(i) for i in range(1, 7)])
        if b.index == 1:
            s = [om(5), om(4, 1), om(2, 6), om(6, 6)]
        else:
            s = [om(2), om(4, 6), om(5, 1), om(1, 1)]
        out = {x: "exceptional" for x in s[1:]}
        out[s[0]] = "bad"
        return out, s[0]
    if fam == "E" and n == 7:
        return {_omega(datum, [int(i == 4) for i in range(7)]): "exceptional"}, None
    return {}, None


@dataclass(frozen=True)
class LambdaSetEntry:
    lam: tuple
    classification: str
    norm_sq: Fraction
    distinguished: bool = False

    def to_json(self, rel=None):
        v = rel.to_display(self.lam) if rel is not None else self.lam
        return {"lambda": fmt_vec(v), "classification": self.classification,
                "norm_sq": fmt_frac(self.norm_sq), "lambda_bad": self.distinguished}


def enumerate_lambda_set(rel, b, norm_bound=None, norm_sq_bound=None):
    """All ``lam`` in ``X*(S^)^+`` with ``lam - lambda_b`` in the coroot
    lattice of the dual group and norm at most the bound.

    The result contains ``lambda_b^+`` itself (classified as such) followed by
    the elements of ``Lambda(b)`` in order of increasing norm, each labelled
    ``"good"``, ``"bad"`` or ``"exceptional"`` (see ``bad_set``).
    """
    if norm_sq_bound is None:
        if norm_bound is None:
            raise ValueError("a norm bound is required")
        norm_sq_bound = Fraction(norm_bound) ** 2
    norm_sq_bound = Fraction(norm_sq_bound)
    lam_b, lam_b_plus = lambda_b(rel, b)
    excluded, distinguished = bad_set(rel, b)
    basis = rel.S_basis
    found = []
    zero = (Fraction(0),) * rel.dim

    # the norm of sum c_i u_i is monotone in each c_i for dominant u_i
    def rec(i, x):
        if i == len(basis):
            if rel.in_Qhat(sub(x, lam_b)):
                found.append(x)
            return
        y = x
        while norm_sq(rel, y) <= norm_sq_bound:
            rec(i + 1, y)
            y = add(y, basis[i])

    rec(0, zero)
    out = []
    for x in found:
        if x == lam_b_plus:
            cls = "lambda_b_plus"
        elif x in excluded:
            cls = excluded[x]
        else:
            cls = "good"
        out.append(LambdaSetEntry(x, cls, norm_sq(rel, x), x == distinguished))
    out.sort(key=lambda e: (e.classification != "lambda_b_plus", e.norm_sq, e.lam))
    return out


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------

def admissible_s(rel, b, s_max):
    """``s <= s_max`` divisible by ``d`` and by ``s0(b)``."""
    step = rel.d * b.s0 // _gcd(rel.d, b.s0)
    return [s for s in range(step, s_max + 1, step)]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def m0_values(rel, targets, q):
    """``{target: M^0_target(q^{-1})}`` exactly; integer ``q`` goes through
    the modular box evaluator, other rationals through the polynomial."""
    q = Fraction(q)
    if q.denominator == 1 and q >= 2:
        return m0_numeric(rel, targets, int(q))
    return {vec(t): m0_poly(rel, t).at_q(q) for t in targets}


def _scale_factor(q, s, d):
    """``q^{s d / 2}``, exact; requires ``s d`` even."""
    if (s * d) % 2:
        raise ValueError("q^{s def/2} is irrational for s = %d, def = %d" % (s, d))
    return Fraction(q) ** (s * d // 2)


@dataclass
class DecayScan:
    lam: tuple
    q: Fraction
    rows: list = field(default_factory=list)
    fitted_ratio: Fraction = None

    @property
    def ratios(self):
        out = []
        for (_, a), (_, b) in zip(self.rows, self.rows[1:]):
            out.append(abs(b) / abs(a) if a else None)
        return out

    @property
    def decays(self):
        rs = self.ratios
        return bool(rs) and all(r is not None and r < 1 for r in rs)

    def to_json(self, rel=None):
        v = rel.to_display(self.lam) if rel is not None else self.lam
        return {"lambda": fmt_vec(v), "q": fmt_frac(self.q),
                "rows": [{"s": s, "value": fmt_frac(x)} for s, x in self.rows],
                "fitted_ratio": None if self.fitted_ratio is None else fmt_frac(self.fitted_ratio),
                "decays": self.decays}


def key_estimate_scan(rel, b, lam, s_list, q):
    """Exact ``q^{s def/2} M^0_{lam^(s) - s nu_b}(q^{-1})`` for ``s`` in
    ``s_list``."""
    d = defect(rel.datum, b)
    lam = vec(lam)
    for s in s_list:
        if s % rel.d or s % b.s0:
            raise ValueError("s = %d is not divisible by d = %d and s0 = %d" % (s, rel.d, b.s0))
    targets = [sub(rel.lambda_power_s(lam, s), scale(s, b.nu_bar)) for s in s_list]
    vals = m0_values(rel, targets, q)
    scan = DecayScan(lam, Fraction(q))
    for s, t in zip(s_list, targets):
        scan.rows.append((s, _scale_factor(q, s, d) * vals[t]))
    rs = [r for r in scan.ratios if r is not None]
    scan.fitted_ratio = max(rs) if rs else None
    return scan


def limit_scan(rel, mu, b, q, s_list):
    """Rows ``(s, q^{s def/2} sum_lam dim V_mu(lam)_rel M^0_{lam^(s) - s nu_b})``."""
    _check_nonempty(rel, b, mu)
    d = defect(rel.datum, b)
    table = rel_weight_table(rel, vec(mu))
    for s in s_list:
        if s % rel.d or s % b.s0:
            raise ValueError("s = %d is not divisible by d = %d and s0 = %d" % (s, rel.d, b.s0))
    jobs = []
    for s in s_list:
        for lam, m in table.items():
            jobs.append((s, m, sub(rel.lambda_power_s(lam, s), scale(s, b.nu_bar))))
    vals = m0_values(rel, sorted({t for _, _, t in jobs}), q)
    rows = []
    for s in s_list:
        tot = sum((m * vals[t] for s2, m, t in jobs if s2 == s), Fraction(0))
        rows.append((s, _scale_factor(q, s, d) * tot))
    return rows


# ---------------------------------------------------------------------------
# mu_1 and mu_2
# ---------------------------------------------------------------------------

def suggested_mu(rel, b):
    """``(mu_1, mu_2)``; ``mu_2`` is ``None`` except for split ``E_6``."""
    datum = rel.datum
    if b.is_trivial:
        raise ValueError("b is unramified; no suggestion is needed")
    if datum.family == "D" and rel.d == 2:
        return tuple([HALF] * datum.dim), None
    if datum.family == "E" and datum.rank == 6 and rel.d == 1:
        w = datum.fundamental_coweights
        i, j = (0, 5) if b.index == 1 else (5, 0)
        return w[i], add(scale(2, w[i]), w[j])
    if rel.d == 1:
        return lambda_b(rel, b)[1], None
    raise ValueError("no suggestion for %s" % datum.name)


def default_b(datum):
    """The first ramified basic class, or the trivial one."""
    bs = basic_classes(datum)
    return bs[1] if len(bs) > 1 else bs[0]
