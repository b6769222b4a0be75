"""
Combinatorics of odd ``D_n``: admissible ``(U, V)``-trees and the
cancellation of signed partition counts.

For ``nu = (nu_2, ..., nu_n)`` in ``{+1, -1}^{n-1}`` put

    g_j = e_1 + nu_j e_j,        h_{i,j} = e_i - nu_i nu_j e_j,
    U = {g_2, ..., g_n},         V = positive roots of D_n,
    lambda_t = (6t, 2t nu_2, ..., 2t nu_n).

The signed sum

    sum_{S subset V} (-1)^{|S|} #P(lambda_t - sum S)_L

is the coefficient of ``e^{lambda_t} q^L`` in
``prod_{beta > 0} (1 - e^beta) / (1 - q e^beta)``, and is computed from that
product by a sparse dynamic programme over partial sums.  Restricting ``S``
to ``D_v`` and the partitions to ``P(lambda)^v`` only changes the factor of
each root, so vertex sums of a tree use the same routine.
"""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

__all__ = [
    "UVTree", "build_tree", "check_admissible", "signed_partition_sum",
    "signed_partition_sums", "leaf_restricted_sum", "leaf_restricted_sums", "naive_signed_sum", "naive_signed_sums",
    "min_partition_size", "cancellation_threshold", "positive_roots_D",
    "lambda_t", "parse_nu",
]


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def positive_roots_D(n):
    """``e_i - e_j`` and ``e_i + e_j`` for ``i < j`` (0-based coordinates)."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for s in (-1, 1):
                v = [0] * n
                v[i] = 1
                v[j] = s
                out.append(tuple(v))
    return out


def parse_nu(text):
    """``"++-+"`` or ``"1,1,-1,1"`` -> tuple of signs."""
    text = text.strip()
    if text and set(text) <= {"+", "-"}:
        return tuple(1 if c == "+" else -1 for c in text)
    vals = tuple(int(x) for x in text.split(","))
    if any(v not in (1, -1) for v in vals):
        raise ValueError("nu entries must be +1 or -1")
    return vals


def _check_nu(n, nu):
    nu = tuple(int(x) for x in nu)
    if len(nu) != n - 1 or any(x not in (1, -1) for x in nu):
        raise ValueError("nu must be a sign vector of length n - 1 = %d" % (n - 1))
    return nu


def lambda_t(n, nu, t):
    nu = _check_nu(n, nu)
    return (6 * t,) + tuple(2 * t * x for x in nu)


# ---------------------------------------------------------------------------
# (U, V)-trees
# ---------------------------------------------------------------------------

@dataclass
class UVTree:
    """A rooted tree with markings ``phi`` (non-root vertices, values in
    ``U``) and ``psi`` (internal vertices, values in ``V``).

    Vertices are integers; ``0`` is the root.  ``phi_label`` and
    ``psi_label`` hold readable names such as ``"g3"`` and ``"h2,5"``.
    """
    n: int
    nu: tuple
    U: list
    V: list
    parent: list = field(default_factory=list)
    children: list = field(default_factory=list)
    phi: list = field(default_factory=list)
    psi: list = field(default_factory=list)
    phi_label: list = field(default_factory=list)
    psi_label: list = field(default_factory=list)

    def add_vertex(self, parent, phi=None, phi_label=None):
        v = len(self.parent)
        self.parent.append(parent)
        self.children.append([])
        self.phi.append(phi)
        self.psi.append(None)
        self.phi_label.append(phi_label)
        self.psi_label.append(None)
        if parent is not None:
            self.children[parent].append(v)
        return v

    def set_psi(self, v, psi, label=None):
        self.psi[v] = psi
        self.psi_label[v] = label

    @property
    def leaves(self):
        return [v for v in range(len(self.parent)) if not self.children[v]]

    def path(self, v):
        """``[O, v_1, ..., v]``."""
        out = [v]
        while self.parent[out[-1]] is not None:
            out.append(self.parent[out[-1]])
        return out[::-1]

    def is_positive(self, v):
        """Whether ``v`` is the positive child of its parent."""
        w = self.parent[v]
        if w is None:
            raise ValueError("the root has no sign")
        a, b = self.children[w]
        other = b if v == a else a
        return _sub(self.phi[v], self.phi[other]) == self.psi[w]

    def to_json(self):
        def node(v):
            out = {"phi": self.phi_label[v], "psi": self.psi_label[v]}
            if self.children[v]:
                out["children"] = [node(c) for c in self.children[v]]
            return out
        return {"n": self.n, "nu": list(self.nu), "leaves": len(self.leaves), "tree": node(0)}


def _g(n, nu, j):
    """``g_j`` for ``j`` in ``2..n`` (1-based as in the usual notation)."""
    v = [0] * n
    v[0] = 1
    v[j - 1] = nu[j - 2]
    return tuple(v)


def _h(n, nu, i, j):
    v = [0] * n
    v[i - 1] = 1
    v[j - 1] = -nu[i - 2] * nu[j - 2]
    return tuple(v)


def build_tree(n, nu):
    """The admissible ``(U, V)``-tree obtained from the ``n = 5`` base tree by
    gluing a depth-two gadget at every leaf for each step ``n - 2 -> n``."""
    if n < 5 or n % 2 == 0:
        raise ValueError("n must be odd and at least 5")
    nu = _check_nu(n, nu)
    U = [_g(n, nu, j) for j in range(2, n + 1)]
    tree = UVTree(n, nu, U, positive_roots_D(n))
    g = lambda j: (_g(n, nu, j), "g%d" % j)
    h = lambda i, j: (_h(n, nu, i, j), "h%d,%d" % (i, j))

    def child(parent, j):
        return tree.add_vertex(parent, *g(j))

    root = tree.add_vertex(None)
    tree.set_psi(root, *h(2, 3))
    base = [
        (2, (3, 4), [(3, (4, 5), [4, 5]), (4, (3, 5), [3, 5])]),
        (3, (2, 4), [(2, (4, 5), [4, 5]), (4, (2, 5), [2, 5])]),
    ]
    for j1, psi1, subs in base:
        a = child(root, j1)
        tree.set_psi(a, *h(*psi1))
        for j2, psi2, ls in subs:
            b = child(a, j2)
            tree.set_psi(b, *h(*psi2))
            for j3 in ls:
                child(b, j3)
    for m in range(7, n + 1, 2):
        for v in tree.leaves:
            used = {tree.phi_label[u] for u in tree.path(v)[1:]}
            (jv,) = [j for j in range(2, m - 1) if "g%d" % j not in used]
            tree.set_psi(v, *h(jv, m))
            a = child(v, jv)
            tree.set_psi(a, *h(m - 1, m))
            child(a, m - 1)
            child(a, m)
            b = child(v, m)
            tree.set_psi(b, *h(jv, m - 1))
            child(b, jv)
            child(b, m - 1)
    return tree


def check_admissible(tree):
    """``(ok, message)``; the message names the first offending vertex path."""
    U = set(tree.U)
    V = set(tree.V)
    k_expected = len(tree.U) - 1
    for w in range(len(tree.parent)):
        ch = tree.children[w]
        if w != 0 and tree.phi[w] not in U:
            return False, "phi(%s) is not in U" % tree.path(w)
        if not ch:
            continue
        if len(ch) != 2:
            return False, "vertex %s has %d children" % (tree.path(w), len(ch))
        if tree.psi[w] not in V:
            return False, "psi(%s) is not in V" % tree.path(w)
        diff = _sub(tree.phi[ch[0]], tree.phi[ch[1]])
        if diff != tree.psi[w] and diff != tuple(-x for x in tree.psi[w]):
            return False, "children of %s differ by %s, not +-psi" % (tree.path(w), diff)
    for leaf in tree.leaves:
        line = tree.path(leaf)
        if len(line) - 1 != k_expected:
            return False, "family line %s has length %d" % (line, len(line) - 1)
        phis = [tree.phi[v] for v in line[1:]]
        psis = [tree.psi[v] for v in line[:-1]]
        if len(set(phis)) != len(phis):
            return False, "repeated phi on family line %s" % line
        if len(set(psis)) != len(psis):
            return False, "repeated psi on family line %s" % line
    return True, "admissible"


# ---------------------------------------------------------------------------
# generating-function evaluation
# ---------------------------------------------------------------------------

FREE, OUT, IN = "free", "out", "in"


def _factor(s_part, allowed, Lmax):
    """``[(k, coeffs)]``: the coefficient of ``e^{k beta}`` in the factor of a
    root, as an integer array over ``q^0..q^Lmax``."""
    out = []

    def arr(*pairs):
        a = np.zeros(Lmax + 1, dtype=np.int64)
        for d, c in pairs:
            if 0 <= d <= Lmax:
                a[d] += c
        return a

    if not allowed:
        if s_part in (FREE, OUT):
            out.append((0, arr((0, 1))))
        if s_part in (FREE, IN):
            out.append((1, arr((0, -1))))
        return out
    top = Lmax + 1
    for k in range(0, top + 1):
        if s_part == OUT:
            a = arr((k, 1))
        elif s_part == IN:
            a = arr((k - 1, -1)) if k else None
        else:
            a = arr((0, 1)) if k == 0 else arr((k, 1), (k - 1, -1))
        if a is not None and a.any():
            out.append((k, a))
    return out


def _gf_coefficients(roots, kinds, target, Lmax, first_coord_first=False):
    """Coefficients of ``e^target q^L`` (``L = 0..Lmax``) in the product of
    the root factors described by ``kinds[i] = (s_part, allowed)``.

    Roots are processed so that coordinates are closed early: by default
    the last coordinate first, or with ``first_coord_first`` the roots
    through ``e_1`` before all others.
    """
    n = len(target)

    def rank(i):
        r = roots[i]
        top = -max(j for j in range(n) if r[j])
        return ((0 if r[0] else 1), top, i) if first_coord_first else (top, i)

    order = sorted(range(len(roots)), key=rank)
    last_use = {}
    for pos, i in enumerate(order):
        for j in range(n):
            if roots[i][j]:
                last_use[j] = pos
    states = {(0,) * n: np.eye(1, Lmax + 1, 0, dtype=np.int64)[0]}
    for pos, i in enumerate(order):
        beta = roots[i]
        fac = _factor(*kinds[i], Lmax)
        remaining = len(order) - pos - 1
        closing = [j for j in range(n) if last_use.get(j) == pos]
        new = {}
        for p, poly in states.items():
            lo = int(np.flatnonzero(poly)[0])
            for k, c in fac:
                # a copy of a root at q-degree d moves the partial sum by 2 in l^1
                x = tuple(a + k * b for a, b in zip(p, beta))
                if any(x[j] != target[j] for j in closing):
                    continue
                d0 = max(k - 1, 0) if kinds[i][1] else 0
                if lo + d0 > Lmax:
                    break
                slack = Lmax - lo - d0 + remaining
                if sum(abs(t - y) for t, y in zip(target, x)) > 2 * slack:
                    continue
                conv = np.convolve(poly, c)[:Lmax + 1]
                if not conv.any():
                    continue
                if x in new:
                    new[x] += conv
                else:
                    new[x] = conv
        states = {x: a for x, a in new.items() if a.any()}
        if not states:
            break
    tgt = tuple(target)
    res = states.get(tgt)
    for j in range(n):
        if j not in last_use and tgt[j] != 0:
            res = None
    if res is None:
        return np.zeros(Lmax + 1, dtype=np.int64)
    return res


def signed_partition_sums(n, nu, t, Lmax, lam=None):
    """``[sum_S (-1)^{|S|} #P(lam - sum S)_L for L = 0..Lmax]`` with
    ``lam = lambda_t`` unless given."""
    nu = _check_nu(n, nu)
    target = tuple(lam) if lam is not None else lambda_t(n, nu, t)
    roots = positive_roots_D(n)
    kinds = [(FREE, True)] * len(roots)
    return [int(x) for x in _gf_coefficients(roots, kinds, target, Lmax)]


def signed_partition_sum(n, nu, t, L):
    return signed_partition_sums(n, nu, t, L)[L]


def _vertex_kinds(tree, v):
    kinds = {beta: [FREE, True] for beta in tree.V}
    line = tree.path(v)
    for u in line[1:]:
        w = tree.parent[u]
        kinds[tree.psi[w]][0] = OUT if tree.is_positive(u) else IN
        kinds[tree.phi[u]][1] = False
    return [tuple(kinds[beta]) for beta in tree.V]


def leaf_restricted_sums(tree, v, lam, Lmax):
    """``[sum_{S in D_v} (-1)^{|S|} #P(lam - sum S)_L^v for L = 0..Lmax]``
    for any vertex ``v`` (the root gives the full signed sum)."""
    c = _gf_coefficients(tree.V, _vertex_kinds(tree, v), tuple(lam), Lmax,
                         first_coord_first=v != 0)
    return [int(x) for x in c]


def leaf_restricted_sum(tree, v, lam, L):
    return leaf_restricted_sums(tree, v, lam, L)[L]


def min_partition_size(n, lam, forbidden, Lmax):
    """Smallest ``|m|`` over partitions of ``lam`` into positive roots of
    ``D_n`` with ``m(beta) = 0`` for ``beta`` in ``forbidden``, or ``None``
    if there is none with ``|m| <= Lmax``."""
    roots = positive_roots_D(n)
    forbidden = set(map(tuple, forbidden))
    kinds = [(OUT, beta not in forbidden) for beta in roots]
    c = _gf_coefficients(roots, kinds, tuple(lam), Lmax)
    nz = np.flatnonzero(c)
    return int(nz[0]) if len(nz) else None


def cancellation_threshold(n, t_max, nus=None, slack=3.5):
    """``(t0, failures)``: the smallest ``t <= t_max`` from which the signed
    sum vanishes for every ``nu`` and every ``L <= floor((n + slack) t)`` up
    to ``t_max``, and the list of ``(t, nu, L, value)`` with a non-zero sum."""
    if nus is None:
        nus = list(product((1, -1), repeat=n - 1))
    failures = []
    bad_t = set()
    for t in range(1, t_max + 1):
        Lmax = int((n + slack) * t)
        for nu in nus:
            vals = signed_partition_sums(n, nu, t, Lmax)
            for L, x in enumerate(vals):
                if x:
                    failures.append((t, tuple(nu), L, x))
                    bad_t.add(t)
    t0 = None
    for t in range(t_max, 0, -1):
        if t in bad_t:
            break
        t0 = t
    return t0, failures


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------

def _partition_table(roots, Lmax):
    """``{(mu, L): #P(mu)_L}`` over all ``mu`` reachable with ``L <= Lmax``
    roots, by adding the roots one at a time."""
    table = {((0,) * len(roots[0]), 0): 1}
    for beta in roots:
        new = dict(table)
        for (mu, L), c in table.items():
            x = mu
            for k in range(1, Lmax - L + 1):
                x = _add(x, beta)
                key = (x, L + k)
                new[key] = new.get(key, 0) + c
        table = new
    return table


def naive_signed_sums(n, nu, t, Lmax):
    """The signed sums for ``L = 0..Lmax`` from all ``2^{|V|}`` subsets ``S``;
    each ``#P(lambda_t - sum S)_L`` is read off a direct count of all
    partitions with at most ``Lmax`` parts."""
    nu = _check_nu(n, nu)
    roots = positive_roots_D(n)
    R = np.array(roots, dtype=np.int64)
    N = len(roots)
    idx = np.arange(1 << N, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(N)) & 1
    sums = bits @ R
    signs = 1 - 2 * (bits.sum(axis=1) % 2)
    uniq, inv = np.unique(sums, axis=0, return_inverse=True)
    weight = np.bincount(inv.ravel(), weights=signs, minlength=len(uniq)).astype(np.int64)
    lam = np.array(lambda_t(n, nu, t), dtype=np.int64)
    table = _partition_table(roots, Lmax)
    total = [0] * (Lmax + 1)
    for v, c in zip((lam - uniq).tolist(), weight.tolist()):
        if not c:
            continue
        v = tuple(v)
        for L in range(Lmax + 1):
            total[L] += c * table.get((v, L), 0)
    return total


def naive_signed_sum(n, nu, t, L):
    return naive_signed_sums(n, nu, t, L)[L]
