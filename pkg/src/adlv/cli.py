"""
Command-line front end.

    adlv <command> <action> [options]

Every command prints one JSON object with a ``"schema": "v1"`` field.  Exit
status is 0 on success, 2 when a precondition fails (bad input, empty
``B(G, mu)``) and 3 when a computation is refused by the work budget
(``ADLV_WORK_BUDGET``).
"""

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import chenzhu, dn_trees, isocrystal, kostant, satake, weights
from .affine_weyl import straight_classes
from .root_data import FundamentalGroup, build_root_datum, fmt_frac, fmt_vec, parse_vec
from .satake import ResourceError
from .twisted import restrict

SCHEMA = "v1"


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input and output helpers
# ---------------------------------------------------------------------------

def _setup(args):
    datum = build_root_datum(args.group)
    return datum, restrict(datum)


def _vector(rel, text, omega=False):
    """A coweight given in display coordinates, or in fundamental coweight
    coordinates when ``omega`` is set or the length only fits those."""
    if text is None:
        raise UsageError("missing vector argument")
    x = parse_vec(text)
    datum = rel.datum
    display_dim = len(rel.to_display((Fraction(0),) * datum.dim))
    if omega or (len(x) == datum.rank and len(x) != display_dim and len(x) != datum.dim):
        if len(x) != datum.rank:
            raise UsageError("expected %d fundamental coweight coordinates" % datum.rank)
        out = (Fraction(0),) * datum.dim
        for c, w in zip(x, datum.fundamental_coweights):
            out = tuple(a + c * b for a, b in zip(out, w))
        return out
    if len(x) == 1 and x[0] == 0:
        return (Fraction(0),) * datum.dim
    return rel.from_display(x)


def _pretty(v):
    """``(1, 0, 0)`` -> ``"e1"``; general vectors as ``"1/2e1+1/2e2"``."""
    terms = []
    for i, x in enumerate(v):
        if x == 0:
            continue
        coef = "" if x == 1 else "-" if x == -1 else fmt_frac(x)
        terms.append("%se%d" % (coef, i + 1))
    if not terms:
        return "0"
    return "+".join(terms).replace("+-", "-")


def _disp(rel, v):
    return fmt_vec(rel.to_display(v))


def _q(text):
    q = Fraction(text)
    if q <= 1:
        raise UsageError("q must exceed 1")
    return q


def _s_list(text, rel=None, b=None):
    if text is None:
        if rel is None:
            return [1]
        return chenzhu.admissible_s(rel, b, 6)
    out = []
    for part in text.split(","):
        if "..." in part or ".." in part:
            lo, hi = part.replace("...", "..").split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _basic(datum, index):
    try:
        return isocrystal.class_representative(datum, int(index))
    except (TypeError, ValueError) as e:
        raise UsageError(str(e))


def _poly(p):
    return {"polynomial": p.to_json(), "text": repr(p)}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_rootdata(args):
    datum, rel = _setup(args)
    pi1 = FundamentalGroup(datum)
    return {"datum": datum.to_json(), "relative": rel.to_json(),
            "pi1": pi1.to_json(), "pi1_coinvariant_factors": list(pi1.coinvariant_factors)}


def cmd_straight(args):
    datum = build_root_datum(args.group)
    rows = []
    for rep, nu, kappa in straight_classes(datum, args.bound, sigma=not args.no_sigma):
        rows.append({"translation": fmt_vec(rep.translation), "nu_bar": fmt_vec(nu),
                     "kappa": list(kappa)})
    return {"bound": args.bound, "classes": rows}


def cmd_kostant(args):
    datum, rel = _setup(args)
    lam = _vector(rel, args.lam, args.omega)
    if args.action == "p":
        return _poly(kostant.p_poly(rel, lam))
    if args.action == "count":
        return {"count": kostant.kostant_count(rel, lam, args.L)}
    raise UsageError("unknown action")


def cmd_satake(args):
    datum, rel = _setup(args)
    if args.action == "m0":
        lam = _vector(rel, args.lam, args.omega)
        s = args.s or 1
        if s % rel.d:
            raise UsageError("s must be divisible by d = %d" % rel.d)
        target = rel.lambda_power_s(lam, s) if s != 1 or rel.d != 1 else lam
        return {"target": _disp(rel, target), **_poly(satake.m0_poly(rel, target))}
    mu = _vector(rel, args.mu, args.omega)
    if args.action == "matrix":
        rows = [{"lambda": _disp(rel, lam), **_poly(p)} for lam, p in satake.m_row(rel, mu).items()]
        return {"mu": _disp(rel, mu), "row": rows}
    if args.action == "n":
        rows = sorted(((lam, c) for lam, c in satake.n_row(rel, mu).items()), key=lambda t: t[0])
        return {"mu": _disp(rel, mu), "row": [{"lambda": _disp(rel, l), "n": c} for l, c in rows]}
    if args.action == "k":
        lam = _vector(rel, args.lam, args.omega)
        return _poly(satake.k_poly(rel, mu, lam))
    raise UsageError("unknown action")


def cmd_weights(args):
    datum, rel = _setup(args)
    mu = _vector(rel, args.mu, args.omega)
    if args.action == "mult":
        lam = _vector(rel, args.lam, args.omega)
        if args.relative:
            return {"dim": weights.rel_weight_mult(rel, mu, lam)}
        return {"dim": weights.weight_mult(datum, mu, lam)}
    if args.action == "dim":
        return {"dim": weights.weyl_dim(datum, mu)}
    if args.action == "table":
        table = weights.rel_weight_table(rel, mu) if args.relative else weights.weight_table(datum, mu)
        rows = sorted(table.items())
        return {"mu": _disp(rel, mu), "weights": [{"lambda": _disp(rel, l), "dim": m} for l, m in rows]}
    raise UsageError("unknown action")


def cmd_isocrystal(args):
    datum, rel = _setup(args)
    if args.action == "list":
        return {"classes": [b.to_json() for b in isocrystal.basic_classes(datum)]}
    b = _basic(datum, args.b)
    if args.action == "info":
        lam, lam_plus = isocrystal.lambda_b(rel, b)
        return {"class": b.to_json(), "kappa": list(b.kappa),
                "lambda_b": _disp(rel, lam), "lambda_b_plus": _pretty(rel.to_display(lam_plus)),
                "lambda_b_plus_vec": _disp(rel, lam_plus),
                "defect": isocrystal.defect(datum, b), "sign": isocrystal.kottwitz_sign(datum, b)}
    if args.action == "volume":
        if args.K is None:
            rows = []
            for J in isocrystal.standard_parahorics(datum, b):
                num, den = isocrystal.parahoric_volume(datum, b, J)
                rows.append({"K": list(J), "numerator": num, "denominator": den,
                             "R0": fmt_frac(isocrystal.volume_at_zero(num, den))})
            return {"parahorics": rows, "sign": isocrystal.kottwitz_sign(datum, b)}
        J = [int(x) for x in args.K.split(",") if x.strip()]
        num, den = isocrystal.parahoric_volume(datum, b, J)
        return {"K": J, "numerator": num, "denominator": den,
                "R0": fmt_frac(isocrystal.volume_at_zero(num, den))}
    raise UsageError("unknown action")


def cmd_chenzhu(args):
    datum, rel = _setup(args)
    b = _basic(datum, args.b if args.b is not None else chenzhu.default_b(datum).index)
    if args.action == "count":
        mu = _vector(rel, args.mu, args.omega)
        return {"count": chenzhu.count_components(rel, b, mu)}
    if args.action == "dim":
        mu = _vector(rel, args.mu, args.omega)
        return {"dim": fmt_frac(chenzhu.adlv_dimension(rel, b, mu))}
    if args.action == "lambda-set":
        bound = Fraction(args.bound) if args.bound is not None else Fraction(4)
        rows = [e.to_json(rel) for e in chenzhu.enumerate_lambda_set(rel, b, norm_bound=bound)]
        return {"bound": fmt_frac(bound), "rows": rows, "_csv": rows}
    if args.action == "estimate":
        lam = _vector(rel, args.lam, args.omega)
        scan = chenzhu.key_estimate_scan(rel, b, lam, _s_list(args.s, rel, b), _q(args.q))
        out = scan.to_json(rel)
        out["_csv"] = out["rows"]
        return out
    if args.action == "limit":
        mu = _vector(rel, args.mu, args.omega)
        rows = chenzhu.limit_scan(rel, mu, b, _q(args.q), _s_list(args.s, rel, b))
        rows = [{"s": s, "value": fmt_frac(v)} for s, v in rows]
        return {"mu": _disp(rel, mu), "q": args.q, "rows": rows, "_csv": rows}
    if args.action == "suggest":
        mu1, mu2 = chenzhu.suggested_mu(rel, b)
        return {"mu1": _disp(rel, mu1), "mu2": None if mu2 is None else _disp(rel, mu2)}
    raise UsageError("unknown action")


def cmd_dntree(args):
    n = args.n
    if args.action in ("build", "check", "cancel", "leaves"):
        nu = dn_trees.parse_nu(args.nu) if args.nu else (1,) * (n - 1)
    if args.action == "build":
        return dn_trees.build_tree(n, nu).to_json()
    if args.action == "check":
        ok, msg = dn_trees.check_admissible(dn_trees.build_tree(n, nu))
        return {"admissible": ok, "message": msg}
    if args.action == "cancel":
        if args.t is None or args.L is None:
            raise UsageError("--t and --L are required")
        v = dn_trees.signed_partition_sum(n, nu, args.t, args.L)
        return {"n": n, "nu": list(nu), "t": args.t, "L": args.L, "value": v, "vanishes": v == 0}
    if args.action == "threshold":
        t0, failures = dn_trees.cancellation_threshold(n, args.t or 2)
        return {"n": n, "t_max": args.t or 2, "threshold": t0,
                "failures": [{"t": t, "nu": list(nu), "L": L, "value": x}
                             for t, nu, L, x in failures[:200]],
                "failure_count": len(failures)}
    raise UsageError("unknown action")


COMMANDS = {
    "rootdata": cmd_rootdata, "straight": cmd_straight, "kostant": cmd_kostant,
    "satake": cmd_satake, "weights": cmd_weights, "isocrystal": cmd_isocrystal,
    "chenzhu": cmd_chenzhu, "dntree": cmd_dntree,
}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p, group=True):
    if group:
        p.add_argument("--group", required=True, help='group spec such as "B4" or "D5:2"')
    p.add_argument("--omega", action="store_true",
                   help="read vectors in fundamental coweight coordinates")
    p.add_argument("--csv", action="store_true", help="print the rows as CSV instead of JSON")


def build_parser():
    p = _Parser(prog="adlv", description=__doc__.strip().splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("rootdata")
    _common(q)
    q = sub.add_parser("straight")
    _common(q)
    q.add_argument("--bound", type=int, default=4)
    q.add_argument("--no-sigma", action="store_true")

    q = sub.add_parser("kostant")
    q.add_argument("action", choices=["p", "count"])
    _common(q)
    q.add_argument("--lambda", dest="lam")
    q.add_argument("--L", type=int)

    q = sub.add_parser("satake")
    q.add_argument("action", choices=["m0", "matrix", "n", "k"])
    _common(q)
    q.add_argument("--lambda", dest="lam")
    q.add_argument("--mu")
    q.add_argument("--s", type=int)

    q = sub.add_parser("weights")
    q.add_argument("action", choices=["mult", "dim", "table"])
    _common(q)
    q.add_argument("--mu")
    q.add_argument("--lambda", dest="lam")
    q.add_argument("--relative", action="store_true")

    q = sub.add_parser("isocrystal")
    q.add_argument("action", choices=["info", "list", "volume"])
    _common(q)
    q.add_argument("--b", type=int, default=1)
    q.add_argument("--K")

    q = sub.add_parser("chenzhu")
    q.add_argument("action", choices=["count", "dim", "lambda-set", "estimate", "limit", "suggest"])
    _common(q)
    q.add_argument("--b", type=int)
    q.add_argument("--mu")
    q.add_argument("--lambda", dest="lam")
    q.add_argument("--q", default="2")
    q.add_argument("--s", help='comma list or range such as "2,4,6" or "1..8"')
    q.add_argument("--bound")

    q = sub.add_parser("dntree")
    q.add_argument("action", choices=["build", "check", "cancel", "threshold"])
    q.add_argument("--n", type=int, default=5)
    q.add_argument("--nu")
    q.add_argument("--t", type=int)
    q.add_argument("--L", type=int)
    q.add_argument("--csv", action="store_true")

    q = sub.add_parser("batch")
    q.add_argument("config")
    q.add_argument("--out", default="adlv-report")
    q.add_argument("--jobs", type=int, default=1)
    return p


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------

def _execute(argv):
    """``(exit_code, payload)`` for one invocation."""
    try:
        args = build_parser().parse_args(argv)
        if args.command == "batch":
            return 0, batch(args.config, args.out, args.jobs)
        result = COMMANDS[args.command](args)
        return 0, {"schema": SCHEMA, "command": [args.command] + ([args.action] if hasattr(args, "action") else []),
                   **result}
    except ResourceError as e:
        return 3, {"schema": SCHEMA, "error": "resource", "message": str(e)}
    except (UsageError, ValueError, KeyError, ZeroDivisionError) as e:
        return 2, {"schema": SCHEMA, "error": type(e).__name__, "message": str(e)}


def _render(payload, as_csv):
    rows = payload.pop("_csv", None)
    if as_csv and rows:
        buf = io.StringIO()
        keys = list(rows[0].keys())
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        return buf.getvalue()
    return json.dumps(payload, sort_keys=True) + "\n"


def run(argv, out=None):
    out = out or sys.stdout
    code, payload = _execute(list(argv))
    out.write(_render(payload, "--csv" in argv))
    return code


def _atomic_write(path, text):
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    with os.fdopen(fd, "w") as f:
        f.write(text)
    os.replace(tmp, path)


def _batch_row(item):
    i, row, out_dir = item
    argv = row["argv"] if isinstance(row, dict) else row
    code, payload = _execute([str(a) for a in argv])
    payload.pop("_csv", None)
    name = "row-%04d.json" % i
    _atomic_write(os.path.join(out_dir, name),
                  json.dumps({"argv": argv, "exit": code, "result": payload}, sort_keys=True) + "\n")
    return {"row": i, "argv": argv, "exit": code, "file": name}


def batch(config, out_dir, jobs=1):
    """Run every row of a JSON config ``{"rows": [{"argv": [...]}, ...]}``
    (or a bare list of argv lists), writing one file per row and an index.
    Row failures are recorded in the index and do not stop the batch."""
    with open(config) as f:
        conf = json.load(f)
    rows = conf.get("rows", []) if isinstance(conf, dict) else conf
    os.makedirs(out_dir, exist_ok=True)
    items = [(i, r, out_dir) for i, r in enumerate(rows)]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            index = list(ex.map(_batch_row, items))
    else:
        index = [_batch_row(it) for it in items]
    summary = {"schema": SCHEMA, "rows": index, "failed": sum(1 for r in index if r["exit"])}
    _atomic_write(os.path.join(out_dir, "index.json"), json.dumps(summary, sort_keys=True) + "\n")
    return {"out": out_dir, "rows": len(index), "failed": summary["failed"]}


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
