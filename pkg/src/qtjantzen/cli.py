"""Command-line front end.

Every subcommand prints one JSON document (schema 1) or, where offered, a
TSV table.  Exit codes: 0 success, 2 validation error, 3 precision exhausted.
"""
import argparse
import json
import os
import random
import sys

from .cartan import CartanDatum, IMonomial, embed_e, qcartan_inverse
from .characters import CharTable
from .errors import AlgorithmFailure, InsufficientPrecision, ValidationError
from .mixed import check_associativity, check_duality, et_mixed, jantzen_class, m_n

SCHEMA = 1
CONFIG_KEYS = {"type", "precision", "cap", "format", "seed", "backend", "engine", "count"}


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}")


def read_config(path):
    out = {}
    with open(path) as fh:
        for ln, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{ln}: expected key=value")
            k, v = (s.strip() for s in line.split("=", 1))
            if k not in CONFIG_KEYS:
                raise UsageError(f"{path}:{ln}: unknown config key {k!r}")
            out[k] = v
    return out


def _merge_config(args):
    cfg = read_config(args.config) if args.config else {}
    for k, v in cfg.items():
        if getattr(args, k, None) is None and hasattr(args, k):
            cur = v
            if k in ("precision", "cap", "seed", "count"):
                try:
                    cur = int(v)
                except ValueError:
                    raise UsageError(f"config key {k} needs an integer")
            setattr(args, k, cur)
    return args


def _env_precision():
    v = os.environ.get("JANTZEN_PRECISION")
    if v is None:
        return None
    try:
        n = int(v)
    except ValueError:
        raise UsageError("JANTZEN_PRECISION must be an integer")
    if n < 1:
        raise UsageError("JANTZEN_PRECISION must be positive")
    return n


def _datum(args):
    return CartanDatum.of_type(args.type or "A1")


def _table(args, datum):
    return CharTable(datum, cap=args.cap) if args.cap else CharTable(datum)


def _monomial(args, datum):
    if not args.monomial:
        raise UsageError("--monomial is required")
    return IMonomial.parse(args.monomial, datum)


def _qt_json(x):
    return x.to_json()


# --- subcommands -------------------------------------------------------------

def cmd_qcm(args):
    d = _datum(args)
    deg = args.max_degree or 6
    pairs = [(args.i, args.j)] if args.i else [(i, j) for i in range(1, d.n + 1) for j in range(1, d.n + 1)]
    entries = {f"{i},{j}": qcartan_inverse(d, i, j, deg) for i, j in pairs}
    out = {"type": d.name, "max_degree": deg, "ctilde": entries}
    if args.verify:
        out["verification"] = {"torus_relations": [_torus_relation(d, i, j) for i, j in pairs]}
    return out


def _torus_relation(d, i, j):
    """Exponent e with Y~x Y~y = t^e Y~y Y~x, against -N(x, y) from the c~ coefficients."""
    from .cartan import n_form
    from .laurent import LaurentHalf
    from .torus import generator, qt_mul
    x = (i, d.parity[i - 1] + 2)
    y = (j, d.parity[j - 1])
    gx, gy = generator(d, *x), generator(d, *y)
    e = -n_form(d, x, y)
    holds = qt_mul(gx, gy) == qt_mul(gy, gx).scale(LaurentHalf.t(e))
    return {"x": f"Y({x[0]},{x[1]})", "y": f"Y({y[0]},{y[1]})", "exponent": e, "holds": holds}


def cmd_ft(args):
    d = _datum(args)
    tab = _table(args, d)
    i, p = _ints(args.node) if args.node else (1, 0)
    x = tab.ft_fundamental(i, p)
    out = {"node": [i, p], "ft": _qt_json(x)}
    if args.verify:
        out["verification"] = {"in_grothendieck_ring": tab.in_grothendieck_ring(x),
                               "route": str(tab.route_used.get((i, p), tab.route))}
    return out


def cmd_et(args):
    d = _datum(args)
    tab = _table(args, d)
    m = _monomial(args, d)
    return {"monomial": str(m), "et": _qt_json(tab.et_standard(m))}


def cmd_lt(args):
    d = _datum(args)
    tab = _table(args, d)
    m = _monomial(args, d)
    x = tab.lt_canonical(m)
    out = {"monomial": str(m), "lt": _qt_json(x)}
    if args.verify:
        out["verification"] = {"bar_invariant": x.bar() == x}
    return out


def cmd_klpoly(args):
    d = _datum(args)
    tab = _table(args, d)
    m = _monomial(args, d)
    P = tab.p_polynomials(m)
    rows = sorted(((mu, c) for mu, c in P.items() if mu != m), key=lambda kv: (-d.height(kv[0]), kv[0].sort_key()))
    if args.format == "tsv":
        return "\n".join(["monomial\tP"] + [f"{mu}\t{c}" for mu, c in rows]) + "\n"
    return {"monomial": str(m), "P": {str(mu): c.to_json() for mu, c in rows}}


def cmd_et_mixed(args):
    d = _datum(args)
    tab = _table(args, d)
    if args.factors:
        ms = [IMonomial.parse(f.strip(), d) if f.strip() != "1" else IMonomial()
              for f in args.factors.split(";") if f.strip()]
        return {"factors": [str(m) for m in ms], "m_n": m_n(d, ms, tab).to_json()}
    eps = _ints(args.seq or "")
    if not eps:
        raise UsageError("--seq or --factors is required")
    return {"seq": list(eps), "et_mixed": _qt_json(et_mixed(d, eps, tab)),
            "class": jantzen_class(d, eps, tab).to_json()}


def cmd_jantzen(args):
    from .jantzen import bridge_sequences, jantzen_filtration, poincare_bridge
    eps = _ints(args.seq or "")
    if not eps and args.max_len:
        if (args.engine or "lattice") != "lattice" or _datum(args).n != 1:
            raise UsageError("the bridge sweep runs the lattice engine in type A1")
        seqs = list(bridge_sequences(args.max_len, (1, 3, 5, 7)))
        fails = [list(e) for e in seqs if not poincare_bridge(e)[0]]
        return {"engine": "lattice", "sweep": {"max_len": args.max_len, "entries": [1, 3, 5, 7],
                                               "sequences": len(seqs), "bridge_failures": fails}}
    if not eps:
        raise UsageError("--seq (or --max-len for a bridge sweep) is required")
    engine = args.engine or "lattice"
    d = _datum(args)
    if engine == "torus":
        tab = _table(args, d)
        cls = jantzen_class(d, eps, tab)
        out = {"engine": "torus", "seq": list(eps), "class": cls.to_json()}
        if d.simply_laced:
            graded = {}
            for m, c in cls.terms.items():
                dim = tab.dim_simple(m)
                for k2, v in c.items():
                    graded[k2] = graded.get(k2, 0) + v * dim
            out["graded_dims"] = {_half_key(k2): v for k2, v in sorted(graded.items()) if v}
        return out
    if engine != "lattice":
        raise UsageError(f"unknown engine {engine!r}")
    if d.n != 1:
        raise UsageError("the lattice engine is implemented for type A1")
    prec = args.precision or _env_precision()
    rep = jantzen_filtration(eps, backend=args.backend or "modp", precision=prec)
    out = {"engine": "lattice"}
    out.update(rep.to_json())
    if args.verify:
        ok, lat, tor = poincare_bridge(eps, rep)
        again = jantzen_filtration(eps, backend=args.backend or "modp", precision=rep.precision_used + 4)
        out["verification"] = {"bridge": ok, "torus_poincare": tor.to_json(),
                               "precision_plus_4_agrees": again.graded_dims == rep.graded_dims}
    return out


def _half_key(k2):
    return str(k2 // 2) if k2 % 2 == 0 else f"{k2}/2"


def _random_monomial(rng, datum, max_factors=2):
    n = rng.randint(1, max_factors)
    m = IMonomial()
    for _ in range(n):
        i = rng.randint(1, datum.n)
        p = next(p for p in range(rng.randint(0, 4), 20) if datum.in_ihat(i, p))
        m = m * IMonomial.Y(i, p)
    return m


def cmd_assoc_suite(args):
    d = _datum(args)
    tab = _table(args, d)
    rng = random.Random(args.seed if args.seed is not None else 0)
    count = args.count or 20
    max_len = args.max_len or 3
    sample = [[_random_monomial(rng, d) for _ in range(rng.randint(2, max_len))] for _ in range(count)]
    fails = check_associativity(d, sample, tab)
    return {"type": args.type or "A1", "seed": args.seed or 0, "cases": count, "failures": fails}


def cmd_duality_suite(args):
    d = _datum(args)
    tab = _table(args, d)
    rng = random.Random(args.seed if args.seed is not None else 0)
    count = args.count or 20
    max_len = args.max_len or 3
    fails = []
    for _ in range(count):
        seq = []
        for _k in range(rng.randint(1, max_len)):
            i = rng.randint(1, d.n)
            p = next(p for p in range(rng.randint(0, 4), 20) if d.in_ihat(i, p))
            seq.append(embed_e(d, i, p))
        if not check_duality(d, seq, tab):
            fails.append(seq)
    return {"type": args.type or "A1", "seed": args.seed or 0, "cases": count, "failures": fails}


def _dkey(d):
    return ",".join(map(str, d))


def cmd_unipotent(args):
    from .unipotent import QuiverData, SymCartan, UnipotentTable
    C = SymCartan.of_type(args.type or "A2")
    word = _ints(args.word or "1,2,1")
    quiver = None
    if args.quiver:
        quiver = [tuple(_ints(a.replace(">", ","))) for a in args.quiver.split(";") if a]
    qd = QuiverData(C, word, quiver)
    if not qd.adapted:
        raise ValidationError(f"word {word} is not adapted to any quiver" if quiver is None
                              else f"word {word} is not adapted to the given quiver")
    tab = UnipotentTable(qd)
    out = {"type": C.name, "word": list(word), "quiver": [list(a) for a in qd.quiver],
           "roots": [list(r) for r in qd.roots]}
    if args.action == "dual-canonical":
        beta = _ints(args.weight or "")
        if len(beta) != C.n:
            raise UsageError("--weight needs one entry per node")
        labels, P, _Q, B = tab.dual_canonical_data(beta)
        out["weight"] = list(beta)
        out["dual_canonical"] = {_dkey(d): B[d].to_json() for d in labels}
        out["pbw_in_canonical"] = {_dkey(d): {_dkey(d2): c.to_json() for d2, c in P[d].items()} for d in labels}
        if args.verify:
            from .unipotent import iota_prime
            out["verification"] = {"iota_invariant": all(iota_prime(b) == b for b in B.values())}
    elif args.action == "mixed":
        eps = _ints(args.seq or "")
        if not eps:
            raise UsageError("--seq is required")
        exp = tab.mixed_dual(eps)
        out["seq"] = list(eps)
        out["expansion"] = {_dkey(d): exp[d].to_json() for d in sorted(exp, reverse=True)}
        if args.verify:
            op = tab.mixed_dual(eps[::-1])
            base = tab.mixed_dual(tuple(sorted(eps)))
            out["verification"] = {
                "bar_dual_of_reverse": {d: c.bar() for d, c in exp.items()} == op,
                "nonnegative": all(c.is_nonnegative() for c in exp.values()),
                "t1_matches_sorted": {d: c.ev1() for d, c in exp.items()} == {d: c.ev1() for d, c in base.items()}}
    else:
        raise UsageError("unipotent needs an action: dual-canonical or mixed")
    return out


COMMANDS = {
    "qcm": cmd_qcm, "ft": cmd_ft, "et": cmd_et, "lt": cmd_lt, "klpoly": cmd_klpoly,
    "et-mixed": cmd_et_mixed, "jantzen": cmd_jantzen, "assoc-suite": cmd_assoc_suite,
    "duality-suite": cmd_duality_suite, "unipotent": cmd_unipotent,
}


def build_parser():
    p = _Parser(prog="qtjantzen", description="Quantum Grothendieck rings and Jantzen filtrations.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("action", nargs="?", help="sub-action for 'unipotent'")
    p.add_argument("--type")
    p.add_argument("--config")
    p.add_argument("--format", choices=["json", "tsv"])
    p.add_argument("--verify", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--cap", type=int)
    p.add_argument("--precision", type=int)
    p.add_argument("--backend", choices=["modp", "rational", "exact"])
    p.add_argument("--engine", choices=["torus", "lattice"])
    p.add_argument("--max-degree", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--node")
    p.add_argument("--monomial")
    p.add_argument("--seq")
    p.add_argument("--factors", help="dominant monomials 'Y(1,2);Y(1,0)' for m_n")
    p.add_argument("--max-len", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--word")
    p.add_argument("--weight")
    p.add_argument("--quiver", help="arrows 'a>b;c>d'")
    return p


def run(argv):
    """(exit code, stdout text, stderr text)."""
    try:
        args = _merge_config(build_parser().parse_args(argv))
        if args.format == "tsv" and args.command != "klpoly":
            raise UsageError("--format tsv is only offered by klpoly")
        res = COMMANDS[args.command](args)
        if isinstance(res, str):
            return 0, res, ""
        doc = {"schema": SCHEMA, "command": args.command}
        doc.update(res)
        return 0, json.dumps(doc, indent=2) + "\n", ""
    except InsufficientPrecision as exc:
        err = {"schema": SCHEMA, "error": "InsufficientPrecision", "message": str(exc), "order": exc.order}
        return 3, "", json.dumps(err) + "\n"
    except (ValidationError, OSError) as exc:
        err = {"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc)}
        return 2, "", json.dumps(err) + "\n"
    except AlgorithmFailure as exc:
        err = {"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc)}
        return 1, "", json.dumps(err) + "\n"


def main(argv=None):
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
