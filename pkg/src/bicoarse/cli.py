"""``bicoarse`` command line.

Plain mode prints one value per line; ``--json`` wraps the same values in
``{"cmd", "rank", "result", "meta"}``.  Exit status is 0 on success, 1 on a
domain error and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import audit as audit_mod
from . import hsmap, lab, qmorph, zmetric
from .cancel import cancellation_distance, cancellation_length, certificate, oracle_bound
from .errors import BicoarseError
from .kernels import BACKEND
from .moves import geodesic_moves, move_distance
from .words import Word, invert, parse, reduce


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _num(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


class Out:
    """Collects plain lines and the JSON result side by side."""

    def __init__(self):
        self.lines: list[str] = []
        self.result = None
        self.meta: dict = {}

    def value(self, result, *lines):
        self.result = result
        self.lines.extend(str(x) for x in lines)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_norm(a, out):
    w = parse(a.word, a.rank)
    n = cancellation_length(w)
    if a.certificate:
        cert = certificate(w).to_json()
        out.value({"norm": n, "certificate": cert}, n, json.dumps(cert))
    else:
        out.value({"norm": n}, n)


def cmd_dist(a, out):
    w1, w2 = parse(a.w1, a.rank), parse(a.w2, a.rank)
    d = cancellation_distance(w1, w2)
    if a.certificate:
        joined = reduce(invert(reduce(w1)) + reduce(w2))
        cert = certificate(joined).to_json()
        out.value({"distance": d, "word": str(joined), "certificate": cert}, d, json.dumps(cert))
    else:
        out.value({"distance": d}, d)


def cmd_moves(a, out):
    w1, w2 = parse(a.w1, a.rank), parse(a.w2, a.rank)
    out.meta["cap"] = a.cap
    d = move_distance(w1, w2, a.cap)
    shown = "unreached" if d is None else d
    if a.emit_geodesic and d is not None:
        geo = geodesic_moves(w1, w2, a.cap).to_json()
        out.value({"distance": d, "geodesic": geo}, shown, json.dumps(geo))
    else:
        out.value({"distance": d}, shown)


def _load_json(text, flag):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: not valid JSON ({exc.msg})") from None


def _build(factory, spec, rank, flag):
    try:
        return factory(spec, rank)
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        raise UsageError(f"{flag}: malformed spec ({type(exc).__name__}: {exc})") from None


def cmd_qm(a, out):
    q = _build(qmorph.from_json, _load_json(a.spec, "--spec"), a.rank, "--spec")
    out.meta["spec"] = q.to_json()
    if a.action == "eval":
        g = _need_word(a, out)
        v = q(g)
        out.value({"value": _num(v)}, _num(v))
    elif a.action == "defect":
        est = qmorph.defect_on_ball(q, a.radius)
        out.meta["lower_bound"] = True
        out.value(est.to_json(), _num(est.value))
    elif a.action == "homog":
        g = _need_word(a, out)
        defect = Fraction(a.defect) if a.defect is not None else None
        est, bound = qmorph.homogenize(q, g, a.n, defect=defect, radius=a.radius)
        out.meta.update(n=a.n, defect_radius=None if defect is not None else a.radius)
        out.value({"estimate": _num(est), "error_bound": _num(bound)}, _num(est), _num(bound))
    else:
        rho = qmorph.controlledness_modulus(q, a.radius)
        out.value({"rho": [_num(x) for x in rho]}, *(_num(x) for x in rho))


def _need_word(a, out) -> Word:
    if a.word is None:
        raise UsageError(f"qm {a.action}: a word argument is required")
    return parse(a.word, a.rank)


def cmd_hs(a, out):
    spec = _load_json(a.rule, "--rule")
    g = parse(a.word, a.rank)
    if a.action == "replace":
        rule = _build(hsmap.ReplacementRule.from_json, spec, a.rank, "--rule")
        out.meta["rule"] = rule.to_json()
        img = hsmap.replacement_apply(rule, g)
        out.value({"image": str(img)}, img)
    elif a.action == "wobble":
        wob = _build(hsmap.Wobble.from_json, spec, a.rank, "--rule")
        out.meta["rule"] = wob.to_json()
        raw = hsmap.wobbling_apply_raw(wob, g)
        img = reduce(raw)
        out.value({"image": str(img), "raw": str(raw)}, img, raw)
    else:
        rule = _build(hsmap.LocalRule.from_json, spec, a.rank, "--rule")
        out.meta["rule"] = rule.to_json()
        img = hsmap.local_apply(rule, g)
        out.value({"image": str(img), "target_rank": rule.target_rank}, img)


def _gen_set(a) -> zmetric.ZGenSet:
    return zmetric.ZGenSet.parse(a.set, a.exclude or ())


def cmd_z(a, out):
    if a.action == "len":
        if a.k is None or a.set is None:
            raise UsageError("z len: need K and --set")
        S = _gen_set(a)
        out.meta.update(set=S.describe(), cap=a.cap)
        m = zmetric.z_word_length(int(a.k), S, a.cap)
        out.value({"length": m}, "unreached" if m is None else m)
    elif a.action == "window":
        if a.set is None or a.N is None or a.m is None:
            raise UsageError("z window: need --set, --N and --m")
        S = _gen_set(a)
        out.meta.update(set=S.describe(), N=a.N, m=a.m)
        ok, failures = zmetric.window_diameter(S, a.N, a.m)
        out.value({"ok": ok, "failures": failures}, str(ok).lower(),
                  " ".join(map(str, failures)) if failures else "-")
    elif a.action == "factorial":
        if a.k is None:
            raise UsageError("z factorial: need N")
        rep = zmetric.factorial_length_check(int(a.k))
        out.value(rep, rep["length"])
    else:
        if not a.Q or a.q is None:
            raise UsageError("z profinite: need --Q and --q")
        Q = [int(x) for x in a.Q.split(",") if x.strip()]
        wit = zmetric.profinite_witness(Q, a.q, a.steps)
        data = wit.to_json()
        failed = sum(not c["ok"] for c in wit.checks)
        out.meta["checks"] = {"total": len(wit.checks), "failed": failed}
        lines = []
        for k in data["k"]:
            if k["value"] is not None:
                lines.append(k["value"])
            else:
                lines.append("*".join(f"{p}^{e}" for p, e in k["factors"].items()))
        out.value(data, *lines)


def cmd_audit(a, out):
    m = audit_mod.preset(a.preset, a.radius)
    radii = list(range(a.rho + 1)) if a.rho is not None else list(range(a.radius + 1))
    rep = audit_mod.audit(m, radii)
    data = rep.to_json(m.show)
    out.value(data, *(f"{k} {data[k]['value']}" for k in ("assoc", "unit", "inverse", "abelian")),
              "rho " + " ".join(str(v) for v in data["rho"].values()))


def cmd_lab(a, out):
    slope = lab.Slope.parse(a.beta)
    out.meta.update(beta=str(slope), valid_n_up_to=slope.validity)
    if a.action == "u":
        u = lab.u_word(int(a.args[0]), slope)
        out.value({"u": str(u)}, u)
    elif a.action == "phi":
        w = parse(a.args[0], 2)
        v = lab.phi(w, slope)
        out.value({"phi": _num(v), "in_strip": lab.in_strip(w, slope)}, _num(v),
                  str(lab.in_strip(w, slope)).lower())
    elif a.action == "defect":
        u, W = (parse(x, 2) for x in a.args[:2])
        d = lab.commutation_defect(u, W)
        out.value({"defect": d}, d)
    else:
        u = lab.u_word(a.n, slope)
        hits = lab.almost_commuting_search(u, a.D, a.cap, beam_width=a.beam)
        exhaustive = a.beam is None and a.cap <= lab.EXHAUSTIVE_CAP
        out.meta.update(u=str(u), D=a.D, length_cap=a.cap,
                        beam_width=None if exhaustive else (a.beam or 256))
        records = [h.to_json() for h in hits]
        out.value(records, *(json.dumps(r) for r in records))


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--rank", type=int, default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    p = _Parser(prog="bicoarse", description=__doc__.splitlines()[0])
    p.add_argument("--rank", type=int, default=2, help="number of free generators (default 2)")
    p.add_argument("--json", action="store_true", help="emit the JSON envelope")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("norm", parents=[common], help="cancellation length of a word")
    s.add_argument("word")
    s.add_argument("--certificate", action="store_true")
    s.set_defaults(func=cmd_norm)

    s = sub.add_parser("dist", parents=[common], help="cancellation distance")
    s.add_argument("w1")
    s.add_argument("w2")
    s.add_argument("--certificate", action="store_true")
    s.set_defaults(func=cmd_dist)

    s = sub.add_parser("moves", parents=[common], help="move-graph distance and geodesic")
    s.add_argument("w1")
    s.add_argument("w2")
    s.add_argument("--cap", type=int, default=32)
    s.add_argument("--emit-geodesic", action="store_true")
    s.set_defaults(func=cmd_moves)

    s = sub.add_parser("qm", parents=[common], help="quasimorphisms")
    s.add_argument("action", choices=["eval", "defect", "homog", "modulus"])
    s.add_argument("word", nargs="?")
    s.add_argument("--spec", required=True, help='e.g. \'{"brooks":"ab"}\'')
    s.add_argument("--radius", type=int, default=3)
    s.add_argument("--n", type=int, default=64)
    s.add_argument("--defect", default=None, help="defect to use for the error bound")
    s.set_defaults(func=cmd_qm)

    s = sub.add_parser("hs", parents=[common], help="replacement, wobbling and local maps")
    s.add_argument("action", choices=["replace", "wobble", "local"])
    s.add_argument("word")
    s.add_argument("--rule", required=True)
    s.set_defaults(func=cmd_hs)

    s = sub.add_parser("z", parents=[common], help="word metrics on Z and pro-Q witnesses")
    s.add_argument("action", choices=["len", "window", "profinite", "factorial"])
    s.add_argument("k", nargs="?")
    s.add_argument("--set", help="factorials:N | powers:A:E | primes:LIMIT | explicit:1,2,5")
    s.add_argument("--exclude", type=int, nargs="*")
    s.add_argument("--cap", type=int, default=8)
    s.add_argument("--N", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--Q")
    s.add_argument("--q", type=int)
    s.add_argument("--steps", type=int, default=3)
    s.set_defaults(func=cmd_z)

    s = sub.add_parser("audit", parents=[common], help="coarse-group axiom audit on a sample")
    s.add_argument("--preset", required=True, choices=sorted(audit_mod.PRESETS))
    s.add_argument("--radius", type=int, default=2)
    s.add_argument("--rho", type=int, default=None, help="largest r for rho(r) (default radius)")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("lab", parents=[common], help="probes around u_n")
    s.add_argument("action", choices=["u", "phi", "defect", "search"])
    s.add_argument("args", nargs="*")
    s.add_argument("--beta", default="8/5")
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--D", type=int, default=0)
    s.add_argument("--cap", type=int, default=8)
    s.add_argument("--beam", type=int, default=None)
    s.set_defaults(func=cmd_lab)
    return p


_ARITY = {("lab", "u"): 1, ("lab", "phi"): 1, ("lab", "defect"): 2}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        need = _ARITY.get((a.cmd, getattr(a, "action", None)))
        if need is not None and len(a.args) != need:
            raise UsageError(f"lab {a.action}: expected {need} argument(s)")
    except UsageError as exc:
        print(exc, file=stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    out = Out()
    out.meta["backend"] = BACKEND
    out.meta["oracle_bound"] = oracle_bound()
    try:
        a.func(a, out)
    except UsageError as exc:
        print(exc, file=stderr)
        return 2
    except BicoarseError as exc:
        if a.json:
            print(json.dumps({"cmd": a.cmd, "rank": a.rank, "result": None, "error": exc.to_json(),
                              "meta": out.meta}), file=stdout)
        else:
            print(f"error: {exc.code}: {exc}", file=stderr)
        return 1
    if a.json:
        cmd = a.cmd if not hasattr(a, "action") else f"{a.cmd} {a.action}"
        print(json.dumps({"cmd": cmd, "rank": a.rank, "result": out.result, "meta": out.meta}),
              file=stdout)
    else:
        for line in out.lines:
            print(line, file=stdout)
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
