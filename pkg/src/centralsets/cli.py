"""Command line entry points.

Exit codes: 0 success, 1 property refuted, 2 usage or parse error,
3 precondition failed, 4 resource cap hit.  Stdout is "key: value" lines.
LARGENESS_SEARCH_CAP (an integer) replaces the default search bounds.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .corpus import named
from .errors import (
    BoundsError,
    CentralSetsError,
    ParseError,
    PreconditionError,
    ResourceCapError,
    UniverseMismatch,
    ValidationError,
    WitnessError,
)
from .filters import (
    filter_from_ip_sequence,
    is_F_central,
    is_F_good_bounded,
    is_F_IP,
    is_F_J_bounded,
    is_idempotent_filter,
    is_pws_F_syndetic,
)
from .formats import (
    format_witness_map,
    parse_families,
    parse_family,
    parse_filter_base,
    parse_int_sequences,
    parse_witness_map,
)
from .hales_jewett import format_certificate, hj_number
from .homomorphisms import Homomorphism, is_good_homomorphism, verify_preservation
from .ideals import decompose
from .largeness import is_central, is_j_set_bounded, is_piecewise_syndetic, is_syndetic, is_thick
from .semigroup import FiniteSemigroup, parse_semigroup
from .window import CstBounds, classify_window, cst_witness_commutative, parse_window_set
from .witness import AmbientGroup, Subgroup, cst_build, cst_verify, ipr_star_extract

__all__ = ["main", "search_cap"]

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_PRECONDITION, EXIT_CAP = range(5)


class _Refuted(Exception):
    pass


def search_cap(default: int) -> int:
    """The default bound, unless LARGENESS_SEARCH_CAP overrides it."""
    raw = os.environ.get("LARGENESS_SEARCH_CAP")
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"LARGENESS_SEARCH_CAP must be an integer, got {raw!r}") from None
    if value < 1:
        raise ParseError("LARGENESS_SEARCH_CAP must be positive")
    return value


class Out:
    def __init__(self):
        self.lines: list[str] = []

    def __call__(self, key, value):
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif value is None:
            value = "none"
        self.lines.append(f"{key}: {value}")

    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines)


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _load_sgp(path) -> FiniteSemigroup:
    """A .sgp file, or a corpus name such as ``corpus:right-zero-3``."""
    if str(path).startswith("corpus:"):
        try:
            return named(str(path)[len("corpus:"):])
        except (KeyError, ValueError):
            raise ParseError(f"unknown corpus semigroup {path!r}") from None
    return parse_semigroup(_read(path))


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ParseError(f"expected a comma-separated integer list, got {text!r}") from None


def _fmt_witness(S, w) -> str:
    return f"m={w.m} a={','.join(S.label(v) for v in w.a)} t={','.join(map(str, w.t))}"


# ---------------------------------------------------------------- sgp

def cmd_validate(args, out):
    try:
        S = _load_sgp(args.file)
    except ValidationError as exc:
        if exc.counterexample is None:
            raise
        out("associative", False)
        out("counterexample", ",".join(map(str, exc.counterexample)))
        raise _Refuted() from None
    out("order", S.order)
    out("associative", True)
    out("identity", S.label(S.identity) if S.identity is not None else None)
    out("commutative", S.commutative)


def cmd_kernel(args, out):
    S = _load_sgp(args.file)
    d = decompose(S)
    out("idempotents", S.format_set(d.idempotents))
    out("minimal-left-ideals", " ".join("{" + S.format_set(L) + "}" for L in d.minimal_left))
    out("minimal-right-ideals", " ".join("{" + S.format_set(R) + "}" for R in d.minimal_right))
    out("kernel", S.format_set(d.kernel))
    out("minimal-idempotents", S.format_set(d.minimal_idempotents))


def cmd_classify(args, out):
    S = _load_sgp(args.file)
    A = S.parse_set(args.set)
    thick, x = is_thick(S, A)
    out("thick", thick)
    if thick:
        out("thick-witness", S.label(x))
    synd, G = is_syndetic(S, A)
    out("syndetic", synd)
    if synd:
        out("syndetic-witness", S.format_set(G))
    pws = is_piecewise_syndetic(S, A)
    out("pws(comb)", pws.combinatorial)
    if pws.witness:
        G, x = pws.witness
        out("pws-witness", f"G={S.format_set(G)} x={S.label(x)}")
    out("pws(alg)", pws.algebraic)
    central, e = is_central(S, A)
    out("central", central)
    if central:
        out("central-witness", S.label(e))


def cmd_jset(args, out):
    S = _load_sgp(args.file)
    A = S.parse_set(args.set)
    family = parse_family(S, _read(args.family))
    max_m = args.max_m if args.max_m is not None else min(search_cap(3), family.L)
    v = is_j_set_bounded(S, A, family, max_m)
    out("jset", v.status.value)
    out("max-m", max_m)
    if v.established:
        out("witness", _fmt_witness(S, v.witness))
    else:
        raise _Refuted()


def cmd_filter_classify(args, out):
    S = _load_sgp(args.file)
    F = parse_filter_base(S, _read(args.base))
    A = S.parse_set(args.set)
    idem = is_idempotent_filter(S, F)
    out("closure", S.format_set(F.closure_hint))
    out("idempotent-filter", idem.idempotent)
    if not idem.idempotent:
        raise PreconditionError("the closure is not a subsemigroup, so the notions are undefined")
    pws = is_pws_F_syndetic(S, F, A)
    out("pws-F(comb)", pws.combinatorial)
    out("pws-F(alg)", pws.algebraic)
    central, e = is_F_central(S, F, A)
    out("F-central", central)
    if central:
        out("F-central-witness", S.label(e))
    ip, e = is_F_IP(S, F, A)
    out("F-IP", ip)
    if ip:
        out("F-IP-witness", S.label(e))
    ips, missing = is_F_IP(S, F, A, star=True)
    out("F-IP*", ips)
    if not ips:
        out("F-IP*-missing", S.label(missing))
    if args.family:
        family = parse_family(S, _read(args.family))
        good = is_F_good_bounded(S, F, family, family.L)
        out("family-F-good", good.status.value)
        if good.established:
            out("family-k", good.witness.k)
            max_m = args.max_m if args.max_m is not None else min(search_cap(3), family.L)
            v = is_F_J_bounded(S, F, A, family, max_m, good)
            out("F-J", v.status.value)
            if v.established:
                out("F-J-witness", _fmt_witness(S, v.witness))


def cmd_cst(args, out):
    S = _load_sgp(args.file)
    F = parse_filter_base(S, _read(args.base))
    A = S.parse_set(args.set)
    families = parse_families(S, _read(args.families))
    hj_cap = args.hj_cap if args.hj_cap is not None else search_cap(4)
    wmap = cst_build(S, F, A, families, size_cap=args.size_cap, hj_cap=hj_cap)
    text = format_witness_map(wmap)
    if args.out:
        Path(args.out).write_text(text)
    out("subsets", len(wmap.entries))
    out("idempotent", S.label(wmap.idempotent))
    for G in wmap.domain:
        out("subset " + ",".join(str(g + 1) for g in G), _fmt_witness(S, wmap.entries[G]))
    out("verified", True)


def cmd_cst_verify(args, out):
    S = _load_sgp(args.file)
    wmap = parse_witness_map(S, _read(args.witness))
    A = wmap.target if args.set is None else S.parse_set(args.set)
    ok, failures = cst_verify(S, A, wmap)
    out("subsets", len(wmap.entries))
    out("verified", ok)
    for f in failures:
        out("failure", _fmt_failure(S, f))
    if not ok:
        raise _Refuted()


def _subset_label(G) -> str:
    return "{" + ",".join(str(g + 1) for g in G) + "}"


def _fmt_failure(S, failure) -> str:
    kind = failure[0]
    if kind == "tau-order":
        return f"tau-order {_subset_label(failure[1])} < {_subset_label(failure[2])}"
    _, chain, _, value = failure
    return f"product chain={'<'.join(_subset_label(G) for G in chain)} value={S.label(value)}"


# ---------------------------------------------------------------- hj

def cmd_hj(args, out):
    max_n = args.max_n if args.max_n is not None else search_cap(4)
    res = hj_number(args.colors, args.alphabet, max_n)
    out("result", str(res))
    if res.certificate_n is not None:
        out("certificate-n", res.certificate_n)
        if args.certificate:
            Path(args.certificate).write_text(format_certificate(res.certificate))
    if res.value is None:
        raise ResourceCapError(f"HJ({args.colors},{args.alphabet}) exceeds max-n {max_n}")


# ---------------------------------------------------------------- window

def cmd_window_classify(args, out):
    A = parse_window_set(args.set, args.max)
    verdicts = classify_window(A, args.gap, args.block)
    out("window", f"1-{args.max}")
    out("size", len(A))
    for name in ("syndetic", "thick", "pws"):
        v = verdicts[name]
        out(name, v.status.value)
        if v.established:
            out(name + "-witness", " ".join(f"{k}={_plain(v.witness[k])}" for k in sorted(v.witness)))


def _plain(v):
    if isinstance(v, (list, tuple)):
        return "-".join(map(str, v)) if len(v) == 2 else ",".join(map(str, v))
    return str(v)


def cmd_window_cst(args, out):
    A = parse_window_set(args.set, args.max)
    ys = parse_int_sequences(_read(args.seqs))
    a_max = args.a_max if args.a_max is not None else search_cap(20)
    v = cst_witness_commutative(A, ys, args.depth, CstBounds(a_max=a_max, h_size=args.h_size))
    out("cst", v.status.value)
    if not v.established:
        raise _Refuted()
    chain = v.witness
    for n in range(chain.depth):
        out(f"level {n + 1}", f"a={chain.a[n]} H={','.join(map(str, chain.H[n]))}")
    out("verified", True)


def cmd_window_from_ip(args, out):
    x = _ints(args.seq)
    filt, report = filter_from_ip_sequence(x, guard=args.guard)
    out("L", filt.L)
    out("tails", len(filt.tails))
    nested = all(b <= a for a, b in zip(filt.tails, filt.tails[1:]))
    out("nested", nested)
    out("closure", ",".join(map(str, sorted(filt.closure()))))
    if args.check_idempotent:
        out("guard", report.guard)
        out("idempotency-checks", len(report.entries))
        out("idempotency", "vacuous" if report.vacuous else report.passed)
        for m, y, _ in report.failures:
            out("idempotency-failure", f"m={m} y={y}")
        if not report.passed:
            raise _Refuted()


# ---------------------------------------------------------------- extract

def _ambient(spec: str):
    if spec == "z":
        return AmbientGroup("z"), None
    if spec.startswith("zmod:"):
        n = _ints(spec[5:])
        if len(n) != 1:
            raise ParseError(f"bad ambient {spec!r}")
        return AmbientGroup("zmod", n[0]), None
    if spec.startswith("cayley:"):
        S = _load_sgp(spec[7:])
        return AmbientGroup("cayley", S=S), S
    raise ParseError(f"ambient must be z, zmod:<n> or cayley:<file>, got {spec!r}")


def cmd_extract_ipr(args, out):
    amb, S = _ambient(args.ambient)
    if amb.model == "z":
        k = args.subgroup.rstrip("Zz")
        sub = Subgroup(multiple=_ints(k)[0] if k else 0)
        H = _ints(args.syndetic_H)
        xs = _ints(args.seq)
    elif amb.model == "zmod":
        sub = Subgroup(members=frozenset(v % amb.n for v in _ints(args.subgroup)))
        H = [v % amb.n for v in _ints(args.syndetic_H)]
        xs = [v % amb.n for v in _ints(args.seq)]
    else:
        sub = Subgroup(members=frozenset(S.parse_set(args.subgroup)))
        H = list(S.parse_set(args.syndetic_H))
        xs = [S.parse_element(tok) for tok in args.seq.split(",")]
    res = ipr_star_extract(amb, sub, H, xs)
    label = S.label if S is not None else str
    out("m", res.m)
    out("n", res.n)
    out("block", label(res.block))
    out("color", label(res.color))
    out("prefixes", ",".join(label(p) for p in res.prefixes))


# ---------------------------------------------------------------- homo

def cmd_homo_check(args, out):
    S = _load_sgp(getattr(args, "from"))
    T = _load_sgp(args.to)
    phi = Homomorphism(S, T, _ints(args.map))
    F = parse_filter_base(S, _read(args.fbase))
    G = parse_filter_base(T, _read(args.gbase))
    good, pairing = is_good_homomorphism(phi, F, G, args.scope)
    out("homomorphism", True)
    out("good", good)
    if not good:
        bad = next(X for X, Y in pairing.items() if Y is None)
        out("not-a-preimage", S.format_set(bad))
        raise _Refuted()
    if args.set is None:
        return
    A = S.parse_set(args.set)
    family = parse_family(T, _read(args.family)) if args.family else None
    max_m = args.max_m if args.max_m is not None else search_cap(2)
    rep = verify_preservation(phi, F, G, A, args.mode, args.scope, family, max_m)
    out("image", T.format_set(rep.image))
    out("in-scope", rep.in_scope)
    out("conclusion", rep.conclusion.status.value)
    if rep.mode == "fj" and rep.conclusion.established:
        out("image-witness", _fmt_witness(T, rep.conclusion.witness))
    out("falsification", rep.falsified)
    if not rep.conclusion_holds:
        raise _Refuted()


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="centralsets", description=__doc__.splitlines()[0])
    groups = p.add_subparsers(dest="group", required=True)

    sgp = groups.add_parser("sgp", help="finite semigroups given by Cayley tables")
    sc = sgp.add_subparsers(dest="command", required=True)
    c = sc.add_parser("validate")
    c.add_argument("file")
    c.set_defaults(run=cmd_validate)
    c = sc.add_parser("kernel")
    c.add_argument("file")
    c.set_defaults(run=cmd_kernel)
    c = sc.add_parser("classify")
    c.add_argument("file")
    c.add_argument("--set", required=True)
    c.set_defaults(run=cmd_classify)
    c = sc.add_parser("jset")
    c.add_argument("file")
    c.add_argument("--set", required=True)
    c.add_argument("--family", required=True)
    c.add_argument("--max-m", type=int)
    c.set_defaults(run=cmd_jset)
    flt = sc.add_parser("filter")
    fc = flt.add_subparsers(dest="subcommand", required=True)
    c = fc.add_parser("classify")
    c.add_argument("file")
    c.add_argument("--base", required=True)
    c.add_argument("--set", required=True)
    c.add_argument("--family")
    c.add_argument("--max-m", type=int)
    c.set_defaults(run=cmd_filter_classify)
    c = sc.add_parser("cst")
    c.add_argument("file")
    c.add_argument("--base", required=True)
    c.add_argument("--set", required=True)
    c.add_argument("--families", required=True)
    c.add_argument("--out")
    c.add_argument("--size-cap", type=int, default=3)
    c.add_argument("--hj-cap", type=int)
    c.set_defaults(run=cmd_cst)
    c = sc.add_parser("cst-verify")
    c.add_argument("file")
    c.add_argument("witness")
    c.add_argument("--set", help="check against this set instead of the recorded target")
    c.set_defaults(run=cmd_cst_verify)

    c = groups.add_parser("hj", help="Hales-Jewett numbers by exhaustive search")
    c.add_argument("--colors", type=int, required=True)
    c.add_argument("--alphabet", type=int, required=True)
    c.add_argument("--max-n", type=int)
    c.add_argument("--certificate")
    c.set_defaults(run=cmd_hj)

    win = groups.add_parser("window", help="statements about (N,+) inside [1,W]")
    wc = win.add_subparsers(dest="command", required=True)
    c = wc.add_parser("classify")
    c.add_argument("--max", type=int, required=True)
    c.add_argument("--set", required=True)
    c.add_argument("--gap", type=int, required=True)
    c.add_argument("--block", type=int, required=True)
    c.set_defaults(run=cmd_window_classify)
    c = wc.add_parser("cst")
    c.add_argument("--max", type=int, required=True)
    c.add_argument("--set", required=True)
    c.add_argument("--seqs", required=True)
    c.add_argument("--depth", type=int, required=True)
    c.add_argument("--a-max", type=int)
    c.add_argument("--h-size", type=int, default=2)
    c.set_defaults(run=cmd_window_cst)
    wf = wc.add_parser("filter")
    wfc = wf.add_subparsers(dest="subcommand", required=True)
    c = wfc.add_parser("from-ip")
    c.add_argument("--seq", required=True)
    c.add_argument("--guard", type=int)
    c.add_argument("--check-idempotent", action="store_true")
    c.set_defaults(run=cmd_window_from_ip)

    ext = groups.add_parser("extract", help="witness extraction for subgroups")
    ec = ext.add_subparsers(dest="command", required=True)
    c = ec.add_parser("ipr")
    c.add_argument("--ambient", required=True)
    c.add_argument("--subgroup", required=True)
    c.add_argument("--syndetic-H", dest="syndetic_H", required=True)
    c.add_argument("--seq", required=True)
    c.set_defaults(run=cmd_extract_ipr)

    homo = groups.add_parser("homo", help="(F,G)-good homomorphisms")
    hc = homo.add_subparsers(dest="command", required=True)
    c = hc.add_parser("check")
    c.add_argument("--from", required=True)
    c.add_argument("--to", required=True)
    c.add_argument("--map", required=True)
    c.add_argument("--fbase", required=True)
    c.add_argument("--gbase", required=True)
    c.add_argument("--set")
    c.add_argument("--mode", choices=("pws", "fj"), default="pws")
    c.add_argument("--scope", choices=("filter", "base"), default="filter")
    c.add_argument("--family", help="target family file for --mode fj")
    c.add_argument("--max-m", type=int)
    c.set_defaults(run=cmd_homo_check)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = Out()
    code = EXIT_OK
    try:
        args.run(args, out)
    except _Refuted:
        code = EXIT_REFUTED
    except (ParseError, ValidationError, BoundsError, UniverseMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        code = EXIT_PRECONDITION
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        code = EXIT_CAP
    except WitnessError as exc:
        print(f"witness search failed: {exc}", file=sys.stderr)
        code = EXIT_REFUTED
    except CentralSetsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    sys.stdout.write(out.text())
    sys.stdout.flush()
    return code


def _group_main(group):
    def run():
        sys.exit(main([group] + sys.argv[1:]))

    return run


def run():
    sys.exit(main())


sgp_main = _group_main("sgp")
hj_main = _group_main("hj")
window_main = _group_main("window")
extract_main = _group_main("extract")
homo_main = _group_main("homo")
