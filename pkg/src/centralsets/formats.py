"""Plain-text file formats: sequence families, filter bases, CST witness maps.

Family file: one comma-separated sequence per line (indices or names); a
blank line starts the next family.  Filter base file: one subset literal per
line.  Both skip '#' comments.
"""

from __future__ import annotations

from .errors import ParseError
from .filters import FilterBase
from .largeness import JWitness, SequenceFamily
from .semigroup import FiniteSemigroup
from .witness import CSTWitnessMap

__all__ = [
    "WITNESS_HEADER",
    "parse_families",
    "parse_family",
    "parse_int_sequences",
    "parse_filter_base",
    "format_witness_map",
    "parse_witness_map",
]

WITNESS_HEADER = "# cst-witness v1"


def _blocks(text):
    block: list = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if block:
                yield block
                block = []
            continue
        block.append((lineno, line))
    if block:
        yield block


def _parse_seq(S: FiniteSemigroup, line: str, lineno: int) -> tuple:
    try:
        return tuple(S.parse_element(tok) for tok in line.split(","))
    except ParseError as exc:
        raise ParseError(str(exc), lineno) from None


def _family(S, block):
    seqs = [_parse_seq(S, line, lineno) for lineno, line in block]
    if len({len(s) for s in seqs}) != 1:
        raise ParseError("sequences in a family must have equal length", block[0][0])
    return SequenceFamily(seqs)


def parse_families(S: FiniteSemigroup, text: str) -> list[SequenceFamily]:
    families = [_family(S, block) for block in _blocks(text)]
    if not families:
        raise ParseError("no sequences found")
    return families


def parse_family(S: FiniteSemigroup, text: str) -> SequenceFamily:
    """A single family; blank lines are ignored."""
    block = [entry for b in _blocks(text) for entry in b]
    if not block:
        raise ParseError("no sequences found")
    return _family(S, block)


def parse_int_sequences(text: str) -> list[tuple[int, ...]]:
    out = []
    for block in _blocks(text):
        for lineno, line in block:
            try:
                out.append(tuple(int(tok) for tok in line.split(",")))
            except ValueError:
                raise ParseError(f"expected integers, got {line!r}", lineno) from None
    if not out:
        raise ParseError("no sequences found")
    return out


def parse_filter_base(S: FiniteSemigroup, text: str) -> FilterBase:
    sets = []
    for block in _blocks(text):
        for lineno, line in block:
            try:
                V = S.parse_set(line)
            except ParseError as exc:
                raise ParseError(str(exc), lineno) from None
            if not V:
                raise ParseError("base sets must be nonempty", lineno)
            sets.append(V)
    if not sets:
        raise ParseError("filter base file is empty")
    return FilterBase(sets)


def _ints(values) -> str:
    return ",".join(str(v) for v in values)


def format_witness_map(wmap: CSTWitnessMap) -> str:
    """Elements are written as indices; families and subsets are 1-based."""
    out = [WITNESS_HEADER]
    out.append(f"target: {_ints(wmap.target)}")
    out.append(f"idempotent: {wmap.idempotent}")
    for i, fam in enumerate(wmap.families, start=1):
        out.append(f"family: {i}")
        out.extend(f"seq: {_ints(s)}" for s in fam)
    for G in wmap.domain:
        w = wmap.entries[G]
        out.append(f"subset: {_ints(g + 1 for g in G)}")
        out.append(f"m: {w.m}")
        out.append(f"alpha: {_ints(w.a)}")
        out.append(f"tau: {_ints(w.t)}")
    return "\n".join(out) + "\n"


def parse_witness_map(S: FiniteSemigroup, text: str) -> CSTWitnessMap:
    lines = [(n, l.strip()) for n, l in enumerate(text.splitlines(), start=1) if l.strip()]
    if not lines or lines[0][1] != WITNESS_HEADER:
        raise ParseError(f"missing header {WITNESS_HEADER!r}", 1)
    target = None
    idempotent = None
    families: list[list] = []
    entries: dict = {}
    current = None
    pending: dict = {}

    def ints(value, lineno):
        try:
            return tuple(int(v) for v in value.split(",")) if value else ()
        except ValueError:
            raise ParseError(f"expected integers, got {value!r}", lineno) from None

    def flush(lineno):
        if current is None:
            return
        if set(pending) != {"m", "alpha", "tau"}:
            raise ParseError(f"subset {current} needs m, alpha and tau", lineno)
        try:
            w = JWitness(pending["m"][0], pending["alpha"], pending["tau"])
        except ValueError as exc:
            raise ParseError(f"subset {current}: {exc}", lineno) from None
        entries[current] = w

    for lineno, line in lines[1:]:
        if line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}", lineno)
        key, value = key.strip(), value.strip()
        if key == "target":
            target = S.subset(ints(value, lineno))
        elif key == "idempotent":
            idempotent = ints(value, lineno)[0]
        elif key == "family":
            if ints(value, lineno) != (len(families) + 1,):
                raise ParseError("families must be numbered 1, 2, ...", lineno)
            families.append([])
        elif key == "seq":
            if not families:
                raise ParseError("seq line before any family line", lineno)
            families[-1].append(ints(value, lineno))
        elif key == "subset":
            flush(lineno)
            G = tuple(g - 1 for g in ints(value, lineno))
            if not G or any(not 0 <= g < len(families) for g in G):
                raise ParseError(f"subset {value} names an unknown family", lineno)
            current, pending = G, {}
        elif key in ("m", "alpha", "tau"):
            if current is None:
                raise ParseError(f"{key} line outside a subset section", lineno)
            pending[key] = ints(value, lineno)
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    flush(lines[-1][0])
    if target is None or idempotent is None:
        raise ParseError("witness file needs target and idempotent lines")
    fams = []
    for seqs in families:
        for s in seqs:
            if any(not 0 <= v < S.order for v in s):
                raise ParseError("sequence entry outside the semigroup")
        fams.append(SequenceFamily(seqs))
    return CSTWitnessMap(fams, target, idempotent, entries)
