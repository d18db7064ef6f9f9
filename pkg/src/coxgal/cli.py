"""Command-line front end.

Connection documents are TOML::

    [connection]
    group = "D4"
    kind = "fg"                 # fg | airy | coxeter
    a = "1"                     # cyclotomic literal, e.g. "1/2*z3 + 1"
    X = ["0", "0", "0", "0"]    # fundamental-coweight coordinates: alpha_i(X) = X[i]
    r = 1                       # coxeter only
    formal_type = { 1 = ["1"] } # coxeter only: coordinates per degree -i/h piece

    [options]
    orbit_bound = 1000000
    b3_mode = "d4"

Exit codes: 0 determinate, 1 input error, 2 undetermined verdict.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import __version__
from .classify import (
    Realisation,
    SubgroupType,
    UnsupportedType,
    derive_maximal_degree_subgroups,
    supported_groups,
    table1_lookup,
)
from .exactalg.cyclotomic import format_scalar
from .exactalg.parse import CyclotomicSyntaxError, parse_cyclotomic
from .galois import ConnectionSpec, GaloisVerdict, Kind, SpecError, analyze
from .jordan import JordanForm, JordanFormError, local_galois_group, term_coordinates, to_jordan
from .rootsys import DEFAULT_ORBIT_BOUND, InvalidRootSystem, build, parse_type
from .strata import FormalType, FormalTypeError, canonical_orbit_representative, orbit_witness

SCHEMA_VERSION = 1

EXIT_OK, EXIT_INPUT, EXIT_UNDETERMINED = 0, 1, 2


class InputError(ValueError):
    """Bad input document; ``line``/``column`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None, source: str = "<input>"):
        self.message, self.line, self.column, self.source = message, line, column, source
        where = f"{source}:{line}:{column}" if line is not None else source
        super().__init__(f"{where}: {message}")


# -- document parsing ---------------------------------------------------------------

@dataclass
class SpecDocument:
    spec: ConnectionSpec
    orbit_bound: int = DEFAULT_ORBIT_BOUND
    b3_mode: str = "d4"
    method: str = "auto"
    has_formal_type: bool = False


class _Locator:
    """Best-effort line/column lookup for values inside a TOML document."""

    def __init__(self, text: str, source: str):
        self.lines = text.splitlines()
        self.source = source

    def find(self, key: str, literal: str | None = None) -> tuple[int | None, int | None]:
        section = None
        for n, raw in enumerate(self.lines, 1):
            stripped = raw.strip()
            if stripped.startswith("["):
                section = stripped
                continue
            if section != "[connection]" and section != "[options]":
                continue
            head = stripped.split("=", 1)[0].strip()
            if head != key:
                continue
            if literal is not None:
                col = raw.find(literal)
                if col >= 0:
                    return n, col + 1
            return n, raw.index(head) + 1
        return None, None

    def error(self, message: str, key: str, literal: str | None = None, offset: int = 0) -> InputError:
        line, col = self.find(key, literal)
        if col is not None and literal is not None:
            col += offset
        return InputError(message, line, col, self.source)


def _scalar(value, key: str, loc: _Locator):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise loc.error(f"{key}: expected a cyclotomic literal, got {type(value).__name__}", key)
    try:
        return parse_cyclotomic(value if isinstance(value, str) else Fraction(value))
    except CyclotomicSyntaxError as exc:
        raise loc.error(f"{key}: {exc.message}", key, exc.text, exc.pos) from None


def _vector(value, key: str, loc: _Locator) -> tuple:
    if not isinstance(value, list):
        raise loc.error(f"{key}: expected an array of cyclotomic literals", key)
    return tuple(_scalar(v, key, loc) for v in value)


def parse_document(text: str, source: str = "<input>") -> SpecDocument:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        line = getattr(exc, "lineno", None)
        col = getattr(exc, "colno", None)
        raise InputError(str(exc), line, col, source) from None
    loc = _Locator(text, source)
    conn = data.get("connection")
    if not isinstance(conn, dict):
        raise InputError("missing [connection] section", None, None, source)
    known = {"group", "kind", "a", "X", "Z", "r", "formal_type"}
    for key in conn:
        if key not in known:
            raise loc.error(f"unknown field {key!r}", key)
    if "group" not in conn:
        raise InputError("[connection] needs a group", None, None, source)
    try:
        rs = build(*parse_type(str(conn["group"])))
    except (ValueError, InvalidRootSystem) as exc:
        raise loc.error(str(exc), "group", str(conn["group"])) from None
    try:
        kind = Kind(str(conn.get("kind", "fg")).lower())
    except ValueError:
        raise loc.error(f"kind must be one of {', '.join(k.value for k in Kind)}", "kind", str(conn["kind"])) from None
    a = _scalar(conn.get("a", 1), "a", loc)
    x = _vector(conn["X"], "X", loc) if "X" in conn else ()
    z = _vector(conn["Z"], "Z", loc) if "Z" in conn else None
    for key, vec in (("X", x), ("Z", z)):
        if vec and len(vec) != rs.rank:
            raise loc.error(f"{key} needs {rs.rank} coweight coordinates, got {len(vec)}", key)
    r = conn.get("r", rs.h + 1 if kind is Kind.AIRY else 1)
    if isinstance(r, bool) or not isinstance(r, int):
        raise loc.error("r must be an integer", "r")
    ft = None
    if "formal_type" in conn:
        raw = conn["formal_type"]
        if not isinstance(raw, dict):
            raise loc.error("formal_type must be an inline table keyed by degree index", "formal_type")
        coeffs = {}
        for k, vec in raw.items():
            try:
                i = int(k)
            except ValueError:
                raise loc.error(f"formal_type key {k!r} is not an integer", "formal_type") from None
            coeffs[i] = _vector(vec, "formal_type", loc)
        try:
            ft = FormalType(rs, r, coeffs)
        except FormalTypeError as exc:
            raise loc.error(str(exc), "formal_type") from None
    try:
        spec = ConnectionSpec(rs, kind, a, x, z, r, ft)
    except SpecError as exc:
        raise InputError(str(exc), None, None, source) from None

    opts = data.get("options", {})
    if not isinstance(opts, dict):
        raise InputError("[options] must be a table", None, None, source)
    bound = opts.get("orbit_bound", DEFAULT_ORBIT_BOUND)
    if isinstance(bound, bool) or not isinstance(bound, int) or bound < 1:
        raise loc.error("orbit_bound must be a positive integer", "orbit_bound")
    b3_mode = opts.get("b3_mode", "d4")
    if b3_mode not in ("d4", "b3"):
        raise loc.error("b3_mode must be d4 or b3", "b3_mode")
    method = opts.get("method", "auto")
    if method not in ("auto", "chamber", "orbit"):
        raise loc.error("method must be auto, chamber or orbit", "method")
    return SpecDocument(spec, bound, b3_mode, method, ft is not None)


def _read(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read(), path
    except OSError as exc:
        raise InputError(exc.strerror or str(exc), None, None, path) from None


# -- reports --------------------------------------------------------------------------

@dataclass(frozen=True)
class JordanTerm:
    num: int
    den: int
    coords: tuple[str, ...]


@dataclass(frozen=True)
class Report:
    """Everything the machine format carries; equality is the round-trip check."""

    group: tuple[str, int, str] | None
    slope: Fraction
    rigid: bool | None
    connected: bool
    dim_h: int | None
    theta_order: int | None
    jordan: tuple[JordanTerm, ...]
    notes: tuple[str, ...]
    dim_centraliser: int | None = None

    @property
    def determined(self) -> bool:
        return self.group is not None


def _jordan_terms(jf: JordanForm | None) -> tuple[JordanTerm, ...]:
    if jf is None:
        return ()
    return tuple(
        JordanTerm(p, jf.b, tuple(format_scalar(c) for c in coords)) for p, coords in term_coordinates(jf)
    )


def report_from_verdict(v: GaloisVerdict) -> Report:
    group = None if v.group is None else (v.group.label, v.group.rank, v.group.note())
    return Report(
        group,
        v.slope,
        v.rigid,
        v.connected_monodromy,
        v.local.dim_h if v.local else None,
        v.local.theta_order if v.local else None,
        _jordan_terms(v.jordan),
        tuple(v.notes),
        v.dim_centraliser,
    )


def report_to_dict(rep: Report) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "group": None if rep.group is None else {"family": rep.group[0], "rank": rep.group[1], "realisation": rep.group[2]},
        "slope": {"num": rep.slope.numerator, "den": rep.slope.denominator},
        "rigid": rep.rigid,
        "connected": rep.connected,
        "dim_centraliser": rep.dim_centraliser,
        "local": None if rep.dim_h is None else {"dim_h": rep.dim_h, "theta_order": rep.theta_order},
        "jordan": {"terms": [{"num": t.num, "den": t.den, "coords": list(t.coords)} for t in rep.jordan]},
        "notes": list(rep.notes),
    }


def render_machine(rep: Report) -> str:
    return json.dumps(report_to_dict(rep), sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def parse_report(text: str) -> Report:
    """Inverse of :func:`render_machine`."""
    d = json.loads(text)
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {d.get('schema_version')!r}")
    g = d["group"]
    local = d["local"]
    return Report(
        None if g is None else (g["family"], g["rank"], g["realisation"]),
        Fraction(d["slope"]["num"], d["slope"]["den"]),
        d["rigid"],
        d["connected"],
        None if local is None else local["dim_h"],
        None if local is None else local["theta_order"],
        tuple(JordanTerm(t["num"], t["den"], tuple(t["coords"])) for t in d["jordan"]["terms"]),
        tuple(d["notes"]),
        d.get("dim_centraliser"),
    )


def _fmt_bool(b) -> str:
    return "undetermined" if b is None else ("yes" if b else "no")


def render_human(rep: Report, jf: JordanForm | None = None, title: str = "") -> str:
    out = []
    if title:
        out.append(title)
    if rep.group is None:
        out.append("group:        undetermined")
    else:
        out.append(f"group:        {rep.group[0]}{rep.group[1]} ({rep.group[2]})")
    out.append(f"slope:        {rep.slope}")
    out.append(f"connected:    {_fmt_bool(rep.connected)}")
    rig = _fmt_bool(rep.rigid)
    if rep.dim_centraliser is not None:
        rig += f" (dim Z = {rep.dim_centraliser})"
    out.append(f"rigid:        {rig}")
    if rep.dim_h is not None:
        out.append(f"local:        dim H = {rep.dim_h}, theta of order {rep.theta_order}")
    if rep.jordan:
        out.append("jordan terms: (exponent of t, coordinates in the Kostant Cartan basis)")
        for k, t in enumerate(rep.jordan):
            line = f"  t^({t.num}/{t.den}): [{', '.join(t.coords)}]"
            if jf is not None:
                line += f"   x = {jf.terms[k][1]}"
            out.append(line)
    for n in rep.notes:
        out.append(f"note: {n}")
    return "\n".join(out) + "\n"


# -- commands -------------------------------------------------------------------------

def _emit(args, rep: Report, jf=None, title=""):
    sys.stdout.write(render_machine(rep) if args.format == "machine" else render_human(rep, jf, title))


def _load(args, path: str) -> SpecDocument:
    text, source = _read(path)
    doc = parse_document(text, source)
    if args.orbit_bound is not None:
        doc.orbit_bound = args.orbit_bound
    if args.b3_mode is not None:
        doc.b3_mode = args.b3_mode
    if args.method is not None:
        doc.method = args.method
    return doc


def cmd_analyze(args) -> int:
    doc = _load(args, args.path)
    v = analyze(doc.spec, doc.method, doc.orbit_bound, doc.b3_mode)
    rep = report_from_verdict(v)
    _emit(args, rep, v.jordan, f"{doc.spec.base.name} {doc.spec.kind.value} connection")
    return EXIT_OK if rep.determined else EXIT_UNDETERMINED


def cmd_jordan(args) -> int:
    doc = _load(args, args.path)
    spec = doc.spec
    if spec.kind is Kind.COXETER and not doc.has_formal_type:
        raise InputError("jordan needs a formal_type in [connection]", None, None, args.path)
    notes = []
    if spec.kind is Kind.AIRY:
        notes.append("local data at infinity from the leading Jordan term only")
    jf = to_jordan(spec.formal_type_at_infinity())
    local = local_galois_group(jf)
    rep = Report(None, spec.slope, None, True, local.dim_h, local.theta_order, _jordan_terms(jf), tuple(notes))
    if args.format == "machine":
        d = report_to_dict(rep)
        d = {k: d[k] for k in ("schema_version", "slope", "local", "jordan", "notes")}
        d["theta"] = {"order": jf.theta.order, "normalisation": jf.theta.normalisation}
        sys.stdout.write(json.dumps(d, sort_keys=True, ensure_ascii=False, indent=2) + "\n")
    else:
        lines = [f"{spec.base.name}, slope {spec.slope}, ramification t = u^{jf.b}", f"theta: {jf.theta}"]
        lines.append(f"local: dim H = {local.dim_h}")
        for (p, x), t in zip(jf.terms, rep.jordan):
            lines.append(f"  u^{p}: [{', '.join(t.coords)}]   x = {x}")
        lines += [f"note: {n}" for n in notes]
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _formal_type_of(doc: SpecDocument, path: str) -> FormalType:
    if doc.spec.kind is not Kind.COXETER or not doc.has_formal_type:
        raise InputError("moduli needs coxeter documents with a formal_type", None, None, path)
    return doc.spec.formal_type


def cmd_moduli(args) -> int:
    fa = _formal_type_of(_load(args, args.path_a), args.path_a)
    fb = _formal_type_of(_load(args, args.path_b), args.path_b)
    if fa.base is not fb.base or fa.r != fb.r:
        raise InputError(f"group/r mismatch: {fa.base.name} r={fa.r} vs {fb.base.name} r={fb.r}")
    k = orbit_witness(fa, fb)
    ca, cb = canonical_orbit_representative(fa), canonical_orbit_representative(fb)
    if args.format == "machine":
        d = {
            "schema_version": SCHEMA_VERSION,
            "equivalent": k is not None,
            "k": k,
            "canonical": [_ft_dict(ca), _ft_dict(cb)],
        }
        sys.stdout.write(json.dumps(d, sort_keys=True, indent=2) + "\n")
    else:
        verdict = f"equivalent (zeta_h^{k} carries the first to the second)" if k is not None else "not equivalent"
        sys.stdout.write(f"{verdict}\ncanonical first:  {ca}\ncanonical second: {cb}\n")
    return EXIT_OK


def _ft_dict(ft: FormalType) -> dict:
    return {"group": ft.base.name, "r": ft.r, "coeffs": {str(i): [format_scalar(c) for c in v] for i, v in sorted(ft.coeffs.items())}}


def _sub_dict(s: SubgroupType) -> dict:
    return {"family": s.label, "rank": s.rank, "realisation": s.note()}


def cmd_classify(args) -> int:
    try:
        label, rank = parse_type(args.token)
        stored = table1_lookup(label, rank)
        derived, traces = derive_maximal_degree_subgroups(label, rank)
    except (ValueError, UnsupportedType) as exc:
        raise InputError(f"{args.token!r}: {exc}") from None
    agree = set(stored) == set(derived)
    if args.format == "machine":
        d = {
            "schema_version": SCHEMA_VERSION,
            "group": f"{label}{rank}",
            "table": [_sub_dict(s) for s in stored],
            "derived": [_sub_dict(s) for s in derived],
            "agree": agree,
            "traces": [
                {"candidate": t.candidate, "accepted": t.accepted, "rule": t.rule.value if t.rule else None, "detail": t.detail}
                for t in traces
            ],
        }
        sys.stdout.write(json.dumps(d, sort_keys=True, indent=2) + "\n")
    else:
        lines = [f"{label}{rank}: maximal-degree subgroups"]
        lines += [f"  {s.name:<4} {s.note()}" for s in stored]
        lines.append(f"derivation {'agrees' if agree else 'DISAGREES'}: {', '.join(s.name for s in derived)}")
        for t in traces:
            status = "kept" if t.accepted else f"{t.rule.value}: {t.detail}"
            lines.append(f"  {t.candidate:<4} {status}")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if agree else EXIT_INPUT


def cmd_table(args) -> int:
    rows = [(f"{l}{n}", table1_lookup(l, n)) for l, n in supported_groups(args.max_rank)]
    if args.format == "machine":
        d = {"schema_version": SCHEMA_VERSION, "rows": [{"group": g, "subgroups": [_sub_dict(s) for s in subs]} for g, subs in rows]}
        sys.stdout.write(json.dumps(d, sort_keys=True, indent=2) + "\n")
    else:
        for g, subs in rows:
            extra = [f"{s.name} [{s.note()}]" for s in subs if s.realisation is not Realisation.SELF]
            sys.stdout.write(f"{g:<4} {g}" + ("".join(f", {e}" for e in extra)) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--orbit-bound", type=int, default=None, help="cap on enumerated Weyl orbits")
    common.add_argument("--b3-mode", choices=("d4", "b3"), default=None, help="Weyl group used for the B3 test")
    common.add_argument("--method", choices=("auto", "chamber", "orbit"), default=None, help="W-conjugacy test")

    p = argparse.ArgumentParser(prog="coxgal", description="Differential Galois groups of Coxeter connections.")
    p.add_argument("--version", action="version", version=f"coxgal {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", parents=[common], help="full Galois report for a connection document")
    a.add_argument("path", nargs="?", default="-")
    a.set_defaults(func=cmd_analyze)
    j = sub.add_parser("jordan", parents=[common], help="Jordan form and local Galois data at infinity")
    j.add_argument("path", nargs="?", default="-")
    j.set_defaults(func=cmd_jordan)
    m = sub.add_parser("moduli", parents=[common], help="compare two formal types up to the mu_h action")
    m.add_argument("path_a")
    m.add_argument("path_b")
    m.set_defaults(func=cmd_moduli)
    c = sub.add_parser("classify", parents=[common], help="maximal-degree subgroups with elimination traces")
    c.add_argument("token")
    c.set_defaults(func=cmd_classify)
    t = sub.add_parser("table", parents=[common], help="the stored classification for all supported groups")
    t.add_argument("--max-rank", type=int, default=9)
    t.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "orbit_bound", None) is not None and args.orbit_bound < 1:
        print("coxgal: --orbit-bound must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"coxgal: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (JordanFormError, FormalTypeError, SpecError) as exc:
        print(f"coxgal: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
