"""Command-line front end: the .rla algebra format, basis files, JSON
reports, and the decision subcommands.

Exit codes: 0 for a definite answer, 2 for an inconclusive one, 1 for
errors.  Reports contain only deterministic fields (digests, dimensions,
certificates, node counters), so equal inputs and budgets give byte-equal
output.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__, abelian, filtration, fmb, linalg, search
from .errors import FmbasisError, NotPNilpotent, ParseError, ShapeMismatch
from .fields import field_from_name
from .liealg import RestrictedLieAlgebra

_SCHEMA = "fmbasis-report/1"


# ------------------------------------------------------------- .rla parsing

def _split_lincomb(text):
    parts = []
    depth = 0
    sign = "+"
    buf = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0:
            if "".join(buf).strip():
                parts.append((sign, "".join(buf).strip()))
            sign = ch
            buf = []
        else:
            buf.append(ch)
    tail = "".join(buf).strip()
    if tail:
        parts.append((sign, tail))
    return parts


def _parse_lincomb(F, names, text, line_no):
    text = text.strip()
    vec = [F.zero] * len(names)
    if text == "0":
        return tuple(vec)
    name_to_idx = {nm: i for i, nm in enumerate(names)}
    for sign, term in _split_lincomb(text):
        if "*" in term:
            coeff_text, _, name = term.rpartition("*")
            try:
                coeff = F.parse(coeff_text.strip())
            except (ParseError, ValueError) as exc:
                raise ParseError(f"bad coefficient {coeff_text!r}: {exc}", line_no)
            name = name.strip()
        else:
            coeff, name = F.one, term
        if name not in name_to_idx:
            raise ParseError(f"unknown basis name {name!r}", line_no)
        if sign == "-":
            coeff = F.neg(coeff)
        i = name_to_idx[name]
        vec[i] = F.add(vec[i], coeff)
    return tuple(vec)


def parse_algebra_text(text: str) -> RestrictedLieAlgebra:
    field = None
    dim = None
    names = None
    brackets = {}
    pmaps = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "field":
            field = field_from_name(rest)
        elif head == "dim":
            try:
                dim = int(rest)
            except ValueError:
                raise ParseError(f"bad dimension {rest!r}", line_no)
            if dim < 1:
                raise ParseError("dimension must be positive", line_no)
        elif head == "names":
            names = tuple(rest.split())
        elif head == "bracket":
            if field is None or names is None:
                raise ParseError("bracket before field/names", line_no)
            parts = rest.split(None, 3)
            if len(parts) != 4 or parts[2] != "=":
                raise ParseError("expected 'bracket <a> <b> = <lincomb>'", line_no)
            a, b, _, rhs = parts
            if a == b:
                raise ParseError("self brackets are zero and may not be assigned", line_no)
            if a not in names or b not in names:
                raise ParseError(f"unknown name in bracket {a!r}, {b!r}", line_no)
            i, j = names.index(a), names.index(b)
            vec = _parse_lincomb(field, names, rhs, line_no)
            if i > j:
                i, j = j, i
                vec = tuple(field.neg(c) for c in vec)
            if (i, j) in brackets:
                raise ParseError(f"duplicate bracket for {a!r}, {b!r}", line_no)
            brackets[(i, j)] = vec
        elif head == "pmap":
            if field is None or names is None:
                raise ParseError("pmap before field/names", line_no)
            try:
                a, eq, rhs = rest.split(None, 2)
            except ValueError:
                raise ParseError("expected 'pmap <a> = <lincomb>'", line_no)
            if eq != "=":
                raise ParseError("expected 'pmap <a> = <lincomb>'", line_no)
            if a not in names:
                raise ParseError(f"unknown name {a!r}", line_no)
            i = names.index(a)
            if i in pmaps:
                raise ParseError(f"duplicate pmap for {a!r}", line_no)
            pmaps[i] = _parse_lincomb(field, names, rhs, line_no)
        else:
            raise ParseError(f"unknown directive {head!r}", line_no)
    if field is None:
        raise ParseError("missing 'field' line")
    if names is None:
        raise ParseError("missing 'names' line")
    if dim is None:
        dim = len(names)
    if len(names) != dim:
        raise ParseError(f"dim is {dim} but {len(names)} names given")
    if len(set(names)) != len(names):
        raise ParseError("duplicate basis names")
    L = RestrictedLieAlgebra.from_tables(field, names, brackets, pmaps)
    L.validate_or_raise()
    return L


def parse_algebra_file(path: str) -> RestrictedLieAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_algebra_text(fh.read())


def render_algebra(L) -> str:
    F = L.field
    lines = [f"field {F.name}", f"dim {L.n}", "names " + " ".join(L.names)]
    for i in range(L.n):
        for j in range(i + 1, L.n):
            vec = L.bracket_table[i][j]
            if any(c != F.zero for c in vec):
                lines.append(
                    f"bracket {L.names[i]} {L.names[j]} = {_render_lincomb(L, vec)}"
                )
    for i in range(L.n):
        vec = L.pmap_table[i]
        if any(c != F.zero for c in vec):
            lines.append(f"pmap {L.names[i]} = {_render_lincomb(L, vec)}")
    return "\n".join(lines) + "\n"


def _render_lincomb(L, vec) -> str:
    F = L.field
    parts = []
    for c, name in zip(vec, L.names):
        if c == F.zero:
            continue
        parts.append(name if c == F.one else f"{F.render_coeff(c)}*{name}")
    return " + ".join(parts) if parts else "0"


def parse_basis_file(A, path: str):
    elements = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                elements.append(A.parse_element(line))
    return elements


# ------------------------------------------------------------------ reports

def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _predicates_dict(L, data):
    rep = filtration.predicates(L, data)
    return rep.to_dict(L)


def build_report(L, path, certificate, data, budget) -> dict:
    heights = filtration.input_basis_heights(L, data)
    omega_dims = None
    if data.p_nilpotent:
        ctx = filtration.adapted_context(L, data)
        omega_dims = [s.dim for s in filtration.omega_powers_fast(ctx)]
    return {
        "schema": _SCHEMA,
        "tool": {"name": "fmbasis", "version": __version__},
        "input": {"path": path, "sha256": _digest(path)},
        "field": L.field.name,
        "dim": L.n,
        "names": list(L.names),
        "predicates": _predicates_dict(L, data),
        "filtration": {
            "dimension_subalgebra_dims": [D.dim for D in data.dim_subalgebras],
            "input_basis_heights": {
                name: h for name, h in zip(L.names, heights)
            },
            "omega_power_dims": omega_dims,
        },
        "certificate": certificate.to_dict() if certificate else None,
        "budget": {
            "max_nodes": budget.max_nodes if budget else None,
            "threads": budget.threads if budget else 1,
        },
        "seed": None,
        "timing": {
            "search_nodes": (certificate.evidence.get("nodes", 0) if certificate else 0)
        },
    }


def render_report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# --------------------------------------------------------------------- main

def _budget_from_args(args):
    max_nodes = getattr(args, "budget", None)
    threads = getattr(args, "threads", 1)
    if max_nodes is None:
        return None
    if max_nodes <= 0:
        return search.SearchBudget(max_nodes=None, threads=threads)
    return search.SearchBudget(max_nodes=max_nodes, threads=threads)


def _cmd_check(args):
    L = parse_algebra_file(args.file)
    print(f"{args.file}: valid restricted Lie algebra over {L.field.name}, dim {L.n}")
    try:
        data = filtration.dimension_subalgebras(L)
    except NotPNilpotent as exc:
        print(f"not nilpotent: {exc}")
        return 0
    rep = filtration.predicates(L, data)
    print(
        f"abelian={rep.is_abelian} class={rep.nilpotency_class} "
        f"p_nilpotent={rep.is_p_nilpotent} powerful={rep.is_powerful}"
    )
    print(
        "minimal generators: "
        + ", ".join(L.render_element(g) for g in rep.minimal_generators)
    )
    return 0


def _cmd_series(args):
    L = parse_algebra_file(args.file)
    gammas = filtration.lower_central_series(L)
    print("lower central series dims:", [g.dim for g in gammas])
    data = filtration.dimension_subalgebras(L)
    print("dimension subalgebra dims:", [D.dim for D in data.dim_subalgebras])
    if not data.p_nilpotent:
        print("warning: not p-nilpotent, chain truncated")
    return 0


def _cmd_heights(args):
    L = parse_algebra_file(args.file)
    data = filtration.dimension_subalgebras(L)
    if not data.p_nilpotent:
        print("not p-nilpotent; heights undefined", file=sys.stderr)
        return 1
    heights = filtration.input_basis_heights(L, data)
    for name, h in zip(L.names, heights):
        print(f"nu({name}) = {h}")
    ctx = filtration.adapted_context(L, data)
    chain = filtration.omega_powers_fast(ctx)
    print("omega power dims:", [s.dim for s in chain])
    if any(row != L.basis_vec(i) for i, row in enumerate(data.adapted_basis)):
        print("adapted basis:")
        for row, h in zip(data.adapted_basis, data.heights):
            print(f"  height {h}: {L.render_element(row)}")
    return 0


def _cmd_decompose(args):
    L = parse_algebra_file(args.file)
    if not filtration.is_abelian(L):
        print("not abelian; no cyclic decomposition attempted", file=sys.stderr)
        return 1
    if L.field.is_prime_field:
        dec = abelian.decompose(L)
        print("exponents:", list(dec.exponents))
        for g, e in zip(dec.generators, dec.exponents):
            print(f"  generator (exponent {e}): {L.render_element(g)}")
        return 0
    try:
        decision = abelian.example_shape_criterion(L)
    except ShapeMismatch as exc:
        print(f"undecided over {L.field.name}: {exc}", file=sys.stderr)
        return 2
    if decision.decomposes:
        print(f"decomposes: alpha = {L.field.render(decision.alpha)} has a p-th root")
        for g, e in zip(decision.decomposition.generators, decision.decomposition.exponents):
            print(f"  generator (exponent {e}): {L.render_element(g)}")
    else:
        print(
            f"no cyclic decomposition: alpha = {L.field.render(decision.alpha)} "
            "is not a p-th power"
        )
    return 0


def _cmd_fmb_verify(args):
    L = parse_algebra_file(args.file)
    A = L.envelope
    elements = parse_basis_file(A, args.basis)
    report = fmb.is_fm_basis(A, elements)
    if report.ok:
        print("ACCEPTED: filtered multiplicative basis")
        return 0
    print("REJECTED:", report.summary())
    for i, j, prod in report.closure_violations[:20]:
        print(f"  product of elements {i} and {j} escapes the set: {prod}")
    return 0


def _cmd_fmb_search(args):
    L = parse_algebra_file(args.file)
    budget = _budget_from_args(args) or search.SearchBudget()
    cert = fmb.search_fmb(L, budget)
    return _print_certificate(L, cert)


def _cmd_decide(args):
    L = parse_algebra_file(args.file)
    cert = fmb.decide(L, _budget_from_args(args))
    return _print_certificate(L, cert)


def _print_certificate(L, cert) -> int:
    if cert.kind == fmb.FOUND_BASIS:
        elements = cert.evidence["elements"]
        print("FoundBasis: {" + ", ".join(elements) + "}")
        print(f"route: {cert.evidence.get('route')}")
        return 0
    if cert.kind == fmb.INCONCLUSIVE:
        print(f"Inconclusive: {cert.evidence.get('reason')}")
        return 2
    reason = {
        fmb.NO_BASIS_THEOREM1: "abelian algebra with no cyclic decomposition",
        fmb.NO_BASIS_LEMMA2: "powerful generator obstruction",
        fmb.NO_BASIS_THEOREM3: "nilpotency class 2 in odd characteristic",
        fmb.NO_BASIS_EXHAUSTED: "exhaustive search",
    }[cert.kind]
    print(f"NoBasis ({cert.kind}): {reason}")
    if cert.kind == fmb.NO_BASIS_THEOREM1:
        print(
            f"  alpha = {cert.evidence['alpha']} is not a p-th power in {L.field.name}"
        )
    return 0


def _cmd_report(args):
    L = parse_algebra_file(args.file)
    data = filtration.dimension_subalgebras(L)
    budget = _budget_from_args(args)
    cert = fmb.decide(L, budget) if data.p_nilpotent else None
    report = build_report(L, args.file, cert, data, budget)
    text = render_report_json(report)
    with open(args.json, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {args.json}")
    if cert is None:
        return 1
    return 0 if cert.definite else 2


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fmbasis",
        description=(
            "Decide whether the restricted enveloping algebra of a p-nilpotent "
            "restricted Lie algebra has a filtered multiplicative basis."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.add_argument("file", help=".rla algebra file")
        sp.set_defaults(func=func)
        return sp

    add("check", _cmd_check, help="parse, validate, and report predicates")
    add("series", _cmd_series, help="lower central series and dimension subalgebras")
    add("heights", _cmd_heights, help="basis heights and omega power dimensions")
    add("decompose", _cmd_decompose, help="cyclic decomposition of an abelian algebra")

    sp = add("fmb-verify", _cmd_fmb_verify, help="verify a basis file")
    sp.add_argument("basis", help="basis file, one element per line")

    sp = add("fmb-search", _cmd_fmb_search, help="exhaustive layered basis search")
    sp.add_argument("--budget", type=int, default=None, help="node budget (0 = unlimited)")
    sp.add_argument("--threads", type=int, default=1, help="advisory worker count")

    sp = add("decide", _cmd_decide, help="run the full decision pipeline")
    sp.add_argument("--budget", type=int, default=None, help="node budget (0 = unlimited)")
    sp.add_argument("--threads", type=int, default=1, help="advisory worker count")

    sp = add("report", _cmd_report, help="write a JSON report")
    sp.add_argument("--json", required=True, help="output path")
    sp.add_argument("--budget", type=int, default=None, help="node budget (0 = unlimited)")
    sp.add_argument("--threads", type=int, default=1, help="advisory worker count")

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FmbasisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
