"""Command-line surface.

Commands:

    verify       load an algebra description and run the axiom checks
    make-matrix  emit the matrix-family algebra for N, grading, f
    make-ansatz  emit the C + g ansatz from a bracket-constants file
    env          enveloping relations, derived zero/nilpotent sets,
                 local-confluence verdict, optional grouplike quotient
    nf           normal form of a word in the enveloping algebra
    anyspace     expand expressions on the braided line C[t]/t^n
    search       brute-force enumeration of low-dimensional algebras

Exit codes: 0 success / checks pass, 1 semantic failure (axioms fail,
relations outside the supported shape), 2 input or usage errors.  All
output is a pure function of files and flags; repeated runs are
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .algebra import AlgebraSpec, SpecFormatError, verify_all
from .anyspace import ExprError, parse_theta_expr
from .constructions import (AnsatzParams, MatrixTypeParams, build_ansatz,
                            build_matrix_type)
from .cyclotomic import CycNum, root_of_unity
from .envelope import (NCPoly, RelationShapeError, UnverifiedSpecError,
                       build_rewrite_system, generate_relations,
                       quotient_by_central_grouplike)
from .grading import Bicharacter, GradingGroup

__all__ = ["main", "SearchSpace", "run_search"]


# ---------------------------------------------------------------------------
# small parsing helpers
# ---------------------------------------------------------------------------

def _loose_cyc(value, n: int = 1) -> CycNum:
    """Accept CycNum JSON dicts, integers, or fraction strings; 'z^k' and
    'z' denote the primitive n-th root of unity."""
    if isinstance(value, dict):
        return CycNum.from_json(value)
    if isinstance(value, int):
        return CycNum.promote(value)
    text = str(value).strip()
    neg = text.startswith("-")
    if neg:
        text = text[1:].strip()
    if text == "z":
        out = root_of_unity(n, 1)
    elif text.startswith("z^"):
        out = root_of_unity(n, int(text[2:]))
    else:
        out = CycNum.from_rational(Fraction(text))
    return -out if neg else out


def _parse_int_list(text: str):
    return [int(tok) for tok in text.split(",") if tok.strip() != ""]


def _parse_degrees(text: str, rank: int):
    """Degrees: '0,1,2' for rank 1, or '0 1;1 0' tuples for higher rank."""
    if rank == 1:
        return [(v,) for v in _parse_int_list(text)]
    out = []
    for part in text.split(";"):
        coords = tuple(int(t) for t in part.replace(",", " ").split())
        out.append(coords)
    return out


def _grading_from_flags(args) -> Bicharacter:
    if args.group:
        group = GradingGroup(tuple(_parse_int_list(args.group)))
        if args.bichar:
            rows = tuple(tuple(int(t) for t in row.replace(",", " ").split())
                         for row in args.bichar.split(";"))
            return Bicharacter(group, matrix=rows)
        if group.rank != 1:
            raise SpecFormatError("--group with rank > 1 needs --bichar")
        return Bicharacter.anyonic(group.factors[0])
    return Bicharacter.anyonic(args.n)


def _load_spec(path: str) -> AlgebraSpec:
    with open(path) as handle:
        return AlgebraSpec.from_json(handle.read())


def _emit(text: str, out_path=None):
    if out_path:
        with open(out_path, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _parse_poly(spec: AlgebraSpec, text: str) -> NCPoly:
    """Polynomial over basis labels with +, -, * and integer coefficients."""
    labels = sorted(((lab, i) for i, lab in enumerate(spec.basis)),
                    key=lambda kv: -len(kv[0]))
    pos = 0
    tokens = []
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "+-*":
            tokens.append(ch)
            pos += 1
            continue
        if ch.isdigit():
            j = pos
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[pos:j])))
            pos = j
            continue
        for lab, idx in labels:
            if text.startswith(lab, pos):
                tokens.append(("gen", idx))
                pos += len(lab)
                break
        else:
            raise SpecFormatError(f"cannot read polynomial at ...{text[pos:pos+12]!r}")
    terms = []
    pending = 1
    current = None

    def flush():
        nonlocal current, pending
        if current is not None:
            terms.append(current)
        current = None
        pending = 1

    for tok in tokens:
        if tok == "+":
            flush()
        elif tok == "-":
            if current is None:
                pending = -pending
            else:
                flush()
                pending = -1
        elif tok == "*":
            continue
        elif tok[0] == "int":
            if current is None:
                current = [pending, []]
            current[0] *= tok[1]
        else:
            if current is None:
                current = [pending, []]
            current[1].append(tok[1])
    flush()
    poly = NCPoly.zero()
    for coeff, word in terms:
        poly = poly + NCPoly.word(tuple(word), coeff)
    return poly


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    spec = _load_spec(args.spec)
    report = verify_all(spec)
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        print(report)
    return 0 if report.passed else 1


def cmd_make_matrix(args) -> int:
    bichar = _grading_from_flags(args)
    f = _parse_degrees(args.f, bichar.group.rank)
    params = MatrixTypeParams(args.N, bichar, tuple(f))
    spec = build_matrix_type(params, check=not args.skip_check)
    _emit(json.dumps(spec.to_json(), sort_keys=True), args.output)
    return 0


def cmd_make_ansatz(args) -> int:
    with open(args.g_file) as handle:
        gdata = json.load(handle)
    bichar = _grading_from_flags(args)
    dim = int(gdata["dim"])
    degrees = gdata.get("degrees", [0] * dim)
    degrees = [tuple(p) if isinstance(p, list) else p for p in degrees]
    n_hint = bichar.group.exponent
    c = {(int(e["i"]), int(e["j"]), int(e["k"])): _loose_cyc(e["val"], n_hint)
         for e in gdata.get("c", [])}
    names = gdata.get("names")
    params = AnsatzParams(bichar, tuple(degrees), c, tuple(names) if names else None)
    spec = build_ansatz(params, check=not args.skip_check)
    _emit(json.dumps(spec.to_json(), sort_keys=True), args.output)
    return 0


def _order_from_flag(spec: AlgebraSpec, text):
    if not text:
        return None
    return _parse_word(spec, text)


def cmd_env(args) -> int:
    spec = _load_spec(args.spec)
    order = _order_from_flag(spec, args.order)
    rels = generate_relations(spec, force=args.force)
    rs = build_rewrite_system(rels, spec.dim, order=order, labels=spec.basis)
    if args.quotient:
        poly = _parse_poly(spec, args.quotient)
        rs = quotient_by_central_grouplike(rs, poly)
    conf = rs.check_local_confluence(args.degree_cap)
    labels = spec.basis
    if args.json:
        payload = {
            "relations": [
                {"lhs": list(r.lhs),
                 "rhs": [{"pair": list(k), "val": v.to_json()} for k, v in sorted(r.rhs.items())]}
                for r in rels
            ],
            "rules": [
                {"lhs": list(rule.lhs),
                 "rhs": [{"word": list(w), "val": v.to_json()}
                         for w, v in sorted(rule.rhs.terms.items())]}
                for rule in sorted(rs.rules, key=lambda r: (len(r.lhs), r.lhs))
            ],
            "zero_pairs": sorted(list(p) for p in rs.zero_pairs),
            "nilpotents": sorted(rs.nilpotents),
            "confluent": conf.confluent,
            "degree_cap": args.degree_cap,
        }
        print(json.dumps(payload, sort_keys=True))
        return 0
    for rel in rels:
        mu, nu = rel.lhs
        rhs = " + ".join(f"({val})*{labels[g]}*{labels[b]}"
                         for (g, b), val in sorted(rel.rhs.items())) or "0"
        print(f"{labels[mu]}*{labels[nu]} = {rhs}")
    zp = sorted(rs.zero_pairs)
    print("zero products:",
          ", ".join(f"{labels[x]}*{labels[y]}" for x, y in zp) if zp else "(none)")
    np_ = sorted(rs.nilpotents)
    print("nilpotent generators:",
          ", ".join(f"{labels[g]}" for g in np_) if np_ else "(none)")
    print(conf)
    return 0


def _parse_word(spec: AlgebraSpec, text: str):
    """Read a word as generator labels or indices; labels may themselves
    contain commas, so match them greedily."""
    labels = sorted(((lab, i) for i, lab in enumerate(spec.basis)),
                    key=lambda kv: -len(kv[0]))
    word = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch in ", *":
            pos += 1
            continue
        for lab, idx in labels:
            if text.startswith(lab, pos):
                word.append(idx)
                pos += len(lab)
                break
        else:
            if ch.isdigit():
                j = pos
                while j < len(text) and text[j].isdigit():
                    j += 1
                word.append(int(text[pos:j]))
                pos = j
            else:
                raise SpecFormatError(f"cannot read word at ...{text[pos:pos+12]!r}")
    return tuple(word)


def cmd_nf(args) -> int:
    spec = _load_spec(args.spec)
    order = _order_from_flag(spec, args.order)
    rels = generate_relations(spec, force=args.force)
    rs = build_rewrite_system(rels, spec.dim, order=order, labels=spec.basis)
    nf = rs.nf_word(_parse_word(spec, args.word))
    if args.json:
        print(json.dumps({"nf": [{"word": list(w), "val": v.to_json()}
                                 for w, v in sorted(nf.terms.items())]}, sort_keys=True))
    else:
        print(nf.render(spec.basis))
    return 0


def cmd_anyspace(args) -> int:
    poly = parse_theta_expr(args.expr, args.n, args.vars)
    if args.json:
        payload = {"n": poly.n, "vars": poly.vars,
                   "terms": [{"exponents": list(k), "val": v.to_json()}
                             for k, v in sorted(poly.terms.items())]}
        print(json.dumps(payload, sort_keys=True))
    else:
        print(poly.render())
    return 0


# ---------------------------------------------------------------------------
# search (desk-scale classification)
# ---------------------------------------------------------------------------

@dataclass
class SearchSpace:
    """Finite enumeration of candidate structure tensors.

    Every eps / d / c slot ranges over the alphabet; degree assignments
    either enumerate the whole group or are fixed by `degrees`.
    """

    dim: int
    bichar: Bicharacter
    alphabet: list
    degrees: list = None  # list of degree tuples per basis element, or None
    require_nonzero_delta: bool = False
    cap: int = 10_000_000

    def slot_count(self) -> int:
        return self.dim + 2 * self.dim ** 3

    def degree_assignments(self):
        group = self.bichar.group
        if self.degrees is not None:
            yield tuple(group.degree(p) for p in self.degrees)
            return
        for combo in product(group.elements(), repeat=self.dim):
            yield tuple(combo)

    def candidate_count(self) -> int:
        degree_count = (1 if self.degrees is not None
                        else self.bichar.group.size ** self.dim)
        return degree_count * len(self.alphabet) ** self.slot_count()


def run_search(space: SearchSpace):
    """Yield every verified AlgebraSpec in deterministic order.

    No basis-rescaling or permutation canonicalisation is applied, so
    isomorphic duplicates are reported as distinct solutions.
    """
    count = space.candidate_count()
    if count > space.cap:
        raise ValueError(
            f"candidate count {count} exceeds the cap {space.cap}; "
            "narrow the alphabet, dimension, or degree assignments")
    dim = space.dim
    triples = [(m, n, r) for m in range(dim) for n in range(dim) for r in range(dim)]
    basis = [f"x{i}" for i in range(dim)]
    for degrees in space.degree_assignments():
        for values in product(space.alphabet, repeat=space.slot_count()):
            eps_vals = values[:dim]
            d_vals = values[dim : dim + dim ** 3]
            c_vals = values[dim + dim ** 3 :]
            if space.require_nonzero_delta and all(v.is_zero() for v in d_vals):
                continue
            eps = {i: v for i, v in enumerate(eps_vals) if not v.is_zero()}
            d = {t: v for t, v in zip(triples, d_vals) if not v.is_zero()}
            c = {t: v for t, v in zip(triples, c_vals) if not v.is_zero()}
            spec = AlgebraSpec(space.bichar, basis, degrees, eps, d, c)
            if verify_all(spec).passed:
                yield spec


def _parse_alphabet(text: str, n: int):
    if not text:
        values = [CycNum.zero(), CycNum.one(), -CycNum.one()]
        values += [root_of_unity(n, k) for k in range(1, n)]
    else:
        values = [_loose_cyc(tok.strip(), n) for tok in text.split(",")]
    unique = []
    for v in values:
        if all(v != u for u in unique):
            unique.append(v)
    return unique


def cmd_search(args) -> int:
    bichar = _grading_from_flags(args)
    alphabet = _parse_alphabet(args.alphabet, bichar.group.exponent)
    degrees = None
    if args.degrees:
        degrees = _parse_degrees(args.degrees, bichar.group.rank)
        if len(degrees) != args.dim:
            raise SpecFormatError("--degrees needs one entry per basis element")
    space = SearchSpace(args.dim, bichar, alphabet, degrees,
                        args.require_nonzero_delta, args.cap)
    count = space.candidate_count()
    if count > space.cap:
        print(f"refusing to enumerate {count} candidates (cap {space.cap}); "
              "narrow the alphabet, dimension, or degrees", file=sys.stderr)
        return 2
    solutions = list(run_search(space))
    if args.json:
        print(json.dumps({"candidates": count,
                          "solutions": [s.to_json() for s in solutions],
                          "count": len(solutions)}, sort_keys=True))
    else:
        print(f"candidates: {count}")
        for spec in solutions:
            print(json.dumps(spec.to_json(), sort_keys=True))
        print(f"solutions: {len(solutions)} "
              "(duplicates under rescaling/permutation are not merged)")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anylie",
        description="exact kernel for graded braided Lie algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the axiom checks on an algebra file")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    def add_grading_flags(p):
        p.add_argument("--n", type=int, default=1,
                       help="anyonic grading modulus (default 1)")
        p.add_argument("--group", help="comma-separated group factors, e.g. 2,2")
        p.add_argument("--bicharacter", "--bichar", dest="bichar",
                       help="integer matrix rows separated by ';', e.g. '1,0;0,1'")

    p = sub.add_parser("make-matrix", help="emit the matrix-family algebra")
    p.add_argument("--N", type=int, required=True)
    add_grading_flags(p)
    p.add_argument("--f", required=True,
                   help="grading function, e.g. 0,1,2 (';'-separated tuples for rank > 1)")
    p.add_argument("-o", "--output")
    p.add_argument("--skip-check", action="store_true",
                   help="skip the verification assertion (batch speed)")
    p.set_defaults(func=cmd_make_matrix)

    p = sub.add_parser("make-ansatz", help="emit the C + g ansatz algebra")
    add_grading_flags(p)
    p.add_argument("--g-file", required=True,
                   help="JSON with dim, degrees, names and bracket constants c")
    p.add_argument("-o", "--output")
    p.add_argument("--skip-check", action="store_true")
    p.set_defaults(func=cmd_make_ansatz)

    p = sub.add_parser("env", help="enveloping relations and rewrite data")
    p.add_argument("spec")
    p.add_argument("--order", help="generator order: labels or indices, comma-separated")
    p.add_argument("--degree-cap", type=int, default=4)
    p.add_argument("--force", action="store_true",
                   help="generate relations even if the algebra fails verification")
    p.add_argument("--quotient",
                   help="central grouplike polynomial to set equal to 1 (experimental)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_env)

    p = sub.add_parser("nf", help="normal form of a word")
    p.add_argument("spec")
    p.add_argument("word", help="comma-separated generator labels or indices")
    p.add_argument("--order")
    p.add_argument("--force", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("anyspace", help="expand expressions on the braided line")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("action", choices=["expand"])
    p.add_argument("expr")
    p.add_argument("--vars", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_anyspace)

    p = sub.add_parser("search", help="enumerate small anyonic Lie algebras")
    p.add_argument("--dim", type=int, required=True, choices=[1, 2])
    add_grading_flags(p)
    p.add_argument("--alphabet",
                   help="comma-separated coefficients (default 0,1,-1 plus z^k)")
    p.add_argument("--degrees",
                   help="fixed degree per basis element; omit to enumerate all")
    p.add_argument("--require-nonzero-delta", action="store_true")
    p.add_argument("--cap", type=int, default=10_000_000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UnverifiedSpecError, RelationShapeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SpecFormatError, ExprError, json.JSONDecodeError, OSError,
            KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
