"""Command-line surface: list relations, verify realizations, export
matrices, run analyses, and evaluate user-entered generator expressions.

Expression grammar (whitespace-insensitive, left-associative):

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := INTEGER | GENERATOR | '(' expr ')'
    GENERATOR := ('e'|'f'|'h') INTEGER

Exit codes: 0 success / all checks pass, 1 verification or analysis
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .analyze import (
    check_invariance,
    check_unitarity,
    cyclicity,
    deformed_ops_check,
    essentially_typical,
    highest_weight,
    inequivalence,
    materialize,
)
from .coeff import CoeffExact, numeric_str
from .fock import Signature
from .presentation import E, F, H, GenSymbol, render_relation, build_relations
from .realize import DYSON, HP, HP_DEFORMED, realization
from .verify import DEFAULT_Q_SAMPLES, verify_all
from .weyl import Engine, OperatorExpr

REALIZATIONS = (DYSON, HP, HP_DEFORMED)


# -- expression parser -------------------------------------------------


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Num:
    value: int
    offset: int


@dataclass(frozen=True)
class Gen:
    symbol: GenSymbol
    offset: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


ExprAst = Num | Gen | BinOp


def _tokenize(src: str):
    tokens = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            tokens.append(("int", int(src[i:j]), i))
            i = j
            continue
        if ch in "efh":
            j = i + 1
            while j < len(src) and src[j].isdigit():
                j += 1
            if j == i + 1:
                raise ExprSyntaxError(f"generator letter {ch!r} needs an index", i)
            tokens.append(("gen", (ch, int(src[i + 1 : j])), i))
            i = j
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    return tokens


class _Parser:
    def __init__(self, tokens, sig: Signature, length: int):
        self.tokens = tokens
        self.pos = 0
        self.sig = sig
        self.length = length

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, self.length)

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            self.next()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        kind, value, offset = self.next()
        if kind == "int":
            return Num(value, offset)
        if kind == "gen":
            letter, index = value
            top = self.sig.r if letter == H else self.sig.r - 1
            if not 1 <= index <= top:
                raise ExprSyntaxError(
                    f"generator {letter}{index} out of range (1..{top})", offset
                )
            return Gen(GenSymbol(letter, index), offset)
        if kind == "(":
            node = self.expr()
            k, _, off = self.next()
            if k != ")":
                raise ExprSyntaxError("expected ')'", off)
            return node
        raise ExprSyntaxError("expected integer, generator, or '('", offset)


def parse_expr(src: str, sig: Signature) -> ExprAst:
    """Parse a generator expression, validating indices against the
    signature.  Errors carry the byte offset of the offending token."""
    parser = _Parser(_tokenize(src), sig, len(src))
    node = parser.expr()
    kind, _, offset = parser.peek()
    if kind is not None:
        raise ExprSyntaxError("unexpected trailing input", offset)
    return node


def ast_to_operator(ast: ExprAst, real) -> OperatorExpr:
    if isinstance(ast, Num):
        return OperatorExpr.identity().scaled(ast.value)
    if isinstance(ast, Gen):
        return real.image(ast.symbol)
    left = ast_to_operator(ast.left, real)
    right = ast_to_operator(ast.right, real)
    if ast.op == "+":
        return left + right
    if ast.op == "-":
        return left - right
    return left * right


# -- matrix export file ------------------------------------------------


def _gen_order(sig: Signature):
    return (
        [GenSymbol(H, i) for i in range(1, sig.r + 1)]
        + [GenSymbol(E, i) for i in range(1, sig.r)]
        + [GenSymbol(F, i) for i in range(1, sig.r)]
    )


def format_matrix_export(sig: Signature, kind: str, p, q, convention: str,
                         subspace: str, matrices: dict) -> str:
    """Structured text document: header, basis list, then per-generator
    sparse triplets with canonical coefficient strings."""
    some = next(iter(matrices.values()))
    lines = [
        "# qglnm matrix export v1",
        f"signature n={sig.n} m={sig.m}",
        f"realization {kind}",
        f"p {p if p is not None else 'formal'}",
        f"q {q if q is not None else 'formal'}",
        f"convention {convention}",
        f"subspace {subspace}",
        f"basis {len(some.basis)}",
    ]
    for s in some.basis.states:
        lines.append(",".join(map(str, s)))
    for g in _gen_order(sig):
        gm = matrices[g]
        triplets = gm.triplets()
        lines.append(f"generator {g} entries {len(triplets)}")
        for (r, c), v in triplets:
            val = v.canonical_str() if isinstance(v, CoeffExact) else numeric_str(v)
            lines.append(f"{r} {c} {val}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_matrix_export(text: str) -> dict:
    """Inverse of ``format_matrix_export`` up to coefficient strings:
    returns header fields, the basis, and per-generator triplet lists
    with the coefficients kept as canonical strings."""
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    it = iter(lines)
    head = {}
    sig_line = next(it).split()
    head["n"] = int(sig_line[1].split("=")[1])
    head["m"] = int(sig_line[2].split("=")[1])
    head["realization"] = next(it).split()[1]
    head["p"] = next(it).split()[1]
    head["q"] = next(it).split()[1]
    head["convention"] = next(it).split()[1]
    head["subspace"] = next(it).split()[1]
    count = int(next(it).split()[1])
    basis = [tuple(int(x) for x in next(it).split(",")) for _ in range(count)]
    gens = {}
    for line in it:
        if line == "end":
            break
        _, name, _, num = line.split()
        triplets = []
        for _ in range(int(num)):
            row, col, val = next(it).split(maxsplit=2)
            triplets.append((int(row), int(col), val))
        gens[name] = triplets
    return {"header": head, "basis": basis, "generators": gens}


# -- command implementations --------------------------------------------


def _parse_p(text: str):
    if text == "formal":
        return None
    try:
        return int(text)
    except ValueError:
        return float(text)


def _parse_q(text: str | None):
    if text is None or text == "formal":
        return None
    if "," in text:
        return [float(x) for x in text.split(",")]
    return float(text)


def _convention(name: str | None) -> str:
    if name in (None, "exact", "monomial"):
        return "monomial"
    if name == "orthonormal":
        return "orthonormal"
    raise ValueError(f"unknown convention {name!r}")


class UsageError(ValueError):
    pass


def _signature(args) -> Signature:
    return Signature(args.n, args.m)


def _validate_realization(kind: str, p, q):
    if kind in (HP, HP_DEFORMED):
        if p is None:
            raise UsageError(f"--p formal is not valid for {kind}: square roots need numbers")
        if q is None:
            raise UsageError(f"--q formal is not valid for {kind}: square roots need numbers")


def _cmd_relations(args) -> int:
    sig = _signature(args)
    text = "\n".join(render_relation(rel) for rel in build_relations(sig)) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 0


def _cmd_verify(args) -> int:
    sig = _signature(args)
    p = _parse_p(args.p)
    if args.q is None:
        # unspecified q: formal for Dyson, the default sample set otherwise
        q = None if args.realization == DYSON else list(DEFAULT_Q_SAMPLES)
    else:
        q = _parse_q(args.q)
    _validate_realization(args.realization, p, q)
    report = verify_all(
        sig,
        kind=args.realization,
        p=p,
        q=q,
        cap=args.cap,
        convention=_convention(args.convention) if args.convention else None,
        tolerance=args.tolerance,
        mutation=args.mutation,
        classical=args.classical,
    )
    print(report.format_table())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report.format_machine())
    print(f"{'all relations pass' if report.all_pass else 'FAILURES: ' + str(len(report.failures))}")
    return 0 if report.all_pass else 1


def _cmd_matrices(args) -> int:
    sig = _signature(args)
    p, q = _parse_p(args.p), _parse_q(args.q)
    _validate_realization(args.realization, p, q)
    if not isinstance(p, int):
        raise UsageError("matrix export needs an integer --p")
    conv = _convention(args.convention) if args.convention else ("monomial" if q is None else "orthonormal")
    mats = materialize(sig, args.realization, p, q=q, subspace=args.subspace,
                       cap=args.cap, convention=conv)
    text = format_matrix_export(sig, args.realization, p, q, conv, args.subspace, mats)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_analyze(args) -> int:
    sig = _signature(args)
    check = args.check
    if check == "invariance":
        p = _require_int_p(args)
        rep = check_invariance(sig, args.realization, p, cap=args.cap,
                               q=_parse_q(args.q) if args.realization != DYSON else None,
                               tolerance=args.tolerance)
        print(rep.summary())
        expected = rep.f1_invariant and (rep.f0_invariant == (args.realization != DYSON))
        return 0 if expected else 1
    if check == "unitarity":
        p = _require_int_p(args)
        rep = check_unitarity(sig, p, _require_q(args), tolerance=args.tolerance)
        print(rep.summary())
        return 0 if rep.hp_pass and rep.h_diagonal_real and rep.dyson_fails else 1
    if check == "highest-weight":
        p = _require_int_p(args)
        weight = highest_weight(sig, p)
        print(f"vacuum weight: {weight}")
        expected = tuple([p] + [0] * (sig.r - 1))
        return 0 if weight == expected else 1
    if check == "typicality":
        p = _require_int_p(args)
        weight = tuple([p] + [0] * (sig.r - 1))
        rep = essentially_typical(sig, weight)
        print(f"weight {weight}: sets {list(rep.left_set)} and {list(rep.right_set)}, "
              f"intersection {list(rep.intersection)}; essentially typical: "
              f"{rep.essentially_typical}")
        return 0
    if check == "inequivalence":
        p = _require_int_p(args)
        if args.p2 is None:
            raise UsageError("--p2 required for the inequivalence check")
        rep = inequivalence(sig, p, args.p2)
        print(rep.summary())
        return 0 if rep.inequivalent else 1
    if check == "cyclicity":
        p = _require_int_p(args)
        rep = cyclicity(sig, p, _require_q(args))
        print(rep.summary())
        return 0 if rep.full_from_all else 1
    if check == "deformed-ops":
        p = _require_int_p(args)
        rep = deformed_ops_check(sig, p, _require_q(args), cap=args.cap or 6)
        print(rep.summary())
        ok = rep.bosonic_pass and rep.agreement_pass and rep.fermionic_exponent != "neither"
        return 0 if ok else 1
    if check == "reimport":
        return _cmd_reimport(args)
    raise UsageError(f"unknown check {check!r}")


def _cmd_reimport(args) -> int:
    sig = _signature(args)
    p = _require_int_p(args)
    q = _parse_q(args.q) if args.q else None
    _validate_realization(args.realization, p, q)
    conv = _convention(args.convention) if args.convention else ("monomial" if q is None else "orthonormal")
    subspace = args.subspace or "F0"
    mats = materialize(sig, args.realization, p, q=q, subspace=subspace, cap=args.cap,
                       convention=conv)
    text = format_matrix_export(sig, args.realization, p, q, conv, subspace, mats)
    parsed = parse_matrix_export(text)
    rendered = {}
    for g in _gen_order(sig):
        rendered[str(g)] = [
            (r, c, v.canonical_str() if isinstance(v, CoeffExact) else numeric_str(v))
            for (r, c), v in mats[g].triplets()
        ]
    ok = parsed["generators"] == rendered and parsed["basis"] == list(
        next(iter(mats.values())).basis.states
    )
    print(f"round-trip of matrix export: {'identical' if ok else 'MISMATCH'}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0 if ok else 1


def _cmd_eval(args) -> int:
    sig = _signature(args)
    p, q = _parse_p(args.p), _parse_q(args.q)
    _validate_realization(args.realization, p, q)
    real = realization(args.realization, sig)
    ast = parse_expr(args.expr, sig)
    expr = ast_to_operator(ast, real)
    state = tuple(int(x) for x in args.state.split(","))
    if len(state) != sig.num_modes:
        raise UsageError(f"state needs {sig.num_modes} occupation numbers")
    conv = _convention(args.convention) if args.convention else ("monomial" if q is None else "orthonormal")
    if q is None:
        eng = Engine(sig, mode="exact", convention=conv, p=p)
    else:
        if isinstance(q, list):
            raise UsageError("eval takes a single q value")
        eng = Engine(sig, mode="numeric", convention=conv, q=q, p=p)
    vec = eng.apply(expr, state)
    if not vec:
        print("0")
        return 0
    for s in sorted(vec, key=lambda t: (sum(t), t)):
        v = vec[s]
        val = v.canonical_str() if isinstance(v, CoeffExact) else numeric_str(v)
        print(f"state {','.join(map(str, s))}: {val}")
    return 0


# -- argument parsing ---------------------------------------------------


def _require_int_p(args) -> int:
    p = _parse_p(args.p)
    if not isinstance(p, int):
        raise UsageError("this command needs an integer --p")
    return p


def _require_q(args) -> float:
    q = _parse_q(args.q)
    if not isinstance(q, float):
        raise UsageError("this command needs a single numeric --q")
    return q


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qglnm",
        description="Oscillator realizations of the quantum superalgebra "
        "U_q[gl(n/m)]: relation verification and module analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p_, realization=True):
        p_.add_argument("--n", type=int, required=True, help="number of even labels (n >= 2)")
        p_.add_argument("--m", type=int, required=True, help="number of odd labels (m >= 0)")
        if realization:
            p_.add_argument("--realization", choices=REALIZATIONS, default=DYSON)
            p_.add_argument("--p", default="formal",
                            help="occupation threshold: integer, real, or 'formal'")
            p_.add_argument("--q", default=None,
                            help="deformation parameter: real, comma list, or 'formal' "
                                 "(unset: formal for dyson, default samples for verify hp)")
            p_.add_argument("--cap", type=int, default=None, help="probe degree cap")
            p_.add_argument("--convention", choices=("exact", "monomial", "orthonormal"),
                            default=None, help="basis convention ('exact' = monomial)")
            p_.add_argument("--tolerance", type=float, default=1e-10)
            p_.add_argument("--out", default=None, help="write the report/export here")

    p_rel = sub.add_parser("relations", help="print the defining relation list")
    p_rel.add_argument("--n", type=int, required=True)
    p_rel.add_argument("--m", type=int, required=True)
    p_rel.add_argument("--out", default=None)
    p_rel.set_defaults(func=_cmd_relations)

    p_ver = sub.add_parser("verify", help="verify all defining relations under a realization")
    common(p_ver)
    p_ver.add_argument("--mutation", default=None,
                       help="seeded defect for verifier sensitivity testing")
    p_ver.add_argument("--classical", action="store_true",
                       help="exact q = 1 limit (brackets become their arguments)")
    p_ver.set_defaults(func=_cmd_verify)

    p_mat = sub.add_parser("matrices", help="export generator matrices on a finite subspace")
    common(p_mat)
    p_mat.add_argument("--subspace", choices=("F0", "F1-slice", "quotient-F0"), default="F0")
    p_mat.set_defaults(func=_cmd_matrices)

    p_ana = sub.add_parser("analyze", help="run a representation-level check")
    common(p_ana)
    p_ana.add_argument("--check", required=True,
                       choices=("invariance", "unitarity", "highest-weight", "typicality",
                                "inequivalence", "cyclicity", "deformed-ops", "reimport"))
    p_ana.add_argument("--p2", type=int, default=None, help="second threshold (inequivalence)")
    p_ana.add_argument("--subspace", choices=("F0", "F1-slice", "quotient-F0"), default=None)
    p_ana.set_defaults(func=_cmd_analyze)

    p_ev = sub.add_parser("eval", help="apply a generator expression to a state")
    common(p_ev)
    p_ev.add_argument("--expr", required=True)
    p_ev.add_argument("--state", required=True, help="occupation numbers l1,l2,...")
    p_ev.set_defaults(func=_cmd_eval)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ExprSyntaxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
