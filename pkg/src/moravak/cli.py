"""Command-line entry point: ``moravak <command> [options]``.

Every command writes tab-separated output (to ``--out`` or stdout) led by
``#`` comment lines naming the parameters.  The exit status is 0 exactly
when every check the command performs passes.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager
from typing import Iterator, TextIO

from .algebra import AlgebraContext, build_graded_action
from .characters import character_from_action, character_via_eq31
from .cyclotomic import Cyclotomic
from .decompose import (
    Representation,
    class_representatives,
    gl2f2_decompose,
    l_formula_52,
    perm_submodule,
    sl2f3_decompose,
)
from .fields import identity
from .groups import (
    GroupBoundError,
    GroupData,
    p_regular_classes,
    preset_group,
    preset_matrices,
    uv_class_presets,
)
from .tables import run_table, self_audit
from .theorems import run_checks


def render_exact(value: Cyclotomic) -> str:
    """Stable text form: an integer polynomial in z = exp(2 pi i / m), prefixed by m."""
    m = value.minimal()
    if m.is_rational():
        return str(m.rational_value())
    terms = []
    for i, c in enumerate(m.coeffs):
        if not c:
            continue
        mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
        if mono and c == 1:
            terms.append(mono)
        elif mono and c == -1:
            terms.append(f"-{mono}")
        else:
            terms.append(f"{c}{'*' + mono if mono else ''}")
    return f"[{m.order}] " + " + ".join(terms).replace("+ -", "- ")


@contextmanager
def _output(path: str | None) -> Iterator[TextIO]:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh
    else:
        yield sys.stdout


def _header(fh: TextIO, **fields) -> None:
    fh.write("# " + " ".join(f"{k}={v}" for k, v in fields.items() if v is not None) + "\n")


def _group(args, p: int, d: int) -> GroupData:
    label = args.group or "GL"
    return GroupData(preset_matrices(p, d, label), p, d, max_order=args.max_group_order)


def _ks(args, N: int) -> list[int]:
    return list(range(N)) if args.k is None else [args.k % N]


def cmd_action(args) -> int:
    ctx = AlgebraContext(args.p, args.n, args.d)
    gens = preset_matrices(args.p, args.d, args.group or "UV")
    labels = [f"{args.group or 'UV'}[{i}]" for i in range(len(gens))]
    if not gens:
        # the trivial group still gets one matrix: its identity element
        gens, labels = [identity(args.d)], ["identity"]
    act = build_graded_action(ctx, gens, args.k or 0, args.variant, args.reduced, labels)
    with _output(args.out) as fh:
        _header(fh, command="action", p=args.p, n=args.n, d=args.d, k=act.k, group=args.group or "UV",
                variant=args.variant, reduced=args.reduced, dim=act.dim)
        for i, e in enumerate(act.basis):
            fh.write(f"basis\t{i}\t{','.join(map(str, e))}\n")
        for lab, m in zip(act.labels, act.matrices):
            fh.write(f"matrix\t{lab}\t{m.shape[0]}x{m.shape[1]}\n")
            for row in m:
                fh.write("\t".join(map(str, row)) + "\n")
    return 0


def cmd_character(args) -> int:
    p, n, d = args.p, args.n, args.d
    G = _group(args, p, d)
    ctx = AlgebraContext(p, n, d)
    reps = p_regular_classes(G, p, bound=args.max_group_order or 10**4)
    ok = True
    with _output(args.out) as fh:
        _header(fh, command="character", p=p, n=n, d=d, group=args.group or "GL", variant=args.variant)
        fh.write("class\torder\tk\tvalue_exact\tvalue_decimal\tcheck\n")
        for k in _ks(args, ctx.grade_modulus):
            for i in reps:
                g = G.elements[i]
                t = G.orders[i]
                m = build_graded_action(ctx, [g], k, args.variant, args.reduced).matrices[0]
                val = character_from_action(m, p, t)
                # the generating-function value covers the unreduced linear piece
                ref = character_via_eq31(p, n, d, k, g)
                if args.reduced and k == 0:
                    ref = ref - 1
                same = val == ref
                ok &= same
                fh.write(f"g{i}\t{t}\t{k}\t{render_exact(val)}\t{val.decimal(6)}\t{'agree' if same else 'DISAGREE'}\n")
    return 0 if ok else 1


def cmd_permdecomp(args) -> int:
    p, n, d = args.p, args.n, args.d
    label = args.group or "UV"
    G = GroupData(preset_matrices(p, d, label), p, d, max_order=args.max_group_order)
    preset = uv_class_presets(G) if (label == "UV" and d == 3) else None
    classes = class_representatives(G, preset)
    ctx = AlgebraContext(p, n, d)
    with _output(args.out) as fh:
        _header(fh, command="permdecomp", p=p, n=n, d=d, group=label, variant=args.variant, reduced=args.reduced,
                ordering=",".join(H.label for H in classes))
        fh.write("n\tk\tdim\tdimM'\tverdict\t" + "\t".join(H.label for H in classes) + "\n")
        for k in _ks(args, ctx.grade_modulus):
            act = build_graded_action(ctx, G.gens, k, args.variant, args.reduced)
            dec = perm_submodule(Representation(G, act.matrices), classes, complete=True)
            verdict = "permutation" if dec.is_permutation_module else "not-permutation"
            fh.write(f"{n}\t{k}\t{dec.dim_M}\t{dec.dim_M_prime}\t{verdict}\t" + "\t".join(map(str, dec.multiplicities)) + "\n")
    return 0


def cmd_sl2f3(args) -> int:
    n = args.n
    G = preset_group(3, 2, "SL2F3")
    ctx = AlgebraContext(3, n, 2)
    with _output(args.out) as fh:
        _header(fh, command="sl2f3", p=3, n=n, d=2, variant=args.variant, reduced=args.reduced)
        fh.write("n\tk\tr1..r7\tI1\tI2\tI3\tI4\tI5\tI6\tI7\n")
        for k in _ks(args, ctx.grade_modulus):
            act = build_graded_action(ctx, G.gens, k, args.variant, args.reduced)
            rep = sl2f3_decompose(Representation(G, act.matrices))
            fh.write(f"{n}\t{k}\t{','.join(map(str, rep.ranks))}\t" + "\t".join(map(str, rep.counts)) + "\n")
    return 0


def cmd_gl2f2(args) -> int:
    n = args.n
    G = preset_group(2, 2, "GL2F2")
    ctx = AlgebraContext(2, n, 2)
    ok = True
    with _output(args.out) as fh:
        _header(fh, command="gl2f2", p=2, n=n, d=2, variant=args.variant)
        fh.write("n\tk\tT\tN\tV\tclosed_form\n")
        for k in _ks(args, ctx.grade_modulus):
            act = build_graded_action(ctx, G.gens, k, args.variant)
            got = gl2f2_decompose(Representation(G, act.matrices))
            ref = l_formula_52(n, k)
            ok &= got == ref
            fh.write(f"{n}\t{k}\t{got.t}\t{got.n}\t{got.v}\t{'match' if got == ref else 'MISMATCH'}\n")
    return 0 if ok else 1


def cmd_table(args) -> int:
    problems = self_audit()
    rep = run_table(args.id, jobs=args.jobs, extra=not args.published_only)
    with _output(args.out) as fh:
        _header(fh, command="table", table=args.id, **rep.header)
        for prob in problems:
            fh.write(f"# audit: {prob}\n")
        fh.write("n\tk\tstatus\t" + "\t".join(rep.columns) + "\texpected\tnote\n")
        for r in rep.rows:
            exp = "-" if r.expected is None else ",".join(map(str, r.expected))
            fh.write(f"{r.n}\t{r.k}\t{r.status}\t" + "\t".join(map(str, r.got)) + f"\t{exp}\t{r.extra}\n")
    return 0 if rep.ok and not problems else 1


def cmd_theorems(args) -> int:
    verdicts = run_checks(args.selector)
    with _output(args.out) as fh:
        _header(fh, command="theorems", selector=args.selector)
        for v in verdicts:
            fh.write(v.line() + "\n")
    return 0 if all(v.ok for v in verdicts) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moravak", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, p=True, n=True, d=True):
        if p:
            sp.add_argument("--p", type=int, required=True, help="prime")
        if n:
            sp.add_argument("--n", type=int, required=True, help="height")
        if d:
            sp.add_argument("--d", type=int, required=True, help="rank of V")
        sp.add_argument("--k", type=int, default=None, help="grade (default: all)")
        sp.add_argument("--group", default=None, help="preset label: UV, A, B, C, AB, AC, BC, ABC:<j>, D, gq, gprime, SL2F3, GL2F2, GL, SL")
        sp.add_argument("--variant", choices=("K", "L"), default="K")
        sp.add_argument("--reduced", action="store_true", help="drop the monomial 1 from grade 0")
        sp.add_argument("--out", default=None)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--max-group-order", type=int, default=None)

    common(sub.add_parser("action", help="action matrices on one graded piece"))
    common(sub.add_parser("character", help="exact Brauer characters on p-regular classes"))
    common(sub.add_parser("permdecomp", help="maximal permutation submodule over a p-group"))
    common(sub.add_parser("sl2f3", help="SL_2(F_3)-summands (p = 3, d = 2)"), p=False, d=False)
    common(sub.add_parser("gl2f2", help="GL_2(F_2)-summands (p = 2, d = 2)"), p=False, d=False)

    tp = sub.add_parser("table", help="recompute a published table and diff it")
    tp.add_argument("id", choices=("8.1", "8.2", "8.3", "8.4", "8.5", "8.6"))
    tp.add_argument("--out", default=None)
    tp.add_argument("--jobs", type=int, default=1)
    tp.add_argument("--published-only", action="store_true", help="skip rows beyond the printed ones")

    th = sub.add_parser("theorems", help="run structural checks")
    th.add_argument("selector", nargs="?", default="all", help="comma list of 1.1a,1.1c,1.1d,1.1e,1.2b,1.2c,1.3,1.4 or 'all'")
    th.add_argument("--out", default=None)
    return parser


COMMANDS = {
    "action": cmd_action,
    "character": cmd_character,
    "permdecomp": cmd_permdecomp,
    "sl2f3": cmd_sl2f3,
    "gl2f2": cmd_gl2f2,
    "table": cmd_table,
    "theorems": cmd_theorems,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("p", "n", "d"):
        v = getattr(args, name, None)
        if v is not None and v < 1:
            print(f"error: --{name} must be positive", file=sys.stderr)
            return 2
    try:
        return COMMANDS[args.command](args)
    except (ValueError, GroupBoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
