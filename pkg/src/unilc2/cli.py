"""Command-line entry point.

Subcommands: verify, arf, boundary, formation, machine, replay, unil.
Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage
error (argparse), 3 domain error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import complexes, formations, forms, rim, witt
from .registry import SweepConfig, run_registry
from .rings import (
    AlgebraError,
    C2Poly,
    Mat,
    PolyF2,
    PolyInt,
    format_matrix,
    parse_matrix,
    parse_poly,
)

EXIT_OK, EXIT_VERIFY_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


def _poly_int(text: str) -> PolyInt:
    return parse_poly(text, PolyInt)


def _dump(directory: str, name: str, mat: Mat):
    os.makedirs(directory, exist_ok=True)
    with open(os.path.join(directory, name + ".txt"), "w", encoding="utf-8") as fh:
        fh.write(format_matrix(mat) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify(args) -> int:
    cfg = SweepConfig(
        max_deg=args.max_deg,
        coeffs=tuple(args.coeff_set),
        machine_deg_triples=args.machine_deg_triples,
        machine_deg_pairs=args.machine_deg_pairs,
    )
    report = run_registry(cfg, pattern=args.filter, threads=args.threads)
    for line in report.human_lines():
        print(line)
    if args.summary:
        with open(args.summary, "w", encoding="utf-8") as fh:
            fh.write("\n".join(report.summary_lines()) + "\n")
    return EXIT_OK if report.ok else EXIT_VERIFY_FAIL


def cmd_arf(args) -> int:
    if args.file:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read().strip()
    else:
        text = args.psi
    psi = parse_matrix(text, PolyF2)
    klass = forms.arf(forms.QuadraticForm(psi, 1))
    print(str(klass))
    print(f"reduced: {'yes' if klass.is_reduced() else 'no'}")
    return EXIT_OK


def cmd_boundary(args) -> int:
    q = _poly_int(args.q)
    form = forms.make_P(q.mod2(), PolyF2.one())
    psi, chi = rim.canonical_P_lifts(q)
    steps = rim.boundary_steps(rim.BoundaryInput(form, psi, chi))
    if args.show_steps:
        for label, pair in (
            ("step 1 (glued over the symmetrization)", steps.over_phi),
            ("step 2 (glued over the identity)", steps.over_id),
        ):
            print(label)
            for name, blk in (
                ("gamma", pair.gamma),
                ("mu", pair.mu),
                ("theta", pair.theta),
            ):
                print(f"  {name}: {format_matrix(blk[0])} | {format_matrix(blk[1])}")
    result = steps.result
    print("gamma=" + format_matrix(result.gamma))
    print("mu=" + format_matrix(result.mu))
    print("theta=" + format_matrix(result.theta))
    print("epsilon=-1")
    same = result == formations.make_Q(q)
    print(f"equals the Q-generator: {'yes' if same else 'no'}")
    return EXIT_OK if same else EXIT_VERIFY_FAIL


def _read_formation(path: str) -> formations.SplitFormation:
    fields = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            fields[key.strip()] = value.strip()
    ring = {"Z[x]": PolyInt, "F2[x]": PolyF2, "Z[C2][x]": C2Poly}[
        fields.get("ring", "Z[C2][x]")
    ]
    return formations.SplitFormation(
        parse_matrix(fields["gamma"], ring),
        parse_matrix(fields["mu"], ring),
        parse_matrix(fields["theta"], ring),
        int(fields.get("epsilon", "-1")),
    )


def cmd_formation(args) -> int:
    if args.action == "make-M":
        f = formations.make_M(_poly_int(args.p), _poly_int(args.g))
        print("ring=Z[C2][x]")
        print("epsilon=-1")
        print("gamma=" + format_matrix(f.gamma))
        print("mu=" + format_matrix(f.mu))
        print("theta=" + format_matrix(f.theta))
        return EXIT_OK
    f = _read_formation(args.file)
    print(f"hessian: {'pass' if f.hessian_holds() else 'fail'}")
    try:
        print(f"duality: {'pass' if formations.verify_poincare(f) else 'fail'}")
    except formations.UnsupportedShapeError:
        print("duality: unsupported shape (mu is not 2*Id)")
    print(f"graph: {'yes' if formations.is_graph(f) else 'no'}")
    return EXIT_OK


def cmd_machine(args) -> int:
    p = _poly_int(args.p)
    g = _poly_int(args.g)
    p2 = _poly_int(args.p2) if args.p2 else None
    if args.relation == 1 and p2 is None:
        raise AlgebraError("relation 1 needs --p2")
    f, ncd, expected = complexes.relation_fixture(args.relation, p, g, p2)
    if args.dump:
        _dump(args.dump, "pi", ncd.pi)
        _dump(args.dump, "chi", ncd.chi)
        _dump(args.dump, "gamma", f.gamma)
        _dump(args.dump, "theta", f.theta)
    result = complexes.run_machine(f, ncd)
    for stage in result.stages:
        print(f"stage {stage}: ok")
    if args.dump:
        c = complexes.formation_to_complex(f)
        psi_hat = complexes.build_psi_hat(c, ncd)
        bundle = complexes.build_null_cobordism(c, ncd)
        _dump(args.dump, "psi1-hat", psi_hat.psi1)
        _dump(args.dump, "d-D", bundle.d_d)
        union = complexes.build_union(c, psi_hat, bundle)
        _dump(args.dump, "union-d2", union.d_f2)
        _dump(args.dump, "union-d1", union.d_f1)
        obs = complexes.instant_obstruction(union)
        _dump(args.dump, "obstruction", obs.big.psi)
        _dump(args.dump, "obstruction-reduced", obs.reduced.psi)
    print(f"arf: {result.arf}")
    print(f"expected: {expected}")
    return EXIT_OK if result.arf == expected else EXIT_VERIFY_FAIL


def _parse_word(text: str) -> witt.GenWord:
    """Word grammar: terms k*M(p;g) and k*Q(q) joined by +/-; 0 for zero."""
    s = text.replace(" ", "")
    if s in ("0", ""):
        return witt.GenWord.zero()
    word = witt.GenWord.zero()
    i = 0
    sign = 1
    while i < len(s):
        ch = s[i]
        if ch == "+":
            sign = 1
            i += 1
            continue
        if ch == "-":
            sign = -1
            i += 1
            continue
        coeff = 1
        j = i
        while j < len(s) and (s[j].isdigit()):
            j += 1
        if j > i and j < len(s) and s[j] == "*":
            coeff = int(s[i:j])
            i = j + 1
        kind = s[i]
        if kind not in ("M", "Q"):
            raise AlgebraError(f"bad word atom near {s[i:]!r}")
        if s[i + 1] != "(":
            raise AlgebraError("word atoms look like M(p;g) or Q(q)")
        close = s.index(")", i)
        inner = s[i + 2 : close]
        if kind == "M":
            ptext, _, gtext = inner.partition(";")
            atom = witt.GenWord.generator(_poly_int(ptext), _poly_int(gtext))
        else:
            atom = witt.GenWord.q_generator(_poly_int(inner))
        word = word + (sign * coeff) * atom
        sign = 1
        i = close + 1
    return word


def _parse_script(path: str) -> tuple:
    """Line format: rule then key=value pairs; start:/end: lines give the
    endpoint words."""
    steps = []
    start = end = None
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("start:"):
                start = _parse_word(line[len("start:"):])
                continue
            if line.startswith("end:"):
                end = _parse_word(line[len("end:"):])
                continue
            bits = line.split()
            rule = bits[0].upper()
            params = {}
            for bit in bits[1:]:
                key, _, value = bit.partition("=")
                if key == "n":
                    params["n"] = int(value)
                elif key == "dir":
                    params["dir"] = value
                elif key == "sign":
                    params["sign"] = 1 if value in ("+", "+1", "1") else -1
                else:
                    params[key] = _poly_int(value)
            steps.append(witt.Step(rule, params))
    if start is None or end is None:
        raise AlgebraError("script needs start: and end: lines")
    return witt.DerivationScript(tuple(steps)), start, end


def cmd_replay(args) -> int:
    script, start, end = _parse_script(args.script)
    try:
        closed = witt.replay(script, start, end)
    except witt.ReplayError as exc:
        print(f"invalid {exc}")
        return EXIT_DOMAIN
    print("chain closes" if closed else "chain does not close")
    return EXIT_OK if closed else EXIT_VERIFY_FAIL


def cmd_unil(args) -> int:
    answer = witt.unil_answer(args.n, args.group)
    print(f"residue {answer.residue}: {answer}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unilc2",
        description="exact verification of the quadratic-form and formation "
        "computations over Z[x], F2[x] and Z[C2][x]",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the check registry")
    v.add_argument("--filter", default=None, help="glob over check ids")
    v.add_argument("--max-deg", type=int, default=3)
    v.add_argument("--coeff-set", type=int, nargs="+", default=[0, 1, 2])
    v.add_argument("--machine-deg-triples", type=int, default=1)
    v.add_argument("--machine-deg-pairs", type=int, default=2)
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--summary", default="verify_summary.txt")
    v.set_defaults(fn=cmd_verify)

    a = sub.add_parser("arf", help="Arf class of a form matrix over F2[x]")
    a.add_argument("--file", help="file holding the psi matrix")
    a.add_argument("--psi", help="inline psi matrix, e.g. [x,1;0,1]")
    a.set_defaults(fn=cmd_arf)

    b = sub.add_parser("boundary", help="boundary formation of the rank-2 family")
    b.add_argument("--q", required=True)
    b.add_argument("--show-steps", action="store_true")
    b.set_defaults(fn=cmd_boundary)

    f = sub.add_parser("formation", help="build or check a split formation")
    fsub = f.add_subparsers(dest="action", required=True)
    fm = fsub.add_parser("make-M", help="print the generator M(p,g)")
    fm.add_argument("--p", required=True)
    fm.add_argument("--g", required=True)
    fc = fsub.add_parser("check", help="verdicts for a formation file")
    fc.add_argument("file")
    f.set_defaults(fn=cmd_formation)

    m = sub.add_parser("machine", help="run the gluing machine on a relation")
    m.add_argument("--relation", type=int, choices=(1, 2, 3, 4), required=True)
    m.add_argument("--p", required=True)
    m.add_argument("--p2")
    m.add_argument("--g", required=True)
    m.add_argument("--dump", help="directory for intermediate matrices")
    m.set_defaults(fn=cmd_machine)

    r = sub.add_parser("replay", help="replay a derivation script")
    r.add_argument("script")
    r.set_defaults(fn=cmd_replay)

    u = sub.add_parser("unil", help="answer table by residue mod 4")
    u.add_argument("--n", type=int, required=True)
    u.add_argument("--group", default="C2")
    u.set_defaults(fn=cmd_unil)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
