"""Command-line front end.

Vectors are comma-separated integers (``5,5,2``); bases are three such columns
separated by semicolons (``5,0,0;0,3,4;0,4,-3``). Exit status is 0 on success,
1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .cubic import (
    NotCubic,
    classify,
    cubic_basis_extract,
    gamma,
    gamma_any,
    gamma_decompositions,
    gamma_membership_def,
)
from .errors import CubicLatticeError
from .int3 import Basis3, Vec3, icbrt, is_primitive, vec
from .numtheory import prime_vector, reverse_construct, scale_down, scale_up
from .poset import divisor_family, join_report, meet_report
from .verify import run_checks

MAX_EXPORT_POINTS = 10**6

VALUE_FLAGS = {"--v", "--t", "--a", "--basis", "--l1", "--l2", "--box"}


def parse_vec(text: str) -> Vec3:
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer vector: {text!r}")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected 3 coordinates, got {len(parts)}")
    return vec(parts)


def parse_basis(text: str) -> Basis3:
    cols = [parse_vec(c) for c in text.split(";")]
    if len(cols) != 3:
        raise argparse.ArgumentTypeError(f"expected 3 columns, got {len(cols)}")
    try:
        return Basis3(tuple(cols))
    except CubicLatticeError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def parse_box(text: str):
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    if len(parts) != 6:
        raise argparse.ArgumentTypeError("box needs x0,x1,y0,y1,z0,z1")
    return tuple(parts)


def positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _fmt(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _fmt_basis(B: Basis3) -> str:
    return " ".join(_fmt(c) for c in B.cols)


def _emit(args, payload: dict, lines: List[str]) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        print("\n".join(lines))


def cmd_gamma(args) -> int:
    if args.any:
        L = gamma_any(args.v, args.d)
    elif not is_primitive(args.v):
        raise CubicLatticeError(f"{_fmt(args.v)} is not primitive; pass --any")
    else:
        L = gamma(args.v, args.d)
    payload = L.to_json()
    lines = [
        f"edge {L.edge} = {L.k} * {L.d}, witness v = {_fmt(L.v)}",
        f"cubic basis: {_fmt_basis(L.basis)}",
        f"hnf: {_fmt_basis(L.hnf)}",
        f"coordinates of {_fmt(args.v)}: {_fmt(L.coords(args.v))}",
    ]
    if args.all_decompositions:
        decomps = gamma_decompositions(args.v, args.d)
        payload = dict(payload, decompositions=[
            {"d1": d1, "d2": d2, "lattice": gamma_any(args.v, args.d, d2).to_json()}
            for d1, d2 in decomps
        ])
        lines.append("decompositions d = d1*d2: " + ", ".join(f"{d1}*{d2}" for d1, d2 in decomps))
    _emit(args, payload, lines)
    return 0


def cmd_cubic_basis(args) -> int:
    B = cubic_basis_extract(args.basis)
    if isinstance(B, NotCubic):
        _emit(args, {"cubic": False, "reason": B.reason}, [f"not cubic: {B.reason}"])
        return 0
    e = icbrt(B.index)
    _emit(args, {"cubic": True, "edge": e, "basis": B.to_json()},
          [f"cubic basis (edge {e}): {_fmt_basis(B)}"])
    return 0


def cmd_classify(args) -> int:
    r = classify(args.basis)
    if isinstance(r, NotCubic):
        _emit(args, {"cubic": False, "reason": r.reason}, [f"not cubic: {r.reason}"])
    else:
        _emit(args, r.to_json(), [f"cubic: {r.k} * gamma({_fmt(r.v)}, {r.d}), edge {r.edge}"])
    return 0


def cmd_member(args) -> int:
    if not is_primitive(args.v):
        raise CubicLatticeError(f"{_fmt(args.v)} is not primitive")
    L = gamma(args.v, args.d)
    member = gamma_membership_def(args.v, args.d, args.a)
    coords = L.coords(args.a)
    payload = {"member": member, "coords": list(coords) if coords is not None else None}
    lines = [f"member: {'yes' if member else 'no'}"]
    if coords is not None:
        lines.append(f"coordinates in cubic basis {_fmt_basis(L.basis)}: {_fmt(coords)}")
    _emit(args, payload, lines)
    return 0


def cmd_prime_vector(args) -> int:
    w = prime_vector(args.p)
    n = sum(x * x for x in w)
    _emit(args, {"p": args.p, "vector": list(w), "norm2": n},
          [f"{_fmt(w)}, squared length {n} = {args.p}^2 * {n // args.p**2}"])
    return 0


def cmd_reverse(args) -> int:
    tr = reverse_construct(args.v, args.d)
    lines = [f"u = {_fmt(tr.u)}"]
    for s in tr.steps:
        lines.append(
            f"  p={s.p} w={_fmt(s.w)} permutation={list(s.permutation)} "
            f"flip={s.sign_flip} basis={_fmt_basis(s.basis)} -> {_fmt(s.result)}"
        )
    lines.append(f"certificate basis: {_fmt_basis(tr.certificate)}")
    _emit(args, tr.to_json(), lines)
    return 0


def cmd_scale_down(args) -> int:
    x = scale_down(args.t, args.d)
    _emit(args, {"t": list(args.t), "d": args.d, "result": list(x)}, [_fmt(x)])
    return 0


def cmd_scale_up(args) -> int:
    x = scale_up(args.t, args.d)
    _emit(args, {"t": list(args.t), "d": args.d, "result": list(x)}, [_fmt(x)])
    return 0


def _bound_lines(title: str, lattices: List[dict], exists_key: str, exists: bool) -> List[str]:
    lines = [f"{title}:"]
    for L in lattices:
        lines.append(f"  edge {L['edge']}: hnf {' '.join(_fmt(c) for c in L['hnf'])}")
    lines.append(f"{exists_key}: {'yes' if exists else 'no'}")
    return lines


def cmd_poset_join(args) -> int:
    rep = join_report(args.l1, args.l2, args.bound)
    _emit(args, rep, _bound_lines("minimal upper bounds", rep["minimal_upper_bounds"],
                                  "join exists", rep["join_exists"]))
    return 0


def cmd_poset_meet(args) -> int:
    rep = meet_report(args.l1, args.l2, args.bound)
    _emit(args, rep, _bound_lines("maximal lower bounds", rep["maximal_lower_bounds"],
                                  "meet exists", rep["meet_exists"]))
    return 0


def cmd_divisor_family(args) -> int:
    fam = divisor_family(args.v)
    lines = [f"d_max = {fam.d_max}"]
    for d, L in sorted(fam.members.items()):
        lines.append(f"  d={d}: {_fmt_basis(L.basis)}")
    _emit(args, fam.to_json(), lines)
    return 0


def cmd_verify(args) -> int:
    results = run_checks(args.max_norm, args.max_d)
    ok = all(r.passed for r in results)
    summary = "all checks passed" if ok else "some checks failed"
    payload = {
        "checks": [{"name": r.name, "passed": r.passed, "cases": r.cases, "detail": r.detail}
                   for r in results],
        "passed": ok,
    }
    _emit(args, payload, [r.line() for r in results] + [summary])
    return 0 if ok else 1


def export_points(v: Vec3, d: int, box) -> dict:
    x0, x1, y0, y1, z0, z1 = box
    n = max(0, x1 - x0 + 1) * max(0, y1 - y0 + 1) * max(0, z1 - z0 + 1)
    if n > MAX_EXPORT_POINTS:
        raise CubicLatticeError(f"box holds {n} points, limit is {MAX_EXPORT_POINTS}")
    L = gamma_any(v, d)
    ambient = [
        (x, y, z)
        for x in range(x0, x1 + 1)
        for y in range(y0, y1 + 1)
        for z in range(z0, z1 + 1)
    ]
    return {
        "gamma_points": [list(p) for p in ambient if p in L.hnf],
        "ambient_points": [list(p) for p in ambient],
        "v": list(v),
        "cubic_basis": L.basis.to_json(),
    }


def cmd_export(args) -> int:
    doc = export_points(args.v, args.d, args.box)
    _emit(args, doc, [
        f"cubic basis: {' '.join(_fmt(c) for c in doc['cubic_basis'])}",
        f"{len(doc['gamma_points'])} lattice points among {len(doc['ambient_points'])} box points",
    ] + [_fmt(p) for p in doc["gamma_points"]])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubelat", description="Cubic sublattices of Z³.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        p.set_defaults(func=func)
        return p

    p = add("gamma", cmd_gamma, "cubic sublattice of edge D containing V")
    p.add_argument("--v", type=parse_vec, required=True)
    p.add_argument("--d", type=positive_int, required=True)
    p.add_argument("--any", action="store_true", help="allow imprimitive V")
    p.add_argument("--all-decompositions", action="store_true",
                   help="also list every admissible split d = d1*d2")

    p = add("cubic-basis", cmd_cubic_basis, "extract a cubic basis of a lattice")
    p.add_argument("--basis", type=parse_basis, required=True)

    p = add("classify", cmd_classify, "write a lattice as k * gamma(v, d)")
    p.add_argument("--basis", type=parse_basis, required=True)

    p = add("member", cmd_member, "membership of A in gamma(V, D)")
    p.add_argument("--v", type=parse_vec, required=True)
    p.add_argument("--d", type=positive_int, required=True)
    p.add_argument("--a", type=parse_vec, required=True)

    p = add("prime-vector", cmd_prime_vector, "primitive vector with P² | squared length")
    p.add_argument("--p", type=int, required=True)

    p = add("reverse", cmd_reverse, "lift V to u with coordinates V in a cubic basis of gamma(u, D)")
    p.add_argument("--v", type=parse_vec, required=True)
    p.add_argument("--d", type=positive_int, required=True)

    for name, func in (("scale-down", cmd_scale_down), ("scale-up", cmd_scale_up)):
        p = add(name, func, f"{name.replace('-', ' ')} a coprime triple by D")
        p.add_argument("--t", type=parse_vec, required=True)
        p.add_argument("--d", type=positive_int, required=True)

    for name, func in (("poset-join", cmd_poset_join), ("poset-meet", cmd_poset_meet)):
        p = add(name, func, "bounded search for " + ("joins" if "join" in name else "meets"))
        p.add_argument("--l1", type=parse_basis, required=True)
        p.add_argument("--l2", type=parse_basis, required=True)
        p.add_argument("--bound", type=positive_int, default=9)

    p = add("divisor-family", cmd_divisor_family, "all gamma(V, d) for admissible d")
    p.add_argument("--v", type=parse_vec, required=True)

    p = add("verify", cmd_verify, "run every brute-force oracle suite")
    p.add_argument("--max-norm", type=positive_int, default=200)
    p.add_argument("--max-d", type=positive_int, default=5)

    p = add("export", cmd_export, "lattice points of gamma(V, D) in a box")
    p.add_argument("--v", type=parse_vec, required=True)
    p.add_argument("--d", type=positive_int, required=True)
    p.add_argument("--box", type=parse_box, required=True)

    return parser


def _join_values(argv: List[str]) -> List[str]:
    # "--v -1,2,2" would otherwise be read as an unknown option
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_join_values(argv))
    try:
        return args.func(args)
    except CubicLatticeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
