"""Command line interface: ``zkwedge <command> ...``.

Input complexes use the ``.scx`` text format::

    vertices: 4
    # comment
    1 2 3
    2 4

Exit codes: 0 success, 1 usage or input error, 2 refused computation
(size caps, non-shifted input for the decomposer), 3 internal invariant
violation or oracle mismatch.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .errors import ComplexError, NonRegularStepError, NotShiftedError, SizeLimitError, WedgeError
from .scomplex import SimplicialComplex, construct, is_shifted, skeleton, standardize


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


# .scx documents

@dataclass
class ScxDocument:
    n: int
    faces: list
    comments: list = field(default_factory=list)

    def complex(self) -> SimplicialComplex:
        return construct(self.n, self.faces)


def parse_scx_document(text: str) -> ScxDocument:
    n = None
    faces, comments = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line, _, comment = raw.partition("#")
        if _:
            comments.append(comment.strip())
        line = line.strip()
        if not line:
            continue
        if n is None:
            key, sep, val = line.partition(":")
            if not sep or key.strip() != "vertices":
                raise ComplexError(f"line {lineno}: expected header 'vertices: n'")
            try:
                n = int(val)
            except ValueError:
                raise ComplexError(f"line {lineno}: bad vertex count {val.strip()!r}") from None
            if n < 0:
                raise ComplexError(f"line {lineno}: negative vertex count")
            continue
        try:
            face = [int(tok) for tok in line.split()]
        except ValueError:
            raise ComplexError(f"line {lineno}: faces are lists of integers") from None
        for v in face:
            if not 1 <= v <= n:
                raise ComplexError(f"line {lineno}: vertex {v} out of range 1..{n}")
        if len(set(face)) != len(face):
            raise ComplexError(f"line {lineno}: duplicate vertex in face")
        faces.append(face)
    if n is None:
        raise ComplexError("missing header 'vertices: n'")
    return ScxDocument(n, faces, comments)


def parse_scx(text: str) -> SimplicialComplex:
    return parse_scx_document(text).complex()


def print_scx(K: SimplicialComplex) -> str:
    """Normalized document: header and maximal faces in lex order, relabeled onto 1..n if needed."""
    if K.ground != tuple(range(1, K.n + 1)):
        K, _ = standardize(K)
    lines = [f"vertices: {K.n}"]
    lines += [" ".join(map(str, f)) for f in K.maximal_faces if f]
    return "\n".join(lines) + "\n"


# command implementations; each returns (result dict, text lines, warnings)

def _read(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return parse_scx(text)


def _faces_json(K):
    return [list(f) for f in K.maximal_faces if f]


def cmd_is_shifted(K, args):
    v = is_shifted(K, "search" if args.search else "given")
    res = {"shifted": v.shifted, "mode": "search" if args.search else "given",
           "order": list(v.order) if v.order else None,
           "violation": ({"face": list(v.violation[0]), "vertex": v.violation[1], "replacement": v.violation[2]}
                         if v.violation else None)}
    if v.shifted:
        text = [f"shifted (order {' '.join(map(str, v.order))})"]
    elif v.violation:
        f, a, b = v.violation
        text = [f"not shifted: face {' '.join(map(str, f))}, vertex {a} -> {b} leaves the complex"]
    else:
        text = ["not shifted under any vertex order"]
    return res, text, []


def _relabel_for_decompose(K, search):
    from .scomplex import relabel
    if is_shifted(K, "given").shifted or not search:
        return K, None
    v = is_shifted(K, "search")
    if not v.shifted:
        return K, None
    fwd = {old: new for old, new in zip(v.order, K.ground)}
    return relabel(K, fwd, K.ground), {new: old for old, new in fwd.items()}


def cmd_decompose(K, args):
    from .decomposer import decompose, decompose_with_trace
    warnings = []
    K2, back = _relabel_for_decompose(K, args.search)
    if back is not None:
        warnings.append("input relabeled to a shifted vertex order; summand labels are mapped back")
    if args.trace:
        dec = decompose_with_trace(K2)
        W = dec.wedge
    else:
        W = decompose(K2)
    if back is not None:
        W = W.relabel(back)
    S = W.realize(args.loop_dim)
    res = {"loop_dim": args.loop_dim, "spheres": S.to_json(), "summands": W.to_json()}
    text = [str(S)]
    if args.trace:
        steps = []
        for tr in dec.step_traces():
            steps.append({"simplex": list(tr.step.simplex), "S": list(tr.step.S), "T": list(tr.step.T),
                          "phase": tr.step.phase, "C": tr.C.to_json(), "D": tr.D.to_json(),
                          "F_after": tr.F_after.to_json()})
        res["trace"] = steps
        levels = []
        for node in dec.root.walk():
            if node.kind == "connected":
                levels.append({"vertices": list(node.vertices),
                               "link_fibre": node.link_fibre.to_json(),
                               "rest_fibre": node.rest_fibre.to_json(),
                               "trivial_part": node.split.trivial_part.to_json(),
                               "retract_part": node.split.retract_part.to_json()})
        res["levels"] = levels
        text.append(f"{len(steps)} adjunction steps over {len(levels)} recursion levels")
        for st in steps:
            text.append(f"  adjoin {st['simplex']} S={st['S']} T={st['T']}: |C|={len(st['C'])} |D|={len(st['D'])}")
    return res, text, warnings


def cmd_betti(K, args):
    from .hochster import bigraded_betti
    B = bigraded_betti(K, workers=args.workers)
    if args.bigraded:
        rows = [{"sigma": list(s), "d": d, "rank": r, "torsion": list(t)} for s, d, r, t in B.rows()]
        text = [f"({' '.join(map(str, s))}) {d} {r}" + (f" torsion {list(t)}" if t else "") for s, d, r, t in B.rows()]
        res = {"entries": rows}
    else:
        res = {"by_degree": {str(d): r for d, r in B.by_degree().items()}}
        text = [f"H^{d}: rank {r}" for d, r in B.by_degree().items()]
    res["torsion_free"] = B.torsion_free
    text.append("torsion-free" if B.torsion_free else "integral torsion present")
    return res, text, []


def cmd_profile(K, args):
    from .hochster import zk_profile
    p = zk_profile(K, workers=args.workers)
    res = {"poincare": list(p.poincare.coeffs), "torsion_free": p.torsion_free,
           "sphere_candidate": p.sphere_candidate.to_json() if p.sphere_candidate is not None else None,
           "note": p.note}
    text = [f"P~(t) = {p.poincare}", "torsion-free" if p.torsion_free else "torsion present"]
    if p.sphere_candidate is not None:
        text.append(f"sphere candidate ({p.note}): {p.sphere_candidate}")
    return res, text, []


def cmd_poincare(K, args):
    from .hochster import zk_profile
    from .series import face_ring_poincare, golod_verdict, series_coeffs
    p = zk_profile(K, workers=args.workers)
    R = face_ring_poincare(K.n, p.poincare)
    v = golod_verdict(K)
    tag = f"equality (Golod: {v.reason})" if v.golod else "upper bound"
    coeffs = series_coeffs(R, args.order)
    res = {"numerator": list(R.num.coeffs), "denominator": list(R.den.coeffs),
           "coefficients": [str(c) for c in coeffs] if any(not isinstance(c, int) for c in coeffs) else coeffs,
           "tag": tag}
    text = [f"P(k[K]) = {R}", " ".join(map(str, coeffs)), tag]
    return res, text, []


def cmd_golod(K, args):
    from .series import golod_verdict
    v = golod_verdict(K)
    return {"status": v.status, "reason": v.reason}, [f"{v.status} ({v.reason})"], []


def cmd_skeleton(args):
    K = skeleton(args.n, args.q)
    return K, {"scx": print_scx(K), "faces": _faces_json(K)}, [print_scx(K).rstrip("\n")], []


def _parse_face(spec):
    if spec is None:
        return ()
    try:
        return tuple(int(x) for x in spec.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"bad face specification {spec!r}") from None


def cmd_compose(K1, K2, args):
    from .families import element, op_disjoint_union, op_glue, op_join
    e1, e2 = element(K1), element(K2)
    if args.kind == "union":
        e = op_disjoint_union(e1, e2)
    elif args.kind == "glue":
        e = op_glue(e1, e2, _parse_face(args.face1), _parse_face(args.face2))
    else:
        e = op_join(e1, e2)
    doc = print_scx(e.K)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc)
    res = {"kind": args.kind, "scx": doc, "t": e.t, "summands": e.W.to_json(),
           "spheres": e.spheres().to_json()}
    text = [doc.rstrip("\n"), f"t = {e.t}", f"virtual spheres: {e.spheres()}"]
    return e.K, res, text, []


def cmd_oracle_check(K, args):
    from .decomposer import decompose
    from .hochster import bigraded_betti
    K2, back = _relabel_for_decompose(K, args.search)
    W = decompose(K2)
    if back is not None:
        W = W.relabel(back)
    B = bigraded_betti(K, workers=args.workers)
    mism = []
    seen = set()
    for s, I, m in W.items():
        d = s + len(I)
        seen.add((I, d))
        if B.rank(I, d) != m:
            mism.append({"sigma": list(I), "d": d, "decomposer": m, "oracle": B.rank(I, d)})
    for (I, d), r in B.entries.items():
        if (I, d) not in seen:
            mism.append({"sigma": list(I), "d": d, "decomposer": 0, "oracle": r})
    if not B.torsion_free:
        mism.append({"torsion": [[list(s), d] for s, d in sorted(B.torsion)]})
    ok = not mism
    res = {"agree": ok, "checked": len(seen | set(B.entries)), "mismatches": mism}
    text = ["agree" if ok else f"MISMATCH at {len(mism)} entries"]
    return res, text, [], ok


# driver

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="zkwedge", description="Wedge decompositions of moment-angle complexes.")
    p.add_argument("--version", action="version", version=f"zkwedge {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--timing", action="store_true", help="report wall time in millis (breaks byte-determinism)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("is-shifted", parents=[common], help="test shiftedness")
    s.add_argument("file")
    s.add_argument("--search", action="store_true", help="try every vertex order (n <= 10)")

    s = sub.add_parser("decompose", parents=[common], help="sphere decomposition of Z_K")
    s.add_argument("file")
    s.add_argument("--loop-dim", type=int, choices=(1, 3), default=1)
    s.add_argument("--trace", action="store_true")
    s.add_argument("--search", action="store_true", help="relabel to a shifted order first")

    s = sub.add_parser("betti", parents=[common], help="cohomology of Z_K by full subcomplexes")
    s.add_argument("file")
    s.add_argument("--bigraded", action="store_true")
    s.add_argument("--workers", type=int, default=None)

    for name, hlp in (("profile", "Poincare polynomial and torsion of Z_K"),
                      ("poincare", "Poincare series of the face ring"),
                      ("golod", "Golod verdict")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("file")
        if name != "golod":
            s.add_argument("--workers", type=int, default=None)
        if name == "poincare":
            s.add_argument("--order", type=int, default=10)

    s = sub.add_parser("compose", parents=[common], help="disjoint union, glue or join two shifted complexes")
    s.add_argument("kind", choices=("union", "glue", "join"))
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--face1", default=None, help="face of the first complex, e.g. '1 2'")
    s.add_argument("--face2", default=None, help="face of the second complex")
    s.add_argument("--out", default=None, help="write the composed complex here")

    s = sub.add_parser("skeleton", parents=[common], help="all subsets of 1..n with at most q elements")
    s.add_argument("n", type=int)
    s.add_argument("q", type=int)

    s = sub.add_parser("oracle-check", parents=[common], help="compare decomposer and oracle")
    s.add_argument("file")
    s.add_argument("--workers", type=int, default=None)
    s.add_argument("--search", action="store_true")
    return p


def _hash(*complexes):
    h = hashlib.sha256()
    for K in complexes:
        h.update(print_scx(K).encode())
    return h.hexdigest()


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    err = sys.stderr
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"zkwedge: usage error: {e}", file=err)
        return 1
    if not args.command:
        print("zkwedge: usage error: missing command", file=err)
        return 1
    code = 0
    try:
        inputs = []
        if args.command == "skeleton":
            K, res, text, warnings = cmd_skeleton(args)
            inputs = [K]
        elif args.command == "compose":
            K1, K2 = _read(args.file1), _read(args.file2)
            inputs = [K1, K2]
            _, res, text, warnings = cmd_compose(K1, K2, args)
        else:
            K = _read(args.file)
            inputs = [K]
            fn = {"is-shifted": cmd_is_shifted, "decompose": cmd_decompose, "betti": cmd_betti,
                  "profile": cmd_profile, "poincare": cmd_poincare, "golod": cmd_golod,
                  "oracle-check": cmd_oracle_check}[args.command]
            got = fn(K, args)
            res, text, warnings = got[:3]
            if args.command == "oracle-check" and not got[3]:
                code = 3
    except UsageError as e:
        print(f"zkwedge: usage error: {e}", file=err)
        return 1
    except (ComplexError, WedgeError) as e:
        print(f"zkwedge: input error: {e}", file=err)
        return 1
    except (SizeLimitError, NotShiftedError) as e:
        print(f"zkwedge: refused: {e}", file=err)
        return 2
    except NonRegularStepError as e:
        print(f"zkwedge: internal invariant violated: {e}", file=err)
        return 3
    if args.json:
        millis = round((time.perf_counter() - start) * 1000) if args.timing else None
        doc = {"command": args.command, "input_hash": _hash(*inputs), "result": res,
               "warnings": warnings, "millis": millis}
        out.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        for w in warnings:
            print(f"warning: {w}", file=err)
        out.write("\n".join(text) + "\n")
        if args.timing:
            out.write(f"{round((time.perf_counter() - start) * 1000)} ms\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
