"""Command-line interface.

Subcommands: ``check`` (feasibility report), ``realize`` (recover a
triple plus the full family), ``build`` (forward construction of a
problem file from a system file), ``ginverse`` and ``solve-pair``.
Reports are canonical JSON on stdout; diagnostics go to stderr.

Exit codes: 0 feasible/success, 1 infeasible/no solution, 2 input or
usage error.  Randomness is Python's Mersenne Twister seeded with
``--seed`` (default 0), entries uniform in [-9, 9], so reports are
byte-identical across runs and platforms.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from random import Random

import numpy as np

from . import io as docio
from .approx import (
    FloatMat,
    FloatRealizationProblem,
    Tolerance,
    approx_check_feasibility,
    approx_realize,
)
from .exact import DimensionError, Mat, g1_inverse, random_int_matrix, rank
from .pairs import PairProblem, certificate, solution_family
from .realization import (
    RealizationProblem,
    check_feasibility,
    observability_matrix,
    reachability_matrix,
    realize_family,
)

__all__ = ["build_parser", "run", "main"]

# Acceptance bound for float-mode self-verification, relative to the
# input magnitude; exact mode verifies bit-exact equality instead.
RECONSTRUCTION_REL = 1e-6


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _read_document(path: Path) -> tuple[str, str]:
    data = path.read_bytes()
    return data.decode("utf-8"), docio.sha256_hex(data)


def _emit(obj) -> None:
    sys.stdout.write(docio.dumps_canonical(obj))


def _feasibility_obj_exact(report) -> dict:
    witnesses = {}
    if report.kernel_residual is not None:
        witnesses["kernel_residual"] = docio.matrix_to_obj(
            docio.matrix_document_from_exact(report.kernel_residual)
        )
    if report.image_residual is not None:
        witnesses["image_residual"] = docio.matrix_to_obj(
            docio.matrix_document_from_exact(report.image_residual)
        )
    if report.interlock_residual is not None:
        witnesses["interlock_residual"] = docio.matrix_to_obj(
            docio.matrix_document_from_exact(report.interlock_residual)
        )
    return {
        "cond_kernel": report.cond_kernel,
        "cond_image": report.cond_image,
        "cond_interlock": report.cond_interlock,
        "feasible": report.feasible,
        "witnesses": witnesses,
    }


def _feasibility_obj_float(report, tol: Tolerance) -> dict:
    return {
        "cond_kernel": report.cond_kernel,
        "cond_image": report.cond_image,
        "cond_interlock": report.cond_interlock,
        "feasible": report.feasible,
        "residuals": {
            "kernel": report.kernel_residual,
            "image": report.image_residual,
            "interlock": report.interlock_residual,
        },
        "tolerance": {"rank_rel": tol.rank_rel, "residual_rel": tol.residual_rel},
    }


def _exact_matrix_obj(mat: Mat) -> dict:
    return docio.matrix_to_obj(docio.matrix_document_from_exact(mat))


def _float_matrix_obj(mat: FloatMat) -> dict:
    return docio.matrix_to_obj(docio.matrix_document_from_float(mat))


def _make_z_exact(rows: int, cols: int, args) -> tuple[Mat, int | None]:
    if args.z_file is not None:
        doc = docio.parse_matrix(_read_document(args.z_file)[0])
        z = docio.exact_from_document(doc)
        if z.shape != (rows, cols):
            raise DimensionError(
                f"Z file must hold a {rows}x{cols} matrix, got {z.rows}x{z.cols}"
            )
        return z, None
    if args.z == "random":
        seed = args.seed if args.seed is not None else 0
        return random_int_matrix(rows, cols, Random(seed)), seed
    return Mat.zeros(rows, cols), None


def _make_z_float(rows: int, cols: int, args) -> tuple[FloatMat, int | None]:
    if args.z_file is not None:
        doc = docio.parse_matrix(_read_document(args.z_file)[0])
        z = docio.float_from_document(doc)
        if z.shape != (rows, cols):
            raise DimensionError(
                f"Z file must hold a {rows}x{cols} matrix, got {z.rows}x{z.cols}"
            )
        return z, None
    if args.z == "random":
        seed = args.seed if args.seed is not None else 0
        exact = random_int_matrix(rows, cols, Random(seed))
        return FloatMat.from_exact(exact), seed
    return FloatMat.zeros(rows, cols), None


def _tolerance(args) -> Tolerance:
    return Tolerance(rank_rel=args.tol_rank, residual_rel=args.tol_residual)


def _cmd_check(args) -> int:
    text, digest = _read_document(args.problem)
    doc = docio.parse_problem(text)
    use_float = args.float_mode or doc.V.scalar_kind == "float"
    if use_float:
        tol = _tolerance(args)
        report = approx_check_feasibility(docio.float_problem(doc), tol)
        feas_obj = _feasibility_obj_float(report, tol)
        mode = "float"
    else:
        report = check_feasibility(docio.exact_problem(doc))
        feas_obj = _feasibility_obj_exact(report)
        mode = "exact"
    _emit(
        {
            "command": "check",
            "input_sha256": digest,
            "mode": mode,
            "feasibility": feas_obj,
        }
    )
    return 0 if report.feasible else 1


def _realize_exact(doc, digest: str, args) -> int:
    prob = docio.exact_problem(doc)
    report = check_feasibility(prob)
    body = {
        "command": "realize",
        "input_sha256": digest,
        "mode": "exact",
        "feasibility": _feasibility_obj_exact(report),
        "triple": None,
        "family": None,
        "z_used": None,
        "seed": None,
        "self_verification": None,
    }
    if not report.feasible:
        _emit(body)
        return 1
    z, seed = _make_z_exact(prob.n, prob.n, args)
    family = realize_family(prob)
    a = family.instantiate(z)
    b = prob.v_block(0)
    c = prob.w_block(0)
    body["triple"] = {
        "A": _exact_matrix_obj(a),
        "B": _exact_matrix_obj(b),
        "C": _exact_matrix_obj(c),
    }
    body["family"] = {
        "x0": _exact_matrix_obj(family.x0),
        "left_annihilator": _exact_matrix_obj(family.left_ann),
        "right_annihilator": _exact_matrix_obj(family.right_ann),
    }
    body["z_used"] = _exact_matrix_obj(z)
    body["seed"] = seed
    body["self_verification"] = {
        "reachability_exact": reachability_matrix(a, b, prob.k) == prob.V,
        "observability_exact": observability_matrix(a, c, prob.m) == prob.W,
    }
    _emit(body)
    return 0


def _realize_float(doc, digest: str, args) -> int:
    tol = _tolerance(args)
    prob = docio.float_problem(doc)
    report = approx_check_feasibility(prob, tol)
    body = {
        "command": "realize",
        "input_sha256": digest,
        "mode": "float",
        "feasibility": _feasibility_obj_float(report, tol),
        "triple": None,
        "family": None,
        "z_used": None,
        "seed": None,
        "self_verification": None,
    }
    if not report.feasible:
        _emit(body)
        return 1
    z, seed = _make_z_float(prob.n, prob.n, args)
    triple = approx_realize(prob, z, tol)
    v_back = np.hstack(
        [
            np.linalg.matrix_power(triple.A.array, i) @ triple.B.array
            for i in range(prob.k)
        ]
    )
    w_back = np.vstack(
        [
            triple.C.array @ np.linalg.matrix_power(triple.A.array, i)
            for i in range(prob.m)
        ]
    )
    v_res = float(np.max(np.abs(v_back - prob.V.array), initial=0.0))
    w_res = float(np.max(np.abs(w_back - prob.W.array), initial=0.0))
    v_bound = RECONSTRUCTION_REL * (
        1.0 + float(np.max(np.abs(prob.V.array), initial=0.0))
    )
    w_bound = RECONSTRUCTION_REL * (
        1.0 + float(np.max(np.abs(prob.W.array), initial=0.0))
    )
    body["triple"] = {
        "A": _float_matrix_obj(triple.A),
        "B": _float_matrix_obj(triple.B),
        "C": _float_matrix_obj(triple.C),
    }
    body["z_used"] = _float_matrix_obj(z)
    body["seed"] = seed
    verification = {
        "reachability_residual": v_res,
        "observability_residual": w_res,
        "reachability_ok": v_res <= v_bound,
        "observability_ok": w_res <= w_bound,
    }
    body["self_verification"] = verification
    _emit(body)
    return 0 if verification["reachability_ok"] and verification["observability_ok"] else 1


def _cmd_realize(args) -> int:
    text, digest = _read_document(args.problem)
    doc = docio.parse_problem(text)
    if args.float_mode or doc.V.scalar_kind == "float":
        return _realize_float(doc, digest, args)
    return _realize_exact(doc, digest, args)


def _cmd_build(args) -> int:
    text, _ = _read_document(args.system)
    doc = docio.parse_system(text)
    if doc.A.scalar_kind != "rational":
        return _fail("build requires rational matrices")
    a = docio.exact_from_document(doc.A)
    b = docio.exact_from_document(doc.B)
    c = docio.exact_from_document(doc.C)
    v = reachability_matrix(a, b, args.k)
    w = observability_matrix(a, c, args.m)
    problem = docio.ProblemDocument(
        V=docio.matrix_document_from_exact(v),
        W=docio.matrix_document_from_exact(w),
        p=b.cols,
        q=c.rows,
        k=args.k,
        m=args.m,
    )
    out = docio.serialize_problem(problem)
    if args.output is not None:
        args.output.write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return 0


def _cmd_ginverse(args) -> int:
    text, digest = _read_document(args.matrix)
    doc = docio.parse_matrix(text)
    mat = docio.exact_from_document(doc)
    y = g1_inverse(mat)
    _emit(
        {
            "command": "ginverse",
            "input_sha256": digest,
            "rank": rank(mat),
            "g1_inverse": _exact_matrix_obj(y),
            "verified": (mat @ y @ mat) == mat,
        }
    )
    return 0


def _cmd_solve_pair(args) -> int:
    texts = {}
    digests = {}
    for name, path in (("F", args.f), ("C", args.c), ("H", args.h), ("D", args.d)):
        texts[name], digests[name] = _read_document(path)
    mats = {
        name: docio.exact_from_document(docio.parse_matrix(text))
        for name, text in texts.items()
    }
    prob = PairProblem(F=mats["F"], C=mats["C"], H=mats["H"], D=mats["D"])
    cert = certificate(prob)
    body = {
        "command": "solve_pair",
        "input_sha256": digests,
        "conditions": {
            "left_consistent": "left_consistent" not in cert.failed,
            "right_consistent": "right_consistent" not in cert.failed,
            "compatible": "compatible" not in cert.failed,
        },
        "solvable": cert.ok,
        "solution": None,
        "family": None,
        "z_used": None,
        "seed": None,
        "certificate": None,
    }
    if not cert.ok:
        body["certificate"] = {
            "failed_conditions": list(cert.failed),
            "left_residual": _exact_matrix_obj(cert.left_residual),
            "right_residual": _exact_matrix_obj(cert.right_residual),
            "compat_residual": _exact_matrix_obj(cert.compat_residual),
        }
        _emit(body)
        return 1
    family = solution_family(prob)
    z, seed = _make_z_exact(prob.t, prob.p, args)
    x = family.instantiate(z)
    body["solution"] = _exact_matrix_obj(x)
    body["family"] = {
        "x0": _exact_matrix_obj(family.x0),
        "left_annihilator": _exact_matrix_obj(family.left_ann),
        "right_annihilator": _exact_matrix_obj(family.right_ann),
    }
    body["z_used"] = _exact_matrix_obj(z)
    body["seed"] = seed
    body["verified"] = {
        "left_equation": (prob.F @ x) == prob.C,
        "right_equation": (x @ prob.H) == prob.D,
    }
    _emit(body)
    return 0


def _add_z_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--z",
        choices=("zero", "random"),
        default="zero",
        help="free parameter: the zero matrix or seeded random integers in [-9, 9]",
    )
    parser.add_argument("--seed", type=int, help="seed for --z random (default 0)")
    parser.add_argument(
        "--z-file", type=Path, help="read the free parameter from a matrix file"
    )


def _add_tol_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--float",
        dest="float_mode",
        action="store_true",
        help="use the float path with tolerances (implied by float input files)",
    )
    parser.add_argument(
        "--tol-rank", type=float, default=1e-10, help="relative pivot threshold"
    )
    parser.add_argument(
        "--tol-residual",
        type=float,
        default=1e-8,
        help="relative residual threshold for condition checks",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reachobs",
        description=(
            "Decide whether (V, W) is a k-step reachability / m-step"
            " observability pair of some state-space triple (A, B, C), and"
            " recover all such triples."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="report the feasibility conditions")
    p_check.add_argument("problem", type=Path, help="problem JSON file")
    _add_tol_flags(p_check)

    p_realize = sub.add_parser("realize", help="recover a triple and the family")
    p_realize.add_argument("problem", type=Path, help="problem JSON file")
    _add_z_flags(p_realize)
    _add_tol_flags(p_realize)

    p_build = sub.add_parser(
        "build", help="construct a problem file from a system file"
    )
    p_build.add_argument("system", type=Path, help="system JSON file with A, B, C")
    p_build.add_argument("--k", type=int, required=True, help="number of V blocks")
    p_build.add_argument("--m", type=int, required=True, help="number of W blocks")
    p_build.add_argument("-o", "--output", type=Path, help="write here (default stdout)")

    p_ginv = sub.add_parser("ginverse", help="canonical {1}-inverse of a matrix")
    p_ginv.add_argument("matrix", type=Path, help="matrix JSON file")

    p_solve = sub.add_parser(
        "solve-pair", help="solve F @ X == C and X @ H == D simultaneously"
    )
    p_solve.add_argument("f", type=Path, help="matrix file for F")
    p_solve.add_argument("c", type=Path, help="matrix file for C")
    p_solve.add_argument("h", type=Path, help="matrix file for H")
    p_solve.add_argument("d", type=Path, help="matrix file for D")
    _add_z_flags(p_solve)

    return parser


_COMMANDS = {
    "check": _cmd_check,
    "realize": _cmd_realize,
    "build": _cmd_build,
    "ginverse": _cmd_ginverse,
    "solve-pair": _cmd_solve_pair,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if not exc.code else 2
    if getattr(args, "seed", None) is not None and args.seed < 0:
        return _fail("--seed must be nonnegative")
    if getattr(args, "k", None) is not None and args.command == "build":
        if args.k < 1 or args.m < 1:
            return _fail("--k and --m must be positive")
    try:
        return _COMMANDS[args.command](args)
    except (OSError, UnicodeDecodeError) as exc:
        return _fail(f"cannot read input: {exc}")
    except (docio.ParseError, DimensionError, ValueError) as exc:
        return _fail(str(exc))


def main() -> None:
    raise SystemExit(run())
