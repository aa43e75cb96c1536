"""Command-line entry point: ``ptep {sweep,ep,jordan,unfold,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 numerical-convergence failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import verify as verify_mod
from .eplocus import ep_cascade, inner_block_is_ep, verify_ep_identity
from .errors import ConvergenceError, NotEpTimeError, PTEPError
from .jordan import assemble_Q, jordan_residual
from .model import build_hamiltonian, z_of_t
from .perturb import perturbation_matrix, predict_unfolding, ring_distance
from .spectra import CLUSTER_TOL, DENSE, POLY, REAL_TOL, classify, eigenvalues
from .sweep import FORMATS, emit, fmt, to_csv, to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CONVERGENCE = 0, 1, 2, 3
METHODS = {"poly": POLY, "dense": DENSE}


def _exact_t(text: str):
    """Parse t keeping integers and fractions exact (EP times are integers)."""
    try:
        value = Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    return int(value) if value.denominator == 1 else value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ptep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_formats=FORMATS):
        p.add_argument("--n", type=int, default=8, help="matrix dimension (even)")
        p.add_argument("--format", choices=out_formats, default=out_formats[0])
        p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")

    sw = sub.add_parser("sweep", help="eigenvalues over a uniform t grid")
    common(sw)
    sw.add_argument("--t-min", type=float, default=-1.0)
    sw.add_argument("--t-max", type=float, default=18.0)
    sw.add_argument("--steps", type=int, default=400)
    sw.add_argument("--method", choices=sorted(METHODS), default="poly")
    sw.add_argument("--real-tol", type=float, default=REAL_TOL)
    sw.add_argument("--cluster-tol", type=float, default=CLUSTER_TOL)
    sw.add_argument("--jobs", type=int, default=1, help="worker processes")

    ep = sub.add_parser("ep", help="EP cascade report")
    common(ep, ("text", "json"))

    jo = sub.add_parser("jordan", help="Q and S at an EP time")
    common(jo, ("text", "json"))
    jo.add_argument("--t", type=_exact_t, default=0, help="EP time t* (integer)")

    un = sub.add_parser("unfold", help="leading-order ring vs. exact eigenvalues near an EP")
    common(un, ("text", "json"))
    un.add_argument("--t-ep", type=_exact_t, default=0, help="EP time t*")
    un.add_argument("--t", type=float, default=1e-4, help="perturbed time")

    ve = sub.add_parser("verify", help="run the reproduction checks")
    ve.add_argument("--only", metavar="NAME")
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--format", choices=("text", "json"), default="text")
    ve.add_argument("--out", metavar="PATH")
    ve.add_argument("--inject-z-perturbation", action="store_true",
                    help="debug: shift z_1 by +1 so the EP identity check must fail")
    return parser


def _write(text: str, out) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cplx(x) -> list:
    return [float(np.real(x)), float(np.imag(x))]


def cmd_sweep(args) -> int:
    from .sweep import sweep
    records = sweep(args.n, args.t_min, args.t_max, args.steps, METHODS[args.method],
                    args.real_tol, args.cluster_tol, jobs=args.jobs)
    if args.out:
        for path in emit(records, args.format, args.out):
            print(path, file=sys.stderr)
    elif args.format == "json":
        sys.stdout.write(to_json(records))
    else:
        sys.stdout.write(to_csv(records))
    return EXIT_CONVERGENCE if any(r.error for r in records) else EXIT_OK


def cmd_ep(args) -> int:
    c = ep_cascade(args.n)
    rows = []
    for t, order in zip(c.times, c.orders):
        rows.append({"t": t, "m": (args.n - order) // 2, "ep_order": order,
                     "inner_block_is_ep": inner_block_is_ep(args.n, t) if order else None})
    identity = verify_ep_identity(args.n).holds
    if args.format == "json":
        _write(json.dumps({"n": args.n, "ep_identity": identity, "cascade": rows}, indent=1) + "\n",
               args.out)
    else:
        lines = [f"n={args.n}  det(H - E I) == E^n at z_k = k(n-k): {identity}",
                 f"{'t':>6} {'M':>3} {'EP(2K)':>7}  inner block at EP"]
        for r in rows:
            order = f"EP({r['ep_order']})" if r["ep_order"] else "-"
            lines.append(f"{r['t']:>6} {r['m']:>3} {order:>7}  {r['inner_block_is_ep']}")
        _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_jordan(args) -> int:
    jf = assemble_Q(args.n, args.t)
    res = jordan_residual(build_hamiltonian(z_of_t(args.n, args.t)), jf)
    if args.format == "json":
        payload = {"n": args.n, "t": str(args.t),
                   "blocks": [[b, _cplx(e)] for b, e in jf.blocks],
                   "q": [[_cplx(v) for v in row] for row in jf.q],
                   "residual": res, "abs_det_q": jf.det_q()}
        _write(json.dumps(payload) + "\n", args.out)
    else:
        with np.printoptions(precision=6, suppress=True, linewidth=160):
            text = (f"blocks (size, eigenvalue): {[(b, float(np.real(e))) for b, e in jf.blocks]}\n"
                    f"Q =\n{np.real_if_close(jf.q)}\n"
                    f"max|HQ - QS| = {res:.3e}   |det Q| = {jf.det_q():.6e}\n")
        _write(text, args.out)
    return EXIT_OK


def cmd_unfold(args) -> int:
    jf = assemble_Q(args.n, args.t_ep)
    if jf.ep_order < 2:
        raise NotEpTimeError(f"no Jordan block at t={args.t_ep}")
    h = build_hamiltonian(z_of_t(args.n, args.t))
    data = perturbation_matrix(h, jf)
    pred = predict_unfolding(data)
    ev = eigenvalues(h, DENSE).eigenvalues
    near = ev[np.argsort(np.abs(ev))][:data.ep_order]
    dist = ring_distance(near, pred.ring) if pred.applicable else None
    out = {"n": args.n, "t_ep": str(args.t_ep), "t": args.t, "ep_order": data.ep_order,
           "W_N1": _cplx(data.w_n1), "fine_tuned": data.fine_tuned,
           "applicable": pred.applicable, "radius": pred.radius,
           "ring": [_cplx(e) for e in pred.ring], "real_on_ring": pred.real_on_ring,
           "eigenvalues": [_cplx(e) for e in near], "max_distance": dist}
    if args.format == "json":
        _write(json.dumps(out) + "\n", args.out)
    else:
        lines = [f"EP({data.ep_order}) at t*={args.t_ep}, perturbed t={args.t}",
                 f"W_N1 = {complex(data.w_n1):.6e}  fine-tuned: {data.fine_tuned}"]
        if pred.applicable:
            lines.append(f"ring radius {pred.radius:.6e}, real members {pred.real_on_ring}")
            lines += [f"  ring {e.real: .6e} {e.imag:+.6e}i" for e in pred.ring]
            lines.append(f"max eigenvalue-to-ring distance {dist:.3e}")
        else:
            lines.append("ring prediction not applicable (W_N1 vanishes)")
        lines += [f"  eig  {e.real: .6e} {e.imag:+.6e}i" for e in near]
        _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    opts = verify_mod.Options(seed=args.seed, inject_z_perturbation=args.inject_z_perturbation)
    try:
        results = verify_mod.verify_suite(args.only, opts)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        _write(json.dumps(verify_mod.report(results), default=str, indent=1) + "\n", args.out)
    else:
        _write("".join(r.line() + "\n" for r in results), args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


COMMANDS = {"sweep": cmd_sweep, "ep": cmd_ep, "jordan": cmd_jordan,
            "unfold": cmd_unfold, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (PTEPError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
