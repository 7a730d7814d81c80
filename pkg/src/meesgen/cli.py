"""Command-line front end.

Exit codes: 0 success, 2 domain error (unsolvable/invalid physics
request), 64 usage error.  Floating-point output uses 17 significant
digits so files round-trip exactly.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import montecarlo as mc
from . import serialize, synthesis, thermalization as th
from .errors import DomainError
from .system import (
    SchmidtState,
    Spectrum,
    build_system,
    load_system,
    mees_from_beta,
    solve_beta_g,
)

EXIT_DOMAIN = 2
EXIT_USAGE = 64

APPROACHES = {ap.value: ap for ap in th.ApproachKind}


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def g17(x: float) -> str:
    return f"{float(x):.17g}"


def _parse_spectra(text: str):
    parts = text.split(";")
    if len(parts) != 2:
        raise ValueError("expected 'a0,a1,...;b0,b1,...'")
    return tuple(Spectrum(tuple(float(x) for x in p.split(","))) for p in parts)


def _get_system(args, parser):
    if args.system_file:
        return load_system(args.system_file)
    if args.spectra:
        a, b = _parse_spectra(args.spectra)
        return build_system(a, b)
    parser.error("one of --spectra or --system-file is required")


def _add_system_args(p):
    p.add_argument("--spectra", help="inline spectra 'a0,a1,...;b0,b1,...'")
    p.add_argument("--system-file", help="JSON file with spectrum_a/spectrum_b")


def _get_target(args, system, parser) -> SchmidtState:
    if getattr(args, "entanglement", None) is not None:
        return solve_beta_g(system, args.entanglement).state
    if getattr(args, "weights", None):
        w = tuple(float(x) for x in args.weights.split(","))
        ph = ()
        if getattr(args, "phases", None):
            ph = tuple(float(x) for x in args.phases.split(","))
        return SchmidtState(w, ph)
    parser.error("one of --entanglement or --weights is required")


def _outpath(args, name: str) -> str:
    os.makedirs(args.out_dir, exist_ok=True)
    return os.path.join(args.out_dir, name)


def _provenance(args) -> dict:
    return {"config": {k: v for k, v in vars(args).items() if k != "func"}}


# ---------------------------------------------------------------------------
# subcommands


def cmd_mees(args, parser):
    system = _get_system(args, parser)
    if args.beta_g is not None:
        sol = mees_from_beta(system, args.beta_g)
    elif args.entanglement is not None:
        sol = solve_beta_g(system, args.entanglement)
    else:
        parser.error("one of --entanglement or --beta-g is required")
    print(f"beta_g = {g17(sol.beta_g)}")
    print(f"Z_g    = {g17(sol.z_g)}")
    print(f"E_g    = {g17(sol.e_g)}")
    print(f"S      = {g17(sol.entanglement)}")
    print("lambda = " + ", ".join(g17(w) for w in sol.state.weights))
    if args.out_dir:
        doc = {
            "beta_g": sol.beta_g,
            "z_g": sol.z_g,
            "e_g": sol.e_g,
            "entanglement": sol.entanglement,
            "weights": list(sol.state.weights),
            "phases": list(sol.state.phases),
        }
        doc.update(_provenance(args))
        serialize.dump_json(doc, _outpath(args, "mees.json"))
    return 0


def cmd_synth(args, parser):
    system = _get_system(args, parser)
    target = _get_target(args, system, parser)
    plan = None
    if args.operator == "US":
        u = synthesis.build_us(system, target)
        if target.weights[0] > 0:
            plan = synthesis.decompose_rotations(target.weights, target.phases, subsystem="whole-S")
    elif args.operator == "UA":
        u, plan = synthesis.compose_tilde("A", system, target)
    elif args.operator == "UB":
        u, plan = synthesis.compose_tilde("B", system, target)
    else:
        parser.error(f"unknown operator {args.operator!r}")
    rep = synthesis.verify_unitary(u)
    fid = synthesis.target_fidelity(u, system, target)
    print(f"unitarity deviation = {g17(rep.deviation)}")
    print(f"target fidelity     = {g17(fid)}")
    if args.out_dir:
        doc = serialize.matrix_to_json(u)
        doc.update(_provenance(args))
        serialize.dump_json(doc, _outpath(args, f"unitary_{args.operator}.json"))
        if plan is not None:
            pdoc = serialize.gate_plan_to_json(plan)
            pdoc.update(_provenance(args))
            serialize.dump_json(pdoc, _outpath(args, f"gateplan_{args.operator}.json"))
    return 0


def cmd_hamiltonian(args, parser):
    system = _get_system(args, parser)
    target = _get_target(args, system, parser)
    approach = APPROACHES.get(args.approach)
    if approach is None:
        parser.error(f"unknown approach {args.approach!r}; known: {', '.join(APPROACHES)}")
    h_i = th.build_interaction(approach, system, target, leak=args.epsilon)
    if approach in (th.ApproachKind.Simple, th.ApproachKind.ModifiedSimple):
        rep = th.report_simple(system, target, th.v_strength(system, approach, args.epsilon))
    elif approach is th.ApproachKind.GlobalUnitary:
        rep = th.report_global_unitary(system, target)
    else:
        rep = th.report_mssg("A" if approach is th.ApproachKind.MssgA else "B", system, target)
    print(f"approach = {approach.value}")
    print(f"eta      = {g17(rep.eta)}")
    print(f"E_exp    = {g17(rep.e_exp)}")
    if args.out_dir:
        doc = serialize.matrix_to_json(h_i.matrix)
        doc.update(_provenance(args))
        serialize.dump_json(doc, _outpath(args, f"h_i_{approach.value}.json"))
        serialize.dump_json(
            {
                "approach": approach.value,
                "eta": rep.eta,
                "e_exp": rep.e_exp,
                "method": rep.method,
                **_provenance(args),
            },
            _outpath(args, f"report_{approach.value}.json"),
        )
    return 0


def _parse_approaches(text: str, parser):
    if text == "all":
        return list(th.ApproachKind)
    names = [t for t in text.split(",") if t]
    if not names:
        parser.error("empty approach set")
    out = []
    for n in names:
        if n not in APPROACHES:
            parser.error(f"unknown approach {n!r}; known: {', '.join(APPROACHES)}")
        out.append(APPROACHES[n])
    return out


def cmd_scan(args, parser):
    system = _get_system(args, parser)
    approaches = _parse_approaches(args.approaches, parser)
    s_max = np.log(system.n_a)
    grid = np.linspace(s_max / (args.points + 1), s_max * args.points / (args.points + 1), args.points)
    scan = mc.scan_mees_curve(system, approaches, grid, leak=args.epsilon)
    if args.check:
        _check_scan(scan)
    path = _outpath(args, "mees_scan.csv")
    mc.write_curve_csv(scan, path)
    serialize.dump_json(
        {"points": args.points, "approaches": [ap.value for ap in approaches], **_provenance(args)},
        _outpath(args, "mees_scan.meta.json"),
    )
    print(f"wrote {path} ({args.points} points, {len(scan.errors)} solver errors)")
    return 0


def _check_scan(scan):
    """Assert the analytic expense orderings along the scan."""
    c = scan.curves
    gu = th.ApproachKind.GlobalUnitary
    for ap in (th.ApproachKind.MssgA, th.ApproachKind.MssgB):
        if gu in c and ap in c:
            assert np.all(c[gu][1] >= c[ap][1] - 1e-12), "global unitary expense ordering violated"
    si, ms = th.ApproachKind.Simple, th.ApproachKind.ModifiedSimple
    if si in c and ms in c:
        assert np.all(c[si][1] >= c[ms][1] - 1e-12), "modified simple expense ordering violated"
    print("scan ordering checks passed")


def cmd_montecarlo(args, parser):
    system = _get_system(args, parser)
    approach = APPROACHES.get(args.approach)
    if approach is None:
        parser.error(f"unknown approach {args.approach!r}; known: {', '.join(APPROACHES)}")
    config = mc.SamplerConfig(
        seed=args.seed,
        count=args.count,
        measure=mc.default_measure(approach),
        workers=args.workers,
    )
    result = mc.run_scatter(system, approach, config, bins=(args.bins, args.bins), leak=args.epsilon)
    prov = _provenance(args)
    for tag, hist in (("eta", result.hist_eta), ("eexp", result.hist_exp)):
        csv_path = _outpath(args, f"scatter_{approach.value}_{tag}.csv")
        mc.write_histogram_csv(hist, csv_path)
        mc.write_histogram_sidecar(
            hist,
            _outpath(args, f"scatter_{approach.value}_{tag}.json"),
            seed=args.seed,
            count=args.count,
            approach=approach,
            skipped=result.skipped,
            extra=prov,
        )
        print(f"wrote {csv_path}")
    # MEES overlay curve for plotting
    grid = np.linspace(0.005, 0.995, 199) * np.log(system.n_a)
    scan = mc.scan_mees_curve(system, [approach], grid, leak=args.epsilon)
    overlay = _outpath(args, f"mees_overlay_{approach.value}.csv")
    mc.write_curve_csv(scan, overlay)
    print(f"wrote {overlay}")
    return 0


def main(argv=None) -> int:
    parser = Parser(prog="meesgen", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mees", help="solve the minimum-energy state at fixed entanglement")
    _add_system_args(p)
    p.add_argument("--entanglement", type=float)
    p.add_argument("--beta-g", type=float)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_mees)

    p = sub.add_parser("synth", help="build a generating unitary and its gate plan")
    _add_system_args(p)
    p.add_argument("--operator", required=True, choices=["US", "UA", "UB"])
    p.add_argument("--entanglement", type=float)
    p.add_argument("--weights")
    p.add_argument("--phases")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("hamiltonian", help="build an interaction Hamiltonian and its report")
    _add_system_args(p)
    p.add_argument("--approach", required=True)
    p.add_argument("--entanglement", type=float)
    p.add_argument("--weights")
    p.add_argument("--phases")
    p.add_argument("--epsilon", type=float, default=1e-3)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_hamiltonian)

    p = sub.add_parser("scan", help="five-approach efficiency/expense scan along the MEES curve")
    _add_system_args(p)
    p.add_argument("--approaches", default="all")
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--epsilon", type=float, default=1e-3)
    p.add_argument("--check", action="store_true")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("montecarlo", help="random-state scatter histograms")
    _add_system_args(p)
    p.add_argument("--approach", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10**6)
    p.add_argument("--bins", type=int, default=200)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--epsilon", type=float, default=1e-3)
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_montecarlo)

    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
