"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 certificate failure (the headline
positivity claim would be falsified), 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fock, minimize as mz, spectra, sturm
from .errors import CertificateFailed, FockminError, NoConvergence

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CERTIFICATE = 2
EXIT_NUMERICAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fockmin")
    parser.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("block", help="dump an exact coefficient block")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--E", action="store_true", help="dump the decoupled block")
    p.add_argument("--reduced", action="store_true", help="dump the reduced block")
    p.add_argument("--out")
    p.add_argument("--format", choices=["json", "pretty"], default="pretty")

    p = sub.add_parser("certify", help="positivity certificates over a j-range")
    p.add_argument("--max-j", type=int, required=True)
    p.add_argument(
        "--exact-max-j",
        type=int,
        default=200,
        help="upper bound for the exact kernel-vector checks (default 200)",
    )
    p.add_argument("--no-eigs", action="store_true", help="skip float eigenvalue checks")
    p.add_argument("--out")

    p = sub.add_parser("functionals", help="evaluate all functionals of a state")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--format", choices=["json", "pretty"], default="pretty")

    p = sub.add_parser("catalog", help="write catalog coefficients to a file")
    p.add_argument(
        "--wave",
        required=True,
        choices=["phi_n", "phi_n_alpha", "psi_b", "equality", "semiclassical_phi"],
    )
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--alpha-re", type=float, default=0.0)
    p.add_argument("--alpha-im", type=float, default=0.0)
    p.add_argument("--a0-re", type=float, default=1.0)
    p.add_argument("--a0-im", type=float, default=0.0)
    p.add_argument("--a1-re", type=float, default=0.0)
    p.add_argument("--a1-im", type=float, default=0.0)
    p.add_argument("--c-re", type=float, default=0.0)
    p.add_argument("--c-im", type=float, default=0.0)
    p.add_argument("--h", type=float, default=0.5)
    p.add_argument("--trunc", type=int, default=64)
    p.add_argument("--out", required=True)

    p = sub.add_parser("minimize", help="minimize the energy at one coupling")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--trunc", type=int, default=48)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--max-iters", type=int, default=20000)
    p.add_argument("--grad-tol", type=float, default=1e-8)
    p.add_argument("--format", choices=["json", "pretty"], default="pretty")
    p.add_argument("--out")

    p = sub.add_parser("scan", help="minimize across a coupling grid, emit CSV")
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--trunc", type=int, default=48)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--out")

    p = sub.add_parser("mu0", help="bracket the lower transition coupling")
    p.add_argument("--trunc", type=int, default=48)
    p.add_argument("--restarts", type=int, default=6)
    p.add_argument("--width", type=float, default=1e-3)

    p = sub.add_parser("semiclassical", help="regime report in trap coordinates")
    p.add_argument("--Na", type=float, required=True, help="interaction product N*a")
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--format", choices=["json", "pretty"], default="pretty")

    p = sub.add_parser("zeros", help="zeros of the polynomial part in a disk")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--R", type=float, default=6.0)
    p.add_argument("--format", choices=["json", "pretty"], default="pretty")

    return parser


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_block(args) -> int:
    block = spectra.build_E_block(args.j) if args.E else spectra.build_B_block(args.j)
    if args.reduced:
        block = spectra.centro_decompose(block).S
    entries = spectra.dump_entries(block)
    if args.format == "json":
        text = json.dumps({"j": args.j, "kind": block.kind.value, "entries": entries})
        text += "\n"
    else:
        width = max(len(e) for row in entries for e in row)
        lines = [f"{block.kind.value}^({args.j}), order {block.order}"]
        for row in entries:
            lines.append("  ".join(e.rjust(width) for e in row))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _cmd_certify(args) -> int:
    lines = []
    failures = 0
    for j in range(6, args.max_j + 1):
        try:
            cert = sturm.positivity_certificate(j)
            checks = [f"sturm transition={cert.transition_index}"]
            if j <= args.exact_max_j:
                exact_ok = spectra.kernel_annihilated(j)
                checks.append("kernel=exact" if exact_ok else "kernel=FAIL")
                if not exact_ok:
                    raise CertificateFailed(f"kernel vectors not annihilated at j={j}")
                if not args.no_eigs:
                    decomp = spectra.centro_decompose(spectra.build_B_block(j))
                    eigs = spectra.symmetric_eigenvalues(
                        spectra.scaled_block(decomp.S)
                    )
                    norm = max(abs(eigs[0]), abs(eigs[-1]))
                    if eigs[0] < -1e-10 * norm:
                        raise CertificateFailed(
                            f"scaled reduced block indefinite at j={j}"
                        )
                    checks.append(f"min_eig={eigs[0]:.3e}")
            verdict = "pass"
        except CertificateFailed as exc:
            verdict = f"FAIL ({exc})"
            failures += 1
            checks = []
        lines.append(f"j={j} {verdict} " + " ".join(checks))
    text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_CERTIFICATE if failures else EXIT_OK


def _report_dict(rep: fock.FunctionalReport) -> dict:
    return {
        "mu": rep.mu,
        "M": rep.M,
        "P": rep.P,
        "Q": [rep.Q.real, rep.Q.imag],
        "H": rep.H,
        "B": rep.B,
        "E": rep.E,
        "G": rep.G,
        "F": rep.F,
    }


def _cmd_functionals(args) -> int:
    u = fock.load_coefficients(args.infile)
    rep = fock.functionals(u, args.mu)
    data = _report_dict(rep)
    if args.format == "json":
        text = json.dumps(data) + "\n"
    else:
        text = "".join(f"{k} = {v}\n" for k, v in data.items())
    sys.stdout.write(text)
    return EXIT_OK


def _cmd_catalog(args) -> int:
    if args.wave == "phi_n":
        spec = fock.PhiN(args.n)
    elif args.wave == "phi_n_alpha":
        spec = fock.PhiNAlpha(args.n, complex(args.alpha_re, args.alpha_im))
    elif args.wave == "psi_b":
        spec = fock.PsiB(args.b)
    elif args.wave == "equality":
        spec = fock.EqualityFamily(
            complex(args.a0_re, args.a0_im),
            complex(args.a1_re, args.a1_im),
            complex(args.c_re, args.c_im),
        )
    else:
        spec = fock.SemiclassicalPhi(args.n, args.h)
    u = fock.catalog_coefficients(spec, args.trunc)
    fock.save_coefficients(u, args.out)
    return EXIT_OK


def _result_dict(res: mz.MinimizationResult) -> dict:
    return {
        "mu": res.mu,
        "G": res.G_value,
        "P": res.P_value,
        "Qabs": abs(res.Q_value),
        "H": res.H_value,
        "lagrange_residual": res.lagrange_residual,
        "converged": res.converged,
        "iterations": res.iterations,
        "restart_index": res.restart_index,
        "class": res.label.value,
        "overlap": res.overlap,
        "b_fit": res.b_fit,
        "n_zeros": res.n_zeros,
        "zero_radius": res.zero_radius,
    }


def _cmd_minimize(args) -> int:
    config = mz.OptimizerConfig(
        truncation=args.trunc,
        restarts=args.restarts,
        max_iters=args.max_iters,
        grad_tol=args.grad_tol,
        seed=args.seed,
    )
    res = mz.minimize_G(args.mu, config)
    data = _result_dict(res)
    if args.format == "json":
        text = json.dumps(data) + "\n"
    else:
        text = "".join(f"{k} = {v}\n" for k, v in data.items())
    _emit(text, args.out)
    if args.out:
        fock.save_coefficients(res.u, args.out + ".coeffs.json")
    return EXIT_OK if res.converged else EXIT_NUMERICAL


def _cmd_scan(args) -> int:
    grid = []
    mu = args.start
    while mu <= args.stop + 1e-12:
        grid.append(round(mu, 12))
        mu += args.step
    config = mz.OptimizerConfig(
        truncation=args.trunc, restarts=args.restarts, seed=args.seed
    )
    rows = mz.scan_mu(grid, config)
    _emit(mz.scan_to_csv(rows), args.out)
    return EXIT_OK


def _cmd_mu0(args) -> int:
    config = mz.OptimizerConfig(
        truncation=args.trunc, restarts=args.restarts, seed=args.seed
    )
    interval = mz.estimate_mu0(config, width=args.width)
    print(
        f"mu0 in [{interval.low:.6f}, {interval.high:.6f}] "
        f"(width {interval.width:.2e}; {interval.caveat})"
    )
    return EXIT_OK


def _cmd_semiclassical(args) -> int:
    rep = mz.semiclassical(args.Na, 1.0, args.h)
    data = {
        "h": rep.h,
        "Na": rep.Na,
        "mu_eff": rep.mu_eff,
        "h_at_half": rep.h_at_half,
        "h_at_5_32": rep.h_at_532,
        "E_phi0": rep.energy_phi0,
        "E_phi1": rep.energy_phi1,
        "regime": rep.regime,
    }
    if args.format == "json":
        print(json.dumps(data))
    else:
        for k, v in data.items():
            print(f"{k} = {v}")
    return EXIT_OK


def _cmd_zeros(args) -> int:
    u = fock.load_coefficients(args.infile)
    zc = mz.count_zeros(u, args.R)
    data = {
        "radius": zc.radius,
        "count": zc.count,
        "roots": [[r.real, r.imag] for r in zc.roots],
        "residuals": list(zc.residuals),
    }
    if args.format == "json":
        print(json.dumps(data))
    else:
        print(f"{zc.count} zero(s) in |z| <= {zc.radius}")
        for r, res in zip(zc.roots, zc.residuals):
            print(f"  z = {r.real:+.12g}{r.imag:+.12g}i  residual {res:.2e}")
    return EXIT_OK


_DISPATCH = {
    "block": _cmd_block,
    "certify": _cmd_certify,
    "functionals": _cmd_functionals,
    "catalog": _cmd_catalog,
    "minimize": _cmd_minimize,
    "scan": _cmd_scan,
    "mu0": _cmd_mu0,
    "semiclassical": _cmd_semiclassical,
    "zeros": _cmd_zeros,
}


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except CertificateFailed as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE
    except NoConvergence as exc:
        print(f"no convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except FockminError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))
