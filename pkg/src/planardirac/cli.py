"""Command-line front end: one subcommand per verification suite.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
precondition error.  Human-readable tables go to stderr; with --json a single
JSON document (the RunReport) is printed on stdout.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np
from scipy.linalg import expm

from . import algebra, fock, nonrel, planewave
from .planewave import (
    Branch,
    DegenerateNormalizationError,
    Momentum,
    PhysicalParams,
)
from .reporting import (
    Check,
    RunReport,
    bound_check,
    failed_check,
    floor_check,
    value_check,
)

_K_COMMUTATOR_TABLE = {
    (1, 2): (-1j, 3), (2, 1): (1j, 3),
    (2, 3): (1j, 1), (3, 2): (-1j, 1),
    (3, 1): (1j, 2), (1, 3): (-1j, 2),
    (1, 1): None, (2, 2): None, (3, 3): None,
}


def run_algebra(seed: int = 1234, tol_scale: float = 1.0) -> RunReport:
    start = time.perf_counter()
    report = RunReport("algebra", {"seed": seed, "tol_scale": tol_scale})
    exact = 1e-14 * tol_scale
    float_tol = 1e-13 * tol_scale

    for i in range(1, 4):
        for j in range(1, 4):
            measured = algebra.anticommutator(algebra.pauli(i), algebra.pauli(j))
            expected = 2.0 * algebra.IDENTITY2 if i == j else np.zeros((2, 2))
            report.add(bound_check(
                f"anticommutator sigma{i},sigma{j}",
                np.abs(measured - expected).max(), exact))

    ks = {i: algebra.k_generator(i) for i in (1, 2, 3)}
    for (i, j), entry in sorted(_K_COMMUTATOR_TABLE.items()):
        measured = algebra.commutator(ks[i], ks[j])
        expected = np.zeros((2, 2)) if entry is None else entry[0] * ks[entry[1]]
        report.add(bound_check(
            f"commutator K{i},K{j}", np.abs(measured - expected).max(), exact))

    report.add(bound_check(
        "gamma0 = -i sigma3",
        np.abs(algebra.gamma(0) + 1j * algebra.pauli(3)).max(), exact))
    for mu in (1, 2):
        report.add(bound_check(
            f"gamma{mu} = sigma{mu}",
            np.abs(algebra.gamma(mu) - algebra.pauli(mu)).max(), exact))
    report.add(bound_check(
        "gamma0^2 = -I",
        np.abs(algebra.gamma(0) @ algebra.gamma(0) + algebra.IDENTITY2).max(), exact))

    # Operator symbol assembled from Pauli matrices vs from gamma matrices:
    # both spellings of the wave operator must agree for arbitrary derivative
    # placeholders.
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(10):
        a0, a1, a2 = rng.normal(size=3) + 1j * rng.normal(size=3)
        pauli_form = (-1j * algebra.pauli(3) * a0
                      + algebra.pauli(1) * a1 + algebra.pauli(2) * a2
                      + algebra.IDENTITY2)
        gamma_form = (algebra.gamma(0) * a0 + algebra.gamma(1) * a1
                      + algebra.gamma(2) * a2 + algebra.IDENTITY2)
        worst = max(worst, float(np.abs(pauli_form - gamma_form).max()))
    report.add(bound_check("wave operator symbol, two spellings", worst, exact))

    report.add(bound_check(
        "exp of zero matrix = I",
        np.abs(algebra.matrix_exponential(np.zeros((2, 2)), 1.0)
               - algebra.IDENTITY2).max(), exact))
    report.add(bound_check(
        "exp(-i pi sigma3) = -I",
        np.abs(algebra.matrix_exponential(algebra.pauli(3), np.pi)
               + algebra.IDENTITY2).max(), float_tol))
    unitarity = group = oracle = 0.0
    for _ in range(10):
        draw = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        h = draw + draw.conj().T
        t1, t2 = rng.normal(size=2)
        u = algebra.matrix_exponential(h, t1)
        unitarity = max(unitarity, float(np.abs(u @ u.conj().T - algebra.IDENTITY2).max()))
        group = max(group, float(np.abs(
            u @ algebra.matrix_exponential(h, t2)
            - algebra.matrix_exponential(h, t1 + t2)).max()))
        oracle = max(oracle, float(np.abs(u - expm(-1j * t1 * h)).max()))
    report.add(bound_check("matrix exponential unitarity", unitarity, float_tol))
    report.add(bound_check("matrix exponential group property", group, 1e-12 * tol_scale))
    report.add(bound_check("matrix exponential vs scaling-and-squaring", oracle, float_tol))

    report.wall_seconds = time.perf_counter() - start
    return report


def _spinor_to_json(s: np.ndarray) -> list:
    return [[float(c.real), float(c.imag)] for c in s]


def run_spinor(kx: float, ky: float, m: float = 1.0, c: float = 1.0,
               hbar: float = 1.0, tol_scale: float = 1.0) -> RunReport:
    start = time.perf_counter()
    params = PhysicalParams(m=m, c=c, hbar=hbar)
    k = Momentum(kx, ky)
    report = RunReport("spinor", {"kx": kx, "ky": ky, "m": m, "c": c, "hbar": hbar,
                                  "tol_scale": tol_scale})
    tol = 1e-12 * tol_scale

    omega = planewave.dispersion_omega(k, params)
    g1 = planewave.g1(k, params)
    g2 = planewave.g2(k, params)
    report.parameters.update({
        "omega": omega,
        "g1": [g1.real, g1.imag],
        "g2": [g2.real, g2.imag],
    })

    rest = params.rest_energy / params.hbar
    report.add(bound_check(
        "dispersion identity",
        abs(omega**2 - (k.k_squared * params.c**2 + rest**2)) / omega**2, tol))
    report.add(bound_check("G2 = conj(G1)", abs(g2 - np.conj(g1)), 1e-14 * tol_scale))
    report.add(bound_check("|G1| < 1", abs(g1), 1.0))

    samples = [(0.0, 0.0, 0.0), (0.8, -0.4, 0.25), (-2.5, 1.75, 3.0),
               (10.0, 10.0, -7.0), (0.1, 0.2, 0.3)]
    try:
        for branch, label, sign in ((Branch.POSITIVE, "u", 1.0), (Branch.NEGATIVE, "v", -1.0)):
            sol = planewave.plane_wave(branch, k, params)
            report.parameters[f"spinor_{label}"] = _spinor_to_json(sol.spinor)
            report.add(value_check(
                f"metric norm of {label}",
                planewave.metric_inner(sol.spinor, sol.spinor).real, sign, tol))
            report.add(bound_check(
                f"dirac residual ({label} branch)",
                planewave.dirac_residual(sol, params, samples),
                tol * params.compton_wavenumber))
            report.add(bound_check(
                f"klein-gordon residual ({label} branch)",
                planewave.klein_gordon_residual(sol, params), tol))
            det_on = abs(np.linalg.det(
                planewave.coefficient_matrix(branch, k, sol.omega, params)))
            report.add(bound_check(f"determinant on-shell ({label})", det_on, tol))
            det_off = abs(np.linalg.det(
                planewave.coefficient_matrix(branch, k, sol.omega * 1.01, params)))
            report.add(floor_check(f"determinant 1% off-shell ({label})", det_off, 1e-3))
        u = planewave.plane_wave(Branch.POSITIVE, k, params).spinor
        v = planewave.plane_wave(Branch.NEGATIVE, k, params).spinor
        report.add(bound_check(
            "metric orthogonality u,v", abs(planewave.metric_inner(u, v)), tol))
        report.add(bound_check(
            "metric orthogonality v,u", abs(planewave.metric_inner(v, u)), tol))
    except DegenerateNormalizationError as exc:
        report.add(failed_check("normalization", f"degenerate: {exc}"))

    report.wall_seconds = time.perf_counter() - start
    return report


def run_fock(n_modes: int = 2, box: float = 2.0 * np.pi, literal_68: bool = False,
             tol_scale: float = 1.0) -> RunReport:
    start = time.perf_counter()
    report = RunReport("fock", {"modes": n_modes, "box": box,
                                "literal_68": literal_68, "tol_scale": tol_scale})
    exact = 1e-14 * tol_scale
    tol = 1e-12 * tol_scale

    modes = fock.default_symmetric_modes(n_modes, box)
    space = fock.build_space(modes)

    for record in fock.verify_ccr(space, tol=exact):
        report.add(bound_check(record.name, record.max_deviation, record.tolerance,
                               dimension=record.dimension))

    ham = fock.hamiltonian(space)
    ham_prime = fock.normal_ordered_hamiltonian(space)
    report.add(bound_check("H hermiticity", ham.hermiticity_defect(), exact,
                           dimension=space.dim))
    total_omega = sum(modes.omega(i) for i in range(n_modes)) * modes.params.hbar
    report.add(bound_check(
        "H = H' - sum(hbar w) I",
        (ham - (ham_prime - total_omega * space.identity())).max_abs(), exact,
        dimension=space.dim))

    diag = np.sort(ham_prime.diagonal().real)
    enum = np.sort(fock.occupation_spectrum(space))
    report.add(bound_check("H' spectrum = occupation enumeration",
                           float(np.abs(diag - enum).max()), tol, dimension=space.dim))
    report.add(bound_check("H' minimum eigenvalue = 0", abs(float(diag[0])), tol,
                           dimension=space.dim))
    if space.dense:
        eigs = ham_prime.eigenvalues()
        report.add(bound_check("H' diagonalization matches enumeration",
                               float(np.abs(np.sort(eigs) - enum).max()), tol,
                               dimension=space.dim))
    if n_modes == 1:
        report.add(bound_check(
            "single-mode H' spectrum {0,1,1,2}*hbar*w",
            float(np.abs(diag - modes.params.hbar * modes.omega(0)
                         * np.array([0.0, 1.0, 1.0, 2.0])).max()), tol, dimension=space.dim))

    length = modes.box_side
    anticomm = fock.field_anticommutator(
        space, (0.15 * length, -0.2 * length), (0.4 * length, 0.1 * length), 0.3)
    for record in anticomm.to_records(space.dim, tol=1e-13 * tol_scale):
        report.add(bound_check(record.name, record.max_deviation, record.tolerance,
                               dimension=record.dimension))

    report.add(bound_check(
        "H assembled from field integral",
        (fock.hamiltonian_from_field(space) - ham).max_abs(), 1e-12 * tol_scale,
        dimension=space.dim))

    vac = space.vacuum()
    for i in range(n_modes):
        for record in fock.pair_commutator_check(space, i, i, tol=exact):
            report.add(bound_check(f"mode {i}: {record.name}", record.max_deviation,
                                   record.tolerance, dimension=record.dimension))
    if n_modes >= 2:
        for record in fock.pair_commutator_check(space, 0, 1, tol=exact):
            report.add(bound_check(f"modes 0,1: {record.name}", record.max_deviation,
                                   record.tolerance, dimension=record.dimension))
        report.add(bound_check(
            "[P(k),P(k')] = 0",
            fock.commutator(fock.pair_lowering(space, 0),
                            fock.pair_lowering(space, 1)).max_abs(), exact,
            dimension=space.dim))

    pair = fock.pair_operator(space, 0)
    report.add(bound_check("pair operator hermiticity", pair.hermiticity_defect(),
                           exact, dimension=space.dim))
    one_pair = fock.pair_lowering(space, 0).dagger().apply(vac)
    report.add(value_check("one-pair state norm", float(np.linalg.norm(one_pair)),
                           1.0, exact, dimension=space.dim))
    report.add(bound_check(
        "pair created then annihilated returns vacuum",
        float(np.abs((pair @ pair).apply(vac) - vac).max()), exact, dimension=space.dim))
    report.add(bound_check(
        "double pair creation at one momentum vanishes",
        float(np.abs(fock.pair_lowering(space, 0).dagger().apply(one_pair)).max()),
        exact, dimension=space.dim))

    number = fock.pair_number_operator(space, 0)
    report.add(bound_check("pair number annihilates vacuum",
                           float(np.abs(number.apply(vac)).max()), exact,
                           dimension=space.dim))
    report.add(value_check("pair number counts one pair",
                           number.expectation(one_pair).real, 1.0, exact,
                           dimension=space.dim))
    total = fock.total_pair_number(space)
    report.add(bound_check("[H', total pair number] = 0",
                           fock.commutator(ham_prime, total).max_abs(), exact,
                           dimension=space.dim))
    report.add(bound_check("[H', charge] = 0",
                           fock.commutator(ham_prime, fock.charge_operator(space)).max_abs(),
                           exact, dimension=space.dim))
    if n_modes >= 2:
        two_pair = fock.pair_lowering(space, 1).dagger().apply(one_pair)
        norm = float(np.linalg.norm(two_pair))
        report.add(floor_check("two-pair state at distinct momenta is nonzero",
                               norm, 0.5, dimension=space.dim))
        report.add(value_check("total pair number on two-pair state",
                               total.expectation(two_pair / norm).real, 2.0, tol,
                               dimension=space.dim))

    if literal_68:
        literal = fock.pair_number_operator(space, 0, literal=True)
        report.add(bound_check(
            "literal printed ordering equals minus the pair counter",
            (literal + number).max_abs(), exact, dimension=space.dim))

    report.wall_seconds = time.perf_counter() - start
    return report


def run_evolve(grid_n: int = 128, box: float = None, sigma: float = None,
               k0x: float = 0.05, k0y: float = 0.0, t_final: float = 10.0,
               steps: int = None, out: str = None,
               tol_scale: float = 1.0) -> RunReport:
    start = time.perf_counter()
    report = RunReport("evolve", {
        "grid": grid_n, "box": box, "sigma": sigma, "k0x": k0x, "k0y": k0y,
        "time": t_final, "steps": steps, "tol_scale": tol_scale,
    })
    run = nonrel.run_limit_comparison(k0x, k0y, n=grid_n, t_final=t_final,
                                      sigma=sigma, box=box, steps=steps,
                                      keep_fields=out is not None)
    report.parameters["vc_scale"] = run["vc_scale"]
    distance_bound = (1e-12 if t_final == 0.0 else 1e-2) * tol_scale
    report.add(bound_check("dirac vs schrodinger relative distance",
                           run["distance"], distance_bound))
    report.add(bound_check("boundary density", run["boundary_density"],
                           1e-8 * tol_scale))

    k0_mag = float(np.hypot(k0x, k0y))
    if t_final > 0.0 and k0_mag > 0.0:
        study = nonrel.limit_scaling_study(
            [0.5 * k0_mag, k0_mag, 2.0 * k0_mag], n=grid_n, t_final=t_final)
        report.parameters["scaling_distances"] = study["distances"]
        report.parameters["scaling_vc"] = study["vc_scales"]
        for i, ratio in enumerate(study["halving_ratios"]):
            report.add(Check(f"distance ratio on halving k0 (pair {i})", ratio,
                             "in [3, 5]", 1.0 * tol_scale,
                             3.0 <= ratio <= 5.0))
        report.add(value_check("log-log slope of distance vs v/c",
                               study["slope"], 2.0, 0.3 * tol_scale))

    if out is not None:
        out_dir = Path(out)
        out_dir.mkdir(parents=True, exist_ok=True)
        for label, field in (("dirac", run["dirac_field"]),
                             ("schrodinger", run["schrodinger_field"])):
            nonrel.export_csv(field, out_dir / f"{label}.csv")
            nonrel.export_raw(field, out_dir / f"{label}.f64")
        report.parameters["out"] = str(out_dir)

    report.wall_seconds = time.perf_counter() - start
    return report


def run_landau(b_field: float = None, grid_n: int = 64, box: float = 20.0,
               n_levels: int = 3, tol_scale: float = 1.0) -> RunReport:
    start = time.perf_counter()
    params = PhysicalParams()
    if b_field is None:
        # default: magnetic length = box/10
        b_field = params.hbar / (params.e * (box / 10.0) ** 2)
    report = RunReport("landau", {"B": b_field, "grid": grid_n, "box": box,
                                  "levels": n_levels, "tol_scale": tol_scale})
    grid = nonrel.Grid2D(grid_n, box)
    result = nonrel.landau_levels(b_field, grid, params, n_levels=n_levels)
    report.parameters["magnetic_length"] = result["magnetic_length"]
    report.parameters["levels"] = result["levels"]
    report.parameters["expected"] = result["expected"]
    for j, err in enumerate(result["relative_errors"]):
        report.add(bound_check(f"level {j} vs hbar*w_c*(n+1/2)", err, 0.02 * tol_scale))

    doubled_length = result["magnetic_length"] / np.sqrt(2.0)
    if doubled_length >= 3.0 * grid.spacing and n_levels >= 2:
        doubled = nonrel.landau_levels(2.0 * b_field, grid, params, n_levels=2)
        ratio = ((doubled["levels"][1] - doubled["levels"][0])
                 / (result["levels"][1] - result["levels"][0]))
        report.add(value_check("spacing ratio when B doubles", ratio, 2.0,
                               0.08 * tol_scale))

    report.wall_seconds = time.perf_counter() - start
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planardirac",
        description="Verification suites for the planar two-component Dirac equation",
    )
    parser.add_argument("--json", action="store_true",
                        help="emit the run report as JSON on stdout")
    parser.add_argument("--seed", type=int, default=1234,
                        help="seed for randomized property sweeps")
    parser.add_argument("--tol-scale", type=float, default=1.0,
                        help="scale factor applied to every tolerance")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("algebra", help="Pauli/gamma/SO(2,1) identity checks")

    p_spinor = sub.add_parser("spinor", help="plane-wave solution checks at one momentum")
    p_spinor.add_argument("--kx", type=float, default=0.0)
    p_spinor.add_argument("--ky", type=float, default=0.0)
    p_spinor.add_argument("--m", type=float, default=1.0)
    p_spinor.add_argument("--c", type=float, default=1.0)
    p_spinor.add_argument("--hbar", type=float, default=1.0)

    p_fock = sub.add_parser("fock", help="second-quantization checks on 4^M states")
    p_fock.add_argument("--modes", type=int, default=2, metavar="M")
    p_fock.add_argument("--box", type=float, default=2.0 * np.pi)
    p_fock.add_argument("--literal-68", action="store_true",
                        help="also check the literal printed pair-number ordering")

    p_evolve = sub.add_parser("evolve", help="Dirac vs Schrodinger comparison")
    p_evolve.add_argument("--grid", type=int, default=128)
    p_evolve.add_argument("--box", type=float, default=None)
    p_evolve.add_argument("--sigma", type=float, default=None)
    p_evolve.add_argument("--k0x", type=float, default=0.05)
    p_evolve.add_argument("--k0y", type=float, default=0.0)
    p_evolve.add_argument("--time", type=float, default=10.0)
    p_evolve.add_argument("--steps", type=int, default=None,
                          help="split the evolution into this many applications")
    p_evolve.add_argument("--out", type=str, default=None,
                          help="directory for CSV and raw field snapshots")

    p_landau = sub.add_parser("landau", help="Landau-level validation of minimal coupling")
    p_landau.add_argument("--B", type=float, default=None,
                          help="field strength (default: magnetic length = box/10)")
    p_landau.add_argument("--grid", type=int, default=64)
    p_landau.add_argument("--box", type=float, default=20.0)
    p_landau.add_argument("--levels", type=int, default=3)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "algebra":
            report = run_algebra(seed=args.seed, tol_scale=args.tol_scale)
        elif args.command == "spinor":
            report = run_spinor(args.kx, args.ky, args.m, args.c, args.hbar,
                                tol_scale=args.tol_scale)
        elif args.command == "fock":
            report = run_fock(args.modes, args.box, args.literal_68,
                              tol_scale=args.tol_scale)
        elif args.command == "evolve":
            report = run_evolve(args.grid, args.box, args.sigma, args.k0x, args.k0y,
                                args.time, args.steps, args.out,
                                tol_scale=args.tol_scale)
        elif args.command == "landau":
            report = run_landau(args.B, args.grid, args.box, args.levels,
                                tol_scale=args.tol_scale)
        else:  # pragma: no cover - argparse enforces the choices
            raise ValueError(f"unknown command {args.command}")
    except (ValueError, nonrel.GaugeFrameError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    report.print_table()
    if args.json:
        print(report.to_json())
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
