"""Command-line front end.

One self-describing JSON scenario per invocation, read from a file or from
standard input via "-".  The machine-readable report always goes to standard
output; a human rendering goes to standard error under --verbose.  Exit codes:
0 all checks passed, 1 at least one check failed, 2 bad input or usage.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .complex_norden import (
    ComplexNordenPoint,
    classify_section_prime,
    validate_complex_norden,
)
from .contact_norden import (
    CONSTRUCTIVE_TAGS,
    ContactNordenPoint,
    classify_section,
    is_curvature_like,
    kaehler_residual,
    validate_contact_axioms,
)
from .errors import DegenerateFlat, GeometryError
from .hypersurface import (
    HyperScalars,
    TimelikeNormalFrame,
    canonical_K_from_R,
    canonical_K_model,
    closed_form_scalars,
    gauss_induced_R,
    induce,
    pi_relations_residual,
    scalar_curvatures,
    shape_from_class,
)
from .main_class import (
    COR32_READINGS,
    MainClassData,
    NuPair,
    SolverBranch,
    nu_from_scalars,
    solve_theta,
    theorem31,
)
from .multilinear import DEFAULT_TOL, Tolerance
from .report import Check, ValidationReport
from .suite import run_suite


class ParseError(Exception):
    pass


class SchemaError(Exception):
    pass


def _need(payload: dict, *keys):
    missing = [k for k in keys if k not in payload]
    if missing:
        raise SchemaError(f"missing fields: {', '.join(missing)}")
    return [payload[k] for k in keys]


def _contact_point(payload: dict) -> ContactNordenPoint:
    if "g" not in payload:
        return ContactNordenPoint.standard(int(payload["n"]))
    n, g, phi, xi, eta = _need(payload, "n", "g", "phi", "xi", "eta")
    return ContactNordenPoint(int(n), np.array(g), np.array(phi), np.array(xi), np.array(eta))


def _complex_point(payload: dict) -> ComplexNordenPoint:
    if "g" not in payload:
        return ComplexNordenPoint.standard(int(payload["n_prime"]))
    n_prime, g, J = _need(payload, "n_prime", "g", "J")
    return ComplexNordenPoint(int(n_prime), np.array(g), np.array(J))


def _scalars(payload: dict, t: float | None = None) -> HyperScalars:
    if t is None:
        if "t" not in payload:
            raise SchemaError("scalars need a t value")
        t = float(payload["t"])
    elif "t" in payload and abs(float(payload["t"]) - t) > 1e-9:
        raise SchemaError(
            f"scalars give t = {payload['t']} but the embedding forces t = {t}"
        )
    return HyperScalars(
        t=t,
        dt_xi=float(payload.get("dt_xi", 0.0)),
        theta_xi=float(payload.get("theta_xi", 0.0)),
        theta_star_xi=float(payload.get("theta_star_xi", 0.0)),
        xi_theta_xi=float(payload.get("xi_theta_xi", 0.0)),
        xi_theta_star_xi=float(payload.get("xi_theta_star_xi", 0.0)),
        Omega=np.array(payload["Omega"]) if payload.get("Omega") is not None else None,
    )


def _hyper_inputs(payload: dict, tol: Tolerance):
    """(point, scalars, A, nu, nu_tilde) from an embedding or a bare point."""
    tag = payload.get("class", "F0")
    if tag not in CONSTRUCTIVE_TAGS:
        raise SchemaError(f"class must be one of {CONSTRUCTIVE_TAGS}")
    nu, nut = (float(v) for v in _need(payload, "nu", "nu_tilde"))
    if "ambient" in payload:
        frame = TimelikeNormalFrame(
            ambient=_complex_point(payload["ambient"]), N=np.array(payload["N"])
        )
        structure = induce(frame, tol)
        point = structure.point
        scalars = _scalars(payload.get("scalars", {}), t=structure.t)
    else:
        point = _contact_point(payload)
        scalars = _scalars(payload.get("scalars", {}))
    A = shape_from_class(point, tag, scalars, tol)
    return point, scalars, A, nu, nut


def _run_validate(payload: dict, args) -> tuple[ValidationReport, dict]:
    if "n_prime" in payload:
        return validate_complex_norden(_complex_point(payload), args.tol), {}
    return validate_contact_axioms(_contact_point(payload), args.tol), {}


def _run_induce(payload: dict, args) -> tuple[ValidationReport, dict]:
    frame = TimelikeNormalFrame(
        ambient=_complex_point(payload["ambient"]), N=np.array(payload["N"])
    )
    structure = induce(frame, args.tol)
    checks = list(validate_contact_axioms(structure.point, args.tol).checks)
    checks.append(Check("pullback_identities", pi_relations_residual(structure), 1e-9))
    return ValidationReport(tuple(checks)), {"t": structure.t}


def _run_classify(payload: dict, args) -> tuple[ValidationReport, dict]:
    x, y = np.array(payload["x"]), np.array(payload["y"])
    if "n_prime" in payload:
        kind = classify_section_prime(_complex_point(payload), x, y, args.tol)
    else:
        kind = classify_section(_contact_point(payload), x, y, args.tol)
    return ValidationReport(()), {"section": kind.value}


def _run_curvature(payload: dict, args) -> tuple[ValidationReport, dict]:
    point, scalars, A, nu, nut = _hyper_inputs(payload, args.tol)
    R = gauss_induced_R(point, A, scalars, nu, nut)
    got = scalar_curvatures(R, point)
    want = closed_form_scalars(A, scalars, nu, nut, point)
    checks = (
        Check("curvature_symmetries", is_curvature_like(R, point), 1e-9),
        Check("tau_closed_form", abs(got.tau - want.tau) / (1 + abs(want.tau)), 1e-8),
        Check(
            "tau_twisted_closed_form",
            abs(got.tau_tilde - want.tau_tilde) / (1 + abs(want.tau_tilde)),
            1e-8,
        ),
    )
    return ValidationReport(checks), {"tau": got.tau, "tau_twisted": got.tau_tilde}


def _run_canonical(payload: dict, args) -> tuple[ValidationReport, dict]:
    point, scalars, A, nu, nut = _hyper_inputs(payload, args.tol)
    R = gauss_induced_R(point, A, scalars, nu, nut)
    K1 = canonical_K_from_R(point, R, A, scalars.t)
    K2, tau_K, tau_K_t = canonical_K_model(point, A, scalars, nu, nut)
    got = scalar_curvatures(K2, point)
    scale = 1.0 + K2.max_norm
    checks = (
        Check("routes_agree", (K1 - K2).max_norm / scale, 1e-8),
        Check("kaehlerian", kaehler_residual(K2, point), 1e-9),
        Check("tau_closed_form", abs(got.tau - tau_K) / (1 + abs(tau_K)), 1e-8),
        Check(
            "tau_twisted_closed_form",
            abs(got.tau_tilde - tau_K_t) / (1 + abs(tau_K_t)),
            1e-8,
        ),
    )
    return ValidationReport(checks), {"tau": tau_K, "tau_twisted": tau_K_t}


def _run_solve(payload: dict, args) -> tuple[ValidationReport, dict]:
    n, t, nu, nut = (float(v) for v in _need(payload, "n", "t", "nu", "nu_tilde"))
    n = int(n)
    branch = SolverBranch(int(payload.get("epsilon", 1)))
    try:
        th, ths = solve_theta(NuPair(nu, nut), t, branch, n, args.tol)
    except DegenerateFlat as exc:
        resolution = getattr(exc, "resolution", None)
        if resolution is None:
            return ValidationReport((Check("solvable", float("inf"), 1.0),)), {
                "error": str(exc)
            }
        th, ths = resolution
    point = ContactNordenPoint.standard(n)
    data = MainClassData(point=point, scalars=HyperScalars(t=t, theta_xi=th, theta_star_xi=ths))
    back = nu_from_scalars(data)
    checks = (
        Check("roundtrip_nu", abs(back.nu - nu) / (1 + abs(nu)), 1e-8),
        Check("roundtrip_nu_twisted", abs(back.nu_tilde - nut) / (1 + abs(nut)), 1e-8),
    )
    return ValidationReport(checks), {"theta_xi": th, "theta_star_xi": ths}


def _run_theorem31(payload: dict, args) -> tuple[ValidationReport, dict]:
    n = int(payload["n"])
    th = float(payload.get("theta_xi", 0.0))
    ths = float(payload.get("theta_star_xi", 0.0))
    t = float(payload.get("t", 0.0))
    point = ContactNordenPoint.standard(n)
    res = theorem31(point, th, ths, t=t, tol=args.tol)
    got = scalar_curvatures(res.R, point)
    scale = 1.0 + max(abs(th), abs(ths)) ** 2
    checks = (
        Check("flat_canonical_curvature", res.K_residual / scale, 1e-8),
        Check("tau_contraction", abs(got.tau - res.tau) / (1 + abs(res.tau)), 1e-8),
        Check(
            "tau_twisted_contraction",
            abs(got.tau_tilde - res.tau_tilde) / (1 + abs(res.tau_tilde)),
            1e-8,
        ),
    )
    results = {
        "tau": res.tau,
        "tau_twisted": res.tau_tilde,
        "k_phi_holomorphic": res.k_phi_holomorphic,
        "k_totally_real": res.k_totally_real,
    }
    return ValidationReport(checks), results


def _run_suite(payload: dict, args) -> tuple[ValidationReport, dict]:
    seed = args.seed if args.seed is not None else int(payload.get("seed", 0))
    trials = args.trials if args.trials is not None else int(payload.get("trials", 20))
    n_values = args.n or payload.get("n_values") or [1, 2, 3]
    fault = args.fault_inject if args.fault_inject is not None else float(payload.get("fault", 0.0))
    reading = args.cor32_reading or payload.get("cor32_reading")
    report = run_suite(
        seed=seed,
        trials=trials,
        n_values=[int(v) for v in n_values],
        fault=fault,
        cor32_reading=reading,
        tol=args.tol,
    )
    meta = {"seed": seed, "trials": trials, "n_values": [int(v) for v in n_values]}
    return report, meta


_HANDLERS = {
    "validate": _run_validate,
    "induce": _run_induce,
    "classify": _run_classify,
    "curvature": _run_curvature,
    "canonical": _run_canonical,
    "solve": _run_solve,
    "theorem31": _run_theorem31,
    "suite": _run_suite,
}


def _load_scenario(path: str) -> dict:
    try:
        if path == "-":
            doc = json.load(sys.stdin)
        else:
            with open(path) as fh:
                doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(str(exc)) from exc
    if not isinstance(doc, dict):
        raise SchemaError("scenario must be a JSON object")
    return doc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nordenhyp",
        description="Pointwise checks and solvers for contact-type Norden structures "
        "on time-like hypersurfaces.",
    )
    parser.add_argument("scenario", help="path to a JSON scenario, or - for stdin")
    parser.add_argument("--seed", type=int, default=None, help="suite RNG seed (PCG64)")
    parser.add_argument("--trials", type=int, default=None, help="suite datasets per battery")
    parser.add_argument(
        "--n", type=int, action="append", default=None, help="contact size n; repeatable"
    )
    parser.add_argument("--abs-tol", type=float, default=DEFAULT_TOL.abs_tol)
    parser.add_argument("--rel-tol", type=float, default=DEFAULT_TOL.rel_tol)
    parser.add_argument(
        "--json", action="store_true", help="compact single-line JSON instead of indented"
    )
    parser.add_argument(
        "--fault-inject",
        type=float,
        nargs="?",
        const=1e-3,
        default=None,
        help="perturb one structure tensor per dataset (negative control)",
    )
    parser.add_argument("--cor32-reading", choices=COR32_READINGS, default=None)
    parser.add_argument("-v", "--verbose", action="store_true", help="human text to stderr")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.tol = Tolerance(abs_tol=args.abs_tol, rel_tol=args.rel_tol)
    try:
        scenario = _load_scenario(args.scenario)
        kind = scenario.get("kind")
        if kind not in _HANDLERS:
            raise SchemaError(f"kind must be one of {sorted(_HANDLERS)}, got {kind!r}")
        report, results = _HANDLERS[kind](scenario, args)
    except (ParseError, SchemaError, GeometryError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc = {"kind": kind, **report.to_dict(), "results": results}
    if args.json:
        print(json.dumps(doc, sort_keys=True))
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))
    if args.verbose:
        print(report.render_text(), file=sys.stderr)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
