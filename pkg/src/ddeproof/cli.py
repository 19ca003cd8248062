"""Command-line front end: ``ddeproof verify | find | report``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .candidate import PHASE_IM, NoOscillationError, RefinementError, extract_orbit, galerkin_F
from .candidate import newton_refine, normalize_phase, simulate
from .config import ConfigError, default_config_path, load_config
from .verifier import ProofCertificate, verify_all

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_VERIFIED = 2

# radii of the bundled proof, attached to candidates written by ``find``
DEFAULT_RADII = {"delta_tau": "0.000001", "beta1": "0.766763", "beta2": "0.0000002438"}


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def cmd_verify(config_path, out_path, workers=None, csv_path=None) -> int:
    try:
        rc = load_config(config_path or default_config_path())
        n_workers = workers or rc.workers or 1
        cert = verify_all(rc.proof, workers=n_workers)
    except ConfigError as exc:
        _err(str(exc))
        return EXIT_ERROR
    text = cert.to_json()
    out = Path(out_path)
    out.write_text(text)
    csv = Path(csv_path or rc.csv_path or out.with_suffix(".csv"))
    csv.write_text(cert.to_csv())
    bad = [r.case_id for r in cert.records + cert.auxiliary if not r.verified]
    n_ok = sum(r.verified for r in cert.records)
    print(f"records: {len(cert.records)}  verified: {n_ok}")
    if cert.all_verified:
        print("all_verified: true")
        return EXIT_OK
    print("all_verified: false")
    print("failing: " + ", ".join(bad[:10]) + (" ..." if len(bad) > 10 else ""))
    return EXIT_NOT_VERIFIED


def _dec(x: float) -> str:
    return repr(float(x))


def cmd_find(K: float, l: int, out_path, phase_im: float = PHASE_IM, t_end: float = 400.0,
             dt: float = 1.0 / 256, trajectory_path=None) -> int:
    if K <= 0:
        _err("K must be positive")
        return EXIT_ERROR
    try:
        traj = simulate(K, 0.5, t_end, dt)
        if trajectory_path:
            Path(trajectory_path).write_text(traj.to_csv())
        raw = extract_orbit(traj, l)
        start = normalize_phase(raw, phase_im)
        point = newton_refine(start, K, l)
    except NoOscillationError as exc:
        _err(str(exc))
        return EXIT_NOT_VERIFIED
    except (RefinementError, ValueError, RuntimeError) as exc:
        _err(str(exc))
        return EXIT_ERROR
    res = float(np.max(np.abs(galerkin_F(point, K))))
    doc = {"K": _dec(K), "tau_hat": _dec(point.tau)}
    doc.update(DEFAULT_RADII)
    doc["c_hat"] = [[n, _dec(z.real), _dec(0.0 if n == 0 else z.imag)] for n, z in enumerate(point.c)]
    Path(out_path).write_text(json.dumps(doc, indent=2) + "\n")
    print(f"tau: {point.tau:.12f}")
    print(f"|c1|: {abs(point.c[1]):.10f}")
    print(f"c1: {point.c[1].real:.10f} {point.c[1].imag:+.10f}i")
    print(f"residual: {res:.3e}")
    return EXIT_OK


def render_report(cert: ProofCertificate) -> str:
    lines = [f"{'case':<22} {'LHS':>14} {'RHS':>14} {'margin':>14}  ok"]
    generic = [r for r in cert.records if r.case_id.startswith("generic_n(")]
    rest = [r for r in cert.records if not r.case_id.startswith("generic_n(")]
    for r in generic[:10] + rest + cert.auxiliary:
        name = r.case_id[len("generic_n("):-1] if r.case_id.startswith("generic_n(") else r.case_id
        flag = "yes" if r.verified else "NO  <-- FAILED"
        lines.append(f"{name:<22} {r.lhs_lower:>14.4e} {r.rhs_upper:>14.4e} {r.margin:>14.4e}  {flag}")
    failed = sum(not r.verified for r in cert.records)
    lines.append(f"records: {len(cert.records)}  failed: {failed}  all_verified: {str(cert.all_verified).lower()}")
    return "\n".join(lines)


def cmd_report(cert_path) -> int:
    try:
        cert = ProofCertificate.from_json(Path(cert_path).read_text())
    except (OSError, ValueError, KeyError, TypeError) as exc:
        _err(f"cannot read certificate: {exc}")
        return EXIT_ERROR
    if not cert.records:
        _err("empty certificate")
        return EXIT_ERROR
    print(render_report(cert))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ddeproof", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the boundary-exclusion checks")
    v.add_argument("--config", default=None, help="run configuration (default: bundled configuration)")
    v.add_argument("--out", default="certificate.json", help="certificate path")
    v.add_argument("--csv", default=None, help="CSV path (default: next to the certificate)")
    v.add_argument("--workers", type=int, default=None)

    f = sub.add_parser("find", help="compute a candidate orbit and write a config")
    f.add_argument("--K", type=float, required=True)
    f.add_argument("--l", type=int, default=5)
    f.add_argument("--out", required=True)
    f.add_argument("--phase-im", type=float, default=PHASE_IM)
    f.add_argument("--t-end", type=float, default=400.0)
    f.add_argument("--dt", type=float, default=1.0 / 256)
    f.add_argument("--trajectory", default=None, help="optional CSV dump of (t, x)")

    r = sub.add_parser("report", help="render a certificate as a table")
    r.add_argument("--cert", required=True)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args.config, args.out, args.workers, args.csv)
    if args.command == "find":
        return cmd_find(args.K, args.l, args.out, args.phase_im, args.t_end, args.dt, args.trajectory)
    return cmd_report(args.cert)


if __name__ == "__main__":
    sys.exit(main())
