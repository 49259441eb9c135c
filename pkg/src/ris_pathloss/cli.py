"""Command-line entry point.

Exit codes: 0 success, 2 configuration error, 3 element budget exceeded,
4 numerical self-check failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import farfield, link
from .coeffs import for_strategy, load_coefficients_csv
from .config import ScenarioConfig, SweepConfig, read_config
from .errors import ConfigError, GeometryError, ModelDomainError, ResourceCapError
from .experiments import CASES, emit_csv, format_csv, make_tables, run_sweep, SWEEP_COLUMNS, TABLE_COLUMNS

EXIT_OK, EXIT_CONFIG, EXIT_RESOURCE, EXIT_SELFCHECK = 0, 2, 3, 4

log = logging.getLogger("ris_pathloss")


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_bytes(text.encode("ascii"))
        log.info("wrote %s", out)


def cmd_pathloss(args) -> int:
    cfg = read_config(args.scenario)
    if not isinstance(cfg, ScenarioConfig):
        raise ConfigError("pathloss expects a scenario file, got a sweep file")
    s = cfg.build()
    if cfg.strategy == "custom":
        csv_path = Path(cfg.coefficients_csv)
        if not csv_path.is_absolute():
            csv_path = Path(args.scenario).parent / csv_path
        try:
            b = load_coefficients_csv(csv_path, s)
        except (OSError, ValueError) as err:
            raise ConfigError(f"coefficients_csv: {err}") from None
    else:
        b = for_strategy(cfg.strategy, s)
    res = link.path_loss(s, b)
    r_i, r_s = s.tx.distance, s.rx.distance
    l_s = link.free_space_loss(r_i + r_s, s.wavelength)
    report = {
        "strategy": cfg.strategy,
        "wavelength_m": s.wavelength,
        "N": s.ris.n_elements,
        "area_m2": s.ris.area,
        "r_i_m": r_i,
        "r_s_m": r_s,
        "loss_db": res.loss_db,
        "path_gain_db": res.gain_db,
        "free_space_loss_db": link.to_db(l_s),
        "normalized_db": link.to_db(l_s * res.inverse_loss),
        "received_power_dbw": link.to_db(res.received_power),
        "passive": s.passive,
    }
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        for k, v in report.items():
            print(f"{k:20s} {v:.6g}" if isinstance(v, float) else f"{k:20s} {v}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = read_config(args.sweep)
    if not isinstance(cfg, SweepConfig):
        raise ConfigError("sweep expects a file with a 'sweep' block")
    spec = cfg.build()
    if args.max_side_elements is not None:
        from dataclasses import replace

        spec = replace(spec, max_side_elements=args.max_side_elements)
    t0 = time.perf_counter()
    rows = run_sweep(spec, workers=args.workers)
    log.info("%d rows in %.2f s", len(rows), time.perf_counter() - t0)
    _write(format_csv(rows, SWEEP_COLUMNS), args.out)
    return EXIT_OK


def cmd_tables(args) -> int:
    rows = []
    for case in args.case:
        rows.extend(make_tables(case, speed_of_light=args.speed_of_light))
    _write(format_csv(rows, TABLE_COLUMNS), args.out)
    return EXIT_OK


def cmd_size(args) -> int:
    lam = farfield.wavelength_from_frequency(args.freq)
    try:
        side_m, side_lam = farfield.required_side(
            args.fe, lam, u_i=args.ui, u_s=args.us, efficiency=args.eps, q=args.q
        )
    except ValueError as err:
        raise ConfigError(str(err)) from None
    print(f"wavelength_m   {lam:.6g}")
    print(f"area_m2        {side_m**2:.6g}")
    print(f"side_m         {side_m:.6g}")
    print(f"side_lambda    {side_lam:.6g}")
    return EXIT_OK


def cmd_validate(args) -> int:
    from .selfcheck import run_all

    ok = True
    for r in run_all():
        ok &= r.passed
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:22s} {r.detail}")
    return EXIT_OK if ok else EXIT_SELFCHECK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ris-pathloss", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("pathloss", help="evaluate one scenario file")
    sp.add_argument("scenario")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_pathloss)

    sp = sub.add_parser("sweep", help="run a sweep file and write CSV")
    sp.add_argument("sweep")
    sp.add_argument("--out", default=None)
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--max-side-elements", type=int, default=None)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("tables", help="RIS side lengths matching the specular benchmark")
    sp.add_argument("--case", choices=sorted(CASES), action="append", required=True)
    sp.add_argument("--speed-of-light", type=float, default=farfield.SPEED_OF_LIGHT, help="m/s")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("size", help="required RIS size for one link")
    sp.add_argument("--freq", type=float, required=True, help="Hz")
    sp.add_argument("--fe", type=float, required=True, help="effective focal length, m")
    sp.add_argument("--ui", type=float, default=1.0)
    sp.add_argument("--us", type=float, default=1.0)
    sp.add_argument("--eps", type=float, default=1.0)
    sp.add_argument("--q", type=float, default=0.285)
    sp.set_defaults(func=cmd_size)

    sp = sub.add_parser("validate", help="run numerical self-checks")
    sp.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (ConfigError, GeometryError, ModelDomainError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceCapError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
