"""Command-line driver.

Subcommands: equilibrium, spectrum, critical, invariant, modes, catalog.
Exit codes: 0 ok, 1 numerical failure, 2 bad configuration, 3 internal
consistency failure.  All output is deterministic: sorted JSON keys and
floats printed with 17 significant digits.
"""

import argparse
import os
import sys

from . import bifurcation, force_field, group_core, modes, orbit_o2, spectral
from ._serialize import dumps, format_float
from .errors import ConfigError, ConsistencyError, OctavibError


def _params(args):
    if args.config:
        return force_field.load_params(args.config)
    return force_field.REFERENCE_PARAMS


def cmd_equilibrium(args):
    params = _params(args)
    eq = force_field.find_equilibrium(params)
    print(f"r0={format_float(eq.radius)}")
    print(f"criticality_residual={format_float(force_field.ct_residual(params, eq.radius))}")
    print(f"phi_second={format_float(force_field.phi_second(params, eq.radius))}")
    return 0


def cmd_spectrum(args):
    params = _params(args)
    eq = force_field.find_equilibrium(params)
    report = spectral.spectrum_at_equilibrium(eq)
    doc = report.to_json()
    if args.out:
        path = os.path.join(args.out, "spectrum.json")
        with open(path, "w") as fh:
            fh.write(doc + "\n")
        print(f"wrote {path}")
    else:
        print(doc)
    return 0


def cmd_critical(args):
    params = _params(args)
    eq = force_field.find_equilibrium(params)
    report = spectral.spectrum_at_equilibrium(eq)
    ok, witness = bifurcation.check_isotypic_nonresonance(report)
    if not ok:
        print(f"resonance between isotypic blocks {witness[0]} and {witness[1]}")
        return 1
    crit = bifurcation.critical_set(report.alphas(), args.max)
    for c in crit:
        print(f"lambda[{c.j},{c.l}]={format_float(c.value)}")
    ties = bifurcation.ordering_ties(crit)
    for group in ties:
        labels = ",".join(f"({c.j},{c.l})" for c in group)
        print(f"tie: {labels}")
    return 0


def cmd_invariant(args):
    params = _params(args)
    eq = force_field.find_equilibrium(params)
    report = spectral.spectrum_at_equilibrium(eq)
    eng = bifurcation.engine_from_spectrum(report)
    j = args.j
    if j not in bifurcation.ISOTYPIC:
        raise ConfigError(f"--j must be one of {', '.join(bifurcation.ISOTYPIC)}")
    full = args.full or j in ("0", "7*", "4", "7")
    rep = eng.report(j, full=full)
    if rep.invariant is not None:
        print(f"invariant={rep.invariant.to_json()}")
    print("maximal_types:")
    for label, coeff, weyl in rep.maximal_types:
        print(f"  {coeff:+d} ({label})   |W|={weyl}")
    if rep.invariant is not None:
        agree = rep.agreement()
        print(f"fast_path_agreement={'true' if agree else 'false'}")
        if not agree:
            raise ConsistencyError("fast path disagrees with the full product")
    return 0


def cmd_census(args):
    params = _params(args)
    eq = force_field.find_equilibrium(params)
    report = spectral.spectrum_at_equilibrium(eq)
    eng = bifurcation.engine_from_spectrum(report)
    rows = eng.census()
    print(f"count={len(rows)}")
    for row in rows:
        blocks = ",".join(row["blocks"])
        print(
            f"  ({row['label']})  order={row['order']} |W|={row['weyl_order']} "
            f"blocks={blocks} coeff={row['coefficient']:+d}"
        )
    return 0


def cmd_modes(args):
    params = _params(args)
    shop = modes.ModeWorkshop(params)
    traj = shop.build_mode(args.j, args.k, args.eps, args.samples)
    passed, report = shop.verify_symmetry(traj)
    outdir = args.out or "."
    os.makedirs(outdir, exist_ok=True)
    stem = f"mode_j{args.j.replace('*', 's')}_k{args.k}"
    csv_path = os.path.join(outdir, stem + ".csv")
    man_path = os.path.join(outdir, stem + ".json")
    modes.export_trajectory(traj, csv_path)
    with open(man_path, "w") as fh:
        fh.write(modes.mode_manifest(traj, passed, report) + "\n")
    print(f"wrote {csv_path}")
    print(f"wrote {man_path}")
    print(f"symmetry=({traj.symmetry}) verified={'true' if passed else 'false'}")
    return 0 if passed else 1


def cmd_catalog(args):
    cat = group_core.catalog()
    doc = {"subgroup_classes": cat.export()}
    if args.with_o2:
        ring = orbit_o2.ring()
        maximal = []
        for j in (0, 4, 7, 8, 9):
            classes = orbit_o2.maximal_orbit_types(j, 1)
            orbit_o2.pin_reference_labels(j, classes)
            for ci in classes:
                maximal.append(
                    {
                        "block": str(j),
                        "label": ring.label_of(ci),
                        "order": ring.order_of(ci),
                        "weyl_order": ring.weyl(ci),
                    }
                )
        doc["maximal_orbit_types"] = maximal
        doc["orbit_type_classes"] = [
            {
                "label": ring.label_of(ci),
                "order": ring.order_of(ci),
                "weyl_order": ring.weyl(ci),
            }
            for ci in orbit_o2.graph_classes(1)
        ]
    text = dumps(doc)
    if args.out:
        path = os.path.join(args.out, "catalog.json")
        with open(path, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {path}")
    else:
        print(text)
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="octavib",
        description="Octahedral-molecule vibrational analysis pipeline",
    )
    p.add_argument("--config", help="key=value parameter file (sigma1/2/3)")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("equilibrium", help="radial equilibrium and residuals")

    sp = sub.add_parser("spectrum", help="labeled Hessian spectrum (JSON)")
    sp.add_argument("--out", help="directory for spectrum.json")

    sc = sub.add_parser("critical", help="ordered critical numbers")
    sc.add_argument("--max", type=float, default=3.0, help="upper bound on lambda")

    si = sub.add_parser("invariant", help="bifurcation invariant for one block")
    si.add_argument("--j", required=True, help="isotypic label (0,4,7,7*,8,9)")
    si.add_argument("--full", action="store_true", help="force the full product")

    sub.add_parser("census", help="the 16 maximal symmetry types")

    sm = sub.add_parser("modes", help="build, verify and export one mode")
    sm.add_argument("--j", required=True, help="isotypic label")
    sm.add_argument("--k", type=int, default=1, help="type index within the block")
    sm.add_argument("--eps", type=float, default=0.05, help="amplitude")
    sm.add_argument("--samples", type=int, default=modes.DEFAULT_SAMPLES)
    sm.add_argument("--out", help="output directory")

    scat = sub.add_parser("catalog", help="subgroup catalog dump")
    scat.add_argument("--out", help="directory for catalog.json")
    scat.add_argument(
        "--catalog-dump",
        dest="with_o2",
        action="store_true",
        help="include the temporal orbit-type table",
    )
    return p


_DISPATCH = {
    "equilibrium": cmd_equilibrium,
    "spectrum": cmd_spectrum,
    "critical": cmd_critical,
    "invariant": cmd_invariant,
    "census": cmd_census,
    "modes": cmd_modes,
    "catalog": cmd_catalog,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return 3
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except OctavibError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
