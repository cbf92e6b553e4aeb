"""Command-line front end: ``noncontact <subcommand> ...``."""

import argparse
import io
import math
from pathlib import Path
import sys

import numpy as np

from . import atoms as _atoms
from . import data_io
from .errors import DatasetError, DomainError, NoncontactError, RegimeError
from .friction import FrictionRequest, attenuation, compute_friction, compute_many, eta_si
from .materials import DrudeMaterial, check_temperature, permittivity, surface_response
from .quadrature import QuadratureSettings
from .zero_temp import zero_temp_force_closed, zero_temp_force_integral, zero_temp_inputs

TABLE_TEMPERATURES = (273.0, 298.0, 300.0)
TABLES = {
    "table3": ("sio2_ordinary", "sio2_extraordinary"),
    "table4": ("au",),
    "table5": ("caf2",),
}


class UsageError(Exception):
    pass


class ComputationError(Exception):
    pass


def _settings(args):
    return QuadratureSettings(rel_tol=args.rel_tol)


def _temperature(t):
    try:
        check_temperature(t)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    return t


def _material(name):
    try:
        return data_io.load_material(name)
    except DatasetError as exc:
        raise UsageError(str(exc)) from exc


def _atom(name):
    try:
        return data_io.load_atom(name)
    except DatasetError as exc:
        raise UsageError(str(exc)) from exc


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.command}: missing required option(s) {', '.join(missing)}")


def _emit(rows, args, columns=None):
    buf = io.StringIO()
    if args.format == "text":
        for r in rows:
            width = max(len(k) for k in r)
            for k, v in r.items():
                buf.write(f"{k:<{width}}  {data_io.format_value(v)}\n")
            buf.write("\n")
    else:
        data_io.write_csv(rows, buf, columns=columns)
    return buf.getvalue()


def _check_converged(result, what):
    if not result.converged:
        raise ComputationError(f"quadrature did not converge for {what}")


def cmd_eta(args):
    _require(args, "atom", "material", "temp")
    atom, material = _atom(args.atom), _material(args.material)
    rows = []
    for t in args.temp:
        res = compute_friction(FrictionRequest(atom, material, _temperature(t), _settings(args)))
        _check_converged(res, f"{atom.name}/{material.name} at {t} K")
        rows.append(res.as_row())
    return _emit(rows, args)


SCAN_COLUMNS = ["atom", "material", "T_K", "Z_a0", "eta1_kg_s", "eta2_kg_s", "eta_total_kg_s"]


def scan_rows(atom, material, temperatures, distances, settings=None, jobs=None):
    """SI friction on a distance grid: one integration per temperature, rescaled per Z."""
    atom = data_io.load_atom(atom) if isinstance(atom, str) else atom
    material = data_io.load_material(material) if isinstance(material, str) else material
    settings = settings or QuadratureSettings()
    reqs = [FrictionRequest(atom, material, t, settings) for t in temperatures]
    rows = []
    for res in compute_many(reqs, max_workers=jobs):
        _check_converged(res, f"{atom.name}/{material.name} at {res.temperature} K")
        for z in distances:
            e1, e2, tot = eta_si(res.eta1_x0, res.eta2_x0, float(z))
            rows.append(dict(zip(SCAN_COLUMNS, (res.atom, res.material, res.temperature, float(z), e1, e2, tot))))
    return rows


def cmd_scan(args):
    _require(args, "atom", "material", "temp")
    atom, material = _atom(args.atom), _material(args.material)
    if args.z:
        zs = args.z
    else:
        if not (args.z_min > 0 and args.z_max > 0 and args.z_count >= 1):
            raise UsageError("scan: --z-min/--z-max must be positive and --z-count >= 1")
        zs = [float(z) for z in np.geomspace(args.z_min, args.z_max, args.z_count)]
    if any(z <= 0 for z in zs):
        raise UsageError("scan: distances must be positive")
    temps = [_temperature(t) for t in args.temp]
    return _emit(scan_rows(atom, material, temps, zs, _settings(args), args.jobs), args, columns=SCAN_COLUMNS)


def cmd_material(args):
    _require(args, "material", "omega")
    material = _material(args.material)
    t = _temperature(args.temp[0]) if args.temp else None
    rows = []
    for w in args.omega:
        try:
            eps = permittivity(material, w, t)
            r = surface_response(material, w, t)
        except NoncontactError as exc:
            raise UsageError(f"material: {exc}") from exc
        rows.append({
            "material": material.name, "omega_au": w,
            "eps_re": eps.real, "eps_im": eps.imag, "resp_re": r.real, "resp_im": r.imag,
        })
    return _emit(rows, args)


def cmd_alpha(args):
    _require(args, "atom", "omega")
    atom = _atom(args.atom)
    rows = []
    for w in args.omega:
        try:
            a = _atoms.alpha(atom, w)
        except NoncontactError as exc:
            raise UsageError(f"alpha: {exc}") from exc
        one_loop = _atoms.im_alpha_one_loop(atom, w) if w < atom.first_resonance else "n/a"
        rows.append({
            "atom": atom.name, "omega_au": w, "alpha_re": a.real, "alpha_im": a.imag,
            "im_alpha_one_loop": one_loop,
        })
    return _emit(rows, args)


def cmd_attenuation(args):
    _require(args, "z")
    if args.mass is not None:
        mass = args.mass
        label = "custom"
    else:
        _require(args, "atom")
        atom = _atom(args.atom)
        mass, label = atom.mass_kg, atom.name
    eta1, eta2 = args.eta1, args.eta2
    if eta1 is None or eta2 is None:
        _require(args, "atom", "material", "temp")
        res = compute_friction(
            FrictionRequest(_atom(args.atom), _material(args.material), _temperature(args.temp[0]), _settings(args))
        )
        _check_converged(res, "attenuation friction coefficients")
        eta1 = res.eta1_x0 if eta1 is None else eta1
        eta2 = res.eta2_x0 if eta2 is None else eta2
    try:
        att = attenuation(mass, eta1, eta2, args.z[0])
    except DomainError as exc:
        raise UsageError(f"attenuation: {exc}") from exc
    rows = [{
        "atom": label, "mass_kg": mass, "Z_a0": args.z[0], "eta1_x0_au": eta1, "eta2_x0_au": eta2,
        "gamma1_per_s": att.gamma1, "gamma2_per_s": att.gamma2, "gamma_per_s": att.gamma,
        "tau_s": att.tau if math.isfinite(att.tau) else "inf",
    }]
    return _emit(rows, args)


def cmd_zerotemp(args):
    _require(args, "atom", "material", "velocity", "z")
    atom, material = _atom(args.atom), _material(args.material)
    if not isinstance(material, DrudeMaterial):
        raise UsageError("zerotemp: material must be a Drude (conductor) model")
    if args.no_remainder:
        material = material.without_remainder()
    rows = []
    for v in args.velocity:
        for z in args.z:
            try:
                closed = zero_temp_force_closed(zero_temp_inputs(atom, material, v, z))
                integral = zero_temp_force_integral(atom, material, v, z, rel_tol=min(args.rel_tol * 100, 1e-6))
            except RegimeError as exc:
                raise UsageError(f"zerotemp: {exc}") from exc
            _check_converged(integral, f"zero-temperature force at v={v}, Z={z}")
            rows.append({
                "atom": atom.name, "material": material.name, "v_au": v, "Z_a0": z,
                "force_closed_au": closed, "force_integral_au": integral.value,
                "rel_diff": integral.value / closed - 1.0,
            })
    return _emit(rows, args)


def table_rows(material_names, settings=None, jobs=None):
    """Rows in reference-table layout: one per (material, T)."""
    settings = settings or QuadratureSettings()
    ds = data_io.load_builtin_dataset()
    atom_names = data_io.BUILTIN_ATOMS
    reqs = [
        FrictionRequest(ds.atoms[a], ds.materials[m], t, settings)
        for m in material_names for t in TABLE_TEMPERATURES for a in atom_names
    ]
    results = compute_many(reqs, max_workers=jobs)
    rows = []
    it = iter(results)
    for m in material_names:
        for t in TABLE_TEMPERATURES:
            row = {"material": m, "T_K": t}
            for a in atom_names:
                res = next(it)
                _check_converged(res, f"{a}/{m} at {t} K")
                row[f"{a}_eta1_x0"] = res.eta1_x0
                row[f"{a}_eta2_x0"] = res.eta2_x0
            rows.append(row)
    return rows


def cmd_reproduce_tables(args):
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for table, materials in TABLES.items():
        path = out / f"{table}.csv"
        data_io.write_csv(table_rows(materials, _settings(args), args.jobs), path)
        written.append(str(path))
    return "".join(f"{p}\n" for p in written)


def cmd_dump_datasets(args):
    out = Path(args.output_dir)
    (out / "materials").mkdir(parents=True, exist_ok=True)
    (out / "atoms").mkdir(parents=True, exist_ok=True)
    ds = data_io.load_builtin_dataset()
    written = []
    for name, m in ds.materials.items():
        path = out / "materials" / f"{name}.json"
        data_io.save_material(m, path, ds.provenance.get(name))
        written.append(path)
    for name, a in ds.atoms.items():
        path = out / "atoms" / f"{name}.json"
        data_io.save_atom(a, path, ds.provenance.get(name))
        written.append(path)
    return "".join(f"{p}\n" for p in written)


COMMANDS = {
    "eta": cmd_eta,
    "scan": cmd_scan,
    "material": cmd_material,
    "alpha": cmd_alpha,
    "attenuation": cmd_attenuation,
    "zerotemp": cmd_zerotemp,
    "reproduce-tables": cmd_reproduce_tables,
    "dump-datasets": cmd_dump_datasets,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--atom", help=f"built-in atom ({', '.join(data_io.BUILTIN_ATOMS)}) or JSON file")
    common.add_argument("--material", help=f"built-in material ({', '.join(data_io.BUILTIN_MATERIALS)}) or JSON file")
    common.add_argument("--temp", type=float, nargs="+", help="temperature(s) in K")
    common.add_argument("--z", type=float, nargs="+", help="atom-surface distance(s) in Bohr radii")
    common.add_argument("--output", "-o", default="-", help="output file (default: stdout)")
    common.add_argument("--rel-tol", type=float, default=1e-8, help="quadrature relative tolerance")
    common.add_argument("--format", choices=("csv", "text"), default="csv")
    common.add_argument("--jobs", type=int, default=None, help="worker threads for grid evaluations")

    parser = argparse.ArgumentParser(
        prog="noncontact",
        description="Noncontact (van der Waals) friction of H and He atoms near surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("eta", parents=[common], help="normalized friction coefficients at Z = a0")
    p = sub.add_parser("scan", parents=[common], help="SI friction coefficients on a distance grid")
    p.add_argument("--z-min", type=float, default=10.0)
    p.add_argument("--z-max", type=float, default=100.0)
    p.add_argument("--z-count", type=int, default=10)
    p = sub.add_parser("material", parents=[common], help="permittivity and surface response")
    p.add_argument("--omega", type=float, nargs="+", help="frequencies in atomic units")
    p = sub.add_parser("alpha", parents=[common], help="atomic polarizability")
    p.add_argument("--omega", type=float, nargs="+", help="frequencies in atomic units")
    p = sub.add_parser("attenuation", parents=[common], help="velocity damping rate and time")
    p.add_argument("--eta1", type=float, help="normalized eta1 in a.u. (computed if omitted)")
    p.add_argument("--eta2", type=float, help="normalized eta2 in a.u. (computed if omitted)")
    p.add_argument("--mass", type=float, help="particle mass in kg (overrides --atom)")
    p = sub.add_parser("zerotemp", parents=[common], help="zero-temperature friction force")
    p.add_argument("--velocity", type=float, nargs="+", help="velocity in atomic units")
    p.add_argument("--no-remainder", action="store_true", help="drop the Drude remainder term")
    for name in ("reproduce-tables", "dump-datasets"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--output-dir", default=".", help="directory for the written files")
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.rel_tol <= 0:
        print("noncontact: --rel-tol must be positive", file=sys.stderr)
        return 2
    try:
        text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"noncontact: {exc}", file=sys.stderr)
        return 2
    except (ComputationError, NoncontactError) as exc:
        print(f"noncontact: computation failed: {exc}", file=sys.stderr)
        return 1
    if args.output == "-":
        sys.stdout.write(text)
    else:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            print(f"noncontact: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
            return 1
    return 0


def main():
    sys.exit(run())
