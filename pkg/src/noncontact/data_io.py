"""Parameter files, built-in datasets and CSV output."""

import csv
from dataclasses import dataclass, field
from importlib import resources
import io
import json
import os
from pathlib import Path

from .atoms import AtomModel, AtomOscillator
from .errors import DatasetError, NoncontactError
from .materials import (
    DrudeMaterial,
    DrudeRemainder,
    LorentzFitMaterial,
    OscillatorTerm,
    WidthShift,
)

BUILTIN_MATERIALS = ("sio2_ordinary", "sio2_extraordinary", "au", "caf2")
BUILTIN_ATOMS = ("h_1s", "he_1s", "he_2s3")
DATA_DIR_ENV = "NONCONTACT_DATA_DIR"

FRICTION_COLUMNS = ("atom", "material", "T_K", "eta1_x0_au", "eta2_x0_au", "err1", "err2")


def data_dir():
    """Directory holding ``materials/`` and ``atoms/``; overridable via NONCONTACT_DATA_DIR."""
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("noncontact") / "data"))


def _read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DatasetError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc


def _get(doc, key, where, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise DatasetError(f"{where}: missing field '{key}'")
    value = doc[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise DatasetError(f"{where}.{key}: expected a number, got {value!r}")
        return float(value)
    if kind is not None and not isinstance(value, kind):
        raise DatasetError(f"{where}.{key}: expected {kind.__name__}, got {value!r}")
    return value


def material_from_dict(doc, source="<material>"):
    name = _get(doc, "name", source, str)
    model = _get(doc, "model", source, str)
    try:
        if model == "lorentz":
            terms = []
            for i, t in enumerate(_get(doc, "terms", source, list)):
                where = f"{source}: terms[{i}]"
                try:
                    terms.append(
                        OscillatorTerm(
                            _get(t, "alpha", where, float),
                            _get(t, "omega", where, float),
                            _get(t, "gamma", where, float),
                        )
                    )
                except NoncontactError as exc:
                    if isinstance(exc, DatasetError):
                        raise
                    raise DatasetError(f"{where}: {exc}") from exc
            shift = None
            ws = doc.get("width_shift")
            if ws is not None:
                where = f"{source}: width_shift"
                shift = WidthShift(
                    int(_get(ws, "term_index", where, int)),
                    _get(ws, "slope", where, float),
                    float(ws.get("t_ref", 300.0)),
                )
            return LorentzFitMaterial(name, tuple(terms), shift)
        if model == "drude":
            where = f"{source}: drude"
            d = _get(doc, "drude", source, dict)
            rem = d.get("remainder")
            remainder = None
            if rem is not None:
                rw = f"{where}.remainder"
                remainder = DrudeRemainder(
                    _get(rem, "a", rw, float), _get(rem, "omega0", rw, float), _get(rem, "gamma0", rw, float)
                )
            return DrudeMaterial(name, _get(d, "omega_p", where, float), _get(d, "gamma_p", where, float), remainder)
    except DatasetError:
        raise
    except NoncontactError as exc:
        raise DatasetError(f"{source}: {exc}") from exc
    raise DatasetError(f"{source}: unknown model '{model}' (expected 'lorentz' or 'drude')")


def material_to_dict(material, provenance=None):
    if isinstance(material, LorentzFitMaterial):
        doc = {
            "name": material.name,
            "model": "lorentz",
            "terms": [{"alpha": t.strength, "omega": t.omega, "gamma": t.gamma} for t in material.terms],
        }
        if material.width_shift is not None:
            ws = material.width_shift
            doc["width_shift"] = {"term_index": ws.term_index, "slope": ws.slope, "t_ref": ws.t_ref}
    else:
        doc = {
            "name": material.name,
            "model": "drude",
            "drude": {"omega_p": material.omega_p, "gamma_p": material.gamma_p},
        }
        if material.remainder is not None:
            r = material.remainder
            doc["drude"]["remainder"] = {"a": r.a, "omega0": r.omega0, "gamma0": r.gamma0}
    if provenance:
        doc["provenance"] = provenance
    return doc


def atom_from_dict(doc, source="<atom>"):
    where = source
    oscillators = []
    for i, o in enumerate(_get(doc, "oscillators", where, list)):
        ow = f"{source}: oscillators[{i}]"
        try:
            oscillators.append(
                AtomOscillator(_get(o, "f", ow, float), _get(o, "E", ow, float), float(o.get("Gamma", 0.0)))
            )
        except DatasetError:
            raise
        except NoncontactError as exc:
            raise DatasetError(f"{ow}: {exc}") from exc
    try:
        return AtomModel(
            name=_get(doc, "name", where, str),
            mass_kg=_get(doc, "mass_kg", where, float),
            oscillators=tuple(oscillators),
            reference_static_alpha=_get(doc, "reference_static_alpha", where, float),
            electrons=int(doc.get("electrons", 1)),
            skip_trk=bool(doc.get("skip_trk", False)),
        )
    except DatasetError:
        raise
    except NoncontactError as exc:
        raise DatasetError(f"{source}: {exc}") from exc


def atom_to_dict(atom, provenance=None):
    doc = {
        "name": atom.name,
        "mass_kg": atom.mass_kg,
        "reference_static_alpha": atom.reference_static_alpha,
        "electrons": atom.electrons,
        "skip_trk": atom.skip_trk,
        "oscillators": [{"f": o.f, "E": o.energy, "Gamma": o.width} for o in atom.oscillators],
    }
    if provenance:
        doc["provenance"] = provenance
    return doc


def _unknown(kind, name, available):
    return DatasetError(f"unknown {kind} '{name}'; available: {', '.join(available)}")


def load_material(name_or_path):
    """Built-in material by name, or a JSON parameter file by path."""
    key = str(name_or_path)
    if key in BUILTIN_MATERIALS:
        path = data_dir() / "materials" / f"{key}.json"
    else:
        path = Path(key)
        if not path.exists():
            raise _unknown("material", key, BUILTIN_MATERIALS)
    return material_from_dict(_read_json(path), str(path))


def load_atom(name_or_path):
    """Built-in atom by name, or a JSON parameter file by path."""
    key = str(name_or_path)
    if key in BUILTIN_ATOMS:
        path = data_dir() / "atoms" / f"{key}.json"
    else:
        path = Path(key)
        if not path.exists():
            raise _unknown("atom", key, BUILTIN_ATOMS)
    return atom_from_dict(_read_json(path), str(path))


def save_material(material, path, provenance=None):
    Path(path).write_text(json.dumps(material_to_dict(material, provenance), indent=2) + "\n")


def save_atom(atom, path, provenance=None):
    Path(path).write_text(json.dumps(atom_to_dict(atom, provenance), indent=2) + "\n")


@dataclass
class Dataset:
    materials: dict = field(default_factory=dict)
    atoms: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)


def load_builtin_dataset():
    """Every built-in model, validated on load."""
    ds = Dataset()
    root = data_dir()
    for name in BUILTIN_MATERIALS:
        path = root / "materials" / f"{name}.json"
        doc = _read_json(path)
        ds.materials[name] = material_from_dict(doc, str(path))
        ds.provenance[name] = doc.get("provenance", "")
    for name in BUILTIN_ATOMS:
        path = root / "atoms" / f"{name}.json"
        doc = _read_json(path)
        ds.atoms[name] = atom_from_dict(doc, str(path))
        ds.provenance[name] = doc.get("provenance", "")
    return ds


def format_value(value):
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return f"{float(value):.5e}"
    return str(value)


def write_csv(rows, destination, columns=None):
    """Write dict rows as CSV; floats in 6-significant-digit scientific notation.

    ``destination`` is a path or a text stream.  With no rows and no explicit
    ``columns`` the friction-result header is used.
    """
    rows = [r.as_row() if hasattr(r, "as_row") else dict(r) for r in rows]
    if columns is None:
        columns = list(rows[0].keys()) if rows else list(FRICTION_COLUMNS)
    for i, r in enumerate(rows):
        if list(r.keys()) != list(columns):
            raise ValueError(f"row {i} has columns {list(r.keys())}, expected {list(columns)}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([format_value(r[c]) for c in columns])
    text = buf.getvalue()
    if hasattr(destination, "write"):
        destination.write(text)
        return
    try:
        with open(destination, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write CSV to {destination}: {exc.strerror}") from exc


def read_csv(source):
    """Parse a CSV written by :func:`write_csv` back into dict rows (numbers as float)."""
    with open(source, newline="") as fh:
        rows = list(csv.DictReader(fh))
    out = []
    for r in rows:
        conv = {}
        for k, v in r.items():
            try:
                conv[k] = float(v)
            except ValueError:
                conv[k] = v
        out.append(conv)
    return out
