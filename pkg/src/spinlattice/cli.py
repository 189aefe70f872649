"""Command-line entry point.

    spinlattice <command> [--key value ...] [--config FILE]
                [--format csv|json] [--output PATH] [--units natural|physical]

A config file holds flat ``key = value`` lines with ``#`` comments; flags
override it. Exit status is 0 on success, 1 on usage errors and 2 on domain
or computation errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from . import cluster, fock, model, optics, spectra
from .cluster import fmt
from .errors import NonzeroBias, SpinLatticeError

COMMANDS = ("optics", "dw-spectrum", "transition", "frequencies", "extract", "scan", "counts")
FREQ_HEADER = ("w1", "w2", "w3", "w4", "w5")
GLOBAL_KEYS = {"format", "output", "units", "command"}
# transition reports one record, JSON unless asked otherwise
DEFAULT_FORMAT = {"transition": "json"}

REQUIRED = object()

# command -> key -> (type, default); REQUIRED marks mandatory keys, None optional.
SCHEMAS = {
    "optics": {
        "v1": (float, REQUIRED), "v2": (float, REQUIRED), "d": (float, 1.0),
        "phase": (float, 0.0), "mass": (float, 1.0), "wavelength": (float, 1.0),
        "x": (float, 0.0), "intensity": (float, None), "alpha": (float, None),
        "omega": (float, None), "omega0": (float, None), "protons": (int, None),
        "neutrons": (int, None), "electrons": (int, None),
    },
    "dw-spectrum": {
        "j": (float, 1.0), "u": (float, REQUIRED), "v": (float, 0.0),
        "jex": (float, 0.0), "delta": (float, 0.0),
    },
    "transition": {"u": (float, REQUIRED), "v": (float, 0.0)},
    "frequencies": {
        "j": (float, REQUIRED), "u": (float, REQUIRED), "v": (float, 0.0),
        "jex": (float, 0.0), "hbar": (float, None),
    },
    "extract": {
        "w1": (float, None), "w2": (float, None), "w3": (float, None),
        "w4": (float, None), "w5": (float, None), "hbar": (float, None),
        "input": (str, None),
    },
    "scan": {
        "u": (float, 3.0), "v": (float, 0.0), "jmax": (float, 0.5),
        "steps": (int, 101), "graph": (str, "plaquette-ring"),
    },
    "counts": {"sites": (int, 16)},
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    parameters: dict = field(default_factory=dict)
    output_format: str = "csv"
    output_path: str | None = None
    units_mode: str = "natural"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def read_config_file(path) -> dict:
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key] = value
    return values


def _coerce(key, typ, raw):
    try:
        return typ(raw)
    except (TypeError, ValueError):
        raise UsageError(f"invalid value for {key}: {raw!r}") from None


def parse_config(argv) -> RunConfig:
    argv = list(argv)
    command = argv.pop(0) if argv and not argv[0].startswith("-") else None

    pre = _Parser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    file_values = read_config_file(known.config) if known.config else {}

    command = command or file_values.get("command")
    if command is None:
        raise UsageError(f"missing command; choose from {', '.join(COMMANDS)}")
    if command not in SCHEMAS:
        raise UsageError(f"unknown command {command!r}; choose from {', '.join(COMMANDS)}")
    schema = SCHEMAS[command]

    for key in file_values:
        if key not in schema and key not in GLOBAL_KEYS:
            raise UsageError(f"unknown key {key!r} for command {command}")

    parser = _Parser(prog=f"spinlattice {command}")
    parser.add_argument("--config")
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--output")
    parser.add_argument("--units", choices=("natural", "physical"))
    for key in schema:
        parser.add_argument(f"--{key}", dest=key)
    args = vars(parser.parse_args(argv))

    merged = {k: v for k, v in file_values.items() if k != "command"}
    merged.update({k: v for k, v in args.items() if v is not None and k != "config"})

    params = {}
    for key, (typ, default) in schema.items():
        if key in merged:
            params[key] = _coerce(key, typ, merged[key])
        elif default is REQUIRED:
            raise UsageError(f"missing required key {key} for command {command}")
        else:
            params[key] = default

    fmt_ = merged.get("format", DEFAULT_FORMAT.get(command, "csv"))
    units = merged.get("units", "natural")
    if fmt_ not in ("csv", "json"):
        raise UsageError(f"invalid value for format: {fmt_!r}")
    if units not in ("natural", "physical"):
        raise UsageError(f"invalid value for units: {units!r}")
    return RunConfig(command, params, fmt_, merged.get("output"), units)


# ---------------------------------------------------------------------------
# emission

def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return buf.getvalue()


def _jsonable(x):
    if isinstance(x, float):
        return float(fmt(x))
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2) + "\n"


def _record(cfg, fields: dict) -> str:
    if cfg.output_format == "json":
        return _json(fields)
    return _csv(tuple(fields), [tuple(fields.values())])


def _units(cfg):
    return optics.PHYSICAL if cfg.units_mode == "physical" else optics.NATURAL


# ---------------------------------------------------------------------------
# commands

def _cmd_optics(cfg):
    p = cfg.parameters
    units = _units(cfg)
    lat = optics.LatticeParams(p["v1"], p["v2"], p["d"], p["phase"], p["mass"], p["wavelength"])
    try:
        omega = optics.josephson_frequency(lat, units)
    except SpinLatticeError:
        omega = None
    out = {
        "potential": float(optics.superlattice_potential(p["x"], lat)),
        "is_double_well": optics.is_effective_double_well(lat),
        "recoil_energy": optics.recoil_energy(p["mass"], p["wavelength"], units),
        "josephson_frequency": omega,
    }
    dip = [p[k] for k in ("intensity", "alpha", "omega", "omega0")]
    if any(x is not None for x in dip):
        if any(x is None for x in dip):
            raise UsageError("dipole quantities need intensity, alpha, omega and omega0")
        field_ = optics.DipoleField(*dip)
        out["dipole_potential"] = optics.dipole_potential(field_, units)
        out["detuning"] = optics.detuning_class(field_).value
    counts = [p[k] for k in ("protons", "neutrons", "electrons")]
    if any(x is not None for x in counts):
        if any(x is None for x in counts):
            raise UsageError("species needs protons, neutrons and electrons")
        out["statistics"] = optics.classify_species(optics.Species(*counts)).value
    return _record(cfg, out)


def _cmd_dw_spectrum(cfg):
    p = cfg.parameters
    c = model.CouplingSet(p["j"], p["u"], p["v"], p["jex"], p["delta"])
    graph = model.two_site()
    if p["delta"] and (p["v"] or p["jex"]):
        raise NonzeroBias("bias is only available with v = jex = 0 (plain Hubbard model)")
    build = model.build_hubbard if p["delta"] else model.build_juvj
    rows = []
    for sector, (nu, nd) in (("sz0", (1, 1)), ("polarized", (2, 0))):
        h = build(fock.enumerate_states(2, nu, nd), graph, c)
        res = spectra.eigen_symmetric(h)
        for k, e in enumerate(res.eigenvalues):
            label = fock.total_spin_label(h.basis, res.eigenvectors[:, k])
            spin = label if label == fock.MIXED else label.s
            rows.append((sector, k, float(e), spin))
    header = ("sector", "level", "energy", "spin")
    if cfg.output_format == "json":
        doc = {"levels": [dict(zip(header, r)) for r in rows]}
        if p["j"] > 0 and not p["delta"]:
            dc = model.to_dimensionless(c)
            doc["singlet_energy"] = spectra.singlet_energy(dc)
            doc["triplet_energy"] = spectra.triplet_energy(dc)
        return _json(doc)
    return _csv(header, rows)


def _cmd_transition(cfg):
    u, v = cfg.parameters["u"], cfg.parameters["v"]
    return _record(cfg, {
        "j_crit": spectra.transition_point(u, v),
        "j_crit_closed_form": spectra.transition_point_closed_form(u, v),
        "j_crit_as_printed": spectra.transition_point_as_printed(u, v),
    })


def _hbar(cfg):
    h = cfg.parameters.get("hbar")
    if h is not None:
        return h
    return _units(cfg).hbar


def _cmd_frequencies(cfg):
    p = cfg.parameters
    c = model.CouplingSet(p["j"], p["u"], p["v"], p["jex"])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        f = spectra.evolution_frequencies(c, _hbar(cfg))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return _record(cfg, dict(zip(FREQ_HEADER, (f.w1, f.w2, f.w3, f.w4, f.w5))))


def _read_frequency_file(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        rows = list(csv.DictReader(ln for ln in text.splitlines() if not ln.startswith("#")))
        if len(rows) != 1:
            raise UsageError(f"{path}: expected one CSV data row") from None
        doc = rows[0]
    if not isinstance(doc, dict):
        raise UsageError(f"{path}: expected an object with keys w1..w5")
    return doc


def _cmd_extract(cfg):
    p = dict(cfg.parameters)
    if p["input"]:
        for k, v in _read_frequency_file(p["input"]).items():
            if k in FREQ_HEADER and p.get(k) is None:
                p[k] = _coerce(k, float, v)
    missing = [k for k in FREQ_HEADER if p.get(k) is None]
    if missing:
        raise UsageError(f"missing required key {missing[0]} for command extract")
    f = spectra.FrequencySet(*(p[k] for k in FREQ_HEADER), hbar=_hbar(cfg))
    c, residual = spectra.extract_couplings(f)
    return _record(cfg, {"j": c.hop_j, "u": c.onsite_u, "v": c.intersite_v,
                         "jex": c.superexchange_jex, "residual": residual})


def _cmd_scan(cfg):
    p = cfg.parameters
    try:
        graph = model.named_graph(p["graph"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if p["steps"] < 2:
        raise UsageError("invalid value for steps: must be >= 2")
    scan = cluster.rvb_scan(graph, p["u"], p["v"], p["jmax"], p["steps"], graph_name=p["graph"])
    if cfg.output_format == "json":
        return cluster.scan_to_json(scan)
    return cluster.scan_to_csv(scan)


def _cmd_counts(cfg):
    n = cfg.parameters["sites"]
    if n < 2:
        raise UsageError("invalid value for sites: must be >= 2")
    fer = cluster.count_cluster_states(n, fock.Statistics.FERMION)
    bos = cluster.count_cluster_states(n, fock.Statistics.BOSON)
    return _record(cfg, {
        "sites": n,
        "fermion_sz0": fer.sz0_states,
        "fermion_polarized": fer.polarized_states,
        "boson": bos.boson_states,
        "singlet_multiplicity": fer.singlet_states,
        "triplet_sz0_multiplicity": fer.triplet_sz0_states,
    })


HANDLERS = {
    "optics": _cmd_optics,
    "dw-spectrum": _cmd_dw_spectrum,
    "transition": _cmd_transition,
    "frequencies": _cmd_frequencies,
    "extract": _cmd_extract,
    "scan": _cmd_scan,
    "counts": _cmd_counts,
}


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        text = HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: UsageError: {exc}", file=sys.stderr)
        return 1
    except (SpinLatticeError, ValueError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if cfg.output_path:
        Path(cfg.output_path).write_text(text)
    else:
        stdout.write(text)
    return 0


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"error: UsageError: {exc}", file=sys.stderr)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
