"""Batch command-line driver.

Every subcommand writes CSV or JSON to ``--out`` (default: stdout). Values come
from three layers: documented defaults, an optional ``--config`` JSON file,
then explicit flags. Exit status: 0 success, 1 invalid input, 2 a numerical
tolerance was not met.
"""
import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass, field

import numpy as np

from .canonical import CanonicalOscillator, compare_spectra
from .clifford import (
    anticommutation_residual,
    build_clifford,
    casimir_residual,
    dynamical_rep,
    generator_digest,
    stationary_rep,
)
from .dynamics import (
    commutator_table,
    jacobi_constraint_chain,
    make_ledger,
    physical_generators,
    time_spectrum_profile,
)
from .errors import FinqError, NumericalError, ValidationError
from .lie import (
    StructureTensor,
    a_line_rep,
    contraction_distance,
    d_line_rep,
    flexed_oscillator_algebra,
    heisenberg_tensor,
    jacobi_residual,
    killing_report,
    so3_tensor,
    structure_from_matrices,
)
from .operators import commutator, hermitian_eigensystem, max_abs
from .oscillator import (
    OscillatorModel,
    classify_regime,
    derive_constants,
    hard_spectrum_pt,
    medium_levels,
    medium_spectrum,
    oscillator_hamiltonian,
    partition_function,
    soft_spectrum_pt,
    uncertainty_report,
)
from .su2 import build_angular_momentum, half_integer

CLOSURE_TOL = 1e-12


# ------------------------------------------------------------------ options
# (flag, dest, type, default, help). Defaults live here so that --config can
# be layered between them and the command line.

def _floats(text):
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    try:
        return [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise ValidationError(f"expected comma-separated numbers, got {text!r}") from None


L = ("--l", "l", float, 10.0, "representation index l (half-integer)")
KAPPA2 = ("--kappa2", "kappa2", float, 1.0, "potential-to-kinetic ratio kappa^2")
K = ("--K", "K", float, 1.0, "kinetic scale K")

OPTIONS = {
    "spectrum": [L, KAPPA2, K],
    "classify": [
        ("--l-grid", "l_grid", _floats, "1,10,100", "comma-separated l values"),
        ("--kappa2-grid", "kappa2_grid", _floats, "0.001,0.01,0.1,1,10,100,1000", "comma-separated kappa^2 values"),
    ],
    "uncertainty": [
        L,
        KAPPA2,
        K,
        ("--state", "state", str, "ground", "ground | top | l3max | m=<value>"),
        ("--hbar", "hbar", float, 1.0, "hbar"),
    ],
    "converge": [
        ("--l-grid", "l_grid", _floats, "10,100,1000,10000", "comma-separated l values"),
        ("--count", "count", int, 10, "number of lowest distinct levels per l"),
        ("--hbar-omega", "hbar_omega", float, 1.0, "canonical quantum hbar*omega; K = hbar*omega/l"),
        ("--method", "method", str, "closed", "closed (formula) | exact (diagonalize, l <= 1000)"),
    ],
    "algebra.jacobi": [
        ("--algebra", "algebra", str, "so3", "so3 | heisenberg | flexed | file"),
        ("--tensor", "tensor", str, None, "JSON file with {labels, c} (for --algebra file)"),
        ("--eps", "eps", float, 1.0, "flexion parameter for --algebra flexed"),
    ],
    "algebra.killing": [
        ("--algebra", "algebra", str, "so3", "so3 | heisenberg | flexed | file"),
        ("--tensor", "tensor", str, None, "JSON file with {labels, c} (for --algebra file)"),
        ("--eps", "eps", float, 1.0, "flexion parameter for --algebra flexed"),
    ],
    "algebra.flex": [
        ("--eps", "eps", _floats, "1,0.1,0.01,0.001,0", "comma-separated flexion parameters"),
        ("--hbar", "hbar", float, 1.0, "hbar"),
        ("--hbar1", "hbar1", float, 1.0, "hbar prime"),
        ("--hbar2", "hbar2", float, 1.0, "hbar double prime"),
    ],
    "aline": [("--n", "n", int, 2, "A-line index n (gl(n+1))")],
    "dline": [
        ("--n", "n", int, 2, "D-line index n (even, so(n+2))"),
        ("--Q", "Q", float, 1.0, "coordinate quantum"),
        ("--P", "P", float, 1.0, "momentum quantum"),
        ("--R", "R", float, 1.0, "regulator quantum"),
    ],
    "dyn.verify": [
        ("--ledger", "ledger", _floats, "1,1,1,1,1,1", "Qb,Qq,Qp,Qt,QE,Qr"),
        ("--clifford", "clifford", int, 0, "use the Clifford realization with N replicas (0: 4x4 defining)"),
    ],
    "clifford.verify": [
        ("--mode", "mode", str, "dynamical", "stationary | dynamical"),
        ("--n", "n", int, 1, "number of replicas N"),
        ("--hbar", "hbar", float, 1.0, "hbar (stationary mode)"),
        ("--l", "l", float, 1.0, "l fixing Qr = 1/l (stationary mode)"),
        ("--ratio", "ratio", float, 1.0, "hbar1/hbar2 (stationary mode)"),
        ("--golden-hash", "golden_hash", str, None, "expected sha256 of the Cl(3,1) generators"),
        ("--allow-large", "allow_large", bool, False, "permit the 4096-dim algebra (N=3)"),
    ],
    "thermal": [
        L,
        KAPPA2,
        K,
        ("--beta-grid", "beta_grid", _floats, "0.1,0.5,1,2,5,10", "comma-separated inverse temperatures"),
    ],
}

FORMATS = {
    "spectrum": "csv",
    "classify": "csv",
    "uncertainty": "json",
    "converge": "csv",
    "algebra.jacobi": "json",
    "algebra.killing": "json",
    "algebra.flex": "csv",
    "aline": "json",
    "dline": "json",
    "dyn.verify": "json",
    "clifford.verify": "json",
    "thermal": "csv",
}


@dataclass
class RunConfig:
    command: str
    params: dict
    fmt: str
    out: object = None
    tolerances: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _add_options(p, command):
    for flag, dest, typ, default, helptext in OPTIONS[command]:
        shown = f"{helptext} (default: {default})"
        if typ is bool:
            p.add_argument(flag, dest=dest, action="store_const", const=True, default=None, help=shown)
        else:
            p.add_argument(flag, dest=dest, type=str, default=None, help=shown)
    p.add_argument("--config", help="JSON file of option values; flags override it")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None,
                   help=f"output format (default: {FORMATS[command]})")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--closure-tol", dest="closure_tol", type=float, default=None,
                   help=f"closure tolerance for pass/fail exit status (default: {CLOSURE_TOL})")
    p.set_defaults(command=command)


def build_parser():
    parser = _Parser(prog="finq", description="Finite-quantum toolkit: spectra, algebras, representations.")
    sub = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)
    nested = {"algebra": ("jacobi", "killing", "flex"), "dyn": ("verify",), "clifford": ("verify",)}
    for command in OPTIONS:
        head, _, tail = command.partition(".")
        if tail:
            continue
        _add_options(sub.add_parser(head, help=f"{head} report"), command)
    for head, tails in nested.items():
        grp = sub.add_parser(head, help=f"{head} reports")
        grp_sub = grp.add_subparsers(dest="action", required=True, parser_class=_Parser)
        for tail in tails:
            _add_options(grp_sub.add_parser(tail, help=f"{head} {tail}"), f"{head}.{tail}")
    return parser


def resolve_config(ns):
    """Merge defaults, config file and flags into a validated RunConfig."""
    command = ns.command
    specs = {dest: (typ, default) for _, dest, typ, default, _ in OPTIONS[command]}
    values = {dest: default for dest, (_, default) in specs.items()}
    fmt, out, tol = FORMATS[command], None, CLOSURE_TOL
    if ns.config:
        try:
            with open(ns.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read config {ns.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise ValidationError("config file must hold a JSON object")
        allowed = set(specs) | {"format", "out", "closure_tol"}
        unknown = sorted(set(cfg) - allowed)
        if unknown:
            raise ValidationError(f"unknown config keys for {command}: {', '.join(unknown)}")
        fmt = cfg.get("format", fmt)
        out = cfg.get("out", out)
        tol = cfg.get("closure_tol", tol)
        values.update({k: v for k, v in cfg.items() if k in specs})
    for dest in specs:
        flag = getattr(ns, dest)
        if flag is not None:
            values[dest] = flag
    params = {}
    for dest, (typ, _) in specs.items():
        raw = values[dest]
        if raw is None:
            params[dest] = None
        elif typ is bool:
            params[dest] = bool(raw)
        else:
            try:
                params[dest] = typ(raw)
            except (TypeError, ValueError):
                raise ValidationError(f"invalid value for {dest}: {raw!r}") from None
    fmt = ns.fmt or fmt
    if fmt not in ("csv", "json"):
        raise ValidationError(f"format must be csv or json, got {fmt!r}")
    tol = float(ns.closure_tol if ns.closure_tol is not None else tol)
    return RunConfig(command, params, fmt, ns.out or out, {"closure": tol})


# ------------------------------------------------------------------ emission


def _num(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def to_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_num(v) for v in row])
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) + 0.0
    return obj


def to_json(obj):
    return json.dumps(_jsonable(obj), indent=2, allow_nan=False) + "\n"


@dataclass
class Result:
    """A table (header + rows) and/or a JSON-able record, plus a pass flag."""

    header: list = None
    rows: list = None
    record: dict = None
    ok: bool = True
    message: str = ""

    def render(self, fmt):
        if fmt == "csv":
            if self.rows is None:
                raise ValidationError("this report has no tabular form; use --format json")
            return to_csv(self.header, self.rows)
        if self.record is not None:
            return to_json(self.record)
        return to_json([dict(zip(self.header, r)) for r in self.rows])


# ------------------------------------------------------------------ commands


def _closed_form(l, K, kappa2):
    """Reference energies matched to the sorted exact spectrum."""
    dim = int(round(2 * l)) + 1
    if kappa2 == 1.0:
        return "medium", np.sort([medium_spectrum(n, l, K) for n in range(dim)])
    ms = l - np.arange(dim)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        if kappa2 < 1.0:
            return "soft_pt", np.sort([soft_spectrum_pt(m, l, K, kappa2) for m in ms])
        return "hard_pt", np.sort([hard_spectrum_pt(m, l, K, kappa2) for m in ms])


def cmd_spectrum(p, cfg):
    l = half_integer(p["l"])
    rep = build_angular_momentum(l)
    spec = hermitian_eigensystem(oscillator_hamiltonian(rep, p["K"], p["kappa2"]))
    kind, ref = _closed_form(l, p["K"], p["kappa2"])
    rows = [
        (i, e, spec.level_multiplicity(i), ref[i], abs(e - ref[i]))
        for i, e in enumerate(spec.eigenvalues)
    ]
    header = ["index", "eigenvalue", "multiplicity", "closed_form", "abs_diff"]
    record = {
        "l": l,
        "kappa2": p["kappa2"],
        "K": p["K"],
        "regime": str(classify_regime(p["kappa2"], l)) if l > 0 else "Medium",
        "closed_form": kind,
        "e0": spec.eigenvalues[0],
        "emax": spec.eigenvalues[-1],
        "levels": [{"energy": e, "multiplicity": int(m)} for e, m in zip(spec.levels, spec.multiplicities)],
        "max_abs_diff": max(r[4] for r in rows),
    }
    return Result(header, rows, record)


def cmd_classify(p, cfg):
    rows = []
    for l in p["l_grid"]:
        for k2 in p["kappa2_grid"]:
            lab = classify_regime(k2, l)
            rows.append((half_integer(l), k2, str(lab), lab.soft_threshold, lab.hard_threshold))
    return Result(["l", "kappa2", "regime", "soft_threshold", "hard_threshold"], rows)


def _select_state(model, spec, name):
    rep = model.rep
    if name == "ground":
        return spec.eigenvectors[:, 0]
    if name == "top":
        return spec.eigenvectors[:, -1]
    if name == "l3max":
        return rep.basis_state(rep.l)
    if name.startswith("m="):
        try:
            m = float(name[2:])
        except ValueError:
            raise ValidationError(f"bad state {name!r}") from None
        return rep.basis_state(m)
    raise ValidationError(f"unknown state {name!r}; use ground, top, l3max or m=<value>")


def cmd_uncertainty(p, cfg):
    model = OscillatorModel.from_kappa2(p["l"], p["kappa2"], K=p["K"], hbar=p["hbar"])
    spec = model.spectrum()
    state = _select_state(model, spec, p["state"])
    rep = uncertainty_report(model.rep, model.qc, state)
    record = {
        "l": model.l,
        "kappa2": model.kappa2,
        "K": model.K,
        "regime": str(model.regime()),
        "state": p["state"],
        "e0": spec.eigenvalues[0],
        "emax": spec.eigenvalues[-1],
        "uncertainty": rep.as_dict(),
    }
    keys = list(record["uncertainty"])
    return Result(["state"] + keys, [[p["state"]] + [record["uncertainty"][k] for k in keys]], record)


def cmd_converge(p, cfg):
    if p["method"] not in ("closed", "exact"):
        raise ValidationError("method must be closed or exact")
    osc = CanonicalOscillator.with_quantum(p["hbar_omega"])
    rows = []
    for l in p["l_grid"]:
        l = half_integer(l)
        K = p["hbar_omega"] / l
        if p["method"] == "closed":
            finite = medium_levels(l, K)
        else:
            finite = hermitian_eigensystem(oscillator_hamiltonian(build_angular_momentum(l), K, 1.0))
        cmp = compare_spectra(finite, osc, min(p["count"], finite.levels.size))
        rows.extend((l,) + r for r in cmp.rows())
    return Result(["l", "n", "finite_energy", "canonical_energy", "rel_dev"], rows)


def _load_tensor(p):
    name = p["algebra"]
    if name == "so3":
        return so3_tensor()
    if name == "heisenberg":
        return heisenberg_tensor()
    if name == "flexed":
        return flexed_oscillator_algebra(1.0, 1.0, 1.0, p["eps"])
    if name == "file":
        if not p["tensor"]:
            raise ValidationError("--algebra file needs --tensor PATH")
        try:
            with open(p["tensor"], encoding="utf-8") as fh:
                data = json.load(fh)
            return StructureTensor(np.asarray(data["c"], dtype=float), tuple(data["labels"]))
        except (OSError, KeyError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read tensor file: {exc}") from None
    raise ValidationError(f"unknown algebra {name!r}")


def cmd_jacobi(p, cfg):
    t = _load_tensor(p)
    res = jacobi_residual(t)
    return Result(["algebra", "dim", "jacobi_residual"], [(p["algebra"], t.dim, res)],
                  {"algebra": p["algebra"], "labels": list(t.labels), "dim": t.dim, "jacobi_residual": res})


def cmd_killing(p, cfg):
    t = _load_tensor(p)
    rep = killing_report(t)
    record = {
        "algebra": p["algebra"],
        "labels": list(t.labels),
        "killing_form": rep.B,
        "singular_values": rep.singular_values,
        "rank": rep.rank,
        "signature": list(rep.signature),
        "semisimple": rep.semisimple,
    }
    return Result(["algebra", "rank", "semisimple"], [(p["algebra"], rep.rank, rep.semisimple)], record)


def cmd_flex(p, cfg):
    flat = flexed_oscillator_algebra(p["hbar"], p["hbar1"], p["hbar2"], 0.0)
    rows = []
    for eps in p["eps"]:
        t = flexed_oscillator_algebra(p["hbar"], p["hbar1"], p["hbar2"], eps)
        rep = killing_report(t)
        sv = list(rep.singular_values) + [0.0] * (3 - len(rep.singular_values))
        rows.append((eps, rep.rank, sv[0], sv[1], sv[2], contraction_distance(t, flat)))
    return Result(["eps", "killing_rank", "sv1", "sv2", "sv3", "distance_to_flat"], rows)


def _lie_rep_result(name, rep, extra, tol):
    _, closure = rep.closure()
    record = {"rep": name, "dim": int(np.asarray(rep.generators[0]).shape[0]),
              "generators": len(rep.generators), "closure_residual": closure, **extra}
    return Result(list(record), [list(record.values())], record, ok=closure <= tol,
                  message=f"closure residual {closure:.3e} exceeds {tol:.1e}")


def cmd_aline(p, cfg):
    rep = a_line_rep(p["n"])
    _, traceless = structure_from_matrices(rep.extra["traceless"], rep.extra["traceless_labels"])
    res = _lie_rep_result("aline", rep, {"n": p["n"], "traceless_closure_residual": traceless},
                          cfg.tolerances["closure"])
    res.ok = res.ok and traceless <= cfg.tolerances["closure"]
    return res


def cmd_dline(p, cfg):
    rep = d_line_rep(p["n"], p["Q"], p["P"], p["R"])
    n = p["n"]
    worst = 0.0
    r = rep["r"]
    coef = rep.extra["qp_coefficient"]
    for mu in range(1, n + 1):
        for nu in range(1, n + 1):
            c = commutator(rep[f"q{mu}"], rep[f"p{nu}"])
            worst = max(worst, max_abs(c - (coef * r if mu == nu else 0.0)))
    res = _lie_rep_result("dline", rep, {"n": n, "qp_coefficient": coef, "qp_delta_residual": worst},
                          cfg.tolerances["closure"])
    res.ok = res.ok and worst <= cfg.tolerances["closure"]
    return res


def cmd_dyn(p, cfg):
    vals = p["ledger"]
    if len(vals) != 6:
        raise ValidationError("--ledger needs six values Qb,Qq,Qp,Qt,QE,Qr")
    ledger = make_ledger(*vals)
    if p["clifford"]:
        gens = dynamical_rep(p["clifford"], with_algebra=False).spinor
        realization = f"clifford N={p['clifford']}"
    else:
        gens = None
        realization = "defining 4x4"
    mapped = physical_generators(ledger, gens)
    table = commutator_table(mapped, ledger)
    chain = jacobi_constraint_chain(ledger)
    record = {
        "ledger": list(ledger.as_tuple()),
        "realization": realization,
        "hbar": ledger.hbar,
        "hbar_tE": ledger.hbar_tE,
        "constraint_residual": ledger.constraint_residual,
        "jacobi_chain": {"hbar_squared": chain.lhs, "hbar_pb_hbar_qt": chain.rhs,
                         "relative_residual": chain.relative_residual},
        **table.as_dict(),
    }
    rows = [
        (f"{r.pair[0]},{r.pair[1]}", r.target or "0", r.coeff_measured, r.coeff_expected_pattern,
         r.sign_match, r.residual)
        for r in table.rows
    ]
    tol = cfg.tolerances["closure"]
    return Result(["pair", "target", "coeff_measured", "coeff_expected_pattern", "sign_match", "residual"],
                  rows, record, ok=table.max_residual <= tol,
                  message=f"closure residual {table.max_residual:.3e} exceeds {tol:.1e}")


def cmd_clifford(p, cfg):
    tol = cfg.tolerances["closure"]
    golden = build_clifford(3, 1)
    digest = generator_digest(golden)
    if p["mode"] == "stationary":
        qc = derive_constants(p["hbar"], p["l"], p["ratio"])
        st = stationary_rep(p["n"], qc, allow_large=p["allow_large"])
        cl = st.clifford
        residuals = dict(st.residuals)
        residuals["anticommutation"] = anticommutation_residual(cl)
        eff = dict(st.effective_constants)
        worst = max(residuals.values())
    elif p["mode"] == "dynamical":
        dyn = dynamical_rep(p["n"], with_algebra=True, allow_large=p["allow_large"])
        cl = dyn.clifford
        residuals = dict(dyn.residuals)
        residuals["spinor_casimir"] = casimir_residual(dyn.spinor)
        eff = {"normalization": dyn.normalization}
        prof = time_spectrum_profile(dyn.algebra["13"])
        eff["time_profile"] = prof.as_dict()
        worst = max(residuals.values())
    else:
        raise ValidationError("mode must be stationary or dynamical")
    record = {
        "mode": p["mode"],
        "n": p["n"],
        "signature": list(cl.signature),
        "dim": cl.dim,
        "residuals": residuals,
        "effective_constants": eff,
        "golden_digest": digest,
    }
    ok = worst <= tol
    message = f"residual {worst:.3e} exceeds {tol:.1e}"
    if p["golden_hash"]:
        match = p["golden_hash"].strip().lower() == digest
        record["golden_match"] = match
        if not match:
            ok, message = False, "generator digest differs from --golden-hash"
    rows = [(k, v) for k, v in residuals.items()]
    return Result(["residual", "value"], rows, record, ok=ok, message=message)


def cmd_thermal(p, cfg):
    l = half_integer(p["l"])
    spec = hermitian_eigensystem(oscillator_hamiltonian(build_angular_momentum(l), p["K"], p["kappa2"]))
    # hbar*omega = kappa K l
    hw = p["K"] * l * np.sqrt(p["kappa2"])
    rows = []
    for beta in p["beta_grid"]:
        th = partition_function(spec, beta)
        x = beta * hw
        canonical = hw * (0.5 + 1.0 / np.expm1(x)) if x > 0 else float("inf")
        rows.append((beta, th.log_z, th.mean_energy, th.heat_capacity, canonical))
    return Result(["beta", "log_z", "mean_energy", "heat_capacity", "canonical_mean_energy"], rows)


COMMANDS = {
    "spectrum": cmd_spectrum,
    "classify": cmd_classify,
    "uncertainty": cmd_uncertainty,
    "converge": cmd_converge,
    "algebra.jacobi": cmd_jacobi,
    "algebra.killing": cmd_killing,
    "algebra.flex": cmd_flex,
    "aline": cmd_aline,
    "dline": cmd_dline,
    "dyn.verify": cmd_dyn,
    "clifford.verify": cmd_clifford,
    "thermal": cmd_thermal,
}


def run(argv=None, stdout=None, stderr=None):
    """Execute one invocation and return its exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        cfg = resolve_config(ns)
        result = COMMANDS[cfg.command](cfg.params, cfg)
        text = result.render(cfg.fmt)
        if cfg.out:
            try:
                with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
                    fh.write(text)
            except OSError as exc:
                raise ValidationError(f"cannot write {cfg.out}: {exc}") from None
        else:
            stdout.write(text)
        if not result.ok:
            raise NumericalError(result.message)
    except NumericalError as exc:
        print(f"finq: numerical check failed: {exc}", file=stderr)
        return 2
    except FinqError as exc:
        print(f"finq: error: {exc}", file=stderr)
        return 1
    return 0


def main():
    sys.exit(run(sys.argv[1:]))
