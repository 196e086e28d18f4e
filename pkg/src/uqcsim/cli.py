"""Command-line front end.

Exit codes: 0 success, 1 verification/assertion failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .errors import CapacityError, DomainError, UnsupportedModeError, ValidationError
from .fermi import (
    EvolutionSpec,
    FockOperatorTerm,
    HoppingHamiltonian,
    OverheadLawViolation,
    exact_evolve,
    gate_count_scaling,
    hypercube_scaling,
    occupation_state,
    random_instance,
    sweep_costs,
    trotter_evolve,
)
from .fermi.fock import MAX_EXACT_SITES
from .io import (
    PRNG_NAME,
    OracleFormatError,
    dumps_json,
    envelope,
    geometry_from_dict,
    load_config,
    load_oracle,
    make_rng,
    parse_oracle,
    report_to_csv,
)
from .nonlinear import (
    DEFAULT_THRESHOLD,
    NonlinearMap,
    OracleTable,
    brute_force_count,
    count_solutions,
)
from .qstate import global_phase_distance

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

XCHECK_TOL = 1e-10
DEFAULT_HOPPING = 0.3

DEFAULTS: dict[str, Any] = {
    "seed": 0,
    "map": "doubling",
    "lambda": None,
    "threshold": DEFAULT_THRESHOLD,
    "verify": False,
    "density": 0.5,
    "n_bits": None,
    "shape": "hypercubic",
    "d": 2,
    "l": 2,
    "t": 1.0,
    "steps": 100,
    "backend": "native",
    "instance": "uniform",
    "hopping": DEFAULT_HOPPING,
    "particles": 2,
    "occupied": None,
    "terms": None,
    "n_terms": None,
    "l_min": 2,
    "l_max": 6,
    "d_min": None,
}


class UsageError(Exception):
    pass


def _resolve(args: argparse.Namespace, keys: Sequence[str]) -> dict:
    """Explicit flags override the config file, which overrides built-in defaults."""
    file_cfg = load_config(args.config) if getattr(args, "config", None) else {}
    resolved = {}
    for key in keys:
        value = getattr(args, key, None)
        if value is None:
            value = file_cfg.get(key, DEFAULTS.get(key))
        resolved[key] = value
    return resolved


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# --- count -----------------------------------------------------------------


def cmd_count(args: argparse.Namespace) -> int:
    cfg = _resolve(
        args, ["seed", "map", "lambda", "threshold", "verify", "density", "n_bits", "oracle"]
    )
    if cfg["map"] != "doubling":
        raise UsageError(f"count mode needs --map doubling; {cfg['map']!r} only supports decisions")
    nl_map = NonlinearMap(cfg["map"], cfg["lambda"])

    if isinstance(cfg["oracle"], dict):
        oracle = parse_oracle(cfg["oracle"])
    elif cfg["oracle"]:
        oracle = load_oracle(cfg["oracle"])
        cfg["oracle"] = str(cfg["oracle"])
    elif cfg["n_bits"] is not None:
        oracle = OracleTable.random(int(cfg["n_bits"]), make_rng(int(cfg["seed"])), cfg["density"])
        cfg["oracle"] = {"generated": True, "prng": PRNG_NAME}
    else:
        raise UsageError("count needs --oracle PATH or --n-bits N")
    cfg["lambda"] = nl_map.lam

    result = count_solutions(oracle, nl_map, float(cfg["threshold"]))
    payload = {**result.to_dict(), "oracle_calls": result.oracle_calls, "n_bits": oracle.n_bits}
    status = EXIT_OK
    if cfg["verify"]:
        truth = brute_force_count(oracle)
        payload["brute_force"] = truth
        payload["verified"] = truth == result.n_estimated
        if truth != result.n_estimated:
            status = EXIT_FAIL
    _write(dumps_json(envelope("count", cfg, payload)), args.out)
    return status


# --- fermionic modes ---------------------------------------------------------


FERMI_KEYS = [
    "seed", "shape", "d", "l", "t", "steps", "backend", "instance", "hopping",
    "particles", "occupied", "terms", "n_terms", "geometry",
]


def _fermi_setup(args: argparse.Namespace):
    cfg = _resolve(args, FERMI_KEYS)
    geo_cfg = cfg.pop("geometry", None) or {"shape": cfg["shape"], "d": cfg["d"], "l": cfg["l"]}
    geometry = geometry_from_dict(geo_cfg)
    cfg["geometry"] = geometry.to_dict()
    for key in ("shape", "d", "l"):
        cfg.pop(key)
    if geometry.n_sites > MAX_EXACT_SITES:
        raise CapacityError(f"{geometry.n_sites} sites exceeds the cap of {MAX_EXACT_SITES}")

    if cfg["terms"] is not None:
        h = HoppingHamiltonian(geometry, tuple(FockOperatorTerm.from_dict(t) for t in cfg["terms"]))
        cfg["instance"] = "explicit"
    elif cfg["instance"] == "random":
        h = random_instance(geometry, make_rng(int(cfg["seed"])), cfg["n_terms"])
        cfg["prng"] = PRNG_NAME
    elif cfg["instance"] == "uniform":
        h = HoppingHamiltonian.nearest_neighbor(geometry, float(cfg["hopping"]))
    else:
        raise UsageError(f"unknown instance kind {cfg['instance']!r}")
    cfg["terms"] = [t.to_dict() for t in h.terms]

    occupied = cfg["occupied"]
    if occupied is None:
        occupied = list(range(min(int(cfg["particles"]), geometry.n_sites)))
    occupied = sorted(int(s) for s in occupied)
    if any(not 0 <= s < geometry.n_sites for s in occupied) or len(set(occupied)) != len(occupied):
        raise DomainError(f"occupied sites {occupied} invalid for {geometry.n_sites} sites")
    cfg["occupied"] = occupied
    cfg["particles"] = len(occupied)
    state = occupation_state(geometry.n_sites, occupied)
    return cfg, h, state


def _state_record(state) -> dict:
    amps = state.amplitudes
    n = state.m_qubits
    labels = np.arange(state.dimension)
    probs = state.probabilities()
    occupations = [float(probs[(labels >> k) & 1 == 1].sum()) for k in range(n)]
    return {
        "norm": state.norm(),
        "site_occupations": occupations,
        "amplitudes": [[float(a.real), float(a.imag)] for a in amps],
    }


def _cost_record(h: HoppingHamiltonian, native_ops: int, jw_total: int) -> dict:
    native_sweep, jw_sweep = sweep_costs(h)
    return {
        "native_ops": native_ops,
        "jw_weight_total": jw_total,
        "term_count": len(h.terms),
        "native_cost_per_term": native_sweep / max(1, len(h.terms)),
        "jw_weight_per_term": jw_sweep / max(1, native_sweep),
    }


def cmd_fermi_evolve(args: argparse.Namespace) -> int:
    cfg, h, state = _fermi_setup(args)
    spec = EvolutionSpec(float(cfg["t"]), int(cfg["steps"]), cfg["backend"])
    res = trotter_evolve(state, h, spec)
    payload = {**_cost_record(h, res.native_ops, res.jw_weight_total), "state": _state_record(res.state)}
    _write(dumps_json(envelope("fermi-evolve", cfg, payload)), args.out)
    return EXIT_OK


def cmd_fermi_xcheck(args: argparse.Namespace) -> int:
    cfg, h, state = _fermi_setup(args)
    cfg.pop("backend")
    t, steps = float(cfg["t"]), int(cfg["steps"])
    native = trotter_evolve(state, h, EvolutionSpec(t, steps, "native"))
    jw = trotter_evolve(state, h, EvolutionSpec(t, steps, "jw"))
    exact = exact_evolve(state, h, t)
    distance = global_phase_distance(native.state, jw.state)
    payload = {
        **_cost_record(h, native.native_ops, native.jw_weight_total),
        "backend_distance": distance,
        "tolerance": XCHECK_TOL,
        "trotter_error": float(np.abs(native.state.amplitudes - exact.amplitudes).max()),
        "jw_trotter_error": float(np.abs(jw.state.amplitudes - exact.amplitudes).max()),
        "passed": distance <= XCHECK_TOL,
    }
    _write(dumps_json(envelope("fermi-xcheck", cfg, payload)), args.out)
    return EXIT_OK if distance <= XCHECK_TOL else EXIT_FAIL


# --- bench-scaling -------------------------------------------------------------


def cmd_bench_scaling(args: argparse.Namespace) -> int:
    cfg = _resolve(args, ["shape", "d", "l_min", "l_max", "d_min"])
    d = int(cfg["d"])
    if cfg["shape"] in ("hypercube", "hypercube_graph"):
        cfg["shape"] = "hypercube_graph"
        cfg.pop("l_min")
        cfg.pop("l_max")
        d_min = int(cfg["d_min"] if cfg["d_min"] is not None else 1)
        cfg["d_min"] = d_min
        if not 1 <= d_min <= d:
            raise UsageError(f"need 1 <= d-min <= d, got {d_min}..{d}")
        try:
            report = hypercube_scaling(range(d_min, d + 1))
        except OverheadLawViolation as exc:
            print(f"overhead law violated: {exc}", file=sys.stderr)
            return EXIT_FAIL
        keys = [(dd, 2) for dd in range(d_min, d + 1)]
    else:
        cfg.pop("d_min")
        l_min, l_max = int(cfg["l_min"]), int(cfg["l_max"])
        if not 2 <= l_min <= l_max:
            raise UsageError(f"need 2 <= l-min <= l-max, got {l_min}..{l_max}")
        if l_max**d > (1 << 20):
            raise CapacityError(f"l={l_max}, d={d} exceeds the enumeration cap of 2**20 sites")
        try:
            report = gate_count_scaling(d, range(l_min, l_max + 1))
        except OverheadLawViolation as exc:
            print(f"overhead law violated: {exc}", file=sys.stderr)
            return EXIT_FAIL
        keys = [(d, l) for l in range(l_min, l_max + 1)]

    worst = report.worst_string()
    observed = [worst[k] + 1 for k in keys]
    expected = [l ** (dd - 1) for dd, l in keys]
    status = "ok" if observed == expected else "FAILED"
    trailer = [
        f"summary: law=l^(d-1) worst_string_plus_one={observed} expected={expected} status={status}",
        "config: " + json.dumps(cfg, sort_keys=True, separators=(",", ":")),
        f"artifact: uqcsim {__version__}",
    ]
    _write(report_to_csv(report, trailer), args.out)
    return EXIT_OK if status == "ok" else EXIT_FAIL


# --- parser ------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="PATH", help="JSON run config; flags override it")
    p.add_argument("--seed", type=int, help="seed for generated instances")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")


def _add_fermi(p: argparse.ArgumentParser, with_backend: bool) -> None:
    p.add_argument("--shape", choices=["hypercubic", "hypercube"])
    p.add_argument("--d", type=int, help="lattice dimension")
    p.add_argument("--l", type=int, help="lattice side length")
    p.add_argument("--t", type=float, help="total evolution time")
    p.add_argument("--steps", type=int, help="Trotter steps")
    p.add_argument("--instance", choices=["uniform", "random"], help="Hamiltonian when no terms given")
    p.add_argument("--hopping", type=float, help="hop amplitude of the uniform instance")
    p.add_argument("--particles", type=int, help="fill the first N sites")
    if with_backend:
        p.add_argument("--backend", choices=["native", "jw"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uqcsim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"uqcsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count oracle solutions with the nonlinear map")
    _add_common(p)
    p.add_argument("--oracle", metavar="PATH", help="oracle JSON file")
    p.add_argument("--n-bits", dest="n_bits", type=int, help="generate a random oracle instead")
    p.add_argument("--density", type=float, help="solution density of a generated oracle")
    p.add_argument("--map", choices=["doubling", "smooth"])
    p.add_argument("--lambda", dest="lambda", type=float)
    p.add_argument("--threshold", type=float)
    p.add_argument("--verify", action="store_const", const=True, help="cross-check by brute force")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("fermi-evolve", help="Trotter-evolve a fermionic lattice")
    _add_common(p)
    _add_fermi(p, with_backend=True)
    p.set_defaults(func=cmd_fermi_evolve)

    p = sub.add_parser("fermi-xcheck", help="compare native, JW and exact evolution")
    _add_common(p)
    _add_fermi(p, with_backend=False)
    p.set_defaults(func=cmd_fermi_xcheck)

    p = sub.add_parser("bench-scaling", help="Jordan-Wigner string cost table (CSV)")
    _add_common(p)
    p.add_argument("--shape", choices=["hypercubic", "hypercube"])
    p.add_argument("--d", type=int)
    p.add_argument("--d-min", dest="d_min", type=int, help="smallest d (hypercube only)")
    p.add_argument("--l-min", dest="l_min", type=int)
    p.add_argument("--l-max", dest="l_max", type=int)
    p.set_defaults(func=cmd_bench_scaling)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OracleFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, UnsupportedModeError, CapacityError, DomainError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
