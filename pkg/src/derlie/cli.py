"""Command-line driver: model files, job orchestration, caching, and
deterministic reports.

Model file format (line oriented, ``#`` starts a comment):

    name: s2xs2
    ambient_dim: 4
    minimal: yes            # optional, default yes
    generators:
      a: 1
      b: 1
    differential:           # optional; right-hand sides are bracket
      c: [a, b]             # expressions with rational coefficients
    pairing:                # optional; requires ambient_dim
      a b: 1

Bracket expressions use nested pairs and rational literals, for example
``[a, [b, c]] - 1/2 [b, b]``.

Reports are byte-identical across runs, cache states and worker counts:
cells are sorted by (mode, k, n), JSON keys are sorted, and no timestamps
are emitted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Optional

from . import ENGINE_VERSION
from . import reptheory
from .dermodel import (
    ClosureViolation,
    Mode,
    apply_derivation,
    derivation_basis,
    derivation_bracket,
    homology,
)
from .fistab import NotAChainMap, consistency_check, character
from .gradedlie import (
    BasisExpressionFailure,
    InvarianceFailure,
    ModelSpec,
    OmegaNotCycle,
    SingularPairing,
    free_product_generators,
    lie_dim,
    omega,
    pbw_series_check,
    validate_model,
)
from .ratlinalg import ContainmentViolation
from .reptheory import NotARepresentation, PaddingInvalid, pad

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CHECK_FAILURE = 3
EXIT_RESOURCE_CAP = 4

SCHEMA = "derlie-report/1"

_CHECK_ERRORS = (ContainmentViolation, ClosureViolation, NotAChainMap,
                 NotARepresentation, BasisExpressionFailure, OmegaNotCycle,
                 InvarianceFailure, SingularPairing)


class ParseError(Exception):
    """Malformed model file, with position information."""

    def __init__(self, message: str, line: int, col: int = 0):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class ValidationError(Exception):
    """A structurally valid file describing an invalid model."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


# ---- bracket-expression parsing ----------------------------------------------


def _tokenize(text: str, line: int) -> list[tuple[str, object, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "[],+-*/":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            tokens.append(("sym", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, i)
    return tokens


def parse_bracket_expression(text: str, line: int = 0) -> list:
    """Parse a sum of rational multiples of nested brackets into
    ``[(coefficient, node), ...]`` terms."""
    tokens = _tokenize(text, line)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else ("end", None,
                                                      len(text))

    def take(kind=None):
        nonlocal pos
        tok = peek()
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", line,
                             tok[2])
        pos += 1
        return tok

    def parse_rational() -> Fraction:
        num = take("int")[1]
        if peek()[0] == "/":
            take("/")
            den = take("int")[1]
            if den == 0:
                raise ParseError("zero denominator", line, peek()[2])
            return Fraction(num, den)
        return Fraction(num)

    def parse_atom() -> list:
        tok = peek()
        if tok[0] == "sym":
            take()
            return [(Fraction(1), tok[1])]
        if tok[0] == "[":
            take("[")
            left = parse_sum()
            take(",")
            right = parse_sum()
            take("]")
            return [(cl * cr, (nl, nr)) for cl, nl in left
                    for cr, nr in right]
        raise ParseError(f"expected a generator or '[', found {tok[1]!r}",
                         line, tok[2])

    def parse_term(sign: Fraction) -> list:
        coeff = Fraction(1)
        if peek()[0] == "int":
            coeff = parse_rational()
            if peek()[0] == "*":
                take("*")
        atom = parse_atom()
        return [(sign * coeff * c, n) for c, n in atom]

    def parse_sum() -> list:
        terms = []
        sign = Fraction(1)
        if peek()[0] in ("+", "-"):
            sign = Fraction(-1) if take()[0] == "-" else Fraction(1)
        terms.extend(parse_term(sign))
        while peek()[0] in ("+", "-"):
            sign = Fraction(-1) if take()[0] == "-" else Fraction(1)
            terms.extend(parse_term(sign))
        return terms

    result = parse_sum()
    tok = peek()
    if tok[0] != "end":
        raise ParseError(f"trailing input {tok[1]!r}", line, tok[2])
    return result


def _parse_rational_literal(text: str, line: int) -> Fraction:
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {text!r}: {exc}", line)


# ---- model file parsing --------------------------------------------------------


def parse_model_text(text: str) -> ModelSpec:
    name = None
    ambient: Optional[int] = None
    minimal = True
    generators: list[tuple[str, int]] = []
    differential: dict[str, list] = {}
    pairing: list[tuple[str, str, Fraction]] = []
    section = None
    seen_sections = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indented = line[0].isspace()
        stripped = line.strip()
        if not indented:
            section = None
            if ":" not in stripped:
                raise ParseError("expected 'key: value' or a section header",
                                 lineno)
            key, _, value = stripped.partition(":")
            key = key.strip()
            value = value.strip()
            if key in ("generators", "differential", "pairing"):
                if value:
                    raise ParseError(f"section header {key!r} takes no value",
                                     lineno)
                if key in seen_sections:
                    raise ParseError(f"duplicate section {key!r}", lineno)
                seen_sections.add(key)
                section = key
            elif key == "name":
                name = value
            elif key == "ambient_dim":
                try:
                    ambient = int(value)
                except ValueError:
                    raise ParseError(f"bad ambient_dim {value!r}", lineno)
            elif key == "minimal":
                if value not in ("yes", "no", "true", "false"):
                    raise ParseError("minimal must be yes or no", lineno)
                minimal = value in ("yes", "true")
            else:
                raise ParseError(f"unknown field {key!r}", lineno)
            continue
        if section is None:
            raise ParseError("indented line outside a section", lineno)
        if ":" not in stripped:
            raise ParseError("expected 'key: value'", lineno)
        key, _, value = stripped.partition(":")
        key = key.strip()
        value = value.strip()
        if section == "generators":
            try:
                degree = int(value)
            except ValueError:
                raise ParseError(f"bad generator degree {value!r}", lineno)
            generators.append((key, degree))
        elif section == "differential":
            differential[key] = parse_bracket_expression(value, lineno)
        else:  # pairing
            syms = key.split()
            if len(syms) != 2:
                raise ParseError(
                    "pairing entries look like 'sym sym: rational'", lineno)
            pairing.append((syms[0], syms[1],
                            _parse_rational_literal(value, lineno)))

    if name is None:
        raise ParseError("missing 'name' field", 1)
    if not generators:
        raise ParseError("model declares no generators", 1)
    return ModelSpec(name, generators, differential or None, pairing or None,
                     ambient, minimal)


def bundled_model_names() -> list[str]:
    root = resources.files("derlie").joinpath("models")
    return sorted(p.name[:-len(".model")] for p in root.iterdir()
                  if p.name.endswith(".model"))


def resolve_model_path(spec: str) -> tuple[str, bytes]:
    """A filesystem path, or the name of a bundled model."""
    if os.path.exists(spec):
        with open(spec, "rb") as fh:
            return spec, fh.read()
    candidate = resources.files("derlie").joinpath("models",
                                                   f"{spec}.model")
    if candidate.is_file():
        return str(candidate), candidate.read_bytes()
    raise FileNotFoundError(
        f"no model file {spec!r}; bundled models: "
        + ", ".join(bundled_model_names()))


def load_model(path: str) -> ModelSpec:
    """Parse and validate a model file; raises ParseError or
    ValidationError."""
    _, raw = resolve_model_path(path)
    model = parse_model_text(raw.decode("utf-8"))
    problems = validate_model(model)
    if problems:
        raise ValidationError(problems)
    return model


# ---- jobs ----------------------------------------------------------------------


@dataclass
class JobSpec:
    model_path: str
    mode: Mode
    k_values: tuple[int, ...]
    n_values: tuple[int, ...]
    decompose: bool = False
    check_consistency: bool = False
    check_generation: bool = False
    check_pbw: bool = False
    fmt: str = "table"
    cache_dir: Optional[str] = None
    seed: int = 0
    max_dim: int = 20000
    workers: int = 1

    def __post_init__(self):
        if not self.k_values or not self.n_values:
            raise ValueError("k and n ranges must be nonempty")
        if min(self.k_values) < 1:
            raise ValueError("homological degrees start at k = 1")
        if min(self.n_values) < 1:
            raise ValueError("arities start at n = 1")
        if self.fmt not in ("table", "json"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.max_dim < 1:
            raise ValueError("max-dim must be positive")


def parse_range(text: str) -> tuple[int, ...]:
    if ".." in text:
        a, _, b = text.partition("..")
        lo, hi = int(a), int(b)
    else:
        lo = hi = int(text)
    if hi < lo:
        raise ValueError(f"empty range {text!r}")
    return tuple(range(lo, hi + 1))


# ---- partitions as strings ------------------------------------------------------


def partition_str(p) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


def partition_from_str(s: str):
    body = s.strip()[1:-1].strip()
    if not body:
        return ()
    return tuple(int(x) for x in body.split(","))


def _partition_sort_key(p):
    return (sum(p), p)


# ---- cache ----------------------------------------------------------------------


def _cell_key(model_sha: str, mode: Mode, n: int, k: int,
              decompose: bool) -> str:
    blob = f"{model_sha}|{ENGINE_VERSION}|{mode.value}|{n}|{k}|{int(decompose)}"
    return hashlib.sha256(blob.encode()).hexdigest()


def _cache_read(cache_dir: Optional[str], key: str) -> Optional[dict]:
    if cache_dir is None:
        return None
    path = os.path.join(cache_dir, key + ".json")
    if not os.path.exists(path):
        return None
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _cache_write(cache_dir: Optional[str], key: str, value: dict) -> None:
    if cache_dir is None:
        return
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, key + ".json")
    if os.path.exists(path):
        return  # write-once
    tmp = path + f".tmp{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(value, fh, sort_keys=True)
    os.replace(tmp, path)


# ---- cell computation ------------------------------------------------------------


def _compute_cell(model: ModelSpec, mode: Mode, n: int, k: int,
                  decompose: bool) -> dict:
    h = homology(model, n, k, mode)
    cell = {"mode": mode.value, "n": n, "k": k, "dim": h.dimension}
    if decompose:
        chi = character(model, n, k, mode)
        dec = reptheory.decompose(chi)
        by_partition = lambda kv: _partition_sort_key(kv[0])
        cell["character"] = {
            partition_str(mu): str(v)
            for mu, v in sorted(chi.values.items(), key=by_partition)}
        cell["decomposition"] = {
            partition_str(lam): m
            for lam, m in sorted(dec.multiplicities.items(),
                                 key=by_partition)}
        cell["padded"] = {
            partition_str(lam): m
            for lam, m in sorted(dec.padded().items(), key=by_partition)}
    return cell


def _cell_worker(args) -> dict:
    model_text, mode_value, n, k, decompose = args
    model = parse_model_text(model_text)
    return _compute_cell(model, Mode(mode_value), n, k, decompose)


def _predicted_cost(model: ModelSpec, n: int, k: int, mode: Mode) -> int:
    genset = free_product_generators(model, n)
    cost = sum(lie_dim(genset, genset.degrees[g] + kk)
               for kk in (k, k + 1)
               for g in range(genset.count))
    if mode is Mode.BOUNDARY and model.ambient_dim is not None:
        cost = max(cost, lie_dim(genset, model.ambient_dim - 2 + k + 1))
    return cost


# ---- checks ----------------------------------------------------------------------


def _closure_spot_check(model: ModelSpec, job: JobSpec) -> dict:
    """Seeded random derivation brackets stay inside the boundary
    subcomplex."""
    n = min(job.n_values)
    k = min(job.k_values)
    genset = free_product_generators(model, n)
    predicted = sum(lie_dim(genset, genset.degrees[g] + 2 * k)
                    for g in range(genset.count))
    if predicted > job.max_dim:
        return {"name": "bracket-closure", "outcome": "skipped",
                "detail": "target slice above max-dim"}
    rng = random.Random(job.seed)
    sl = derivation_basis(model, n, k, Mode.BOUNDARY)
    target = derivation_basis(model, n, 2 * k, Mode.BOUNDARY)
    w = omega(model, n)
    samples = min(5, sl.dim * sl.dim)
    for _ in range(samples):
        a = sl.basis_derivation(rng.randrange(sl.dim))
        b = sl.basis_derivation(rng.randrange(sl.dim))
        br = derivation_bracket(a, b)
        if not apply_derivation(br, w).is_zero():
            return {"name": "bracket-closure", "outcome": "fail",
                    "detail": f"bracket image misses omega kernel at n={n}"}
        if target.pointed_to_local(target.derivation_to_pointed(br)) is None:
            return {"name": "bracket-closure", "outcome": "fail",
                    "detail": f"bracket left the subcomplex at n={n}"}
    return {"name": "bracket-closure", "outcome": "pass",
            "detail": f"{samples} sampled pairs at n={n}, k={k}"}


def _run_checks(model: ModelSpec, job: JobSpec) -> tuple[list[dict], list[dict]]:
    checks: list[dict] = []
    stability: list[dict] = []

    checks.append({"name": "structure", "outcome": "pass",
                   "detail": "d^2 = 0 and subcomplex closure held on all "
                             "computed cells"})

    if job.check_pbw:
        failures = []
        for n in job.n_values:
            genset = free_product_generators(model, n)
            report = pbw_series_check(genset, 8)
            if not report.ok:
                failures.append(f"n={n} first failure at degree "
                                f"{report.first_failure}")
        checks.append({"name": "pbw", "outcome": "fail" if failures
                       else "pass",
                       "detail": "; ".join(failures) or
                                 "series identity up to degree 8"})

    if job.check_consistency:
        failures = []
        count = 0
        for m in job.n_values:
            for n in job.n_values:
                if n >= m:
                    continue
                for k in job.k_values:
                    count += 1
                    if not consistency_check(model, n, m, k, job.mode):
                        failures.append(f"(n={n}, m={m}, k={k})")
        checks.append({"name": "consistency", "outcome": "fail" if failures
                       else "pass",
                       "detail": "; ".join(failures) or
                                 f"{count} stabilizer checks"})

    if job.check_generation:
        flags = {}
        for k in job.k_values:
            table = reptheory.generation_check(model, job.mode, k,
                                               job.n_values)
            flags[f"k={k}"] = {str(n): bool(v)
                               for n, v in sorted(table.items())}
        checks.append({"name": "generation", "outcome": "info",
                       "flags": flags})

    if job.decompose:
        for k in job.k_values:
            report = reptheory.stability_report(model, job.mode, k,
                                                job.n_values,
                                                with_generation=False)
            stability.append({
                "k": k,
                "stabilized_at": report.stabilized_at,
                "verdict": report.verdict_text(),
            })

    if job.mode is Mode.BOUNDARY:
        checks.append(_closure_spot_check(model, job))

    return checks, stability


# ---- run -------------------------------------------------------------------------


def run(job: JobSpec) -> tuple[dict, int]:
    """Execute a job; returns (report, exit code)."""
    try:
        path, raw = resolve_model_path(job.model_path)
    except FileNotFoundError as exc:
        return _error_report(job, "validation-error", str(exc)), \
            EXIT_VALIDATION
    model_sha = hashlib.sha256(raw).hexdigest()
    try:
        model = parse_model_text(raw.decode("utf-8"))
        problems = validate_model(model)
        if problems:
            raise ValidationError(problems)
    except ParseError as exc:
        return _error_report(job, "parse-error", str(exc)), EXIT_VALIDATION
    except ValidationError as exc:
        return _error_report(job, "validation-error", exc.problems), \
            EXIT_VALIDATION

    if job.mode is Mode.BOUNDARY and (not model.has_pairing
                                      or model.ambient_dim is None):
        return _error_report(
            job, "validation-error",
            "boundary mode requires a model with pairing and ambient_dim"), \
            EXIT_VALIDATION

    for n in job.n_values:
        for k in job.k_values:
            cost = _predicted_cost(model, n, k, job.mode)
            if cost > job.max_dim:
                report = _error_report(
                    job, "resource-cap",
                    f"cell (n={n}, k={k}) too large: predicted dimension "
                    f"{cost} exceeds max-dim {job.max_dim}")
                report["model"] = {"name": model.name, "sha256": model_sha}
                return report, EXIT_RESOURCE_CAP

    cells = []
    pending = []
    for k in job.k_values:
        for n in job.n_values:
            key = _cell_key(model_sha, job.mode, n, k, job.decompose)
            cached = _cache_read(job.cache_dir, key)
            if cached is not None:
                cells.append(cached)
            else:
                pending.append((n, k, key))

    try:
        if pending:
            if job.workers > 1:
                text = raw.decode("utf-8")
                args = [(text, job.mode.value, n, k, job.decompose)
                        for n, k, _ in pending]
                with ProcessPoolExecutor(max_workers=job.workers) as pool:
                    results = list(pool.map(_cell_worker, args))
            else:
                results = [_compute_cell(model, job.mode, n, k,
                                         job.decompose)
                           for n, k, _ in pending]
            for (n, k, key), cell in zip(pending, results):
                _cache_write(job.cache_dir, key, cell)
                cells.append(cell)
        checks, stability = _run_checks(model, job)
    except _CHECK_ERRORS as exc:
        report = _error_report(job, "check-failure",
                               f"{type(exc).__name__}: {exc}")
        report["model"] = {"name": model.name, "sha256": model_sha}
        return report, EXIT_CHECK_FAILURE

    cells.sort(key=lambda c: (c["mode"], c["k"], c["n"]))
    failed = any(c.get("outcome") == "fail" for c in checks)
    report = {
        "schema": SCHEMA,
        "engine": ENGINE_VERSION,
        "model": {"name": model.name, "sha256": model_sha},
        "job": _job_echo(job),
        "cells": cells,
        "stability": stability,
        "checks": checks,
        "status": "check-failure" if failed else "ok",
    }
    return report, EXIT_CHECK_FAILURE if failed else EXIT_OK


def _job_echo(job: JobSpec) -> dict:
    return {
        "mode": job.mode.value,
        "k": list(job.k_values),
        "n": list(job.n_values),
        "decompose": job.decompose,
        "check_consistency": job.check_consistency,
        "check_generation": job.check_generation,
        "check_pbw": job.check_pbw,
        "seed": job.seed,
        "max_dim": job.max_dim,
    }


def _error_report(job: JobSpec, status: str, detail) -> dict:
    return {
        "schema": SCHEMA,
        "engine": ENGINE_VERSION,
        "model": {"name": None, "sha256": None},
        "job": _job_echo(job),
        "cells": [],
        "stability": [],
        "checks": [],
        "status": status,
        "error": detail,
    }


# ---- rendering -------------------------------------------------------------------


def emit_report(report: dict, fmt: str) -> bytes:
    if fmt == "json":
        return (json.dumps(report, sort_keys=True, indent=2) + "\n").encode()
    return _render_table(report).encode()


def _render_table(report: dict) -> str:
    lines = []
    model = report.get("model") or {}
    sha = model.get("sha256")
    lines.append(f"derlie {report['engine']} report ({report['schema']})")
    lines.append(f"model: {model.get('name')}"
                 + (f"  sha256 {sha[:12]}" if sha else ""))
    job = report["job"]
    lines.append(f"mode: {job['mode']}  k: {_range_text(job['k'])}  "
                 f"n: {_range_text(job['n'])}  seed: {job['seed']}")
    lines.append("")
    if "error" in report:
        detail = report["error"]
        if isinstance(detail, list):
            for item in detail:
                lines.append(f"error: {item}")
        else:
            lines.append(f"error: {detail}")
        lines.append(f"status: {report['status']}")
        return "\n".join(lines) + "\n"

    by_k: dict[int, list[dict]] = {}
    for cell in report["cells"]:
        by_k.setdefault(cell["k"], []).append(cell)
    for k in sorted(by_k):
        block = sorted(by_k[k], key=lambda c: c["n"])
        lines.append(f"[k={k}]")
        columns: list = []
        if any("padded" in c for c in block):
            names = set()
            for c in block:
                names.update(partition_from_str(s) for s in c.get("padded",
                                                                  {}))
            columns = sorted(names, key=_partition_sort_key)
        header = ["n", "dim"] + [partition_str(c) for c in columns]
        rows = [header]
        for c in block:
            row = [str(c["n"]), str(c["dim"])]
            padded = {partition_from_str(s): v
                      for s, v in c.get("padded", {}).items()}
            for name in columns:
                try:
                    pad(name, c["n"])
                    row.append(str(padded.get(name, 0)))
                except PaddingInvalid:
                    row.append(".")
            rows.append(row)
        widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
        for r in rows:
            lines.append("  " + "  ".join(x.rjust(w)
                                          for x, w in zip(r, widths)))
        for entry in report["stability"]:
            if entry["k"] == k:
                lines.append(f"  verdict: {entry['verdict']}")
        lines.append("")
    if report["checks"]:
        lines.append("checks:")
        for check in report["checks"]:
            if check.get("outcome") == "info":
                flags = check.get("flags", {})
                text = "; ".join(
                    f"{k} " + " ".join(f"{n}:{'yes' if v else 'no'}"
                                       for n, v in sorted(
                                           flags[k].items(),
                                           key=lambda kv: int(kv[0])))
                    for k in sorted(flags))
                lines.append(f"  {check['name']}: {text}")
            else:
                detail = check.get("detail", "")
                suffix = f" ({detail})" if detail else ""
                lines.append(f"  {check['name']}: {check['outcome']}"
                             f"{suffix}")
        lines.append("")
    lines.append(f"status: {report['status']}")
    return "\n".join(lines) + "\n"


def _range_text(values: list[int]) -> str:
    if len(values) == 1:
        return str(values[0])
    return f"{values[0]}..{values[-1]}"


# ---- entry point -----------------------------------------------------------------


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="derlie",
        description="Exact homology, symmetric-group actions and stability "
                    "tables for derivation complexes of free graded Lie "
                    "algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    comp = sub.add_parser("compute", help="run a computation job")
    comp.add_argument("--model", required=True,
                      help="model file path or bundled model name")
    comp.add_argument("--mode", choices=["pointed", "boundary"],
                      default="pointed")
    comp.add_argument("--k", required=True, help="degree range, e.g. 1..2")
    comp.add_argument("--n", required=True, help="arity range, e.g. 1..4")
    comp.add_argument("--decompose", action="store_true",
                      help="decompose homology into irreducibles")
    comp.add_argument("--check-consistency", action="store_true")
    comp.add_argument("--check-generation", action="store_true")
    comp.add_argument("--check-pbw", action="store_true")
    comp.add_argument("--format", choices=["table", "json"],
                      default="table")
    comp.add_argument("--cache-dir", default=None)
    comp.add_argument("--seed", type=int, default=0)
    comp.add_argument("--max-dim", type=int, default=20000)
    comp.add_argument("--workers", type=int, default=1)
    comp.add_argument("--output", default=None,
                      help="write the report here instead of stdout")
    models = sub.add_parser("models", help="list bundled models")
    del models
    return parser


def main(argv=None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    if args.command == "models":
        for name in bundled_model_names():
            print(name)
        return EXIT_OK
    try:
        job = JobSpec(
            model_path=args.model,
            mode=Mode(args.mode),
            k_values=parse_range(args.k),
            n_values=parse_range(args.n),
            decompose=args.decompose,
            check_consistency=args.check_consistency,
            check_generation=args.check_generation,
            check_pbw=args.check_pbw,
            fmt=args.format,
            cache_dir=args.cache_dir,
            seed=args.seed,
            max_dim=args.max_dim,
            workers=args.workers,
        )
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    report, code = run(job)
    payload = emit_report(report, job.fmt)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return code


if __name__ == "__main__":
    sys.exit(main())
