"""Command-line entry point wiring all modules together.

Every subcommand reads the JSON model format of `model.save`/`model.load`.
A model argument may be a file path, a file name under the directory named
by the DIMER_FIXTURES environment variable, or the name of a bundled
fixture (triangle, gr37, inconsistent, uniform-K-N).

Reports are emitted as plain text by default, or as JSON documents with a
stable ``"schema": 1`` field under ``--format json``. `dimer verify` runs
the full ordered check suite and exits 0 iff every check passes.
"""

from __future__ import annotations

import json
import os
import random
import sys
import time
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional, Tuple

import click

from . import model as model_lib
from .fixtures import FIXTURE_BUILDERS
from .kclass_weights import (downstream_wedge, kclass_of_matching,
                             muller_speyer_matching,
                             projective_matching_oracle, upstream_matching,
                             weight_table, weights)
from .lattice_maps import (check_cluster_ensemble, eta_inverse_basis,
                           eta_invariant_factors, is_eta_unimodular,
                           lattice_basis)
from .matchings import (Matching, boundary_value, enumerate_matchings,
                        extreme_matchings, is_matching,
                        matchings_with_boundary, positroid,
                        positroid_contains_necklace_test)
from .model import (BLACK, WHITE, DimerModel, StructuralError, opposite,
                    standardise, type_of, validate)
from .partition_functions import (LaurentPoly, boundary_measurement,
                                  check_plucker_relations, ms_formula_black,
                                  ms_formula_white, ms_formula_white_v2,
                                  musp_twist_expression, unit_weights)
from .resolution import (check_resolution, reachable_set, rotate_matching,
                         saturation_degree)
from .strands import (check_postnikov, source_labels, strands as strands_of,
                      target_labels)

SCHEMA = 1


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------

def _resolve_model(name: str) -> DimerModel:
    if os.path.exists(name):
        return model_lib.load(name)
    fixture_dir = os.environ.get("DIMER_FIXTURES")
    if fixture_dir:
        for candidate in (os.path.join(fixture_dir, name),
                          os.path.join(fixture_dir, name + ".json")):
            if os.path.exists(candidate):
                return model_lib.load(candidate)
    if name in FIXTURE_BUILDERS:
        return FIXTURE_BUILDERS[name]()
    raise click.ClickException(f"cannot resolve model {name!r}: not a file, "
                               "not under DIMER_FIXTURES, not a bundled fixture")


def _load(name: str) -> DimerModel:
    try:
        return _resolve_model(name)
    except StructuralError as exc:
        raise click.ClickException(str(exc))


def _parse_ints(text: str, what: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise click.ClickException(f"cannot parse {what} {text!r}; expected "
                                   "comma-separated integers")


def _matching_from_option(model: DimerModel, text: str) -> Matching:
    ids = _parse_ints(text, "matching")
    if not is_matching(model, ids):
        raise click.ClickException(f"arrow ids {sorted(ids)} are not a perfect matching")
    return Matching(frozenset(ids))


def _serialize_matching(mu: Matching) -> List[int]:
    return sorted(mu.arrow_set)


def _poly_doc(poly: LaurentPoly) -> dict:
    return {"basis": poly.basis,
            "terms": [{"exponents": {str(i): e for i, e in key}, "coefficient": c}
                      for key, c in poly.terms]}


def _emit(doc: dict, fmt: str, text_lines: Callable[[], List[str]]) -> None:
    if fmt == "json":
        doc = {"schema": SCHEMA, **doc}
        click.echo(json.dumps(doc, indent=1, sort_keys=True))
    else:
        for line in text_lines():
            click.echo(line)


format_option = click.option("--format", "fmt", type=click.Choice(["text", "json"]),
                             default="text", show_default=True,
                             help="Output format.")


@click.group()
def main() -> None:
    """Combinatorics of consistent dimer models on the disc."""


# ---------------------------------------------------------------------------
# Core model commands
# ---------------------------------------------------------------------------

@main.command("validate")
@click.argument("file")
@format_option
def cmd_validate(file: str, fmt: str) -> None:
    """Run the structural validity checks."""
    model = _load(file)
    report = validate(model)
    doc = {"command": "validate", "passed": report.passed,
           "checks": {name: {"ok": ok, "detail": detail}
                      for name, (ok, detail) in report.checks.items()}}
    _emit(doc, fmt, lambda: [
        *(f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail and not ok else "")
          for name, (ok, detail) in report.checks.items()),
        f"valid: {report.passed}"])
    if not report.passed:
        sys.exit(1)


@main.command("type")
@click.argument("file")
@format_option
def cmd_type(file: str, fmt: str) -> None:
    """Print the type (k, n) of the model."""
    model = _load(file)
    k, n = type_of(model)
    _emit({"command": "type", "k": k, "n": n}, fmt, lambda: [f"({k}, {n})"])


@main.command("build-uniform")
@click.option("-k", "k", type=int, required=True)
@click.option("-n", "n", type=int, required=True)
@click.option("-o", "out", required=True, help="Output model file.")
def cmd_build_uniform(k: int, n: int, out: str) -> None:
    """Build the uniform (k,n) model and write it to a file."""
    from .fixtures import build_uniform
    try:
        model = build_uniform(k, n)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    model_lib.save(model, out)
    click.echo(f"wrote uniform ({k},{n}) model with {len(model.vertices)} vertices to {out}")


@main.command("opposite")
@click.argument("file")
@click.option("-o", "out", default=None, help="Output file (default: stdout).")
def cmd_opposite(file: str, out: Optional[str]) -> None:
    """Write the opposite model (all arrows and colours reversed)."""
    model = opposite(_load(file))
    if out:
        model_lib.save(model, out)
    else:
        click.echo(json.dumps(model_lib.to_dict(model), indent=1, sort_keys=True))


@main.command("standardise")
@click.argument("file")
@click.option("--black", "black", is_flag=True,
              help="Standardise with black boundary faces instead of white.")
@click.option("-o", "out", default=None, help="Output file (default: stdout).")
def cmd_standardise(file: str, black: bool, out: Optional[str]) -> None:
    """Insert digons so every boundary arrow lies in a face of one colour."""
    model = standardise(_load(file), BLACK if black else WHITE)
    if out:
        model_lib.save(model, out)
    else:
        click.echo(json.dumps(model_lib.to_dict(model), indent=1, sort_keys=True))


# ---------------------------------------------------------------------------
# Strand commands
# ---------------------------------------------------------------------------

@main.command("strands")
@click.argument("file")
@format_option
def cmd_strands(file: str, fmt: str) -> None:
    """List the strands (zig-zag paths) of the model."""
    model = _load(file)
    all_strands = strands_of(model)
    doc = {"command": "strands",
           "strands": [{"source": s.start_label, "target": s.end_label,
                        "arrows": list(s.arrows)} for s in all_strands]}
    _emit(doc, fmt, lambda: [
        f"{s.start_label} -> {s.end_label}: arrows {list(s.arrows)}"
        for s in all_strands])


@main.command("labels")
@click.argument("file")
@click.option("--target", "use_target", is_flag=True,
              help="Print target labels instead of source labels.")
@format_option
def cmd_labels(file: str, use_target: bool, fmt: str) -> None:
    """Print the source (or target) label of every quiver vertex."""
    model = _load(file)
    table = target_labels(model) if use_target else source_labels(model)
    kind = "target" if use_target else "source"
    doc = {"command": "labels", "kind": kind,
           "labels": {str(v): sorted(lab) for v, lab in sorted(table.items())}}
    _emit(doc, fmt, lambda: [f"{v}: {sorted(lab)}" for v, lab in sorted(table.items())])


@main.command("check")
@click.argument("file")
@format_option
def cmd_check(file: str, fmt: str) -> None:
    """Check strand consistency; exit 0 iff the model is consistent."""
    model = _load(file)
    report = check_postnikov(model)
    doc = {"command": "check", "consistent": report.passed,
           "b1_pass": report.b1_pass, "b2_pass": report.b2_pass,
           "closed_loop_arrows": list(report.closed_loop_arrows),
           "b1_witness": list(report.b1_witness) if report.b1_witness else None,
           "b2_witness": list(report.b2_witness) if report.b2_witness else None}
    _emit(doc, fmt, lambda: [
        f"b1 (no double crossing): {'pass' if report.b1_pass else 'FAIL'}",
        f"b2 (opposite orders): {'pass' if report.b2_pass else 'FAIL'}",
        f"closed loops: {list(report.closed_loop_arrows) or 'none'}",
        f"consistent: {report.passed}"])
    if not report.passed:
        sys.exit(1)


# ---------------------------------------------------------------------------
# Matching commands
# ---------------------------------------------------------------------------

@main.command("matchings")
@click.argument("file")
@click.option("--boundary", "boundary", default=None,
              help="Restrict to matchings with this boundary value, e.g. 1,3,5.")
@format_option
def cmd_matchings(file: str, boundary: Optional[str], fmt: str) -> None:
    """Enumerate perfect matchings as sorted arrow-id arrays."""
    model = _load(file)
    if boundary is None:
        pool = enumerate_matchings(model)
    else:
        pool = matchings_with_boundary(model, _parse_ints(boundary, "boundary"))
    arrays = sorted(_serialize_matching(mu) for mu in pool)
    doc = {"command": "matchings", "count": len(arrays), "matchings": arrays}
    _emit(doc, fmt, lambda: [str(a) for a in arrays] + [f"count: {len(arrays)}"])


@main.command("positroid")
@click.argument("file")
@format_option
def cmd_positroid(file: str, fmt: str) -> None:
    """List the boundary values of perfect matchings."""
    model = _load(file)
    subsets = sorted(sorted(I) for I in positroid(model))
    doc = {"command": "positroid", "count": len(subsets), "subsets": subsets}
    _emit(doc, fmt, lambda: [str(s) for s in subsets] + [f"count: {len(subsets)}"])


@main.command("extremes")
@click.argument("file")
@click.option("--boundary", "boundary", required=True,
              help="Boundary value, e.g. 1,3,5.")
@format_option
def cmd_extremes(file: str, boundary: str, fmt: str) -> None:
    """The flip-minimal and flip-maximal matchings with a given boundary."""
    model = _load(file)
    I = _parse_ints(boundary, "boundary")
    try:
        lo, hi = extreme_matchings(model, I)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    doc = {"command": "extremes", "boundary": sorted(set(I)),
           "minimal": _serialize_matching(lo), "maximal": _serialize_matching(hi)}
    _emit(doc, fmt, lambda: [f"minimal: {_serialize_matching(lo)}",
                             f"maximal: {_serialize_matching(hi)}"])


# ---------------------------------------------------------------------------
# Lattice commands
# ---------------------------------------------------------------------------

@main.command("lattice")
@click.argument("file")
@click.option("--check-ensemble", "check_ensemble", is_flag=True,
              help="Also verify exactness of the cluster-ensemble sequence.")
@format_option
def cmd_lattice(file: str, check_ensemble: bool, fmt: str) -> None:
    """Rank and invariant factors of the matching-lattice isomorphism."""
    model = _load(file)
    basis = lattice_basis(model)
    factors = eta_invariant_factors(model)
    unimodular = is_eta_unimodular(model)
    doc = {"command": "lattice", "rank": len(basis),
           "eta_invariant_factors": factors, "eta_unimodular": unimodular}
    lines = [f"lattice rank: {len(basis)}",
             f"invariant factors of the vertex-lattice map: {factors}",
             f"unimodular: {unimodular}"]
    failed = not unimodular
    if check_ensemble:
        report = check_cluster_ensemble(model)
        doc["ensemble"] = {"passed": report.passed, "witnesses": report.witnesses}
        lines.append(f"cluster ensemble exact: {report.passed}")
        lines.extend(f"  witness: {w}" for w in report.witnesses)
        failed = failed or not report.passed
    _emit(doc, fmt, lambda: lines)
    if failed:
        sys.exit(1)


@main.command("ms-matchings")
@click.argument("file")
@format_option
def cmd_ms_matchings(file: str, fmt: str) -> None:
    """The distinguished matching of each vertex, via downstream wedges."""
    model = _load(file)
    table = {v.id: _serialize_matching(muller_speyer_matching(model, v.id))
             for v in model.vertices}
    doc = {"command": "ms-matchings",
           "matchings": {str(v): arr for v, arr in sorted(table.items())}}
    _emit(doc, fmt, lambda: [f"{v}: {arr}" for v, arr in sorted(table.items())])


# ---------------------------------------------------------------------------
# Wedge / weight commands
# ---------------------------------------------------------------------------

@main.command("wedge")
@click.argument("file")
@click.option("--arrow", "arrow", type=int, required=True)
@format_option
def cmd_wedge(file: str, arrow: int, fmt: str) -> None:
    """Vertices in the downstream wedge of an arrow."""
    model = _load(file)
    try:
        wedge = downstream_wedge(model, arrow)
    except (KeyError, ValueError) as exc:
        raise click.ClickException(str(exc))
    members = sorted(wedge.members)
    doc = {"command": "wedge", "arrow": arrow, "members": members}
    _emit(doc, fmt, lambda: [f"arrow {arrow}: {members}"])


@main.command("kclass")
@click.argument("file")
@click.option("--matching", "matching", required=True,
              help="Matching as comma-separated arrow ids.")
@format_option
def cmd_kclass(file: str, matching: str, fmt: str) -> None:
    """The class of the matching module in the vertex lattice."""
    model = _load(file)
    mu = _matching_from_option(model, matching)
    cls = kclass_of_matching(model, mu)
    doc = {"command": "kclass",
           "coefficients": {str(v): c for v, c in cls.coefficients}}
    _emit(doc, fmt, lambda: [
        "{" + ",".join(f"{v}:{c}" for v, c in cls.coefficients) + "}"])


@main.command("verify-msmatch")
@click.argument("file")
@format_option
def cmd_verify_msmatch(file: str, fmt: str) -> None:
    """Three-way equality of the distinguished matchings at every vertex."""
    model = _load(file)
    ok, witness = _three_way_msmatch(model)
    doc = {"command": "verify-msmatch", "passed": ok, "witness": witness}
    _emit(doc, fmt, lambda: [f"three-way equality: {'pass' if ok else 'FAIL'}"]
          + ([f"witness: {witness}"] if witness else []))
    if not ok:
        sys.exit(1)


def _three_way_msmatch(model: DimerModel) -> Tuple[bool, Optional[str]]:
    inverse = eta_inverse_basis(model)
    for v in model.vertices:
        wedge_mu = muller_speyer_matching(model, v.id).arrow_set
        inv_mu = frozenset(a for a, x in inverse[v.id].values if x == 1)
        oracle_mu = projective_matching_oracle(model, v.id).arrow_set
        if not (wedge_mu == inv_mu == oracle_mu):
            return False, (f"vertex {v.id}: wedge {sorted(wedge_mu)}, "
                           f"inverse {sorted(inv_mu)}, oracle {sorted(oracle_mu)}")
    return True, None


# ---------------------------------------------------------------------------
# Partition-function commands
# ---------------------------------------------------------------------------

@main.command("ms")
@click.argument("file")
@click.option("--subset", "subset", required=True, help="k-subset, e.g. 1,3,5.")
@click.option("--black", "black", is_flag=True,
              help="Use the black-boundary convention.")
@format_option
def cmd_ms(file: str, subset: str, black: bool, fmt: str) -> None:
    """The boundary-weight partition function for a k-subset."""
    model = _load(file)
    I = _parse_ints(subset, "subset")
    try:
        poly = (ms_formula_black if black else ms_formula_white)(model, I)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    doc = {"command": "ms", "subset": sorted(set(I)), "polynomial": _poly_doc(poly)}
    _emit(doc, fmt, lambda: [poly.pretty()])


@main.command("twist-expr")
@click.argument("file")
@click.option("--subset", "subset", required=True, help="k-subset, e.g. 1,3,5.")
@format_option
def cmd_twist_expr(file: str, subset: str, fmt: str) -> None:
    """The twist partition function for a k-subset in the positroid."""
    model = _load(file)
    I = _parse_ints(subset, "subset")
    try:
        poly = musp_twist_expression(model, I)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    doc = {"command": "twist-expr", "subset": sorted(set(I)),
           "polynomial": _poly_doc(poly)}
    _emit(doc, fmt, lambda: [poly.pretty()])


@main.command("measure")
@click.argument("file")
@click.option("--weights", "weights_arg", required=True,
              help="Either 'unit' or a JSON file mapping arrow id to a "
                   "positive rational like \"3/7\".")
@click.option("--check-plucker", "check", is_flag=True,
              help="Verify every three-term Plücker relation.")
@format_option
def cmd_measure(file: str, weights_arg: str, check: bool, fmt: str) -> None:
    """Exact boundary measurement for the given arrow weights."""
    model = _load(file)
    if weights_arg == "unit":
        w = unit_weights(model)
    else:
        try:
            with open(weights_arg, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
            w = {int(a): Fraction(str(x)) for a, x in raw.items()}
        except (OSError, ValueError, json.JSONDecodeError) as exc:
            raise click.ClickException(f"cannot read weights: {exc}")
    try:
        vec = boundary_measurement(model, w)
    except (KeyError, ValueError) as exc:
        raise click.ClickException(f"bad weights: {exc}")
    doc = {"command": "measure",
           "values": {",".join(map(str, I)): str(x) for I, x in vec.values}}
    lines = [f"{list(I)}: {x}" for I, x in vec.values]
    failed = False
    if check:
        report = check_plucker_relations(vec, vec.k, vec.n)
        doc["plucker"] = {"checked": report.checked, "passed": report.passed,
                          "failures": [[list(S), list(q)] for S, q in report.failures]}
        lines.append(f"plucker relations checked: {report.checked}, "
                     f"passed: {report.passed}")
        failed = not report.passed
    _emit(doc, fmt, lambda: lines)
    if failed:
        sys.exit(1)


# ---------------------------------------------------------------------------
# Resolution commands
# ---------------------------------------------------------------------------

@main.command("resolution")
@click.argument("file")
@click.option("--matching", "matching", required=True,
              help="Matching as comma-separated arrow ids.")
@click.option("--dmax", "dmax", type=int, default=None,
              help="Largest degree to check (default: saturation + 1).")
@format_option
def cmd_resolution(file: str, matching: str, dmax: Optional[int], fmt: str) -> None:
    """Exactness of all graded resolution pieces for a matching."""
    model = _load(file)
    mu = _matching_from_option(model, matching)
    try:
        report = check_resolution(model, mu, dmax)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    doc = {"command": "resolution", "d_max": report.d_max,
           "pieces_checked": report.pieces_checked,
           "exact": report.passed,
           "failures": [list(f) for f in report.failures],
           "euler_failures": report.euler_failures}
    _emit(doc, fmt, lambda: [
        f"d_max: {report.d_max}",
        f"pieces checked: {report.pieces_checked}",
        f"exact: {report.passed}"]
        + [f"  inexact at (vertex, degree) = {f}" for f in report.failures]
        + [f"  degree series off at vertex {v}" for v in report.euler_failures])
    if not report.passed:
        sys.exit(1)


@main.command("rotate")
@click.argument("file")
@click.option("--matching", "matching", required=True,
              help="Matching as comma-separated arrow ids.")
@click.option("--vertex", "vertex", type=int, required=True)
@click.option("--degree", "degree", type=int, required=True)
@format_option
def cmd_rotate(file: str, matching: str, vertex: int, degree: int, fmt: str) -> None:
    """Rotate a matching one degree step toward a vertex."""
    model = _load(file)
    mu = _matching_from_option(model, matching)
    try:
        nu = rotate_matching(model, mu, vertex, degree)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    doc = {"command": "rotate", "matching": _serialize_matching(nu)}
    _emit(doc, fmt, lambda: [str(_serialize_matching(nu))])


# ---------------------------------------------------------------------------
# Verification suite
# ---------------------------------------------------------------------------

def _check_validate(model: DimerModel) -> Tuple[bool, Optional[str]]:
    report = validate(model)
    return report.passed, (None if report.passed else str(report.failures()))


def _check_consistency(model: DimerModel) -> Tuple[bool, Optional[str]]:
    report = check_postnikov(model)
    if report.passed:
        return True, None
    return False, (f"b1={report.b1_pass}, b2={report.b2_pass}, "
                   f"closed loops={list(report.closed_loop_arrows)}")


def _check_boundary_sizes(model: DimerModel) -> Tuple[bool, Optional[str]]:
    k, _ = type_of(model)
    for mu in enumerate_matchings(model):
        I = boundary_value(model, mu)
        if len(I) != k:
            return False, f"matching {_serialize_matching(mu)} has |boundary| {len(I)} != {k}"
    return True, None


def _check_eta_unimodular(model: DimerModel) -> Tuple[bool, Optional[str]]:
    if is_eta_unimodular(model):
        return True, None
    return False, f"invariant factors {eta_invariant_factors(model)}"


def _check_ensemble(model: DimerModel) -> Tuple[bool, Optional[str]]:
    report = check_cluster_ensemble(model)
    return report.passed, (None if report.passed else "; ".join(report.witnesses))


def _check_msmatch(model: DimerModel) -> Tuple[bool, Optional[str]]:
    return _three_way_msmatch(model)


def _check_wedge_labels(model: DimerModel) -> Tuple[bool, Optional[str]]:
    src = source_labels(model)
    tgt = target_labels(model)
    for v in model.vertices:
        if boundary_value(model, muller_speyer_matching(model, v.id)) != src[v.id]:
            return False, f"downstream boundary at vertex {v.id} differs from source label"
        if boundary_value(model, upstream_matching(model, v.id)) != tgt[v.id]:
            return False, f"upstream boundary at vertex {v.id} differs from target label"
    return True, None


def _check_weight_formula(model: DimerModel) -> Tuple[bool, Optional[str]]:
    std = standardise(model, WHITE)
    table = weight_table(std, WHITE)
    for mu in enumerate_matchings(std):
        wt, wtd = weights(std, mu, WHITE)
        alt: Dict[int, int] = {}
        for a in std.internal_arrows:
            if a.id in mu.arrow_set:
                for v, e in table[a.id].as_dict().items():
                    alt[v] = alt.get(v, 0) + e
        if {v: e for v, e in wt.as_dict().items() if e} != {v: e for v, e in alt.items() if e}:
            return False, f"weight formulas disagree on {_serialize_matching(mu)}"
        # [N_mu] = wtD + sum over boundary labels of p_head - wt(mu).
        expect = {v: -e for v, e in wt.as_dict().items()}
        for v, e in wtd.as_dict().items():
            expect[v] = expect.get(v, 0) + e
        for i in boundary_value(std, mu):
            h = std.boundary_arrow_with_label(i).head
            expect[h] = expect.get(h, 0) + 1
        cls = kclass_of_matching(std, mu).as_dict()
        if {v: e for v, e in expect.items() if e} != {v: e for v, e in cls.items() if e}:
            return False, f"class identity fails on {_serialize_matching(mu)}"
    return True, None


def _check_ms_equality(model: DimerModel) -> Tuple[bool, Optional[str]]:
    std = standardise(model, WHITE)
    k, n = type_of(std)
    for I in combinations(range(1, n + 1), k):
        if ms_formula_white(std, I) != ms_formula_white_v2(std, I):
            return False, f"formulas differ at {list(I)}"
    return True, None


def _check_duality(model: DimerModel) -> Tuple[bool, Optional[str]]:
    std = standardise(model, WHITE)
    op = opposite(std)
    k, n = type_of(std)
    for I in combinations(range(1, n + 1), k):
        comp = [x for x in range(1, n + 1) if x not in I]
        if ms_formula_white(std, I) != ms_formula_black(op, comp):
            return False, f"duality fails at {list(I)}"
    return True, None


def _check_resolution_all(model: DimerModel) -> Tuple[bool, Optional[str]]:
    for mu in enumerate_matchings(model):
        report = check_resolution(model, mu)
        if not report.passed:
            return False, (f"matching {_serialize_matching(mu)}: "
                           f"failures {report.failures}, euler {report.euler_failures}")
    return True, None


def _check_rotation(model: DimerModel) -> Tuple[bool, Optional[str]]:
    for mu in enumerate_matchings(model):
        sat = saturation_degree(model, mu)
        for v in model.vertices:
            for d in range(1, sat + 1):
                nu = rotate_matching(model, mu, v.id, d)
                if (reachable_set(model, mu, v.id, d).members
                        != reachable_set(model, nu, v.id, d - 1).members):
                    return False, (f"rotation identity fails at matching "
                                   f"{_serialize_matching(mu)}, vertex {v.id}, degree {d}")
    return True, None


def _check_plucker_draws(model: DimerModel, seed: int) -> Tuple[bool, Optional[str]]:
    k, n = type_of(model)
    rng = random.Random(seed)
    support_expected = positroid(model)
    gale = frozenset(frozenset(J) for J in combinations(range(1, n + 1), k)
                     if positroid_contains_necklace_test(model, J))
    if gale != support_expected:
        return False, "necklace Gale-order test disagrees with enumeration"
    for draw in range(3):
        w = {a.id: Fraction(rng.randint(1, 20), rng.randint(1, 20))
             for a in model.arrows}
        vec = boundary_measurement(model, w)
        report = check_plucker_relations(vec, k, n)
        if not report.passed:
            return False, f"draw {draw}: {len(report.failures)} relation failures"
        support = frozenset(frozenset(I) for I, x in vec.values if x != 0)
        if support != support_expected:
            return False, f"draw {draw}: support differs from the positroid"
    return True, None


VERIFY_CHECKS: List[Tuple[str, Callable[..., Tuple[bool, Optional[str]]]]] = [
    ("validate", _check_validate),
    ("check_postnikov", _check_consistency),
    ("boundary_size_sweep", _check_boundary_sizes),
    ("eta_unimodular", _check_eta_unimodular),
    ("cluster_ensemble", _check_ensemble),
    ("msmatch_three_way", _check_msmatch),
    ("wedge_boundary_labels", _check_wedge_labels),
    ("weight_double_formula", _check_weight_formula),
    ("ms_formula_equality", _check_ms_equality),
    ("black_white_duality", _check_duality),
    ("resolution_exactness", _check_resolution_all),
    ("rotation_identities", _check_rotation),
    ("plucker_relation_draws", _check_plucker_draws),
]


@main.command("verify")
@click.argument("file")
@click.option("--seed", "seed", type=int, default=0, show_default=True,
              help="Seed for the randomized weight draws.")
@format_option
def cmd_verify(file: str, seed: int, fmt: str) -> None:
    """Run the full ordered verification suite; exit 0 iff all checks pass."""
    try:
        model = _resolve_model(file)
    except (StructuralError, click.ClickException) as exc:
        click.echo(json.dumps({"schema": SCHEMA, "command": "verify",
                               "error": str(exc)}, indent=1))
        sys.exit(2)
    results = []
    for name, fn in VERIFY_CHECKS:
        start = time.monotonic()
        try:
            ok, witness = (fn(model, seed) if name == "plucker_relation_draws"
                           else fn(model))
        except Exception as exc:  # a failed precondition is a failed check
            ok, witness = False, f"{type(exc).__name__}: {exc}"
        results.append({"name": name, "passed": ok, "witness": witness,
                        "seconds": round(time.monotonic() - start, 3)})
    passed = all(r["passed"] for r in results)
    doc = {"command": "verify", "seed": seed, "passed": passed, "checks": results}
    _emit(doc, fmt, lambda: [
        *(f"{'PASS' if r['passed'] else 'FAIL'} {r['name']} ({r['seconds']}s)"
          + (f": {r['witness']}" if r["witness"] else "")
          for r in results),
        f"overall: {'pass' if passed else 'FAIL'}"])
    if not passed:
        sys.exit(1)


@main.command("fixtures")
@click.argument("outdir", required=False)
def cmd_fixtures(outdir: Optional[str]) -> None:
    """Write the bundled fixtures as JSON model files."""
    outdir = outdir or os.environ.get("DIMER_FIXTURES") or "fixtures"
    try:
        os.makedirs(outdir, exist_ok=True)
    except OSError as exc:
        raise click.ClickException(f"cannot create {outdir}: {exc}")
    for name, builder in FIXTURE_BUILDERS.items():
        path = os.path.join(outdir, f"{name}.json")
        model_lib.save(builder(), path)
        click.echo(f"wrote {path}")


if __name__ == "__main__":
    main()
