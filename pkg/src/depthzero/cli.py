"""Command line front end.

Every command prints a report (JSON or a plain table) and exits with

* 0 when no certificate failed,
* 1 when some certificate failed,
* 2 when nothing failed but some results are not computed,
* 64 on malformed input (bad flags, unreadable or invalid JSON files).
"""

from __future__ import annotations

import json
import sys
from importlib import resources
from typing import Any, Iterable

import click
import jsonschema

from . import __version__
from .affine import (
    ALCOVE_NOTE,
    AffineRootSystem,
    apartment_embedding,
    extended_weyl_inclusion,
    maximal_facets,
    parse_form_spec,
)
from .centralizer import (
    KacPoint,
    alcove_points,
    component_group,
    kac_point,
    pseudo_levi,
)
from .fdeg import (
    fdeg_ratio_exponent,
    iwahori_volume_exponent,
    order_polynomial,
    order_polynomial_of,
    pprime_ratio,
    tame_adjoint_conductor,
)
from .rootcore import (
    CartanType,
    FAMILIES,
    all_types,
    build_root_datum,
    coxeter_number,
    exponents_from_heights,
    fundamental_group,
    highest_root,
)
from .verify import (
    _jsonable,
    atlas_report,
    lemma_suite,
    unramified_forms,
    verify_highest_root_indep,
    verify_pinning_theorem,
)

EX_FAILED, EX_DEGRADED, EX_DATAERR = 1, 2, 64

CONVENTIONS = {
    "numbering": "Bourbaki; affine node 0 is -theta + 1",
    "cartan": "C[i][j] = <alpha_i, alpha_j^vee>",
    "roots": "simple-root coordinates",
    "coroots": "simple-coroot coordinates",
    "coweights": "fundamental-coweight coordinates",
    "alcove": ALCOVE_NOTE,
}


class InputError(click.ClickException):
    exit_code = EX_DATAERR


# --------------------------------------------------------------------------
# input


def _schema(name: str) -> dict:
    return json.loads(resources.files("depthzero").joinpath("schemas", name).read_text())


def load_json(path: str, schema: str) -> dict:
    """Read and validate a JSON input file; errors carry file and location."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}")
    try:
        jsonschema.validate(data, _schema(schema))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"{path}: at {where}: {exc.message}")
    return data


def _ctype(family: str | None, rank: int | None, data: dict | None = None) -> CartanType:
    family = family or (data or {}).get("family")
    rank = rank or (data or {}).get("rank")
    if family is None or rank is None:
        raise InputError("a family and a rank are required")
    try:
        return CartanType(family.upper(), int(rank))
    except ValueError as exc:
        raise InputError(str(exc))


def _points(d, kac_file: str | None, point: str | None, max_order: int | None, data: dict | None) -> list[KacPoint]:
    try:
        if data is not None:
            out = []
            for i, item in enumerate(data["points"]):
                try:
                    if "kac" in item:
                        out.append(kac_point(item["kac"], d))
                    else:
                        if len(item["coweight"]) != d.rank:
                            raise ValueError(f"coweight needs {d.rank} entries")
                        out.append(KacPoint(tuple(item["coweight"]), item["order"]))
                except ValueError as exc:
                    raise InputError(f"{kac_file}: at points/{i}: {exc}")
            return out
        if point is not None:
            return [kac_point([int(v) for v in point.split(",")], d)]
        if max_order is not None:
            return [p for m in range(1, max_order + 1) for p in alcove_points(d, m, exact_order=True)]
    except ValueError as exc:
        raise InputError(str(exc))
    raise InputError("give --kac FILE, --point S0,...,SR or --max-order M")


def _scope(families: Iterable[str], rank: int | None, max_rank: int) -> list[CartanType]:
    fams = "".join(f.upper() for f in families) or FAMILIES
    bad = [f for f in fams if f not in FAMILIES]
    if bad:
        raise InputError(f"unknown families {bad}")
    out = [t for t in all_types(max_rank, fams) if rank is None or t.rank == rank]
    if not out:
        raise InputError("no types in scope after filtering")
    return out


# --------------------------------------------------------------------------
# output


def _status(verdicts: Iterable[str]) -> int:
    vs = list(verdicts)
    if "failed" in vs:
        return EX_FAILED
    if "not-computed" in vs:
        return EX_DEGRADED
    return 0


def _cell(v: Any) -> str:
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(_cell(x) for x in v) + ")"
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return "" if v is None else str(v)


def render_table(rows: list[dict], columns: list[str]) -> str:
    cells = [columns] + [[_cell(r.get(c)) for c in columns] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    lines = ["  ".join(s.ljust(w) for s, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def emit(ctx: click.Context, command: str, rows: list[dict], columns: list[str], status: int, extra: dict | None = None):
    cfg = ctx.obj
    report = {
        "engine": "depthzero",
        "version": __version__,
        "command": command,
        "conventions": CONVENTIONS,
        "config": {k: v for k, v in sorted(cfg.items()) if k != "output"},
        "rows": _jsonable(rows),
        "summary": {"exit_status": status, "rows": len(rows), **(extra or {})},
    }
    if cfg["format"] == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = f"depthzero {__version__}  {command}\n" + render_table(rows, columns)
        text += f"exit status {status}\n"
    if cfg["output"]:
        with open(cfg["output"], "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    ctx.exit(status)


# --------------------------------------------------------------------------
# commands


@click.group()
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False, writable=True), default=None, help="Write the report here.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for sampled checks.")
@click.option("--max-weyl", type=click.IntRange(min=1), default=60_000, show_default=True, help="Weyl enumeration guard.")
@click.version_option(__version__)
@click.pass_context
def cli(ctx, fmt, output, seed, max_weyl):
    """Depth-zero root-datum computations and certificates."""
    ctx.obj = {"format": fmt, "output": output, "seed": seed, "max_weyl": max_weyl}


_family = click.option("--family", type=str, help="Cartan family letter.")
_rank = click.option("--rank", type=click.IntRange(min=1), help="Rank.")
_isogeny = click.option(
    "--isogeny", type=click.Choice(["adjoint", "simply-connected"]), default=None, help="Isogeny type (default adjoint)."
)


@cli.command()
@_family
@_rank
@_isogeny
@click.pass_context
def build(ctx, family, rank, isogeny):
    """Root datum summary."""
    ct = _ctype(family, rank)
    d = build_root_datum(ct, isogeny or "adjoint")
    ctx.obj.update(family=ct.family, rank=ct.rank, isogeny=d.isogeny)
    theta, marks = highest_root(d)
    fg = fundamental_group(d)
    row = {
        "type": str(ct),
        "isogeny": d.isogeny,
        "cartan": d.cartan,
        "positive_roots": len(d.positive_roots),
        "dimension": len(d.roots) + d.rank,
        "highest_root": theta,
        "marks": [marks[i] for i in range(d.rank)],
        "coxeter_number": coxeter_number(d),
        "exponents": exponents_from_heights(d),
        "weyl_order": d.weyl_order(),
        "fundamental_group": fg.invariant_factors,
    }
    emit(ctx, "build", [row], list(row), 0)


@cli.command()
@_family
@_rank
@click.option("--twist", type=click.IntRange(1, 3), default=1, show_default=True, help="Diagram automorphism order.")
@click.option("--inner", type=click.IntRange(min=0), default=0, show_default=True, help="Label of the inner twist in Omega.")
@click.option("--form", "form_file", type=str, default=None, help="JSON form description.")
@click.pass_context
def atlas(ctx, family, rank, twist, inner, form_file):
    """Maximal Frobenius-stable facets, center torsion and stabilizers."""
    if form_file:
        data = load_json(form_file, "form.schema.json")
        text = json.dumps(data)
    else:
        ct = _ctype(family, rank)
        text = json.dumps({"family": ct.family, "rank": ct.rank, "twist": twist, "inner_twist": inner})
    try:
        a, form, _ = parse_form_spec(text)
    except (ValueError, StopIteration) as exc:
        raise InputError(f"invalid form: {exc}")
    ctx.obj.update(form=form.describe())
    r = atlas_report(f"{a.base.cartan_type.family}{a.rank}", form)
    rows = [
        {
            "removed": row.removed,
            "delta_F": row.delta_F,
            "shape": row.shape,
            "center_torsion": row.center_torsion,
            "omega": row.omega_order,
            "omega_frob": row.omega_frob_order,
            "flagged": row.flagged,
            "vertex": row.vertex,
        }
        for row in r.rows
    ]
    status = EX_FAILED if r.matches is False else 0
    emit(ctx, "atlas", rows, list(rows[0]) if rows else ["removed"], status,
         {"flagged": r.flagged, "expected": r.expected, "matches": r.matches})


def _point_options(f):
    for opt in reversed([
        _family,
        _rank,
        _isogeny,
        click.option("--kac", "kac_file", type=str, default=None, help="JSON file of torsion points."),
        click.option("--point", type=str, default=None, help="Kac coordinates s0,...,sr."),
        click.option("--max-order", type=click.IntRange(min=1), default=None, help="All alcove points of order <= M."),
    ]):
        f = opt(f)
    return f


def _setup_points(ctx, family, rank, isogeny, kac_file, point, max_order):
    data = load_json(kac_file, "kac_points.schema.json") if kac_file else None
    ct = _ctype(family, rank, data)
    iso = isogeny or (data or {}).get("isogeny") or "adjoint"
    d = build_root_datum(ct, iso)
    ctx.obj.update(family=ct.family, rank=ct.rank, isogeny=iso, point=point, max_order=max_order, kac=kac_file)
    return d, _points(d, kac_file, point, max_order, data)


@cli.command("pseudo-levi")
@_point_options
@click.pass_context
def pseudo_levi_cmd(ctx, family, rank, isogeny, kac_file, point, max_order):
    """Root system of the connected centralizer of each point."""
    d, pts = _setup_points(ctx, family, rank, isogeny, kac_file, point, max_order)
    rows = []
    for s in pts:
        H = pseudo_levi(s, d)
        rows.append({
            "coweight": s.numerator,
            "order": s.order,
            "kac": H.alcove.kac,
            "shape": H.shape,
            "roots": len(H.roots_H),
            "omega_H": H.omega_H.invariant_factors,
        })
    emit(ctx, "pseudo-levi", rows, ["coweight", "order", "kac", "shape", "roots", "omega_H"], 0)


@cli.command("component-group")
@_point_options
@click.pass_context
def component_group_cmd(ctx, family, rank, isogeny, kac_file, point, max_order):
    """Component group of the centralizer of each point."""
    d, pts = _setup_points(ctx, family, rank, isogeny, kac_file, point, max_order)
    rows = []
    for s in pts:
        A = component_group(s, d, max_weyl=ctx.obj["max_weyl"])
        rows.append({
            "coweight": s.numerator,
            "order": s.order,
            "status": A.status,
            "confidence": A.confidence,
            "group_order": A.order,
            "labels": A.labels,
            "stabilizer_order": A.stabilizer_order,
            "weyl_H_order": A.weyl_H_order,
        })
    status = EX_DEGRADED if any(r["status"] != "computed" for r in rows) else 0
    emit(ctx, "component-group", rows, ["coweight", "order", "status", "confidence", "group_order", "stabilizer_order"], status)


@cli.command()
@_point_options
@click.pass_context
def fdeg(ctx, family, rank, isogeny, kac_file, point, max_order):
    """Formal-degree and conductor exponents for the centralizer of each point."""
    d, pts = _setup_points(ctx, family, rank, isogeny, kac_file, point, max_order)
    Gq = order_polynomial(d)
    rows = []
    for s in pts:
        H = pseudo_levi(s, d)
        r = fdeg_ratio_exponent(d, H)
        cond = tame_adjoint_conductor(d, H)
        A = component_group(s, d, max_weyl=ctx.obj["max_weyl"])
        c = A.order if A.order is not None else 1
        ratio = pprime_ratio(Gq, order_polynomial_of(H), c, r.exponent)
        rows.append({
            "coweight": s.numerator,
            "order": s.order,
            "shape": H.shape,
            "dim_G": r.dim_G,
            "dim_H": r.dim_H,
            "N_G": r.N_G,
            "N_H": r.N_H,
            "ratio_exponent": r.exponent,
            "routes_agree": r.routes_agree,
            "conductor": cond.conductor,
            "gamma_exponent": cond.gamma_exponent,
            "iwahori_G": iwahori_volume_exponent(d),
            "component_order": A.order,
            "pprime_ratio": str(ratio.reduced()),
            "q_power_certified": ratio.q_power_certified,
            "label": cond.label,
        })
    failed = any(not (r["routes_agree"] and r["q_power_certified"]) for r in rows)
    degraded = any(r["component_order"] is None for r in rows)
    status = EX_FAILED if failed else (EX_DEGRADED if degraded else 0)
    emit(ctx, "fdeg", rows, ["coweight", "order", "shape", "dim_G", "dim_H", "ratio_exponent", "conductor", "pprime_ratio"], status)


# -- verify ------------------------------------------------------------------


@cli.group()
def verify():
    """Certificates for the lemma suite, the pinning theorem and the subsystem checks."""


_families = click.option("--family", "families", multiple=True, help="Restrict to these families (repeatable).")
_max_rank = click.option("--max-rank", type=click.IntRange(min=1), default=8, show_default=True)


def _cert_rows(certs) -> list[dict]:
    rows = [{"claim": c.claim, "scope": c.scope, "verdict": c.verdict} for c in certs]
    return rows


@verify.command()
@_families
@_rank
@_max_rank
@click.pass_context
def lemmas(ctx, families, rank, max_rank):
    """Sign lemmas for Tits lifts and the inversion-set combinatorics."""
    types = _scope(families, rank, max_rank)
    ctx.obj.update(families=sorted(set(t.family for t in types)), max_rank=max_rank, rank=rank)
    certs = []
    for t in types:
        for c in lemma_suite(t):
            if c.claim == "highest_root_indep":
                c = verify_highest_root_indep(t, limit=min(ctx.obj["max_weyl"], 5_000), seed=ctx.obj["seed"])
            certs.append(c)
    emit(ctx, "verify lemmas", _cert_rows(certs), ["claim", "scope", "verdict"], _status(c.verdict for c in certs))


@verify.command()
@_families
@_rank
@_max_rank
@click.pass_context
def pinning(ctx, families, rank, max_rank):
    """Lifts of Omega_{G,F}^Frob preserve a pinning, over all unramified forms and maximal facets."""
    types = _scope(families, rank, max_rank)
    ctx.obj.update(families=sorted(set(t.family for t in types)), max_rank=max_rank, rank=rank)
    certs = []
    for t in types:
        a = AffineRootSystem(build_root_datum(t))
        for form in unramified_forms(a):
            for F in maximal_facets(form):
                certs.append(verify_pinning_theorem(form, F))
    emit(ctx, "verify pinning", _cert_rows(certs), ["claim", "scope", "verdict"], _status(c.verdict for c in certs))


def _subsystem_jobs(types, max_order):
    for t in types:
        for iso in ("simply-connected", "adjoint"):
            G = build_root_datum(t, iso)
            for m in range(1, max_order + 1):
                for s in alcove_points(G, m, exact_order=True):
                    H = pseudo_levi(s, G)
                    yield G, s, H, H.roots_H


@verify.command()
@_families
@_rank
@click.option("--max-rank", type=click.IntRange(min=1), default=6, show_default=True)
@click.option("--max-order", type=click.IntRange(min=1), default=4, show_default=True)
@click.pass_context
def kottwitz(ctx, families, rank, max_rank, max_order):
    """Omega_H -> Omega_G compatibility with the extended affine Weyl inclusion."""
    types = _scope(families, rank, max_rank)
    ctx.obj.update(families=sorted(set(t.family for t in types)), max_rank=max_rank, rank=rank, max_order=max_order)
    rows = []
    cache: dict = {}
    for G, s, H, roots in _subsystem_jobs(types, max_order):
        key = (str(G.cartan_type), G.isogeny)
        a = cache.setdefault(key, AffineRootSystem(G))
        rep = extended_weyl_inclusion(roots, a, seed=ctx.obj["seed"])
        ok = rep.commutes and rep.surjective
        rows.append({
            "claim": "kottwitz_square",
            "scope": {"type": key[0], "isogeny": key[1], "point": [list(s.numerator), s.order], "shape": H.shape},
            "omega_H": rep.omega_H,
            "omega_G": rep.omega_G,
            "verdict": "verified" if ok else "failed",
        })
    emit(ctx, "verify kottwitz", rows, ["claim", "scope", "omega_H", "omega_G", "verdict"], _status(r["verdict"] for r in rows))


@verify.command()
@_families
@_rank
@click.option("--max-rank", type=click.IntRange(min=1), default=4, show_default=True)
@click.option("--max-order", type=click.IntRange(min=1), default=4, show_default=True)
@click.pass_context
def apartment(ctx, families, rank, max_rank, max_order):
    """Affine roots of H inside those of G for the generated subsystems."""
    types = _scope(families, rank, max_rank)
    ctx.obj.update(families=sorted(set(t.family for t in types)), max_rank=max_rank, rank=rank, max_order=max_order)
    rows = []
    cache: dict = {}
    for G, s, H, roots in _subsystem_jobs(types, max_order):
        key = (str(G.cartan_type), G.isogeny)
        a = cache.setdefault(key, AffineRootSystem(G))
        emb = apartment_embedding(roots, a)
        rows.append({
            "claim": "apartment_embedding",
            "scope": {"type": key[0], "isogeny": key[1], "point": [list(s.numerator), s.order], "shape": H.shape},
            "verdict": "verified" if emb.verified else "failed",
        })
    emit(ctx, "verify apartment", rows, ["claim", "scope", "verdict"], _status(r["verdict"] for r in rows))


def main(argv: list[str] | None = None) -> int:
    """Entry point; maps usage errors to exit 64 so that 2 keeps its report meaning."""
    try:
        rv = cli.main(args=argv, prog_name="depthzero", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EX_DATAERR
    except click.exceptions.Abort:
        return EX_DATAERR
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(main())
