"""``knotforge`` command line.

Every command prints one JSON document (or CSV with ``--csv``).  Exit codes:
0 success, 1 computation error or failed check, 2 usage error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from functools import wraps

import click

from . import catalog
from . import conway as cw
from . import families as fam
from . import verify as ver
from .ascending import diagram_ascending_number, knot_ascending_bounds, minimal_ascending_number
from .builder import build_diagram
from .diagram import DiagramError, orient, twist_regions
from .rational import NotRational, bj
from .signature import (
    NotAlternating, NotReduced, determinant, matrix_oracle_signature, murasugi_lower_bound,
    traczyk_signature, white_black,
)

SCHEMA = "knotforge/1"


class ComputationFailed(Exception):
    """Raised after output was written, to force exit status 1."""


def _flat_csv(payload: dict) -> str:
    cols = [k for k, v in payload.items() if not isinstance(v, (dict, list))]
    buf = io.StringIO()
    w = csv.writer(buf, quoting=csv.QUOTE_ALL, lineterminator="\r\n")
    w.writerow(cols)
    w.writerow([payload[k] for k in cols])
    return buf.getvalue()


def emit(payload: dict, as_csv: bool = False, csv_text: str = None):
    payload = {"schema": SCHEMA, **payload}
    if as_csv:
        click.echo(csv_text if csv_text is not None else _flat_csv(payload), nl=False)
    else:
        click.echo(json.dumps(payload, indent=2, default=str))


def _computation(fn):
    """Turn domain exceptions into a JSON error document and exit status 1."""

    @wraps(fn)
    def inner(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ComputationFailed:
            sys.exit(1)
        except (cw.ConwayError, DiagramError, fam.FamilyError, NotRational, ValueError,
                KeyError) as exc:
            err = {"type": type(exc).__name__, "message": str(exc).strip("'\"")}
            span = getattr(exc, "span", None)
            if span is not None:
                err["span"] = [span.start, span.end]
            click.echo(json.dumps({"schema": SCHEMA, "error": err}, indent=2))
            sys.exit(1)

    return inner


csv_option = click.option("--csv", "as_csv", is_flag=True, help="CSV instead of JSON.")


# symbols such as "-2 1,2" start with a minus sign and must not be read as options
SYMBOL_ARGS = {"ignore_unknown_options": True}


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Conway notation, knot diagrams, signatures and ascending numbers."""


def _resolve(text: str) -> str:
    """A catalog knot name stands for its Conway symbol."""
    try:
        return catalog.lookup(text).conway
    except KeyError:
        return text


@main.command("parse", context_settings=SYMBOL_ARGS)
@click.argument("symbol")
@csv_option
@_computation
def cmd_parse(symbol, as_csv):
    """Parse SYMBOL and print its canonical form and AST."""
    ast = cw.parse(symbol)
    emit({"input": symbol, "canonical": cw.print_canonical(ast),
          "crossings": cw.crossing_count(ast), "ast": cw.to_json(ast)}, as_csv)


@main.command("build", context_settings=SYMBOL_ARGS)
@click.argument("symbol")
@click.option("--pd", "fmt", flag_value="pd", default=True, help="PD code (default).")
@click.option("--gauss", "fmt", flag_value="gauss", help="Signed Gauss code.")
@csv_option
@_computation
def cmd_build(symbol, fmt, as_csv):
    """Build the closed diagram of SYMBOL (or a catalog name)."""
    d = build_diagram(_resolve(symbol))
    out = {"symbol": symbol, "crossings": d.n, "components": d.num_components(),
           "alternating": d.is_alternating()}
    out[fmt] = [list(x) for x in d.pd_code()] if fmt == "pd" else d.gauss_code()
    emit(out, as_csv)


@main.command("invariants", context_settings=SYMBOL_ARGS)
@click.argument("symbol")
@csv_option
@_computation
def cmd_invariants(symbol, as_csv):
    """Crossings, writhe, face colours, determinant and signature."""
    d = build_diagram(_resolve(symbol))
    white, black = white_black(d)
    out = {"symbol": symbol, "crossings": d.n, "components": d.num_components(),
           "alternating": d.is_alternating(), "reduced": d.is_reduced()}
    if d.num_components() == 1:
        sigma = matrix_oracle_signature(d).sigma
        out.update(writhe=d.writhe(), W=white, B=black, determinant=determinant(d),
                   sigma=sigma, murasugi_lb=murasugi_lower_bound(sigma),
                   twist_regions=[{"len": r.length, "sign": r.sign, "kind": r.kind}
                                  for r in twist_regions(orient(d))])
    emit(out, as_csv)


@main.command("signature", context_settings=SYMBOL_ARGS)
@click.argument("symbol")
@click.option("--method", type=click.Choice(["traczyk", "oracle", "both"]), default="both",
              show_default=True)
@csv_option
@_computation
def cmd_signature(symbol, method, as_csv):
    """Signature of SYMBOL's diagram."""
    d = build_diagram(_resolve(symbol))
    values = {}
    if method in ("oracle", "both"):
        values["oracle"] = matrix_oracle_signature(d).sigma
    if method in ("traczyk", "both"):
        try:
            values["traczyk"] = traczyk_signature(d).sigma
        except (NotAlternating, NotReduced):
            if method == "traczyk":
                raise
    sigma = values.get("oracle", values.get("traczyk"))
    out = {"symbol": symbol, "sigma": sigma,
           "method": "matrix_oracle" if "oracle" in values else "traczyk",
           "murasugi_lb": murasugi_lower_bound(sigma)}
    if method == "both":
        out["traczyk"] = values.get("traczyk")
        out["agree"] = values.get("traczyk") in (None, sigma)
    emit(out, as_csv)


@main.command("ascending", context_settings=SYMBOL_ARGS)
@click.argument("symbol")
@click.option("--all-starts", is_flag=True, help="List the change count of every start.")
@click.option("--flypes/--no-flypes", default=True, show_default=True,
              help="Minimise over the flype orbit of the diagram.")
@click.option("--extra", multiple=True, help="Extra diagram (symbol) of the same knot.")
@click.option("--mirror", is_flag=True, help="Also minimise over the mirror image (amphichiral knots).")
@csv_option
@_computation
def cmd_ascending(symbol, all_starts, flypes, extra, mirror, as_csv):
    """Diagram ascending number; for a catalog name, the combined bounds."""
    try:
        rec = catalog.lookup(symbol)
    except KeyError:
        rec = None
    if rec is not None:
        extras = list(extra) + [s for _, _, s in fam.theorem_diagrams_for(rec.conway)]
        b = knot_ascending_bounds(rec, extra_diagrams=extras)
        emit({"knot": rec.name, "conway": rec.conway, "listed_a": str(rec.a),
              **b.to_json()}, as_csv)
        return
    res = diagram_ascending_number(symbol, all_starts=all_starts)
    out = {"symbol": symbol, "a_d": res.a_d, "witness": res.witness()}
    if flypes:
        m = minimal_ascending_number(symbol)
        out.update(minimal_a_d=m.a_d, variants=m.variants, minimal_witness=m.witness())
    if mirror:
        out["mirror_a_d"] = diagram_ascending_number(build_diagram(symbol).mirror()).a_d
    for e in extra:
        r = diagram_ascending_number(e)
        out.setdefault("extra", []).append({"symbol": e, "a_d": r.a_d, "witness": r.witness()})
    if all_starts:
        out["starts"] = [{"edge": repr(e) if not isinstance(e, int) else e,
                          "orientation": o, "changes": c} for e, o, c in res.table]
    emit(out, as_csv)


def _parse_params(text: str) -> dict:
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        key, _, val = part.partition("=")
        if not val:
            raise click.BadParameter(f"expected name=value, got {part!r}", param_hint="--params")
        out[key.strip()] = int(val)
    return out


@main.command("family", context_settings=SYMBOL_ARGS)
@click.argument("pattern")
@click.option("--params", default="", help="Display parameters, e.g. p1=2,p2=1.")
@click.option("--formula", is_flag=True, help="Print the derived signature formula.")
@click.option("--check-grid", type=int, default=0, help="Compare with the catalog row on p in {1..N}^k.")
@csv_option
@_computation
def cmd_family(pattern, params, formula, check_grid, as_csv):
    """A family given by a pattern such as "(2p1+1) (2p2)", a plain symbol
    (every twist of length >= 2 becomes a parameter) or a catalog row name."""
    row = None
    try:
        row = catalog.family_row(pattern)
    except KeyError:
        pass
    if row is not None:
        spec = fam.spec_for_row(row)
    elif "p" in pattern:
        spec = fam.FamilySpec.from_pattern(pattern)
    else:
        spec = fam.FamilySpec.from_symbol(pattern)
    f = fam.derive_signature_formula(spec)
    out = {"pattern": spec.display(), "generating": cw.print_canonical(spec.generating),
           "params": list(spec.params)}
    if formula or not params:
        out["formula"] = str(f)
        out["kinds"] = [{"param": p, "kind": k, "sign": s} for p, k, s in f.kinds]
    if params:
        pv = _parse_params(params)
        missing = set(spec.params) - set(pv)
        if missing:
            raise click.BadParameter(f"missing {sorted(missing)}", param_hint="--params")
        tree = fam.expand_family(spec, fam.increments_from_p(spec, pv))
        d = build_diagram(tree)
        out.update(member=cw.print_canonical(tree), crossings=d.n,
                   formula_value=fam.evaluate_p(f, pv), sigma=matrix_oracle_signature(d).sigma)
    failed = False
    if check_grid:
        if row is None:
            raise click.UsageError("--check-grid needs a catalog row name")
        chk = fam.magnitude_check(row, check_grid)
        out.update(listed=row.sigma, sign=chk.sign, ok=chk.ok,
                   mismatches=[list(m) for m in chk.mismatches])
        failed = not chk.ok
    emit(out, as_csv)
    if failed:
        raise ComputationFailed()


@main.command("bj", context_settings=SYMBOL_ARGS)
@click.argument("symbol")
@csv_option
@_computation
def cmd_bj(symbol, as_csv):
    """BJ unknotting recursion for a rational symbol such as "5 4"."""
    res = bj(_resolve(symbol))
    emit({"symbol": symbol, "fraction": str(res.fraction), "u_bj": res.u_bj,
          "witness_path": [str(f) for f in res.witness_path]}, as_csv)


@main.command("catalog")
@click.argument("name", required=False)
@click.option("--dump", type=click.Choice(["knots", "families", "links"]),
              help="Print an embedded table as CSV.")
@click.option("--section", type=int, help="Only rows of this knot table (2, 3 or 4).")
@csv_option
@_computation
def cmd_catalog(name, dump, section, as_csv):
    """Look up a knot, list a table section, or dump the raw data."""
    if dump:
        click.echo(catalog.dump(dump), nl=False)
        return
    recs = [catalog.lookup(name)] if name else \
        [r for r in catalog.all_records() if section is None or r.section == section]
    rows = [{"name": r.name, "conway": r.conway, "u": str(r.u), "a_d": r.a_d, "a": str(r.a),
             "section": r.section, "sic": r.sic} for r in recs]
    if as_csv:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), quoting=csv.QUOTE_ALL,
                           lineterminator="\r\n")
        w.writeheader()
        w.writerows(rows)
        emit({}, True, buf.getvalue())
    elif name:
        emit(rows[0])
    else:
        emit({"count": len(rows), "records": rows})


@main.command("verify")
@click.option("--scope", type=click.Choice(ver.SCOPES), default="all", show_default=True)
@click.option("--jobs", type=click.IntRange(1), default=1, show_default=True)
@click.option("--grid", type=click.IntRange(1), default=3, show_default=True,
              help="Family check grid bound.")
@click.option("--max-crossings", type=click.IntRange(1), default=16, show_default=True,
              help="Template size bound for the theorem checks.")
@click.option("--failures-only", is_flag=True, help="Only list checks that did not pass.")
@csv_option
def cmd_verify(scope, jobs, grid, max_crossings, failures_only, as_csv):
    """Run the regression checks of SCOPE; exit 1 if any check fails."""
    report = ver.run(scope, jobs=jobs, grid=grid, max_crossings=max_crossings)
    if as_csv:
        click.echo(report.to_csv(failures_only), nl=False)
    else:
        click.echo(json.dumps(report.to_json(failures_only), indent=2, default=str))
    sys.exit(0 if report.ok else 1)


if __name__ == "__main__":
    main()
