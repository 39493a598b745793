"""Command-line interface: ``kmcent <command>``.

Exit codes: 0 success, 1 mismatch or failed verification, 2 input error.
"""
from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import click

from kmcent.cartan import (
    DynkinDiagram,
    GCMError,
    classify,
    enumerate_hyperbolic_catalog,
    is_symmetrizable,
    parse_gcm_text,
    symmetrize,
)
from kmcent.rootspace import (
    CriterionInapplicable,
    NotRealRoot,
    RootSystem,
    enumerate_positive_real_roots,
    roots_to_json,
    roots_to_tsv,
)

FORMATS = ("json", "tsv", "dot")
WORKERS_ENV = "KMCENT_WORKERS"


@dataclass(frozen=True)
class RunConfig:
    height_cap: int = 40
    chamber_budget: int = 10_000
    fmt: str = "json"

    def __post_init__(self):
        if self.height_cap < 1 or self.chamber_budget < 1:
            raise click.BadParameter("cap and budget must be positive")
        if self.fmt not in FORMATS:
            raise click.BadParameter(f"format must be one of {', '.join(FORMATS)}")


class InputError(click.ClickException):
    exit_code = 2


def _read_gcm(source: str):
    path = Path(source)
    if source == "-":
        text = sys.stdin.read()
    elif path.exists():
        text = path.read_text(encoding="utf-8")
    else:
        text = source.replace(";", "\n")
    try:
        return parse_gcm_text(text)
    except GCMError as exc:
        raise InputError(str(exc)) from exc


def _parse_alpha(spec: str, rank: int):
    spec = spec.strip()
    try:
        if "," in spec or spec.startswith("["):
            vec = tuple(int(x) for x in spec.strip("[]").split(","))
        else:
            k = int(spec)
            if not 1 <= k <= rank:
                raise InputError(f"--alpha index {k} outside 1..{rank}")
            vec = tuple(int(i == k - 1) for i in range(rank))
    except ValueError as exc:
        raise InputError(f"--alpha must be an index or a comma-separated vector: {exc}") from exc
    if len(vec) != rank:
        raise InputError(f"--alpha has {len(vec)} coordinates, system rank is {rank}")
    return vec


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"), sort_keys=True)


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


@click.group()
def main():
    """Symmetric centralizers of real roots in Kac-Moody root systems."""


@main.command("classify")
@click.argument("source")
@click.option("--format", "fmt", type=click.Choice(["json", "tsv"]), default="tsv")
def cmd_classify(source, fmt):
    """Type, name and symmetrization of a Cartan matrix."""
    g = _read_gcm(source)
    try:
        t = classify(g)
        kind, name = t.kind, t.name
    except GCMError:
        # disconnected input: classify per component
        from kmcent.cartan import identify_diagram

        kinds = {classify(g.submatrix(c)).kind for c in g.components()}
        kind = kinds.pop() if len(kinds) == 1 else "mixed"
        try:
            name = identify_diagram(g).name
        except Exception:
            name = None
    sym = symmetrize(g) if is_symmetrizable(g) else None
    if fmt == "json":
        _emit(_dump({"class": kind, "name": name, "d": list(sym.d) if sym else None, "B": [list(r) for r in sym.B] if sym else None}))
    else:
        parts = [kind] + ([name] if name else [])
        _emit(" ".join(parts))


@main.command("roots")
@click.argument("source")
@click.option("--cap", default=10, show_default=True, type=click.IntRange(min=1))
@click.option("--format", "fmt", type=click.Choice(["json", "tsv"]), default="tsv")
def cmd_roots(source, cap, fmt):
    """Positive real roots up to a height cap."""
    g = _read_gcm(source)
    try:
        rs = RootSystem(g)
        roots = enumerate_positive_real_roots(rs, cap)
    except (GCMError, CriterionInapplicable) as exc:
        raise InputError(str(exc)) from exc
    _emit(roots_to_json(roots) if fmt == "json" else roots_to_tsv(rs, roots))


@main.command("zs")
@click.argument("source")
@click.option("--alpha", "alpha_spec", required=True, help="1-based simple-root index or coefficient vector")
@click.option("--cap", default=40, show_default=True, type=click.IntRange(min=1))
@click.option("--budget", default=10_000, show_default=True, type=click.IntRange(min=1))
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json")
def cmd_zs(source, alpha_spec, cap, budget, fmt):
    """Z_s(alpha): members, basis, diagram and certification verdict."""
    from kmcent.analysis import analyze

    g = _read_gcm(source)
    try:
        rs = RootSystem(g)
    except GCMError as exc:
        raise InputError(str(exc)) from exc
    alpha = _parse_alpha(alpha_spec, g.rank)
    try:
        rep = analyze(rs, alpha, cap, budget)
    except (NotRealRoot, CriterionInapplicable) as exc:
        raise InputError(str(exc)) from exc
    if fmt == "json":
        _emit(_dump(rep))
    elif fmt == "tsv":
        lines = [f"verdict\t{rep['verdict']}", f"members\t{rep['members']}"]
        lines += [f"basis\t{sum(r)}\t{','.join(map(str, r))}" for r in rep["basis"]]
        _emit("\n".join(lines))
    else:
        if rep["basis"]:
            from kmcent.basis import basis_gcm

            roots = [tuple(r) for r in rep["basis"]]
            labels = [",".join(map(str, r)) for r in roots]
            _emit(DynkinDiagram.from_gcm(basis_gcm(rs, roots), labels).to_dot("Zs"))
        else:
            _emit("graph Zs {\n}")


@main.command("affine-table")
def cmd_affine_table():
    """Affine centralizer table with computed and expected types."""
    from kmcent.affine import TABLE_HEADER, affine_table

    rows = affine_table()
    _emit("\n".join([TABLE_HEADER] + [r.tsv() for r in rows]))
    if any(not r.match for r in rows):
        sys.exit(1)


@main.command("render")
@click.argument("source")
def cmd_render(source):
    """DOT text of the Dynkin diagram."""
    g = _read_gcm(source)
    _emit(DynkinDiagram.from_gcm(g).to_dot())


@main.command("catalog")
@click.option("--rank-min", default=3, show_default=True, type=int)
@click.option("--rank-max", default=10, show_default=True, type=int)
@click.option("--all", "include_all", is_flag=True, help="include non-symmetrizable systems")
@click.option("--format", "fmt", type=click.Choice(["json", "tsv"]), default="tsv")
def cmd_catalog(rank_min, rank_max, include_all, fmt):
    """Hyperbolic Cartan matrices up to diagram isomorphism."""
    from kmcent.cartan import RankOutOfRange

    try:
        cat = enumerate_hyperbolic_catalog(rank_min, rank_max, symmetrizable_only=not include_all)
    except RankOutOfRange as exc:
        raise InputError(str(exc)) from exc
    if fmt == "json":
        _emit("\n".join(e.to_json() for e in cat) if cat else "")
    else:
        lines = ["id\trank\tsymmetrizable\tA"]
        lines += [f"{e.id}\t{e.gcm.rank}\t{int(e.symmetrizable)}\t{json.dumps(e.gcm.rows(), separators=(',', ':'))}" for e in cat]
        _emit("\n".join(lines))


def _atlas_system(args):
    entry_id, rows, cap, budget = args
    from kmcent.analysis import analyze, choose_alpha, simple_root_orbits

    rs = RootSystem(rows)
    records = []
    for orbit in simple_root_orbits(rs):
        rec = {"system": entry_id, "A": rows, "orbit": [i + 1 for i in orbit]}
        try:
            alpha = choose_alpha(rs, orbit)
            rec.update(analyze(rs, alpha, cap, budget))
        except Exception as exc:  # recorded, the run continues
            rec["error"] = f"{type(exc).__name__}: {exc}"
        records.append(rec)
    return entry_id, records


@main.command("atlas")
@click.option("--rank-min", default=3, show_default=True, type=int)
@click.option("--rank-max", default=10, show_default=True, type=int)
@click.option("--cap", default=30, show_default=True, type=click.IntRange(min=1))
@click.option("--budget", default=10_000, show_default=True, type=click.IntRange(min=1))
@click.option("--resume", "resume_dir", type=click.Path(file_okay=False), default=None, help="directory of per-system results; finished systems are skipped")
@click.option("--format", "fmt", type=click.Choice(["json"]), default="json")
def cmd_atlas(rank_min, rank_max, cap, budget, resume_dir, fmt):
    """One JSON record per (system, defining-root class) over the symmetrizable catalog."""
    from kmcent.cartan import RankOutOfRange

    try:
        cat = enumerate_hyperbolic_catalog(rank_min, rank_max)
    except RankOutOfRange as exc:
        raise InputError(str(exc)) from exc
    store = Path(resume_dir) if resume_dir else None
    if store:
        store.mkdir(parents=True, exist_ok=True)
    results = {}
    todo = []
    for e in cat:
        f = store / f"{e.id}.json" if store else None
        if f and f.exists():
            results[e.id] = json.loads(f.read_text(encoding="utf-8"))
        else:
            todo.append((e.id, e.gcm.rows(), cap, budget))
    workers = int(os.environ.get(WORKERS_ENV, "1") or 1)

    def save(entry_id, records):
        results[entry_id] = records
        if store:
            tmp = store / f"{entry_id}.json.tmp"
            tmp.write_text(_dump(records), encoding="utf-8")
            tmp.replace(store / f"{entry_id}.json")

    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for entry_id, records in pool.map(_atlas_system, todo):
                save(entry_id, records)
    else:
        for item in todo:
            save(*_atlas_system(item))
    lines = [_dump(rec) for e in cat for rec in results[e.id]]
    _emit("\n".join(lines))


if __name__ == "__main__":
    main()
