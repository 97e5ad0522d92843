"""Command-line surface: analyze | enumerate | verify | render.

Exit codes: 0 success, 1 usage or parse error, 2 verification failure.
The environment variable MINUSCULE_MAX_RANK caps the rank of the spaces
swept by ``verify all`` (default: A up to rank 7, D up to rank 6, E6, E7).
All output is deterministic byte for byte.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from functools import lru_cache
from typing import Optional, Sequence

from . import analysis, heap, rootsys, typea
from .analysis import AnalysisReport
from .heap import AmbientQuiver, Ideal, MinusculeSpace


class UsageError(ValueError):
    pass


_SPACE_RE = re.compile(r"^([ADE])(\d+)/(\d+)$")


def parse_space(text: str) -> MinusculeSpace:
    m = _SPACE_RE.match(text.strip())
    if not m:
        raise UsageError(f"bad space {text!r}; expected e.g. A6/4, D5/5, E6/1")
    family, rank, node = m.group(1), int(m.group(2)), int(m.group(3))
    try:
        rs = rootsys.build_root_system(rootsys.DynkinType(family, rank))
        return MinusculeSpace(rs, node)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


@lru_cache(maxsize=None)
def _weight_index(ambient: AmbientQuiver) -> dict[tuple[int, ...], int]:
    """Image of the minuscule weight under each ideal's coset
    representative, mapped to the ideal mask; used to resolve words."""
    rs = ambient.space.root_system
    start = tuple(
        1 if j == ambient.space.node - 1 else 0 for j in range(rs.rank)
    )
    index = {}
    for ideal in heap.enumerate_ideals(ambient):
        word = heap.word_from_ideal(ideal)
        mu = start
        for letter in reversed(word):  # w acts with its last letter first
            mu = heap._lower_weight(rs.cartan, mu, letter)
        index[mu] = ideal.mask
    return index


def ideal_from_word(ambient: AmbientQuiver, letters: Sequence[int]) -> Ideal:
    rs = ambient.space.root_system
    word = tuple(letters)
    for letter in word:
        rs.check_node(letter)
    if rootsys.length_by_inversions(rs, word) != len(word):
        raise UsageError(f"word {word} is not reduced")
    for t in range(1, rs.rank + 1):
        if t == ambient.space.node:
            continue
        image = rootsys.apply_word(rs, tuple(reversed(word)), rs.simple_root(t))
        if not all(c >= 0 for c in image):
            raise UsageError(
                f"word {word} is not a minimal coset representative "
                f"(it inverts the Levi simple root {t})"
            )
    mu = tuple(1 if j == ambient.space.node - 1 else 0 for j in range(rs.rank))
    for letter in reversed(word):
        mu = heap._lower_weight(rs.cartan, mu, letter)
    mask = _weight_index(ambient).get(mu)
    if mask is None:
        raise UsageError(f"word {word} does not index a Schubert variety here")
    return Ideal(ambient, mask)


def resolve_schubert(
    ambient: AmbientQuiver,
    partition: Optional[str],
    ideal_mask: Optional[str],
    word: Optional[str],
) -> Ideal:
    given = [x for x in (partition, ideal_mask, word) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --partition, --ideal, --word")
    space = ambient.space
    if partition is not None:
        if space.root_system.dynkin.family != "A":
            raise UsageError("--partition only applies to type A spaces")
        shape = typea.GrassmannianShape(space.node, space.root_system.rank + 1)
        try:
            lam = typea.Partition.from_string(partition.removeprefix("λ="))
            return typea.partition_to_ideal(shape, lam)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if ideal_mask is not None:
        try:
            mask = heap.parse_mask(ideal_mask.removeprefix("ideal="))
            return heap.make_ideal(ambient, mask)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    assert word is not None
    try:
        letters = [int(x) for x in word.removeprefix("word=").split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad word {word!r}") from exc
    return ideal_from_word(ambient, letters)


# ---------------------------------------------------------------------------
# JSON serialization


def _permutation_str(perm: tuple[int, ...]) -> str:
    if len(perm) <= 9:
        return "".join(str(x) for x in perm)
    return ",".join(str(x) for x in perm)


def _typea_labels(ideal: Ideal) -> dict:
    space = ideal.ambient.space
    if space.root_system.dynkin.family != "A":
        return {}
    shape = typea.GrassmannianShape(space.node, space.root_system.rank + 1)
    lam = typea.ideal_to_partition(shape, ideal)
    return {
        "partition": str(lam),
        "permutation": _permutation_str(typea.partition_to_permutation(shape, lam)),
    }


def report_to_dict(report: AnalysisReport, ideal: Ideal) -> dict:
    doc: dict = {"space": report.space, "ideal_mask": report.ideal_mask}
    doc.update(_typea_labels(ideal))
    doc["dimension"] = report.dimension
    doc["smooth"] = report.smooth
    doc["gorenstein"] = report.gorenstein
    holes_json = []
    for rec in report.holes:
        entry = {
            "vertex": rec.vertex,
            "color": rec.color,
            "virtual": rec.is_virtual,
            "essential": bool(rec.is_essential),
        }
        if rec.is_essential:
            entry["gorenstein"] = bool(rec.is_gorenstein)
        holes_json.append(entry)
    doc["holes"] = holes_json
    comps = []
    for comp in report.singular_components:
        centry = {
            "hole_vertex": comp.hole.vertex,
            "ideal_mask": comp.component_ideal.hex_mask,
            "dimension": comp.component_ideal.size,
        }
        centry.update(_typea_labels(comp.component_ideal))
        centry["singularity"] = {
            "vertices": list(comp.singularity_shape.vertices),
            "colors": list(comp.singularity_shape.colors),
            "arrows": [list(a) for a in comp.singularity_shape.arrows],
        }
        comps.append(centry)
    doc["singular_components"] = comps
    doc["non_gorenstein_holes"] = list(report.non_gorenstein_holes)
    doc["canonical_partition"] = {
        "classes": [list(c) for c in report.canonical_partition.peak_classes],
        "blocks": [list(b) for b in report.canonical_partition.blocks],
        "minima": list(report.canonical_partition.block_minima),
    }
    return doc


# ---------------------------------------------------------------------------
# rendering


def render_ascii(ideal: Ideal) -> str:
    """Layered text diagram: row = height inside the ideal, column = Dynkin
    node of the vertex color.  Non-virtual holes are parenthesized, peaks
    bracketed.  Fork colors of D/E types simply use their own node column;
    no geometric offset is applied."""
    amb = ideal.ambient
    rank = amb.space.root_system.rank
    lines = [f"{amb.space} ideal={ideal.hex_mask} dim={ideal.size}"]
    if ideal.mask:
        h = heap.heights(ideal)
        pk = heap.peaks(ideal)
        hole_vertices = {
            r.vertex for r in heap.holes(ideal) if not r.is_virtual
        }
        cell = {(h[v], amb.colors[v - 1]): v for v in h}
        for level in range(max(h.values()), 0, -1):
            row = f"h{level:>2} |"
            for col in range(1, rank + 1):
                v = cell.get((level, col))
                if v is None:
                    row += "    "
                elif v in hole_vertices:
                    row += f"({col}) "
                elif v in pk:
                    row += f"[{col}] "
                else:
                    row += f" {col}  "
            lines.append(row.rstrip())
    return "\n".join(lines) + "\n"


def render_svg(ideal: Ideal) -> str:
    """Deterministic SVG of the same layered layout; holes get a second
    ring, peaks a heavier stroke."""
    amb = ideal.ambient
    rank = amb.space.root_system.rank
    step, margin, radius = 48, 32, 10
    h = heap.heights(ideal) if ideal.mask else {}
    maxh = max(h.values()) if h else 1
    width = margin * 2 + step * (rank - 1)
    height = margin * 2 + step * (maxh - 1) + 20

    def pos(v: int) -> tuple[int, int]:
        x = margin + step * (amb.colors[v - 1] - 1)
        y = margin + step * (maxh - h[v])
        return x, y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<title>{amb.space} ideal={ideal.hex_mask}</title>',
    ]
    for i, j in amb.arrows:
        if i in ideal and j in ideal:
            x1, y1 = pos(i)
            x2, y2 = pos(j)
            parts.append(
                f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                'stroke="black" stroke-width="1"/>'
            )
    pk = heap.peaks(ideal)
    hole_vertices = {r.vertex for r in heap.holes(ideal) if not r.is_virtual}
    for v in sorted(h):
        x, y = pos(v)
        stroke = 3 if v in pk else 1
        parts.append(
            f'<circle cx="{x}" cy="{y}" r="{radius}" fill="white" '
            f'stroke="black" stroke-width="{stroke}"/>'
        )
        if v in hole_vertices:
            parts.append(
                f'<circle cx="{x}" cy="{y}" r="{radius + 4}" fill="none" '
                'stroke="black" stroke-width="1"/>'
            )
        parts.append(
            f'<text x="{x}" y="{y + 4}" font-size="10" text-anchor="middle">'
            f"{amb.colors[v - 1]}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# verification sweeps


_CLASS_MATCH = {
    analysis.QuiverClass.PEAK: rootsys.RootClass.NEG_NON_LEVI,
    analysis.QuiverClass.HOLE: rootsys.RootClass.POS_NON_LEVI,
    analysis.QuiverClass.LEVI: rootsys.RootClass.POS_LEVI,
}


def default_spaces(max_rank: Optional[int] = None) -> list[MinusculeSpace]:
    if max_rank is None:
        env = os.environ.get("MINUSCULE_MAX_RANK")
        max_rank = int(env) if env else None
    a_max = min(max_rank, 7) if max_rank is not None else 7
    d_max = min(max_rank, 6) if max_rank is not None else 6
    spaces = []
    for rank in range(1, a_max + 1):
        rs = rootsys.build_root_system(rootsys.DynkinType("A", rank))
        for node in range(1, rank + 1):
            spaces.append(MinusculeSpace(rs, node))
    for rank in range(4, d_max + 1):
        rs = rootsys.build_root_system(rootsys.DynkinType("D", rank))
        for node in (1, rank - 1, rank):
            spaces.append(MinusculeSpace(rs, node))
    if max_rank is None or max_rank >= 6:
        rs = rootsys.build_root_system(rootsys.DynkinType("E", 6))
        spaces.append(MinusculeSpace(rs, 1))
        spaces.append(MinusculeSpace(rs, 6))
    if max_rank is None or max_rank >= 7:
        rs = rootsys.build_root_system(rootsys.DynkinType("E", 7))
        spaces.append(MinusculeSpace(rs, 7))
    return spaces


def sweep_imrac(space: MinusculeSpace) -> tuple[int, list[str]]:
    """Quiver classification of every simple root against every ideal must
    match the root-arithmetic classification of its image under the
    inverse coset representative."""
    rs = space.root_system
    amb = heap.build_ambient_quiver(space)
    checked, failures = 0, []
    for ideal in heap.enumerate_ideals(amb):
        word = heap.word_from_ideal(ideal)
        for node in range(1, rs.rank + 1):
            quiver_class = analysis.classify_simple_root_via_quiver(ideal, node)
            image = rootsys.apply_word(rs, word, rs.simple_root(node))
            root_class = rootsys.classify_root(rs, space.node, image)
            checked += 1
            if _CLASS_MATCH[quiver_class] is not root_class:
                failures.append(
                    f"{space} ideal={ideal.hex_mask} node={node}: "
                    f"quiver={quiver_class.value} roots={root_class.value}"
                )
    return checked, failures


def _nested_pairs(amb: AmbientQuiver):
    ideals = list(heap.enumerate_ideals(amb))
    for big in ideals:
        for small in ideals:
            if small.mask & ~big.mask == 0:
                yield big, small


def sweep_gorenstein_locus(space: MinusculeSpace) -> tuple[int, list[str]]:
    """Gorenstein-locus membership and the (WY) property must agree on
    every nested pair."""
    amb = heap.build_ambient_quiver(space)
    checked, failures = 0, []
    for big, small in _nested_pairs(amb):
        checked += 1
        locus = analysis.gorenstein_locus_contains(big, small)
        wy = analysis.has_property_WY(big, small)
        if locus != wy:
            failures.append(
                f"{space} big={big.hex_mask} small={small.hex_mask}: "
                f"locus={locus} wy={wy}"
            )
    return checked, failures


def sweep_stability(space: MinusculeSpace) -> tuple[int, list[str]]:
    """Hole-color stability must coincide with hole-offset reconstruction
    on every nested pair."""
    amb = heap.build_ambient_quiver(space)
    checked, failures = 0, []
    for big, small in _nested_pairs(amb):
        checked += 1
        stable = analysis.is_stable(big, small)
        rebuilt = analysis.reconstructs(big, small)
        if stable != rebuilt:
            failures.append(
                f"{space} big={big.hex_mask} small={small.hex_mask}: "
                f"stable={stable} reconstructs={rebuilt}"
            )
    return checked, failures


def sweep_partition(space: MinusculeSpace) -> tuple[int, list[str]]:
    """Canonical partition invariants on every ideal, plus component
    containment in single blocks on every stable (WY) pair."""
    amb = heap.build_ambient_quiver(space)
    checked, failures = 0, []
    block_masks: dict[int, list[int]] = {}
    for ideal in heap.enumerate_ideals(amb):
        if ideal.mask == 0:
            block_masks[ideal.mask] = []
            continue
        checked += 1
        try:
            cp = analysis.canonical_partition(ideal)
        except AssertionError as exc:
            failures.append(f"{space} ideal={ideal.hex_mask}: {exc}")
            continue
        masks = [heap.mask_of(b) for b in cp.blocks]
        block_masks[ideal.mask] = masks
        union = 0
        for m in masks:
            if union & m:
                failures.append(f"{space} ideal={ideal.hex_mask}: blocks overlap")
            union |= m
        if union != ideal.mask:
            failures.append(f"{space} ideal={ideal.hex_mask}: blocks do not cover")
        if sum(len(w) for w in cp.block_words) != ideal.size:
            failures.append(f"{space} ideal={ideal.hex_mask}: block lengths != dim")
    for big, small in _nested_pairs(amb):
        if big.mask == small.mask or big.mask == 0:
            continue
        if not analysis.is_stable(big, small):
            continue
        if not analysis.has_property_WY(big, small):
            continue
        checked += 1
        diff = heap.vertices_of(big.mask & ~small.mask)
        for comp in heap.connected_components(amb, diff):
            cm = heap.mask_of(comp)
            owners = sum(1 for m in block_masks[big.mask] if cm & m)
            if owners != 1 or not any(cm & ~m == 0 for m in block_masks[big.mask]):
                failures.append(
                    f"{space} big={big.hex_mask} small={small.hex_mask}: "
                    f"component {heap.hex_mask(cm)} spans {owners} blocks"
                )
    return checked, failures


def _box_partitions(k: int, cols: int):
    def rec(row: int, limit: int, acc: tuple[int, ...]):
        yield acc
        if row == k:
            return
        for part in range(1, limit + 1):
            yield from rec(row + 1, part, acc + (part,))

    yield from rec(0, cols, ())


def sweep_typea(space: MinusculeSpace) -> tuple[int, list[str]]:
    """Type-A oracles: rectangle <=> smooth, one antidiagonal of corners
    <=> Gorenstein, grid heights i+j-1, and word action = Grassmannian
    permutation, for every partition in the box."""
    if space.root_system.dynkin.family != "A":
        return 0, []
    shape = typea.GrassmannianShape(space.node, space.root_system.rank + 1)
    checked, failures = 0, []
    for parts in _box_partitions(shape.k, shape.n - shape.k):
        lam = typea.Partition(parts)
        ideal = typea.partition_to_ideal(shape, lam)
        checked += 1
        tag = f"{space} lambda=({lam})"
        if analysis.is_smooth(ideal) != typea.oracle_smooth(lam):
            failures.append(f"{tag}: smoothness oracle mismatch")
        if analysis.is_gorenstein(ideal) != typea.oracle_gorenstein(shape, lam):
            failures.append(f"{tag}: Gorenstein oracle mismatch")
        h = heap.heights(ideal)
        for v in h:
            i, j = typea.vertex_to_box(shape, v)
            if h[v] != i + j - 1:
                failures.append(f"{tag}: height({i},{j}) = {h[v]} != {i + j - 1}")
        word = heap.word_from_ideal(ideal)
        if typea.word_to_permutation(shape.n, word) != typea.partition_to_permutation(
            shape, lam
        ):
            failures.append(f"{tag}: word action != Grassmannian permutation")
        if typea.ideal_to_partition(shape, ideal) != lam:
            failures.append(f"{tag}: partition round-trip failed")
    return checked, failures


def sweep_counting(space: MinusculeSpace) -> tuple[int, list[str]]:
    """Ideal counts: closed forms where known, and always equal to the
    weight-orbit size."""
    amb = heap.build_ambient_quiver(space)
    count = heap.ideal_count(amb)
    failures = []
    if count != amb.orbit_size:
        failures.append(f"{space}: {count} ideals != orbit size {amb.orbit_size}")
    d = space.root_system.dynkin
    expected = None
    if d.family == "A":
        from math import comb

        expected = comb(d.rank + 1, space.node)
    elif d.family == "D":
        expected = 2 * d.rank if space.node == 1 else 2 ** (d.rank - 1)
    elif d.rank == 6:
        expected = 27
    else:
        expected = 56
    if count != expected:
        failures.append(f"{space}: {count} ideals, closed form {expected}")
    return 1, failures


_SUITES = {
    "imrac": sweep_imrac,
    "gorenstein-locus": sweep_gorenstein_locus,
    "stability": sweep_stability,
    "partition": sweep_partition,
    "typea-oracles": sweep_typea,
    "counting": sweep_counting,
}


def run_verify(spaces: list[MinusculeSpace], suites: list[str], out) -> int:
    total_failures = 0
    for suite in suites:
        sweep = _SUITES[suite]
        checked = 0
        failures: list[str] = []
        for space in spaces:
            c, f = sweep(space)
            checked += c
            failures.extend(f)
        status = "ok" if not failures else "FAIL"
        print(f"{suite}: {status} checked={checked} failures={len(failures)}", file=out)
        for line in failures:
            print(f"  {line}", file=out)
        total_failures += len(failures)
    return 0 if total_failures == 0 else 2


# ---------------------------------------------------------------------------
# commands


def _write_output(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args: argparse.Namespace) -> int:
    space = parse_space(args.space)
    amb = heap.build_ambient_quiver(space)
    ideal = resolve_schubert(amb, args.partition, args.ideal, args.word)
    report = analysis.analyze(ideal)
    if args.format == "json":
        text = json.dumps(report_to_dict(report, ideal), indent=2) + "\n"
    else:
        lines = [render_ascii(ideal).rstrip("\n")]
        lines.append(f"smooth: {'yes' if report.smooth else 'no'}")
        lines.append(f"gorenstein: {'yes' if report.gorenstein else 'no'}")
        ess = sum(1 for h in report.holes if h.is_essential)
        lines.append(
            f"holes: {len(report.holes)} "
            f"(essential {ess}, non-gorenstein {len(report.non_gorenstein_holes)})"
        )
        for comp in report.singular_components:
            lines.append(
                f"singular component at vertex {comp.hole.vertex}: "
                f"ideal={comp.component_ideal.hex_mask} "
                f"dim={comp.component_ideal.size}"
            )
        text = "\n".join(lines) + "\n"
    _write_output(text, args.out)
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    space = parse_space(args.space)
    amb = heap.build_ambient_quiver(space)
    records = []
    for ideal in heap.enumerate_ideals(amb):
        ess = analysis.essential_holes(ideal)
        ngor = analysis.non_gorenstein_hole_vertices(ideal)
        records.append(
            {
                "ideal_mask": ideal.hex_mask,
                "dimension": ideal.size,
                "smooth": analysis.is_smooth(ideal),
                "gorenstein": analysis.is_gorenstein(ideal),
                "essential_holes": len(ess),
                "non_gorenstein_holes": len(ngor),
            }
        )
    if args.format == "json":
        text = json.dumps(records, indent=2) + "\n"
    else:
        lines = [
            f"{r['ideal_mask']} dim={r['dimension']} "
            f"smooth={int(r['smooth'])} gorenstein={int(r['gorenstein'])} "
            f"essential={r['essential_holes']} "
            f"non_gorenstein={r['non_gorenstein_holes']}"
            for r in records
        ]
        text = "\n".join(lines) + "\n"
    _write_output(text, args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.space == "all":
        spaces = default_spaces()
    else:
        spaces = [parse_space(args.space)]
    suites = list(_SUITES) if args.suite == "all" else [args.suite]
    return run_verify(spaces, suites, sys.stdout)


def cmd_render(args: argparse.Namespace) -> int:
    space = parse_space(args.space)
    amb = heap.build_ambient_quiver(space)
    ideal = resolve_schubert(amb, args.partition, args.ideal, args.word)
    text = render_svg(ideal) if args.format == "svg" else render_ascii(ideal)
    _write_output(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minuscule",
        description="Quiver invariants and Gorenstein loci of minuscule "
        "Schubert varieties",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_schubert_flags(p):
        p.add_argument("--space", required=True, help="e.g. A6/4, D5/5, E6/1")
        p.add_argument("--partition", help="type A only, e.g. 3,2,1,1")
        p.add_argument("--ideal", help="hex vertex mask, e.g. 0x4f")
        p.add_argument("--word", help="reduced word, e.g. 1,2,4,6,3,5,4")
        p.add_argument("--out", help="write output to a file")

    p = sub.add_parser("analyze", help="full verdict for one Schubert variety")
    add_schubert_flags(p)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("enumerate", help="one summary line per Schubert variety")
    p.add_argument("--space", required=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="exhaustive invariant sweeps")
    p.add_argument("--space", required=True, help="a space or 'all'")
    p.add_argument(
        "--suite",
        choices=tuple(_SUITES) + ("all",),
        default="all",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw one quiver")
    add_schubert_flags(p)
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
