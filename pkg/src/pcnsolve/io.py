"""File formats: DIMACS graphs, LP export, colorings, layered stable sets, bound tables.

All writers are deterministic: the same input always yields the same bytes.
"""

from __future__ import annotations

import io as _io
import os
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

from .errors import EmptyLayerSetError, FormatError, GraphError, InvalidCoverError
from .graph import STAR, DistanceMatrix, Graph, power_graph
from .mss import UNLIMITED, CliqueCover, SolveBudget, clique_cover, solve_mss, validate_cover
from .pcn import LayeredStableSet, PackingColoring

PathLike = str | os.PathLike


def _write(path: PathLike, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")


# -- DIMACS -----------------------------------------------------------------


def dimacs_text(g: Graph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"c {line}".rstrip() for line in comment.splitlines())
    out.append(f"p edge {g.n} {g.num_edges}")
    out.extend(f"e {u + 1} {v + 1}" for u, v in g.edge_list())
    return "\n".join(out) + "\n"


def write_dimacs(g: Graph, path: PathLike, comment: str | None = None) -> None:
    _write(path, dimacs_text(g, comment))


def parse_dimacs(text: str, name: str = "", source: str | None = None) -> Graph:
    n = declared = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise FormatError("second problem line", lineno, source)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise FormatError(f"expected 'p edge N M', got {raw.strip()!r}", lineno, source)
            try:
                n, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"non-integer sizes in {raw.strip()!r}", lineno, source) from None
            if n < 0 or declared < 0:
                raise FormatError("negative sizes", lineno, source)
        elif tag == "e":
            if n is None:
                raise FormatError("edge line before problem line", lineno, source)
            if len(parts) != 3:
                raise FormatError(f"expected 'e U V', got {raw.strip()!r}", lineno, source)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError(f"non-integer vertex in {raw.strip()!r}", lineno, source) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(f"vertex out of range 1..{n}", lineno, source)
            if u == v:
                raise FormatError(f"self-loop at vertex {u}", lineno, source)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise FormatError(f"duplicate edge {key[0]}-{key[1]}", lineno, source)
            seen.add(key)
            edges.append((key[0] - 1, key[1] - 1))
        else:
            raise FormatError(f"unknown line type {tag!r}", lineno, source)
    if n is None:
        raise FormatError("missing problem line", lineno or None, source)
    if declared != len(edges):
        raise FormatError(f"problem line declares {declared} edges, found {len(edges)}", lineno, source)
    try:
        return Graph.from_edges(n, edges, name)
    except GraphError as exc:  # pragma: no cover - parse checks above are stricter
        raise FormatError(str(exc), None, source) from exc


def read_dimacs(path: PathLike) -> Graph:
    path = Path(path)
    return parse_dimacs(path.read_text(encoding="utf-8"), path.stem, str(path))


# -- LP export --------------------------------------------------------------


@dataclass(frozen=True)
class LpConstraint:
    name: str
    terms: tuple[tuple[int, str], ...]
    sense: str
    rhs: int


@dataclass(frozen=True)
class LpModel:
    objective: tuple[tuple[str, int], ...]
    constraints: tuple[LpConstraint, ...]
    binaries: tuple[str, ...]
    sense: str = "Maximize"

    @property
    def num_variables(self) -> int:
        return len(self.binaries)


def var_name(v: int, k: int) -> str:
    """LP variable for vertex ``v`` (0-based) in layer ``k``."""
    return f"x_{v + 1}_{k}"


def export_ilp(
    g: Graph,
    dm: DistanceMatrix,
    f: Iterable[int],
    covers: Mapping[int, CliqueCover] | None = None,
) -> LpModel:
    """Binary program whose optimum is the stability number of ``G^F``.

    One column row per vertex (at most one layer) and one row per clique of
    each layer's cover. Missing covers are generated.
    """
    layers = sorted(set(f))
    if not layers:
        raise EmptyLayerSetError("layer set F must be nonempty")
    covers = dict(covers or {})
    for k in layers:
        gk = power_graph(g, dm, k)
        cover = covers.get(k)
        if cover is None:
            covers[k] = clique_cover(g, dm, k)
        elif cover.k != k or not validate_cover(cover, gk):
            raise InvalidCoverError(f"cover for layer {k} does not cover G^{k} by cliques")
    names = [var_name(v, k) for k in layers for v in range(g.n)]
    rows = [
        LpConstraint(f"col_{v + 1}", tuple((1, var_name(v, k)) for k in layers), "<=", 1)
        for v in range(g.n)
    ]
    for k in layers:
        for i, clique in enumerate(covers[k].cliques, 1):
            terms = tuple((1, var_name(v, k)) for v in sorted(clique))
            rows.append(LpConstraint(f"clq_{k}_{i}", terms, "<=", 1))
    return LpModel(tuple((x, 1) for x in names), tuple(rows), tuple(names))


TERMS_PER_LINE = 10


def _terms(terms: Sequence[tuple[int, str]]) -> list[str]:
    chunks = []
    for i in range(0, len(terms), TERMS_PER_LINE):
        chunk = " + ".join(f"{c} {x}" for c, x in terms[i:i + TERMS_PER_LINE])
        chunks.append(chunk if i == 0 else f"   + {chunk}")
    return chunks


def lp_text(model: LpModel, comment: str | None = None) -> str:
    out = []
    if comment:
        out.append(f"\\ {comment}")
    out.append(model.sense)
    obj = _terms([(c, x) for x, c in model.objective])
    out.append(f" obj: {obj[0]}")
    out.extend(obj[1:])
    out.append("Subject To")
    for row in model.constraints:
        body = _terms(row.terms)
        if len(body) == 1:
            out.append(f" {row.name}: {body[0]} {row.sense} {row.rhs}")
        else:
            out.append(f" {row.name}: {body[0]}")
            out.extend(body[1:-1])
            out.append(f"{body[-1]} {row.sense} {row.rhs}")
    out.append("Binaries")
    out.extend(f" {x}" for x in model.binaries)
    out.append("End")
    return "\n".join(out) + "\n"


def write_lp_file(model: LpModel, path: PathLike, comment: str | None = None) -> None:
    _write(path, lp_text(model, comment))


def _parse_terms(text: str, lineno: int, source: str | None) -> list[tuple[int, str]]:
    tokens = text.replace("+", " + ").split()
    terms = []
    i = 0
    while i < len(tokens):
        if tokens[i] == "+":
            i += 1
            continue
        try:
            coef = int(tokens[i])
            name = tokens[i + 1]
        except (ValueError, IndexError):
            raise FormatError(f"bad term near {' '.join(tokens[i:i + 2])!r}", lineno, source) from None
        terms.append((coef, name))
        i += 2
    return terms


def parse_lp(text: str, source: str | None = None) -> LpModel:
    """Read the subset of the LP format that ``lp_text`` writes."""
    section = None
    statements: list[tuple[str, str, int]] = []
    binaries: list[str] = []
    sense = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        low = line.lower()
        if low in ("maximize", "minimize"):
            section, sense = "objective", line
            continue
        if low == "subject to":
            section = "constraints"
            continue
        if low == "binaries":
            section = "binaries"
            continue
        if low == "end":
            section = "end"
            continue
        if section in ("objective", "constraints"):
            if line.startswith("+") and statements:
                name, body, start = statements[-1]
                statements[-1] = (name, body + " " + line, start)
            else:
                if ":" not in line:
                    raise FormatError(f"expected 'name: ...', got {line!r}", lineno, source)
                name, body = line.split(":", 1)
                statements.append((name.strip(), body, lineno))
        elif section == "binaries":
            binaries.extend(line.split())
        else:
            raise FormatError(f"unexpected content {line!r}", lineno, source)
    if sense is None:
        raise FormatError("missing objective section", None, source)
    objective: tuple[tuple[str, int], ...] = ()
    constraints = []
    for name, body, lineno in statements:
        if name == "obj":
            objective = tuple((x, c) for c, x in _parse_terms(body, lineno, source))
            continue
        for op in ("<=", ">=", "="):
            if op in body:
                lhs, rhs = body.rsplit(op, 1)
                break
        else:
            raise FormatError(f"constraint {name} has no sense", lineno, source)
        try:
            rhs_value = int(rhs)
        except ValueError:
            raise FormatError(f"non-integer right-hand side in {name}", lineno, source) from None
        constraints.append(LpConstraint(name, tuple(_parse_terms(lhs, lineno, source)), op, rhs_value))
    return LpModel(objective, tuple(constraints), tuple(binaries), sense)


def read_lp_file(path: PathLike) -> LpModel:
    return parse_lp(Path(path).read_text(encoding="utf-8"), str(path))


def lp_conflict_graph(model: LpModel) -> tuple[Graph, tuple[str, ...]]:
    """Conflict graph of a set-packing model: variables sharing a row are adjacent."""
    index = {x: i for i, x in enumerate(model.binaries)}
    rows = [0] * len(index)
    for row in model.constraints:
        if row.sense != "<=" or row.rhs != 1 or any(c != 1 for c, _ in row.terms):
            raise ValueError(f"row {row.name} is not a set-packing row")
        mask = 0
        for _, x in row.terms:
            mask |= 1 << index[x]
        for _, x in row.terms:
            i = index[x]
            rows[i] |= mask & ~(1 << i)
    return Graph(len(rows), tuple(rows), "lp"), model.binaries


def solve_lp_model(model: LpModel, budget: SolveBudget = UNLIMITED) -> int:
    """Optimum of an all-ones set-packing model, solved as a stable-set problem."""
    if any(c != 1 for _, c in model.objective):
        raise ValueError("objective must have unit coefficients")
    g, _ = lp_conflict_graph(model)
    res = solve_mss(g, budget)
    return res.lower if res.optimal else -1


# -- colorings and layered sets --------------------------------------------


def coloring_text(c: PackingColoring, name: str | None = None) -> str:
    label = c.name if name is None else name
    lines = [f"# pcn {c.k} graph {label or '-'}"]
    lines.extend(f"{v + 1} {col}" for v, col in enumerate(c.colors))
    return "\n".join(lines) + "\n"


def write_coloring(c: PackingColoring, path: PathLike, name: str | None = None) -> None:
    _write(path, coloring_text(c, name))


def parse_coloring(text: str, n: int | None = None, source: str | None = None) -> PackingColoring:
    claimed = None
    name = ""
    colors: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts[:1] == ["pcn"]:
                if claimed is not None:
                    raise FormatError("second header line", lineno, source)
                if len(parts) < 4 or parts[2] != "graph":
                    raise FormatError("expected '# pcn K graph NAME'", lineno, source)
                try:
                    claimed = int(parts[1])
                except ValueError:
                    raise FormatError(f"non-integer color count {parts[1]!r}", lineno, source) from None
                name = " ".join(parts[3:])
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected 'VERTEX COLOR', got {line!r}", lineno, source)
        try:
            v, col = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"non-integer entry in {line!r}", lineno, source) from None
        if v < 1 or col < 1:
            raise FormatError("vertices and colors are 1-based", lineno, source)
        if v in colors:
            raise FormatError(f"vertex {v} colored twice", lineno, source)
        colors[v] = col
    if claimed is None:
        raise FormatError("missing '# pcn K graph NAME' header", None, source)
    size = len(colors) if n is None else n
    missing = [v for v in range(1, size + 1) if v not in colors]
    if missing or len(colors) != size:
        raise FormatError(f"coloring must cover vertices 1..{size} exactly (missing {missing[:5]})", None, source)
    result = PackingColoring(tuple(colors[v] for v in range(1, size + 1)), "" if name == "-" else name)
    if result.k != claimed:
        raise FormatError(f"header claims {claimed} colors, entries use {result.k}", None, source)
    return result


def read_coloring(path: PathLike, n: int | None = None) -> PackingColoring:
    return parse_coloring(Path(path).read_text(encoding="utf-8"), n, str(path))


def layered_set_text(ls: LayeredStableSet) -> str:
    lines = []
    for k in ls.layers:
        lines.append(f"# layer {k}")
        if (STAR, k) in ls.members:
            lines.append("*")
        lines.extend(str(v + 1) for v in ls.layer(k))
    return "\n".join(lines) + "\n"


def write_layered_set(ls: LayeredStableSet, path: PathLike) -> None:
    _write(path, layered_set_text(ls))


def parse_layered_set(text: str, n: int, source: str | None = None) -> LayeredStableSet:
    layers: list[int] = []
    members = set()
    starred = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) != 2 or parts[0] != "layer":
                raise FormatError(f"expected '# layer K', got {line!r}", lineno, source)
            try:
                k = int(parts[1])
            except ValueError:
                raise FormatError(f"non-integer layer {parts[1]!r}", lineno, source) from None
            if k in layers:
                raise FormatError(f"layer {k} listed twice", lineno, source)
            layers.append(k)
            continue
        if not layers:
            raise FormatError("vertex before any '# layer K' header", lineno, source)
        if line == "*":
            starred = True
            members.add((STAR, layers[-1]))
            continue
        try:
            v = int(line)
        except ValueError:
            raise FormatError(f"expected a vertex id, got {line!r}", lineno, source) from None
        if not 1 <= v <= n:
            raise FormatError(f"vertex {v} outside 1..{n}", lineno, source)
        members.add((v - 1, layers[-1]))
    return LayeredStableSet(n, tuple(sorted(layers)), starred, frozenset(members))


def read_layered_set(path: PathLike, n: int) -> LayeredStableSet:
    return parse_layered_set(Path(path).read_text(encoding="utf-8"), n, str(path))


# -- bounds table -----------------------------------------------------------

BoundsRow = tuple[int, int, "int | None", "int | None", str]
TABLE_HEADER = ("q", "m", "LB", "UB", "status")


def _cells(rows: Sequence[BoundsRow]) -> list[tuple[str, ...]]:
    out = []
    for q, m, lower, upper, status in rows:
        skipped = lower is None or upper is None
        out.append((
            str(q),
            str(m),
            "-" if skipped else str(lower),
            "-" if skipped else str(upper),
            "-" if skipped else str(getattr(status, "value", status)),
        ))
    return out


def render_bounds_table(rows: Sequence[BoundsRow]) -> str:
    """Aligned text table; skipped entries (too many vertices) show ``-``."""
    cells = [TABLE_HEADER, *_cells(rows)]
    widths = [max(len(r[i]) for r in cells) for i in range(len(TABLE_HEADER))]
    lines = []
    for r in cells:
        nums = "  ".join(cell.rjust(w) for cell, w in zip(r[:4], widths))
        lines.append(f"{nums}  {r[4]}".rstrip())
    return "\n".join(lines) + "\n"


def bounds_csv(rows: Sequence[BoundsRow]) -> str:
    buf = _io.StringIO()
    buf.write("q,m,lower,upper,status\n")
    for r in _cells(rows):
        buf.write(",".join(r) + "\n")
    return buf.getvalue()
