"""CSV, JSON and fixed-width text renderings of computed tables.

JSON output carries every integer as a decimal string so that no consumer
truncates the large moments to 64 bits.
"""

from __future__ import annotations

import csv
import io
import json
from math import ceil
from typing import Iterable, Sequence

from .charsums import KloostermanTable, ValueProfile
from .codes import WeightDistribution
from .field import FieldCtx
from .moments import MomentSeries
from .ortho import TraceProfile

__all__ = [
    "metadata", "to_csv", "to_json", "column_layout",
    "ksum_rows", "profile_rows", "trace_profile_rows", "wdist_rows", "moment_rows",
    "wdist_text", "moments_text",
]


def _version() -> str:
    from . import __version__
    return __version__


def metadata(ctx: FieldCtx, group: str | None, method: str | None) -> dict[str, object]:
    return {"r": ctx.r, "q": ctx.q, "poly_hex": ctx.poly_hex, "group": group,
            "method": method, "version": _version()}


def _hex(ctx: FieldCtx, x: int) -> str:
    return f"0x{x:0{max(1, (ctx.r + 3) // 4)}x}"


def ksum_rows(table: KloostermanTable | Iterable[tuple[int, int]], ctx: FieldCtx) -> list[tuple[str, int]]:
    items = table.items() if isinstance(table, KloostermanTable) else table
    return [(_hex(ctx, a), k) for a, k in items]


def profile_rows(prof: ValueProfile) -> list[tuple[int, int]]:
    return sorted(prof.multiplicities.items())


def trace_profile_rows(prof: TraceProfile, ctx: FieldCtx) -> list[tuple[str, int]]:
    return [(_hex(ctx, beta), c) for beta, c in prof.items()]


def wdist_rows(wd: WeightDistribution) -> list[tuple[int, int]]:
    return list(enumerate(wd.counts))


def moment_rows(ms: MomentSeries) -> list[tuple[int, int]]:
    return list(enumerate(ms.values))


def to_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def to_json(meta: dict[str, object], sections: dict[str, tuple[Sequence[str], Iterable[Sequence[object]]]]) -> str:
    """Each section becomes a list of objects keyed by the column names."""
    doc: dict[str, object] = {"metadata": meta}
    for name, (header, rows) in sections.items():
        doc[name] = [{k: (str(v) if isinstance(v, int) else v) for k, v in zip(header, row)}
                     for row in rows]
    return json.dumps(doc, indent=2) + "\n"


def column_layout(header: tuple[str, str], pairs: Sequence[tuple[int, int]], ncols: int) -> str:
    """Column-major layout with ``ncols`` (key, value) column pairs, right aligned."""
    nrows = ceil(len(pairs) / ncols)
    blocks = [pairs[i * nrows:(i + 1) * nrows] for i in range(ncols)]
    blocks = [b for b in blocks if b]
    widths = []
    for b in blocks:
        widths.append((max(len(header[0]), *(len(str(k)) for k, _ in b)),
                       max(len(header[1]), *(len(str(v)) for _, v in b))))
    lines = ["   ".join(f"{header[0]:>{wk}}  {header[1]:>{wv}}" for wk, wv in widths)]
    for i in range(nrows):
        cells = []
        for b, (wk, wv) in zip(blocks, widths):
            cells.append(f"{b[i][0]:>{wk}}  {b[i][1]:>{wv}}" if i < len(b) else "")
        lines.append("   ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def wdist_text(wd: WeightDistribution) -> str:
    return column_layout(("w", "frequency"), wdist_rows(wd), 4)


def moments_text(ms: MomentSeries) -> str:
    return column_layout(("h", "MK^h"), moment_rows(ms), 3)
