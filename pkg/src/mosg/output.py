"""CSV / key-value writers. All numbers use 12 significant digits, LF endings."""
from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Iterable, Sequence


def fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int,)) and not isinstance(v, bool):
        return str(v)
    return f"{float(v):.12g}"


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def kv_text(pairs: Iterable[tuple]) -> str:
    return "".join(f"{k} = {fmt(v)}\n" for k, v in pairs)


def atomic_write(path, text: str) -> Path:
    """Write via a temp file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


SNAPSHOT_HEADER = ("x", "re_e1", "im_e1", "re_e2", "im_e2", "abs2_e1", "abs2_e2")
TRAJECTORY_HEADER = ("t", "center1", "center2", "width1", "width2", "norm1", "norm2")


def snapshot_name(t: float) -> str:
    return f"snap_t{t:.6g}.csv"


def snapshot_text(state) -> str:
    x = state.grid.x
    e1, e2 = state.e1, state.e2
    rows = zip(x, e1.real, e1.imag, e2.real, e2.imag, abs(e1) ** 2, abs(e2) ** 2)
    return csv_text(SNAPSHOT_HEADER, rows)
