"""alist import/export (MacKay convention).

Layout: line 1 "N M" (columns, rows); line 2 max column/row weights;
then per-column weights, per-row weights; then one line per column of
1-based row indices and one line per row of 1-based column indices,
each zero-padded to the declared maximum. Export is canonical
(single spaces, trailing newline) so round-trips are byte-identical.
"""

from __future__ import annotations

from .matrices import SparseBinaryMatrix


def to_alist(m: SparseBinaryMatrix) -> str:
    n, rows = m.cols, m.rows
    col_w = m.column_weights()
    row_w = m.row_weights()
    max_c = max(col_w, default=0)
    max_r = max(row_w, default=0)
    lines = [f"{n} {rows}", f"{max_c} {max_r}"]
    lines.append(" ".join(str(w) for w in col_w))
    lines.append(" ".join(str(w) for w in row_w))
    for rs in m.col_rows:
        padded = [str(r + 1) for r in rs] + ["0"] * (max_c - len(rs))
        lines.append(" ".join(padded))
    for cs in m.row_cols:
        padded = [str(c + 1) for c in cs] + ["0"] * (max_r - len(cs))
        lines.append(" ".join(padded))
    return "\n".join(lines) + "\n"


def from_alist(text: str) -> SparseBinaryMatrix:
    raw = [ln.split() for ln in text.splitlines()]
    rows_tok = [r for r in raw if r]
    if len(rows_tok) < 4:
        raise ValueError("alist: truncated header")
    try:
        n, m = (int(x) for x in rows_tok[0][:2])
        max_c, max_r = (int(x) for x in rows_tok[1][:2])
        col_w = [int(x) for x in rows_tok[2]]
        row_w = [int(x) for x in rows_tok[3]]
    except (ValueError, IndexError) as exc:
        raise ValueError(f"alist: bad header field: {exc}") from None
    if len(col_w) != n or len(row_w) != m:
        raise ValueError("alist: weight line length mismatch")
    # an all-zero matrix pads every index line down to nothing; its
    # index sections are blank and carry no tokens at all
    n_lines = n if max_c > 0 else 0
    m_lines = m if max_r > 0 else 0
    if len(rows_tok) < 4 + n_lines + m_lines:
        raise ValueError("alist: missing index lines")
    col_rows = []
    for j in range(n):
        toks = rows_tok[4 + j] if max_c > 0 else []
        entries = [int(x) - 1 for x in toks if x != "0"]
        if len(entries) != col_w[j]:
            raise ValueError(f"alist: column {j} weight mismatch")
        if any(r < 0 or r >= m for r in entries):
            raise ValueError(f"alist: column {j} row index out of range")
        col_rows.append(tuple(entries))
    mat = SparseBinaryMatrix(m, n, col_rows)
    # the row-index section must mirror the column section
    for i in range(m):
        toks = rows_tok[4 + n_lines + i] if max_r > 0 else []
        entries = tuple(sorted(int(x) - 1 for x in toks if x != "0"))
        if entries != mat.row_cols[i]:
            raise ValueError(f"alist: row {i} disagrees with column data")
    return mat


def write_alist(path, m: SparseBinaryMatrix) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(to_alist(m))


def read_alist(path) -> SparseBinaryMatrix:
    with open(path, "r", encoding="utf-8") as f:
        return from_alist(f.read())
