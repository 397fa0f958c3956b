"""Text tables, JSON payloads and figure files for the CLI.

Tables are plain aligned text; JSON uses the stable key names
``total_degree``, ``bar_degree``, ``dim``, ``product`` and
``valid_up_to``. Figures are written with matplotlib (Agg backend,
imported lazily) next to whatever path the caller hands over.
"""

from __future__ import annotations

from .linalg import Q
from .tor import OracleResult, TorResult


def aligned_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt(cells):
        return "  ".join(cell.ljust(w) for cell, w in zip(cells, widths)).rstrip()
    lines = [fmt(headers), fmt(["-" * w for w in widths])]
    lines.extend(fmt(row) for row in rows)
    return "\n".join(lines)


def coeff_str(c: Q) -> str:
    return str(c)


def combo_str(terms: dict, label) -> str:
    """Render a sparse linear combination with labeled basis elements."""
    if not terms:
        return "0"
    parts = []
    for key in sorted(terms):
        c = terms[key]
        lbl = label(key)
        if c == 1:
            parts.append(lbl)
        elif c == -1:
            parts.append(f"-{lbl}")
        else:
            parts.append(f"{c}*{lbl}")
    return " + ".join(parts).replace("+ -", "- ")


def bigraded_grid(cells: dict[tuple[int, int], int], max_total: int) -> str:
    """Grid of counts, bar degree down the side, total degree across."""
    if not cells:
        return "(empty)"
    bars = sorted({b for b, _ in cells})
    headers = ["bar \\ total"] + [str(n) for n in range(max_total + 1)]
    rows = []
    for b in reversed(bars):
        row = [str(b)]
        for n in range(max_total + 1):
            v = cells.get((b, n), 0)
            row.append(str(v) if v else ".")
        rows.append(row)
    return aligned_table(headers, rows)


def dims_json(dims: list[int]) -> list[dict]:
    return [{"total_degree": n, "dim": d} for n, d in enumerate(dims)]


def bigraded_json(cells: dict[tuple[int, int], int] | None, tensor_keyed: bool) -> list[dict] | None:
    """Cells keyed (bar, tensor) when tensor_keyed else (bar, total)."""
    if cells is None:
        return None
    out = []
    for (b, m), d in sorted(cells.items()):
        total = m + b if tensor_keyed else m
        entry = {"bar_degree": b, "total_degree": total, "dim": d}
        if tensor_keyed:
            entry["tensor_degree"] = m
        out.append(entry)
    return out


def products_json(tor: TorResult) -> list[dict]:
    out = []
    for ((p, i), (q, j)), value in sorted(tor.products.items()):
        out.append(
            {
                "left": tor.class_label(p, i),
                "right": tor.class_label(q, j),
                "terms": [
                    {"label": tor.class_label(s, l), "coeff": coeff_str(c)}
                    for (s, l), c in sorted(value.items())
                ],
            }
        )
    for (p, i), (q, j) in sorted(tor.unknown_products):
        out.append(
            {
                "left": tor.class_label(p, i),
                "right": tor.class_label(q, j),
                "terms": None,
            }
        )
    return out


def product_lines(tor: TorResult, include_units: bool = False) -> list[str]:
    lines = []
    for ((p, i), (q, j)), value in sorted(tor.products.items()):
        if not include_units and (p == 0 or q == 0):
            continue
        rendered = combo_str(value, lambda key: tor.class_label(*key))
        lines.append(f"{tor.class_label(p, i)} * {tor.class_label(q, j)} = {rendered}")
    for (p, i), (q, j) in sorted(tor.unknown_products):
        if not include_units and (p == 0 or q == 0):
            continue
        lines.append(
            f"{tor.class_label(p, i)} * {tor.class_label(q, j)} = unknown (beyond the window)"
        )
    return lines


def oracle_verdict(tor: TorResult, oracle: OracleResult, agrees: bool) -> str:
    lines = ["independent Koszul oracle:"]
    bound = min(tor.valid_up_to, oracle.valid_up_to)
    lines.append(
        "  oracle dims by degree: " + ", ".join(str(d) for d in oracle.total_dims[: bound + 1])
    )
    lines.append(f"  agreement with the bar computation: {'exact' if agrees else 'MISMATCH'}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# figures


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_dims_figure(dims: list[int], valid_up_to: int, path: str, title: str) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 3.2))
    degrees = list(range(len(dims)))
    ax.bar(degrees, dims, color="#33557a")
    if valid_up_to < len(dims) - 1:
        ax.axvline(valid_up_to + 0.5, color="#aa3333", linestyle="--", linewidth=1)
        ax.text(valid_up_to + 0.6, max(dims + [1]) * 0.9, "window edge", fontsize=8, color="#aa3333")
    ax.set_xlabel("total degree")
    ax.set_ylabel("dim")
    ax.set_title(title, fontsize=10)
    ax.set_xticks(degrees)
    ax.yaxis.get_major_locator().set_params(integer=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_bigraded_figure(
    cells: dict[tuple[int, int], int], path: str, title: str, max_total: int
) -> None:
    """Second-page style chart: total degree across, bar degree up."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 3.6))
    for (b, n), v in sorted(cells.items()):
        if v:
            ax.scatter([n], [b], s=220, color="#33557a", zorder=2)
            ax.annotate(
                str(v), (n, b), color="white", ha="center", va="center", fontsize=8, zorder=3
            )
    bars = [b for b, _ in cells] or [0]
    ax.set_xlim(-0.5, max_total + 0.5)
    ax.set_ylim(min(bars) - 0.5, 0.5)
    ax.set_xticks(range(max_total + 1))
    ax.set_yticks(range(min(bars), 1))
    ax.grid(True, linestyle=":", linewidth=0.5, zorder=1)
    ax.set_xlabel("total degree")
    ax.set_ylabel("bar degree")
    ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_compare_figure(
    dims1: list[int], dims2: list[int], labels: tuple[str, str], path: str, title: str
) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 3.2))
    degrees = list(range(len(dims1)))
    width = 0.4
    ax.bar([d - width / 2 for d in degrees], dims1, width=width, label=labels[0], color="#33557a")
    ax.bar([d + width / 2 for d in degrees], dims2, width=width, label=labels[1], color="#b07a33")
    ax.set_xlabel("total degree")
    ax.set_ylabel("dim")
    ax.set_xticks(degrees)
    ax.yaxis.get_major_locator().set_params(integer=True)
    ax.legend(fontsize=8)
    ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
