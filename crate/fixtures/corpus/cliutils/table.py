def column_widths(rows):
    widths = []
    for row in rows:
        for i, cell in enumerate(row):
            text = str(cell)
            if i >= len(widths):
                widths.append(len(text))
            else:
                widths[i] = max(widths[i], len(text))
    return widths


def format_table(rows, header=None, sep="  "):
    all_rows = ([header] if header else []) + [list(r) for r in rows]
    widths = column_widths(all_rows)
    lines = []
    for n, row in enumerate(all_rows):
        cells = [str(c).ljust(w) if not isinstance(c, (int, float)) else str(c).rjust(w) for c, w in zip(row, widths)]
        lines.append(sep.join(cells).rstrip())
        if header and n == 0:
            lines.append(sep.join("-" * w for w in widths))
    return "\n".join(lines)
