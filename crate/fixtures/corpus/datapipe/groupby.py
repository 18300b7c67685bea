from collections import defaultdict


def group_by(rows, key):
    groups = defaultdict(list)
    for row in rows:
        groups[row[key]].append(row)
    return dict(groups)


def aggregate(rows, key, field, fn=sum):
    return {k: fn([r[field] for r in grp]) for k, grp in group_by(rows, key).items()}


def count_by(rows, key):
    counts = {}
    for row in rows:
        counts[row[key]] = counts.get(row[key], 0) + 1
    return sorted(counts.items(), key=lambda kv: (-kv[1], str(kv[0])))


def pivot(rows, index, column, value):
    table = {}
    for r in rows:
        table.setdefault(r[index], {})[r[column]] = r[value]
    cols = sorted({r[column] for r in rows})
    return cols, [[k] + [table[k].get(c) for c in cols] for k in sorted(table)]
