def index_by(rows, key):
    return {r[key]: r for r in rows}


def inner_join(left, right, key):
    idx = index_by(right, key)
    return [dict(l, **idx[l[key]]) for l in left if l[key] in idx]


def left_join(left, right, key, fill=None):
    idx = index_by(right, key)
    fields = set().union(*(r.keys() for r in right)) if right else set()
    out = []
    for l in left:
        match = idx.get(l[key])
        row = dict(l)
        for f in fields:
            row.setdefault(f, match[f] if match else fill)
        out.append(row)
    return out
