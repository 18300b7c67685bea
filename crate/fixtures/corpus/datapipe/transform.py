def select(rows, *fields):
    return [{f: r.get(f) for f in fields} for r in rows]


def rename(rows, mapping):
    return [{mapping.get(k, k): v for k, v in r.items()} for r in rows]


def where(rows, **conditions):
    return [r for r in rows if all(r.get(k) == v for k, v in conditions.items())]


def flatten(record, prefix="", sep="."):
    out = {}
    for k, v in record.items():
        name = prefix + sep + k if prefix else k
        if isinstance(v, dict):
            out.update(flatten(v, name, sep))
        else:
            out[name] = v
    return out


def chunked(seq, size):
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def window(seq, n):
    return [seq[i:i + n] for i in range(max(0, len(seq) - n + 1))]
