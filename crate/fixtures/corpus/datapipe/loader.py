import csv
import json


def read_csv(path, delimiter=","):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh, delimiter=delimiter)
        return [dict(row) for row in reader]


def read_jsonl(path):
    rows = []
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append(json.loads(line))
            except ValueError as exc:
                raise ValueError("line %d: %s" % (n, exc))
    return rows


def coerce(row, types):
    out = {}
    for key, value in row.items():
        cast = types.get(key, str)
        out[key] = cast(value) if value != "" else None
    return out
