def dedupe(items, key=None):
    seen = set()
    out = []
    for item in items:
        marker = key(item) if key else item
        if marker in seen:
            continue
        seen.add(marker)
        out.append(item)
    return out


def duplicates(items):
    seen, dups = set(), set()
    for item in items:
        (dups if item in seen else seen).add(item)
    return sorted(dups)


def merge_records(a, b):
    merged = dict(a)
    for k, v in b.items():
        if merged.get(k) in (None, "") and v not in (None, ""):
            merged[k] = v
    return merged
