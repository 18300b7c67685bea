import random


def reservoir(stream, k, seed=None):
    rng = random.Random(seed)
    sample = []
    for i, item in enumerate(stream):
        if i < k:
            sample.append(item)
        else:
            j = rng.randint(0, i)
            if j < k:
                sample[j] = item
    return sample


def split(rows, ratio=0.8, seed=0):
    rows = list(rows)
    random.Random(seed).shuffle(rows)
    cut = int(len(rows) * ratio)
    return rows[:cut], rows[cut:]


def stratified(rows, key, per_group, seed=0):
    rng = random.Random(seed)
    groups = {}
    for r in rows:
        groups.setdefault(r[key], []).append(r)
    out = []
    for k in sorted(groups):
        g = groups[k]
        out.extend(rng.sample(g, min(per_group, len(g))))
    return out
