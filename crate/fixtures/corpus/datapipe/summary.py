def describe(values):
    values = [v for v in values if v is not None]
    if not values:
        return {"count": 0}
    values = sorted(values)
    n = len(values)
    total = sum(values)
    return {
        "count": n,
        "min": values[0],
        "max": values[-1],
        "mean": total / n,
        "median": values[n // 2] if n % 2 else (values[n // 2 - 1] + values[n // 2]) / 2,
    }


def histogram(values, bins=10):
    lo, hi = min(values), max(values)
    width = (hi - lo) / bins or 1
    counts = [0] * bins
    for v in values:
        counts[min(bins - 1, int((v - lo) / width))] += 1
    return counts


def normalize(values):
    lo, hi = min(values), max(values)
    span = hi - lo
    return [0.0 if span == 0 else (v - lo) / span for v in values]
