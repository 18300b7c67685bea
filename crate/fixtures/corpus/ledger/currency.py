RATES = {"EUR": 1.0, "USD": 1.08, "GBP": 0.86, "JPY": 161.2}


def convert(amount, src, dst, rates=RATES):
    if src == dst:
        return amount
    return round(amount / rates[src] * rates[dst], 2)


def cross_rate(a, b, rates=RATES):
    return rates[b] / rates[a]


def normalise(holdings, base="EUR"):
    return sum(convert(v, k, base) for k, v in holdings.items())
