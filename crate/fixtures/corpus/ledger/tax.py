BRACKETS = [(10000, 0.0), (40000, 0.2), (100000, 0.4), (None, 0.45)]


def income_tax(income):
    tax = 0.0
    lower = 0
    for upper, rate in BRACKETS:
        if upper is None or income <= upper:
            tax += (income - lower) * rate
            return round(tax, 2)
        tax += (upper - lower) * rate
        lower = upper
    return round(tax, 2)


def vat(net, rate=0.19):
    return round(net * rate, 2), round(net * (1 + rate), 2)


def effective_rate(income):
    return income_tax(income) / income if income else 0.0
