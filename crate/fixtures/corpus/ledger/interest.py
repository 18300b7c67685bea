def simple_interest(principal, rate, years):
    return principal * rate * years


def compound(principal, rate, years, periods=12):
    return principal * (1 + rate / periods) ** (periods * years)


def payment(principal, rate, months):
    if rate == 0:
        return principal / months
    r = rate / 12
    return principal * r / (1 - (1 + r) ** -months)


def schedule(principal, rate, months):
    pay = payment(principal, rate, months)
    rows = []
    balance = principal
    for m in range(1, months + 1):
        interest = balance * rate / 12
        balance = balance + interest - pay
        rows.append((m, round(pay, 2), round(interest, 2), round(max(balance, 0), 2)))
    return rows
