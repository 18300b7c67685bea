import csv
import io


def monthly_totals(entries):
    totals = {}
    for date, amount in entries:
        key = date[:7]
        totals[key] = totals.get(key, 0) + amount
    return dict(sorted(totals.items()))


def to_csv(rows, header):
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def format_cents(cents):
    sign = "-" if cents < 0 else ""
    cents = abs(cents)
    return "%s%d.%02d" % (sign, cents // 100, cents % 100)


def summary(ledger):
    lines = []
    for acct in ledger.accounts():
        lines.append("%-20s %12s" % (acct, format_cents(ledger.balance(acct))))
    lines.append("-" * 33)
    lines.append("%-20s %12s" % ("total", format_cents(sum(ledger.balance(a) for a in ledger.accounts()))))
    return "\n".join(lines)
