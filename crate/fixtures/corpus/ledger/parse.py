import datetime


def parse_amount(text):
    text = text.strip().replace(",", "")
    negative = text.startswith("(") and text.endswith(")")
    if negative:
        text = text[1:-1]
    whole, _, frac = text.partition(".")
    cents = int(whole or "0") * 100 + int((frac + "00")[:2])
    return -cents if negative else cents


def parse_date(text):
    for fmt in ("%Y-%m-%d", "%d/%m/%Y", "%d.%m.%Y"):
        try:
            return datetime.datetime.strptime(text.strip(), fmt).date()
        except ValueError:
            continue
    raise ValueError("unrecognised date: %r" % text)


def parse_line(line, sep=";"):
    date, memo, amount = [p.strip() for p in line.split(sep)]
    return parse_date(date), memo, parse_amount(amount)


def parse_statement(lines):
    return [parse_line(l) for l in lines if l.strip() and not l.startswith("#")]
