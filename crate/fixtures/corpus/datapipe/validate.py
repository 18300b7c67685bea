import re

EMAIL = re.compile(r"^[^@\s]+@[^@\s]+\.[a-z]{2,}$", re.I)


def required(row, fields):
    return [f for f in fields if row.get(f) in (None, "")]


def in_range(value, lo=None, hi=None):
    if lo is not None and value < lo:
        return False
    if hi is not None and value > hi:
        return False
    return True


def valid_email(text):
    return bool(EMAIL.match(text.strip()))


def check_rows(rows, fields):
    problems = []
    for n, row in enumerate(rows, 1):
        missing = required(row, fields)
        if missing:
            problems.append((n, "missing: " + ", ".join(missing)))
        if "email" in row and row["email"] and not valid_email(row["email"]):
            problems.append((n, "bad email %r" % row["email"]))
    return problems
