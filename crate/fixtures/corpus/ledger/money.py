from decimal import Decimal, ROUND_HALF_EVEN

CENTS = Decimal("0.01")


class Money:
    def __init__(self, amount, currency="EUR"):
        self.amount = Decimal(str(amount)).quantize(CENTS, rounding=ROUND_HALF_EVEN)
        self.currency = currency.upper()

    def __add__(self, other):
        self._check(other)
        return Money(self.amount + other.amount, self.currency)

    def __sub__(self, other):
        self._check(other)
        return Money(self.amount - other.amount, self.currency)

    def __mul__(self, factor):
        return Money(self.amount * Decimal(str(factor)), self.currency)

    def __neg__(self):
        return Money(-self.amount, self.currency)

    def __eq__(self, other):
        return isinstance(other, Money) and (self.amount, self.currency) == (other.amount, other.currency)

    def __repr__(self):
        return "Money(%s, %r)" % (self.amount, self.currency)

    def _check(self, other):
        if other.currency != self.currency:
            raise ValueError("currency mismatch: %s vs %s" % (self.currency, other.currency))

    def split(self, parts):
        base = (self.amount / parts).quantize(CENTS)
        shares = [base] * parts
        shares[-1] += self.amount - base * parts
        return [Money(s, self.currency) for s in shares]
