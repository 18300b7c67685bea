from collections import defaultdict


class Ledger:
    def __init__(self):
        self.entries = []
        self.balances = defaultdict(int)

    def post(self, debit, credit, cents, memo=""):
        if cents <= 0:
            raise ValueError("amount must be positive")
        self.entries.append((debit, credit, cents, memo))
        self.balances[debit] += cents
        self.balances[credit] -= cents

    def balance(self, account):
        return self.balances.get(account, 0)

    def trial_balance(self):
        return sum(self.balances.values()) == 0

    def accounts(self):
        return sorted(k for k, v in self.balances.items() if v != 0)

    def history(self, account):
        return [e for e in self.entries if account in (e[0], e[1])]

    def largest(self, n=5):
        return sorted(self.entries, key=lambda e: -e[2])[:n]
