import time


class TokenBucket:
    def __init__(self, rate, burst, clock=time.monotonic):
        self.rate = float(rate)
        self.burst = burst
        self.tokens = float(burst)
        self.clock = clock
        self.last = clock()

    def allow(self, cost=1):
        now = self.clock()
        self.tokens = min(self.burst, self.tokens + (now - self.last) * self.rate)
        self.last = now
        if self.tokens >= cost:
            self.tokens -= cost
            return True
        return False

    def wait_time(self, cost=1):
        missing = cost - self.tokens
        return max(0.0, missing / self.rate)
