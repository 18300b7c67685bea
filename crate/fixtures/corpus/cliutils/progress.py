import sys
import time


class Progress:
    def __init__(self, total, width=40, stream=sys.stderr):
        self.total = max(1, total)
        self.width = width
        self.stream = stream
        self.done = 0
        self.started = time.time()

    def update(self, n=1):
        self.done = min(self.total, self.done + n)
        self.draw()

    def bar(self):
        filled = int(self.width * self.done / self.total)
        return "[" + "#" * filled + " " * (self.width - filled) + "]"

    def eta(self):
        elapsed = time.time() - self.started
        if not self.done:
            return float("inf")
        return elapsed * (self.total - self.done) / self.done

    def draw(self):
        pct = 100 * self.done // self.total
        self.stream.write("\r%s %3d%% eta %5.1fs" % (self.bar(), pct, self.eta()))
        self.stream.flush()
