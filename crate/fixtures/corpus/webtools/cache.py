import time
from collections import OrderedDict


class LRUCache:
    def __init__(self, capacity=128, ttl=None, clock=time.monotonic):
        self.capacity = capacity
        self.ttl = ttl
        self.clock = clock
        self.data = OrderedDict()
        self.hits = self.misses = 0

    def get(self, key, default=None):
        item = self.data.get(key)
        if item is None or (self.ttl and self.clock() - item[1] > self.ttl):
            self.misses += 1
            self.data.pop(key, None)
            return default
        self.data.move_to_end(key)
        self.hits += 1
        return item[0]

    def put(self, key, value):
        self.data[key] = (value, self.clock())
        self.data.move_to_end(key)
        while len(self.data) > self.capacity:
            self.data.popitem(last=False)

    def hit_rate(self):
        total = self.hits + self.misses
        return self.hits / total if total else 0.0


def memoize(fn):
    cache = {}

    def wrapper(*args):
        if args not in cache:
            cache[args] = fn(*args)
        return cache[args]
    return wrapper
