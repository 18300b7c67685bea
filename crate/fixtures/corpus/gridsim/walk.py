import random


def random_walk(steps, seed=None):
    rng = random.Random(seed)
    x = y = 0
    path = [(x, y)]
    for _ in range(steps):
        dx, dy = rng.choice([(1, 0), (-1, 0), (0, 1), (0, -1)])
        x, y = x + dx, y + dy
        path.append((x, y))
    return path


def displacement(path):
    (x0, y0), (x1, y1) = path[0], path[-1]
    return ((x1 - x0) ** 2 + (y1 - y0) ** 2) ** 0.5


def visited(path):
    return len(set(path))


def mean_displacement(steps, trials, seed=0):
    rng = random.Random(seed)
    return sum(displacement(random_walk(steps, rng.random())) for _ in range(trials)) / trials
