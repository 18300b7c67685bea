def neighbours(grid, r, c):
    rows, cols = len(grid), len(grid[0])
    total = 0
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if dr == 0 and dc == 0:
                continue
            total += grid[(r + dr) % rows][(c + dc) % cols]
    return total


def step(grid):
    out = []
    for r, row in enumerate(grid):
        new = []
        for c, alive in enumerate(row):
            n = neighbours(grid, r, c)
            new.append(1 if n == 3 or (alive and n == 2) else 0)
        out.append(new)
    return out


def run(grid, generations):
    for _ in range(generations):
        grid = step(grid)
    return grid


def population(grid):
    return sum(map(sum, grid))


def render(grid):
    return "\n".join("".join("#" if x else "." for x in row) for row in grid)
