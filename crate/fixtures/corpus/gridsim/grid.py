class Grid:
    def __init__(self, width, height, fill=0):
        self.width = width
        self.height = height
        self.cells = [fill] * (width * height)

    def index(self, x, y):
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError((x, y))
        return y * self.width + x

    def get(self, x, y):
        return self.cells[self.index(x, y)]

    def set(self, x, y, value):
        self.cells[self.index(x, y)] = value

    def row(self, y):
        start = y * self.width
        return self.cells[start:start + self.width]

    def column(self, x):
        return self.cells[x::self.width]

    def flood(self, x, y, value):
        target = self.get(x, y)
        if target == value:
            return 0
        stack = [(x, y)]
        count = 0
        while stack:
            cx, cy = stack.pop()
            if 0 <= cx < self.width and 0 <= cy < self.height and self.get(cx, cy) == target:
                self.set(cx, cy, value)
                count += 1
                stack.extend([(cx + 1, cy), (cx - 1, cy), (cx, cy + 1), (cx, cy - 1)])
        return count
