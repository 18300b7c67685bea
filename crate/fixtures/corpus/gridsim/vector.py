import math


class Vec2:
    __slots__ = ("x", "y")

    def __init__(self, x=0.0, y=0.0):
        self.x = x
        self.y = y

    def __add__(self, o):
        return Vec2(self.x + o.x, self.y + o.y)

    def __sub__(self, o):
        return Vec2(self.x - o.x, self.y - o.y)

    def __mul__(self, k):
        return Vec2(self.x * k, self.y * k)

    def dot(self, o):
        return self.x * o.x + self.y * o.y

    def length(self):
        return math.sqrt(self.dot(self))

    def normalized(self):
        n = self.length()
        return Vec2(self.x / n, self.y / n) if n else Vec2()

    def angle(self):
        return math.atan2(self.y, self.x)

    def rotate(self, theta):
        c, s = math.cos(theta), math.sin(theta)
        return Vec2(self.x * c - self.y * s, self.x * s + self.y * c)

    def __repr__(self):
        return "Vec2(%.3f, %.3f)" % (self.x, self.y)
