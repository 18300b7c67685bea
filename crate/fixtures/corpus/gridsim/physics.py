G = 9.81


def projectile(v0, angle, dt=0.01):
    import math
    vx, vy = v0 * math.cos(angle), v0 * math.sin(angle)
    x = y = t = 0.0
    points = []
    while y >= 0:
        points.append((round(x, 3), round(y, 3)))
        x += vx * dt
        vy -= G * dt
        y += vy * dt
        t += dt
    return points, t


def kinetic(m, v):
    return 0.5 * m * v ** 2


def potential(m, h):
    return m * G * h


def spring(k, x):
    return -k * x


def euler(f, y0, t0, t1, n):
    h = (t1 - t0) / n
    y, t = y0, t0
    for _ in range(n):
        y = y + h * f(t, y)
        t = t + h
    return y
