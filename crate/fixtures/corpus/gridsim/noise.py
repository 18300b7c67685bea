import math
import random


def smoothstep(t):
    return t * t * (3 - 2 * t)


def lerp(a, b, t):
    return a + (b - a) * t


def value_noise(x, seed=0):
    i = int(math.floor(x))
    f = x - i
    r0 = random.Random(seed * 7919 + i).random()
    r1 = random.Random(seed * 7919 + i + 1).random()
    return lerp(r0, r1, smoothstep(f))


def fractal(x, octaves=4, seed=0):
    total, amp, freq, norm = 0.0, 1.0, 1.0, 0.0
    for _ in range(octaves):
        total += value_noise(x * freq, seed) * amp
        norm += amp
        amp *= 0.5
        freq *= 2
    return total / norm
