#!/usr/bin/env python3
"""Independent reference values frozen into the C++ tests.

Run: python3 tests/oracles/derive.py
Uses plain IEEE doubles for generator replay and mpmath (50 digits) for the
interpolation goldens, so nothing here shares code with the library.
"""
import mpmath as mp

mp.mp.dps = 50
MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def uniform(self):
        return (self.next() >> 11) * 2.0 ** -53


def generate(count, extent, seed):
    g = SplitMix64(seed)
    pts = []
    for _ in range(count):
        x = g.uniform() * extent
        y = g.uniform() * extent
        v = 0.0 + (100.0 - 0.0) * g.uniform()
        pts.append((x, y, v))
    return pts


def bbox_area(pts):
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return (max(xs) - min(xs)) * (max(ys) - min(ys))


def decay(mu, a):
    mu = mp.mpf(mu)
    if mu <= mp.mpf("0.1"):
        return a[0]
    segs = [("0.1", 0, 1), ("0.3", 1, 2), ("0.5", 2, 3), ("0.7", 3, 4)]
    for lo, i, j in segs:
        lo = mp.mpf(lo)
        if mu <= lo + mp.mpf("0.2"):
            t = 5 * (mu - lo)
            return a[i] * (1 - t) + a[j] * t
    return a[4]


def aidw(samples, q, k, levels, area, rmin=0, rmax=2):
    d = sorted(mp.sqrt((mp.mpf(x) - q[0]) ** 2 + (mp.mpf(y) - q[1]) ** 2) for x, y, _ in samples)
    r_obs = sum(d[:k]) / k
    r_exp = 1 / (2 * mp.sqrt(mp.mpf(len(samples)) / area))
    R = r_obs / r_exp
    if R <= rmin:
        mu = mp.mpf(0)
    elif R >= rmax:
        mu = mp.mpf(1)
    else:
        mu = mp.mpf("0.5") - mp.mpf("0.5") * mp.cos(mp.pi / rmax * (R - rmin))
    alpha = decay(mu, [mp.mpf(v) for v in levels])
    num = den = mp.mpf(0)
    for x, y, z in samples:
        dist = mp.sqrt((mp.mpf(x) - q[0]) ** 2 + (mp.mpf(y) - q[1]) ** 2)
        if dist == 0:
            return r_exp, r_obs, R, mu, alpha, mp.mpf(z)
        w = dist ** (-alpha)
        num += w * z
        den += w
    return r_exp, r_obs, R, mu, alpha, num / den


def show(name, v):
    print(f"{name} = {mp.nstr(v, 17)}")


if __name__ == "__main__":
    g = SplitMix64(0)
    print("splitmix64(0) first three:", [hex(g.next()) for _ in range(3)])
    g = SplitMix64(42)
    print("splitmix64(42) first three:", [hex(g.next()) for _ in range(3)])

    pts = generate(1000, 10.0, 2024)
    print(f"bbox area, 1000 pts, extent 10, seed 2024 = {bbox_area(pts)!r}")
    pts = generate(10240, 100.0, 42)
    a = bbox_area(pts)
    print(f"bbox area, 10240 pts, extent 100, seed 42 = {a!r}")
    show("r_exp for that set", 1 / (2 * mp.sqrt(mp.mpf(10240) / mp.mpf(a))))

    grid = [(float(i), float(j), float(i * i + j)) for j in range(10) for i in range(10)]
    levels = [1.0, 1.5, 2.0, 2.5, 3.0]
    for q, k in (((mp.mpf("4.5"), mp.mpf("4.5")), 4), ((mp.mpf("4.25"), mp.mpf("6.5")), 5),
                 ((mp.mpf("0.5"), mp.mpf("0.25")), 10), ((mp.mpf("4.1"), mp.mpf("4")), 1),
                 ((mp.mpf("3.2"), mp.mpf("5.1")), 3), ((mp.mpf("4.3"), mp.mpf("4")), 1),
                 ((mp.mpf("4.4"), mp.mpf("4")), 2)):
        print(f"grid 10x10, A = 81, query {mp.nstr(q[0], 5)},{mp.nstr(q[1], 5)}, k = {k}")
        for name, v in zip(("r_exp", "r_obs", "R", "mu", "alpha", "value"), aidw(grid, q, k, levels, 81)):
            show("  " + name, v)
