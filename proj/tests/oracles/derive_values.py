"""Independent high-precision evaluations used to freeze expected values in
the C++ unit and acceptance tests. Run with: python3 derive_values.py"""
import itertools
from math import comb

import mpmath as mp

mp.mp.dps = 40


def enum_corr(d, edges, theta, u, v):
    """Brute-force E[x_u x_v] for a zero-field model, edges = [(a, b, w)]."""
    num = mp.mpf(0)
    z = mp.mpf(0)
    for x in itertools.product((-1, 1), repeat=d):
        e = mp.e ** (theta * sum(w * x[a] * x[b] for a, b, w in edges))
        z += e
        num += x[u] * x[v] * e
    return num / z


def tau(n, d, delta):
    return mp.sqrt((4 * mp.log(d) + mp.log(1 / mp.mpf(delta))) / n)


def R(s, Th):
    Th = mp.mpf(Th)
    a = 2 * s * mp.e ** (-2 * (s - 1) * Th)
    return (mp.cosh(2 * s * Th) + a * mp.cosh(2 * (s - 1) * Th)) / (a * mp.cosh(2 * Th) + 1)


def q_low(s, Th):
    if s == 1:
        return mp.mpf(0)
    if s == 2:
        c = mp.cosh(4 * mp.mpf(Th))
        return (c - 1) / (c + 3)
    r = R(s, Th)
    return (r - 1) / (r + 1)


def q_high(s, Th):
    t = mp.tanh(mp.mpf(Th))
    return s * t * t / (1 - (s - 1) * t)


def cw_corr(m, theta):
    """Curie-Weiss edge correlation by magnetization sums."""
    theta = mp.mpf(theta)
    z = mp.mpf(0)
    num = mp.mpf(0)
    # pair (0,1) aligned vs anti-aligned, rest m-2 spins with k minus spins
    for a in (1, -1):
        for k in range(m - 1):
            # x0 = +1 by symmetry, x1 = a
            mag = 1 + a + (m - 2) - 2 * k
            e = comb(m - 2, k) * mp.e ** (theta * (mag * mag - m) / 2)
            z += e
            num += a * e
    return num / z


def T_general(th, Th, s):
    th, Th = mp.mpf(th), mp.mpf(Th)
    return mp.sinh(th / 4) ** 2 / (2 * s * Th * (3 * mp.e ** (2 * s * Th) + 1))


if __name__ == "__main__":
    p = lambda name, v: print(f"{name} = {mp.nstr(v, 17)}")
    p("tau(1000,100,0.05)", tau(1000, 100, 0.05))
    p("tau(4000,12,0.05)", tau(4000, 12, 0.05))
    p("tau(4000,10,0.05)", tau(4000, 10, 0.05))
    p("tanh(0.5)", mp.tanh(0.5))
    p("R(3,0.2)", R(3, 0.2))
    p("Qlow(3,0.2)", q_low(3, 0.2))
    p("Qhigh(3,0.2)", q_high(3, 0.2))
    p("T_general(1,1,2)", T_general(1, 1, 2))
    p("eps factor Theta=0.5", (2 - mp.tanh(0.5)) / (1 - mp.tanh(0.5)))
    p("atanh(e^-2/3)", mp.atanh(mp.e ** -2 / 3))
    p("monotone_ub(3,7,1e4,1e3,2)", mp.log(2 * 2 * 10**4 * 7 / mp.log(100)) / 3)
    p("monotone_lb(1e4,3000,3)", mp.atanh(mp.sqrt(mp.log(1000) / 10**4)))
    p("cycle upper log(4n/log1000)", mp.log(4 * 10**4 / mp.log(1000)))
    p("antiferro rhs s=100", 2 * mp.log(2 * 100 * 10**4 / mp.log(10**4 * 100)) / 84)
    p("detect lhs1", 50 * mp.log(10**4 / 2500) / 10)
    p("detect lhs2", 50 * mp.log(10**4 / 100) / (10 * mp.log(mp.sqrt(100))))
    p("triangle corr 0.5", enum_corr(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)], 0.5, 0, 1))
    p("triangle corr 0.3", enum_corr(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)], 0.3, 0, 1))
    p("saw triangle 0.3", mp.tanh(0.3) + mp.tanh(0.3) ** 2)
    p("biclique(4,3) bound th=3", 1 - 4 / (mp.e ** 12 + 2))
    p("cw m=3 th=0.5", cw_corr(3, 0.5))
    p("cw m=4 th=0.5 enum", enum_corr(4, [(a, b, 1) for a in range(4) for b in range(a + 1, 4)], 0.5, 0, 1))
    p("cw m=4 th=0.5 sums", cw_corr(4, 0.5))
    p("1+tanh^2(0.5)", 1 + mp.tanh(0.5) ** 2)
    # clique test regime search: m=4, s=3, theta=Theta
    for n in (4000, 10000, 20000, 50000):
        t2 = 2 * tau(n, 12, 0.05)
        ok = [th / 100 for th in range(1, 300) if cw_corr(4, th / 100) - min(q_low(3, th / 100), q_high(3, th / 100) if 2 * mp.tanh(th / 100) < 1 else 1) >= t2]
        print("clique m=4 s=3 n=", n, "2tau=", mp.nstr(t2, 6), "theta ok:", (ok[0], ok[-1]) if ok else None)
