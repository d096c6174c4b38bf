"""Reference values for the C++ tests, computed with mpmath and sympy.

Run: python3 tests/oracles/generate.py
The printed numbers are frozen into tests/*.cpp.
"""
import mpmath as mp
import sympy as sp

mp.mp.dps = 40


def show(name, v):
    if isinstance(v, mp.mpc):
        print(f"{name}: {mp.nstr(v.real, 17)} {mp.nstr(v.imag, 17)}")
    else:
        print(f"{name}: {mp.nstr(v, 17)}")


def scaled_k(nu, x):
    return mp.exp(mp.pi * abs(mp.im(nu)) / 2) * mp.besselk(nu, x)


def iwasawa_matrix(n, x, y):
    d = [mp.mpf(1)] * (n + 1)
    for i in range(1, n + 1):
        p = mp.mpf(1)
        for r in range(1, n - i + 1):
            p *= y[r - 1]
        d[i] = p
    z = mp.zeros(n, n)
    idx = 0
    xs = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            xs[(i, j)] = x[idx]
            idx += 1
    for j in range(1, n + 1):
        z[j - 1, j - 1] = d[j]
        for i in range(1, j):
            z[i - 1, j - 1] = xs[(i, j)] * d[j]
    return z


def lattice_points(n, r):
    import itertools
    for a in itertools.product(range(-r, r + 1), repeat=n):
        if any(a):
            yield mp.matrix(a)


def epstein(n, x, y, s, r=6):
    """det^s sum |a^T z|^{-ns} / zeta(ns) by the incomplete-gamma splitting."""
    z = iwasawa_matrix(n, x, y)
    q = z * z.T
    qi = q ** -1
    detq = mp.det(q)
    w = n * s / 2
    g = lambda a, t: mp.gammainc(a, t) * t ** (-a)
    acc = -1 / w - 1 / (mp.sqrt(detq) * (mp.mpf(n) / 2 - w))
    for a in lattice_points(n, r):
        acc += g(w, mp.pi * (a.T * q * a)[0])
        acc += g(mp.mpf(n) / 2 - w, mp.pi * (a.T * qi * a)[0]) / mp.sqrt(detq)
    total = acc * mp.pi ** w / mp.gamma(w)
    det = mp.det(z)
    return det ** s * total / mp.zeta(n * s)


def bump_mellin_at_one(lo, hi, power):
    t = sp.symbols("t", positive=True)
    lo, hi = sp.Rational(lo), sp.Rational(hi)
    return sp.integrate(((t - lo) * (hi - t)) ** power / t**2, (t, lo, hi))


if __name__ == "__main__":
    show("gamma(0.3+40i)", mp.gamma(mp.mpc(0.3, 40)))
    show("loggamma(0.3+40i)", mp.loggamma(mp.mpc(0.3, 40)))
    show("loggamma(0.5+500i)", mp.loggamma(mp.mpc(0.5, 500)))
    show("zeta(1.5+50i)", mp.zeta(mp.mpc(1.5, 50)))
    show("zeta(0.5+100i)", mp.zeta(mp.mpc(0.5, 100)))
    show("zeta(-2.5)", mp.zeta(-2.5))
    show("xi(0.5+20i)", mp.pi ** (-mp.mpc(0.5, 20) / 2) * mp.gamma(mp.mpc(0.5, 20) / 2) * mp.zeta(mp.mpc(0.5, 20)))
    show("sigma(12, 0.5i)", sum(mp.mpf(d) ** mp.mpc(0, 0.5) for d in range(1, 13) if 12 % d == 0))
    for nu, x in [(mp.mpc(0, 40), 200), (mp.mpc(0, 120), 200), (mp.mpc(0, 120), 1), (mp.mpc(0.3, 120), 10),
                  (mp.mpc(0, 5), 1), (mp.mpc(0.3, 5), 50), (mp.mpc(0.3, 40), 10), (mp.mpc(0, 40), 50)]:
        show(f"scaledK({mp.nstr(nu, 4)}, {x})", scaled_k(nu, x))
    show("E n=2 z=(0.3,1.7) s=1.3", epstein(2, [mp.mpf("0.3")], [mp.mpf("1.7")], mp.mpf("1.3")))
    show("E n=2 z=(0.3,1.7) s=1.4+3i", epstein(2, [mp.mpf("0.3")], [mp.mpf("1.7")], mp.mpc(1.4, 3)))
    show("E n=3 all-ones s=1.2", epstein(3, [1, 1, 1], [1, 1], mp.mpf("1.2"), r=4))
    show("E n=3 all-ones s=1.4+3i", epstein(3, [1, 1, 1], [1, 1], mp.mpc(1.4, 3), r=4))
    m = bump_mellin_at_one("11/10", "2", 4)
    show("bump(1.1,2,4) mellin at 1", mp.mpf(sp.N(m, 40)))
    show("same times 3/pi", mp.mpf(sp.N(m, 40)) * 3 / mp.pi)
