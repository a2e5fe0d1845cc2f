"""High-precision reference values frozen into the Rust test-suite.

Run with `python3 derive_values.py`; requires mpmath. Every number printed
here is computed independently of the Rust implementation (direct series,
direct products, 40-digit arithmetic).
"""
import mpmath as mp

mp.mp.dps = 40


def j(s, z):
    return mp.nsum(lambda k: z**k / (mp.factorial(k) * mp.gamma(2 * s + 1 + k)), [0, mp.inf])


def big_j(sig, zp, z):
    pre = mp.pi / mp.sin(2 * mp.pi * sig)
    m11 = zp * j(sig + 0.5, z) * j(-sig, zp) - j(sig, z) * j(-sig - 0.5, zp)
    m12 = 1j * zp * j(-sig - 0.5, z) * j(-sig, zp) - 1j * z * j(-sig, z) * j(-sig - 0.5, zp)
    m21 = 1j * j(sig + 0.5, z) * j(sig, zp) - 1j * j(sig, z) * j(sig + 0.5, zp)
    m22 = z * j(-sig, z) * j(sig + 0.5, zp) - j(-sig - 0.5, z) * j(sig, zp)
    return [[pre * m11, pre * m12], [pre * m21, pre * m22]]


def kernel_a(nu, eta, zp, z):
    sig = nu - mp.mpf(1) / 2
    bj = big_j(sig, zp, z)
    out = [[0, 0], [0, 0]]
    for a, sa in enumerate((1, -1)):
        for b, sb in enumerate((1, -1)):
            m = (bj[a][b] - (1 if a == b else 0)) / (z - zp)
            out[a][b] = m * mp.exp(1j * mp.pi * (2 * eta - sig) * (sb - sa))
    return out


def kernel_d(nu, t, zp, z):
    sig = nu - mp.mpf(1) / 2
    bj = big_j(sig, t / zp, t / z)
    m = [[(1 if a == b else 0) - bj[a][b] for b in range(2)] for a in range(2)]
    # sigma_y M sigma_y = [[m22, -m21], [-m12, m11]]
    sy = [[m[1][1], -m[1][0]], [-m[0][1], m[0][0]]]
    out = [[0, 0], [0, 0]]
    for a, sa in enumerate((1, -1)):
        for b, sb in enumerate((1, -1)):
            out[a][b] = sy[a][b] / (z - zp) * mp.exp(1j * mp.pi * sig * (sa - sb)) * t ** (nu * (sa - sb))
    return out


def show(name, v):
    v = mp.mpc(v)
    print(f"{name}: ({mp.nstr(v.real, 20)}, {mp.nstr(v.imag, 20)})")


show("ln_gamma(0.3+0.4i)", mp.log(mp.gamma(mp.mpc(0.3, 0.4))))
show("j(1/2, 1)", j(mp.mpf(1) / 2, 1))
show("j(0.2, 0.3+0.1i)", j(mp.mpf("0.2"), mp.mpc("0.3", "0.1")))
bj = big_j(mp.mpc("0.2", "-0.3"), mp.mpf("0.1"), mp.mpf("0.4"))
for a in range(2):
    for b in range(2):
        show(f"J(0.2-0.3i; 0.1, 0.4)[{a}{b}]", bj[a][b])
ka = kernel_a(mp.mpf("0.37"), mp.mpf("0.11"), mp.mpc("0.3", "0.2"), mp.mpc("-0.4", "0.5"))
for a in range(2):
    for b in range(2):
        show(f"a(0.37,0.11; 0.3+0.2i, -0.4+0.5i)[{a}{b}]", ka[a][b])
kd = kernel_d(mp.mpf("0.37"), mp.mpf("0.05"), mp.expjpi(mp.mpf("0.3")), mp.expjpi(mp.mpf("-0.7")))
for a in range(2):
    for b in range(2):
        show(f"d(0.37; t=0.05; e^(0.3 i pi), e^(-0.7 i pi))[{a}{b}]", kd[a][b])


def partitions(n, maxp=None):
    if maxp is None:
        maxp = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, maxp), 0, -1):
        for r in partitions(n - k, k):
            yield (k,) + r


def conj(y):
    return tuple(sum(1 for r in y if r > j_) for j_ in range(y[0])) if y else ()


def zbif(nu, yp, ym):
    def arm(y, i, jj):
        return (y[i - 1] if i <= len(y) else 0) - jj

    def leg(y, i, jj):
        c = conj(y)
        return (c[jj - 1] if jj <= len(c) else 0) - i

    r = mp.mpf(1)
    for i, row in enumerate(yp, 1):
        for jj in range(1, row + 1):
            r *= nu + 1 + arm(yp, i, jj) + leg(ym, i, jj)
    for i, row in enumerate(ym, 1):
        for jj in range(1, row + 1):
            r *= nu - 1 - arm(ym, i, jj) - leg(yp, i, jj)
    return r


def zinst_coeff(nu, w):
    total = 0
    for a in range(w + 1):
        for yp in partitions(a):
            for ym in partitions(w - a):
                ys = {1: yp, -1: ym}
                den = 1
                for s in (1, -1):
                    for sp in (1, -1):
                        den *= zbif(nu * (s - sp), ys[sp], ys[s])
                total += 1 / den
    return total


for w in range(4):
    show(f"z_inst coefficient t^{w} at nu=0.37", zinst_coeff(mp.mpf("0.37"), w))
    show(f"z_inst coefficient t^{w} at nu=0.2+0.1i", zinst_coeff(mp.mpc("0.2", "0.1"), w))

nu = mp.mpf("0.37")
show("xi(p=(1/2,+), h=(-1/2,-)) at nu=0.37",
     -(mp.gamma(1 + 2 * nu) / mp.gamma(1 - 2 * nu)) ** 2 / (4 * nu**2))
show("lnGamma check Gamma(1.7)Gamma(2.7)Gamma(3.7)", mp.gamma(1.7) * mp.gamma(2.7) * mp.gamma(3.7))


def poch(a, k):
    r = mp.mpf(1)
    for i in range(k):
        r *= a + i
    return r


def psi(p, s, n):
    k = int(p - 0.5)
    return mp.sqrt(mp.gamma(1 + 2 * s * n) / mp.gamma(1 - 2 * s * n)) * mp.exp(-1j * mp.pi * s / 4) / (
        mp.factorial(k) * poch(1 - 2 * s * n, k))


def psib(p, s, n):
    k = int(p - 0.5)
    return mp.sqrt(mp.gamma(1 - 2 * s * n) / mp.gamma(1 + 2 * s * n)) * mp.exp(1j * mp.pi * s / 4) / (
        mp.factorial(k) * poch(2 * s * n, k + 1))


def fredholm(nu, eta, t, n):
    sig = nu - mp.mpf(1) / 2
    idx = [(k + mp.mpf(1) / 2, s) for k in range(n) for s in (1, -1)]
    a = mp.matrix(2 * n, 2 * n)
    d = mp.matrix(2 * n, 2 * n)
    for i, (q, s) in enumerate(idx):
        for jj, (p, sp) in enumerate(idx):
            den = p + q + (s - sp) * nu
            a[i, jj] = psi(p, sp, nu) * psib(q, s, nu) / den * mp.exp(1j * mp.pi * (2 * eta - sig) * (s - sp))
            d[jj, i] = psi(q, s, -nu) * psib(p, sp, -nu) / den * mp.exp(1j * mp.pi * sig * (s - sp)) * t ** (
                (s - sp) * nu + p + q)
    return mp.det(mp.eye(2 * n) - a * d)


for tv in ("0.01", "0.05", "0.2"):
    show(f"fredholm(0.37, 0.11, t={tv}, N=12)", fredholm(mp.mpf("0.37"), mp.mpf("0.11"), mp.mpf(tv), 12))
