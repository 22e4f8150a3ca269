"""Regenerates tests/oracle_values.hpp with mpmath at 40 digits.

Every value here is computed without touching the C++ code: zeta, Gamma and
xi come from mpmath, the kernels from adaptive quadrature of their defining
integrals.
"""
import mpmath as mp

mp.mp.dps = 40


def xi(s):
    return s * (s - 1) / 2 * mp.pi ** (-s / 2) * mp.gamma(s / 2) * mp.zeta(s)


def c(n, w):
    out = mp.mpf(n) ** w
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            out *= 1 - mp.mpf(p) ** (-2 * w)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out *= 1 - mp.mpf(m) ** (-2 * w)
    return out


def g(x, w):
    if x >= 1:
        return mp.mpf(0)
    beta = mp.quad(lambda t: t ** (mp.mpf(1) / 2 - w) * (1 - t) ** (w - 1), [x * x, 1])
    return 2 * mp.pi ** w / mp.gamma(w) * (x ** (2 - w) * (1 - x * x) ** (w - 1)
                                          - w * x ** (w - 1) * beta)


def g1(x, w):
    if x >= 1:
        return mp.mpf(0)
    return mp.quad(lambda y: mp.sqrt(y / x) * g(y, w) / y, [x, 1])


def h(x, w):
    return sum(c(n, w) * g(mp.mpf(n) / x, w) for n in range(1, int(mp.floor(x)) + 1)) / x


def h_breaks(lo, hi):
    pts = [mp.mpf(lo)]
    k = int(mp.floor(lo)) + 1
    while k < hi:
        pts.append(mp.mpf(k))
        k += 1
    pts.append(mp.mpf(hi))
    return pts


def ab(z, w):
    s = mp.mpf(1) / 2 - 1j * z
    p, m = xi(s + w), xi(s - w)
    return (p + m) / 2, 1j * (p - m) / 2


def a_zeros(w, tmax):
    f = lambda t: mp.re(ab(t, w)[0])
    zs, t, step = [], mp.mpf("0.05"), mp.mpf("0.05")
    while t < tmax:
        if f(t - step) * f(t) < 0:
            zs.append(mp.findroot(f, (t - step, t), solver="anderson"))
        t += step
    return zs


def emit(out, name, value):
    if isinstance(value, mp.mpc):
        out.append(f"inline const std::complex<double> {name}{{{mp.nstr(value.real, 20)}, "
                   f"{mp.nstr(value.imag, 20)}}};")
    else:
        out.append(f"inline constexpr double {name} = {mp.nstr(value, 20)};")


def main():
    out = ["#pragma once", "", "// Generated by tests/oracles/make_oracles.py; do not edit.", "",
           "#include <complex>", "", "namespace oracle {", ""]
    emit(out, "kLogGamma3p4i", mp.loggamma(mp.mpc(3, 4)))
    emit(out, "kZetaHalfPlus10i", mp.zeta(mp.mpc(0.5, 10)))
    emit(out, "kZetaMinus3p2i", mp.zeta(mp.mpc(-3, 2)))
    emit(out, "kXiHalf", xi(mp.mpf(0.5)))
    emit(out, "kXi2", xi(mp.mpf(2)))
    emit(out, "kXi07p20i", xi(mp.mpc(0.7, 20)))
    emit(out, "kFirstZetaZero", mp.zetazero(1).imag)

    w = mp.mpf(1.5)
    z = mp.mpc(2, 1)
    emit(out, "kTheta15At2p1i", xi(mp.mpf(0.5) - w - 1j * z) / xi(mp.mpf(0.5) + w - 1j * z))
    A, B = ab(mp.mpc(3, 0.5), w)
    emit(out, "kA15At3p05i", A)
    emit(out, "kB15At3p05i", B)

    emit(out, "kG2At04", g(mp.mpf(0.4), 2))
    emit(out, "kG2At08", g(mp.mpf(0.8), 2))
    emit(out, "kG15At05", g(mp.mpf(0.5), w))
    emit(out, "kG1_2At03", g1(mp.mpf(0.3), 2))
    emit(out, "kG1_15At06", g1(mp.mpf(0.6), w))
    emit(out, "kH2At25", h(mp.mpf(2.5), 2))
    emit(out, "kH15At37", h(mp.mpf(3.7), w))
    x = mp.mpf(3)
    emit(out, "kH1_2At3",
         mp.quad(lambda y: mp.sqrt(y / x) * h(y, 2) / y, h_breaks(1, 3)))

    # Operator on (0, a): trace = int_1^a h(x^2) dx, |H|_HS^2 = int_1^{a^2} h(u)^2 log(a^2/u) du.
    a = mp.mpf(1.5)
    tr_pts = [mp.mpf(1), mp.sqrt(2), a]
    emit(out, "kTrace15At15", mp.quad(lambda t: h(t * t, w), tr_pts))
    emit(out, "kHS15At15",
         mp.quad(lambda u: h(u, w) ** 2 * mp.log(a * a / u), h_breaks(1, a * a)))

    for i, t in enumerate(a_zeros(w, 30)):
        emit(out, f"kAZero15_{i + 1}", t)

    out += ["", "}  // namespace oracle", ""]
    with open("tests/oracle_values.hpp", "w") as f:
        f.write("\n".join(out))


if __name__ == "__main__":
    main()
