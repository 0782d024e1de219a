"""Independent 30-digit reference values for the frozen constants in the tests.

Everything here is written directly from the defining sums with mpmath and
shares no code with the package.  Run ``python3 tools/derive_oracles.py``.
"""
import itertools

import mpmath as mp

mp.mp.dps = 30


def two_level(e0, e1, beta):
    z = mp.exp(-beta * e0) + mp.exp(-beta * e1)
    p1 = mp.exp(-beta * e1) / z
    E = (1 - p1) * e0 + p1 * e1
    S = mp.log(z) + beta * E
    return mp.log(z), E, S, -mp.log(z) / beta


def kl(p, q):
    return mp.fsum(a * mp.log(a / b) for a, b in zip(p, q) if a > 0)


def h2(p):
    return -p * mp.log(p) - (1 - p) * mp.log(1 - p)


def ising_brute(J, K, n, up=mp.mpf("0.5")):
    def p0(x, xp):
        return mp.exp(J * x * xp) / (2 * mp.cosh(J))

    def p1(x, xp):
        return mp.exp(J * x * xp + K * x) / (2 * mp.cosh(J + K * xp))

    total = mp.mpf(0)
    for x0, w in ((-1, 1 - up), (1, up)):
        for seq in itertools.product((-1, 1), repeat=n):
            a = b = mp.mpf(1)
            prev = x0
            for s in seq:
                a *= p0(s, prev)
                b *= p1(s, prev)
                prev = s
            total += w * a * mp.log(a / b)
    return total


def runlength(mu0, mu1):
    # P(n) = (1 - e^mu) e^{mu n}, n >= 0
    def pmf(mu, n):
        return (1 - mp.exp(mu)) * mp.exp(mu * n)

    return mp.nsum(lambda n: pmf(mu0, n) * mp.log(pmf(mu0, n) / pmf(mu1, n)), [0, mp.inf])


def tilted(q0, q1, lam):
    p0 = [1 - q0, q0]
    p1 = [1 - q1, q1]
    w = [a ** (1 - lam) * b ** lam for a, b in zip(p0, p1)]
    z = mp.fsum(w)
    pl = [x / z for x in w]
    return pl, kl(pl, p0), kl(pl, p1), mp.log(z)


def main():
    out = {}
    lnz, E, S, F = two_level(0, 1, 1)
    out.update(lnz_01=lnz, e_01=E, sigma_01=S, f_01=F)
    out["ln_2cosh1"] = mp.log(2 * mp.cosh(1))
    out["two_spin_lnz"] = mp.log(2 * mp.e + 2 / mp.e)

    # Gibbs: flat h0 to (0, 1) at beta = 1
    p0 = [mp.mpf(1) / 2] * 2
    z1 = 1 + mp.exp(-1)
    p1 = [1 / z1, mp.exp(-1) / z1]
    out["gibbs_delta_f"] = -mp.log(z1) + mp.log(2)
    out["gibbs_divergence"] = kl(p0, p1)

    # adiabatic: (0, 1) from beta 1 to beta 0.5
    out["adiabatic_delta_sigma"] = two_level(0, 1, mp.mpf("0.5"))[2] - two_level(0, 1, 1)[2]
    pa = [1 / (1 + mp.exp(-1)), mp.exp(-1) / (1 + mp.exp(-1))]
    pb = [1 / (1 + mp.exp(-0.5)), mp.exp(-0.5) / (1 + mp.exp(-0.5))]
    out["adiabatic_divergence"] = kl(pa, pb)

    out["h2_0_1"] = h2(mp.mpf("0.1"))
    out["ln_cosh_0_3"] = mp.log(mp.cosh(mp.mpf("0.3")))

    J, K = mp.mpf("0.5"), mp.mpf("0.3")
    out["ising_B"] = K + (mp.log(mp.cosh(J - K)) - mp.log(mp.cosh(J + K))) / 2
    out["ising_n10"] = ising_brute(J, K, 10)
    out["ising_n10_up09"] = ising_brute(J, K, 10, mp.mpf("0.9"))
    out["ising_z1"] = 2 * mp.sqrt(mp.cosh(J + K) * mp.cosh(J - K))

    out["runlength_half_0_9"] = runlength(mp.log(mp.mpf("0.5")), mp.log(mp.mpf("0.9")))

    # Gaussian broadcast beta0 = 2, beta1 = 1, unit signal variance
    out["gauss_delta_sigma"] = mp.log(2) / 2
    out["gauss_immse"] = (mp.log(1 + 2) - mp.log(1 + 1)) / 2

    # BSC broadcast E0 = 1: eps = 1 / (1 + e^{beta E0})
    eps0 = 1 / (1 + mp.exp(1))
    eps1 = 1 / (1 + mp.exp(mp.mpf("0.5")))
    out["bsc_eps0"] = eps0
    out["bsc_eps1"] = eps1
    out["bsc_delta_sigma"] = h2(eps1) - h2(eps0)

    pl, e0, e1, lz = tilted(mp.mpf("0.1"), mp.mpf("0.4"), mp.mpf("0.5"))
    out.update(tilt_p1=pl[1], tilt_e0=e0, tilt_e1=e1, tilt_lnz=lz)
    out["d01"] = kl([mp.mpf("0.9"), mp.mpf("0.1")], [mp.mpf("0.6"), mp.mpf("0.4")])
    out["d10"] = kl([mp.mpf("0.6"), mp.mpf("0.4")], [mp.mpf("0.9"), mp.mpf("0.1")])
    lam = mp.findroot(lambda t: tilted(mp.mpf("0.1"), mp.mpf("0.4"), t)[1]
                      - tilted(mp.mpf("0.1"), mp.mpf("0.4"), t)[2], 0.5)
    out["chernoff_lambda"] = lam
    out["chernoff_exponent"] = tilted(mp.mpf("0.1"), mp.mpf("0.4"), lam)[1]

    for k, v in out.items():
        print(f"{k:24s} {mp.nstr(v, 20)}")


if __name__ == "__main__":
    main()
