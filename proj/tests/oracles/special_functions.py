"""Multiprecision reference values for specialfn tests (mpmath, 50 digits)."""
import mpmath as mp

mp.mp.dps = 50


def partial_exp(N, g):
    return mp.fsum(mp.power(g, m) / mp.factorial(m) for m in range(N + 1))


def r_half(n, z, x):
    z = mp.mpc(z)
    x = mp.mpf(x)
    if x == 0:
        return mp.mpc(0)
    return (mp.exp(-z * z / 2) / mp.sqrt(2 * mp.pi) * mp.sqrt(mp.erfc(mp.sqrt(2) * abs(z.imag)))
            * mp.power(2, mp.mpf(n - 3) / 2) / mp.factorial(n - 2) * mp.sign(x)
            * mp.power(z, n - 1) * mp.gammainc(mp.mpf(n - 1) / 2, 0, x * x / 2))


def alternate_bound_ratio(N, z):
    return abs(partial_exp(N, z)) * abs(abs(z) - z) / (mp.sqrt(abs(z)) * mp.exp(abs(z)))


def main():
    for z in [1, 1j, 2 + 1j, 3 - 4j, -0.5 + 5j, 10 + 0.5j, 0.1 + 0.2j, -6 - 6j]:
        w = mp.erf(mp.mpc(z))
        print(f"erf({z}) = {mp.nstr(w.real, 17)} {mp.nstr(w.imag, 17)}")
    print("erfc(2) =", mp.nstr(mp.erfc(2), 17))
    for x in [0.5, 3.9, 4.1, 20]:
        print(f"erfcx({x}) =", mp.nstr(mp.exp(mp.mpf(x) ** 2) * mp.erfc(x), 17))
    val = mp.quad(lambda y: y ** 1.5 * mp.exp(-y), [0, 3])
    print("gamma_lower(2.5, 3) [quadrature] =", mp.nstr(val, 17))
    print("Q(39, 100) =", mp.nstr(mp.gammainc(39, 100, mp.inf, regularized=True), 17))
    print("e^-100 sum_{m<=38} 100^m/m! =", mp.nstr(mp.exp(-100) * partial_exp(38, 100), 17))
    r = r_half(4, 1, 2)
    print("r_half(4, 1, 2) =", mp.nstr(r.real, 17), mp.nstr(r.imag, 17))
    r = r_half(6, 0.7 + 0.4j, -1.5)
    print("r_half(6, 0.7+0.4i, -1.5) =", mp.nstr(r.real, 17), mp.nstr(r.imag, 17))

    # Alternate-bound sweep: |z| in [1, 50], arg z in (0, 2 pi), N in {8, 32, 128}.
    worst = mp.mpf(0)
    for N in [8, 32, 128]:
        for i in range(50):
            rad = 1 + 49 * mp.mpf(i) / 49
            for j in range(1, 72):
                z = mp.mpc(rad * mp.cos(2 * mp.pi * j / 72), rad * mp.sin(2 * mp.pi * j / 72))
                worst = max(worst, alternate_bound_ratio(N, z))
    print("alternate bound sweep max =", mp.nstr(worst, 10))


if __name__ == "__main__":
    main()
