#include "rmtlab/kernels_real.hpp"

#include <cmath>

#include "rmtlab/errors.hpp"
#include "rmtlab/specialfn.hpp"

namespace rmtlab {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kInv2SqrtPi = 0.28209479177387814347;
const cplx kI(0.0, 1.0);

void check_n(int n) {
    require(n >= 2 && n % 2 == 0, "real kernel: n must be even and at least 2");
}

void check_arg(int n, const KernelArg& a) {
    if (a.is_real()) return;
    require(a.value.imag() >= 1e-8 * std::sqrt(static_cast<double>(n)),
            "real kernel: upper-half argument too close to the real axis");
}

// e^{-s} e_{n/2}(g), e_{n/2}(g) = sum_{m=0}^{n-2} g^m / m!.
cplx scaled_e(int n, cplx g, cplx s) { return partial_exp_scaled(n - 2, g, s); }

double sqrt_erfcx(double y) { return std::sqrt(erfc_scaled(M_SQRT2 * y)); }

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// e^{-x^2/2} sum_{m=0}^{n/2-1} x^{2m} 2^m / (2m)! gamma(m + 1/2, x'^2/2).
double is_integral(int n, double x, double xp) {
    if (xp == 0.0) return 0.0;
    const double u = 0.5 * xp * xp;
    const double lx = x == 0.0 ? 0.0 : std::log(2.0 * x * x);
    double sum = 0.0;
    for (int m = 0; m < n / 2; ++m) {
        if (m > 0 && x == 0.0) break;
        const double lt = m * lx - std::lgamma(2.0 * m + 1.0) + log_lower_incomplete_gamma(m + 0.5, u) - 0.5 * x * x;
        const double t = std::exp(lt);
        sum += t;
        if (t < 1e-18 * sum && m > x * x) break;
    }
    return sum;
}

struct Entries {
    cplx ds, s, s_swapped, is;
};

// Real-real entries.
Entries real_real(int n, double x, double xp) {
    const double s = 0.5 * (x * x + xp * xp);
    const cplx e = scaled_e(n, x * xp, s);
    const cplx ep = e;  // symmetric in (x, x')
    Entries r;
    r.s = kInvSqrt2Pi * e + r_half(n, x, xp);
    r.s_swapped = kInvSqrt2Pi * ep + r_half(n, xp, x);
    r.ds = kInvSqrt2Pi * (xp - x) * e;
    r.is = kInv2SqrtPi * (sgn(xp) * is_integral(n, x, xp) - sgn(x) * is_integral(n, xp, x));
    return r;
}

cplx s_cc(int n, cplx z, cplx zp) {
    const double y = z.imag(), yp = zp.imag();
    const cplx zpb = std::conj(zp);
    const cplx sh = 0.5 * (z * z + zpb * zpb) + y * y + yp * yp;
    return kI * kInvSqrt2Pi * (zpb - z) * sqrt_erfcx(y) * sqrt_erfcx(yp) * scaled_e(n, z * zpb, sh);
}

cplx ds_cc(int n, cplx z, cplx zp) {
    const double y = z.imag(), yp = zp.imag();
    const cplx sh = 0.5 * (z * z + zp * zp) + y * y + yp * yp;
    return kInvSqrt2Pi * (zp - z) * sqrt_erfcx(y) * sqrt_erfcx(yp) * scaled_e(n, z * zp, sh);
}

cplx is_cc(int n, cplx z, cplx zp) {
    const double y = z.imag(), yp = zp.imag();
    const cplx zb = std::conj(z), zpb = std::conj(zp);
    const cplx sh = 0.5 * (zb * zb + zpb * zpb) + y * y + yp * yp;
    return -kInvSqrt2Pi * (zpb - zb) * sqrt_erfcx(y) * sqrt_erfcx(yp) * scaled_e(n, zb * zpb, sh);
}

// S(x, z), S(z, x), DS(x, z), IS(x, z) for x real, z upper.
cplx s_xz(int n, double x, cplx z) {
    const double y = z.imag();
    const cplx zb = std::conj(z);
    return kI * kInvSqrt2Pi * (zb - x) * sqrt_erfcx(y) * scaled_e(n, x * zb, 0.5 * (x * x + zb * zb) + y * y);
}

cplx s_zx(int n, cplx z, double x) {
    const double y = z.imag();
    return kInvSqrt2Pi * sqrt_erfcx(y) * scaled_e(n, x * z, 0.5 * (x * x + z * z) + y * y) + r_half(n, z, x);
}

cplx ds_xz(int n, double x, cplx z) {
    const double y = z.imag();
    return kInvSqrt2Pi * (z - x) * sqrt_erfcx(y) * scaled_e(n, x * z, 0.5 * (x * x + z * z) + y * y);
}

cplx is_xz(int n, double x, cplx z) {
    const double y = z.imag();
    const cplx zb = std::conj(z);
    return -kI * kInvSqrt2Pi * sqrt_erfcx(y) * scaled_e(n, x * zb, 0.5 * (x * x + zb * zb) + y * y) -
           kI * r_half(n, zb, x);
}

Entries entries(int n, const KernelArg& a, const KernelArg& b) {
    check_n(n);
    check_arg(n, a);
    check_arg(n, b);
    if (a.is_real() && b.is_real()) return real_real(n, a.value.real(), b.value.real());
    Entries r;
    if (!a.is_real() && !b.is_real()) {
        r.s = s_cc(n, a.value, b.value);
        r.s_swapped = s_cc(n, b.value, a.value);
        r.ds = ds_cc(n, a.value, b.value);
        r.is = is_cc(n, a.value, b.value);
    } else if (a.is_real()) {
        const double x = a.value.real();
        r.s = s_xz(n, x, b.value);
        r.s_swapped = s_zx(n, b.value, x);
        r.ds = ds_xz(n, x, b.value);
        r.is = is_xz(n, x, b.value);
    } else {
        // Antisymmetry fixes DS and IS with the arguments swapped.
        const double x = b.value.real();
        r.s = s_zx(n, a.value, x);
        r.s_swapped = s_xz(n, x, a.value);
        r.ds = -ds_xz(n, x, a.value);
        r.is = -is_xz(n, x, a.value);
    }
    return r;
}

KernelCase case_of(const KernelArg& a, const KernelArg& b) {
    if (a.is_real()) return b.is_real() ? KernelCase::real_real : KernelCase::real_complex;
    return b.is_real() ? KernelCase::complex_real : KernelCase::complex_complex;
}

}  // namespace

std::string to_string(KernelCase c) {
    switch (c) {
        case KernelCase::real_real: return "real-real";
        case KernelCase::complex_complex: return "complex-complex";
        case KernelCase::real_complex: return "real-complex";
        case KernelCase::complex_real: return "complex-real";
    }
    return "unknown";
}

cplx s_tilde(int n, const KernelArg& a, const KernelArg& b) { return entries(n, a, b).s; }
cplx ds_tilde(int n, const KernelArg& a, const KernelArg& b) { return entries(n, a, b).ds; }
cplx is_tilde(int n, const KernelArg& a, const KernelArg& b) { return entries(n, a, b).is; }

MatrixKernelValue matrix_kernel(int n, const KernelArg& a, const KernelArg& b) {
    const Entries e = entries(n, a, b);
    MatrixKernelValue v;
    v.kase = case_of(a, b);
    double ee = 0.0;
    if (v.kase == KernelCase::real_real) ee = 0.5 * sgn(a.value.real() - b.value.real());
    v.k << e.ds, e.s, -e.s_swapped, e.is + ee;
    return v;
}

double rho_kl(int n, const std::vector<double>& xs, const std::vector<cplx>& zs) {
    check_n(n);
    const int k = static_cast<int>(xs.size());
    const int l = static_cast<int>(zs.size());
    require(k + l >= 1 && k + l <= 6, "rho_kl: k + l must lie in [1, 6]");
    std::vector<KernelArg> pts;
    for (double x : xs) pts.push_back(KernelArg::real(x));
    for (cplx z : zs) {
        // Extended to the lower half-plane by conjugation.
        pts.push_back(KernelArg::upper(z.imag() < 0.0 ? std::conj(z) : z));
    }
    const int m = k + l;
    SkewMatrix a(2 * m);
    for (int i = 0; i < m; ++i) {
        a.set(2 * i, 2 * i + 1, s_tilde(n, pts[i], pts[i]));
        for (int j = i + 1; j < m; ++j) {
            const Eigen::Matrix2cd b = matrix_kernel(n, pts[i], pts[j]).k;
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) a.set(2 * i + r, 2 * j + c, b(r, c));
        }
    }
    return pfaffian(a).real();
}

double expected_real_count_density(int n, double x) { return rho_kl(n, {x}, {}); }

double expected_real_count_exact(int n) {
    check_n(n);
    double ratio = 1.0;  // (4k-1)!! / (4k)!!
    double sum = 1.0;
    for (int k = 1; k < n / 2; ++k) {
        ratio *= (4.0 * k - 3.0) * (4.0 * k - 1.0) / ((4.0 * k - 2.0) * (4.0 * k));
        sum += ratio;
    }
    return M_SQRT2 * sum;
}

}  // namespace rmtlab
