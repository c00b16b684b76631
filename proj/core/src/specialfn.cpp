#include "rmtlab/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rmtlab/errors.hpp"

namespace rmtlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoOverSqrtPi = 1.12837916709551257390;
constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Neumaier compensated accumulator for complex sums.
struct CompensatedSum {
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;

    static void add(double& s, double& c, double v) {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    void add(cplx v) {
        add(re, cre, v.real());
        add(im, cim, v.imag());
    }
    cplx value() const { return {re + cre, im + cim}; }
};

cplx erf_taylor(cplx z) {
    const cplx z2 = z * z;
    cplx term = z;
    cplx sum = z;
    for (int k = 1; k < 200; ++k) {
        term *= -z2 / static_cast<double>(k);
        const cplx add = term / static_cast<double>(2 * k + 1);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum) && k > std::norm(z)) break;
    }
    return kTwoOverSqrtPi * sum;
}

// Series valid in the closed first quadrant, relative truncation error of
// order 1e-16 (Abramowitz-Stegun 7.1.29). Exponentials are merged before
// evaluation so only the final value can overflow.
cplx erf_quadrant_series(double x, double y) {
    const double x2 = x * x;
    const double two_xy = 2.0 * x * y;
    const double c2 = std::cos(two_xy);
    const double s2 = std::sin(two_xy);

    if (y * y - x2 > 709.0) throw NumericalError("erf_complex: value overflows double");

    double re = std::erf(x);
    double im = 0.0;
    const double ex = std::exp(-x2);
    if (x > 0.0) {
        const double sxy = std::sin(x * y);
        re += ex * sxy * sxy / (kPi * x);
        im += ex * s2 / (2.0 * kPi * x);
    } else {
        im += y / kPi;
    }

    const int kmax = static_cast<int>(std::ceil(2.0 * y + 14.0));
    double sre = 0.0, sim = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        const double kk = k;
        const double base = -x2 - 0.25 * kk * kk;
        const double ep = std::exp(base + kk * y);
        const double em = std::exp(base - kk * y);
        const double ch = 0.5 * (ep + em);  // e^{-x^2-k^2/4} cosh(ky)
        const double sh = 0.5 * (ep - em);  // e^{-x^2-k^2/4} sinh(ky)
        const double eb = std::exp(base);
        const double f = 2.0 * x * eb - 2.0 * x * ch * c2 + kk * sh * s2;
        const double g = 2.0 * x * ch * s2 + kk * sh * c2;
        const double d = kk * kk + 4.0 * x2;
        sre += f / d;
        sim += g / d;
    }
    re += 2.0 / kPi * sre;
    im += 2.0 / kPi * sim;
    return {re, im};
}

double log_erfc_nonneg(double u) { return std::log(erfc_scaled(u)) - u * u; }

}  // namespace

cplx erf_complex(cplx z) {
    if (!(std::abs(z) <= 50.0)) throw DomainError("erf_complex: |z| exceeds 50");
    if (std::abs(z) <= 2.0) return erf_taylor(z);
    const bool neg_x = std::signbit(z.real());
    const bool neg_y = std::signbit(z.imag());
    const cplx w = erf_quadrant_series(std::abs(z.real()), std::abs(z.imag()));
    // erf is odd and commutes with conjugation.
    if (neg_x && neg_y) return -w;
    if (neg_x) return -std::conj(w);
    if (neg_y) return std::conj(w);
    return w;
}

double erfc_scaled(double x) {
    if (!(x >= 0.0)) throw DomainError("erfc_scaled: argument must be nonnegative");
    if (x < 4.0) return std::exp(x * x) * std::erfc(x);
    // Lentz evaluation of x + (1/2)/(x + (2/2)/(x + (3/2)/(x + ...))).
    const double tiny = 1e-300;
    double f = x, c = x, d = 0.0;
    for (int j = 1; j < 500; ++j) {
        const double a = 0.5 * j;
        d = x + a * d;
        if (std::abs(d) < tiny) d = tiny;
        c = x + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return kInvSqrtPi / f;
}

double log_lower_incomplete_gamma(double t, double x) {
    require(t > 0.0, "incomplete gamma: t must be positive");
    require(x >= 0.0, "incomplete gamma: x must be nonnegative");
    if (x == 0.0) return -std::numeric_limits<double>::infinity();
    if (x < t + 1.0) {
        double term = 1.0 / t;
        double sum = term;
        for (int k = 1; k < 100000; ++k) {
            term *= x / (t + k);
            sum += term;
            if (term < sum * 1e-17) break;
        }
        return t * std::log(x) - x + std::log(sum);
    }
    // Continued fraction for the upper function Gamma(t, x).
    const double tiny = 1e-300;
    double b = x + 1.0 - t;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - t);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    const double log_upper = t * std::log(x) - x + std::log(h);
    const double q = std::exp(log_upper - std::lgamma(t));
    return std::lgamma(t) + std::log1p(-q);
}

double lower_incomplete_gamma(double t, double x) { return std::exp(log_lower_incomplete_gamma(t, x)); }

double regularized_gamma_p(double t, double x) {
    return std::exp(log_lower_incomplete_gamma(t, x) - std::lgamma(t));
}

double regularized_gamma_q(double t, double x) {
    require(t > 0.0 && x >= 0.0, "regularized_gamma_q: domain violation");
    if (x < t + 1.0) return 1.0 - regularized_gamma_p(t, x);
    const double tiny = 1e-300;
    double b = x + 1.0 - t;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - t);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return std::exp(t * std::log(x) - x + std::log(h) - std::lgamma(t));
}

cplx partial_exp_scaled(long N, cplx g, cplx s) {
    require(N >= 0, "partial_exp: N must be nonnegative");
    const double a = std::abs(g);
    if (a == 0.0) return std::exp(-s);
    const double window = 40.0 * std::sqrt(a) + 60.0;
    if (static_cast<double>(N) >= a + window) return std::exp(g - s);

    // Terms relative to the largest one, t_m / (|t_M| e^{i M arg g}).
    const long M = std::min<long>(N, static_cast<long>(std::floor(a)));
    const double logpeak = M * std::log(a) - std::lgamma(static_cast<double>(M) + 1.0);
    const double phase = static_cast<double>(M) * std::arg(g);

    CompensatedSum acc;
    acc.add(1.0);
    cplx u = 1.0;
    for (long m = M + 1; m <= N; ++m) {
        u *= g / static_cast<double>(m);
        acc.add(u);
        if (std::abs(u) < 1e-20 && m > a) break;
    }
    u = 1.0;
    for (long m = M; m >= 1; --m) {
        u *= static_cast<double>(m) / g;
        acc.add(u);
        if (std::abs(u) < 1e-20) break;
    }
    const cplx sum = acc.value();
    const double mag = std::abs(sum);
    if (mag == 0.0) return 0.0;
    const double log_re = logpeak - s.real() + std::log(mag);
    if (log_re < -745.0) return 0.0;
    if (log_re > 709.0) throw NumericalError("partial_exp_scaled: result overflows double");
    return std::polar(std::exp(log_re), phase - s.imag() + std::arg(sum));
}

cplx partial_exp(long N, cplx g) { return partial_exp_scaled(N, g, 0.0); }

cplx partial_cos(long m, cplx g) {
    require(m >= 1, "partial_cos: m must be at least 1");
    const cplx g2 = g * g;
    cplx term = 1.0;
    cplx sum = 1.0;
    for (long j = 1; j < m; ++j) {
        term *= g2 / static_cast<double>((2 * j - 1) * (2 * j));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) && 2.0 * j > std::abs(g)) break;
    }
    return sum;
}

cplx r_half(int n, cplx z, double x) {
    require(n >= 2 && n % 2 == 0, "r_half: n must be even and at least 2");
    if (x == 0.0 || z == 0.0) return 0.0;
    const double nn = n;
    const cplx z2 = z * z;
    const double log_mag = -0.5 * z2.real() - 0.5 * std::log(2.0 * kPi) +
                           0.5 * log_erfc_nonneg(M_SQRT2 * std::abs(z.imag())) +
                           0.5 * (nn - 3.0) * std::log(2.0) - std::lgamma(nn - 1.0) +
                           (nn - 1.0) * std::log(std::abs(z)) +
                           log_lower_incomplete_gamma(0.5 * (nn - 1.0), 0.5 * x * x);
    const double phase = -0.5 * z2.imag() + (nn - 1.0) * std::arg(z);
    const double sgn = x > 0.0 ? 1.0 : -1.0;
    if (log_mag < -745.0) return 0.0;
    return sgn * std::polar(std::exp(log_mag), phase);
}

SkewMatrix::SkewMatrix(int dim) : dim_(dim) {
    require(dim >= 0, "SkewMatrix: negative dimension");
    upper_.assign(static_cast<std::size_t>(dim) * (dim > 0 ? dim - 1 : 0) / 2, 0.0);
}

std::size_t SkewMatrix::index(int i, int j) const {
    const auto ii = static_cast<std::size_t>(i);
    return ii * dim_ - ii * (ii + 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

SkewMatrix SkewMatrix::from_upper(const Eigen::MatrixXcd& a) {
    require(a.rows() == a.cols(), "SkewMatrix: matrix must be square");
    SkewMatrix s(static_cast<int>(a.rows()));
    for (int i = 0; i < s.dim_; ++i)
        for (int j = i + 1; j < s.dim_; ++j) s.upper_[s.index(i, j)] = a(i, j);
    return s;
}

cplx SkewMatrix::operator()(int i, int j) const {
    if (i == j) return 0.0;
    if (i < j) return upper_[index(i, j)];
    return -upper_[index(j, i)];
}

void SkewMatrix::set(int i, int j, cplx value) {
    require(i != j, "SkewMatrix: diagonal entries are fixed at zero");
    if (i < j)
        upper_[index(i, j)] = value;
    else
        upper_[index(j, i)] = -value;
}

Eigen::MatrixXcd SkewMatrix::dense() const {
    Eigen::MatrixXcd a(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) a(i, j) = (*this)(i, j);
    return a;
}

cplx pfaffian(const SkewMatrix& s) {
    const int n = s.dim();
    require(n % 2 == 0, "pfaffian: odd dimension");
    if (n == 0) return 1.0;
    if (n == 2) return s(0, 1);
    if (n == 4) return s(0, 1) * s(2, 3) - s(0, 2) * s(1, 3) + s(0, 3) * s(1, 2);

    Eigen::MatrixXcd a = s.dense();
    cplx pf = 1.0;
    for (int k = 0; k < n - 1; k += 2) {
        int kp = k + 1;
        double best = std::abs(a(k + 1, k));
        for (int i = k + 2; i < n; ++i) {
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                kp = i;
            }
        }
        if (kp != k + 1) {
            a.row(k + 1).swap(a.row(kp));
            a.col(k + 1).swap(a.col(kp));
            pf = -pf;
        }
        if (a(k + 1, k) == 0.0) return 0.0;
        pf *= a(k, k + 1);
        if (k + 2 < n) {
            const int m = n - k - 2;
            const Eigen::VectorXcd tau = a.row(k).segment(k + 2, m).transpose() / a(k, k + 1);
            const Eigen::VectorXcd col = a.col(k + 1).segment(k + 2, m);
            a.block(k + 2, k + 2, m, m) += tau * col.transpose() - col * tau.transpose();
        }
    }
    return pf;
}

}  // namespace rmtlab
