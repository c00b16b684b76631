#include "rmtlab/logdet_flow.hpp"

#include <algorithm>
#include <cmath>

#include "rmtlab/errors.hpp"

namespace rmtlab {

namespace {

constexpr double kPivotGuard = 1e-300;

}  // namespace

std::string to_string(LogDetMethod m) { return m == LogDetMethod::direct ? "direct" : "hessenberg"; }

double logabsdet(const Eigen::MatrixXcd& a) {
    require(a.rows() == a.cols(), "logabsdet: matrix must be square");
    if (a.rows() == 0) return 0.0;
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    const Eigen::MatrixXcd& f = lu.matrixLU();
    double s = 0.0;
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
        const double p = std::abs(f(i, i));
        if (!(p >= kPivotGuard)) throw NumericalError("logabsdet: numerically singular matrix");
        s += std::log(p);
    }
    return s;
}

double logabsdet(const SquareMatrix& a) { return logabsdet(a.a); }

double target_logdet(long n, cplx z0) {
    const double nn = static_cast<double>(n);
    const double r = std::abs(z0);
    const double alpha = r <= 1.0 ? 0.5 * (r * r - 1.0) : std::log(r);
    return 0.5 * nn * std::log(nn) + alpha * nn;
}

double potential_G(long n, cplx z) {
    const double nn = static_cast<double>(n);
    const double r2 = std::norm(z);
    if (r2 <= nn) return 0.5 * (r2 - nn);
    return nn * 0.5 * std::log(r2 / nn);
}

double second_moment_det(long n, cplx z0) {
    require(n >= 1 && n <= 10000, "second_moment_det: n must lie in [1, 10^4]");
    const double nn = static_cast<double>(n);
    const double lfact = std::lgamma(nn + 1.0);
    const double r2 = std::norm(z0);
    if (r2 == 0.0) return lfact;
    std::vector<double> terms(n + 1);
    for (long j = 0; j <= n; ++j) terms[j] = j * (std::log(r2) + std::log(nn)) - std::lgamma(j + 1.0);
    const double mx = *std::max_element(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += std::exp(t - mx);
    return lfact + mx + std::log(s);
}

double heuristic_integral(long n, cplx z0) {
    require(n >= 1, "heuristic_integral: n must be positive");
    const double len = static_cast<double>(n - 1);
    if (len == 0.0) return 0.0;
    const double c = std::norm(z0) * static_cast<double>(n);
    if (c >= len) return 0.5 * len * std::log(c);
    return 0.5 * (len * std::log(len) - len + c);
}

SquareMatrix hessenberg_matrix(int n, Field field, Rng& rng) {
    require(n >= 2, "hessenberg_matrix: n must be at least 2");
    SquareMatrix m;
    m.field = field;
    m.structure = MatrixStructure::lower_hessenberg;
    m.a = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j)
            m.a(i, j) = field == Field::complex ? rng.complex_normal() : cplx(rng.normal(), 0.0);
        if (i + 1 < n) m.a(i, i + 1) = sample_chi(ChiSpec{n - 1 - i, field}, rng);
    }
    return m;
}

double recurrence_logdet(cplx shift, const std::vector<cplx>& xi, const std::vector<double>& chi,
                         std::vector<cplx>* trace) {
    const std::size_t n = xi.size();
    require(n >= 1 && chi.size() + 1 == n, "recurrence_logdet: need n xi values and n-1 chi values");
    if (trace) trace->assign(1, xi[0] - shift);
    cplx a = xi[0] - shift;
    double value = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double r = std::hypot(std::abs(a), chi[i]);
        if (!(r > 0.0)) throw NumericalError("recurrence_logdet: degenerate step");
        value += std::log(r);
        a = -shift * a / r + xi[i + 1];
        if (trace) trace->push_back(a);
    }
    if (std::abs(a) == 0.0) throw NumericalError("recurrence_logdet: a_n vanished");
    return value + std::log(std::abs(a));
}

LogDetSample hessenberg_logdet_sample(int n, cplx z0, Field field, Rng& rng, bool keep_trace) {
    require(n >= 2, "hessenberg_logdet_sample: n must be at least 2");
    const double root = std::sqrt(static_cast<double>(n));
    cplx shift;
    if (field == Field::complex) {
        shift = -std::abs(z0) * root;
    } else {
        require(z0.imag() == 0.0, "hessenberg_logdet_sample: the real field requires real z0");
        shift = z0 * root;
    }
    auto draw = [&]() { return field == Field::complex ? rng.complex_normal() : cplx(rng.normal(), 0.0); };

    LogDetSample out;
    out.method = LogDetMethod::hessenberg;
    out.z0 = z0;
    out.n = n;
    out.seed = rng.seed();
    out.stream = rng.stream();

    cplx a = draw() - shift;
    if (keep_trace) out.trace.reserve(n), out.trace.push_back(a);
    double value = 0.0;
    for (int i = 1; i < n; ++i) {
        const double chi2 = sample_chi_squared(ChiSpec{n - i, field}, rng);
        const double r = std::hypot(std::abs(a), std::sqrt(chi2));
        value += std::log(r);
        a = -shift * a / r + draw();
        if (keep_trace) out.trace.push_back(a);
    }
    if (std::abs(a) == 0.0) throw NumericalError("hessenberg_logdet_sample: a_n vanished");
    out.value = value + std::log(std::abs(a));
    return out;
}

LogDetSample direct_logdet_sample(int n, AtomDistribution atom, cplx z0, Rng& rng) {
    LogDetSample out;
    out.method = LogDetMethod::direct;
    out.z0 = z0;
    out.n = n;
    out.seed = rng.seed();
    out.stream = rng.stream();
    SquareMatrix m = sample_matrix(EnsembleSpec{n, atom, 0}, rng);
    m.a.diagonal().array() -= z0 * std::sqrt(static_cast<double>(n));
    out.value = logabsdet(m.a);
    return out;
}

HessenbergLogDet::HessenbergLogDet(const SquareMatrix& m) : HessenbergLogDet(m.a) {}

HessenbergLogDet::HessenbergLogDet(const Eigen::MatrixXcd& m) {
    require(m.rows() == m.cols() && m.rows() >= 1, "HessenbergLogDet: matrix must be square and nonempty");
    if (m.rows() <= 2) {
        h_ = m;
    } else {
        h_ = Eigen::HessenbergDecomposition<Eigen::MatrixXcd>(m).matrixH();
    }
    h_ = h_.transpose().eval();  // rows of H become contiguous columns
}

double HessenbergLogDet::operator()(cplx z) const {
    const int n = this->n();
    // cur holds the active pivot row, next the incoming row of H - z.
    std::vector<cplx> cur(n), next(n);
    for (int j = 0; j < n; ++j) cur[j] = h_(j, 0);
    cur[0] -= z;
    double value = 0.0;
    for (int k = 0; k + 1 < n; ++k) {
        for (int j = k; j < n; ++j) next[j] = h_(j, k + 1);
        next[k + 1] -= z;
        if (std::abs(next[k]) > std::abs(cur[k])) std::swap(cur, next);
        const cplx pivot = cur[k];
        if (!(std::abs(pivot) >= kPivotGuard)) throw NumericalError("HessenbergLogDet: singular shift");
        value += std::log(std::abs(pivot));
        const cplx mult = next[k] / pivot;
        for (int j = k + 1; j < n; ++j) next[j] -= mult * cur[j];
        std::swap(cur, next);
    }
    const double last = std::abs(cur[n - 1]);
    if (!(last >= kPivotGuard)) throw NumericalError("HessenbergLogDet: singular shift");
    return value + std::log(last);
}

}  // namespace rmtlab
