#include "rmtlab/kernels_complex.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "rmtlab/errors.hpp"
#include "rmtlab/specialfn.hpp"

namespace rmtlab {

namespace {

constexpr double kInvPi = 0.31830988618379067154;

double hermitian_det(const Eigen::MatrixXcd& k) {
    if (k.rows() == 1) return k(0, 0).real();
    if (k.rows() == 2) return (k(0, 0) * k(1, 1) - k(0, 1) * k(1, 0)).real();
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(k).determinant().real();
}

}  // namespace

cplx kernel_finite(long n, cplx z, cplx w) {
    require(n >= 1, "kernel_finite: n must be at least 1");
    const double s = 0.5 * (std::norm(z) + std::norm(w));
    return kInvPi * partial_exp_scaled(n - 1, z * std::conj(w), s);
}

double rho_k_finite(long n, const std::vector<cplx>& points) {
    const int k = static_cast<int>(points.size());
    require(k >= 1 && k <= 12, "rho_k_finite: k must lie in [1, 12]");
    Eigen::MatrixXcd m(k, k);
    for (int i = 0; i < k; ++i) {
        m(i, i) = kernel_finite(n, points[i], points[i]).real();
        for (int j = i + 1; j < k; ++j) {
            m(i, j) = kernel_finite(n, points[i], points[j]);
            m(j, i) = std::conj(m(i, j));
        }
    }
    return hermitian_det(m);
}

Regime classify_regime(cplx anchor) {
    const double r2 = std::norm(anchor);
    if (r2 == 1.0) return Regime::on_circle;
    return r2 < 1.0 ? Regime::inside : Regime::outside;
}

cplx kernel_infinity(AsymptoticCase c, cplx z1, cplx z2, cplx w1, cplx w2) {
    if (!c.same_anchor || c.regime == Regime::outside) return 0.0;
    const cplx bulk = kInvPi * std::exp(-0.5 * std::norm(w1) - 0.5 * std::norm(w2) + w1 * std::conj(w2));
    if (c.regime == Regime::inside) return bulk;
    const cplx arg = -M_SQRT2 * (z1 * std::conj(w2) + w1 * std::conj(z2));
    return bulk * (0.5 + 0.5 * erf_complex(arg));
}

cplx kernel_infinity(cplx z1, cplx z2, cplx w1, cplx w2) {
    return kernel_infinity(AsymptoticCase{z1 == z2, classify_regime(z1)}, z1, z2, w1, w2);
}

double rho_k_infinity(const std::vector<cplx>& anchors, const std::vector<cplx>& offsets) {
    const int k = static_cast<int>(anchors.size());
    require(k >= 1 && k <= 12, "rho_k_infinity: k must lie in [1, 12]");
    require(offsets.size() == anchors.size(), "rho_k_infinity: anchors and offsets differ in length");
    Eigen::MatrixXcd m(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m(i, j) = kernel_infinity(anchors[i], anchors[j], offsets[i], offsets[j]);
    return hermitian_det(m);
}

std::vector<ConvergenceRow> kernel_convergence_report(long n, const std::vector<cplx>& anchors,
                                                      const std::vector<std::vector<cplx>>& offsets) {
    const double root = std::sqrt(static_cast<double>(n));
    std::vector<ConvergenceRow> rows;
    rows.reserve(offsets.size());
    for (const auto& w : offsets) {
        require(w.size() == anchors.size(), "kernel_convergence_report: offset tuple has wrong length");
        ConvergenceRow row;
        row.offsets = w;
        std::vector<cplx> pts(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            pts[i] = root * anchors[i] + w[i];
            row.regimes.push_back(classify_regime(anchors[i]));
        }
        row.rho_n = rho_k_finite(n, pts);
        row.rho_inf = rho_k_infinity(anchors, w);
        row.deviation = std::abs(row.rho_n - row.rho_inf);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace rmtlab
