#include "rmtlab/hermitization.hpp"

#include <algorithm>
#include <cmath>

#include "rmtlab/errors.hpp"
#include "rmtlab/logdet_flow.hpp"

namespace rmtlab {

namespace {

Eigen::MatrixXcd shifted_scaled(const SquareMatrix& m, cplx z) {
    Eigen::MatrixXcd a = m.a;
    a.diagonal().array() -= z;
    return a / std::sqrt(static_cast<double>(m.n()));
}

Eigen::VectorXd ascending_singular_values(const Eigen::MatrixXcd& a) {
    Eigen::VectorXd s = Eigen::BDCSVD<Eigen::MatrixXcd>(a).singularValues();
    std::sort(s.data(), s.data() + s.size());
    return s;
}

double simpson(const std::vector<double>& f, double h, int stride) {
    const std::size_t last = f.size() - 1;
    double s = f[0] + f[last];
    int k = 1;
    for (std::size_t i = stride; i < last; i += stride, ++k) s += (k % 2 ? 4.0 : 2.0) * f[i];
    return s * h * stride / 3.0;
}

}  // namespace

Hermitized hermitize(const SquareMatrix& m, cplx z) {
    const int n = m.n();
    require(n >= 1, "hermitize: empty matrix");
    const Eigen::MatrixXcd a = shifted_scaled(m, z);
    Hermitized h;
    h.n = n;
    h.z = z;
    h.w = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    h.w.topRightCorner(n, n) = a;
    h.w.bottomLeftCorner(n, n) = a.adjoint();
    h.singular_values = ascending_singular_values(a);
    return h;
}

IdentityCheck logdet_identity_check(const SquareMatrix& m, cplx z) {
    const int n = m.n();
    Eigen::MatrixXcd a = m.a;
    a.diagonal().array() -= z;
    IdentityCheck c;
    c.lhs = logabsdet(a);
    const Hermitized h = hermitize(m, z);
    const Eigen::VectorXd ev =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h.w, Eigen::EigenvaluesOnly).eigenvalues();
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) == 0.0) throw NumericalError("logdet_identity_check: singular shift");
        s += std::log(std::abs(ev(i)));
    }
    c.rhs = 0.5 * s + 0.5 * n * std::log(static_cast<double>(n));
    return c;
}

cplx stieltjes_imaginary(const Hermitized& h, double eta) {
    require(eta > 0.0, "stieltjes_imaginary: eta must be positive");
    double s = 0.0;
    for (Eigen::Index i = 0; i < h.singular_values.size(); ++i) {
        const double sv = h.singular_values(i);
        s += 1.0 / (sv * sv + eta * eta);
    }
    return {0.0, eta * s / h.n};
}

StieltjesLogDet logdet_from_stieltjes(const Hermitized& h, double T, const StieltjesGrid& grid) {
    const Eigen::VectorXd& sv = h.singular_values;
    const double smin = sv(0);
    const double smax = sv(sv.size() - 1);
    require(T >= 10.0 * smax, "logdet_from_stieltjes: T must be at least 10 ||W||");
    require(grid.nodes >= 5, "logdet_from_stieltjes: too few nodes");
    StieltjesLogDet out;
    out.eta_min = grid.eta_min > 0.0 ? grid.eta_min : std::max(1e-3 * smin, 1e-12);
    require(out.eta_min <= smin, "logdet_from_stieltjes: eta_min exceeds the least singular value");

    // Simpson on u = log eta, with (nodes - 1) a multiple of 4 so that the
    // half-resolution rule shares the grid.
    const int intervals = ((grid.nodes - 1 + 3) / 4) * 4;
    const double u0 = std::log(out.eta_min);
    const double u1 = std::log(T);
    const double hstep = (u1 - u0) / intervals;
    std::vector<double> f(intervals + 1);
    for (int i = 0; i <= intervals; ++i) {
        const double eta = std::exp(u0 + i * hstep);
        // 2n Im s(i eta) d eta = sum 2 eta^2 / (sigma^2 + eta^2) du
        double g = 0.0;
        for (Eigen::Index k = 0; k < sv.size(); ++k) g += 2.0 * eta * eta / (sv(k) * sv(k) + eta * eta);
        f[i] = g;
    }
    const double full = simpson(f, hstep, 1);
    const double half = simpson(f, hstep, 2);

    double logdet_shifted = 0.0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) logdet_shifted += std::log(sv(k) * sv(k) + T * T);

    out.value = logdet_shifted - full;
    out.quadrature_error = std::abs(full - half);
    out.truncation_bound = smin > 0.0 ? h.n * out.eta_min / smin : 0.0;
    return out;
}

double least_singular_value(const SquareMatrix& m, cplx z) {
    return ascending_singular_values(shifted_scaled(m, z))(0);
}

long counting_function(const Hermitized& h, double a, double b) {
    long c = 0;
    for (Eigen::Index i = 0; i < h.singular_values.size(); ++i) {
        const double s = h.singular_values(i);
        if (s >= a && s <= b) ++c;
        if (-s >= a && -s <= b) ++c;
    }
    return c;
}

Eigen::MatrixXcd resolvent(const Eigen::MatrixXcd& w, double eta) {
    require(eta > 0.0, "resolvent: eta must be positive");
    Eigen::MatrixXcd a = w;
    a.diagonal().array() -= cplx(0.0, eta);
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(a).inverse();
}

cplx resolvent_entry(const Hermitized& h, double eta, int i, int j) {
    require(eta > 0.0, "resolvent_entry: eta must be positive");
    const int dim = static_cast<int>(h.w.rows());
    require(i >= 1 && i <= dim && j >= 1 && j <= dim, "resolvent_entry: index out of range");
    Eigen::MatrixXcd a = h.w;
    a.diagonal().array() -= cplx(0.0, eta);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    e(j - 1) = 1.0;
    const Eigen::VectorXcd x = Eigen::PartialPivLU<Eigen::MatrixXcd>(a).solve(e);
    return x(i - 1);
}

Eigen::MatrixXcd ElementaryMatrix::dense(int dim) const {
    require(a >= 1 && a <= dim && b >= 1 && b <= dim, "ElementaryMatrix: index out of range");
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(dim, dim);
    const int p = a - 1, q = b - 1;
    const cplx i(0.0, 1.0);
    switch (form) {
        case Form::diagonal:
            v(p, p) = 1.0;
            break;
        case Form::symmetric:
            require(a != b, "ElementaryMatrix: indices must differ");
            v(p, q) = 1.0;
            v(q, p) = 1.0;
            break;
        case Form::antisymmetric:
            require(a != b, "ElementaryMatrix: indices must differ");
            v(p, q) = i;
            v(q, p) = -i;
            break;
    }
    return v;
}

double norm_inf1(const Eigen::MatrixXcd& a) { return a.cwiseAbs().maxCoeff(); }

Eigen::MatrixXcd neumann_update(const Eigen::MatrixXcd& r0, const ElementaryMatrix& v, double t, int order,
                                double scale_n) {
    require(order >= 0, "neumann_update: order must be nonnegative");
    require(scale_n > 0.0, "neumann_update: scale must be positive");
    const Eigen::MatrixXcd rv = r0 * v.dense(static_cast<int>(r0.rows()));
    const double step = -t / std::sqrt(scale_n);
    if (std::abs(step) * rv.norm() >= 1.0)
        throw DomainError("neumann_update: |t| ||R0 V|| is not small against sqrt(n)");
    Eigen::MatrixXcd sum = r0;
    Eigen::MatrixXcd x = r0;
    double coef = 1.0;
    for (int j = 1; j <= order; ++j) {
        x = rv * x;
        coef *= step;
        sum += coef * x;
    }
    return sum;
}

std::vector<cplx> stieltjes_taylor_coeffs(const Eigen::MatrixXcd& r0, const ElementaryMatrix& v, int k) {
    require(k >= 1 && k <= 4, "stieltjes_taylor_coeffs: k must lie in [1, 4]");
    const double dim = static_cast<double>(r0.rows());
    const Eigen::MatrixXcd rv = r0 * v.dense(static_cast<int>(r0.rows()));
    std::vector<cplx> c;
    Eigen::MatrixXcd x = r0;
    double sign = 1.0;
    for (int j = 1; j <= k; ++j) {
        x = rv * x;
        sign = -sign;
        c.push_back(sign * x.trace() / dim);
    }
    return c;
}

cplx stieltjes_taylor_polynomial(cplx s0, const std::vector<cplx>& c, double t, double scale_n) {
    cplx s = s0;
    double p = 1.0;
    for (const cplx& cj : c) {
        p *= t / std::sqrt(scale_n);
        s += cj * p;
    }
    return s;
}

}  // namespace rmtlab
