#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace rmtlab {

using cplx = std::complex<double>;

// erf for complex argument, |z| <= 50. Throws DomainError outside that disk
// and NumericalError when the value itself overflows a double.
cplx erf_complex(cplx z);

// e^{x^2} erfc(x) for x >= 0.
double erfc_scaled(double x);

// gamma(t, x) = int_0^x y^{t-1} e^{-y} dy, and companions.
double lower_incomplete_gamma(double t, double x);
double log_lower_incomplete_gamma(double t, double x);
double regularized_gamma_p(double t, double x);
double regularized_gamma_q(double t, double x);

// sum_{m=0}^{N} g^m / m!
cplx partial_exp(long N, cplx g);
// e^{-s} sum_{m=0}^{N} g^m / m!, assembled around the largest term so that
// neither factor overflows on its own.
cplx partial_exp_scaled(long N, cplx g, cplx s);
// sum_{j=0}^{m-1} g^{2j} / (2j)!
cplx partial_cos(long m, cplx g);

// The r_{n/2}(z, x) correction term of the real Ginibre kernel (n even).
// The erfc factor is taken at |Im z|, so r_half(n, conj(z), x) equals
// conj(r_half(n, z, x)).
cplx r_half(int n, cplx z, double x);

// Antisymmetric 2m x 2m matrix stored by its strict upper triangle.
class SkewMatrix {
public:
    explicit SkewMatrix(int dim);
    // Takes the strict upper triangle of `a`; the rest is ignored.
    static SkewMatrix from_upper(const Eigen::MatrixXcd& a);

    int dim() const { return dim_; }
    cplx operator()(int i, int j) const;
    // Sets entry (i, j) for i < j, and implicitly (j, i) = -value.
    void set(int i, int j, cplx value);
    Eigen::MatrixXcd dense() const;

private:
    int dim_;
    std::vector<cplx> upper_;
    std::size_t index(int i, int j) const;
};

// Pfaffian: closed expansion for dim <= 4, Parlett-Reid elimination with
// pivoting otherwise. Odd dimension is rejected.
cplx pfaffian(const SkewMatrix& a);

}  // namespace rmtlab
