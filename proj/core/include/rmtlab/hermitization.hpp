#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "rmtlab/ensembles.hpp"

namespace rmtlab {

using cplx = std::complex<double>;

// W = [[0, (M - z)/sqrt(n)], [(M - z)^*/sqrt(n), 0]] together with the
// singular values of (M - z)/sqrt(n), sorted ascending.
struct Hermitized {
    Eigen::MatrixXcd w;
    cplx z;
    int n = 0;
    Eigen::VectorXd singular_values;
};

Hermitized hermitize(const SquareMatrix& m, cplx z);

struct IdentityCheck {
    double lhs = 0.0;  // log|det(M - z)| from LU
    double rhs = 0.0;  // 1/2 log|det W| + 1/2 n log n from the eigenvalues of W
};

IdentityCheck logdet_identity_check(const SquareMatrix& m, cplx z);

// s(i eta) = (1/2n) tr (W - i eta)^{-1} = (i eta / n) sum_j 1/(sigma_j^2 + eta^2).
cplx stieltjes_imaginary(const Hermitized& h, double eta);

struct StieltjesGrid {
    int nodes = 10001;     // Simpson nodes on the log-spaced grid (odd)
    double eta_min = 0.0;  // 0 selects max(1e-3 sigma_min, 1e-12)
};

struct StieltjesLogDet {
    double value = 0.0;         // reconstructed log|det W|
    double eta_min = 0.0;
    double truncation_bound = 0.0;  // bound on the omitted [0, eta_min] segment
    double quadrature_error = 0.0;  // |Simpson - half-resolution Simpson|
};

// log|det W| = log|det(W - iT)| - 2n Im int_0^T s(i eta) d eta, T >= 10 ||W||.
StieltjesLogDet logdet_from_stieltjes(const Hermitized& h, double T, const StieltjesGrid& grid = {});

double least_singular_value(const SquareMatrix& m, cplx z);

// Number of eigenvalues of W in the closed interval [a, b].
long counting_function(const Hermitized& h, double a, double b);

// ((W - i eta)^{-1})_{ij}, indices 1..2n.
cplx resolvent_entry(const Hermitized& h, double eta, int i, int j);

// (W - i eta)^{-1}.
Eigen::MatrixXcd resolvent(const Eigen::MatrixXcd& w, double eta);

// e_a e_a^*, e_a e_b^* + e_b e_a^*, or i e_a e_b^* - i e_b e_a^*, indices from 1.
struct ElementaryMatrix {
    enum class Form { diagonal, symmetric, antisymmetric };
    Form form = Form::diagonal;
    int a = 1;
    int b = 1;

    Eigen::MatrixXcd dense(int dim) const;
};

// Entrywise max-abs norm.
double norm_inf1(const Eigen::MatrixXcd& a);

// R0 + sum_{j=1}^{order} (-t/sqrt(scale_n))^j (R0 V)^j R0. Rejects
// |t| ||R0 V||_2 >= sqrt(scale_n), where the series diverges.
Eigen::MatrixXcd neumann_update(const Eigen::MatrixXcd& r0, const ElementaryMatrix& v, double t, int order,
                                double scale_n);

// c_j = (-1)^j (1/dim) tr((R0 V)^j R0), j = 1..k, k <= 4.
std::vector<cplx> stieltjes_taylor_coeffs(const Eigen::MatrixXcd& r0, const ElementaryMatrix& v, int k);

// s_0 + sum_j scale_n^{-j/2} c_j t^j.
cplx stieltjes_taylor_polynomial(cplx s0, const std::vector<cplx>& c, double t, double scale_n);

}  // namespace rmtlab
