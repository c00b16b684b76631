#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rmtlab {

using cplx = std::complex<double>;

// Argument of the real Ginibre matrix kernel: a real point or a point of the
// open upper half-plane.
struct KernelArg {
    enum class Kind { real, upper };
    Kind kind = Kind::real;
    cplx value;

    static KernelArg real(double x) { return {Kind::real, cplx(x, 0.0)}; }
    static KernelArg upper(cplx z) { return {Kind::upper, z}; }
    bool is_real() const { return kind == Kind::real; }
};

enum class KernelCase { real_real, complex_complex, real_complex, complex_real };

std::string to_string(KernelCase c);

// Scalar entries of the 2x2 kernel for even n. Upper arguments need
// Im z >= 1e-8 sqrt(n); odd n is rejected.
cplx s_tilde(int n, const KernelArg& a, const KernelArg& b);
cplx ds_tilde(int n, const KernelArg& a, const KernelArg& b);
cplx is_tilde(int n, const KernelArg& a, const KernelArg& b);

struct MatrixKernelValue {
    Eigen::Matrix2cd k;  // [[DS, S], [-S(b, a), IS + E]]
    KernelCase kase = KernelCase::real_real;
};

MatrixKernelValue matrix_kernel(int n, const KernelArg& a, const KernelArg& b);

// Pfaffian correlation rho^{(k,l)}_n(xs; zs), k + l <= 6. Points of zs below
// the real axis are replaced by their conjugates.
double rho_kl(int n, const std::vector<double>& xs, const std::vector<cplx>& zs);

// rho^{(1,0)}_n(x): the density of real eigenvalues.
double expected_real_count_density(int n, double x);

// Exact E N_R for the real gaussian ensemble, even n.
double expected_real_count_exact(int n);

}  // namespace rmtlab
