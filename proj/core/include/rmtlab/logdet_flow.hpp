#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rmtlab/ensembles.hpp"
#include "rmtlab/rng.hpp"

namespace rmtlab {

using cplx = std::complex<double>;

enum class LogDetMethod { direct, hessenberg };

std::string to_string(LogDetMethod m);

// One realization of log|det(M_n - z0 sqrt(n))|.
struct LogDetSample {
    double value = 0.0;
    LogDetMethod method = LogDetMethod::direct;
    cplx z0;
    int n = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::vector<cplx> trace;  // a_1..a_n when requested
};

// LU with partial pivoting, sum of log|u_ii|. Pivots below 1e-300 in
// magnitude raise NumericalError.
double logabsdet(const Eigen::MatrixXcd& a);
double logabsdet(const SquareMatrix& a);

// 1/2 n log n + alpha n, alpha = (|z0|^2 - 1)/2 inside the unit disk and
// log|z0| outside.
double target_logdet(long n, cplx z0);

// 1/2 (|z|^2 - n) for |z| <= sqrt(n), n log(|z| / sqrt(n)) otherwise.
double potential_G(long n, cplx z);

// log E|det(M_n - z0 sqrt(n))|^2 = log(n! sum_{j<=n} |z0|^{2j} n^j / j!).
double second_moment_det(long n, cplx z0);

// 1/2 int_1^n log max(n - t, |z0|^2 n) dt in closed form.
double heuristic_integral(long n, cplx z0);

// Lower Hessenberg matrix with gaussian entries on and below the diagonal,
// chi_{n-i} at (i, i+1) (1-based) and zeros above.
SquareMatrix hessenberg_matrix(int n, Field field, Rng& rng);

// Runs the determinant recurrence for the explicit randomness supplied:
//   a_1 = xi_1 - shift,
//   a_{i+1} = -shift a_i / sqrt(|a_i|^2 + chi_i^2) + xi_{i+1},
// returning 1/2 sum_{i<n} log(|a_i|^2 + chi_i^2) + log|a_n|. Here chi has
// length n - 1 with chi[i-1] playing the role of chi_{n-i}.
double recurrence_logdet(cplx shift, const std::vector<cplx>& xi, const std::vector<double>& chi,
                         std::vector<cplx>* trace = nullptr);

// O(n) sample of log|det(M_n - z0 sqrt(n))| for gaussian M_n. The complex
// field runs with z0 rotated to -|z0|; the real field requires real z0.
LogDetSample hessenberg_logdet_sample(int n, cplx z0, Field field, Rng& rng, bool keep_trace = false);

// Direct sample: draw M_n from the atom law and factorize M_n - z0 sqrt(n).
LogDetSample direct_logdet_sample(int n, AtomDistribution atom, cplx z0, Rng& rng);

// Reduces M to upper Hessenberg form once (O(n^3)), then evaluates
// log|det(M - z)| for any shift in O(n^2).
class HessenbergLogDet {
public:
    explicit HessenbergLogDet(const SquareMatrix& m);
    explicit HessenbergLogDet(const Eigen::MatrixXcd& m);

    int n() const { return static_cast<int>(h_.rows()); }
    double operator()(cplx z) const;

private:
    Eigen::MatrixXcd h_;
};

}  // namespace rmtlab
