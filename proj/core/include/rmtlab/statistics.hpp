#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "rmtlab/ensembles.hpp"
#include "rmtlab/logdet_flow.hpp"
#include "rmtlab/rng.hpp"
#include "rmtlab/spectra.hpp"

namespace rmtlab {

using cplx = std::complex<double>;

// Mean of m draws and the unbiased estimator variance s^2 / m (infinite when m = 1).
struct MCEstimate {
    double mean = 0.0;
    double variance = 0.0;
    long m = 0;

    double se() const;
};

MCEstimate estimate_from_values(const std::vector<double>& values);

// Draws F m times from `sampler`. F must be square integrable.
MCEstimate monte_carlo(const std::function<double(Rng&)>& sampler, long m, Rng& rng);

// Polynomial bump (1 - |w|^2/C^2)^6 on the disk |w| < C (or on the real
// interval |x| < C for the line variant), zero outside. `center` is the
// normalized anchor z_j; the bump sits at sqrt(n) z_j in spectral units.
struct TestFunction {
    enum class Support { disk, interval };
    cplx center;
    double radius = 1.0;
    Support support = Support::disk;

    // Profile at displacement w from the bump center.
    double value(cplx w) const;
    // Laplacian of the disk profile.
    double laplacian(cplx w) const;
    // H = (1/2 pi) Laplacian, so that sum_i F(lambda_i - c) = int log|det(M - z)| H(z - c) dz.
    double green_weight(cplx w) const;
    double sup_norm() const { return 1.0; }
    cplx spectral_center(int n) const;
};

// X = sum_i F(lambda_i - sqrt(n) z_j).
double linear_statistic(const std::vector<cplx>& eigenvalues, int n, const TestFunction& f);

struct JensenCount {
    long count = 0;
    double raw = 0.0;       // differenced Jensen functional before rounding
    double residual = 0.0;  // |raw - count|
    double rho_outer = 0.0;
    double rho_inner = 0.0;
    int attempts = 0;
};

// Counts eigenvalues of M in B(z0, r) (spectral units) from log|det(M - z)|
// on two concentric circles. The outer radius is jittered uniformly in
// [r - 1/n, r], the inner one sits 1/(2n) below it. A draw is accepted
// when the difference quotient is within 0.25 of an integer and the
// half-node rule agrees to 0.2; otherwise the radii are redrawn, up to
// `max_attempts` times before NumericalError.
JensenCount jensen_count(const HessenbergLogDet& logdet, cplx z0, double r, int m_nodes, Rng& rng,
                         int max_attempts = 16);
JensenCount jensen_count(const SquareMatrix& m, cplx z0, double r, int m_nodes, Rng& rng);

struct VarianceReducedEstimate {
    MCEstimate reduced;  // with the affine anchor L subtracted
    MCEstimate plain;    // log|det(M - z)| H(z) without subtraction
    cplx anchor;         // w_0
    int redraws = 0;
};

// Monte Carlo estimate of X_{z_j,F_j} from log-determinants: the integrand
// (log|det(M - z)| - L(z)) H(z - c) is averaged over m uniform nodes of the
// support disk and scaled by its area. L interpolates log|det(M - z)| at
// w_0, w_0 + 1, w_0 + i with w_0 uniform in B(c, 1).
VarianceReducedEstimate variance_reduced_statistic(const HessenbergLogDet& logdet, const TestFunction& f, long m,
                                                   Rng& rng);
VarianceReducedEstimate variance_reduced_statistic(const SquareMatrix& mat, const TestFunction& f, long m,
                                                   Rng& rng);

// Sum over distinct index tuples (i_1, ..., i_k) of prod_j F_j(lambda_{i_j} - sqrt(n) z_j),
// evaluated by inclusion-exclusion over eigenvalues in the union of supports. k <= 3.
double correlation_sum(const std::vector<cplx>& eigenvalues, int n, const std::vector<TestFunction>& tests);

enum class SamplingPath { automatic, direct, hessenberg };

struct RunOptions {
    int threads = 0;  // 0 selects the hardware concurrency
    SamplingPath path = SamplingPath::automatic;
};

// Replicate `index` of an experiment draws from Rng(spec.seed, index + 1).
Rng replicate_rng(const EnsembleSpec& spec, long index);

// Spectrum of one draw. The automatic path uses the Hessenberg form for
// gaussian atoms and the dense matrix otherwise.
Spectrum sample_spectrum(const EnsembleSpec& spec, Rng& rng, SamplingPath path = SamplingPath::automatic);

// Runs body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(long count, int threads, const std::function<void(long)>& body);

struct CorrelationEstimate {
    MCEstimate estimate;
    std::vector<double> values;  // per-sample statistic
};

CorrelationEstimate smoothed_correlation_statistic(const EnsembleSpec& spec, const std::vector<TestFunction>& tests,
                                                   long samples, const RunOptions& options = {});

struct GapReport {
    MCEstimate a;
    MCEstimate b;
    double gap = 0.0;
    double combined_se = 0.0;
    int matching_order = 0;
};

GapReport universality_gap(const EnsembleSpec& a, const EnsembleSpec& b, const std::vector<TestFunction>& tests,
                           long samples, const RunOptions& options = {});

struct LocalLawRow {
    cplx anchor;  // normalized
    double r = 0.0;
    double expected = 0.0;  // area(B(sqrt(n) z0, r) cap B(0, sqrt(n))) / pi
    double mean_count = 0.0;
    double mean_deviation = 0.0;  // mean |N - expected| / r
    double max_deviation = 0.0;
};

// Area of the intersection of two disks.
double disk_intersection_area(cplx c1, double r1, cplx c2, double r2);

std::vector<LocalLawRow> local_law_experiment(const EnsembleSpec& spec, const std::vector<cplx>& anchors,
                                              const std::vector<double>& radii, long samples,
                                              const RunOptions& options = {});

struct CltResult {
    double mean = 0.0;
    double variance = 0.0;
    double mean_se = 0.0;
    double skewness = 0.0;               // standardized third central moment
    std::vector<double> moments;         // E Y^k, k = 1..4, Y = (N - r^2)/(r^{1/2} pi^{-1/4})
    std::vector<long> counts;
};

CltResult clt_experiment(const EnsembleSpec& spec, cplx z0, double r, long samples, const RunOptions& options = {});

struct RealCountResult {
    double mean = 0.0;
    double variance = 0.0;
    double target_mean = 0.0;      // sqrt(2n/pi)
    double target_variance = 0.0;  // (2 - sqrt 2) sqrt(2n/pi)
    std::vector<long> counts;
};

RealCountResult real_count_experiment(const EnsembleSpec& spec, long samples, const RunOptions& options = {});

}  // namespace rmtlab
