#pragma once

#include <complex>
#include <vector>

namespace rmtlab {

using cplx = std::complex<double>;

// Complex Ginibre kernel
//   K_n(z, w) = (1/pi) e^{-(|z|^2 + |w|^2)/2} sum_{j<n} (z conj(w))^j / j!.
cplx kernel_finite(long n, cplx z, cplx w);

// det(K_n(z_i, z_j)), 1 <= k <= 12.
double rho_k_finite(long n, const std::vector<cplx>& points);

enum class Regime { inside, outside, on_circle };

// Explicit case selection for the limiting kernel. The limiting kernel is
// discontinuous in the anchors, so callers state the case rather than rely
// on floating-point comparisons.
struct AsymptoticCase {
    bool same_anchor = true;
    Regime regime = Regime::inside;
};

Regime classify_regime(cplx anchor);

cplx kernel_infinity(AsymptoticCase c, cplx z1, cplx z2, cplx w1, cplx w2);
// Classifies by exact comparison of the inputs as given.
cplx kernel_infinity(cplx z1, cplx z2, cplx w1, cplx w2);

double rho_k_infinity(const std::vector<cplx>& anchors, const std::vector<cplx>& offsets);

struct ConvergenceRow {
    std::vector<cplx> offsets;
    std::vector<Regime> regimes;
    double rho_n = 0.0;
    double rho_inf = 0.0;
    double deviation = 0.0;
};

// |rho_n^(k)(sqrt(n) z + w) - rho_inf^(k)| for each offset tuple w.
std::vector<ConvergenceRow> kernel_convergence_report(long n, const std::vector<cplx>& anchors,
                                                      const std::vector<std::vector<cplx>>& offsets);

}  // namespace rmtlab
