#include "rmtlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lapack_eigen.hpp"
#include "rmtlab/errors.hpp"

namespace rmtlab {

namespace {

// Restores exact conjugate symmetry of a real matrix's spectrum computed in
// complex arithmetic: near-axis values become real and the rest are paired
// with their nearest conjugate partner and averaged.
std::vector<cplx> conjugate_symmetrize(std::vector<cplx> w, double scale) {
    const double tol = 100.0 * w.size() * std::numeric_limits<double>::epsilon() * 0.5 * scale;
    std::vector<double> reals;
    std::vector<cplx> up, down;
    for (cplx z : w) {
        if (std::abs(z.imag()) <= tol)
            reals.push_back(z.real());
        else
            (z.imag() > 0 ? up : down).push_back(z);
    }
    auto by_abs_imag = [](cplx a, cplx b) { return std::abs(a.imag()) < std::abs(b.imag()); };
    while (up.size() != down.size()) {
        auto& big = up.size() > down.size() ? up : down;
        auto it = std::min_element(big.begin(), big.end(), by_abs_imag);
        reals.push_back(it->real());
        big.erase(it);
    }
    std::vector<cplx> out;
    out.reserve(w.size());
    for (double x : reals) out.emplace_back(x, 0.0);
    std::vector<bool> used(down.size(), false);
    for (cplx z : up) {
        std::size_t best = 0;
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < down.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(down[j] - std::conj(z));
            if (d < dist) {
                dist = d;
                best = j;
            }
        }
        used[best] = true;
        const cplx avg = 0.5 * (z + std::conj(down[best]));
        out.push_back(avg);
        out.push_back(std::conj(avg));
    }
    return out;
}

}  // namespace

Spectrum eigenvalues(const SquareMatrix& m) {
    const int n = m.n();
    require(m.a.rows() == m.a.cols(), "eigenvalues: matrix must be square");
    require(n <= 8192, "eigenvalues: n exceeds 8192");
    if (!m.a.allFinite()) throw NumericalError("eigenvalues: matrix has non-finite entries");
    const bool hess = m.structure == MatrixStructure::lower_hessenberg;
    Spectrum s;
    s.n = n;
    // Real matrices also run through the complex routines; the real double
    // kernels of some OpenBLAS builds are unreliable.
    Eigen::MatrixXcd a = hess ? Eigen::MatrixXcd(m.a.transpose()) : m.a;
    s.eigenvalues = detail::lapack_eigenvalues(a, hess);
    if (m.field == Field::real && n > 0) {
        const double scale = std::max(m.a.norm() / std::sqrt(static_cast<double>(n)), 1e-300);
        s.eigenvalues = conjugate_symmetrize(std::move(s.eigenvalues), scale);
    }
    return s;
}

SplitSpectrum split_real_complex(const Spectrum& s, double scale) {
    const int n = static_cast<int>(s.eigenvalues.size());
    SplitSpectrum out;
    out.n = n;
    out.tolerance = 100.0 * n * std::numeric_limits<double>::epsilon() * 0.5 * scale;
    std::vector<cplx> up, down;
    for (cplx z : s.eigenvalues) {
        if (std::abs(z.imag()) <= out.tolerance)
            out.reals.push_back(z.real());
        else if (z.imag() > 0)
            up.push_back(z);
        else
            down.push_back(z);
    }
    if (up.size() != down.size()) {
        std::ostringstream os;
        os << "split_real_complex: " << up.size() << " upper vs " << down.size()
           << " lower eigenvalues (tolerance " << out.tolerance << ")";
        throw NumericalError(os.str());
    }
    std::vector<bool> used(down.size(), false);
    for (cplx z : up) {
        std::size_t best = down.size();
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < down.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(down[j] - std::conj(z));
            if (d < dist) {
                dist = d;
                best = j;
            }
        }
        used[best] = true;
        out.upper.push_back(z);
    }
    return out;
}

SplitSpectrum split_real_complex(const Spectrum& s) {
    return split_real_complex(s, std::sqrt(static_cast<double>(s.eigenvalues.size())));
}

bool contains(const Region& region, cplx z) {
    return std::visit(
        [z](const auto& r) -> bool {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return std::abs(z - r.center) < r.radius;
            } else if constexpr (std::is_same_v<T, Interval>) {
                return z.imag() == 0.0 && z.real() >= r.a && z.real() <= r.b;
            } else {
                return std::abs(z - r.center) <= r.half_width && std::abs(z.imag()) <= r.height;
            }
        },
        region);
}

long count_region(const std::vector<cplx>& points, const Region& region) {
    return std::count_if(points.begin(), points.end(), [&](cplx z) { return contains(region, z); });
}

long count_region(const Spectrum& s, const Region& region) { return count_region(s.eigenvalues, region); }

long repeated_count(const Spectrum& s, double tol) {
    require(tol > 0.0, "repeated_count: tol must be positive");
    std::vector<cplx> v = s.eigenvalues;
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    std::vector<bool> hit(v.size(), false);
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size() && v[j].real() - v[i].real() <= tol; ++j) {
            if (std::abs(v[j] - v[i]) <= tol) hit[i] = hit[j] = true;
        }
    }
    return std::count(hit.begin(), hit.end(), true);
}

}  // namespace rmtlab
