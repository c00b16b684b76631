#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/errors.hpp"
#include "rmtlab/logdet_flow.hpp"
#include "rmtlab/spectra.hpp"
#include "rmtlab/specialfn.hpp"

using namespace rmtlab;

namespace {

constexpr double kU = std::numeric_limits<double>::epsilon() / 2;

SquareMatrix real_matrix(const Eigen::MatrixXd& a) {
    SquareMatrix m;
    m.field = Field::real;
    m.a = a.cast<cplx>();
    return m;
}

std::vector<cplx> sorted(std::vector<cplx> v) {
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return v;
}

// Greedy matching distance between two multisets.
double matching_distance(std::vector<cplx> a, std::vector<cplx> b) {
    double worst = 0.0;
    for (cplx z : a) {
        auto it = std::min_element(b.begin(), b.end(), [z](cplx p, cplx q) { return std::abs(p - z) < std::abs(q - z); });
        worst = std::max(worst, std::abs(*it - z));
        b.erase(it);
    }
    return worst;
}

}  // namespace

TEST_CASE("eigenvalues: small closed forms") {
    const auto d = sorted(eigenvalues(real_matrix(Eigen::Vector3d(3, 1, 2).asDiagonal().toDenseMatrix())).eigenvalues);
    REQUIRE(d.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(d[i] - cplx(i + 1, 0)) < 1e-14);

    Eigen::MatrixXd comp(2, 2);
    comp << 0, 1, 1, 0;
    const auto c = sorted(eigenvalues(real_matrix(comp)).eigenvalues);
    CHECK(std::abs(c[0] + 1.0) < 1e-14);
    CHECK(std::abs(c[1] - 1.0) < 1e-14);

    SquareMatrix bad = real_matrix(comp);
    bad.a(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(eigenvalues(bad), NumericalError);
}

TEST_CASE("eigenvalues: lower Hessenberg shortcut agrees with the general path") {
    Rng rng(3);
    for (Field f : {Field::real, Field::complex}) {
        SquareMatrix h = hessenberg_matrix(40, f, rng);
        SquareMatrix g = h;
        g.structure = MatrixStructure::general;
        CHECK(matching_distance(eigenvalues(h).eigenvalues, eigenvalues(g).eigenvalues) < 1e-10);
    }
}

TEST_CASE("eigenvalues: spectral radius of complex gaussian n = 512") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto s = eigenvalues(sample_matrix(EnsembleSpec{512, AtomDistribution{AtomKind::ComplexGaussian}, seed}));
        double r = 0.0;
        for (cplx z : s.eigenvalues) r = std::max(r, std::abs(z));
        r /= std::sqrt(512.0);
        CHECK(r >= 0.95);
        CHECK(r <= 1.15);
    }
}

TEST_CASE("eigenvalues: trace consistency and conjugation closure") {
    for (AtomKind k : {AtomKind::RealGaussian, AtomKind::RealBernoulli, AtomKind::ComplexFourMatch}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const int n = 200;
            const auto m = sample_matrix(EnsembleSpec{n, AtomDistribution{k}, seed});
            const auto s = eigenvalues(m);
            REQUIRE(s.eigenvalues.size() == std::size_t(n));
            cplx sum = 0.0;
            for (cplx z : s.eigenvalues) sum += z;
            const double norm = m.a.norm();
            CHECK(std::abs(sum - m.a.trace()) <= 1e3 * n * kU * norm);
            if (m.field == Field::real) {
                std::vector<cplx> conj;
                for (cplx z : s.eigenvalues) conj.push_back(std::conj(z));
                CHECK(matching_distance(s.eigenvalues, conj) <= 10 * n * kU * norm);
            }
        }
    }
}

TEST_CASE("split_real_complex") {
    Spectrum s{{1.0, cplx(0, 1e-16), cplx(0, -1e-16)}, 3};
    auto sp = split_real_complex(s, 1.0);
    CHECK(sp.reals.size() == 3);
    CHECK(sp.upper.empty());

    s = Spectrum{{2.0, cplx(1, 1), cplx(1, -1)}, 3};
    sp = split_real_complex(s, 1.0);
    CHECK(sp.reals.size() == 1);
    REQUIRE(sp.upper.size() == 1);
    CHECK(sp.upper[0] == cplx(1, 1));

    s = Spectrum{{cplx(1, 1), cplx(2, 1), cplx(1, -1)}, 3};
    CHECK_THROWS_AS(split_real_complex(s, 1.0), NumericalError);
}

TEST_CASE("split_real_complex: invariant and mean real count at n = 100") {
    const int n = 100, samples = 2000;
    Rng rng(100);
    double total = 0.0;
    for (int i = 0; i < samples; ++i) {
        const auto sp = split_real_complex(eigenvalues(hessenberg_matrix(n, Field::real, rng)));
        CHECK(sp.reals.size() + 2 * sp.upper.size() == std::size_t(n));
        total += sp.reals.size();
    }
    CHECK(std::abs(total / samples - std::sqrt(200.0 / M_PI)) < 1.0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto sp = split_real_complex(eigenvalues(sample_matrix(EnsembleSpec{n, AtomDistribution{AtomKind::RealBernoulli}, seed})));
        CHECK(sp.reals.size() + 2 * sp.upper.size() == std::size_t(n));
    }
}

TEST_CASE("count_region: conventions") {
    CHECK(count_region(Spectrum{}, Disk{0.0, 1.0}) == 0);
    const std::vector<cplx> pts{1.0, cplx(0, 1), cplx(0.5, 0.5), 2.0, cplx(2, 1e-300)};
    CHECK(count_region(pts, Disk{0.0, 1.0}) == 1);  // open disk
    CHECK(count_region(pts, Interval{1.0, 2.0}) == 2);  // closed, real points only
    CHECK(count_region(pts, Strip{1.0, 1.0, 1.0}) == 4);  // closed strip
    CHECK(contains(Strip{0.0, 1.0, 0.5}, cplx(0.0, 0.5)));
    CHECK_FALSE(contains(Strip{0.0, 1.0, 0.5}, cplx(0.0, 0.6)));
}

TEST_CASE("count_region: additivity over disjoint regions") {
    const auto s = eigenvalues(sample_matrix(EnsembleSpec{300, AtomDistribution{AtomKind::ComplexBernoulli}, 7}));
    const double rt = std::sqrt(300.0);
    long a = 0;
    // Half-open annuli partition the plane into the disk of radius 2 rt.
    for (int k = 0; k < 8; ++k) {
        const double r0 = 0.25 * k * rt, r1 = 0.25 * (k + 1) * rt;
        a += count_region(s, Disk{0.0, r1}) - count_region(s, Disk{0.0, r0});
    }
    CHECK(a == count_region(s, Disk{0.0, 2 * rt}));
    CHECK(count_region(s, Disk{0.0, 2 * rt}) == 300);

    const auto r = eigenvalues(sample_matrix(EnsembleSpec{300, AtomDistribution{AtomKind::RealGaussian}, 8}));
    const long left = count_region(r, Interval{-3 * rt, 0.0}), right = count_region(r, Interval{0.0, 3 * rt});
    const long zero = count_region(r, Interval{0.0, 0.0});
    CHECK(left + right - zero == count_region(r, Interval{-3 * rt, 3 * rt}));
}

TEST_CASE("count_region: interval [-3 rt, 3 rt] recovers N_R") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n = 150;
        const auto s = eigenvalues(sample_matrix(EnsembleSpec{n, AtomDistribution{AtomKind::RealGaussian}, seed}));
        const double rt = std::sqrt(double(n));
        const auto sp = split_real_complex(s);
        CHECK(count_region(s, Interval{-3 * rt, 3 * rt}) == long(sp.reals.size()));
    }
}

TEST_CASE("count_region: disk B(0, sqrt n) at n = 1024") {
    // E N = sum_{k<n} P(Gamma(k+1) < n); about 0.4 sqrt(n) eigenvalues sit
    // outside the disk on average, so the count is rarely exactly n.
    const int n = 1024, trials = 40;
    double expect = 0.0;
    for (int k = 0; k < n; ++k) expect += regularized_gamma_p(k + 1.0, double(n));
    Rng rng(1024);
    double s = 0.0, s2 = 0.0;
    for (int t = 0; t < trials; ++t) {
        const long c = count_region(eigenvalues(hessenberg_matrix(n, Field::complex, rng)), Disk{0.0, std::sqrt(double(n))});
        CHECK(c >= 0.97 * n);
        s += c;
        s2 += double(c) * c;
    }
    const double mean = s / trials, se = std::sqrt((s2 / trials - mean * mean) / trials);
    INFO("mean ", mean, " expected ", expect);
    CHECK(std::abs(mean - expect) <= 4.0 * se);
}

TEST_CASE("repeated_count") {
    CHECK(repeated_count(Spectrum{{1.0, 1.0, 2.0}, 3}, 1e-6) == 2);
    CHECK(repeated_count(Spectrum{{1.0, 2.0, 3.0, cplx(1, 1)}, 4}, 1e-6) == 0);
    CHECK_THROWS_AS(repeated_count(Spectrum{{1.0}, 1}, 0.0), DomainError);
    Rng rng(256);
    for (int t = 0; t < 100; ++t) {
        const auto s = eigenvalues(hessenberg_matrix(256, Field::complex, rng));
        CHECK(repeated_count(s, 1e-8 * 16.0) == 0);
    }
}
