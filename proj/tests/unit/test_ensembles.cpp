#include <cmath>

#include "doctest.h"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/errors.hpp"
#include "test_support.hpp"

using namespace rmtlab;

namespace {

const AtomKind kAll[] = {AtomKind::RealGaussian,   AtomKind::ComplexGaussian, AtomKind::RealBernoulli,
                         AtomKind::ComplexBernoulli, AtomKind::RealFourMatch,  AtomKind::ComplexFourMatch};

}  // namespace

TEST_CASE("atom names round-trip") {
    for (AtomKind k : kAll) {
        AtomDistribution a{k};
        CHECK(AtomDistribution::parse(a.name()) == a);
    }
    CHECK_THROWS_AS(AtomDistribution::parse("cauchy-r"), DomainError);
}

TEST_CASE("sample_matrix: bernoulli n=1 lands on +-1") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto m = sample_matrix(EnsembleSpec{1, AtomDistribution{AtomKind::RealBernoulli}, seed});
        const cplx v = m.a(0, 0);
        CHECK(v.imag() == 0.0);
        CHECK(std::abs(std::abs(v.real()) - 1.0) == 0.0);
    }
}

TEST_CASE("sample_matrix: determinism and n = 0 rejected") {
    const EnsembleSpec spec{7, AtomDistribution{AtomKind::ComplexFourMatch}, 99};
    CHECK(sample_matrix(spec).a == sample_matrix(spec).a);
    const EnsembleSpec other{7, AtomDistribution{AtomKind::ComplexFourMatch}, 100};
    CHECK(sample_matrix(spec).a != sample_matrix(other).a);
    CHECK_THROWS_AS(sample_matrix(EnsembleSpec{0, AtomDistribution{}, 1}), DomainError);
}

TEST_CASE("complex gaussian second moment") {
    Rng rng(5);
    const EnsembleSpec spec{2, AtomDistribution{AtomKind::ComplexGaussian}, 0};
    double s = 0.0;
    const int reps = 25000;  // 4 entries each: 10^5 draws
    for (int i = 0; i < reps; ++i) s += sample_matrix(spec, rng).a.cwiseAbs2().sum();
    CHECK(std::abs(s / (4.0 * reps) - 1.0) < 0.01);
}

TEST_CASE("sample_chi moments and quantiles") {
    Rng rng(11);
    const int m = 100000;
    double s5 = 0.0, s3c = 0.0;
    std::vector<double> half;
    for (int i = 0; i < m; ++i) {
        const double a = sample_chi(ChiSpec{5, Field::real}, rng);
        s5 += a * a;
        const double b = sample_chi(ChiSpec{3, Field::complex}, rng);
        s3c += b * b;
        half.push_back(sample_chi(ChiSpec{1, Field::real}, rng));
    }
    CHECK(std::abs(s5 / m - 5.0) < 0.1);
    CHECK(std::abs(s3c / m - 3.0) < 0.1);
    CHECK(std::abs(testing::median(half) - 0.6744897501960817) < 0.01);
    CHECK_THROWS_AS(sample_chi(ChiSpec{0, Field::real}, rng), DomainError);
}

TEST_CASE("complex chi agrees with scaled real chi (KS)") {
    Rng rng(12);
    std::vector<double> a, b;
    for (int i = 0; i < 100000; ++i) {
        a.push_back(sample_chi(ChiSpec{4, Field::complex}, rng));
        b.push_back(sample_chi(ChiSpec{8, Field::real}, rng) / std::sqrt(2.0));
    }
    CHECK(testing::ks_statistic(a, b) < 0.01);
}

TEST_CASE("moment tables") {
    CHECK(moment_table(AtomDistribution{AtomKind::RealGaussian}, 4).at({4, 0}) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(moment_table(AtomDistribution{AtomKind::RealBernoulli}, 4).at({4, 0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(moment_table(AtomDistribution{AtomKind::RealFourMatch}, 4).at({4, 0}) == doctest::Approx(3.0).epsilon(1e-14));
    for (AtomKind k : kAll) {
        const auto t = moment_table(AtomDistribution{k}, 8);
        CHECK(std::abs(t.at({1, 0})) < 1e-15);
        CHECK(std::abs(t.at({0, 1})) < 1e-15);
        CHECK(t.at({2, 0}) + t.at({0, 2}) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(moment_table(AtomDistribution{}, 9), DomainError);
}

TEST_CASE("matching_order") {
    const AtomDistribution gr{AtomKind::RealGaussian}, br{AtomKind::RealBernoulli}, fr{AtomKind::RealFourMatch};
    CHECK(matching_order(gr, br) == 3);
    // All odd moments of both laws vanish, so the literal definition reaches 5.
    CHECK(matching_order(gr, fr) == 5);
    for (AtomKind k : kAll) CHECK(matching_order(AtomDistribution{k}, AtomDistribution{k}) == 8);
    const AtomDistribution gc{AtomKind::ComplexGaussian}, fc{AtomKind::ComplexFourMatch};
    CHECK(matching_order(gc, fc) == 5);
}

TEST_CASE("empirical moments match the tables within 5 SE") {
    for (AtomKind k : kAll) {
        const AtomDistribution atom{k};
        const auto table = moment_table(atom, 4);
        Rng rng(3 + static_cast<int>(k));
        const int m = 1000000;
        std::vector<cplx> v(m);
        for (auto& x : v) x = sample_atom(atom, rng);
        for (const auto& [ab, exact] : table) {
            const auto [a, b] = ab;
            double s = 0.0, s2 = 0.0;
            for (const cplx& x : v) {
                const double t = std::pow(x.real(), a) * std::pow(x.imag(), b);
                s += t;
                s2 += t * t;
            }
            const double mean = s / m;
            const double se = std::sqrt(std::max(s2 / m - mean * mean, 0.0) / m);
            INFO(atom.name(), " moment (", a, ",", b, ")");
            CHECK(std::abs(mean - exact) <= 5.0 * se + 1e-12);
        }
    }
}
