#include "rmtlab/ensembles.hpp"

#include <cmath>

#include "rmtlab/errors.hpp"

namespace rmtlab {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

struct AtomName {
    AtomKind kind;
    const char* name;
};

constexpr AtomName kNames[] = {
    {AtomKind::RealGaussian, "gaussian-r"},     {AtomKind::ComplexGaussian, "gaussian-c"},
    {AtomKind::RealBernoulli, "bernoulli-r"},   {AtomKind::ComplexBernoulli, "bernoulli-c"},
    {AtomKind::RealFourMatch, "fourmatch-r"},   {AtomKind::ComplexFourMatch, "fourmatch-c"},
};

double bernoulli(Rng& rng) { return (rng.bits() >> 63) ? 1.0 : -1.0; }

double fourmatch(Rng& rng) {
    // {-sqrt3, 0, +sqrt3} with probabilities {1/6, 2/3, 1/6}.
    const std::uint64_t k = rng.below(6);
    if (k == 0) return -kSqrt3;
    if (k == 1) return kSqrt3;
    return 0.0;
}

double double_factorial_odd(int a) {
    // (a-1)!! for even a, the a-th moment of N(0,1).
    double r = 1.0;
    for (int k = a - 1; k > 1; k -= 2) r *= k;
    return r;
}

// E X^a for the real one-dimensional law underlying each family, unit variance.
double unit_moment(AtomKind kind, int a) {
    if (a == 0) return 1.0;
    if (a % 2 == 1) return 0.0;
    switch (kind) {
        case AtomKind::RealGaussian:
        case AtomKind::ComplexGaussian:
            return double_factorial_odd(a);
        case AtomKind::RealBernoulli:
        case AtomKind::ComplexBernoulli:
            return 1.0;
        case AtomKind::RealFourMatch:
        case AtomKind::ComplexFourMatch:
            // Finite sum over the support: 2 * (1/6) * sqrt3^a.
            return 2.0 / 6.0 * std::pow(kSqrt3, a);
    }
    return 0.0;
}

}  // namespace

Field AtomDistribution::field() const {
    switch (kind) {
        case AtomKind::RealGaussian:
        case AtomKind::RealBernoulli:
        case AtomKind::RealFourMatch:
            return Field::real;
        default:
            return Field::complex;
    }
}

bool AtomDistribution::is_gaussian() const {
    return kind == AtomKind::RealGaussian || kind == AtomKind::ComplexGaussian;
}

std::string AtomDistribution::name() const {
    for (const auto& e : kNames)
        if (e.kind == kind) return e.name;
    return "unknown";
}

AtomDistribution AtomDistribution::parse(const std::string& name) {
    for (const auto& e : kNames)
        if (name == e.name) return AtomDistribution{e.kind};
    throw DomainError("unknown ensemble '" + name + "'");
}

cplx sample_atom(AtomDistribution atom, Rng& rng) {
    switch (atom.kind) {
        case AtomKind::RealGaussian:
            return {rng.normal(), 0.0};
        case AtomKind::ComplexGaussian:
            return rng.complex_normal();
        case AtomKind::RealBernoulli:
            return {bernoulli(rng), 0.0};
        case AtomKind::ComplexBernoulli: {
            const double re = bernoulli(rng);
            return {re * M_SQRT1_2, bernoulli(rng) * M_SQRT1_2};
        }
        case AtomKind::RealFourMatch:
            return {fourmatch(rng), 0.0};
        case AtomKind::ComplexFourMatch: {
            const double re = fourmatch(rng);
            return {re * M_SQRT1_2, fourmatch(rng) * M_SQRT1_2};
        }
    }
    return {};
}

SquareMatrix sample_matrix(const EnsembleSpec& spec, Rng& rng) {
    require(spec.n >= 1, "sample_matrix: n must be at least 1");
    SquareMatrix m;
    m.field = spec.atom.field();
    m.a.resize(spec.n, spec.n);
    for (int i = 0; i < spec.n; ++i)
        for (int j = 0; j < spec.n; ++j) m.a(i, j) = sample_atom(spec.atom, rng);
    return m;
}

SquareMatrix sample_matrix(const EnsembleSpec& spec) {
    Rng rng(spec.seed);
    return sample_matrix(spec, rng);
}

double sample_chi_squared(ChiSpec spec, Rng& rng) {
    require(spec.degrees >= 1, "sample_chi: degrees must be at least 1");
    if (spec.field == Field::complex) return rng.gamma(spec.degrees);
    return 2.0 * rng.gamma(0.5 * spec.degrees);
}

double sample_chi(ChiSpec spec, Rng& rng) { return std::sqrt(sample_chi_squared(spec, rng)); }

MomentTable moment_table(AtomDistribution atom, int order) {
    require(order >= 0 && order <= 8, "moment_table: order must lie in [0, 8]");
    MomentTable t;
    const bool cx = atom.field() == Field::complex;
    for (int a = 0; a <= order; ++a) {
        for (int b = 0; a + b <= order; ++b) {
            double v;
            if (cx) {
                const double s = std::pow(M_SQRT1_2, a + b);
                v = s * unit_moment(atom.kind, a) * unit_moment(atom.kind, b);
            } else {
                v = b == 0 ? unit_moment(atom.kind, a) : 0.0;
            }
            t[{a, b}] = v;
        }
    }
    return t;
}

int matching_order(AtomDistribution a, AtomDistribution b) {
    const MomentTable ta = moment_table(a, 8);
    const MomentTable tb = moment_table(b, 8);
    for (int k = 1; k <= 8; ++k) {
        for (int p = 0; p <= k; ++p) {
            const double x = ta.at({p, k - p});
            const double y = tb.at({p, k - p});
            if (std::abs(x - y) > 1e-12 * std::max(1.0, std::abs(x))) return k - 1;
        }
    }
    return 8;
}

}  // namespace rmtlab
