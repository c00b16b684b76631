#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "rmtlab/rng.hpp"

namespace rmtlab {

using cplx = std::complex<double>;

enum class Field { real, complex };

enum class AtomKind {
    RealGaussian,
    ComplexGaussian,
    RealBernoulli,
    ComplexBernoulli,
    RealFourMatch,
    ComplexFourMatch,
};

// Mean zero, unit variance atom law. Complex kinds have independent real and
// imaginary parts, each of variance 1/2.
struct AtomDistribution {
    AtomKind kind = AtomKind::ComplexGaussian;

    Field field() const;
    bool is_gaussian() const;
    // CLI spelling: gaussian-r, gaussian-c, bernoulli-r, ...
    std::string name() const;
    static AtomDistribution parse(const std::string& name);

    friend bool operator==(AtomDistribution a, AtomDistribution b) { return a.kind == b.kind; }
};

struct EnsembleSpec {
    int n = 1;
    AtomDistribution atom;
    std::uint64_t seed = 0;
};

enum class MatrixStructure { general, lower_hessenberg };

// Dense n x n matrix. Real-field matrices are stored with zero imaginary
// parts; `structure` lets consumers skip reductions already performed.
struct SquareMatrix {
    Field field = Field::complex;
    MatrixStructure structure = MatrixStructure::general;
    Eigen::MatrixXcd a;

    int n() const { return static_cast<int>(a.rows()); }
};

struct ChiSpec {
    int degrees = 1;
    Field field = Field::real;
};

using MomentTable = std::map<std::pair<int, int>, double>;

cplx sample_atom(AtomDistribution atom, Rng& rng);

// Entries are drawn row by row.
SquareMatrix sample_matrix(const EnsembleSpec& spec, Rng& rng);
// Convenience overload seeding the stream from spec.seed.
SquareMatrix sample_matrix(const EnsembleSpec& spec);

double sample_chi(ChiSpec spec, Rng& rng);
// chi^2 drawn directly as a gamma variate: 2 Gamma(k/2) (real), Gamma(k) (complex).
double sample_chi_squared(ChiSpec spec, Rng& rng);

// Exact mixed moments E Re(xi)^a Im(xi)^b for a + b <= order (order <= 8).
MomentTable moment_table(AtomDistribution atom, int order);

// Largest k <= 8 such that all mixed moments of total order <= k agree.
int matching_order(AtomDistribution a, AtomDistribution b);

}  // namespace rmtlab
