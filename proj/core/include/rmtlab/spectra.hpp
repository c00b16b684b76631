#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "rmtlab/ensembles.hpp"

namespace rmtlab {

using cplx = std::complex<double>;

struct Spectrum {
    std::vector<cplx> eigenvalues;
    int n = 0;
};

struct SplitSpectrum {
    std::vector<double> reals;
    std::vector<cplx> upper;
    double tolerance = 0.0;
    int n = 0;
};

// Open disk |z - center| < radius.
struct Disk {
    cplx center;
    double radius = 1.0;
};

// Closed real interval [a, b]; only eigenvalues with zero imaginary part count.
struct Interval {
    double a = 0.0;
    double b = 0.0;
};

// Closed region |z - center| <= half_width, |Im z| <= height.
struct Strip {
    double center = 0.0;
    double half_width = 1.0;
    double height = 1.0;
};

using Region = std::variant<Disk, Interval, Strip>;

// Dense eigenvalues via Hessenberg reduction and the Hessenberg QR algorithm.
// Lower Hessenberg inputs skip the reduction. Non-convergence throws
// NumericalError. Real-field spectra come back exactly conjugate-symmetric.
Spectrum eigenvalues(const SquareMatrix& m);

// Snaps |Im| <= 100 n u scale to the real axis and pairs the rest greedily
// with their nearest conjugate partner.
SplitSpectrum split_real_complex(const Spectrum& s, double scale);
// scale = sqrt(n).
SplitSpectrum split_real_complex(const Spectrum& s);

bool contains(const Region& region, cplx z);
long count_region(const Spectrum& s, const Region& region);
long count_region(const std::vector<cplx>& points, const Region& region);

// Number of eigenvalues lying within tol of some other eigenvalue.
long repeated_count(const Spectrum& s, double tol);

}  // namespace rmtlab
