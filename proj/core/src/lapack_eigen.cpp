#include "lapack_eigen.hpp"

#include <string>

#include <lapacke.h>

#include "rmtlab/errors.hpp"

namespace rmtlab::detail {

namespace {

void check(lapack_int info, const char* routine) {
    if (info < 0) throw NumericalError(std::string(routine) + ": illegal argument " + std::to_string(-info));
    if (info > 0)
        throw NumericalError(std::string(routine) + ": QR iteration failed to converge (info " +
                             std::to_string(info) + ")");
}

}  // namespace

std::vector<std::complex<double>> lapack_eigenvalues(Eigen::MatrixXcd& a, bool upper_hessenberg) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    std::vector<std::complex<double>> w(n);
    if (n == 0) return w;
    auto* pa = reinterpret_cast<lapack_complex_double*>(a.data());
    if (!upper_hessenberg) {
        std::vector<std::complex<double>> tau(n > 1 ? n - 1 : 1);
        check(LAPACKE_zgehrd(LAPACK_COL_MAJOR, n, 1, n, pa, n, reinterpret_cast<lapack_complex_double*>(tau.data())),
              "zgehrd");
    }
    for (lapack_int j = 0; j < n; ++j)
        for (lapack_int i = j + 2; i < n; ++i) a(i, j) = 0.0;
    check(LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', n, 1, n, pa, n, reinterpret_cast<lapack_complex_double*>(w.data()),
                         nullptr, 1),
          "zhseqr");
    return w;
}

}  // namespace rmtlab::detail
