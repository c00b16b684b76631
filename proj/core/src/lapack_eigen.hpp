#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace rmtlab::detail {

// Eigenvalues of a general matrix (the argument is used as workspace).
std::vector<std::complex<double>> lapack_eigenvalues(Eigen::MatrixXcd& a, bool upper_hessenberg);

}  // namespace rmtlab::detail
