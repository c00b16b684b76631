#pragma once

#include <stdexcept>
#include <string>

namespace rmtlab {

// Precondition or configuration violation (bad size, parity, range).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computation that was well-posed but failed numerically
// (singular matrix, eigensolver non-convergence, pairing failure).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

}  // namespace rmtlab
