/**
 * @file eigen.hpp
 * @brief Cyclic Jacobi eigen-solver for small dense symmetric matrices.
 */
#pragma once

#include "gcorner/tensor.hpp"

#include <vector>

namespace gcorner {

struct EigenDecomposition {
    std::vector<double> values;   ///< descending
    std::vector<double> vectors;  ///< row-major K x K, column c is the eigenvector of values[c]
};

/// Full decomposition, no clamping. Throws NumericError on non-finite input.
EigenDecomposition jacobi_eigen(const SymmetricMatrix& m);

/// Descending eigenvalues of a PSD matrix. Values in [-1e-6 trace, 0) are clamped
/// to 0; anything more negative, or non-finite input, throws NumericError.
std::vector<double> eigenvalues(const SymmetricMatrix& m);

}  // namespace gcorner
