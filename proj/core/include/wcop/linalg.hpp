#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wcop/types.hpp"

namespace wcop {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Largest singular value.
double spectral_norm(const CMatrix& m);

/// (H + H*) / 2.
CMatrix hermitian_part(const CMatrix& h);

/// Eigenvalues of a Hermitian matrix, ascending (symmetric eigensolver).
std::vector<double> hermitian_eigenvalues(const CMatrix& h);

/// Eigenvalues of a general square matrix, sorted by modulus descending.
std::vector<cplx> general_eigenvalues(const CMatrix& m);

/// Leading (rows+1) x (cols+1) corner.
CMatrix leading(const CMatrix& m, int row_order, int col_order);

}  // namespace wcop
