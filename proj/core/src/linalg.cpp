#include "wcop/linalg.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace wcop {

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

CMatrix hermitian_part(const CMatrix& h) { return 0.5 * (h + h.adjoint()); }

std::vector<double> hermitian_eigenvalues(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<cplx> general_eigenvalues(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  const auto& ev = es.eigenvalues();
  std::vector<cplx> out(ev.data(), ev.data() + ev.size());
  std::stable_sort(out.begin(), out.end(), [](cplx x, cplx y) {
    if (std::abs(x) != std::abs(y)) return std::abs(x) > std::abs(y);
    return std::arg(x) < std::arg(y);
  });
  return out;
}

CMatrix leading(const CMatrix& m, int row_order, int col_order) {
  return m.topLeftCorner(row_order + 1, col_order + 1);
}

}  // namespace wcop
