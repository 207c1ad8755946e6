#include <Eigen/Dense>
#include <Eigen/SVD>

#include "quonlab/fock.hpp"

namespace quonlab {

PositivityReport positivity_float(const Matrix<double>& gram) {
  const auto n = static_cast<Eigen::Index>(gram.rows());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = gram.at(i, j);

  PositivityReport rep;
  rep.method = "eigen-selfadjoint+svd";
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  rep.min_eigenvalue = es.eigenvalues().minCoeff();
  rep.has_min_eigenvalue = true;
  rep.positive_definite = rep.min_eigenvalue > 0.0;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  const auto& sv = svd.singularValues();
  double thresh = 1e-10 * (sv.size() > 0 ? sv(0) : 0.0);
  rep.rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++rep.rank;
  return rep;
}

PositivityReport positivity_exact(const Matrix<Exact>& gram) {
  PositivityReport rep;
  rep.method = "ldlt+gauss";
  const size_t n = gram.rows();

  // LDL^T without pivoting: success with positive pivots <=> positive definite
  {
    Matrix<Exact> a = gram;
    bool pd = true;
    for (size_t k = 0; k < n && pd; ++k) {
      mpq_class piv = a.at(k, k).is_rational() ? a.at(k, k).rational()
                                               : mpq_class(0);
      if (!a.at(k, k).is_rational() || piv <= 0) {
        pd = false;
        break;
      }
      for (size_t i = k + 1; i < n; ++i) {
        Exact f = a.at(i, k) / a.at(k, k);
        if (ScalarOps<Exact>::is_zero(f)) continue;
        for (size_t j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
      }
    }
    rep.positive_definite = pd;
  }

  // exact rank via row echelon
  {
    Matrix<Exact> a = gram;
    size_t row = 0;
    for (size_t col = 0; col < n && row < n; ++col) {
      size_t p = row;
      while (p < n && ScalarOps<Exact>::is_zero(a.at(p, col))) ++p;
      if (p == n) continue;
      if (p != row)
        for (size_t j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(row, j));
      for (size_t i = row + 1; i < n; ++i) {
        Exact f = a.at(i, col) / a.at(row, col);
        if (ScalarOps<Exact>::is_zero(f)) continue;
        for (size_t j = col; j < n; ++j) a.at(i, j) -= f * a.at(row, j);
      }
      ++row;
    }
    rep.rank = static_cast<long>(row);
  }
  return rep;
}

}  // namespace quonlab
