#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "gaugewalk/error.hpp"
#include "gaugewalk/spectral.hpp"

namespace gaugewalk::spectral {

double quasi_energy(cplx z) {
  const double w = std::arg(z);
  return w <= -kPi ? kPi : w;
}

std::vector<EigenPair> unitary_eigenvalues(const Matrix& M, bool vectors, double tol) {
  if (M.rows() != M.cols()) raise(ErrorCode::InvalidArgument, "eigenvalues need a square matrix");
  const double res = walk::unitarity_residual(M);
  if (!(res <= tol)) raise(ErrorCode::NotNumericallyUnitary, "unitarity residual " + std::to_string(res));
  std::vector<EigenPair> out;
  if (M.rows() == 0) return out;
  Eigen::ComplexEigenSolver<Matrix> es(M, vectors);
  if (es.info() != Eigen::Success) raise(ErrorCode::Internal, "eigen decomposition did not converge");
  const auto& ev = es.eigenvalues();
  out.reserve(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    EigenPair e;
    e.value = ev[i];
    e.modulus = std::abs(ev[i]);
    e.argument = quasi_energy(ev[i]);
    if (vectors) e.vector = es.eigenvectors().col(i).normalized();
    out.push_back(std::move(e));
  }
  std::stable_sort(out.begin(), out.end(), [](const EigenPair& a, const EigenPair& b) {
    if (a.argument != b.argument) return a.argument < b.argument;
    return a.modulus < b.modulus;
  });
  return out;
}

}  // namespace gaugewalk::spectral
