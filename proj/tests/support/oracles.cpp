#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gwtest {

using gaugewalk::walk::Matrix;
using lcplx = std::complex<long double>;

std::vector<lcplx> characteristic_polynomial(const Matrix& M) {
  const int n = static_cast<int>(M.rows());
  using LM = std::vector<std::vector<lcplx>>;
  auto mul = [n](const LM& a, const LM& b) {
    LM c(n, std::vector<lcplx>(n));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
  };
  LM A(n, std::vector<lcplx>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A[i][j] = lcplx(M(i, j).real(), M(i, j).imag());

  // M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  std::vector<lcplx> c(n + 1);
  c[n] = 1;
  LM Mk(n, std::vector<lcplx>(n));
  for (int k = 1; k <= n; ++k) {
    LM next = mul(A, Mk);
    for (int i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    Mk = next;
    LM AM = mul(A, Mk);
    lcplx tr = 0;
    for (int i = 0; i < n; ++i) tr += AM[i][i];
    c[n - k] = -tr / static_cast<long double>(k);
  }
  return c;
}

std::vector<cplx> polynomial_roots(const std::vector<lcplx>& coeff) {
  const int n = static_cast<int>(coeff.size()) - 1;
  auto eval = [&](lcplx z) {
    lcplx v = coeff[n];
    for (int i = n - 1; i >= 0; --i) v = v * z + coeff[i];
    return v;
  };
  std::vector<lcplx> z(n);
  const lcplx seed(0.4L, 0.9L);
  z[0] = 1;
  for (int i = 1; i < n; ++i) z[i] = z[i - 1] * seed;
  for (int iter = 0; iter < 5000; ++iter) {
    long double change = 0;
    for (int i = 0; i < n; ++i) {
      lcplx den = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      const lcplx delta = eval(z[i]) / den;
      z[i] -= delta;
      change = std::max(change, std::abs(delta));
    }
    if (change < 1e-18L) break;
  }
  std::vector<cplx> out;
  for (auto r : z) out.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  return out;
}

std::vector<cplx> charpoly_eigenvalues(const Matrix& M) { return polynomial_roots(characteristic_polynomial(M)); }

double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const cplx& x : a) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!used[j] && std::abs(x - b[j]) < bd) {
        bd = std::abs(x - b[j]);
        best = j;
      }
    used[best] = true;
    worst = std::max(worst, bd);
  }
  return worst;
}

Matrix torus_translation(int L1, int L2, int axis) {
  const int N = L1 * L2;
  Matrix T = Matrix::Zero(N, N);
  for (int x2 = 0; x2 < L2; ++x2)
    for (int x1 = 0; x1 < L1; ++x1) {
      const int from = x1 + L1 * x2;
      const int to = axis == 0 ? (x1 + 1) % L1 + L1 * x2 : x1 + L1 * ((x2 + 1) % L2);
      T(to, from) = 1.0;
    }
  return T;
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

}  // namespace

Matrix kron_magnetic_hadamard(int L1, int L2, double B) {
  const int N = L1 * L2;
  Matrix P = Matrix::Zero(2, 2), Q = Matrix::Zero(2, 2), H(2, 2);
  P(0, 0) = 1.0;
  Q(1, 1) = 1.0;
  const double r = 1.0 / std::sqrt(2.0);
  H << r, r, r, -r;
  Matrix U = Matrix::Zero(N, N);
  for (int x = 0; x < N; ++x) U(x, x) = std::polar(1.0, B * (x % L1));
  const Matrix T1 = torus_translation(L1, L2, 0);
  // Forward hop picks up U at the departure site, backward hop the conjugate
  // at the arrival site.
  const Matrix T2 = torus_translation(L1, L2, 1) * U;
  const Matrix T2b = T2.adjoint();
  const Matrix S1 = kron(T1, P) + kron(T1.adjoint(), Q);
  const Matrix S2 = kron(T2, P) + kron(T2b, Q);
  const Matrix C = kron(Matrix::Identity(N, N), H);
  return S2 * C * S1 * C;
}

long exhaustive_gauge_search(const gaugewalk::gauge::TranslationSystem& T,
                             const gaugewalk::gauge::TranslationSystem& Tp, int n, double tol) {
  const auto& w = T.window();
  const std::size_t N = w.size();
  std::vector<int> chi(N, 0);
  long found = 0;
  const double unit = gaugewalk::kTwoPi / n;
  auto check = [&] {
    for (std::size_t x = 0; x < N; ++x)
      for (int a = 0; a < w.dims(); ++a) {
        auto y = w.step(x, a, +1);
        if (!y) continue;
        const double lhs = T.phase(x, a).value() + unit * (chi[*y] - chi[x]);
        const double d = std::remainder(lhs - Tp.phase(x, a).value(), gaugewalk::kTwoPi);
        if (std::abs(d) > tol) return false;
      }
    return true;
  };
  // Odometer over sites 1..N-1.
  while (true) {
    if (check()) ++found;
    std::size_t i = 1;
    while (i < N && ++chi[i] == n) chi[i++] = 0;
    if (i == N) break;
  }
  return found;
}

std::pair<double, double> hadamard_line_dispersion(double k) {
  // tr = -i sqrt2 sin k, det = -1: lambda = (tr +- sqrt(tr^2 + 4)) / 2.
  const cplx tr(0.0, -std::sqrt(2.0) * std::sin(k));
  const cplx disc = std::sqrt(tr * tr + 4.0);
  return {std::arg((tr + disc) / 2.0), std::arg((tr - disc) / 2.0)};
}

}  // namespace gwtest
