#include <deque>
#include <sstream>

#include "gaugewalk/error.hpp"
#include "gaugewalk/walk.hpp"

namespace gaugewalk::walk {

namespace {

constexpr double kEntryTol = 1e-12;

struct Edge {
  std::size_t to;
  Angle delta;  // chi(to) - chi(from)
};

}  // namespace

WalkEquivalence walk_gauge_equivalence(const CoupledWalk& w1, const CoupledWalk& w2, long t, double tol) {
  if (w1.space() != w2.space() || w1.d() != w2.d())
    raise(ErrorCode::WindowMismatch, "walks act on different spaces");
  const LatticeWindow& w = w1.space();
  const int d = w1.d();
  const std::size_t N = w.size();
  const Matrix K1 = w1.kernel(t), K2 = w2.kernel(t);
  const std::size_t n = static_cast<std::size_t>(K1.rows());

  WalkEquivalence out;
  std::vector<bool> live(n);
  for (std::size_t j = 0; j < n; ++j) live[j] = K1.col(j).squaredNorm() > 0.5 && K2.col(j).squaredNorm() > 0.5;

  // W1(i, j) = V(i) W2(i, j) V(j)* fixes chi(i) - chi(j) = arg W1 - arg W2.
  std::vector<std::vector<Edge>> adj(N);
  for (std::size_t j = 0; j < n; ++j) {
    if (!live[j]) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx a = K1(i, j), b = K2(i, j);
      const double ma = std::abs(a), mb = std::abs(b);
      if (ma <= kEntryTol && mb <= kEntryTol) continue;
      if (std::abs(ma - mb) > tol) {
        std::ostringstream os;
        os << "kernel moduli differ at row " << i << ", column " << j << ": " << ma << " vs " << mb;
        out.reason = os.str();
        out.residual = std::abs(ma - mb);
        return out;
      }
      const Angle delta = Angle::radians(std::arg(a) - std::arg(b));
      const std::size_t xi = i / d, xj = j / d;
      adj[xj].push_back({xi, delta});
      adj[xi].push_back({xj, -delta});
    }
  }

  std::vector<bool> seen(N, false);
  out.chi.assign(N, Angle::radians(0.0));
  double worst = 0.0;
  std::size_t worst_site = 0;
  for (std::size_t root = 0; root < N; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (const Edge& e : adj[x]) {
        const Angle want = out.chi[x] + e.delta;
        if (!seen[e.to]) {
          seen[e.to] = true;
          out.chi[e.to] = want;
          queue.push_back(e.to);
        } else {
          const double defect = circular_distance(out.chi[e.to], want);
          if (defect > worst) {
            worst = defect;
            worst_site = x;
          }
        }
      }
    }
  }
  out.defect = worst;

  double residual = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!live[j]) continue;
    const cplx vj = std::conj(out.chi[j / d].phase());
    for (std::size_t i = 0; i < n; ++i) {
      const cplx conj = out.chi[i / d].phase() * K2(i, j) * vj;
      residual = std::max(residual, std::abs(K1(i, j) - conj));
    }
  }
  out.residual = residual;

  if (worst > tol) {
    std::ostringstream os;
    const Site x = w.coords(worst_site);
    os << "plaquette mismatch of the induced systems: constraint cycle through [";
    for (std::size_t k = 0; k < x.size(); ++k) os << (k ? "," : "") << x[k];
    os << "] has phase defect " << worst;
    out.reason = os.str();
    return out;
  }
  out.equivalent = residual <= tol;
  if (!out.equivalent) out.reason = "conjugated kernels differ by " + std::to_string(residual);
  return out;
}

}  // namespace gaugewalk::walk
