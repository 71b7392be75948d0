#include <algorithm>
#include <numeric>
#include <set>

#include "gaugewalk/error.hpp"
#include "gaugewalk/gauge.hpp"

namespace gaugewalk::gauge {

namespace {

using Basis = std::vector<std::vector<std::int64_t>>;

constexpr std::int64_t kSearchBudget = 4'000'000;

bool commutes(const HomogeneousField& F, const Basis& B) {
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = i + 1; j < B.size(); ++j)
      if (!commutation_phase(F, B[i], B[j]).is_zero()) return false;
  return true;
}

// Enumerates upper-triangular Hermite normal forms of the given index and
// returns the first commuting one.
struct HnfSearch {
  const HomogeneousField& F;
  int s;
  std::int64_t budget;
  Basis H;
  std::vector<std::int64_t> diag;

  bool fill_offdiag(int col, int row) {
    if (col == s) {
      if (--budget < 0) return false;
      return commutes(F, H);
    }
    if (row == col) return fill_offdiag(col + 1, 0);
    for (std::int64_t v = 0; v < diag[col]; ++v) {
      H[row][col] = v;
      if (fill_offdiag(col, row + 1)) return true;
      if (budget < 0) return false;
    }
    H[row][col] = 0;
    return false;
  }

  bool choose_diag(int i, std::int64_t remaining) {
    if (i == s - 1) {
      diag[i] = remaining;
      for (int r = 0; r < s; ++r) {
        std::fill(H[r].begin(), H[r].end(), 0);
        H[r][r] = diag[r];
      }
      return fill_offdiag(1, 0);
    }
    for (std::int64_t d = remaining; d >= 1; --d) {
      if (remaining % d) continue;
      diag[i] = d;
      if (choose_diag(i + 1, remaining / d)) return true;
      if (budget < 0) return false;
    }
    return false;
  }

  bool run(std::int64_t index) {
    H.assign(s, std::vector<std::int64_t>(s, 0));
    diag.assign(s, 1);
    return choose_diag(0, index);
  }
};

}  // namespace

Angle commutation_phase(const HomogeneousField& F, const std::vector<std::int64_t>& x,
                        const std::vector<std::int64_t>& y) {
  const int n = F.dims();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    raise(ErrorCode::InvalidArgument, "vector dimension does not match the field");
  Angle acc;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) acc += F(a, b).scaled(x[a] * y[b] - x[b] * y[a]);
  return acc;
}

std::int64_t determinant(const Basis& B) {
  const std::size_t n = B.size();
  if (n == 0) return 1;
  if (n == 1) return B[0][0];
  __int128 det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Basis minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(B[r][k]);
      minor.push_back(std::move(row));
    }
    const __int128 term = static_cast<__int128>(B[0][c]) * determinant(minor);
    det += (c % 2 == 0) ? term : -term;
  }
  return static_cast<std::int64_t>(det);
}

RationalAnalysis rational_analysis(const HomogeneousField& F) {
  const int s = F.dims();
  if (s < 1) raise(ErrorCode::InvalidArgument, "field needs at least one axis");
  RationalAnalysis out;
  std::int64_t q1 = 1;
  std::vector<Angle> generators;
  for (int a = 0; a < s; ++a)
    for (int b = a + 1; b < s; ++b) {
      const Angle& v = F(a, b);
      if (!v.exact()) raise(ErrorCode::NotRational, "field entry " + to_string(v) + " is not a rational turn");
      q1 = std::lcm(q1, v.den());
      if (!v.is_zero()) generators.push_back(v);
    }
  out.q1 = q1;

  // Holonomy group: closure of the plaquette phases under addition.
  std::set<std::pair<std::int64_t, std::int64_t>> seen{{0, 1}};
  std::vector<Angle> frontier{Angle{}};
  out.holonomy.push_back(Angle{});
  while (!frontier.empty()) {
    std::vector<Angle> next;
    for (const Angle& h : frontier)
      for (const Angle& g : generators) {
        const Angle v = h + g;
        if (seen.insert({v.num(), v.den()}).second) {
          next.push_back(v);
          out.holonomy.push_back(v);
        }
      }
    frontier = std::move(next);
  }
  std::sort(out.holonomy.begin(), out.holonomy.end(), [](const Angle& x, const Angle& y) {
    return static_cast<__int128>(x.num()) * y.den() < static_cast<__int128>(y.num()) * x.den();
  });
  out.q3 = static_cast<std::int64_t>(out.holonomy.size());

  // Constructive commuting sublattice: q1 e_a for a < s, then e_s.
  Basis constructive(s, std::vector<std::int64_t>(s, 0));
  for (int a = 0; a < s; ++a) constructive[a][a] = (a < s - 1) ? q1 : 1;

  HnfSearch search{F, s, kSearchBudget, {}, {}};
  const std::int64_t bound = std::abs(determinant(constructive));
  bool found = false;
  for (std::int64_t index = 1; index <= bound && !found && search.budget >= 0; ++index) {
    if (search.run(index)) {
      found = true;
      out.minimal_basis = search.H;
      out.minimal_index = index;
    }
  }
  out.minimal_search_complete = found;
  if (!found) {
    out.minimal_basis = constructive;
    out.minimal_index = bound;
  }
  out.basis = (s == 2 && found) ? out.minimal_basis : constructive;
  out.q2 = std::abs(determinant(out.basis));
  return out;
}

}  // namespace gaugewalk::gauge
