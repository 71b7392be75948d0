#include "gaugewalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "gaugewalk/error.hpp"
#include "gaugewalk/parallel.hpp"

namespace gaugewalk::spectral {

namespace {

void require_reduced(std::int64_t p, std::int64_t q) {
  if (q < 1) raise(ErrorCode::InvalidArgument, "flux denominator must be positive");
  if (std::gcd(p < 0 ? -p : p, q) != 1)
    raise(ErrorCode::NotReduced, std::to_string(p) + "/" + std::to_string(q) + " is not in lowest terms");
}

// 2 pi (p j mod q) / q, so flux rows that differ by whole turns agree bit for bit.
double flux_phase(std::int64_t p, std::int64_t q, std::int64_t j) {
  std::int64_t r = (p % q) * (j % q) % q;
  if (r < 0) r += q;
  return kTwoPi * (static_cast<double>(r) / static_cast<double>(q));
}

Matrix shift_block(const walk::Subshift& s, int d, std::int64_t p, std::int64_t q, double k1, double k2) {
  const Eigen::Index n = static_cast<Eigen::Index>(q) * d;
  Matrix S = Matrix::Zero(n, n);
  for (std::int64_t j = 0; j < q; ++j)
    for (int c = 0; c < d; ++c) {
      const int h = walk::hop(s, c);
      const Eigen::Index col = j * d + c;
      if (h == 0) {
        S(col, col) = 1.0;
        continue;
      }
      if (s.axis == 1) {
        std::int64_t jt = j + h;
        cplx phase = 1.0;
        if (jt == q) {
          jt = 0;
          phase = std::polar(1.0, -k1);
        } else if (jt < 0) {
          jt = q - 1;
          phase = std::polar(1.0, k1);
        }
        S(jt * d + c, col) += phase;
      } else {
        const double b = flux_phase(p, q, j);
        S(col, col) += std::polar(1.0, -h * k2 + (h > 0 ? b : -b));
      }
    }
  return S;
}

std::vector<double> grid_k(int n) {
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) k[i] = kTwoPi * static_cast<double>(i) / n;
  return k;
}

Spectrum collect(std::int64_t p, std::int64_t q, const std::vector<std::pair<double, double>>& ks,
                 const std::vector<std::vector<double>>& omegas, double merge_gap) {
  Spectrum out;
  for (std::size_t i = 0; i < ks.size(); ++i)
    for (std::size_t b = 0; b < omegas[i].size(); ++b)
      out.samples.push_back({p, q, ks[i].first, ks[i].second, static_cast<int>(b), omegas[i][b]});
  out.bands = identify_bands(omegas, merge_gap);
  out.band_count = static_cast<int>(out.bands.size());
  return out;
}

}  // namespace

double default_merge_gap() { return kTwoPi / (8.0 * kDefaultBins); }

BlochMatrix bloch_matrix(const walk::WalkDecomposition& dec, std::int64_t p, std::int64_t q, double k1, double k2) {
  require_reduced(p, q);
  dec.validate(2);
  const int d = dec.d;
  const Eigen::Index n = static_cast<Eigen::Index>(q) * d;
  Matrix M = Matrix::Identity(n, n);
  for (const walk::Factor& f : dec.factors) {
    if (const walk::Coin* c = std::get_if<walk::Coin>(&f)) {
      if (!c->constant()) raise(ErrorCode::Unsupported, "Bloch matrices need site- and time-independent coins");
      const Matrix C = c->at(0, 0);
      for (std::int64_t j = 0; j < q; ++j) M.middleRows(j * d, d) = (C * M.middleRows(j * d, d)).eval();
    } else {
      M = shift_block(std::get<walk::Subshift>(f), d, p, q, k1, k2) * M;
    }
  }
  return {p, q, k1, k2, std::move(M)};
}

std::vector<Band> identify_bands(const std::vector<std::vector<double>>& omega_by_k, double merge_gap) {
  std::vector<Band> out;
  if (omega_by_k.empty() || omega_by_k[0].empty()) return out;
  const std::size_t nb = omega_by_k[0].size();
  // cut[b]: levels b and b+1 (cyclically) are separate bands.
  std::vector<bool> cut(nb, true);
  for (std::size_t b = 0; b < nb; ++b) {
    double widest = 0.0;
    for (const auto& w : omega_by_k) {
      const double gap = (b + 1 < nb) ? w[b + 1] - w[b] : w[0] + kTwoPi - w[nb - 1];
      widest = std::max(widest, gap);
    }
    cut[b] = !(widest < merge_gap);
  }
  if (nb == 1) cut[0] = true;
  std::size_t start = 0;
  while (start < nb && !cut[(start + nb - 1) % nb]) ++start;
  auto make_band = [&](const std::vector<int>& members) {
    Band band;
    band.members = members;
    band.lo = INFINITY;
    band.hi = -INFINITY;
    for (int b : members)
      for (const auto& w : omega_by_k) {
        band.lo = std::min(band.lo, w[b]);
        band.hi = std::max(band.hi, w[b]);
      }
    return band;
  };
  if (start == nb) {
    std::vector<int> all(nb);
    std::iota(all.begin(), all.end(), 0);
    out.push_back(make_band(all));
    return out;
  }
  std::vector<int> members;
  for (std::size_t i = 0; i < nb; ++i) {
    const std::size_t b = (start + i) % nb;
    members.push_back(static_cast<int>(b));
    if (cut[b]) {
      out.push_back(make_band(members));
      members.clear();
    }
  }
  std::sort(out.begin(), out.end(), [](const Band& a, const Band& b) { return a.members.front() < b.members.front(); });
  return out;
}

Spectrum spectrum_sweep(const walk::WalkDecomposition& dec, std::int64_t p, std::int64_t q, int n, unsigned threads,
                        double merge_gap) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "k-grid needs at least one point");
  require_reduced(p, q);
  dec.validate(2);
  const auto k = grid_k(n);
  std::vector<std::pair<double, double>> ks;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ks.emplace_back(k[i], k[j]);
  std::vector<std::vector<double>> omegas(ks.size());
  parallel_for(ks.size(), threads, [&](std::size_t i) {
    const auto B = bloch_matrix(dec, p, q, ks[i].first, ks[i].second);
    const auto ev = unitary_eigenvalues(B.entries);
    omegas[i].reserve(ev.size());
    for (const auto& e : ev) omegas[i].push_back(e.argument);
  });
  return collect(p, q, ks, omegas, merge_gap);
}

std::vector<std::pair<std::int64_t, std::int64_t>> flux_values(int qmax, int periods) {
  if (qmax < 1) raise(ErrorCode::InvalidArgument, "qmax must be at least 1");
  if (periods < 1) raise(ErrorCode::InvalidArgument, "periods must be at least 1");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t q = 1; q <= qmax; ++q)
    for (std::int64_t p = 0; p <= q * periods; ++p)
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return static_cast<__int128>(a.first) * b.second < static_cast<__int128>(b.first) * a.second;
  });
  return out;
}

int omega_bin(double omega, int bins) {
  const int b = static_cast<int>(std::floor((omega + kPi) / kTwoPi * bins));
  return std::clamp(b, 0, bins - 1);
}

const ButterflyRow* ButterflyGrid::find(std::int64_t p, std::int64_t q) const {
  for (const auto& r : rows)
    if (r.p == p && r.q == q) return &r;
  return nullptr;
}

ButterflyGrid butterfly(const walk::WalkDecomposition& dec, int qmax, int n, int bins, int periods, unsigned threads) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "k-grid needs at least one point");
  if (bins < 1) raise(ErrorCode::InvalidArgument, "bins must be positive");
  dec.validate(2);
  ButterflyGrid grid{qmax, n, bins, periods, {}};
  const auto fluxes = flux_values(qmax, periods);
  const auto k = grid_k(n);
  // One task per (flux, k1); integer hit counts merge in any order.
  const std::size_t tasks = fluxes.size() * static_cast<std::size_t>(n);
  std::vector<std::vector<std::uint64_t>> partial(tasks);
  parallel_for(tasks, threads, [&](std::size_t t) {
    const auto [p, q] = fluxes[t / n];
    const double k1 = k[t % n];
    auto& counts = partial[t];
    counts.assign(bins, 0);
    for (int j = 0; j < n; ++j) {
      const auto B = bloch_matrix(dec, p, q, k1, k[j]);
      for (const auto& e : unitary_eigenvalues(B.entries)) ++counts[omega_bin(e.argument, bins)];
    }
  });
  for (std::size_t r = 0; r < fluxes.size(); ++r) {
    ButterflyRow row{fluxes[r].first, fluxes[r].second, std::vector<std::uint64_t>(bins, 0)};
    for (int i = 0; i < n; ++i) {
      const auto& c = partial[r * n + i];
      for (int b = 0; b < bins; ++b) row.counts[b] += c[b];
    }
    grid.rows.push_back(std::move(row));
  }
  return grid;
}

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string spectrum_csv(const std::vector<SpectrumSample>& samples) {
  std::ostringstream os;
  os << "p,q,k1,k2,band,omega\n";
  for (const auto& s : samples)
    os << s.p << ',' << s.q << ',' << g17(s.k1) << ',' << g17(s.k2) << ',' << s.band << ',' << g17(s.omega) << '\n';
  return os.str();
}

std::string butterfly_csv(const ButterflyGrid& grid) {
  std::ostringstream os;
  os << "flux,omega_bin,count\n";
  for (const auto& r : grid.rows) {
    const std::string flux = g17(static_cast<double>(r.p) / static_cast<double>(r.q));
    for (int b = 0; b < grid.bins; ++b)
      if (r.counts[b]) os << flux << ',' << b << ',' << r.counts[b] << '\n';
  }
  return os.str();
}

std::string butterfly_pgm(const ButterflyGrid& grid) {
  std::uint64_t peak = 0;
  for (const auto& r : grid.rows)
    for (auto c : r.counts) peak = std::max(peak, c);
  std::string out = "P5\n" + std::to_string(grid.bins) + " " + std::to_string(grid.rows.size()) + "\n255\n";
  for (const auto& r : grid.rows)
    for (auto c : r.counts) {
      unsigned v = 0;
      if (c > 0)
        v = std::max<unsigned>(1, static_cast<unsigned>(std::lround(255.0 * static_cast<double>(c) / peak)));
      out.push_back(static_cast<char>(v));
    }
  return out;
}

Matrix electric_bloch_matrix(const walk::Coin& coin, std::int64_t p, std::int64_t q, double k) {
  require_reduced(p, q);
  if (coin.dim() != 2 || !coin.constant()) raise(ErrorCode::Unsupported, "electric regrouping needs a constant 2x2 coin");
  const Eigen::Index n = 2 * static_cast<Eigen::Index>(q);
  Matrix S = Matrix::Zero(n, n);
  for (std::int64_t j = 0; j < q; ++j) {
    const std::int64_t fwd = j + 1 == q ? 0 : j + 1;
    S(2 * fwd, 2 * j) = j + 1 == q ? std::polar(1.0, -k) : cplx(1.0);
    const std::int64_t bwd = j == 0 ? q - 1 : j - 1;
    S(2 * bwd + 1, 2 * j + 1) = j == 0 ? std::polar(1.0, k) : cplx(1.0);
  }
  const Matrix C = coin.at(0, 0);
  Matrix M = S;
  for (std::int64_t j = 0; j < q; ++j) {
    M.middleRows(2 * j, 2) = (C * M.middleRows(2 * j, 2)).eval();
    M.middleRows(2 * j, 2) *= std::polar(1.0, flux_phase(p, q, j));
  }
  return M;
}

Spectrum regroup_1d_electric(const walk::Coin& coin, std::int64_t p, std::int64_t q, int n, unsigned threads,
                             double merge_gap) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "k-grid needs at least one point");
  require_reduced(p, q);
  const auto k = grid_k(n);
  std::vector<std::pair<double, double>> ks;
  for (double v : k) ks.emplace_back(v, 0.0);
  std::vector<std::vector<double>> omegas(ks.size());
  parallel_for(ks.size(), threads, [&](std::size_t i) {
    for (const auto& e : unitary_eigenvalues(electric_bloch_matrix(coin, p, q, ks[i].first)))
      omegas[i].push_back(e.argument);
  });
  return collect(p, q, ks, omegas, merge_gap);
}

}  // namespace gaugewalk::spectral
