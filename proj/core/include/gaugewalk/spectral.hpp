#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gaugewalk/walk.hpp"

namespace gaugewalk::spectral {

using walk::cplx;
using walk::Matrix;
using walk::Vector;

struct EigenPair {
  cplx value;
  double modulus = 0.0;
  double argument = 0.0;  ///< in (-pi, pi]
  Vector vector;          ///< empty unless requested
};

/// Argument of z mapped into (-pi, pi].
double quasi_energy(cplx z);

/// Eigenvalues of a unitary matrix sorted by argument. Raises
/// NotNumericallyUnitary when ||M*M - 1||_max exceeds tol.
std::vector<EigenPair> unitary_eigenvalues(const Matrix& M, bool vectors = false, double tol = 1e-8);

struct BlochMatrix {
  std::int64_t p = 0;
  std::int64_t q = 1;
  double k1 = 0.0;
  double k2 = 0.0;
  Matrix entries;
};

/// Supercell of q sites stacked along axis 1 in the gauge U_1 = 1,
/// U_2(x) = exp(2 pi i p x_1 / q). Basis (j, c) -> j d + c.
BlochMatrix bloch_matrix(const walk::WalkDecomposition& decomposition, std::int64_t p, std::int64_t q, double k1,
                         double k2);

struct SpectrumSample {
  std::int64_t p = 0;
  std::int64_t q = 1;
  double k1 = 0.0;
  double k2 = 0.0;
  int band = 0;
  double omega = 0.0;
};

struct Band {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<int> members;
};

struct Spectrum {
  std::vector<SpectrumSample> samples;
  int band_count = 0;
  std::vector<Band> bands;
};

inline constexpr int kDefaultBins = 512;
double default_merge_gap();

/// Counts bands from per-k sorted quasi-energies. Neighbouring sorted levels
/// (cyclically) merge when their separation stays below merge_gap at every k.
std::vector<Band> identify_bands(const std::vector<std::vector<double>>& omega_by_k, double merge_gap);

Spectrum spectrum_sweep(const walk::WalkDecomposition& decomposition, std::int64_t p, std::int64_t q, int n,
                        unsigned threads = 0, double merge_gap = default_merge_gap());

/// Reduced fractions p/q with q <= qmax and 0 <= p/q <= periods, ascending.
std::vector<std::pair<std::int64_t, std::int64_t>> flux_values(int qmax, int periods = 1);

int omega_bin(double omega, int bins);

struct ButterflyRow {
  std::int64_t p = 0;
  std::int64_t q = 1;
  std::vector<std::uint64_t> counts;
};

struct ButterflyGrid {
  int qmax = 1;
  int n = 1;
  int bins = kDefaultBins;
  int periods = 1;
  std::vector<ButterflyRow> rows;

  const ButterflyRow* find(std::int64_t p, std::int64_t q) const;
};

ButterflyGrid butterfly(const walk::WalkDecomposition& decomposition, int qmax, int n, int bins = kDefaultBins,
                        int periods = 1, unsigned threads = 0);

std::string spectrum_csv(const std::vector<SpectrumSample>& samples);
std::string butterfly_csv(const ButterflyGrid& grid);
/// Binary P5 image: one row per flux value, one column per bin.
std::string butterfly_pgm(const ButterflyGrid& grid);

/// 2q x 2q Bloch matrix of W = e^{iEQ} C S on the line, E = 2 pi p / q.
Matrix electric_bloch_matrix(const walk::Coin& coin, std::int64_t p, std::int64_t q, double k);
Spectrum regroup_1d_electric(const walk::Coin& coin, std::int64_t p, std::int64_t q, int n, unsigned threads = 0,
                             double merge_gap = default_merge_gap());

}  // namespace gaugewalk::spectral
