#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "gaugewalk/gauge.hpp"
#include "gaugewalk/lattice.hpp"

namespace gaugewalk::walk {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Rotation about a Pauli axis: exp(-i theta sigma / 2).
Matrix rotation_x(double theta);
Matrix rotation_y(double theta);
Matrix hadamard();

class Coin {
 public:
  enum class Kind { named, matrix, table, rotation };

  static Coin hadamard();
  static Coin identity(int d);
  static Coin matrix(Matrix m);
  /// One matrix per site of the spatial window.
  static Coin site_table(std::vector<Matrix> table);
  /// C(t) = R_y(theta) R_x(t phi).
  static Coin rotation(double theta, double phi);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  int dim() const noexcept { return dim_; }
  bool constant() const noexcept { return kind_ == Kind::named || kind_ == Kind::matrix; }
  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }
  const std::vector<Matrix>& table() const noexcept { return table_; }

  Matrix at(std::size_t site, long t) const;

 private:
  Kind kind_ = Kind::named;
  std::string name_;
  int dim_ = 0;
  Matrix m_;
  std::vector<Matrix> table_;
  double theta_ = 0.0, phi_ = 0.0;
};

enum class ShiftMode { partial, conditional };

/// Shift along a spatial direction label. Components in proj hop by power;
/// the rest stay put (partial) or hop by -power (conditional).
struct Subshift {
  int axis = 1;
  int power = +1;
  std::vector<int> proj{0};
  ShiftMode mode = ShiftMode::conditional;
};

using Factor = std::variant<Coin, Subshift>;

/// Factors in application order: W = F_{n-1} ... F_1 F_0.
struct WalkDecomposition {
  int d = 2;
  std::vector<Factor> factors;

  int jump_length() const;
  /// Checks dimensions, projector indices and coin unitarity.
  void validate(int space_dims) const;
};

/// Hop vector of a shift factor for internal component c (0 when it stays).
int hop(const Subshift& s, int c);

class CoupledWalk {
 public:
  CoupledWalk(WalkDecomposition decomposition, gauge::TranslationSystem system);

  const WalkDecomposition& decomposition() const noexcept { return decomp_; }
  const gauge::TranslationSystem& system() const noexcept { return system_; }
  const LatticeWindow& space() const noexcept { return space_; }
  int d() const noexcept { return decomp_.d; }
  std::size_t state_size() const noexcept { return space_.size() * static_cast<std::size_t>(decomp_.d); }
  bool temporal() const noexcept { return temporal_; }

  /// e^{iA_0(t,x)} W(t) psi. Raises BoundaryReached when amplitude leaves an
  /// open spatial window.
  Vector step(const Vector& psi, long t) const;
  /// Dense matrix of one step; UnsupportedForMatrix on open spatial windows.
  Matrix to_matrix(long t) const;
  /// Step kernel on any window; columns whose image leaves the window are zero.
  Matrix kernel(long t) const;

  /// Spatial phase A_a(t, x) on the link leaving site x (space index).
  Angle space_phase(long t, std::size_t site, int space_axis) const;
  Angle time_phase(long t, std::size_t site) const;

 private:
  std::size_t spacetime_index(long t, std::size_t site) const;
  long time_slice(long t) const;
  Vector apply(const Vector& psi, long t, bool strict) const;

  WalkDecomposition decomp_;
  gauge::TranslationSystem system_;
  LatticeWindow space_;
  bool temporal_ = true;
};

CoupledWalk minimal_couple(const WalkDecomposition& decomposition, const gauge::TranslationSystem& system);

struct WalkState {
  long t = 0;
  LatticeWindow window;
  int d = 1;
  Vector amplitudes;

  static WalkState localized(const LatticeWindow& w, int d, const Site& x, const Vector& internal);
  double norm() const { return amplitudes.norm(); }
};

struct Observables {
  std::vector<double> distribution;
  double return_probability = 0.0;
  std::vector<double> mean;
  std::vector<double> variance;
  double norm = 0.0;
};

enum Observe : unsigned { position = 1u, return_prob = 2u, variance = 4u };

Observables observables(const WalkState& state, const WalkState& initial, unsigned kinds);
std::vector<double> position_distribution(const WalkState& state);

struct Trajectory {
  std::vector<std::vector<double>> distributions;
  std::vector<double> return_probability;
  std::vector<std::vector<double>> variance;
  std::vector<double> norms;
  double norm_drift = 0.0;
  WalkState final_state;
};

Trajectory evolve(const CoupledWalk& w, const WalkState& initial, int steps,
                  unsigned record = Observe::position | Observe::return_prob | Observe::variance);

/// Phases V = exp(i chi) on the spatial window with W1 = V W2 V*.
struct WalkEquivalence {
  bool equivalent = false;
  std::vector<Angle> chi;
  double residual = 0.0;
  std::string reason;
  double defect = 0.0;
};

WalkEquivalence walk_gauge_equivalence(const CoupledWalk& w1, const CoupledWalk& w2, long t, double tol = 1e-9);

struct ElectricPair {
  CoupledWalk static_gauge;
  CoupledWalk temporal_gauge;
};

/// 1D coined walk with W = e^{iEQ} C S versus C S(t) with A_1 = -tE, valid for
/// t < horizon. V(t, x) = e^{itEx} maps the temporal gauge onto the static one.
ElectricPair electric_pair(const Coin& coin, const Angle& E, const LatticeWindow& space, int horizon);

double unitarity_residual(const Matrix& m);

}  // namespace gaugewalk::walk
