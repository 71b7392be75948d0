#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gaugewalk/angle.hpp"
#include "gaugewalk/lattice.hpp"

namespace gaugewalk::forms {

/// Index set of a cell as a bitmask over internal axes.
using Mask = unsigned;

int popcount(Mask m) noexcept;
/// All masks of the given degree in lexicographic order of their index sets.
std::vector<Mask> masks_of_degree(int dims, int degree);
/// Sign of the permutation sorting idx; 0 when idx repeats an axis.
int permutation_sign(const std::vector<int>& idx);
Mask mask_of(const std::vector<int>& axes);
std::vector<int> axes_of(Mask m);

/// Degree-p form with phase coefficients on the cells (x, I) of a window.
/// On open axes a cell exists iff x_a <= L_a - 2 for every a in I.
class DiscreteForm {
 public:
  DiscreteForm() = default;
  DiscreteForm(LatticeWindow window, int degree);

  const LatticeWindow& window() const noexcept { return window_; }
  int degree() const noexcept { return degree_; }
  const std::vector<Mask>& masks() const noexcept { return masks_; }

  bool has_cell(std::size_t site, Mask m) const;
  const Angle& at(std::size_t site, Mask m) const;
  void set(std::size_t site, Mask m, const Angle& v);

  /// Coefficient for an arbitrarily ordered index list; applies the
  /// permutation sign and returns zero for repeated indices.
  Angle component(std::size_t site, const std::vector<int>& axes) const;

  /// 0-form and 1-form shorthands.
  const Angle& value(std::size_t site) const { return at(site, 0); }
  const Angle& link(std::size_t site, int axis) const { return at(site, Mask{1} << axis); }

  bool exact() const;
  DiscreteForm to_float() const;
  DiscreteForm negated() const;

  /// Visit every existing cell in slot order.
  void for_each_cell(const std::function<void(std::size_t site, Mask m, const Angle&)>& fn) const;

  friend DiscreteForm operator+(const DiscreteForm& a, const DiscreteForm& b);
  friend DiscreteForm operator-(const DiscreteForm& a, const DiscreteForm& b);

 private:
  int slot(Mask m) const;

  LatticeWindow window_;
  int degree_ = 0;
  std::vector<Mask> masks_;
  std::vector<int> slot_of_mask_;
  std::vector<std::vector<Angle>> coeff_;
};

/// Largest circular distance between corresponding coefficients.
double max_distance(const DiscreteForm& a, const DiscreteForm& b);
/// Largest circular distance of any coefficient from zero.
double max_norm(const DiscreteForm& f);
bool exactly_equal(const DiscreteForm& a, const DiscreteForm& b);

DiscreteForm exterior_derivative(const DiscreteForm& f);
bool check_closed(const DiscreteForm& f, double tol);

/// Plane fluxes on fully periodic coordinate planes. Returns a description of
/// the first violated plane/slice, or nothing when every flux is in 2piZ.
std::optional<std::string> flux_violation(const DiscreteForm& F, double tol = 1e-9);

/// Tree-gauge potential with dA = F. Raises NotClosed or FluxNotQuantized.
DiscreteForm solve_potential(const DiscreteForm& F, double tol = 1e-9);

/// Constant 2-form with the given coefficient on an (a, b) plane.
DiscreteForm constant_two_form(const LatticeWindow& w, int a, int b, const Angle& value);

// --- continuum sampling ---------------------------------------------------

/// Piecewise-linear samples of a 0- or 1-form. samples[axis][site] holds the
/// m+1 values along the edge (site, site + e_axis); edges leaving an open
/// window keep only the point value at the site.
struct SampledContinuumForm {
  LatticeWindow window;
  int degree = 0;
  int refinement = 16;
  std::vector<std::vector<std::vector<double>>> samples;

  /// Throws SampleCoverage when the table does not match the window.
  void validate() const;
};

using ScalarField = std::function<double(const std::vector<double>& point)>;
using VectorField = std::function<double(int axis, const std::vector<double>& point)>;

SampledContinuumForm sample_function(const LatticeWindow& w, int m, const ScalarField& f);
SampledContinuumForm sample_one_form(const LatticeWindow& w, int m, const VectorField& a);

DiscreteForm discretize(const SampledContinuumForm& f, int degree);
SampledContinuumForm continuize(const DiscreteForm& f, int degree, int m = 16);

/// Piecewise-linear interpolant evaluated at a point along one edge.
double interpolate_edge(const SampledContinuumForm& f, std::size_t site, int axis, double t);

}  // namespace gaugewalk::forms
