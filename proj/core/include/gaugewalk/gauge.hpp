#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gaugewalk/angle.hpp"
#include "gaugewalk/forms.hpp"
#include "gaugewalk/lattice.hpp"

namespace gaugewalk::gauge {

using forms::DiscreteForm;

/// Phases U_a(x) = exp(i A_a(x)) on the links of a window.
class TranslationSystem {
 public:
  TranslationSystem() = default;
  explicit TranslationSystem(DiscreteForm potential);

  static TranslationSystem flat(const LatticeWindow& w);

  const LatticeWindow& window() const noexcept { return A_.window(); }
  const DiscreteForm& potential() const noexcept { return A_; }
  bool exact() const { return A_.exact(); }

  /// A_a on the link (x, x + e_a); backward hops use -A_a(x - e_a).
  const Angle& phase(std::size_t site, int axis) const { return A_.link(site, axis); }
  /// Labels of the directions whose phases vanish identically.
  std::vector<int> flat_directions() const;
  bool is_flat() const;

 private:
  DiscreteForm A_;
};

struct GaugeTransform {
  DiscreteForm chi;
  GaugeTransform inverse() const { return {chi.negated()}; }
};

GaugeTransform constant_gauge(const LatticeWindow& w, const Angle& c);

struct Step {
  int label;  ///< direction label (0 = time)
  int sign;   ///< +1 or -1
};

struct PathSpec {
  Site start;
  std::vector<Step> steps;
};

/// (+a, +b, -a, -b) from x; its transport phase is F_ab(x).
PathSpec plaquette_loop(const Site& x, int label_a, int label_b);
PathSpec concatenate(const PathSpec& first, const PathSpec& second);
Site endpoint(const LatticeWindow& w, const PathSpec& path);

DiscreteForm plaquette_field(const TranslationSystem& T);
Angle transport_phase(const TranslationSystem& T, const PathSpec& path);
TranslationSystem apply_gauge(const TranslationSystem& T, const GaugeTransform& g);

struct Equivalence {
  bool equivalent = false;
  std::optional<GaugeTransform> witness;
  std::string reason;
  double residual = 0.0;
};

Equivalence gauge_equivalence(const TranslationSystem& T, const TranslationSystem& Tp, double tol = 1e-9);

/// Holonomy around the non-contractible cycle along a periodic axis
/// starting at the given site.
Angle cycle_holonomy(const TranslationSystem& T, std::size_t site, int axis);

/// Tree-gauge representative of an open-window system and its witness.
struct Canonical {
  TranslationSystem system;
  GaugeTransform witness;
};
Canonical canonicalize_path_ordered(const TranslationSystem& T);
/// Removes A_0 along an open time axis.
Canonical temporal_gauge(const TranslationSystem& T);

/// Constant antisymmetric field matrix over the internal axes of a window.
class HomogeneousField {
 public:
  explicit HomogeneousField(int dims = 0);
  int dims() const noexcept { return n_; }
  /// F_ab over internal axes; sets F_ba = -F_ab.
  void set(int a, int b, const Angle& v);
  const Angle& operator()(int a, int b) const { return F_[idx(a, b)]; }
  bool rational() const;
  bool is_zero() const;

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * n_ + b; }
  int n_;
  std::vector<Angle> F_;
};

/// NotHomogeneous unless every plane carries a single constant value.
HomogeneousField homogeneous_from_form(const DiscreteForm& F, double tol = 1e-12);
DiscreteForm to_form(const HomogeneousField& F, const LatticeWindow& w);

/// A_a(x) = -sum_{b>a} F_ab x_b: plaquette field equal to F.
TranslationSystem homogeneous_system(const HomogeneousField& F, const LatticeWindow& w);
/// A^S_a(x) = -sum_{g<a} F_ga x_g: plaquette field -F, commutes with the above.
TranslationSystem dual_translations(const HomogeneousField& F, const LatticeWindow& w);
TranslationSystem dual_translations(const DiscreteForm& F);

/// phase(S_a T_b) - phase(T_b S_a) applied at a site.
Angle commutator_phase(const TranslationSystem& S, const TranslationSystem& T, int axis_a, int axis_b,
                       std::size_t site);

struct RationalAnalysis {
  std::int64_t q1 = 1;
  std::int64_t q2 = 1;
  std::int64_t q3 = 1;
  std::vector<std::vector<std::int64_t>> basis;
  /// Smallest-index sublattice found by search (equals basis in s = 2).
  std::vector<std::vector<std::int64_t>> minimal_basis;
  std::int64_t minimal_index = 1;
  bool minimal_search_complete = false;
  std::vector<Angle> holonomy;
};

RationalAnalysis rational_analysis(const HomogeneousField& F);

/// The bilinear phase sum_{a<b} F_ab (x_a y_b - x_b y_a).
Angle commutation_phase(const HomogeneousField& F, const std::vector<std::int64_t>& x,
                        const std::vector<std::int64_t>& y);
std::int64_t determinant(const std::vector<std::vector<std::int64_t>>& basis);

}  // namespace gaugewalk::gauge
