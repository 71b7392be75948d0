#include "gaugewalk/gauge.hpp"

#include <sstream>

#include "gaugewalk/error.hpp"

namespace gaugewalk::gauge {

using forms::Mask;

TranslationSystem::TranslationSystem(DiscreteForm potential) : A_(std::move(potential)) {
  if (A_.degree() != 1) raise(ErrorCode::InvalidArgument, "translation systems are built from 1-forms");
}

TranslationSystem TranslationSystem::flat(const LatticeWindow& w) { return TranslationSystem(DiscreteForm(w, 1)); }

std::vector<int> TranslationSystem::flat_directions() const {
  std::vector<int> out;
  const LatticeWindow& w = window();
  for (int a = 0; a < w.dims(); ++a) {
    bool zero = true;
    for (std::size_t x = 0; x < w.size() && zero; ++x)
      if (A_.has_cell(x, Mask{1} << a) && !A_.link(x, a).is_zero()) zero = false;
    if (zero) out.push_back(w.label(a));
  }
  return out;
}

bool TranslationSystem::is_flat() const {
  return flat_directions().size() == static_cast<std::size_t>(window().dims());
}

GaugeTransform constant_gauge(const LatticeWindow& w, const Angle& c) {
  DiscreteForm chi(w, 0);
  for (std::size_t x = 0; x < w.size(); ++x) chi.set(x, 0, c);
  return {chi};
}

PathSpec plaquette_loop(const Site& x, int a, int b) {
  return {x, {{a, +1}, {b, +1}, {a, -1}, {b, -1}}};
}

PathSpec concatenate(const PathSpec& first, const PathSpec& second) {
  PathSpec out = first;
  out.steps.insert(out.steps.end(), second.steps.begin(), second.steps.end());
  return out;
}

namespace {

std::size_t walk_path(const TranslationSystem* T, const LatticeWindow& w, const PathSpec& path, Angle* phase) {
  if (!w.contains(path.start)) raise(ErrorCode::PathEscapesWindow, "path starts outside the window");
  std::size_t x = w.index(path.start);
  Angle acc;
  for (const Step& s : path.steps) {
    const int a = w.axis_of(s.label);
    if (s.sign != 1 && s.sign != -1) raise(ErrorCode::InvalidArgument, "path steps need sign +1 or -1");
    const auto y = w.step(x, a, s.sign);
    if (!y) raise(ErrorCode::PathEscapesWindow, "path leaves the open window");
    if (T) {
      if (s.sign > 0) acc += T->phase(x, a);
      else acc -= T->phase(*y, a);
    }
    x = *y;
  }
  if (phase) *phase = acc;
  return x;
}

std::string site_text(const LatticeWindow& w, std::size_t x) {
  std::ostringstream os;
  const Site c = w.coords(x);
  os << '[';
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ']';
  return os.str();
}

}  // namespace

Site endpoint(const LatticeWindow& w, const PathSpec& path) {
  return w.coords(walk_path(nullptr, w, path, nullptr));
}

DiscreteForm plaquette_field(const TranslationSystem& T) { return forms::exterior_derivative(T.potential()); }

Angle transport_phase(const TranslationSystem& T, const PathSpec& path) {
  Angle phase;
  walk_path(&T, T.window(), path, &phase);
  return phase;
}

TranslationSystem apply_gauge(const TranslationSystem& T, const GaugeTransform& g) {
  const LatticeWindow& w = T.window();
  if (g.chi.window() != w) raise(ErrorCode::WindowMismatch, "gauge transform lives on another window");
  if (g.chi.degree() != 0) raise(ErrorCode::InvalidArgument, "gauge transform must be a 0-form");
  DiscreteForm A = T.potential();
  for (int a = 0; a < w.dims(); ++a) {
    const Mask m = Mask{1} << a;
    for (std::size_t x = 0; x < w.size(); ++x) {
      if (!A.has_cell(x, m)) continue;
      const std::size_t y = *w.step(x, a, +1);
      A.set(x, m, g.chi.value(y) + A.at(x, m) - g.chi.value(x));
    }
  }
  return TranslationSystem(std::move(A));
}

Angle cycle_holonomy(const TranslationSystem& T, std::size_t site, int axis) {
  const LatticeWindow& w = T.window();
  if (!w.periodic(axis)) raise(ErrorCode::InvalidArgument, "holonomy cycles need a periodic axis");
  Angle acc;
  std::size_t x = site;
  for (int i = 0; i < w.extent(axis); ++i) {
    acc += T.phase(x, axis);
    x = *w.step(x, axis, +1);
  }
  return acc;
}

namespace {

// chi along standard paths: the last steps run along the lowest axis.
DiscreteForm integrate_along_standard_paths(const LatticeWindow& w,
                                            const std::function<Angle(std::size_t, int)>& increment) {
  DiscreteForm chi(w, 0);
  for (std::size_t x = 1; x < w.size(); ++x) {
    int k = 0;
    while (w.coord(x, k) == 0) ++k;
    const std::size_t pred = x - w.stride(k);
    chi.set(x, 0, chi.value(pred) + increment(pred, k));
  }
  return chi;
}

}  // namespace

Equivalence gauge_equivalence(const TranslationSystem& T, const TranslationSystem& Tp, double tol) {
  const LatticeWindow& w = T.window();
  if (w != Tp.window()) raise(ErrorCode::WindowMismatch, "systems live on different windows");
  Equivalence out;
  if (w.dims() >= 2) {
    const DiscreteForm F = plaquette_field(T), Fp = plaquette_field(Tp);
    bool reported = false;
    F.for_each_cell([&](std::size_t x, Mask m, const Angle& v) {
      if (reported) return;
      const double d = circular_distance(v, Fp.at(x, m));
      if (d > tol) {
        const auto ax = forms::axes_of(m);
        std::ostringstream os;
        os << "plaquette mismatch in plane (" << w.label(ax[0]) << "," << w.label(ax[1]) << ") at "
           << site_text(w, x) << ": " << to_string(v) << " vs " << to_string(Fp.at(x, m));
        out.reason = os.str();
        out.residual = d;
        reported = true;
      }
    });
    if (reported) return out;
  }
  for (int a = 0; a < w.dims(); ++a) {
    if (!w.periodic(a)) continue;
    for (std::size_t x = 0; x < w.size(); ++x) {
      if (w.coord(x, a) != 0) continue;
      const Angle h = cycle_holonomy(T, x, a), hp = cycle_holonomy(Tp, x, a);
      const double d = circular_distance(h, hp);
      if (d > tol) {
        std::ostringstream os;
        os << "holonomy mismatch around the cycle along direction " << w.label(a) << " through "
           << site_text(w, x) << ": " << to_string(h) << " vs " << to_string(hp);
        out.reason = os.str();
        out.residual = d;
        return out;
      }
    }
  }
  GaugeTransform g{integrate_along_standard_paths(
      w, [&](std::size_t x, int k) { return Tp.phase(x, k) - T.phase(x, k); })};
  const TranslationSystem check = apply_gauge(T, g);
  out.residual = forms::max_distance(check.potential(), Tp.potential());
  if (out.residual > tol) {
    out.reason = "witness does not reproduce the target system";
    return out;
  }
  out.equivalent = true;
  out.witness = std::move(g);
  return out;
}

Canonical canonicalize_path_ordered(const TranslationSystem& T) {
  const LatticeWindow& w = T.window();
  if (w.any_periodic())
    raise(ErrorCode::UnsupportedTopology, "tree gauge needs an open window; periodic axes carry holonomy");
  GaugeTransform g{integrate_along_standard_paths(w, [&](std::size_t x, int k) { return -T.phase(x, k); })};
  TranslationSystem out = apply_gauge(T, g);
  return {std::move(out), std::move(g)};
}

Canonical temporal_gauge(const TranslationSystem& T) {
  const LatticeWindow& w = T.window();
  if (!w.has_time()) raise(ErrorCode::InvalidArgument, "window has no time axis");
  if (w.periodic(0)) raise(ErrorCode::UnsupportedTopology, "temporal gauge needs an open time axis");
  DiscreteForm chi(w, 0);
  for (std::size_t x = 0; x < w.size(); ++x) {
    if (w.coord(x, 0) == 0) continue;
    const std::size_t prev = x - w.stride(0);
    chi.set(x, 0, chi.value(prev) - T.phase(prev, 0));
  }
  GaugeTransform g{std::move(chi)};
  TranslationSystem out = apply_gauge(T, g);
  return {std::move(out), std::move(g)};
}

HomogeneousField::HomogeneousField(int dims) : n_(dims), F_(static_cast<std::size_t>(dims) * dims) {}

void HomogeneousField::set(int a, int b, const Angle& v) {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) raise(ErrorCode::AxisOutOfRange, "field index out of range");
  if (a == b) {
    if (!v.is_zero()) raise(ErrorCode::InvalidArgument, "diagonal field entries must vanish");
    return;
  }
  F_[idx(a, b)] = v;
  F_[idx(b, a)] = -v;
}

bool HomogeneousField::rational() const {
  for (const Angle& v : F_)
    if (!v.exact()) return false;
  return true;
}

bool HomogeneousField::is_zero() const {
  for (const Angle& v : F_)
    if (!v.is_zero()) return false;
  return true;
}

HomogeneousField homogeneous_from_form(const DiscreteForm& F, double tol) {
  if (F.degree() != 2) raise(ErrorCode::InvalidArgument, "homogeneous fields are 2-forms");
  const LatticeWindow& w = F.window();
  HomogeneousField H(w.dims());
  for (Mask m : F.masks()) {
    std::optional<Angle> first;
    for (std::size_t x = 0; x < w.size(); ++x) {
      if (!F.has_cell(x, m)) continue;
      const Angle& v = F.at(x, m);
      if (!first) first = v;
      else if (!approx_equal(*first, v, tol))
        raise(ErrorCode::NotHomogeneous, "field varies across plane (" + std::to_string(w.label(forms::axes_of(m)[0])) +
                                             "," + std::to_string(w.label(forms::axes_of(m)[1])) + ")");
    }
    if (first) {
      const auto ax = forms::axes_of(m);
      H.set(ax[0], ax[1], *first);
    }
  }
  return H;
}

DiscreteForm to_form(const HomogeneousField& F, const LatticeWindow& w) {
  if (F.dims() != w.dims()) raise(ErrorCode::WindowMismatch, "field and window dimensions differ");
  DiscreteForm out(w, 2);
  for (Mask m : out.masks()) {
    const auto ax = forms::axes_of(m);
    for (std::size_t x = 0; x < w.size(); ++x)
      if (out.has_cell(x, m)) out.set(x, m, F(ax[0], ax[1]));
  }
  return out;
}

namespace {

void require_wrap_consistency(const HomogeneousField& F, const LatticeWindow& w, bool upper) {
  for (int a = 0; a < w.dims(); ++a)
    for (int b = 0; b < w.dims(); ++b) {
      if ((upper ? b <= a : b >= a) || !w.periodic(b)) continue;
      const Angle wrap = F(a, b).scaled(w.extent(b));
      if (!wrap.is_zero(1e-9))
        raise(ErrorCode::FluxNotQuantized,
              "F(" + std::to_string(w.label(a)) + "," + std::to_string(w.label(b)) + ") times the extent " +
                  std::to_string(w.extent(b)) + " of the periodic axis is not a multiple of 2pi");
    }
}

Angle linear_phase(const Angle& f, double position) {
  if (f.exact()) return f.scaled(static_cast<std::int64_t>(position));
  return Angle::radians(f.value() * position);
}

}  // namespace

TranslationSystem homogeneous_system(const HomogeneousField& F, const LatticeWindow& w) {
  if (F.dims() != w.dims()) raise(ErrorCode::WindowMismatch, "field and window dimensions differ");
  if (auto msg = forms::flux_violation(to_form(F, w))) raise(ErrorCode::FluxNotQuantized, *msg);
  require_wrap_consistency(F, w, true);
  DiscreteForm A(w, 1);
  for (int a = 0; a < w.dims(); ++a) {
    const Mask m = Mask{1} << a;
    for (std::size_t x = 0; x < w.size(); ++x) {
      if (!A.has_cell(x, m)) continue;
      Angle v;
      for (int b = a + 1; b < w.dims(); ++b) v -= linear_phase(F(a, b), w.position(x, b));
      A.set(x, m, v);
    }
  }
  return TranslationSystem(std::move(A));
}

TranslationSystem dual_translations(const HomogeneousField& F, const LatticeWindow& w) {
  if (F.dims() != w.dims()) raise(ErrorCode::WindowMismatch, "field and window dimensions differ");
  if (auto msg = forms::flux_violation(to_form(F, w))) raise(ErrorCode::FluxNotQuantized, *msg);
  require_wrap_consistency(F, w, false);
  DiscreteForm A(w, 1);
  for (int a = 0; a < w.dims(); ++a) {
    const Mask m = Mask{1} << a;
    for (std::size_t x = 0; x < w.size(); ++x) {
      if (!A.has_cell(x, m)) continue;
      Angle v;
      for (int g = 0; g < a; ++g) v -= linear_phase(F(g, a), w.position(x, g));
      A.set(x, m, v);
    }
  }
  return TranslationSystem(std::move(A));
}

TranslationSystem dual_translations(const DiscreteForm& F) {
  return dual_translations(homogeneous_from_form(F), F.window());
}

Angle commutator_phase(const TranslationSystem& S, const TranslationSystem& T, int a, int b, std::size_t x) {
  const LatticeWindow& w = T.window();
  if (S.window() != w) raise(ErrorCode::WindowMismatch, "systems live on different windows");
  const auto xa = w.step(x, a, +1), xb = w.step(x, b, +1);
  if (!xa || !xb) raise(ErrorCode::PathEscapesWindow, "commutator leaves the open window");
  const Angle sa_tb = T.phase(x, b) + S.phase(*xb, a);
  const Angle tb_sa = S.phase(x, a) + T.phase(*xa, b);
  return sa_tb - tb_sa;
}

}  // namespace gaugewalk::gauge
