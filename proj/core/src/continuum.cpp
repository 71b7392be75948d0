#include <algorithm>
#include <cmath>

#include "gaugewalk/error.hpp"
#include "gaugewalk/forms.hpp"

namespace gaugewalk::forms {

namespace {

bool edge_exists(const LatticeWindow& w, std::size_t x, int a) {
  return w.periodic(a) || w.coord(x, a) <= w.extent(a) - 2;
}

std::vector<double> point_of(const LatticeWindow& w, std::size_t x) {
  std::vector<double> p(w.dims());
  for (int a = 0; a < w.dims(); ++a) p[a] = w.position(x, a);
  return p;
}

// Trapezoid rule as a running mean of the sub-interval averages; constant
// samples reproduce their value bit for bit.
double edge_integral(const std::vector<double>& s) {
  double mean = 0.0;
  for (std::size_t j = 0; j + 1 < s.size(); ++j) {
    const double avg = 0.5 * (s[j] + s[j + 1]);
    mean += (avg - mean) / static_cast<double>(j + 1);
  }
  return mean;
}

}  // namespace

void SampledContinuumForm::validate() const {
  if (degree != 0 && degree != 1) raise(ErrorCode::InvalidArgument, "continuum forms have degree 0 or 1");
  if (refinement < 1) raise(ErrorCode::SampleCoverage, "refinement must be at least 1");
  if (samples.size() != static_cast<std::size_t>(window.dims()))
    raise(ErrorCode::SampleCoverage, "sample table needs one component per axis");
  const std::size_t full = static_cast<std::size_t>(refinement) + 1;
  for (int a = 0; a < window.dims(); ++a) {
    if (samples[a].size() != window.size())
      raise(ErrorCode::SampleCoverage, "sample table does not cover every site");
    for (std::size_t x = 0; x < window.size(); ++x) {
      const auto& s = samples[a][x];
      const bool edge = edge_exists(window, x, a);
      if ((edge && s.size() != full) || (!edge && s.empty()))
        raise(ErrorCode::SampleCoverage, "edge has " + std::to_string(s.size()) + " samples, expected " +
                                             std::to_string(edge ? full : 1));
      for (double v : s)
        if (!std::isfinite(v)) raise(ErrorCode::SampleCoverage, "non-finite sample");
    }
  }
}

SampledContinuumForm sample_function(const LatticeWindow& w, int m, const ScalarField& f) {
  SampledContinuumForm out{w, 0, m, {}};
  if (m < 1) raise(ErrorCode::SampleCoverage, "refinement must be at least 1");
  out.samples.assign(w.dims(), std::vector<std::vector<double>>(w.size()));
  for (int a = 0; a < w.dims(); ++a)
    for (std::size_t x = 0; x < w.size(); ++x) {
      auto p = point_of(w, x);
      const double base = p[a];
      const int count = edge_exists(w, x, a) ? m + 1 : 1;
      auto& s = out.samples[a][x];
      s.reserve(count);
      for (int j = 0; j < count; ++j) {
        p[a] = base + static_cast<double>(j) / m;
        s.push_back(f(p));
      }
    }
  return out;
}

SampledContinuumForm sample_one_form(const LatticeWindow& w, int m, const VectorField& field) {
  SampledContinuumForm out{w, 1, m, {}};
  if (m < 1) raise(ErrorCode::SampleCoverage, "refinement must be at least 1");
  out.samples.assign(w.dims(), std::vector<std::vector<double>>(w.size()));
  for (int a = 0; a < w.dims(); ++a)
    for (std::size_t x = 0; x < w.size(); ++x) {
      auto p = point_of(w, x);
      const double base = p[a];
      const int count = edge_exists(w, x, a) ? m + 1 : 1;
      auto& s = out.samples[a][x];
      for (int j = 0; j < count; ++j) {
        p[a] = base + static_cast<double>(j) / m;
        s.push_back(field(a, p));
      }
    }
  return out;
}

DiscreteForm discretize(const SampledContinuumForm& f, int degree) {
  f.validate();
  if (degree != f.degree)
    raise(ErrorCode::InvalidArgument, "discretize degree does not match the sampled form");
  const LatticeWindow& w = f.window;
  DiscreteForm out(w, degree);
  if (degree == 0) {
    for (std::size_t x = 0; x < w.size(); ++x) out.set(x, 0, Angle::radians(f.samples[0][x][0]));
    return out;
  }
  for (int a = 0; a < w.dims(); ++a) {
    const Mask m = Mask{1} << a;
    for (std::size_t x = 0; x < w.size(); ++x)
      if (out.has_cell(x, m)) out.set(x, m, Angle::radians(edge_integral(f.samples[a][x])));
  }
  return out;
}

SampledContinuumForm continuize(const DiscreteForm& f, int degree, int m) {
  if (degree != 0 && degree != 1) raise(ErrorCode::InvalidArgument, "continuize supports degrees 0 and 1");
  if (f.degree() != degree) raise(ErrorCode::InvalidArgument, "continuize degree does not match the form");
  if (m < 1) raise(ErrorCode::SampleCoverage, "refinement must be at least 1");
  const LatticeWindow& w = f.window();
  SampledContinuumForm out{w, degree, m, {}};
  out.samples.assign(w.dims(), std::vector<std::vector<double>>(w.size()));
  for (int a = 0; a < w.dims(); ++a) {
    for (std::size_t x = 0; x < w.size(); ++x) {
      auto& s = out.samples[a][x];
      const bool edge = edge_exists(w, x, a);
      if (degree == 0) {
        const double v0 = f.value(x).value();
        if (!edge) {
          s.push_back(v0);
          continue;
        }
        const double v1 = f.value(*w.step(x, a, +1)).value();
        for (int j = 0; j <= m; ++j) s.push_back(v0 + (static_cast<double>(j) / m) * (v1 - v0));
      } else {
        if (!edge) {
          s.push_back(0.0);
          continue;
        }
        s.assign(static_cast<std::size_t>(m) + 1, f.link(x, a).value());
      }
    }
  }
  return out;
}

double interpolate_edge(const SampledContinuumForm& f, std::size_t site, int axis, double t) {
  const auto& s = f.samples.at(axis).at(site);
  if (s.size() == 1) return s[0];
  t = std::clamp(t, 0.0, 1.0);
  const double u = t * f.refinement;
  const int j = std::min(static_cast<int>(u), f.refinement - 1);
  const double frac = u - j;
  return s[j] + frac * (s[j + 1] - s[j]);
}

}  // namespace gaugewalk::forms
