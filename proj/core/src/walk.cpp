#include "gaugewalk/walk.hpp"

#include <algorithm>
#include <cmath>

#include "gaugewalk/error.hpp"

namespace gaugewalk::walk {

namespace {

constexpr double kUnitaryTol = 1e-12;
// Squared amplitude below which an escaping component counts as rounding noise.
constexpr double kEscapeTol = 1e-28;

}  // namespace

Matrix rotation_x(double theta) {
  Matrix m(2, 2);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << cplx(c, 0), cplx(0, -s), cplx(0, -s), cplx(c, 0);
  return m;
}

Matrix rotation_y(double theta) {
  Matrix m(2, 2);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << c, -s, s, c;
  return m;
}

Matrix hadamard() {
  Matrix m(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  m << r, r, r, -r;
  return m;
}

double unitarity_residual(const Matrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  const Matrix r = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return r.cwiseAbs().maxCoeff();
}

Coin Coin::hadamard() {
  Coin c;
  c.kind_ = Kind::named;
  c.name_ = "hadamard";
  c.dim_ = 2;
  c.m_ = walk::hadamard();
  return c;
}

Coin Coin::identity(int d) {
  if (d < 1) raise(ErrorCode::InvalidArgument, "coin dimension must be positive");
  Coin c;
  c.kind_ = Kind::named;
  c.name_ = "identity";
  c.dim_ = d;
  c.m_ = Matrix::Identity(d, d);
  return c;
}

Coin Coin::matrix(Matrix m) {
  if (m.rows() != m.cols() || m.rows() == 0) raise(ErrorCode::InvalidArgument, "coin matrix must be square");
  if (unitarity_residual(m) > kUnitaryTol) raise(ErrorCode::NonUnitaryFactor, "coin matrix is not unitary");
  Coin c;
  c.kind_ = Kind::matrix;
  c.name_ = "matrix";
  c.dim_ = static_cast<int>(m.rows());
  c.m_ = std::move(m);
  return c;
}

Coin Coin::site_table(std::vector<Matrix> table) {
  if (table.empty()) raise(ErrorCode::InvalidArgument, "coin table is empty");
  Coin c;
  c.kind_ = Kind::table;
  c.name_ = "table";
  c.dim_ = static_cast<int>(table[0].rows());
  for (const Matrix& m : table) {
    if (m.rows() != c.dim_ || m.cols() != c.dim_) raise(ErrorCode::InvalidArgument, "coin table mixes dimensions");
    if (unitarity_residual(m) > kUnitaryTol) raise(ErrorCode::NonUnitaryFactor, "coin table entry is not unitary");
  }
  c.table_ = std::move(table);
  return c;
}

Coin Coin::rotation(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) raise(ErrorCode::InvalidArgument, "rotation angles must be finite");
  Coin c;
  c.kind_ = Kind::rotation;
  c.name_ = "rotation";
  c.dim_ = 2;
  c.theta_ = theta;
  c.phi_ = phi;
  return c;
}

Matrix Coin::at(std::size_t site, long t) const {
  switch (kind_) {
    case Kind::named:
    case Kind::matrix: return m_;
    case Kind::table: return table_.at(site);
    case Kind::rotation: return rotation_y(theta_) * rotation_x(static_cast<double>(t) * phi_);
  }
  return m_;
}

int hop(const Subshift& s, int c) {
  if (std::find(s.proj.begin(), s.proj.end(), c) != s.proj.end()) return s.power;
  return s.mode == ShiftMode::conditional ? -s.power : 0;
}

int WalkDecomposition::jump_length() const {
  int n = 0;
  for (const Factor& f : factors)
    if (std::holds_alternative<Subshift>(f)) ++n;
  return n;
}

void WalkDecomposition::validate(int space_dims) const {
  if (d < 1) raise(ErrorCode::InvalidArgument, "internal dimension must be positive");
  for (const Factor& f : factors) {
    if (const Coin* c = std::get_if<Coin>(&f)) {
      if (c->dim() != d)
        raise(ErrorCode::InvalidArgument, "coin of dimension " + std::to_string(c->dim()) + " in a walk with d = " +
                                              std::to_string(d));
      continue;
    }
    const Subshift& s = std::get<Subshift>(f);
    if (s.axis < 1 || s.axis > space_dims)
      raise(ErrorCode::AxisOutOfRange, "shift axis " + std::to_string(s.axis) + " outside 1.." + std::to_string(space_dims));
    if (s.power != 1 && s.power != -1) raise(ErrorCode::InvalidArgument, "shift power must be +1 or -1");
    if (s.mode == ShiftMode::conditional && d < 2) raise(ErrorCode::InvalidArgument, "conditional shifts need d >= 2");
    for (int c : s.proj)
      if (c < 0 || c >= d) raise(ErrorCode::InvalidArgument, "projector index " + std::to_string(c) + " out of range");
  }
}

CoupledWalk::CoupledWalk(WalkDecomposition decomposition, gauge::TranslationSystem system)
    : decomp_(std::move(decomposition)), system_(std::move(system)) {
  space_ = system_.window().spatial();
  decomp_.validate(space_.dims());
  for (const Factor& f : decomp_.factors)
    if (const Coin* c = std::get_if<Coin>(&f); c && c->kind() == Coin::Kind::table && c->table().size() != space_.size())
      raise(ErrorCode::WindowMismatch, "coin table does not cover the spatial window");
  temporal_ = true;
  if (system_.window().has_time()) {
    const auto flat = system_.flat_directions();
    temporal_ = std::find(flat.begin(), flat.end(), 0) != flat.end();
  }
}

CoupledWalk minimal_couple(const WalkDecomposition& decomposition, const gauge::TranslationSystem& system) {
  return CoupledWalk(decomposition, system);
}

long CoupledWalk::time_slice(long t) const {
  const LatticeWindow& w = system_.window();
  if (!w.has_time()) return 0;
  const long L = w.extent(0);
  if (w.periodic(0)) return ((t % L) + L) % L;
  if (t < 0 || t > L - 2)
    raise(ErrorCode::BoundaryReached, "time " + std::to_string(t) + " is beyond the horizon of the field");
  return t;
}

std::size_t CoupledWalk::spacetime_index(long t, std::size_t site) const {
  const LatticeWindow& w = system_.window();
  if (!w.has_time()) return site;
  return static_cast<std::size_t>(time_slice(t)) + site * static_cast<std::size_t>(w.extent(0));
}

Angle CoupledWalk::space_phase(long t, std::size_t site, int a) const {
  const int axis = system_.window().has_time() ? a + 1 : a;
  return system_.phase(spacetime_index(t, site), axis);
}

Angle CoupledWalk::time_phase(long t, std::size_t site) const {
  if (!system_.window().has_time()) return Angle{};
  return system_.phase(spacetime_index(t, site), 0);
}

Vector CoupledWalk::apply(const Vector& psi, long t, bool strict) const {
  const int d = decomp_.d;
  const std::size_t N = space_.size();
  if (static_cast<std::size_t>(psi.size()) != N * d) raise(ErrorCode::InvalidArgument, "state has the wrong size");
  Vector cur = psi;
  for (const Factor& f : decomp_.factors) {
    if (const Coin* c = std::get_if<Coin>(&f)) {
      if (c->constant()) {
        const Matrix m = c->at(0, t);
        for (std::size_t x = 0; x < N; ++x) cur.segment(x * d, d) = m * cur.segment(x * d, d);
      } else {
        for (std::size_t x = 0; x < N; ++x) cur.segment(x * d, d) = c->at(x, t) * cur.segment(x * d, d);
      }
      continue;
    }
    const Subshift& s = std::get<Subshift>(f);
    const int a = s.axis - 1;
    Vector next = Vector::Zero(cur.size());
    for (std::size_t x = 0; x < N; ++x) {
      for (int c = 0; c < d; ++c) {
        const cplx amp = cur[x * d + c];
        const int h = hop(s, c);
        if (h == 0) {
          next[x * d + c] += amp;
          continue;
        }
        if (amp == cplx(0.0)) continue;
        const auto y = space_.step(x, a, h);
        if (!y) {
          if (strict && std::norm(amp) > kEscapeTol)
            raise(ErrorCode::BoundaryReached, "amplitude reached the edge of the open window");
          continue;
        }
        const Angle phase = h > 0 ? space_phase(t, x, a) : -space_phase(t, *y, a);
        next[*y * d + c] += amp * phase.phase();
      }
    }
    cur = std::move(next);
  }
  if (system_.window().has_time() && !temporal_) {
    for (std::size_t x = 0; x < N; ++x) cur.segment(x * d, d) *= time_phase(t, x).phase();
  }
  return cur;
}

Vector CoupledWalk::step(const Vector& psi, long t) const { return apply(psi, t, true); }

Matrix CoupledWalk::kernel(long t) const {
  const std::size_t n = state_size();
  Matrix K = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector e = Vector::Zero(n);
    e[j] = 1.0;
    Vector col = apply(e, t, false);
    if (std::abs(col.squaredNorm() - 1.0) > 1e-12) continue;
    K.col(j) = col;
  }
  return K;
}

Matrix CoupledWalk::to_matrix(long t) const {
  if (!space_.all_periodic())
    raise(ErrorCode::UnsupportedForMatrix, "matrix export needs a periodic spatial window");
  const std::size_t n = state_size();
  Matrix K(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector e = Vector::Zero(n);
    e[j] = 1.0;
    K.col(j) = apply(e, t, true);
  }
  return K;
}

WalkState WalkState::localized(const LatticeWindow& w, int d, const Site& x, const Vector& internal) {
  if (internal.size() != d) raise(ErrorCode::InvalidArgument, "internal vector has the wrong dimension");
  const double n = internal.norm();
  if (n == 0.0) raise(ErrorCode::InvalidArgument, "initial internal state is zero");
  WalkState s;
  s.window = w;
  s.d = d;
  s.amplitudes = Vector::Zero(w.size() * d);
  s.amplitudes.segment(w.index(x) * d, d) = internal / n;
  return s;
}

std::vector<double> position_distribution(const WalkState& state) {
  std::vector<double> p(state.window.size(), 0.0);
  for (std::size_t x = 0; x < p.size(); ++x) p[x] = state.amplitudes.segment(x * state.d, state.d).squaredNorm();
  return p;
}

Observables observables(const WalkState& state, const WalkState& initial, unsigned kinds) {
  Observables o;
  o.norm = state.norm();
  const auto p = position_distribution(state);
  if (kinds & Observe::position) o.distribution = p;
  if (kinds & Observe::return_prob) {
    if (initial.amplitudes.size() != state.amplitudes.size())
      raise(ErrorCode::InvalidArgument, "initial state has the wrong size");
    o.return_probability = std::norm(initial.amplitudes.dot(state.amplitudes));
  }
  if (kinds & Observe::variance) {
    const LatticeWindow& w = state.window;
    o.mean.assign(w.dims(), 0.0);
    o.variance.assign(w.dims(), 0.0);
    double total = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) total += p[x];
    for (int a = 0; a < w.dims(); ++a) {
      double m1 = 0.0, m2 = 0.0;
      for (std::size_t x = 0; x < p.size(); ++x) {
        const double q = w.position(x, a);
        m1 += p[x] * q;
        m2 += p[x] * q * q;
      }
      if (total > 0) {
        m1 /= total;
        m2 /= total;
      }
      o.mean[a] = m1;
      o.variance[a] = std::max(0.0, m2 - m1 * m1);
    }
  }
  return o;
}

Trajectory evolve(const CoupledWalk& w, const WalkState& initial, int steps, unsigned record) {
  if (steps < 0) raise(ErrorCode::InvalidArgument, "steps must be non-negative");
  if (initial.window != w.space() || initial.d != w.d())
    raise(ErrorCode::WindowMismatch, "initial state does not live on the walk's window");
  Trajectory tr;
  WalkState cur = initial;
  const double n0 = initial.norm();
  auto emit = [&](const WalkState& s) {
    const Observables o = observables(s, initial, record);
    if (record & Observe::position) tr.distributions.push_back(o.distribution);
    if (record & Observe::return_prob) tr.return_probability.push_back(o.return_probability);
    if (record & Observe::variance) tr.variance.push_back(o.variance);
    tr.norms.push_back(o.norm);
    tr.norm_drift = std::max(tr.norm_drift, std::abs(o.norm - n0));
  };
  emit(cur);
  for (int i = 0; i < steps; ++i) {
    cur.amplitudes = w.step(cur.amplitudes, cur.t);
    ++cur.t;
    emit(cur);
  }
  tr.final_state = std::move(cur);
  return tr;
}

ElectricPair electric_pair(const Coin& coin, const Angle& E, const LatticeWindow& space, int horizon) {
  if (space.dims() != 1 || space.has_time()) raise(ErrorCode::InvalidArgument, "electric pair needs a 1D spatial window");
  if (coin.dim() != 2) raise(ErrorCode::InvalidArgument, "electric pair needs a two-dimensional coin");
  if (horizon < 1) raise(ErrorCode::InvalidArgument, "horizon must be positive");
  if (space.periodic(0) && !E.scaled(space.extent(0)).is_zero(1e-9))
    raise(ErrorCode::FluxNotQuantized, "E times the ring length must be a multiple of 2pi");

  WalkDecomposition dec;
  dec.d = 2;
  dec.factors = {Subshift{1, +1, {0}, ShiftMode::conditional}, coin};

  auto linear = [](const Angle& f, double q) {
    return f.exact() ? f.scaled(static_cast<std::int64_t>(q)) : Angle::radians(f.value() * q);
  };

  const LatticeWindow ws = space.with_time(1, Boundary::torus);
  forms::DiscreteForm As(ws, 1);
  for (std::size_t x = 0; x < ws.size(); ++x) As.set(x, 1u, linear(E, ws.position(x, 1)));

  const LatticeWindow wt = space.with_time(horizon + 1, Boundary::open);
  forms::DiscreteForm At(wt, 1);
  for (std::size_t x = 0; x < wt.size(); ++x)
    if (At.has_cell(x, 2u)) At.set(x, 2u, -linear(E, wt.position(x, 0)));

  return {CoupledWalk(dec, gauge::TranslationSystem(std::move(As))),
          CoupledWalk(dec, gauge::TranslationSystem(std::move(At)))};
}

}  // namespace gaugewalk::walk
