#include "gaugewalk/forms.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>

#include "gaugewalk/error.hpp"

namespace gaugewalk::forms {

int popcount(Mask m) noexcept { return std::popcount(m); }

std::vector<Mask> masks_of_degree(int dims, int degree) {
  std::vector<Mask> out;
  if (degree < 0 || degree > dims) return out;
  for (Mask m = 0; m < (Mask{1} << dims); ++m)
    if (popcount(m) == degree) out.push_back(m);
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) { return axes_of(a) < axes_of(b); });
  return out;
}

int permutation_sign(const std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j]) return 0;
      if (idx[i] > idx[j]) sign = -sign;
    }
  return sign;
}

Mask mask_of(const std::vector<int>& axes) {
  Mask m = 0;
  for (int a : axes) m |= Mask{1} << a;
  return m;
}

std::vector<int> axes_of(Mask m) {
  std::vector<int> out;
  for (int a = 0; m; ++a, m >>= 1)
    if (m & 1u) out.push_back(a);
  return out;
}

DiscreteForm::DiscreteForm(LatticeWindow window, int degree)
    : window_(std::move(window)), degree_(degree) {
  if (degree < 0 || degree > window_.dims())
    raise(ErrorCode::DegreeOverflow, "degree " + std::to_string(degree) + " exceeds window dimension");
  masks_ = masks_of_degree(window_.dims(), degree);
  slot_of_mask_.assign(std::size_t{1} << window_.dims(), -1);
  for (std::size_t i = 0; i < masks_.size(); ++i) slot_of_mask_[masks_[i]] = static_cast<int>(i);
  coeff_.assign(masks_.size(), std::vector<Angle>(window_.size()));
}

int DiscreteForm::slot(Mask m) const {
  if (m >= slot_of_mask_.size() || slot_of_mask_[m] < 0)
    raise(ErrorCode::InvalidArgument, "index set does not match the form degree");
  return slot_of_mask_[m];
}

bool DiscreteForm::has_cell(std::size_t site, Mask m) const {
  for (int a = 0; m; ++a, m >>= 1) {
    if (!(m & 1u)) continue;
    if (!window_.periodic(a) && window_.coord(site, a) > window_.extent(a) - 2) return false;
  }
  return true;
}

const Angle& DiscreteForm::at(std::size_t site, Mask m) const {
  const int s = slot(m);
  if (site >= window_.size() || !has_cell(site, m))
    raise(ErrorCode::WindowUnderflow, "cell lies outside the open window");
  return coeff_[s][site];
}

void DiscreteForm::set(std::size_t site, Mask m, const Angle& v) {
  const int s = slot(m);
  if (site >= window_.size() || !has_cell(site, m))
    raise(ErrorCode::WindowUnderflow, "cell lies outside the open window");
  coeff_[s][site] = v;
}

Angle DiscreteForm::component(std::size_t site, const std::vector<int>& axes) const {
  const int sign = permutation_sign(axes);
  if (sign == 0) return Angle{};
  const Angle& v = at(site, mask_of(axes));
  return sign > 0 ? v : -v;
}

bool DiscreteForm::exact() const {
  bool ok = true;
  for_each_cell([&](std::size_t, Mask, const Angle& v) { ok = ok && v.exact(); });
  return ok;
}

DiscreteForm DiscreteForm::to_float() const {
  DiscreteForm out = *this;
  for (auto& col : out.coeff_)
    for (auto& v : col) v = v.to_float();
  return out;
}

DiscreteForm DiscreteForm::negated() const {
  DiscreteForm out = *this;
  for (auto& col : out.coeff_)
    for (auto& v : col) v = -v;
  return out;
}

void DiscreteForm::for_each_cell(
    const std::function<void(std::size_t, Mask, const Angle&)>& fn) const {
  for (std::size_t s = 0; s < masks_.size(); ++s)
    for (std::size_t x = 0; x < window_.size(); ++x)
      if (has_cell(x, masks_[s])) fn(x, masks_[s], coeff_[s][x]);
}

namespace {

void require_same(const DiscreteForm& a, const DiscreteForm& b) {
  if (a.window() != b.window()) raise(ErrorCode::WindowMismatch, "forms live on different windows");
  if (a.degree() != b.degree()) raise(ErrorCode::InvalidArgument, "forms have different degrees");
}

}  // namespace

DiscreteForm operator+(const DiscreteForm& a, const DiscreteForm& b) {
  require_same(a, b);
  DiscreteForm out = a;
  for (std::size_t s = 0; s < out.coeff_.size(); ++s)
    for (std::size_t x = 0; x < out.coeff_[s].size(); ++x) out.coeff_[s][x] += b.coeff_[s][x];
  return out;
}

DiscreteForm operator-(const DiscreteForm& a, const DiscreteForm& b) {
  require_same(a, b);
  DiscreteForm out = a;
  for (std::size_t s = 0; s < out.coeff_.size(); ++s)
    for (std::size_t x = 0; x < out.coeff_[s].size(); ++x) out.coeff_[s][x] -= b.coeff_[s][x];
  return out;
}

double max_distance(const DiscreteForm& a, const DiscreteForm& b) {
  require_same(a, b);
  double worst = 0.0;
  a.for_each_cell([&](std::size_t x, Mask m, const Angle& v) {
    worst = std::max(worst, circular_distance(v, b.at(x, m)));
  });
  return worst;
}

double max_norm(const DiscreteForm& f) {
  double worst = 0.0;
  f.for_each_cell([&](std::size_t, Mask, const Angle& v) {
    worst = std::max(worst, circular_distance(v, Angle{}));
  });
  return worst;
}

bool exactly_equal(const DiscreteForm& a, const DiscreteForm& b) {
  if (a.window() != b.window() || a.degree() != b.degree()) return false;
  bool same = true;
  a.for_each_cell([&](std::size_t x, Mask m, const Angle& v) {
    if (!(v == b.at(x, m))) same = false;
  });
  return same;
}

DiscreteForm exterior_derivative(const DiscreteForm& f) {
  const LatticeWindow& w = f.window();
  if (f.degree() >= w.dims())
    raise(ErrorCode::DegreeOverflow, "exterior derivative of a top-degree form");
  DiscreteForm out(w, f.degree() + 1);
  for (Mask J : out.masks()) {
    for (std::size_t x = 0; x < w.size(); ++x) {
      if (!out.has_cell(x, J)) continue;
      Angle acc;
      for (int a = 0; a < w.dims(); ++a) {
        const Mask bit = Mask{1} << a;
        if (!(J & bit)) continue;
        const Mask I = J & ~bit;
        const auto y = w.step(x, a, +1);
        if (!y) raise(ErrorCode::WindowUnderflow, "forward difference leaves the open window");
        const Angle diff = f.at(*y, I) - f.at(x, I);
        const bool odd = popcount(I & (bit - 1)) % 2 == 1;
        acc += odd ? -diff : diff;
      }
      out.set(x, J, acc);
    }
  }
  return out;
}

bool check_closed(const DiscreteForm& f, double tol) {
  if (f.degree() < 1) raise(ErrorCode::InvalidArgument, "closedness is defined for degree >= 1");
  if (f.degree() >= f.window().dims()) return true;
  const DiscreteForm df = exterior_derivative(f);
  bool closed = true;
  df.for_each_cell([&](std::size_t, Mask, const Angle& v) {
    if (closed && !v.is_zero(tol)) closed = false;
  });
  return closed;
}

std::optional<std::string> flux_violation(const DiscreteForm& F, double tol) {
  if (F.degree() != 2) raise(ErrorCode::InvalidArgument, "flux quantization applies to 2-forms");
  const LatticeWindow& w = F.window();
  for (int a = 0; a < w.dims(); ++a) {
    if (!w.periodic(a)) continue;
    for (int b = a + 1; b < w.dims(); ++b) {
      if (!w.periodic(b)) continue;
      const Mask m = (Mask{1} << a) | (Mask{1} << b);
      for (std::size_t base = 0; base < w.size(); ++base) {
        if (w.coord(base, a) != 0 || w.coord(base, b) != 0) continue;
        Angle flux;
        for (int i = 0; i < w.extent(a); ++i)
          for (int j = 0; j < w.extent(b); ++j)
            flux += F.at(base + i * w.stride(a) + j * w.stride(b), m);
        if (!flux.is_zero(tol)) {
          std::ostringstream os;
          os << "flux through plane (" << w.label(a) << "," << w.label(b) << ") at slice [";
          const Site x = w.coords(base);
          for (std::size_t k = 0; k < x.size(); ++k) os << (k ? "," : "") << x[k];
          os << "] is " << to_string(flux) << ", not a multiple of 2pi";
          return os.str();
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

struct Term {
  std::size_t link;
  int coef;
};

}  // namespace

DiscreteForm solve_potential(const DiscreteForm& F, double tol) {
  if (F.degree() != 2) raise(ErrorCode::InvalidArgument, "solve_potential expects a 2-form");
  const LatticeWindow& w = F.window();
  const int n = w.dims();
  if (!check_closed(F, tol)) raise(ErrorCode::NotClosed, "field violates the cube condition");
  if (auto msg = flux_violation(F, std::max(tol, 1e-9))) raise(ErrorCode::FluxNotQuantized, *msg);

  DiscreteForm A(w, 1);
  const std::size_t N = w.size();
  auto link_id = [N](std::size_t x, int a) { return static_cast<std::size_t>(a) * N + x; };
  std::vector<char> exists(N * n, 0), known(N * n, 0);
  for (int a = 0; a < n; ++a)
    for (std::size_t x = 0; x < N; ++x) exists[link_id(x, a)] = A.has_cell(x, Mask{1} << a);

  // Tree links plus one wrap link per periodic axis are fixed to zero.
  for (int a = 0; a < n; ++a) {
    for (std::size_t x = 0; x < N; ++x) {
      if (!exists[link_id(x, a)]) continue;
      bool seed;
      if (w.periodic(a) && w.is_wrap_link(x, a)) {
        seed = true;
        for (int b = 0; b < n; ++b)
          if (b != a && w.coord(x, b) != 0) seed = false;
      } else {
        seed = true;
        for (int b = 0; b < a; ++b)
          if (w.coord(x, b) != 0) seed = false;
      }
      if (seed) known[link_id(x, a)] = 1;
    }
  }

  struct Plaquette {
    std::size_t site;
    Mask mask;
    std::vector<Term> terms;
    int unknown = 0;
  };
  std::vector<Plaquette> plaq;
  std::vector<std::vector<std::size_t>> touching(N * n);
  for (Mask m : F.masks()) {
    const auto ax = axes_of(m);
    const int a = ax[0], b = ax[1];
    for (std::size_t x = 0; x < N; ++x) {
      if (!F.has_cell(x, m)) continue;
      const std::size_t xa = *w.step(x, a, +1), xb = *w.step(x, b, +1);
      std::vector<Term> raw{{link_id(x, a), +1}, {link_id(xa, b), +1}, {link_id(xb, a), -1}, {link_id(x, b), -1}};
      std::vector<Term> net;
      for (const Term& t : raw) {
        auto it = std::find_if(net.begin(), net.end(), [&](const Term& u) { return u.link == t.link; });
        if (it == net.end()) net.push_back(t);
        else it->coef += t.coef;
      }
      net.erase(std::remove_if(net.begin(), net.end(), [](const Term& t) { return t.coef == 0; }), net.end());
      Plaquette p{x, m, std::move(net), 0};
      for (const Term& t : p.terms) {
        if (!known[t.link]) ++p.unknown;
        touching[t.link].push_back(plaq.size());
      }
      plaq.push_back(std::move(p));
    }
  }

  std::vector<Angle> val(N * n);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < plaq.size(); ++i)
    if (plaq[i].unknown == 1) queue.push_back(i);

  auto mark_known = [&](std::size_t link) {
    known[link] = 1;
    for (std::size_t pi : touching[link])
      if (--plaq[pi].unknown == 1) queue.push_back(pi);
  };

  std::size_t next_free = 0;
  for (;;) {
    while (!queue.empty()) {
      Plaquette& p = plaq[queue.front()];
      queue.pop_front();
      if (p.unknown != 1) continue;
      Angle rest = F.at(p.site, p.mask);
      const Term* target = nullptr;
      for (const Term& t : p.terms) {
        if (!known[t.link]) {
          target = &t;
          continue;
        }
        rest -= t.coef > 0 ? val[t.link] : -val[t.link];
      }
      val[target->link] = target->coef > 0 ? rest : -rest;
      mark_known(target->link);
    }
    while (next_free < N * n && (!exists[next_free] || known[next_free])) ++next_free;
    if (next_free == N * n) break;
    mark_known(next_free);
  }

  for (int a = 0; a < n; ++a)
    for (std::size_t x = 0; x < N; ++x)
      if (exists[link_id(x, a)]) A.set(x, Mask{1} << a, val[link_id(x, a)]);

  const double residual = max_distance(exterior_derivative(A), F);
  if (residual > std::max(tol, 1e-9))
    raise(ErrorCode::NotClosed, "no potential reproduces the field (residual " + std::to_string(residual) + ")");
  return A;
}

DiscreteForm constant_two_form(const LatticeWindow& w, int a, int b, const Angle& value) {
  if (a == b) raise(ErrorCode::InvalidArgument, "plane needs two distinct axes");
  if (a < 0 || b < 0 || a >= w.dims() || b >= w.dims()) raise(ErrorCode::AxisOutOfRange, "plane axis out of range");
  DiscreteForm F(w, 2);
  const Mask m = mask_of({a, b});
  const Angle v = a < b ? value : -value;
  for (std::size_t x = 0; x < w.size(); ++x)
    if (F.has_cell(x, m)) F.set(x, m, v);
  return F;
}

}  // namespace gaugewalk::forms
