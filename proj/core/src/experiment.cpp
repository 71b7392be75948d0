#include <algorithm>
#include <filesystem>
#include <numeric>

#include "gaugewalk/dsl.hpp"
#include "gaugewalk/error.hpp"
#include "gaugewalk/io.hpp"

namespace gaugewalk::dsl {

namespace {

Diagnostic make(const SourcePos& p, std::string message) {
  Diagnostic d;
  d.line = p.line > 0 ? p.line : 1;
  d.col = p.col > 0 ? p.col : 1;
  d.offset = p.offset;
  d.message = std::move(message);
  return d;
}

forms::DiscreteForm load_form(const ExperimentSpec& spec) {
  const auto path = std::filesystem::path(spec.base_dir.empty() ? "." : spec.base_dir) / spec.field.path;
  return io::form_from_json(io::read_file(path.string()));
}

bool window_sane(const WindowDecl& w) {
  if (w.s < 1 || static_cast<int>(w.extents.size()) != w.s) return false;
  if (w.boundary.size() != 1 && static_cast<int>(w.boundary.size()) != w.s) return false;
  if (!w.origin.empty() && static_cast<int>(w.origin.size()) != w.s) return false;
  return std::all_of(w.extents.begin(), w.extents.end(), [](int e) { return e >= 1; });
}

int first_steps(const ExperimentSpec& spec) {
  for (const auto& r : spec.runs)
    if (r.kind == RunDecl::Kind::evolve) return std::max(r.steps, 1);
  return 1;
}

}  // namespace

LatticeWindow space_window(const ExperimentSpec& spec) {
  if (!spec.window) raise(ErrorCode::InvalidArgument, "experiment has no window");
  const WindowDecl& w = *spec.window;
  return LatticeWindow(w.extents, w.boundary, w.origin, false);
}

bool has_electric(const ExperimentSpec& spec) {
  if (spec.field.kind != FieldKind::homogeneous) return false;
  for (const auto& e : spec.field.entries)
    if ((e.a == 0 || e.b == 0) && !e.value.is_zero()) return true;
  return false;
}

std::optional<LatticeWindow> field_window(const ExperimentSpec& spec, int steps) {
  const LatticeWindow space = space_window(spec);
  // A line carries no magnetic plane; its field lives on a trivial time slice.
  if (!has_electric(spec)) return space.dims() >= 2 ? space : space.with_time(1, Boundary::torus);
  if (spec.gauge == GaugeChoice::static_field) return space.with_time(1, Boundary::torus);
  return space.with_time(std::max(steps, 1) + 1, Boundary::open);
}

forms::DiscreteForm field_form(const ExperimentSpec& spec, int steps) {
  switch (spec.field.kind) {
    case FieldKind::homogeneous: {
      const LatticeWindow w = *field_window(spec, steps);
      gauge::HomogeneousField H(w.dims());
      for (const auto& e : spec.field.entries) {
        if (!w.has_time() && (e.a == 0 || e.b == 0)) continue;
        H.set(w.axis_of(e.a), w.axis_of(e.b), e.value);
      }
      return gauge::to_form(H, w);
    }
    case FieldKind::form: return load_form(spec);
    case FieldKind::potential: return forms::exterior_derivative(load_form(spec));
    case FieldKind::none: break;
  }
  raise(ErrorCode::InvalidArgument, "experiment has no field source");
}

gauge::TranslationSystem build_system(const ExperimentSpec& spec, int steps) {
  if (spec.field.kind == FieldKind::potential) return gauge::TranslationSystem(load_form(spec));
  return gauge::TranslationSystem(forms::solve_potential(field_form(spec, steps)));
}

walk::Coin build_coin(const CoinDecl& c, int d) {
  switch (c.kind) {
    case CoinDecl::Kind::hadamard: return walk::Coin::hadamard();
    case CoinDecl::Kind::identity: return walk::Coin::identity(d);
    case CoinDecl::Kind::rotation: return walk::Coin::rotation(c.theta, c.phi);
    case CoinDecl::Kind::matrix: {
      if (static_cast<int>(c.entries.size()) != d * d)
        raise(ErrorCode::InvalidArgument, "matrix coin needs d*d entries");
      walk::Matrix m(d, d);
      for (int r = 0; r < d; ++r)
        for (int k = 0; k < d; ++k) m(r, k) = c.entries[static_cast<std::size_t>(r) * d + k];
      return walk::Coin::matrix(std::move(m));
    }
  }
  raise(ErrorCode::Internal, "unknown coin kind");
}

walk::WalkDecomposition build_decomposition(const ExperimentSpec& spec) {
  walk::WalkDecomposition dec;
  dec.d = spec.dim;
  for (const auto& f : spec.factors) {
    if (const CoinDecl* c = std::get_if<CoinDecl>(&f)) {
      dec.factors.emplace_back(build_coin(*c, spec.dim));
    } else {
      const ShiftDecl& s = std::get<ShiftDecl>(f);
      dec.factors.emplace_back(walk::Subshift{s.axis, s.power, s.proj, s.mode});
    }
  }
  return dec;
}

std::pair<std::int64_t, std::int64_t> spectrum_flux(const ExperimentSpec& spec, const RunDecl& run) {
  if (run.p && run.q) return {*run.p, *run.q};
  for (const auto& e : spec.field.entries) {
    if (!((e.a == 1 && e.b == 2) || (e.a == 2 && e.b == 1))) continue;
    if (!e.value.exact()) raise(ErrorCode::NotRational, "spectrum needs a rational F[1,2]");
    const Angle v = e.a == 1 ? e.value : -e.value;
    return {v.num(), v.den()};
  }
  return {0, 1};
}

std::vector<Diagnostic> validate_experiment(const ExperimentSpec& spec) {
  std::vector<Diagnostic> out;
  if (!spec.window) {
    out.push_back(make({1, 1, 0}, "missing window"));
    return out;
  }
  const WindowDecl& w = *spec.window;
  if (w.s < 1) out.push_back(make(w.s_pos, "s must be positive"));
  if (static_cast<int>(w.extents.size()) != w.s)
    out.push_back(make(w.extents_pos, "extents count does not match s"));
  for (int e : w.extents)
    if (e < 1) {
      out.push_back(make(w.extents_pos, "extents must be positive"));
      break;
    }
  if (w.boundary.size() != 1 && static_cast<int>(w.boundary.size()) != w.s)
    out.push_back(make(w.boundary_pos, "boundary count does not match s"));
  if (!w.origin.empty() && static_cast<int>(w.origin.size()) != w.s)
    out.push_back(make(w.origin_pos, "origin count does not match s"));
  const bool sane = window_sane(w);
  const int s = w.s, d = spec.dim;

  for (const auto& e : spec.field.entries)
    if (e.a < 0 || e.b < 0 || e.a > s || e.b > s) out.push_back(make(e.pos, "field index out of range"));

  bool constant_coins = true;
  for (const auto& f : spec.factors) {
    if (const CoinDecl* c = std::get_if<CoinDecl>(&f)) {
      if ((c->kind == CoinDecl::Kind::hadamard || c->kind == CoinDecl::Kind::rotation) && d != 2)
        out.push_back(make(c->pos, "coin dimension does not match dim"));
      if (c->kind == CoinDecl::Kind::rotation) constant_coins = false;
      if (c->kind == CoinDecl::Kind::matrix) {
        if (static_cast<int>(c->entries.size()) != d * d) {
          out.push_back(make(c->pos, "matrix coin needs dim*dim entries"));
        } else {
          try {
            build_coin(*c, d);
          } catch (const Error&) {
            out.push_back(make(c->pos, "coin matrix is not unitary"));
          }
        }
      }
    } else {
      const ShiftDecl& sh = std::get<ShiftDecl>(f);
      if (sh.axis < 1 || sh.axis > s) out.push_back(make(sh.axis_pos, "axis out of range"));
      for (int c : sh.proj)
        if (c < 0 || c >= d) {
          out.push_back(make(sh.proj_pos, "projector index out of range"));
          break;
        }
      if (sh.mode == walk::ShiftMode::conditional && d < 2)
        out.push_back(make(sh.mode_pos, "conditional shift requires dim >= 2"));
    }
  }

  const bool entries_ok = std::all_of(spec.field.entries.begin(), spec.field.entries.end(),
                                      [&](const FieldEntry& e) { return e.a >= 0 && e.b >= 0 && e.a <= s && e.b <= s; });
  if (sane && entries_ok && spec.field.kind != FieldKind::none) {
    try {
      const forms::DiscreteForm F = field_form(spec, first_steps(spec));
      const LatticeWindow space = space_window(spec);
      const LatticeWindow& fw = F.window();
      if ((fw.has_time() ? fw.spatial() : fw) != space)
        out.push_back(make(spec.field.path_pos, "field window does not match window"));
      else if (F.degree() == 2) {
        if (spec.field.kind == FieldKind::form && !forms::check_closed(F, 1e-9))
          out.push_back(make(spec.field.path_pos, "field is not closed"));
        if (auto msg = forms::flux_violation(F, 1e-9))
          out.push_back(make(spec.field.kind == FieldKind::homogeneous ? spec.field.pos : spec.field.path_pos,
                             "flux not quantized: " + *msg));
      }
    } catch (const Error& e) {
      out.push_back(make(spec.field.path_pos.line ? spec.field.path_pos : spec.field.pos, e.what()));
    }
  }

  for (const auto& r : spec.runs) {
    if (r.kind == RunDecl::Kind::evolve) continue;
    const bool butterfly = r.kind == RunDecl::Kind::butterfly;
    const char* name = butterfly ? "butterfly" : "spectrum";
    if (s != 2) out.push_back(make(r.pos, std::string(name) + " requires s=2"));
    if (spec.field.kind != FieldKind::homogeneous) {
      out.push_back(make(r.pos, std::string(name) + " requires homogeneous field"));
    } else if (has_electric(spec)) {
      out.push_back(make(r.pos, std::string(name) + " requires a purely magnetic field"));
    } else if (!butterfly) {
      if (!(r.p && r.q)) {
        for (const auto& e : spec.field.entries)
          if (!e.value.exact()) out.push_back(make(e.pos, "spectrum requires homogeneous rational field"));
      } else if (std::gcd(*r.p < 0 ? -*r.p : *r.p, *r.q) != 1) {
        out.push_back(make(r.pos, "flux p/q is not in lowest terms"));
      }
    }
    if (!constant_coins) out.push_back(make(r.pos, std::string(name) + " requires constant coins"));
    for (const auto& f : spec.factors)
      if (const ShiftDecl* sh = std::get_if<ShiftDecl>(&f); sh && sh->axis > 2)
        out.push_back(make(sh->axis_pos, std::string(name) + " supports shifts along axes 1 and 2 only"));
  }
  return out;
}

}  // namespace gaugewalk::dsl
