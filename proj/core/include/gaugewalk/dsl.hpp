#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gaugewalk/angle.hpp"
#include "gaugewalk/forms.hpp"
#include "gaugewalk/gauge.hpp"
#include "gaugewalk/lattice.hpp"
#include "gaugewalk/walk.hpp"

namespace gaugewalk::dsl {

/// Location in the source text. Ignored by structural equality.
struct SourcePos {
  int line = 0;
  int col = 0;
  std::size_t offset = 0;
  friend bool operator==(const SourcePos&, const SourcePos&) { return true; }
};

struct WindowDecl {
  int s = 0;
  std::vector<int> extents;
  std::vector<Boundary> boundary;
  std::vector<int> origin;
  SourcePos pos, s_pos, extents_pos, boundary_pos, origin_pos;
  friend bool operator==(const WindowDecl&, const WindowDecl&) = default;
};

/// F[a,b] with direction labels (0 = time).
struct FieldEntry {
  int a = 1;
  int b = 2;
  Angle value;
  SourcePos pos;
  friend bool operator==(const FieldEntry&, const FieldEntry&) = default;
};

enum class FieldKind { none, homogeneous, form, potential };

struct FieldSource {
  FieldKind kind = FieldKind::none;
  std::vector<FieldEntry> entries;
  std::string path;
  SourcePos pos, path_pos;
  friend bool operator==(const FieldSource&, const FieldSource&) = default;
};

struct CoinDecl {
  enum class Kind { hadamard, identity, matrix, rotation };
  Kind kind = Kind::hadamard;
  std::vector<std::complex<double>> entries;
  double theta = 0.0;
  double phi = 0.0;
  SourcePos pos;
  friend bool operator==(const CoinDecl&, const CoinDecl&) = default;
};

struct ShiftDecl {
  int axis = 1;
  walk::ShiftMode mode = walk::ShiftMode::conditional;
  std::vector<int> proj{0};
  int power = +1;
  SourcePos pos, axis_pos, proj_pos, mode_pos;
  friend bool operator==(const ShiftDecl&, const ShiftDecl&) = default;
};

using FactorDecl = std::variant<CoinDecl, ShiftDecl>;

enum class GaugeChoice { temporal, static_field };

struct RunDecl {
  enum class Kind { evolve, spectrum, butterfly };
  Kind kind = Kind::evolve;
  int steps = 0;
  std::vector<std::string> observe;
  std::optional<std::int64_t> p, q;
  int kgrid = 16;
  int qmax = 1;
  int bins = 512;
  int periods = 1;
  SourcePos pos;
  friend bool operator==(const RunDecl&, const RunDecl&) = default;
};

struct ExperimentSpec {
  std::optional<WindowDecl> window;
  FieldSource field;
  int dim = 2;
  bool dim_given = false;
  std::vector<FactorDecl> factors;
  GaugeChoice gauge = GaugeChoice::temporal;
  std::string output_dir;
  std::vector<RunDecl> runs;
  SourcePos dim_pos, gauge_pos;
  /// Directory against which relative form paths resolve; not compared.
  std::string base_dir;

  friend bool operator==(const ExperimentSpec& a, const ExperimentSpec& b) {
    return a.window == b.window && a.field == b.field && a.dim == b.dim && a.dim_given == b.dim_given &&
           a.factors == b.factors && a.gauge == b.gauge && a.output_dir == b.output_dir && a.runs == b.runs;
  }
};

enum class Severity { error, warning, note };

struct Diagnostic {
  Severity severity = Severity::error;
  int line = 1;
  int col = 1;
  std::size_t offset = 0;
  std::string message;
  std::string excerpt;
};

struct ParseResult {
  std::optional<ExperimentSpec> spec;
  std::vector<Diagnostic> diagnostics;
  bool ok() const;
};

inline constexpr std::size_t kMaxDiagnostics = 20;

/// Grammar and reference checks. Relative paths resolve against base_dir.
ParseResult parse_experiment(std::string_view text, std::string base_dir = ".");
/// Semantic checks on a parsed spec.
std::vector<Diagnostic> validate_experiment(const ExperimentSpec& spec);
/// parse_experiment followed by validate_experiment.
ParseResult load_experiment(std::string_view text, std::string base_dir = ".");

std::string pretty_print(const ExperimentSpec& spec);

// --- building library objects from a checked experiment ----------------------

LatticeWindow space_window(const ExperimentSpec& spec);
/// True when any field entry involves the time direction 0.
bool has_electric(const ExperimentSpec& spec);
/// Time extent of the gauge field window for a run of the given length.
/// Static electric fields use a periodic time axis of extent 1.
std::optional<LatticeWindow> field_window(const ExperimentSpec& spec, int steps);
/// The field 2-form. Potential sources return the plaquette field.
forms::DiscreteForm field_form(const ExperimentSpec& spec, int steps = 1);
gauge::TranslationSystem build_system(const ExperimentSpec& spec, int steps = 1);
walk::WalkDecomposition build_decomposition(const ExperimentSpec& spec);
walk::Coin build_coin(const CoinDecl& c, int d);
/// Flux p/q for a spectrum run: from the run line, else from F[1,2].
std::pair<std::int64_t, std::int64_t> spectrum_flux(const ExperimentSpec& spec, const RunDecl& run);

const char* to_string(Severity s);
std::string format_diagnostic(const std::string& file, const Diagnostic& d);
std::string diagnostics_json(const std::string& file, const std::vector<Diagnostic>& diags);

}  // namespace gaugewalk::dsl
