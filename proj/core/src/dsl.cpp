#include "gaugewalk/dsl.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gaugewalk/error.hpp"
#include "gaugewalk/forms.hpp"
#include "gaugewalk/gauge.hpp"
#include "gaugewalk/io.hpp"

namespace gaugewalk::dsl {

namespace {

struct Token {
  std::string text;
  int col = 1;
  std::size_t offset = 0;
};

struct Line {
  int number = 1;
  std::size_t offset = 0;
  std::string raw;
  std::vector<Token> tokens;
};

std::vector<Line> lex(std::string_view text) {
  std::vector<Line> lines;
  std::size_t start = 0;
  int number = 1;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    Line line;
    line.number = number;
    line.offset = start;
    line.raw = std::string(text.substr(start, end - start));
    if (!line.raw.empty() && line.raw.back() == '\r') line.raw.pop_back();
    std::string body = line.raw;
    if (auto hash = body.find('#'); hash != std::string::npos) body.resize(hash);
    std::size_t i = 0;
    while (i < body.size()) {
      while (i < body.size() && (body[i] == ' ' || body[i] == '\t')) ++i;
      if (i >= body.size()) break;
      std::size_t j = i;
      while (j < body.size() && body[j] != ' ' && body[j] != '\t') ++j;
      line.tokens.push_back({body.substr(i, j - i), static_cast<int>(i) + 1, start + i});
      i = j;
    }
    lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
    ++number;
  }
  return lines;
}

class Parser {
 public:
  Parser(std::string_view text, std::string base) : base_(std::move(base)) {
    lines_ = lex(text);
    spec_.base_dir = base_;
  }

  ParseResult run() {
    for (const Line& line : lines_) {
      if (line.tokens.empty()) continue;
      current_ = &line;
      parse_line(line);
    }
    current_ = nullptr;
    if (!spec_.window) diag_at(1, 1, 0, "missing window");
    if (spec_.field.kind == FieldKind::none) diag_at(1, 1, 0, "missing field");
    ParseResult r;
    r.diagnostics = std::move(diags_);
    if (r.ok()) r.spec = std::move(spec_);
    return r;
  }

 private:
  // --- diagnostics --------------------------------------------------------
  void diag_at(int line, int col, std::size_t offset, std::string message) {
    Diagnostic d;
    d.line = line;
    d.col = col;
    d.offset = offset;
    d.message = std::move(message);
    if (line >= 1 && static_cast<std::size_t>(line) <= lines_.size()) d.excerpt = lines_[line - 1].raw;
    diags_.push_back(std::move(d));
  }
  void diag(const Token& t, std::string message, int delta = 0) {
    diag_at(current_->number, t.col + delta, t.offset + delta, std::move(message));
  }
  SourcePos pos(const Token& t, int delta = 0) const {
    return {current_->number, t.col + delta, t.offset + static_cast<std::size_t>(delta)};
  }

  // --- scalar parsing -----------------------------------------------------
  static bool to_int(std::string_view s, std::int64_t& out) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
  }
  static bool to_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    std::string tmp(s);
    char* end = nullptr;
    out = std::strtod(tmp.c_str(), &end);
    return end == tmp.c_str() + tmp.size() && std::isfinite(out);
  }

  // Reports at value column and returns false on failure.
  bool parse_int(const Token& t, std::string_view v, int delta, std::int64_t& out, const char* what) {
    if (!to_int(v, out)) {
      diag(t, std::string("expected integer for ") + what, delta);
      return false;
    }
    return true;
  }

  bool parse_int_list(const Token& t, std::string_view v, int delta, std::vector<int>& out, const char* what) {
    out.clear();
    std::size_t i = 0;
    while (true) {
      std::size_t j = v.find(',', i);
      if (j == std::string_view::npos) j = v.size();
      std::int64_t x;
      if (!to_int(v.substr(i, j - i), x)) {
        diag(t, std::string("expected integer list for ") + what, delta + static_cast<int>(i));
        return false;
      }
      out.push_back(static_cast<int>(x));
      if (j == v.size()) break;
      i = j + 1;
    }
    return true;
  }

  bool parse_angle(const Token& t, std::string_view v, int delta, Angle& out) {
    std::string_view s = v;
    bool neg = false;
    int shift = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
      neg = s[0] == '-';
      s.remove_prefix(1);
      shift = 1;
    }
    if (s.substr(0, 3) == "2pi") {
      std::string_view rest = s.substr(3);
      std::int64_t num = 1, den = 1;
      const int base = delta + shift + 3;
      if (!rest.empty() && rest[0] == '*') {
        const std::size_t slash = rest.find('/');
        const std::string_view ns = rest.substr(1, slash == std::string_view::npos ? std::string_view::npos : slash - 1);
        if (!to_int(ns, num)) {
          diag(t, "expected integer numerator", base + 1);
          return false;
        }
        if (slash != std::string_view::npos) {
          if (!to_int(rest.substr(slash + 1), den)) {
            diag(t, "expected integer denominator", base + static_cast<int>(slash) + 1);
            return false;
          }
          if (den == 0) {
            diag(t, "zero denominator", base + static_cast<int>(slash) + 1);
            return false;
          }
        }
      } else if (!rest.empty() && rest[0] == '/') {
        if (!to_int(rest.substr(1), den)) {
          diag(t, "expected integer denominator", base + 1);
          return false;
        }
        if (den == 0) {
          diag(t, "zero denominator", base + 1);
          return false;
        }
      } else if (!rest.empty()) {
        diag(t, "malformed rational literal", base);
        return false;
      }
      out = Angle::turns(neg ? -num : num, den);
      return true;
    }
    double x;
    if (!to_double(v, x)) {
      diag(t, "expected angle (2pi*p/q or decimal)", delta);
      return false;
    }
    out = Angle::radians(x);
    return true;
  }

  static bool parse_complex(std::string_view s, std::complex<double>& out) {
    if (s.empty()) return false;
    if (s.back() != 'i') {
      double re;
      if (!to_double(s, re)) return false;
      out = {re, 0.0};
      return true;
    }
    std::string_view body = s.substr(0, s.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
        split = k;
        break;
      }
    }
    auto imag_of = [](std::string_view im, double& v) {
      if (im.empty() || im == "+") return v = 1.0, true;
      if (im == "-") return v = -1.0, true;
      return to_double(im, v);
    };
    double re = 0.0, im = 0.0;
    if (split == std::string_view::npos) {
      if (!imag_of(body, im)) return false;
    } else {
      if (!to_double(body.substr(0, split), re) || !imag_of(body.substr(split), im)) return false;
    }
    out = {re, im};
    return true;
  }

  // key=value pairs after the leading tokens. Unknown keys are reported.
  template <class Handler>
  void for_pairs(const Line& line, std::size_t first, const std::set<std::string>& keys, Handler&& handle) {
    std::set<std::string> seen;
    for (std::size_t i = first; i < line.tokens.size(); ++i) {
      const Token& t = line.tokens[i];
      const auto eq = t.text.find('=');
      if (eq == std::string::npos || eq == 0) {
        diag(t, "expected key=value, got \"" + t.text + "\"");
        continue;
      }
      const std::string key = t.text.substr(0, eq);
      if (!keys.count(key)) {
        diag(t, "unknown key \"" + key + "\"");
        continue;
      }
      if (!seen.insert(key).second) {
        diag(t, "duplicate key \"" + key + "\"");
        continue;
      }
      handle(key, std::string_view(t.text).substr(eq + 1), t, static_cast<int>(eq) + 1);
    }
  }

  void require_count(const Line& line, std::size_t n, const char* what) {
    if (line.tokens.size() > n) diag(line.tokens[n], std::string("unexpected token after ") + what);
  }

  // --- directives ---------------------------------------------------------
  void parse_line(const Line& line) {
    const Token& head = line.tokens[0];
    const std::string& d = head.text;
    if (d == "window") return parse_window(line);
    if (d == "field") return parse_field(line, false);
    if (d == "potential") return parse_field(line, true);
    if (d == "dim") return parse_dim(line);
    if (d == "factor") return parse_factor(line);
    if (d == "gauge") return parse_gauge(line);
    if (d == "output") return parse_output(line);
    if (d == "run") return parse_run(line);
    diag(head, "unknown directive \"" + d + "\"");
  }

  void parse_window(const Line& line) {
    const Token& head = line.tokens[0];
    if (spec_.window) {
      diag(head, "duplicate window");
      return;
    }
    WindowDecl w;
    w.pos = pos(head);
    bool have_s = false, have_extents = false, ok = true;
    for_pairs(line, 1, {"s", "extents", "boundary", "origin"},
              [&](const std::string& key, std::string_view v, const Token& t, int delta) {
                if (key == "s") {
                  std::int64_t s;
                  w.s_pos = pos(t, delta);
                  if (parse_int(t, v, delta, s, "s")) {
                    w.s = static_cast<int>(s);
                    have_s = true;
                  } else {
                    ok = false;
                  }
                } else if (key == "extents") {
                  w.extents_pos = pos(t, delta);
                  if (parse_int_list(t, v, delta, w.extents, "extents")) have_extents = true;
                  else ok = false;
                } else if (key == "origin") {
                  w.origin_pos = pos(t, delta);
                  if (!parse_int_list(t, v, delta, w.origin, "origin")) ok = false;
                } else {
                  w.boundary_pos = pos(t, delta);
                  std::size_t i = 0;
                  while (true) {
                    std::size_t j = v.find(',', i);
                    if (j == std::string_view::npos) j = v.size();
                    const std::string_view b = v.substr(i, j - i);
                    if (b == "open") w.boundary.push_back(Boundary::open);
                    else if (b == "torus") w.boundary.push_back(Boundary::torus);
                    else {
                      diag(t, "boundary must be open or torus", delta + static_cast<int>(i));
                      ok = false;
                      break;
                    }
                    if (j == v.size()) break;
                    i = j + 1;
                  }
                }
              });
    if (!have_s && ok) diag(head, "window needs s=<int>");
    if (!have_extents && ok) diag(head, "window needs extents=<ints>");
    if (w.boundary.empty()) w.boundary.push_back(Boundary::open);
    spec_.window = std::move(w);
  }

  void parse_field(const Line& line, bool potential) {
    const Token& head = line.tokens[0];
    if (spec_.field.kind != FieldKind::none) {
      diag(head, "duplicate field source");
      return;
    }
    FieldSource f;
    f.pos = pos(head);
    if (line.tokens.size() < 2) {
      diag(head, potential ? "expected \"potential form <path>\"" : "expected \"field homogeneous ...\" or \"field form <path>\"");
      spec_.field.kind = potential ? FieldKind::potential : FieldKind::form;
      return;
    }
    const Token& kind = line.tokens[1];
    if (kind.text == "form") {
      f.kind = potential ? FieldKind::potential : FieldKind::form;
      if (line.tokens.size() < 3) {
        diag(kind, "expected a path after \"form\"");
      } else {
        const Token& path = line.tokens[2];
        f.path = path.text;
        f.path_pos = pos(path);
        check_form_reference(path, potential ? 1 : 2);
        require_count(line, 3, "path");
      }
    } else if (kind.text == "homogeneous" && !potential) {
      f.kind = FieldKind::homogeneous;
      if (line.tokens.size() < 3) diag(kind, "homogeneous field needs at least one F[a,b]=value entry");
      std::set<std::pair<int, int>> seen;
      for (std::size_t i = 2; i < line.tokens.size(); ++i) {
        const Token& t = line.tokens[i];
        FieldEntry e;
        if (parse_entry(t, e)) {
          const auto key = std::minmax(e.a, e.b);
          if (!seen.insert(key).second) diag(t, "duplicate field entry");
          else f.entries.push_back(e);
        }
      }
    } else {
      diag(kind, potential ? "expected \"form\"" : "expected \"homogeneous\" or \"form\"");
      f.kind = potential ? FieldKind::potential : FieldKind::form;
    }
    spec_.field = std::move(f);
  }

  bool parse_entry(const Token& t, FieldEntry& e) {
    const std::string& s = t.text;
    e.pos = pos(t);
    if (s.size() < 2 || s[0] != 'F' || s[1] != '[') {
      diag(t, "expected F[a,b]=value");
      return false;
    }
    const auto close = s.find(']');
    const auto comma = s.find(',');
    if (close == std::string::npos || comma == std::string::npos || comma > close) {
      diag(t, "expected F[a,b]=value", 1);
      return false;
    }
    std::int64_t a, b;
    if (!to_int(std::string_view(s).substr(2, comma - 2), a)) {
      diag(t, "expected integer field index", 2);
      return false;
    }
    if (!to_int(std::string_view(s).substr(comma + 1, close - comma - 1), b)) {
      diag(t, "expected integer field index", static_cast<int>(comma) + 1);
      return false;
    }
    if (close + 1 >= s.size() || s[close + 1] != '=') {
      diag(t, "expected '=' after F[a,b]", static_cast<int>(close) + 1);
      return false;
    }
    e.a = static_cast<int>(a);
    e.b = static_cast<int>(b);
    if (e.a == e.b) {
      diag(t, "field index pair must name two distinct directions", 2);
      return false;
    }
    return parse_angle(t, std::string_view(s).substr(close + 2), static_cast<int>(close) + 2, e.value);
  }

  void check_form_reference(const Token& path, int degree) {
    const std::filesystem::path p = std::filesystem::path(base_) / path.text;
    std::string text;
    try {
      text = io::read_file(p.string());
    } catch (const Error&) {
      diag(path, "cannot read \"" + path.text + "\"");
      return;
    }
    try {
      const auto f = io::form_from_json(text);
      if (f.degree() != degree) diag(path, "\"" + path.text + "\" holds a " + std::to_string(f.degree()) +
                                               "-form, expected degree " + std::to_string(degree));
    } catch (const Error& e) {
      diag(path, "\"" + path.text + "\": " + e.what());
    }
  }

  void parse_dim(const Line& line) {
    const Token& head = line.tokens[0];
    if (spec_.dim_given) {
      diag(head, "duplicate dim");
      return;
    }
    if (line.tokens.size() < 2) {
      diag(head, "expected \"dim <d>\"");
      return;
    }
    std::int64_t d;
    if (!parse_int(line.tokens[1], line.tokens[1].text, 0, d, "dim")) return;
    if (d < 1) {
      diag(line.tokens[1], "dim must be positive");
      return;
    }
    spec_.dim = static_cast<int>(d);
    spec_.dim_given = true;
    spec_.dim_pos = pos(line.tokens[1]);
    require_count(line, 2, "dim");
  }

  void parse_factor(const Line& line) {
    const Token& head = line.tokens[0];
    if (line.tokens.size() < 2) {
      diag(head, "expected \"factor coin ...\" or \"factor shift ...\"");
      return;
    }
    const Token& kind = line.tokens[1];
    if (kind.text == "coin") {
      if (line.tokens.size() < 3) {
        diag(kind, "expected coin kind");
        return;
      }
      CoinDecl c;
      if (parse_coin(line.tokens[2], c)) spec_.factors.emplace_back(std::move(c));
      require_count(line, 3, "coin");
    } else if (kind.text == "shift") {
      ShiftDecl s;
      s.pos = pos(kind);
      s.axis_pos = s.proj_pos = s.mode_pos = pos(kind);
      bool ok = true, have_axis = false;
      for_pairs(line, 2, {"axis", "mode", "proj", "power"},
                [&](const std::string& key, std::string_view v, const Token& t, int delta) {
                  if (key == "axis") {
                    std::int64_t a;
                    s.axis_pos = pos(t, delta);
                    if (parse_int(t, v, delta, a, "axis")) {
                      s.axis = static_cast<int>(a);
                      have_axis = true;
                    } else {
                      ok = false;
                    }
                  } else if (key == "mode") {
                    s.mode_pos = pos(t, delta);
                    if (v == "partial") s.mode = walk::ShiftMode::partial;
                    else if (v == "conditional") s.mode = walk::ShiftMode::conditional;
                    else {
                      diag(t, "mode must be partial or conditional", delta);
                      ok = false;
                    }
                  } else if (key == "proj") {
                    s.proj_pos = pos(t, delta);
                    if (!parse_int_list(t, v, delta, s.proj, "proj")) ok = false;
                  } else {
                    if (v == "+1" || v == "1") s.power = 1;
                    else if (v == "-1") s.power = -1;
                    else {
                      diag(t, "power must be +1 or -1", delta);
                      ok = false;
                    }
                  }
                });
      if (ok && !have_axis) diag(kind, "shift needs axis=<k>");
      if (ok && have_axis) spec_.factors.emplace_back(std::move(s));
    } else {
      diag(kind, "expected \"coin\" or \"shift\"");
    }
  }

  bool parse_coin(const Token& t, CoinDecl& c) {
    c.pos = pos(t);
    const std::string& s = t.text;
    if (s == "hadamard") {
      c.kind = CoinDecl::Kind::hadamard;
      return true;
    }
    if (s == "identity") {
      c.kind = CoinDecl::Kind::identity;
      return true;
    }
    auto inner = [&](const std::string& name, std::string& body) {
      if (s.rfind(name + "(", 0) != 0) return false;
      if (s.back() != ')') {
        diag(t, "missing ')'", static_cast<int>(s.size()) - 1);
        body.clear();
        return true;
      }
      body = s.substr(name.size() + 1, s.size() - name.size() - 2);
      return true;
    };
    std::string body;
    if (inner("matrix", body)) {
      if (s.back() != ')') return false;
      c.kind = CoinDecl::Kind::matrix;
      std::size_t i = 0;
      const int base = 7;
      while (true) {
        std::size_t j = body.find(',', i);
        if (j == std::string::npos) j = body.size();
        std::complex<double> z;
        if (!parse_complex(std::string_view(body).substr(i, j - i), z)) {
          diag(t, "malformed complex entry", base + static_cast<int>(i));
          return false;
        }
        c.entries.push_back(z);
        if (j == body.size()) break;
        i = j + 1;
      }
      return true;
    }
    if (inner("rotation", body)) {
      if (s.back() != ')') return false;
      c.kind = CoinDecl::Kind::rotation;
      const int base = 9;
      bool have_theta = false, have_phi = false;
      std::size_t i = 0;
      while (i <= body.size()) {
        std::size_t j = body.find(',', i);
        if (j == std::string::npos) j = body.size();
        const std::string_view part = std::string_view(body).substr(i, j - i);
        const auto eq = part.find('=');
        const std::string_view key = part.substr(0, eq);
        double v;
        if (eq == std::string_view::npos || (key != "theta" && key != "phi")) {
          diag(t, "expected theta=<r> or phi=<r>", base + static_cast<int>(i));
          return false;
        }
        if (!to_double(part.substr(eq + 1), v)) {
          diag(t, "expected real number", base + static_cast<int>(i + eq + 1));
          return false;
        }
        if (key == "theta") {
          c.theta = v;
          have_theta = true;
        } else {
          c.phi = v;
          have_phi = true;
        }
        i = j + 1;
      }
      if (!have_theta || !have_phi) {
        diag(t, "rotation needs theta and phi");
        return false;
      }
      return true;
    }
    diag(t, "unknown coin \"" + s + "\"");
    return false;
  }

  void parse_gauge(const Line& line) {
    const Token& head = line.tokens[0];
    if (line.tokens.size() < 2) {
      diag(head, "expected \"gauge temporal|static\"");
      return;
    }
    const Token& t = line.tokens[1];
    spec_.gauge_pos = pos(t);
    if (t.text == "temporal") spec_.gauge = GaugeChoice::temporal;
    else if (t.text == "static") spec_.gauge = GaugeChoice::static_field;
    else diag(t, "gauge must be temporal or static");
    require_count(line, 2, "gauge");
  }

  void parse_output(const Line& line) {
    for_pairs(line, 1, {"dir"}, [&](const std::string&, std::string_view v, const Token& t, int delta) {
      if (v.empty()) diag(t, "empty output directory", delta);
      spec_.output_dir = std::string(v);
    });
  }

  void parse_run(const Line& line) {
    const Token& head = line.tokens[0];
    if (line.tokens.size() < 2) {
      diag(head, "expected \"run evolve|spectrum|butterfly ...\"");
      return;
    }
    const Token& kind = line.tokens[1];
    RunDecl r;
    r.pos = pos(kind);
    auto int_key = [&](std::string_view v, const Token& t, int delta, int& out, const char* what) {
      std::int64_t x;
      if (parse_int(t, v, delta, x, what)) out = static_cast<int>(x);
    };
    if (kind.text == "evolve") {
      r.kind = RunDecl::Kind::evolve;
      bool have_steps = false;
      for_pairs(line, 2, {"steps", "observe"}, [&](const std::string& key, std::string_view v, const Token& t, int delta) {
        if (key == "steps") {
          int_key(v, t, delta, r.steps, "steps");
          have_steps = true;
          if (r.steps < 0) diag(t, "steps must be non-negative", delta);
        } else {
          std::size_t i = 0;
          while (true) {
            std::size_t j = v.find(',', i);
            if (j == std::string_view::npos) j = v.size();
            const std::string o(v.substr(i, j - i));
            if (o != "position" && o != "return" && o != "variance")
              diag(t, "unknown observable \"" + o + "\"", delta + static_cast<int>(i));
            else
              r.observe.push_back(o);
            if (j == v.size()) break;
            i = j + 1;
          }
        }
      });
      if (!have_steps) diag(kind, "evolve needs steps=<int>");
    } else if (kind.text == "spectrum") {
      r.kind = RunDecl::Kind::spectrum;
      for_pairs(line, 2, {"p", "q", "kgrid"}, [&](const std::string& key, std::string_view v, const Token& t, int delta) {
        std::int64_t x;
        if (key == "kgrid") {
          int_key(v, t, delta, r.kgrid, "kgrid");
          if (r.kgrid < 1) diag(t, "kgrid must be positive", delta);
        } else if (parse_int(t, v, delta, x, key.c_str())) {
          if (key == "p") r.p = x;
          else if (x < 1) diag(t, "q must be positive", delta);
          else r.q = x;
        }
      });
      if (r.p.has_value() != r.q.has_value()) diag(kind, "spectrum needs both p and q, or neither");
    } else if (kind.text == "butterfly") {
      r.kind = RunDecl::Kind::butterfly;
      for_pairs(line, 2, {"qmax", "kgrid", "bins", "periods"},
                [&](const std::string& key, std::string_view v, const Token& t, int delta) {
                  int* target = key == "qmax" ? &r.qmax : key == "kgrid" ? &r.kgrid : key == "bins" ? &r.bins : &r.periods;
                  int_key(v, t, delta, *target, key.c_str());
                  if (*target < 1) diag(t, key + " must be positive", delta);
                });
    } else {
      diag(kind, "unknown run kind \"" + kind.text + "\"");
      return;
    }
    spec_.runs.push_back(std::move(r));
  }

  std::string base_;
  std::vector<Line> lines_;
  const Line* current_ = nullptr;
  ExperimentSpec spec_;
  std::vector<Diagnostic> diags_;
};

void truncate(std::vector<Diagnostic>& diags) {
  if (diags.size() <= kMaxDiagnostics) return;
  const std::size_t extra = diags.size() - kMaxDiagnostics;
  const Diagnostic last = diags[kMaxDiagnostics - 1];
  diags.resize(kMaxDiagnostics);
  Diagnostic note;
  note.severity = Severity::note;
  note.line = last.line;
  note.col = last.col;
  note.offset = last.offset;
  note.message = std::to_string(extra) + " further diagnostics suppressed";
  diags.push_back(std::move(note));
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

bool ParseResult::ok() const {
  for (const auto& d : diagnostics)
    if (d.severity == Severity::error) return false;
  return true;
}

ParseResult parse_experiment(std::string_view text, std::string base_dir) {
  ParseResult r = Parser(text, std::move(base_dir)).run();
  truncate(r.diagnostics);
  return r;
}

ParseResult load_experiment(std::string_view text, std::string base_dir) {
  ParseResult r = Parser(text, std::move(base_dir)).run();
  if (r.spec) {
    auto more = validate_experiment(*r.spec);
    r.diagnostics.insert(r.diagnostics.end(), more.begin(), more.end());
    if (!r.ok()) r.spec.reset();
  }
  truncate(r.diagnostics);
  return r;
}

std::string pretty_print(const ExperimentSpec& spec) {
  std::ostringstream os;
  auto ints = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  if (spec.window) {
    const WindowDecl& w = *spec.window;
    os << "window s=" << w.s << " extents=" << ints(w.extents) << " boundary=";
    for (std::size_t i = 0; i < w.boundary.size(); ++i)
      os << (i ? "," : "") << (w.boundary[i] == Boundary::torus ? "torus" : "open");
    if (!w.origin.empty()) os << " origin=" << ints(w.origin);
    os << '\n';
  }
  switch (spec.field.kind) {
    case FieldKind::homogeneous:
      os << "field homogeneous";
      for (const auto& e : spec.field.entries) os << " F[" << e.a << ',' << e.b << "]=" << (e.value.exact() && e.value.is_zero() ? "2pi*0/1" : to_string(e.value));
      os << '\n';
      break;
    case FieldKind::form: os << "field form " << spec.field.path << '\n'; break;
    case FieldKind::potential: os << "potential form " << spec.field.path << '\n'; break;
    case FieldKind::none: break;
  }
  if (spec.dim_given) os << "dim " << spec.dim << '\n';
  for (const auto& f : spec.factors) {
    if (const CoinDecl* c = std::get_if<CoinDecl>(&f)) {
      os << "factor coin ";
      switch (c->kind) {
        case CoinDecl::Kind::hadamard: os << "hadamard"; break;
        case CoinDecl::Kind::identity: os << "identity"; break;
        case CoinDecl::Kind::matrix:
          os << "matrix(";
          for (std::size_t i = 0; i < c->entries.size(); ++i) {
            const double im = c->entries[i].imag();
            os << (i ? "," : "") << g17(c->entries[i].real()) << (std::signbit(im) ? "-" : "+") << g17(std::fabs(im))
               << 'i';
          }
          os << ')';
          break;
        case CoinDecl::Kind::rotation: os << "rotation(theta=" << g17(c->theta) << ",phi=" << g17(c->phi) << ')'; break;
      }
      os << '\n';
    } else {
      const ShiftDecl& s = std::get<ShiftDecl>(f);
      os << "factor shift axis=" << s.axis << " mode=" << (s.mode == walk::ShiftMode::partial ? "partial" : "conditional")
         << " proj=" << ints(s.proj) << " power=" << (s.power > 0 ? "+1" : "-1") << '\n';
    }
  }
  if (spec.gauge == GaugeChoice::static_field) os << "gauge static\n";
  if (!spec.output_dir.empty()) os << "output dir=" << spec.output_dir << '\n';
  for (const auto& r : spec.runs) {
    switch (r.kind) {
      case RunDecl::Kind::evolve: {
        os << "run evolve steps=" << r.steps;
        if (!r.observe.empty()) {
          os << " observe=";
          for (std::size_t i = 0; i < r.observe.size(); ++i) os << (i ? "," : "") << r.observe[i];
        }
        break;
      }
      case RunDecl::Kind::spectrum:
        os << "run spectrum";
        if (r.p && r.q) os << " q=" << *r.q << " p=" << *r.p;
        os << " kgrid=" << r.kgrid;
        break;
      case RunDecl::Kind::butterfly:
        os << "run butterfly qmax=" << r.qmax << " kgrid=" << r.kgrid << " bins=" << r.bins << " periods=" << r.periods;
        break;
    }
    os << '\n';
  }
  return os.str();
}

const char* to_string(Severity s) {
  switch (s) {
    case Severity::error: return "error";
    case Severity::warning: return "warning";
    case Severity::note: return "note";
  }
  return "error";
}

std::string format_diagnostic(const std::string& file, const Diagnostic& d) {
  return file + ":" + std::to_string(d.line) + ":" + std::to_string(d.col) + ": " + to_string(d.severity) + ": " +
         d.message;
}

std::string diagnostics_json(const std::string& file, const std::vector<Diagnostic>& diags) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : diags)
    arr.push_back({{"file", file},
                   {"line", d.line},
                   {"col", d.col},
                   {"offset", d.offset},
                   {"severity", to_string(d.severity)},
                   {"message", d.message},
                   {"excerpt", d.excerpt}});
  return nlohmann::json{{"diagnostics", arr}}.dump(1) + "\n";
}

}  // namespace gaugewalk::dsl
