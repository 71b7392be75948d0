#include "gaugewalk/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gaugewalk/error.hpp"

namespace gaugewalk::io {

using nlohmann::json;
using forms::Mask;

namespace {

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) raise(ErrorCode::ParseError, std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, std::string("bad value for \"") + key + "\": " + e.what());
  }
}

const char* boundary_name(Boundary b) { return b == Boundary::torus ? "torus" : "open"; }

Boundary boundary_of(const std::string& s) {
  if (s == "open") return Boundary::open;
  if (s == "torus") return Boundary::torus;
  raise(ErrorCode::ParseError, "unknown boundary \"" + s + "\"");
}

json window_json(const LatticeWindow& w) {
  json j;
  j["dims"] = w.dims();
  j["extents"] = w.extents();
  bool uniform = true;
  for (auto b : w.boundaries()) uniform = uniform && b == w.boundaries()[0];
  if (uniform) {
    j["boundary"] = boundary_name(w.boundaries()[0]);
  } else {
    json arr = json::array();
    for (auto b : w.boundaries()) arr.push_back(boundary_name(b));
    j["boundary"] = arr;
  }
  bool zero = true;
  for (int o : w.origin()) zero = zero && o == 0;
  if (!zero) j["origin"] = w.origin();
  if (w.has_time()) j["time"] = true;
  return j;
}

LatticeWindow window_of(const json& j) {
  const int dims = field<int>(j, "dims");
  const auto extents = field<std::vector<int>>(j, "extents");
  if (static_cast<int>(extents.size()) != dims) raise(ErrorCode::ParseError, "extents do not match dims");
  std::vector<Boundary> b;
  if (!j.contains("boundary")) raise(ErrorCode::ParseError, "missing key \"boundary\"");
  if (j["boundary"].is_string()) {
    b.assign(dims, boundary_of(j["boundary"].get<std::string>()));
  } else if (j["boundary"].is_array()) {
    for (const auto& e : j["boundary"]) b.push_back(boundary_of(e.get<std::string>()));
  } else {
    raise(ErrorCode::ParseError, "boundary must be a string or an array");
  }
  std::vector<int> origin;
  if (j.contains("origin")) origin = field<std::vector<int>>(j, "origin");
  const bool time = j.contains("time") && j["time"].get<bool>();
  try {
    return LatticeWindow(extents, b, origin, time);
  } catch (const Error& e) {
    raise(ErrorCode::ParseError, e.what());
  }
}

json angle_json(const Angle& a) {
  json j;
  if (a.exact()) {
    j["num"] = a.num();
    j["den"] = a.den();
  } else {
    j["value"] = a.value();
  }
  return j;
}

json form_json(const forms::DiscreteForm& f) {
  json j;
  j["window"] = window_json(f.window());
  j["degree"] = f.degree();
  json entries = json::array();
  const LatticeWindow& w = f.window();
  f.for_each_cell([&](std::size_t x, Mask m, const Angle& v) {
    if (v.is_zero()) return;
    json e = angle_json(v);
    e["x"] = w.coords(x);
    std::vector<int> labels;
    for (int a : forms::axes_of(m)) labels.push_back(w.label(a));
    e["I"] = labels;
    entries.push_back(std::move(e));
  });
  j["entries"] = std::move(entries);
  return j;
}

forms::DiscreteForm form_of(const json& j) {
  const LatticeWindow w = window_of(field<json>(j, "window"));
  const int degree = field<int>(j, "degree");
  if (degree < 0 || degree > w.dims()) raise(ErrorCode::ParseError, "degree out of range");
  forms::DiscreteForm f(w, degree);
  if (!j.contains("entries")) return f;
  for (const json& e : j["entries"]) {
    const auto x = field<std::vector<int>>(e, "x");
    const auto I = field<std::vector<int>>(e, "I");
    if (static_cast<int>(I.size()) != degree) raise(ErrorCode::ParseError, "index set size differs from degree");
    if (!w.contains(x)) raise(ErrorCode::ParseError, "entry site outside the window");
    std::vector<int> axes;
    for (int l : I) {
      try {
        axes.push_back(w.axis_of(l));
      } catch (const Error&) {
        raise(ErrorCode::ParseError, "index " + std::to_string(l) + " is not a direction of the window");
      }
    }
    Angle v;
    if (e.contains("num") || e.contains("den")) {
      const auto den = field<std::int64_t>(e, "den");
      if (den == 0) raise(ErrorCode::ParseError, "zero denominator");
      v = Angle::turns(field<std::int64_t>(e, "num"), den);
    } else {
      v = Angle::radians(field<double>(e, "value"));
    }
    const int sign = forms::permutation_sign(axes);
    if (sign == 0) raise(ErrorCode::ParseError, "repeated index in entry");
    const std::size_t site = w.index(x);
    const Mask m = forms::mask_of(axes);
    if (!f.has_cell(site, m)) raise(ErrorCode::ParseError, "entry cell lies outside the open window");
    f.set(site, m, sign > 0 ? v : -v);
  }
  return f;
}

}  // namespace

std::string window_to_json(const LatticeWindow& w) { return window_json(w).dump(); }
LatticeWindow window_from_json(std::string_view text) { return window_of(parse(text)); }

std::string form_to_json(const forms::DiscreteForm& f, int indent) { return form_json(f).dump(indent) + "\n"; }
forms::DiscreteForm form_from_json(std::string_view text) { return form_of(parse(text)); }

std::string system_to_json(const gauge::TranslationSystem& T, int indent) {
  json j;
  j["window"] = window_json(T.window());
  j["mode"] = T.exact() ? "exact" : "float";
  j["A"] = form_json(T.potential());
  j["flat"] = T.flat_directions();
  return j.dump(indent) + "\n";
}

gauge::TranslationSystem system_from_json(std::string_view text) {
  const json j = parse(text);
  if (j.contains("A")) {
    forms::DiscreteForm A = form_of(j["A"]);
    if (j.contains("window") && window_of(j["window"]) != A.window())
      raise(ErrorCode::ParseError, "system window differs from the potential's window");
    if (A.degree() != 1) raise(ErrorCode::ParseError, "potential must be a 1-form");
    if (j.contains("mode") && j["mode"] == "float") A = A.to_float();
    return gauge::TranslationSystem(std::move(A));
  }
  forms::DiscreteForm A = form_of(j);
  if (A.degree() != 1) raise(ErrorCode::ParseError, "expected a 1-form");
  return gauge::TranslationSystem(std::move(A));
}

std::string rational_to_json(const gauge::RationalAnalysis& r, int indent) {
  json j;
  j["q1"] = r.q1;
  j["q2"] = r.q2;
  j["q3"] = r.q3;
  j["basis"] = r.basis;
  j["minimal_basis"] = r.minimal_basis;
  j["minimal_index"] = r.minimal_index;
  j["minimal_search_complete"] = r.minimal_search_complete;
  json h = json::array();
  for (const Angle& a : r.holonomy) h.push_back({{"num", a.num()}, {"den", a.den()}});
  j["holonomy"] = h;
  return j.dump(indent) + "\n";
}

namespace {

json matrix_header(const walk::Matrix& m, const LatticeWindow& w, int d) {
  json h;
  h["rows"] = m.rows();
  h["cols"] = m.cols();
  h["window"] = window_json(w);
  h["d"] = d;
  h["ordering"] = "index = site * d + component, axis 1 fastest, column-major";
  return h;
}

}  // namespace

std::string matrix_to_json(const walk::Matrix& m, const LatticeWindow& w, int d) {
  json j;
  j["header"] = matrix_header(m, w, d);
  json data = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      data.push_back(m(r, c).real());
      data.push_back(m(r, c).imag());
    }
  j["data"] = std::move(data);
  return j.dump() + "\n";
}

std::string matrix_to_binary(const walk::Matrix& m, const LatticeWindow& w, int d) {
  static_assert(std::endian::native == std::endian::little, "binary export assumes a little-endian host");
  std::string out = "GWMATRIX " + matrix_header(m, w, d).dump() + "\n";
  out.reserve(out.size() + static_cast<std::size_t>(m.size()) * 16);
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double v[2] = {m(r, c).real(), m(r, c).imag()};
      out.append(reinterpret_cast<const char*>(v), sizeof v);
    }
  return out;
}

walk::Matrix matrix_from_binary(std::string_view data) {
  const auto nl = data.find('\n');
  if (data.substr(0, 9) != "GWMATRIX " || nl == std::string_view::npos)
    raise(ErrorCode::ParseError, "missing GWMATRIX header");
  const json h = parse(data.substr(9, nl - 9));
  const auto rows = field<Eigen::Index>(h, "rows"), cols = field<Eigen::Index>(h, "cols");
  const std::string_view body = data.substr(nl + 1);
  if (body.size() != static_cast<std::size_t>(rows * cols) * 16) raise(ErrorCode::ParseError, "matrix payload size");
  walk::Matrix m(rows, cols);
  std::size_t off = 0;
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      double v[2];
      std::memcpy(v, body.data() + off, sizeof v);
      off += sizeof v;
      m(r, c) = {v[0], v[1]};
    }
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::InvalidArgument, "cannot write " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) raise(ErrorCode::InvalidArgument, "write failed for " + path);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace gaugewalk::io
