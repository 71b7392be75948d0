#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <openssl/evp.h>

#include <json.hpp>

#include "cli.hpp"
#include "gaugewalk/error.hpp"
#include "gaugewalk/io.hpp"

namespace gaugewalk::cli {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    raise(ErrorCode::Internal, "sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

Manifest::Manifest(std::string command) : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

void Manifest::add_input(const Input& in) {
  inputs_.emplace_back(in.path, sha256_hex(in.text));
  if (in.spec && !spec_) set_spec(*in.spec);
}

std::string Manifest::write(const std::string& dir, const std::string& name, const std::string& data) {
  fs::create_directories(dir);
  const std::string path = (fs::path(dir) / name).string();
  io::write_file(path, data);
  outputs_.push_back(path);
  return path;
}

void Manifest::finish(const std::string& dir, const Options& opt) {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  nlohmann::ordered_json j;
  j["tool"] = "gaugewalk";
  j["version"] = GAUGEWALK_VERSION;
  j["command"] = command_;
  j["inputs"] = nlohmann::json::array();
  for (const auto& [path, digest] : inputs_) j["inputs"].push_back({{"path", path}, {"sha256", digest}});
  j["spec"] = spec_ ? nlohmann::json(*spec_) : nlohmann::json(nullptr);
  j["options"] = {{"tol", opt.tol}, {"threads", opt.threads}, {"seed", opt.seed}};
  j["wall_time_seconds"] = wall;
  j["outputs"] = outputs_;
  fs::create_directories(dir);
  io::write_file((fs::path(dir) / "manifest.json").string(), j.dump(1) + "\n");
}

Input load_input(const std::string& path, const Options& opt) {
  Input in;
  in.path = path;
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) raise(ErrorCode::InvalidArgument, "cannot read input \"" + path + "\"");
  in.text = io::read_file(path);
  if (fs::path(path).extension() != ".gw") return in;

  std::string base = fs::path(path).parent_path().string();
  if (base.empty()) base = ".";
  dsl::ParseResult r = dsl::load_experiment(in.text, base);
  if (opt.json) {
    if (!r.diagnostics.empty()) std::cerr << dsl::diagnostics_json(path, r.diagnostics) << '\n';
  } else {
    for (const auto& d : r.diagnostics) std::cerr << dsl::format_diagnostic(path, d) << '\n';
  }
  if (!r.ok()) throw Reported("diagnostics reported for " + path);
  in.spec = std::move(r.spec);
  return in;
}

std::string output_dir(const Options& opt, const Input* in) {
  if (!opt.out.empty()) return opt.out;
  if (const char* env = std::getenv("GAUGEWALK_OUT"); env && *env) return env;
  if (in && in->spec && !in->spec->output_dir.empty()) return in->spec->output_dir;
  return ".";
}

}  // namespace gaugewalk::cli
