#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaugewalk/dsl.hpp"

namespace gaugewalk::cli {

struct Options {
  std::vector<std::string> inputs;
  std::string out;
  bool json = false;
  double tol = 1e-9;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  std::string format = "json";
  long time = 0;
};

/// Bad invocation; exits with status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// DSL diagnostics were already reported; exits with status 1.
struct Reported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string path;
  std::string text;
  std::optional<dsl::ExperimentSpec> spec;
  bool experiment() const { return spec.has_value(); }
};

class Manifest {
 public:
  explicit Manifest(std::string command);
  void add_input(const Input& in);
  void set_spec(const dsl::ExperimentSpec& spec) { spec_ = dsl::pretty_print(spec); }
  /// Writes data to dir/name and records the output.
  std::string write(const std::string& dir, const std::string& name, const std::string& data);
  void finish(const std::string& dir, const Options& opt);

 private:
  std::string command_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::optional<std::string> spec_;
  std::vector<std::string> outputs_;
};

std::string sha256_hex(const std::string& data);

Input load_input(const std::string& path, const Options& opt);
std::string output_dir(const Options& opt, const Input* in);

int check_field(const Options& opt);
int solve_potential(const Options& opt);
int gauge_check(const Options& opt);
int couple(const Options& opt);
int evolve(const Options& opt);
int spectrum(const Options& opt);
int butterfly(const Options& opt);
int delta_gamma_demo(const Options& opt);

}  // namespace gaugewalk::cli
