#pragma once

// Helpers for driving the command-line entry point in-process against files
// in a scratch directory.

#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rqim/cli.hpp"
#include "rqim/model_io.hpp"

namespace fixture {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = rqim::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("rqim_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) { return rqim::io::read_text_file(path); }

// Pulls "name = value" out of a command report.
inline std::string report_value(const std::string& report, const std::string& name) {
  std::istringstream in(report);
  std::string line;
  const std::string prefix = name + " = ";
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  return {};
}

}  // namespace fixture
