#pragma once

// In-process driver for the relocast command line.

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"

namespace relocast::testing {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> storage{"relocast"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : storage) argv.push_back(a.data());
  std::ostringstream out, err;
  CliResult r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Fresh scratch directory holding copies of the bundled site and plant files.
class Workspace {
 public:
  explicit Workspace(const std::string& tag)
      : root_(std::filesystem::temp_directory_path() / ("relocast_" + tag)) {
    std::filesystem::remove_all(root_);
    std::filesystem::create_directories(root_);
    for (const char* f : {"ajaccio.json", "bastia.json", "corte.json", "plant.json"}) {
      std::filesystem::copy_file(std::filesystem::path(RELOCAST_CONFIG_DIR) / f,
                                 root_ / f);
    }
  }
  ~Workspace() { std::filesystem::remove_all(root_); }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  std::string operator/(const std::string& name) const { return (root_ / name).string(); }
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
};

}  // namespace relocast::testing
