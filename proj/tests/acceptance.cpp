// Acceptance criteria 1-10. Criteria 1-9 run in-process; criterion 10 runs the CLI battery
// twice and compares the artifact trees byte for byte.
//
// usage: acceptance <path-to-itergcd> <scratch-dir>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "battery.hpp"

namespace fs = std::filesystem;
using itergcd::app::BatteryOptions;
using itergcd::app::CriterionOutcome;

namespace {

std::map<std::string, std::string> read_tree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    files[fs::relative(e.path(), dir).string()] = ss.str();
  }
  return files;
}

int run_selftest(const std::string& cli, const fs::path& dir) {
  fs::remove_all(dir);
  const std::string cmd = "\"" + cli + "\" selftest --output \"" + dir.string() + "\" > /dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool criterion_ten(const std::string& cli, const fs::path& scratch, std::string& summary) {
  const fs::path a = scratch / "run_a", b = scratch / "run_b";
  const int ra = run_selftest(cli, a), rb = run_selftest(cli, b);
  if (ra != 0 || rb != 0) {
    summary = "selftest exit codes " + std::to_string(ra) + ", " + std::to_string(rb);
    return false;
  }
  const auto ta = read_tree(a), tb = read_tree(b);
  if (ta.size() != tb.size() || ta.size() < 10) {
    summary = "artifact counts " + std::to_string(ta.size()) + " vs " + std::to_string(tb.size());
    return false;
  }
  size_t bytes = 0;
  for (const auto& [name, content] : ta) {
    auto it = tb.find(name);
    if (it == tb.end() || it->second != content) {
      summary = name + " differs between runs";
      return false;
    }
    bytes += content.size();
  }
  summary = std::to_string(ta.size()) + " artifacts, " + std::to_string(bytes) + " bytes, identical";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <path-to-itergcd> <scratch-dir>\n";
    return 1;
  }
  const std::string cli = argv[1];
  const fs::path scratch = argv[2];
  fs::create_directories(scratch);

  int failures = 0;
  for (int id = 1; id <= itergcd::app::kInProcessCriteria; ++id) {
    const CriterionOutcome r = itergcd::app::run_criterion(id, BatteryOptions{});
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << r.name << " (" << r.summary << ")"
              << std::endl;
    failures += !r.pass;
  }
  std::string summary;
  const bool ten = criterion_ten(cli, scratch, summary);
  std::cout << (ten ? "PASS" : "FAIL") << " criterion 10: " << itergcd::app::criterion_name(10) << " (" << summary
            << ")" << std::endl;
  failures += !ten;
  return failures == 0 ? 0 : 1;
}
