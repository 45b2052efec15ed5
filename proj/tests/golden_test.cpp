// Runs the CLI on every case in golden/ from the test data directory and
// compares the exit code, the stdout document and the stderr error kind.
// Set ACL_UPDATE_GOLDEN=1 to rewrite the expectations from the current build.

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Result {
  int exit_code;
  std::string out;
  std::string err;
};

Result run(const Json& args) {
  fs::path err_file = fs::temp_directory_path() / ("acl_golden_" + std::to_string(::getpid()) + ".err");
  std::string cmd = "cd " + quote(ACL_TEST_DATA) + " && " + quote(ACL_BIN);
  for (const auto& a : args) cmd += " " + quote(a.get<std::string>());
  cmd += " 2>" + quote(err_file.string());
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = ::pclose(pipe);
  Result r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, slurp(err_file)};
  fs::remove(err_file);
  return r;
}

Json parse_or_null(const std::string& text) {
  if (text.empty()) return nullptr;
  return Json::parse(text, nullptr, false);
}

}  // namespace

TEST_CASE("golden CLI cases") {
  const bool update = std::getenv("ACL_UPDATE_GOLDEN") != nullptr;
  std::vector<fs::path> cases;
  for (const auto& e : fs::directory_iterator(ACL_GOLDEN_DIR))
    if (e.path().extension() == ".json") cases.push_back(e.path());
  std::sort(cases.begin(), cases.end());
  REQUIRE(!cases.empty());

  for (const auto& path : cases) {
    Json spec = Json::parse(slurp(path));
    Result r = run(spec["args"]);
    Json out = parse_or_null(r.out);
    Json err = parse_or_null(r.err);
    std::string kind = err.is_object() && err.contains("error") ? err["error"]["kind"].get<std::string>() : "";

    if (update) {
      spec["exit"] = r.exit_code;
      spec["stdout"] = out;
      if (kind.empty()) spec.erase("error_kind");
      else spec["error_kind"] = kind;
      std::ofstream(path) << spec.dump(2) << "\n";
      continue;
    }

    INFO("case ", path.filename().string(), "\nstderr: ", r.err);
    CHECK(r.exit_code == spec["exit"].get<int>());
    CHECK(out == spec["stdout"]);
    CHECK(kind == spec.value("error_kind", std::string()));
  }
}
