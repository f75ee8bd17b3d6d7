// End-to-end checks of the omega-forge executable: exit codes, report text,
// and byte-stable JSON output.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(OMEGA_FORGE_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf;
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  while (size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

void expect_contains(const RunResult& r, const std::string& needle,
                     const std::string& what) {
  expect(r.out.find(needle) != std::string::npos,
         what + " (missing '" + needle + "' in: " + r.out + ")");
}

}  // namespace

int main() {
  // decide exit codes: accept 0, reject 1 (a valid answer), usage error 2
  auto a = run("decide --continuous \"{0,2,4}\"");
  expect(a.code == 0, "decide continuous accept exit code");
  expect_contains(a, "realizable", "decide continuous accept text");

  auto r = run("decide --analytic \"{0,2,4}\"");
  expect(r.code == 1, "decide analytic reject exit code");
  expect_contains(r, "not realizable by any analytic function",
                  "decide analytic reject text");

  auto c0 = run("decide --continuous \"{0,2}\"");
  expect(c0.code == 1, "decide continuous reject exit code");

  auto bad = run("decide --continuous \"{0,2\"");
  expect(bad.code == 2, "malformed set exit code");
  expect_contains(bad, "position", "malformed set reports a position");

  auto usage = run("decide \"{0,1}\"");
  expect(usage.code == 2, "missing mode flag exit code");

  auto ap = run("analyze-poly \"0,1\"");
  expect(ap.code == 0, "analyze-poly exit code");
  expect_contains(ap, "omega = {0,1}", "analyze-poly omega");

  auto apbad = run("analyze-poly \"0,,1\"");
  expect(apbad.code == 2, "bad coefficient list exit code");

  // JSON reports are byte stable across runs
  auto j1 = run("--json construct --continuous \"{0,1,3}\"");
  auto j2 = run("--json construct --continuous \"{0,1,3}\"");
  expect(j1.code == 0 && j1.out == j2.out, "construct JSON determinism");
  expect_contains(j1, "\"recipe\": \"prop1-case1\"", "construct recipe tag");

  // analyze-pl round trip through a plfunction document
  {
    std::ofstream f("/tmp/omega_forge_cli_v.json");
    f << "{\"type\":\"plfunction\",\"breakpoints\":[[\"0\",\"1\"],"
         "[\"1/2\",\"0\"],[\"1\",\"1\"]]}";
  }
  auto apl = run("analyze-pl /tmp/omega_forge_cli_v.json");
  expect(apl.code == 0, "analyze-pl exit code");
  expect_contains(apl, "omega = {0,1,2}", "analyze-pl omega");

  auto aplbad = run("analyze-pl /tmp/omega_forge_cli_missing.json");
  expect(aplbad.code == 2, "unreadable input exit code");

  // construct -> serialize -> analyze keeps the spectrum
  auto w = run("--json construct --analytic \"{0,2,3,4}\"");
  expect(w.code == 0, "construct analytic exit code");
  {
    auto pos = w.out.find("\"plfunction\": {");
    expect(pos != std::string::npos, "witness plfunction present");
    // cut the plfunction object out of the report
    int depth = 0;
    size_t start = w.out.find('{', pos + 14);
    size_t end = start;
    for (size_t i = start; i < w.out.size(); ++i) {
      if (w.out[i] == '{') ++depth;
      if (w.out[i] == '}') {
        --depth;
        if (depth == 0) {
          end = i + 1;
          break;
        }
      }
    }
    std::ofstream f("/tmp/omega_forge_cli_w.json");
    f << w.out.substr(start, end - start);
  }
  auto wl = run("analyze-pl /tmp/omega_forge_cli_w.json");
  expect(wl.code == 0, "witness re-analysis exit code");
  expect_contains(wl, "omega = {0,2,3,4}", "witness spectrum round trip");

  // crosscheck at small bounds
  auto cc = run("crosscheck --extrema 3 --levels 3");
  expect(cc.code == 0, "crosscheck exit code");
  expect_contains(cc, "soundness gaps: 0", "crosscheck soundness");

  // plotting is deterministic
  auto p1 = run("plot \"0,1,-1\" --out /tmp/omega_forge_cli_p1.svg");
  auto p2 = run("plot \"0,1,-1\" --out /tmp/omega_forge_cli_p2.svg");
  expect(p1.code == 0 && p2.code == 0, "plot exit code");
  {
    std::ifstream f1("/tmp/omega_forge_cli_p1.svg"), f2("/tmp/omega_forge_cli_p2.svg");
    std::string s1((std::istreambuf_iterator<char>(f1)),
                   std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)),
                   std::istreambuf_iterator<char>());
    expect(!s1.empty() && s1 == s2, "plot byte determinism");
    expect(s1.find("<svg") != std::string::npos, "plot is svg");
  }

  if (failures == 0) std::cout << "cli tests passed\n";
  return failures == 0 ? 0 : 1;
}
