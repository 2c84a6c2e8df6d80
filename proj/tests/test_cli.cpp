// End-to-end checks of the command-line tool: output values, round trips
// and the exit-code contract (0 ok, 1 mathematical negative, 2 usage).
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

namespace {

std::string g_binary;
int g_failures = 0;

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = g_binary + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    std::cerr << "cannot launch: " << cmd << "\n";
    std::exit(2);
  }
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void expect(bool ok, const std::string& what, const RunResult& r) {
  if (ok) return;
  ++g_failures;
  std::cerr << "FAIL: " << what << "\n  exit=" << r.code << "\n  out=" << r.out << "\n";
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-binary>\n";
    return 2;
  }
  g_binary = argv[1];

  {
    const auto r = run("class Q12.34 pair C");
    expect(r.code == 0 && r.out == "1\n", "pairing against the moving cubic", r);
  }
  {
    const auto r = run("class L123 + E1");
    expect(r.code == 0 && r.out == "1; 0,1,1,0,0; 1,1,0,0,1,0,0,0,0,0\n", "class sum printing", r);
    // round trip through the printed form
    const auto r2 = run("class \"" + r.out.substr(0, r.out.size() - 1) + "\"");
    expect(r2.code == 0 && r2.out == r.out, "printed class re-parses to itself", r2);
  }
  {
    const auto r = run("class bad!");
    expect(r.code == 2, "parse errors exit 2", r);
  }
  {
    const auto r = run("certify --x \"2; 0,0,0,0; 1,1,1,1,1,1\"");
    expect(r.code == 1 && contains(r.out, "NotEffective"), "separating-face counterexample", r);
  }
  {
    const auto r = run("certify --s4 \"5; 3,3,2,1\"");
    expect(r.code == 0 &&
               contains(r.out, "H-E1-E2 H-E1-E3 H-E1-E3 H-E2-E4 H-E2"),
           "published table decomposition", r);
  }
  {
    const auto r = run("certify --s4 \"0; 0,0,0,0\"");
    expect(r.code == 0 && contains(r.out, "empty sum"), "zero class certificate", r);
  }
  {
    const auto r = run("certify --m Q12.34");
    expect(r.code == 1 && contains(r.out, "violated"), "the quadric fails its own inequality", r);
  }
  {
    const auto r = run("h0 Q12.34");
    expect(r.code == 0 && r.out == "1\n", "h0 of the quadric", r);
  }
  {
    const auto r = run("h0 --surface bl4 \"5; 3,3,2,1\"");
    expect(r.code == 0 && r.out == "5\n", "surface h0", r);
  }
  {
    const auto r = run("restrict --to E5 Q12.34");
    expect(r.code == 0 && contains(r.out, "1; 0,0,0,0"), "restriction to the fifth plane", r);
  }
  {
    const auto r = run("monomials Q12.34");
    expect(r.code == 0 && contains(r.out, "Q12.34") && contains(r.out, "1 monomial"),
           "monomial listing", r);
  }
  {
    const auto r = run("lift Q12.34 --exp cz=1");
    expect(r.code == 0 && contains(r.out, "case II") && contains(r.out, "not needed") &&
               contains(r.out, "delta effective"),
           "straightforward lift of the quadric generator", r);
  }
  {
    const auto r = run("lift Q12.34 --exp a12=1");
    expect(r.code == 1 && contains(r.out, "membership"), "membership violations exit 1", r);
  }
  {
    const auto r = run("lift E5 --reduce");
    expect(r.code == 0 && contains(r.out, "- E5") && contains(r.out, "1 step"),
           "reduction trace of the fifth exceptional", r);
  }
  {
    // zero restriction: the empty monomial lifts with delta = D itself
    const auto r = run("lift \"1; 0,0,0,0,0; 0,0,0,0,0,0,0,0,0,0\" --exp a12=0");
    expect(r.code == 0 && contains(r.out, "case I") && contains(r.out, "1 term") &&
               contains(r.out, "delta effective"),
           "trivial trace over a zero restriction", r);
  }
  {
    const auto r = run("--format records verify --max-total 1 --jobs 2");
    expect(r.code == 0 && contains(r.out, "\"summary\":true") && contains(r.out, "\"fail\":0"),
           "single-generator sweep passes", r);
    int lines = 0;
    for (char c : r.out)
      if (c == '\n') ++lines;
    expect(lines == 42, "41 classes (40 generators + zero) plus summary", {r.code, r.out});
  }
  {
    const auto r = run("verify --box 1,1,0 --jobs 2");
    expect(r.code == 0 && contains(r.out, "fail 0"), "small box sweep", r);
  }

  if (g_failures == 0) {
    std::cout << "cli: all checks passed\n";
    return 0;
  }
  std::cerr << g_failures << " cli check(s) failed\n";
  return 1;
}
