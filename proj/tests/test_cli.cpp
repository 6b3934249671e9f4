#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int status = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string command = std::string(PRM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buffer;
  while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe))
    r.output.append(buffer.data(), n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST_CASE("eval runs composed codes") {
  RunResult r = run("eval \"(iter(s) o <id # zero>)\" \"(3,0)\"");
  CHECK(r.status == 0);
  CHECK(r.output == "3\n");
}

TEST_CASE("eval resolves stdlib references") {
  RunResult r = run("eval \"@plus\" \"(2,3)\"");
  CHECK(r.status == 0);
  CHECK(r.output == "5\n");

  RunResult monus = run("eval \"@monus\" \"(5,3)\"");
  CHECK(monus.output == "2\n");
  RunResult monus2 = run("eval \"@monus\" \"(3,5)\"");
  CHECK(monus2.output == "0\n");
  RunResult gcd = run("eval \"@gcd\" \"(6,4)\"");
  CHECK(gcd.output == "2\n");
}

TEST_CASE("eval covers anchors and trash") {
  CHECK(run("eval \"iter(s)\" \"(4,0)\"").output == "4\n");
  CHECK(run("eval \"l\" 3").output == "bot\n");
  CHECK(run("eval \"iter(s)\" 5").output == "bot\n");
}

TEST_CASE("eval reports exhaustion with the residual state") {
  RunResult r = run("eval \"@plus\" \"(2,3)\" --budget 2");
  CHECK(r.status == 0);
  CHECK(r.output.find("EXHAUSTED after 2 steps") != std::string::npos);
  CHECK(r.output.find("residual code:") != std::string::npos);
}

TEST_CASE("encode and decode round trip") {
  RunResult enc = run("encode \"iter(s)\"");
  REQUIRE(enc.status == 0);
  std::string digits = enc.output.substr(0, enc.output.find('\n'));
  RunResult dec = run("decode " + digits);
  CHECK(dec.status == 0);
  CHECK(dec.output == "iter(s)\n");

  RunResult val = run("encode \"(1,2)\"");
  REQUIRE(val.status == 0);
  std::string vdigits = val.output.substr(0, val.output.find('\n'));
  RunResult vdec = run("decode " + vdigits);
  CHECK(vdec.output == "(1,2)\n");
}

TEST_CASE("oversized encodings need force") {
  RunResult refuse = run("encode \"200\"");
  CHECK(refuse.status == 1);
  CHECK(refuse.output.find("--force") != std::string::npos);
  RunResult forced = run("encode \"200\" --force --format sexp");
  CHECK(forced.status == 0);
  CHECK(forced.output.find("(ok (godel ") != std::string::npos);
}

TEST_CASE("check prints signatures and type errors") {
  RunResult ok = run("check \"iter(s)\"");
  CHECK(ok.status == 0);
  CHECK(ok.output == "(N*N) -> N\n");
  RunResult bad = run("check \"(zero o s)\"");
  CHECK(bad.status == 1);
  CHECK(bad.output.find("type mismatch") != std::string::npos);
}

TEST_CASE("trace emits tab separated complexity history") {
  RunResult r = run("trace \"(s o zero)\" 0");
  CHECK(r.status == 0);
  CHECK(r.output == "0\t[3]\t3\t(s o zero)\t0\n1\t[1]\t1\ts\t0\n2\t[0]\t1\tid\t1\n");
}

TEST_CASE("stdlib lists entries and prints terms") {
  RunResult all = run("stdlib");
  CHECK(all.status == 0);
  CHECK(all.output.find("gcd : (N*N) -> N") != std::string::npos);
  RunResult one = run("stdlib plus");
  CHECK(one.output.find("iter(s)") != std::string::npos);
  RunResult missing = run("stdlib nope");
  CHECK(missing.status == 1);
}

TEST_CASE("proof files check and evaluate") {
  std::string path = std::string(PRM_CLI_PATH) + ".proof.tmp";
  {
    std::ofstream out(path);
    out << "(freyd-uniq \"iter(s)\" \"(iter(s) o <id # id>)\" "
           "(ax-iter-anchor \"(iter(s) o <id ; (zero o pi)>)\" \"id\") "
           "(ax-iter-step \"(iter(s) o <id # s>)\" \"(s o iter(s))\"))\n";
  }
  RunResult check = run("prove-check " + path);
  CHECK(check.status == 0);
  CHECK(check.output == "tree 0: valid\n");
  RunResult evald = run("prove-eval " + path + " \"(4,3)\" --budget 10000");
  CHECK(evald.status == 0);
  CHECK(evald.output == "tree 0: sound, 7 vs 7 (equal)\n");

  {
    std::ofstream out(path);
    out << "(ax-neutral-l \"(id o s)\" \"zero\")\n";
  }
  RunResult bad = run("prove-check " + path);
  CHECK(bad.status == 1);
  CHECK(bad.output.find("violation") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("enumerate streams the reflexive base at tiny bounds") {
  RunResult r = run("enumerate --max-nodes 1 --max-code-size 1");
  CHECK(r.status == 0);
  CHECK(r.output ==
        "(refl \"id\" \"id\")\n(refl \"zero\" \"zero\")\n(refl \"s\" \"s\")\n"
        "(refl \"pi\" \"pi\")\n(refl \"delta\" \"delta\")\n(refl \"l\" \"l\")\n"
        "(refl \"r\" \"r\")\n");
}

TEST_CASE("search reports are byte identical across runs") {
  std::string args = "search --max-nodes 2 --max-code-size 3 --budget 2000";
  RunResult a = run(args);
  RunResult b = run(args);
  CHECK(a.status == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("status: ok") != std::string::npos);
  RunResult s = run(args + " --format sexp");
  CHECK(s.output.find("(status ok)") != std::string::npos);
}

TEST_CASE("search reads argument files") {
  std::string path = std::string(PRM_CLI_PATH) + ".args.tmp";
  {
    std::ofstream out(path);
    out << "0\n1\n(1,2)\n";
  }
  RunResult r = run("search --max-nodes 2 --max-code-size 2 --budget 2000 --args " + path);
  CHECK(r.status == 0);
  CHECK(r.output.find("arguments: 3") != std::string::npos);
  CHECK(r.output.find("status: ok") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("bad bounds are user errors") {
  RunResult r = run("enumerate --max-nodes 0 --max-code-size 2");
  CHECK(r.status != 0);
}

TEST_CASE("mu and while subcommands") {
  RunResult m = run("mu \"(@leq o <l ; (@mult o <r ; r>)>)\" 10 --bound 100");
  CHECK(m.status == 0);
  CHECK(m.output == "defined: 4\n");

  RunResult w = run("while \"(@lt o <(zero o pi) ; id>)\" \"@pred\" 3 --bound 10");
  CHECK(w.status == 0);
  CHECK(w.output == "defined: 0\n");

  RunResult diverge = run("while \"(@leq o <zero_bad ; id>)\" \"@pred\" 3 --bound 10");
  CHECK(diverge.status == 1);  // syntax error surfaces as user error
}

TEST_CASE("environment variable sets the default budget") {
  RunResult r = run("eval \"@plus\" \"(2,3)\"");
  CHECK(r.output == "5\n");
  std::string cmd = std::string("PRMACHINE_BUDGET=2 ") + PRM_CLI_PATH +
                    " eval \"@plus\" \"(2,3)\" 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buffer;
  while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe))
    output.append(buffer.data(), n);
  pclose(pipe);
  CHECK(output.find("EXHAUSTED after 2 steps") != std::string::npos);
}

TEST_CASE("flags take precedence over the environment") {
  std::string cmd = std::string("PRMACHINE_BUDGET=2 ") + PRM_CLI_PATH +
                    " eval \"@plus\" \"(2,3)\" --budget 1000 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buffer;
  while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe))
    output.append(buffer.data(), n);
  pclose(pipe);
  CHECK(output == "5\n");
}
