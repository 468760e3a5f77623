#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fraisse/cli.hpp"
#include "fraisse/json_io.hpp"

using namespace fraisse;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Result forge(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

const char* kK2 = R"({"signature":[{"name":"E","arity":2}],"size":2,"relations":{"E":[[0,1],[1,0]]}})";

}  // namespace

TEST_CASE("copies list") {
  auto beta = temp_file("forge_k2.json", kK2);
  auto r = forge({"copies", "list", "--pres", "rado", "--beta", beta, "--count", "5"});
  REQUIRE(r.code == cli::kOk);
  auto copies = r.doc()["copies"];
  REQUIRE(copies.size() == 5);
  CHECK(copies[4] == json::parse(R"({"j":4,"set":[2,4]})"));
  CHECK(forge({"copies", "list", "--beta", "K2", "--count", "5"}).out == r.out);
}

TEST_CASE("mono embed failure paths") {
  auto zeros = forge({"mono", "embed", "--pres", "rado", "--beta", "K2", "--bits", "literal:zeros", "--depth", "1"});
  CHECK(zeros.code == cli::kBudget);
  CHECK(zeros.doc()["error"]["step"] == 1);
  CHECK_FALSE(zeros.err.empty());

  auto two = forge({"mono", "embed", "--beta", "K2", "--bits", "literal:11", "--depth", "3"});
  CHECK(two.code == cli::kPrefix);
  CHECK(two.doc()["error"]["index"] == 2);
  CHECK(two.doc()["error"]["kind"] == "prefix_exhausted");
  CHECK(two.doc()["chain"] == json::parse("[[0]]"));
}

TEST_CASE("mono embed then verify") {
  auto made = forge({"mono", "embed", "--beta", "K2", "--bits", "literal:ones", "--depth", "4"});
  REQUIRE(made.code == cli::kOk);
  auto path = temp_file("forge_cert.json", made.out);
  auto ok = forge({"mono", "verify", "--cert", path});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.doc()["valid"] == true);

  auto doc = made.doc();
  doc["bits"] = json::parse(R"({"literal":"zeros"})");
  auto bad = forge({"mono", "verify", temp_file("forge_cert_bad.json", doc.dump())});
  CHECK(bad.code == cli::kFailed);
  CHECK(bad.doc()["valid"] == false);

  auto missing = forge({"mono", "verify", "--cert", "/nonexistent/cert.json"});
  CHECK(missing.code == cli::kInvalid);
}

TEST_CASE("output is deterministic unless stamped") {
  std::vector<std::string> args{"mono", "embed", "--pres", "complete", "--beta", "K2", "--bits", "prng:3", "--depth", "2"};
  auto a = forge(args), b = forge(args);
  REQUIRE(a.code == cli::kOk);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.doc().contains("stamp"));
  args.push_back("--stamp");
  CHECK(forge(args).doc().contains("stamp"));
}

TEST_CASE("FORGE_BUDGET sets the default budget") {
  ::setenv("FORGE_BUDGET", "3", 1);
  auto r = forge({"mono", "embed", "--pres", "complete", "--beta", "K2", "--bits", "literal:zeros", "--depth", "1"});
  CHECK(r.code == cli::kBudget);
  CHECK(r.doc()["budget"] == 3);
  CHECK(r.doc()["error"]["message"].get<std::string>().find("within budget 3") != std::string::npos);
  auto flag = forge({"mono", "embed", "--pres", "complete", "--beta", "K2", "--bits", "literal:zeros", "--depth", "1",
                     "--budget", "5"});
  CHECK(flag.doc()["budget"] == 5);
  ::setenv("FORGE_BUDGET", "lots", 1);
  CHECK(forge({"mono", "embed", "--beta", "K2", "--bits", "literal:ones", "--depth", "1"}).code == cli::kInvalid);
  ::unsetenv("FORGE_BUDGET");
}

TEST_CASE("ldiag probe and witness") {
  auto probe = forge({"ldiag", "probe", "--levels", "3", "--pres", "primes", "--caps", "1", "--zbound", "10000"});
  REQUIRE(probe.code == cli::kOk);
  CHECK(probe.doc()["violated"].empty());
  CHECK(probe.doc()["summary"] == "no violation found within bounds");

  auto zeros = forge({"ldiag", "probe", "--levels", "2", "--pres", "bits", "--bits", "literal:zeros", "--zbound", "20"});
  CHECK(zeros.code == cli::kOk);
  CHECK_FALSE(zeros.doc()["violated"].empty());

  auto w = forge({"ldiag", "witness", "--levels", "3", "--level", "1", "--X", "1", "--Xp", "1"});
  REQUIRE(w.code == cli::kOk);
  CHECK(w.doc()["z"] == 187);
  CHECK(w.doc()["vertex"] == 1 + 3 * 187);
  CHECK(forge({"ldiag", "witness", "--level", "1", "--X", "1", "--Y", "1"}).code == cli::kInvalid);
}

TEST_CASE("homog check") {
  auto b = temp_file("forge_b.json", kK2);
  auto r = forge({"homog", "check", "--pres", "rado", "--B", b, "--map", "0:0"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.doc()["extension"] == json::parse("[[0,0],[1,1]]"));
  auto tight = forge({"homog", "check", "--pres", "rado", "--B", b, "--map", "0:8", "--bound", "2"});
  CHECK(tight.code == cli::kBudget);
  CHECK(tight.doc()["extension"].is_null());
}

TEST_CASE("color show and limit show") {
  auto c = forge({"color", "show", "--beta", "K2", "--bits", "prng:0", "--count", "3"});
  REQUIRE(c.code == cli::kOk);
  CHECK(c.doc()["copies"][0]["color"] == 1);
  auto lit = forge({"color", "show", "--beta", "K2", "--bits", "literal:10", "--count", "3"});
  CHECK(lit.code == cli::kPrefix);

  auto g = forge({"limit", "show", "--pres", "rado", "--n", "4", "--format", "dot"});
  REQUIRE(g.code == cli::kOk);
  CHECK(g.out.rfind("graph", 0) == 0);
  auto d = forge({"limit", "show", "--pres", "primes", "--levels", "3", "--n", "9", "--format", "dot"});
  CHECK(d.out.rfind("digraph", 0) == 0);
  auto j = forge({"limit", "show", "--vertices", "0,1,3"});
  CHECK(j.doc()["structure"]["size"] == 3);
}

TEST_CASE("invalid input exits 4") {
  CHECK(forge({"limit", "show", "--pres", "petersen"}).code == cli::kInvalid);
  CHECK(forge({"mono", "embed", "--beta", "K2"}).code == cli::kInvalid);
  CHECK(forge({"mono", "embed", "--beta", "/nonexistent.json", "--bits", "literal:ones"}).code == cli::kInvalid);
  CHECK(forge({"nonsense"}).code == cli::kInvalid);
  CHECK(forge({}).code == cli::kInvalid);
  CHECK(forge({"copies", "list", "--format", "svg"}).code == cli::kInvalid);
  CHECK(forge({"ldiag", "probe", "--pres", "rado"}).code == cli::kInvalid);
  CHECK(forge({"--help"}).code == cli::kOk);
}
