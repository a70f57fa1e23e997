#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qcross/cli.hpp"
#include "qcross/serialize.hpp"

using namespace qcross;

namespace {

struct Run {
  int code;
  std::string text;
  Json doc;
};

Run run_config(const RunConfig& c) {
  std::ostringstream os;
  const int code = run(c, os);
  return {code, os.str(), Json::parse(os.str())};
}

RunConfig config(std::string sub, long q, long n, long k, long l) {
  RunConfig c;
  c.subcommand = std::move(sub);
  c.q = q;
  c.n = n;
  c.k = k;
  c.l = l;
  return c;
}

int run_argv(std::vector<std::string> args, std::string& captured) {
  const auto path = std::filesystem::temp_directory_path() / "qcross_cli_test.json";
  args.push_back("--output");
  args.push_back(path.string());
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  const int code = main_entry(static_cast<int>(argv.size()), argv.data());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  captured = ss.str();
  std::filesystem::remove(path);
  return code;
}

}  // namespace

TEST_CASE("certify exit codes and bound") {
  const Run ok = run_config(config("certify", 2, 6, 3, 2));
  CHECK(ok.code == kExitOk);
  CHECK(ok.doc["bound"] == "4805");
  CHECK(ok.doc["verdict"] == "feasible");

  const Run bad = run_config(config("certify", 2, 3, 2, 1));
  CHECK(bad.code == kExitError);
  CHECK(bad.doc["kind"] == "invalid-parameter");
  CHECK(bad.doc.contains("error"));
  CHECK(bad.doc["params"]["n"] == 3);

  RunConfig infeasible = config("certify", 2, 6, 3, 2);
  infeasible.lambda = "1000/1";
  CHECK(run_config(infeasible).code == kExitFail);

  RunConfig garbage = config("certify", 2, 6, 3, 2);
  garbage.lambda = "one half";
  CHECK(run_config(garbage).code == kExitError);
}

TEST_CASE("search subcommand") {
  RunConfig c = config("search", 2, 4, 2, 2);
  c.budget = 3600;
  const Run r = run_config(c);
  CHECK(r.code == kExitOk);
  CHECK(r.doc["best_product"] == "49");
  CHECK(r.doc["exact"] == true);
}

TEST_CASE("other subcommands") {
  const Run ids = run_config(config("check-identities", 2, 3, 1, 1));
  CHECK(ids.code == kExitOk);
  CHECK(ids.doc["identities"]["ok"] == true);
  CHECK(ids.doc["lemmas"]["ok"] == true);

  const Run spectrum = run_config(config("spectrum", 2, 4, 2, 1));
  CHECK(spectrum.code == kExitOk);
  CHECK(spectrum.doc["table"][1]["theta_kk"]["rho"] == "-4/1");
  CHECK(spectrum.doc["crosscheck"]["2"]["report"]["ok"] == true);

  const Run ext = run_config(config("extremal", 3, 4, 2, 2));
  CHECK(ext.code == kExitOk);
  CHECK(ext.doc["constructions"].size() == 2);
  CHECK(ext.doc["constructions"][1]["product"] == "169");

  const Run nonprime = run_config(config("extremal", 4, 4, 2, 2));
  CHECK(nonprime.code == kExitError);
  CHECK(nonprime.doc["kind"] == "unsupported");

  RunConfig sweep;
  sweep.subcommand = "sweep";
  sweep.qs = {2, 3};
  sweep.n_max = 6;
  sweep.jobs = 2;
  sweep.structure = true;
  const Run sw = run_config(sweep);
  CHECK(sw.code == kExitOk);
  CHECK(sw.doc["cases"] == 2 * (1 + 1 + 3 + 3 + 6));
}

TEST_CASE("identical inputs give identical bytes") {
  const std::vector<RunConfig> configs = {
      config("certify", 3, 8, 3, 2), config("spectrum", 2, 4, 2, 2), config("extremal", 2, 4, 2, 2),
      config("search", 2, 4, 2, 1),  config("check-identities", 2, 3, 1, 1),
  };
  for (const auto& c : configs) {
    CHECK(run_config(c).text == run_config(c).text);
  }
  RunConfig a;
  a.subcommand = "sweep";
  a.qs = {2, 5};
  a.n_max = 7;
  a.jobs = 1;
  RunConfig b = a;
  b.jobs = 3;
  CHECK(run_config(a).text == run_config(b).text);
}

TEST_CASE("command line parsing and verify round trip") {
  std::string cert;
  CHECK(run_argv({"qcross", "certify", "--q", "2", "--n", "6", "--k", "3", "--l", "2", "--lambda", "auto"}, cert) ==
        kExitOk);
  CHECK(Json::parse(cert)["bound"] == "4805");

  const auto path = std::filesystem::temp_directory_path() / "qcross_cert_roundtrip.json";
  {
    std::ofstream out(path);
    out << cert;
  }
  std::string verdict;
  CHECK(run_argv({"qcross", "verify", path.string()}, verdict) == kExitOk);
  CHECK(Json::parse(verdict)["recheck"]["ok"] == true);

  // Tamper with a block flag: the re-check must notice.
  Json j = Json::parse(cert);
  j["blocks"][0]["psd"] = !j["blocks"][0]["psd"].get<bool>();
  {
    std::ofstream out(path);
    out << dump(j);
  }
  CHECK(run_argv({"qcross", "verify", path.string()}, verdict) == kExitFail);
  std::filesystem::remove(path);

  std::string err;
  CHECK(run_argv({"qcross", "certify", "--q", "2", "--n", "3", "--k", "2", "--l", "1"}, err) == kExitError);
  CHECK(Json::parse(err)["kind"] == "invalid-parameter");
}
