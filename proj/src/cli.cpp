#include "qcross/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "qcross/certificate.hpp"
#include "qcross/errors.hpp"
#include "qcross/families.hpp"
#include "qcross/harmonic.hpp"
#include "qcross/incidence.hpp"
#include "qcross/serialize.hpp"
#include "qcross/spectrum.hpp"
#include "qcross/subspace.hpp"

namespace qcross {

namespace {

struct Outcome {
  Json doc;
  int code = kExitOk;
};

Json raw_params(const RunConfig& c) { return Json{{"q", c.q}, {"n", c.n}, {"k", c.k}, {"l", c.l}}; }

std::size_t guard_of(const RunConfig& c) { return c.guard ? *c.guard : default_entry_guard(); }

Outcome do_certify(const RunConfig& c) {
  const Parameters params = make_parameters(c.q, c.n, c.k, c.l);
  CertifyOptions opt;
  if (c.lambda != "auto") opt.lambda = parse_rational(c.lambda);
  opt.search.refine_bits = c.refine_bits;
  const DualCertificate cert = certify(params, opt);
  return {to_json(cert), cert.verdict == Verdict::feasible ? kExitOk : kExitFail};
}

Outcome do_verify(const RunConfig& c) {
  std::ifstream in(c.input);
  if (!in) throw InvalidParameter("cannot read certificate file '" + c.input + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw InvalidParameter(std::string("malformed JSON: ") + e.what());
  }
  const DualCertificate cert = certificate_from_json(j);
  const Report rep = recheck_certificate(cert);
  Json doc{{"params", to_json(cert.params)}, {"recheck", to_json(rep)}, {"verdict", to_string(cert.verdict)}};
  return {doc, rep.ok() && cert.verdict == Verdict::feasible ? kExitOk : kExitFail};
}

Outcome do_identities(const RunConfig& c) {
  const SubspaceLattice lattice(c.n, c.q);
  const IncidenceAlgebra alg(lattice, guard_of(c));
  const Report ids = verify_identities(alg, c.n);
  const Report lemmas = verify_lemmas(alg);
  Json doc{{"params", Json{{"q", c.q}, {"n", c.n}}}, {"identities", to_json(ids)}, {"lemmas", to_json(lemmas)}};
  return {doc, ids.ok() && lemmas.ok() ? kExitOk : kExitFail};
}

Outcome do_spectrum(const RunConfig& c) {
  const Parameters params = make_parameters(c.q, c.n, c.k, c.l);
  const std::vector<Integer> d = multiplicities(params);
  Json table = Json::array();
  for (long i = 0; 2 * i <= params.n; ++i) {
    Json row{{"i", i}, {"d", d[static_cast<std::size_t>(i)].get_str()}};
    const bool k_ok = i <= params.k && params.k <= params.n - i;
    const bool l_ok = i <= params.l && params.l <= params.n - i;
    row["theta_kk"] = k_ok ? to_json(theta(params, i, params.k, params.k)) : Json(nullptr);
    row["theta_ll"] = l_ok ? to_json(theta(params, i, params.l, params.l)) : Json(nullptr);
    row["theta_kl"] = l_ok ? to_json(theta(params, i, params.k, params.l)) : Json(nullptr);
    table.push_back(row);
  }
  Json doc{{"params", to_json(params)}, {"table", table}};
  int code = kExitOk;
  if (is_prime(params.q)) {
    try {
      const SubspaceLattice lattice(params.n, params.q);
      const IncidenceAlgebra alg(lattice, guard_of(c));
      Json cross = Json::object();
      for (long dim : {params.k, params.l}) {
        const SpectrumCrosscheck sc = spectrum_crosscheck(alg, dim);
        if (!sc.report.ok()) code = kExitFail;
        cross[std::to_string(dim)] = to_json(sc);
      }
      doc["crosscheck"] = cross;
    } catch (const SizeGuardExceeded& e) {
      doc["crosscheck"] = nullptr;
      doc["crosscheck_skipped"] = e.what();
    }
  } else {
    doc["crosscheck"] = nullptr;
    doc["crosscheck_skipped"] = "explicit lattice needs prime q";
  }
  return {doc, code};
}

Outcome do_extremal(const RunConfig& c) {
  const Parameters params = make_parameters(c.q, c.n, c.k, c.l);
  const SubspaceLattice lattice(params.n, params.q);
  const PrimeField& field = lattice.field();
  const Integer D = dual_radicand(params);
  const DualCertificate cert = certify(params);

  struct Construction {
    std::string type;
    Family f, g;
  };
  std::vector<Construction> list;
  const Subspace point = coordinate_subspace(field, params.n, {0});
  list.push_back({"point_star", point_star(lattice, point, params.k), point_star(lattice, point, params.l)});
  if (params.k == params.l && params.n == 2 * params.k) {
    std::vector<long> coords;
    for (long j = 0; j < 2 * params.k - 1; ++j) coords.push_back(j);
    const Subspace hyper = coordinate_subspace(field, params.n, coords);
    const Family h = hyperplane_family(lattice, hyper, params.k);
    list.push_back({"hyperplane", h, h});
  }

  Json items = Json::array();
  bool all_ok = true;
  for (const auto& con : list) {
    const Integer product = Integer(static_cast<unsigned long>(con.f.size())) *
                            Integer(static_cast<unsigned long>(con.g.size()));
    const Report primal = primal_check(lattice, con.f, con.g, params);
    Json item{{"type", con.type},
              {"F", to_json(con.f)},
              {"G", to_json(con.g)},
              {"product", product.get_str()},
              {"attains_bound", product == D},
              {"primal", to_json(primal)}};
    bool ok = primal.ok() && product == D;
    if (product == D && cert.verdict == Verdict::feasible) {
      const Report slack = slackness_check(lattice, con.f, con.g, cert);
      item["slackness"] = to_json(slack);
      ok = ok && slack.ok();
    } else {
      item["slackness"] = nullptr;
      ok = false;
    }
    all_ok = all_ok && ok;
    items.push_back(item);
  }
  Json doc{{"params", to_json(params)},
           {"D", D.get_str()},
           {"lambda", to_string(cert.coefficients.lambda)},
           {"constructions", items}};
  return {doc, all_ok ? kExitOk : kExitFail};
}

Outcome do_search(const RunConfig& c) {
  const Parameters params = make_parameters(c.q, c.n, c.k, c.l);
  const SubspaceLattice lattice(params.n, params.q);
  const SearchResult res = brute_force_max(lattice, params.k, params.l, c.budget);
  const Integer D = dual_radicand(params);
  const bool within = Integer(static_cast<unsigned long>(res.best_product)) <= D;
  Json doc{{"params", to_json(params)}, {"D", D.get_str()}, {"result", to_json(res)}, {"within_bound", within}};
  // Mirror the headline fields at top level for scripting.
  doc["best_product"] = std::to_string(res.best_product);
  doc["exact"] = res.exact;
  return {doc, within ? kExitOk : kExitFail};
}

Json sweep_case(long q, long n, long k, long l, bool structure) {
  const Parameters params = make_parameters(q, n, k, l);
  Json entry{{"params", to_json(params)}};
  try {
    const DualCertificate cert = certify(params);
    const Integer expected = gauss(n - 1, k - 1, q) * gauss(n - 1, l - 1, q);
    const Report recheck = recheck_certificate(cert);
    entry["verdict"] = to_string(cert.verdict);
    entry["bound"] = cert.bound.get_str();
    entry["lambda"] = to_string(cert.coefficients.lambda);
    entry["bound_ok"] = cert.bound == expected;
    entry["recheck_ok"] = recheck.ok();
    bool ok = cert.verdict == Verdict::feasible && cert.bound == expected && recheck.ok();
    if (structure) {
      Report rep = structure_checks(params, cert.coefficients.lambda);
      rep.merge(structure_checks(params, cert.coefficients.lambda / 2));
      entry["structure"] = to_json(rep);
      ok = ok && rep.ok();
    }
    entry["ok"] = ok;
  } catch (const std::exception& e) {
    entry["error"] = e.what();
    entry["ok"] = false;
  }
  return entry;
}

Outcome do_sweep(const RunConfig& c) {
  struct Case {
    long q, n, k, l;
  };
  std::vector<Case> cases;
  for (long q : c.qs) {
    for (long n = c.n_min; n <= c.n_max; ++n) {
      for (long k = 1; 2 * k <= n; ++k) {
        for (long l = 1; l <= k; ++l) cases.push_back({q, n, k, l});
      }
    }
  }
  std::vector<Json> results(cases.size());
  const unsigned jobs = std::max(1u, c.jobs);
  std::vector<std::future<void>> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t idx = w; idx < cases.size(); idx += jobs) {
        const Case& cs = cases[idx];
        results[idx] = sweep_case(cs.q, cs.n, cs.k, cs.l, c.structure);
      }
    }));
  }
  for (auto& f : workers) f.get();

  std::size_t passed = 0;
  Json failures = Json::array();
  for (const auto& r : results) {
    if (r.at("ok").get<bool>()) {
      ++passed;
    } else {
      failures.push_back(r.at("params"));
    }
  }
  Json doc{{"cases", cases.size()}, {"passed", passed}, {"failures", failures}, {"results", results}};
  return {doc, failures.empty() ? kExitOk : kExitFail};
}

Outcome dispatch(const RunConfig& c) {
  if (c.subcommand == "certify") return do_certify(c);
  if (c.subcommand == "verify") return do_verify(c);
  if (c.subcommand == "check-identities") return do_identities(c);
  if (c.subcommand == "spectrum") return do_spectrum(c);
  if (c.subcommand == "extremal") return do_extremal(c);
  if (c.subcommand == "search") return do_search(c);
  if (c.subcommand == "sweep") return do_sweep(c);
  throw InvalidParameter("unknown subcommand '" + c.subcommand + "'");
}

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const InvalidParameter*>(&e)) return "invalid-parameter";
  if (dynamic_cast<const ArithmeticError*>(&e)) return "arithmetic-error";
  if (dynamic_cast<const Unsupported*>(&e)) return "unsupported";
  if (dynamic_cast<const SizeGuardExceeded*>(&e)) return "size-guard-exceeded";
  if (dynamic_cast<const ExhaustedSearch*>(&e)) return "exhausted-search";
  return "internal-error";
}

}  // namespace

int run(const RunConfig& config, std::ostream& out) {
  Outcome result;
  try {
    result = dispatch(config);
  } catch (const std::exception& e) {
    result.doc = Json{{"error", e.what()}, {"kind", error_kind(e)}, {"params", raw_params(config)}};
    result.code = kExitError;
  }
  const std::string text = dump(result.doc);
  if (config.output.empty()) {
    out << text;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
      out << dump(Json{{"error", "cannot write '" + config.output + "'"},
                       {"kind", "io-error"},
                       {"params", raw_params(config)}});
      return kExitError;
    }
    file << text;
  }
  return result.code;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Exact dual certificates for cross-intersecting subspace families"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool with_kl) {
    sub->add_option("--q", cfg.q, "field size");
    sub->add_option("--n", cfg.n, "ambient dimension");
    if (with_kl) {
      sub->add_option("--k", cfg.k, "dimension of the first family");
      sub->add_option("--l", cfg.l, "dimension of the second family");
    }
    sub->add_option("--output,-o", cfg.output, "write JSON here instead of stdout");
    sub->add_option("--guard", cfg.guard, "maximum dense matrix entries for lattice work");
  };

  auto* certify_cmd = app.add_subcommand("certify", "build and check the dual certificate");
  common(certify_cmd, true);
  certify_cmd->add_option("--lambda", cfg.lambda, "\"auto\" or an explicit rational p/r");
  certify_cmd->add_option("--refine-bits", cfg.refine_bits, "bisection steps after the halving search");

  auto* verify_cmd = app.add_subcommand("verify", "re-check a serialized certificate");
  verify_cmd->add_option("input", cfg.input, "certificate JSON file")->required();
  verify_cmd->add_option("--output,-o", cfg.output, "write JSON here instead of stdout");

  auto* ids_cmd = app.add_subcommand("check-identities", "verify incidence identities and harmonic lemmas");
  common(ids_cmd, false);

  auto* spec_cmd = app.add_subcommand("spectrum", "eigenvalue tables and dense cross-check");
  common(spec_cmd, true);

  auto* ext_cmd = app.add_subcommand("extremal", "check the extremal constructions");
  common(ext_cmd, true);

  auto* search_cmd = app.add_subcommand("search", "exhaustive maximization of |F||G|");
  common(search_cmd, true);
  search_cmd->add_option("--budget", cfg.budget, "time budget in seconds");

  auto* sweep_cmd = app.add_subcommand("sweep", "certify over a parameter grid");
  sweep_cmd->add_option("--qs", cfg.qs, "field sizes")->delimiter(',');
  sweep_cmd->add_option("--n-min", cfg.n_min, "smallest n");
  sweep_cmd->add_option("--n-max", cfg.n_max, "largest n");
  sweep_cmd->add_option("--jobs,-j", cfg.jobs, "worker threads");
  sweep_cmd->add_flag("--structure", cfg.structure, "also run structure checks at lambda* and lambda*/2");
  sweep_cmd->add_option("--output,-o", cfg.output, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cout << dump(Json{{"error", e.what()}, {"kind", "usage"}, {"params", raw_params(cfg)}});
    return kExitError;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  return run(cfg, std::cout);
}

}  // namespace qcross
