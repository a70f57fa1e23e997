#include "qcross/serialize.hpp"

#include "qcross/errors.hpp"

namespace qcross {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidParameter(std::string("missing JSON field '") + key + "'");
  }
  return j.at(key);
}

std::string str(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw InvalidParameter(std::string("JSON field '") + key + "' must be a string");
  return v.get<std::string>();
}

long integer(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw InvalidParameter(std::string("JSON field '") + key + "' must be an integer");
  return v.get<long>();
}

bool boolean(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_boolean()) throw InvalidParameter(std::string("JSON field '") + key + "' must be a boolean");
  return v.get<bool>();
}

Verdict verdict_from(const std::string& s) {
  if (s == "feasible") return Verdict::feasible;
  if (s == "infeasible") return Verdict::infeasible;
  throw InvalidParameter("unknown verdict '" + s + "'");
}

}  // namespace

Json to_json(const QuadraticNumber& x) {
  return Json{{"d", x.radicand().get_str()},
              {"a", to_string(x.rational_part())},
              {"b", to_string(x.radical_part())}};
}

QuadraticNumber quadratic_from_json(const Json& j) {
  return QuadraticNumber(parse_integer(str(j, "d")), parse_rational(str(j, "a")), parse_rational(str(j, "b")));
}

Json to_json(const Parameters& p) { return Json{{"q", p.q}, {"n", p.n}, {"k", p.k}, {"l", p.l}}; }

Json to_json(const Theta& t) {
  return Json{{"i", t.i},
              {"k", t.k},
              {"l", t.l},
              {"rho", to_string(t.rho)},
              {"num_rad", t.num_rad.get_str()},
              {"den_rad", t.den_rad.get_str()},
              {"squared", to_string(t.squared())}};
}

Json to_json(const Report& r) {
  Json failed = Json::array();
  for (const auto& c : r.checks()) {
    if (!c.passed) failed.push_back(Json{{"name", c.name}, {"detail", c.detail}});
  }
  return Json{{"checks", r.size()}, {"failures", r.failures()}, {"ok", r.ok()}, {"failed", failed}};
}

Json to_json(const Family& f) {
  return Json{{"q", f.q}, {"n", f.n}, {"k", f.k}, {"size", f.size()}, {"members", f.members}};
}

Family family_from_json(const Json& j) {
  Family f;
  f.q = integer(j, "q");
  f.n = integer(j, "n");
  f.k = integer(j, "k");
  const Json& m = field(j, "members");
  if (!m.is_array()) throw InvalidParameter("JSON field 'members' must be an array");
  for (const auto& v : m) {
    if (!v.is_number_unsigned()) throw InvalidParameter("family members must be nonnegative integers");
    f.members.push_back(v.get<std::size_t>());
  }
  return f;
}

Json to_json(const DualCertificate& cert) {
  const auto& co = cert.coefficients;
  Json blocks = Json::array();
  for (const auto& b : cert.blocks) {
    blocks.push_back(Json{{"i", b.i},
                          {"p", to_json(b.p)},
                          {"r", to_json(b.r)},
                          {"s", to_json(b.s)},
                          {"det", to_json(b.det)},
                          {"psd", b.psd}});
  }
  Json scalars = Json::array();
  for (const auto& s : cert.scalars) {
    scalars.push_back(Json{{"i", s.i}, {"value", to_json(s.value)}, {"nonneg", s.nonneg}});
  }
  Json j{{"params", to_json(cert.params)},
         {"swapped", cert.params.swapped},
         {"q_prime_power", cert.q_prime_power},
         {"bound", cert.bound.get_str()},
         {"D", cert.D.get_str()},
         {"lambda", to_string(co.lambda)},
         {"alpha", to_json(co.alpha)},
         {"beta", to_json(co.beta)},
         {"a_lambda", to_json(co.a_lambda)},
         {"b_lambda", to_json(co.b_lambda)},
         {"blocks", blocks},
         {"scalars", scalars},
         {"verdict", to_string(cert.verdict)}};
  if (cert.lambda_bracket) {
    j["lambda_bracket"] = Json{{"feasible", to_string(cert.lambda_bracket->feasible)},
                               {"infeasible", to_string(cert.lambda_bracket->infeasible)}};
  }
  return j;
}

DualCertificate certificate_from_json(const Json& j) {
  DualCertificate cert;
  const Json& p = field(j, "params");
  cert.params = Parameters{integer(p, "q"), integer(p, "n"), integer(p, "k"), integer(p, "l"), boolean(j, "swapped")};
  cert.q_prime_power = boolean(j, "q_prime_power");
  cert.bound = parse_integer(str(j, "bound"));
  cert.D = parse_integer(str(j, "D"));
  auto& co = cert.coefficients;
  co.lambda = parse_rational(str(j, "lambda"));
  co.alpha = quadratic_from_json(field(j, "alpha"));
  co.beta = quadratic_from_json(field(j, "beta"));
  co.a_lambda = quadratic_from_json(field(j, "a_lambda"));
  co.b_lambda = quadratic_from_json(field(j, "b_lambda"));
  for (const auto& b : field(j, "blocks")) {
    ReducedBlock rb;
    rb.i = integer(b, "i");
    rb.p = quadratic_from_json(field(b, "p"));
    rb.r = quadratic_from_json(field(b, "r"));
    rb.s = quadratic_from_json(field(b, "s"));
    rb.det = quadratic_from_json(field(b, "det"));
    rb.psd = boolean(b, "psd");
    cert.blocks.push_back(rb);
  }
  for (const auto& s : field(j, "scalars")) {
    cert.scalars.push_back(ScalarCondition{integer(s, "i"), quadratic_from_json(field(s, "value")), boolean(s, "nonneg")});
  }
  cert.verdict = verdict_from(str(j, "verdict"));
  if (j.contains("lambda_bracket")) {
    const Json& br = j.at("lambda_bracket");
    cert.lambda_bracket = LambdaBracket{parse_rational(str(br, "feasible")), parse_rational(str(br, "infeasible"))};
  }
  return cert;
}

Json to_json(const SearchResult& r) {
  return Json{{"best_product", std::to_string(r.best_product)},
              {"exact", r.exact},
              {"nodes_explored", std::to_string(r.nodes_explored)},
              {"orbit_count", r.orbit_count},
              {"F", to_json(r.f)},
              {"G", to_json(r.g)}};
}

Json to_json(const SpectrumCrosscheck& c) {
  return Json{{"report", to_json(c.report)},
              {"float_eigenvalues", c.float_eigenvalues},
              {"float_expected", c.float_expected},
              {"float_max_relative_error", c.float_max_relative_error}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qcross
