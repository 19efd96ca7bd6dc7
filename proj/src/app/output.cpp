#include "ncartan/app/output.hpp"

#include "ncartan/errors.hpp"

namespace ncartan::app {

using nlohmann::json;

namespace {

BigInteger big_from(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) throw InputError(std::string("field '") + key + "' must be a string");
  BigInteger x;
  if (x.set_str(j.at(key).get<std::string>(), 10) != 0) throw InputError(std::string("field '") + key + "' is not an integer");
  return x;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

json to_json(const OutputRecord& r) {
  const ClassGroupResult& c = r.result;
  json factors = json::array();
  for (const auto& e : c.factorization.entries) {
    factors.push_back({{"prime", e.prime.get_str()}, {"exponent", e.exponent}, {"certainty", to_string(e.certainty)}});
  }
  json out = {
      {"p", c.p},
      {"k", c.k},
      {"epsilon", c.epsilon},
      {"w", c.w},
      {"order", c.order.get_str()},
      {"factorization", factors},
      {"factored", c.factorization.to_string()},
      {"cusps", c.cusps},
      {"timings_ms",
       {{"stickelberger", c.timings.stickelberger_ms},
        {"determinant", c.timings.determinant_ms},
        {"structure", c.timings.structure_ms},
        {"factor", c.timings.factor_ms}}},
      {"version", r.version},
      {"elapsed_ms", r.elapsed_ms},
  };
  out["genus"] = c.genus ? json(*c.genus) : json(nullptr);
  if (c.invariant_factors) {
    json inv = json::array();
    for (const auto& f : *c.invariant_factors) inv.push_back(f.get_str());
    out["invariant_factors"] = inv;
  } else {
    out["invariant_factors"] = nullptr;
  }
  return out;
}

OutputRecord record_from_json(const json& j) {
  if (!j.is_object()) throw InputError("record must be a JSON object");
  OutputRecord r;
  ClassGroupResult& c = r.result;
  c.p = field<std::int64_t>(j, "p");
  c.k = field<int>(j, "k");
  c.epsilon = field<std::int64_t>(j, "epsilon");
  c.w = field<std::int64_t>(j, "w");
  c.order = big_from(j, "order");
  c.cusps = field<std::int64_t>(j, "cusps");
  for (const auto& e : field<json>(j, "factorization")) {
    PrimePower pp;
    pp.prime = big_from(e, "prime");
    pp.exponent = field<unsigned>(e, "exponent");
    const auto cert = certainty_from_string(field<std::string>(e, "certainty"));
    if (!cert) throw InputError("unknown certainty");
    pp.certainty = *cert;
    c.factorization.entries.push_back(pp);
  }
  const json& t = field<json>(j, "timings_ms");
  c.timings.stickelberger_ms = field<double>(t, "stickelberger");
  c.timings.determinant_ms = field<double>(t, "determinant");
  c.timings.structure_ms = field<double>(t, "structure");
  c.timings.factor_ms = field<double>(t, "factor");
  if (j.contains("genus") && !j.at("genus").is_null()) c.genus = field<std::int64_t>(j, "genus");
  if (j.contains("invariant_factors") && !j.at("invariant_factors").is_null()) {
    std::vector<BigInteger> inv;
    for (const auto& f : j.at("invariant_factors")) {
      if (!f.is_string()) throw InputError("invariant factors must be strings");
      inv.emplace_back(f.get<std::string>());
    }
    c.invariant_factors = std::move(inv);
  }
  r.version = field<std::string>(j, "version");
  r.elapsed_ms = field<double>(j, "elapsed_ms");
  return r;
}

bool operator==(const OutputRecord& a, const OutputRecord& b) {
  const ClassGroupResult &x = a.result, &y = b.result;
  return x.p == y.p && x.k == y.k && x.epsilon == y.epsilon && x.w == y.w && x.order == y.order &&
         x.factorization == y.factorization && x.invariant_factors == y.invariant_factors && x.genus == y.genus &&
         x.cusps == y.cusps && x.timings.stickelberger_ms == y.timings.stickelberger_ms &&
         x.timings.determinant_ms == y.timings.determinant_ms && x.timings.structure_ms == y.timings.structure_ms &&
         x.timings.factor_ms == y.timings.factor_ms && a.version == b.version && a.elapsed_ms == b.elapsed_ms;
}

std::string format_structure(const std::vector<BigInteger>& factors) {
  if (factors.empty()) return "trivial";
  std::string s;
  for (const auto& f : factors) {
    if (!s.empty()) s += " x ";
    s += "Z/" + f.get_str();
  }
  return s;
}

}  // namespace ncartan::app
