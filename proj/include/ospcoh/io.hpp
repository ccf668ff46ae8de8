#pragma once

// JSON and CSV forms of vectors, cochains, audits and cohomology reports.

#include "ospcoh/audit.hpp"
#include "ospcoh/cochain.hpp"
#include "ospcoh/cohomology.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace ospcoh {

using json = nlohmann::ordered_json;

inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw std::invalid_argument("expected a rational as \"p/q\" text");
  return Rational::parse(j.get<std::string>());
}

/// [["a", m, k, "num/den"], ...]
inline json to_json(const ModuleVector& v) {
  json out = json::array();
  for (const auto& [bv, coeff] : v) out.push_back(json::array({name(bv.family), bv.m, bv.k, coeff.str()}));
  return out;
}

inline ModuleVector module_vector_from_json(const json& j) {
  ModuleVector out;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 4) throw std::invalid_argument("module vector entry must be [family, m, k, coeff]");
    add_term(out, BasisVector{parse_family(t[0].get<std::string>()), t[1].get<int>(), t[2].get<int>()},
             rational_from_json(t[3]));
  }
  return out;
}

inline json to_json(const TruncatedDlm& mod) {
  return {{"lambda", to_json(mod.lambda)}, {"mu", to_json(mod.mu)}, {"K", mod.K}};
}

inline json to_json(const Cochain& f) {
  json values = json::object();
  for (const auto& [u, v] : f.values) values[u.str()] = to_json(v);
  json out = to_json(f.module);
  out["degree"] = f.degree;
  out["parity"] = f.parity;
  out["values"] = std::move(values);
  return out;
}

inline Cochain cochain_from_json(const json& j) {
  TruncatedDlm mod{rational_from_json(j.at("lambda")), rational_from_json(j.at("mu")), j.at("K").get<int>()};
  Cochain f(j.at("degree").get<int>(), j.at("parity").get<int>(), mod);
  for (const auto& [key, val] : j.at("values").items()) f.set(SuperMonomial::parse(key), module_vector_from_json(val));
  return f;
}

inline json to_json(const RealizationConstants& c) {
  return {{"H", to_json(c.cH)}, {"X", to_json(c.cX)}, {"Y", to_json(c.cY)}, {"A", to_json(c.cA)}, {"B", to_json(c.cB)}};
}

inline json to_json(const AuditResult& a, const std::vector<ActionRowMismatch>& rows = {}) {
  json out;
  out["variant"] = a.table.label();
  json changes = json::array();
  for (const auto& c : a.changes) changes.push_back({{"pair", c.pair}, {"from", c.from}, {"to", c.to}});
  out["changes"] = std::move(changes);
  json fails = json::array();
  for (const auto& f : a.jacobi_failures_input)
    fails.push_back({{"triple", std::string(name(f.u)) + name(f.v) + name(f.w)}, {"defect", to_string(f.defect)}});
  out["jacobi_failures_printed"] = std::move(fails);
  json variants = json::array();
  for (const auto& v : a.jacobi_consistent_variants) {
    json vj = json::array();
    for (const auto& c : v) vj.push_back({{"pair", c.pair}, {"from", c.from}, {"to", c.to}});
    variants.push_back(std::move(vj));
  }
  out["jacobi_consistent_variants"] = std::move(variants);
  out["module_compatible"] = a.module_compatible;
  json r = json::array();
  for (const auto& m : rows) r.push_back({{"row", std::string(name(m.gen)) + "·" + name(m.family)}, {"sample", m.sample}});
  out["action_row_changes"] = std::move(r);
  return out;
}

inline json to_json(const DimTable& t) {
  json out = json::object();
  for (std::size_t n = 0; n < t.size(); ++n) out[std::to_string(n)] = t[n];
  return out;
}

inline json to_json(const CohomologyReport& r) {
  json computed = json::object();
  for (const auto& [n, by_w] : r.computed) {
    json row = json::object();
    for (const auto& [w, d] : by_w) row[w.str()] = {{"total", d.total}, {"even", d.even}, {"odd", d.odd}};
    computed[std::to_string(n)] = std::move(row);
  }
  return {{"lambda", to_json(r.lambda)}, {"mu", to_json(r.mu)},           {"K", r.K},
          {"computed", std::move(computed)}, {"theorem", to_json(r.theorem)}, {"proposition", to_json(r.proposition)},
          {"weight_vanishing", r.weight_vanishing}, {"match", r.match}};
}

inline CohomologyReport report_from_json(const json& j) {
  CohomologyReport r;
  r.lambda = rational_from_json(j.at("lambda"));
  r.mu = rational_from_json(j.at("mu"));
  r.K = j.at("K").get<int>();
  for (const auto& [n, row] : j.at("computed").items())
    for (const auto& [w, d] : row.items())
      r.computed[std::stoi(n)][Rational::parse(w)] = {d.at("total").get<std::size_t>(), d.at("even").get<std::size_t>(),
                                                      d.at("odd").get<std::size_t>()};
  r.nmax = r.computed.empty() ? 0 : r.computed.rbegin()->first;
  auto table = [](const json& t) {
    DimTable out(t.size(), 0);
    for (const auto& [n, v] : t.items()) out.at(std::stoul(n)) = v.get<std::size_t>();
    return out;
  };
  r.theorem = table(j.at("theorem"));
  r.proposition = table(j.at("proposition"));
  r.weight_vanishing = j.value("weight_vanishing", true);
  r.match = j.at("match").get<bool>();
  return r;
}

inline std::string csv_header() { return "lambda,mu,K,n,w,total,even,odd,theorem,proposition,match\n"; }

/// One row per (λ, μ, n, w).
inline std::string to_csv(const CohomologyReport& r) {
  std::ostringstream os;
  for (const auto& [n, by_w] : r.computed)
    for (const auto& [w, d] : by_w) {
      const bool w0 = w.is_zero();
      os << r.lambda << ',' << r.mu << ',' << r.K << ',' << n << ',' << w << ',' << d.total << ',' << d.even << ','
         << d.odd << ',' << (w0 ? std::to_string(r.theorem.at(n)) : "") << ','
         << (w0 ? std::to_string(r.proposition.at(n)) : "") << ',' << (r.match ? "true" : "false") << '\n';
    }
  return os.str();
}

}  // namespace ospcoh
