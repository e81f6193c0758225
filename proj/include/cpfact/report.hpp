// Report documents for the command line driver: JSON objects with a
// versioned schema tag, flattened to CSV rows or "key = value" text.

#ifndef CPFACT_REPORT_HPP_
#define CPFACT_REPORT_HPP_

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "carter_factor.hpp"
#include "factorize.hpp"
#include "structure.hpp"

namespace cpfact {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "cpfact-report/1";

enum class Format { Json, Csv, Text };

inline Format parse_format(const std::string& s) {
  if (s == "json")
    return Format::Json;
  if (s == "csv")
    return Format::Csv;
  if (s == "text")
    return Format::Text;
  throw UnsupportedParameter("unknown format '" + s + "'");
}

struct Report {
  Report() = default;
  Report(std::string cmd, std::string spec) : command(std::move(cmd)), group_spec(std::move(spec)) {}

  std::string command;
  std::string group_spec;
  Json body = Json::object();
  std::vector<std::string> trace; // text rendering of a recursion, one line per node
  bool ok = true;                 // false when some verification failed
};

inline Json encodings(const GroupTable& g, const std::vector<Index>& xs) {
  Json out = Json::array();
  for (Index x : xs)
    out.push_back(g.encode(x));
  return out;
}

inline Json optional_json(const std::optional<unsigned>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline Json subgroup_json(const SubgroupSet& s, bool with_members = true) {
  Json j;
  j["order"] = s.order();
  j["generators"] = encodings(s.group(), s.generators());
  if (with_members)
    j["members"] = s.members(); // sorted element indices
  return j;
}

inline Json witness_json(const FactorizationWitness& w, const std::string& spec, bool verified,
                         double ms) {
  Json j;
  j["group_spec"] = spec;
  j["base_generators"] = encodings(w.base.group(), w.base.generators());
  j["base_order"] = w.base.order();
  j["conjugators"] = encodings(*w.group, w.conjugators);
  j["k"] = w.length();
  j["provenance"] = w.provenance;
  j["verified"] = verified;
  j["timing_ms"] = ms;
  return j;
}

// Verifies, then serializes.
inline Json checked_witness_json(const FactorizationWitness& w, const std::string& spec,
                                 bool* ok = nullptr) {
  auto c = verify_witness(w);
  if (ok)
    *ok = *ok && c.ok;
  return witness_json(w, spec, c.ok, c.ms);
}

inline Json socle_json(const SocleSeriesReport& s) {
  Json j;
  j["t"] = s.t;
  j["m"] = s.m;
  j["nab_order"] = s.nab_order;
  j["solvable_part"] = s.solvable_part;
  Json chain = Json::array();
  for (std::size_t i = 0; i < s.chain.size(); ++i)
    chain.push_back({{"label", s.labels[i]}, {"order", s.chain[i].order()}});
  j["chain"] = chain;
  Json layers = Json::array();
  for (const auto& l : s.layers)
    layers.push_back({{"order", l.order}, {"n", l.n}, {"factor_orders", l.factor_orders}});
  j["layers"] = layers;
  return j;
}

inline Json m_bound_json(const MBoundReport& b) {
  return {{"m", b.m}, {"bound", b.bound}, {"m_pass", b.m_pass}, {"layers_pass", b.layers_pass},
          {"pass", b.pass()}};
}

inline Json bound_json(const BoundCheck& c) {
  return {{"name", c.name}, {"lhs", optional_json(c.lhs)}, {"rhs", optional_json(c.rhs)},
          {"pass", c.pass}, {"detail", c.detail}};
}

inline Json inequality_json(const InequalityReport& r) {
  return {{"name", r.name},         {"lhs", r.lhs},   {"rhs", r.rhs}, {"lhs_exact", r.lhs_exact},
          {"rhs_exact", r.rhs_exact}, {"pass", r.pass}, {"terms", r.terms}};
}

inline Json gamma_min_json(const GammaMin& m, const std::string& spec) {
  Json j;
  j["value"] = optional_json(m.value);
  j["exact"] = m.exact;
  j["candidates"] = m.candidates;
  if (m.prime)
    j["prime"] = m.prime;
  j["solvable"] = m.solvable;
  j["self_normalizing"] = m.self_normalizing;
  if (m.base)
    j["base"] = subgroup_json(*m.base, false);
  if (m.witness)
    j["witness"] = checked_witness_json(*m.witness, spec);
  return j;
}

namespace impl {

inline std::string scalar_text(const Json& v) {
  if (v.is_string())
    return v.get<std::string>();
  if (v.is_null())
    return "null";
  return v.dump();
}

inline bool all_scalars(const Json& a) {
  for (const auto& x : a)
    if (x.is_structured())
      return false;
  return true;
}

// Dotted paths; arrays of scalars collapse to one space-separated value.
inline void flatten(const Json& v, const std::string& prefix,
                    std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (v.is_array() && all_scalars(v)) {
    std::string s;
    for (const auto& x : v) {
      if (!s.empty())
        s += ' ';
      s += scalar_text(x);
    }
    out.emplace_back(prefix, s);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i)
      flatten(v[i], prefix + "." + std::to_string(i), out);
  } else {
    out.emplace_back(prefix, scalar_text(v));
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"')
      q += '"';
    q += c;
  }
  return q + '"';
}

} // namespace impl

inline Json report_json(const Report& r) {
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = r.command;
  j["group_spec"] = r.group_spec;
  for (auto it = r.body.begin(); it != r.body.end(); ++it)
    j[it.key()] = it.value();
  j["ok"] = r.ok;
  return j;
}

inline std::vector<std::pair<std::string, std::string>> flatten_report(const Report& r) {
  std::vector<std::pair<std::string, std::string>> rows;
  impl::flatten(r.body, "", rows);
  rows.emplace_back("ok", r.ok ? "true" : "false");
  return rows;
}

inline std::string render(const Report& r, Format f) {
  std::ostringstream os;
  switch (f) {
    case Format::Json:
      os << report_json(r).dump(2) << '\n';
      break;
    case Format::Csv:
      os << "command,group_spec,key,value\n";
      for (const auto& [k, v] : flatten_report(r))
        os << impl::csv_field(r.command) << ',' << impl::csv_field(r.group_spec) << ','
           << impl::csv_field(k) << ',' << impl::csv_field(v) << '\n';
      break;
    case Format::Text:
      os << r.command;
      if (!r.group_spec.empty())
        os << ' ' << r.group_spec;
      os << '\n';
      for (const auto& [k, v] : flatten_report(r))
        if (r.trace.empty() || k.rfind("trace.", 0) != 0)
          os << "  " << k << " = " << v << '\n';
      if (!r.trace.empty()) {
        os << "trace:\n";
        for (const auto& line : r.trace)
          os << "  " << line << '\n';
      }
      break;
  }
  return os.str();
}

inline std::vector<std::string> carter_trace_lines(const std::vector<CarterTraceNode>& trace) {
  std::vector<std::string> out;
  for (const auto& n : trace)
    out.push_back(std::string(2 * n.depth, ' ') + n.step + " |G|=" + std::to_string(n.group_order) +
                  " |C|=" + std::to_string(n.base_order) + " k=" + std::to_string(n.length));
  return out;
}

inline Json carter_trace_json(const std::vector<CarterTraceNode>& trace) {
  Json out = Json::array();
  for (const auto& n : trace)
    out.push_back({{"depth", n.depth},
                   {"step", n.step},
                   {"group_order", n.group_order},
                   {"base_order", n.base_order},
                   {"length", n.length}});
  return out;
}

} // namespace cpfact

#endif
