#pragma once
// Instance files (JSON, exact rationals as "p/q" strings) and CSV reports.
// Serialization is canonical — fixed key order, sorted table keys — so equal
// instances produce byte-identical files.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bfm/harness.hpp"

namespace bfm {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kInstanceFormat = "bfm-instance-v1";

namespace detail {

inline const nlohmann::json& req_field(const nlohmann::json& j, const char* key,
                                       const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw input_error(path + ": missing field '" + key + "'");
  return *it;
}

inline std::string req_string(const nlohmann::json& j, const std::string& path) {
  if (!j.is_string()) throw input_error(path + ": expected a string");
  return j.get<std::string>();
}

inline Q req_rational(const nlohmann::json& j, const std::string& path) {
  try {
    return parse_rational(req_string(j, path));
  } catch (const input_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

inline int req_int(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number_integer()) throw input_error(path + ": expected an integer");
  return j.get<int>();
}

inline std::vector<Q> req_rational_list(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array()) throw input_error(path + ": expected an array");
  std::vector<Q> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(req_rational(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

// subset-value tables are objects keyed by the bitmask rendered in decimal;
// keys must cover 0..2^n-1 exactly
inline std::vector<Q> req_mask_table(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object()) throw input_error(path + ": expected an object keyed by subset bitmask");
  std::size_t size = j.size();
  if (size == 0 || (size & (size - 1)) != 0)
    throw input_error(path + ": key count must be a power of two");
  std::vector<Q> out(size);
  std::vector<bool> seen(size, false);
  for (const auto& [key, val] : j.items()) {
    std::size_t pos = 0;
    unsigned long mask = 0;
    try {
      mask = std::stoul(key, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != key.size() || key.empty())
      throw input_error(path + ": key '" + key + "' is not a decimal bitmask");
    if (mask >= size || seen[mask])
      throw input_error(path + ": keys must cover 0.." + std::to_string(size - 1) +
                        " exactly (problem at '" + key + "')");
    seen[mask] = true;
    out[mask] = req_rational(val, path + "[" + key + "]");
  }
  return out;
}

inline std::vector<GraphEdge> req_edges(const nlohmann::json& j, const std::string& path,
                                        bool weighted) {
  if (!j.is_array()) throw input_error(path + ": expected an array of edges");
  std::vector<GraphEdge> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    std::string ep = path + "[" + std::to_string(i) + "]";
    std::size_t want = weighted ? 3 : 2;
    if (!e.is_array() || e.size() != want)
      throw input_error(ep + ": expected " + (weighted ? "[u, v, \"weight\"]" : "[u, v]"));
    GraphEdge g;
    g.u = req_int(e[0], ep + "[0]");
    g.v = req_int(e[1], ep + "[1]");
    if (weighted) g.w = req_rational(e[2], ep + "[2]");
    out.push_back(std::move(g));
  }
  return out;
}

inline ojson rational_list(const std::vector<Q>& v) {
  ojson a = ojson::array();
  for (const Q& x : v) a.push_back(to_string(x));
  return a;
}

inline ojson mask_table(const std::vector<Q>& t) {
  ojson o = ojson::object();
  for (std::size_t m = 0; m < t.size(); ++m) o[std::to_string(m)] = to_string(t[m]);
  return o;
}

inline ojson edge_list(const std::vector<GraphEdge>& edges, bool weighted) {
  ojson a = ojson::array();
  for (const auto& e : edges) {
    ojson row = ojson::array({e.u, e.v});
    if (weighted) row.push_back(to_string(e.w));
    a.push_back(std::move(row));
  }
  return a;
}

}  // namespace detail

inline ojson valuation_to_json(const ValuationSpec& s) {
  ojson v;
  v["kind"] = kind_name(s.kind);
  switch (s.kind) {
    case VKind::Additive:
      v["weights"] = detail::rational_list(s.weights);
      break;
    case VKind::XosClauses: {
      ojson cl = ojson::array();
      for (const auto& c : s.clauses) cl.push_back(detail::rational_list(c));
      v["clauses"] = std::move(cl);
      break;
    }
    case VKind::Table:
      v["values"] = detail::mask_table(s.table);
      break;
    case VKind::Matching:
      v["vertices"] = s.vertices;
      v["edges"] = detail::edge_list(s.edges, true);
      break;
    case VKind::Clique:
      v["vertices"] = s.vertices;
      v["edges"] = detail::edge_list(s.edges, false);
      v["vertex_values"] = detail::rational_list(s.vertex_values);
      break;
    case VKind::Cut:
      v["vertices"] = s.vertices;
      v["edges"] = detail::edge_list(s.edges, true);
      break;
    case VKind::CostSaving:
      v["costs"] = detail::mask_table(s.table);
      break;
  }
  return v;
}

inline ValuationSpec valuation_from_json(const nlohmann::json& v, const std::string& path) {
  std::string kind = detail::req_string(detail::req_field(v, "kind", path), path + ".kind");
  if (kind == "additive")
    return make_additive(
        detail::req_rational_list(detail::req_field(v, "weights", path), path + ".weights"));
  if (kind == "xos") {
    const auto& cj = detail::req_field(v, "clauses", path);
    if (!cj.is_array()) throw input_error(path + ".clauses: expected an array of clauses");
    std::vector<std::vector<Q>> clauses;
    for (std::size_t i = 0; i < cj.size(); ++i)
      clauses.push_back(detail::req_rational_list(cj[i],
                          path + ".clauses[" + std::to_string(i) + "]"));
    return make_xos(std::move(clauses));
  }
  if (kind == "table")
    return make_table(
        detail::req_mask_table(detail::req_field(v, "values", path), path + ".values"));
  if (kind == "matching")
    return make_matching(
        detail::req_int(detail::req_field(v, "vertices", path), path + ".vertices"),
        detail::req_edges(detail::req_field(v, "edges", path), path + ".edges", true));
  if (kind == "clique")
    return make_clique(
        detail::req_int(detail::req_field(v, "vertices", path), path + ".vertices"),
        detail::req_edges(detail::req_field(v, "edges", path), path + ".edges", false),
        detail::req_rational_list(detail::req_field(v, "vertex_values", path),
                                  path + ".vertex_values"));
  if (kind == "cut")
    return make_cut(
        detail::req_int(detail::req_field(v, "vertices", path), path + ".vertices"),
        detail::req_edges(detail::req_field(v, "edges", path), path + ".edges", true));
  if (kind == "cost_saving")
    return make_cost_saving(
        detail::req_mask_table(detail::req_field(v, "costs", path), path + ".costs"));
  throw input_error(path + ".kind: unknown valuation kind '" + kind + "'");
}

inline ojson instance_to_json(const Instance& inst) {
  ojson j;
  j["format"] = kInstanceFormat;
  if (!inst.id.empty()) j["id"] = inst.id;
  if (inst.seed) j["seed"] = *inst.seed;
  j["n"] = inst.n;
  j["budget"] = to_string(inst.budget);
  j["costs"] = detail::rational_list(inst.costs);
  j["valuation"] = valuation_to_json(inst.spec);
  return j;
}

inline std::string serialize_instance(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

inline Instance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw input_error("instance: expected a JSON object");
  std::string format =
      detail::req_string(detail::req_field(j, "format", "instance"), "format");
  if (format != kInstanceFormat)
    throw input_error("format: expected '" + std::string(kInstanceFormat) + "', got '" +
                      format + "'");
  Instance inst;
  inst.n = detail::req_int(detail::req_field(j, "n", "instance"), "n");
  inst.budget = detail::req_rational(detail::req_field(j, "budget", "instance"), "budget");
  inst.costs = detail::req_rational_list(detail::req_field(j, "costs", "instance"), "costs");
  inst.spec = valuation_from_json(detail::req_field(j, "valuation", "instance"), "valuation");
  if (auto it = j.find("id"); it != j.end()) inst.id = detail::req_string(*it, "id");
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned()) throw input_error("seed: expected a nonnegative integer");
    inst.seed = it->get<std::uint64_t>();
  }
  inst.validate();
  return inst;
}

inline Instance parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("JSON syntax: ") + e.what());
  }
  return instance_from_json(j);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// write-to-temp then rename, so readers never observe a half-written file
inline void write_text_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(tmp + ": cannot open for writing");
    out << content;
    if (!out) throw std::runtime_error(tmp + ": write failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error(path + ": rename failed");
}

inline Instance load_instance(const std::string& path) {
  try {
    return parse_instance(read_text_file(path));
  } catch (const input_error& e) {
    std::string what = e.what();
    if (what.rfind(path + ":", 0) == 0) throw;  // already carries the path
    throw input_error(path + ": " + what);
  }
}

inline void save_instance(const Instance& inst, const std::string& path) {
  write_text_file_atomic(path, serialize_instance(inst));
}

// ---- CSV reports ------------------------------------------------------------
// Exact rationals and decimal approximations ride in adjacent columns; the
// decimal ones are presentation-only.

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline constexpr int kCsvDecimalDigits = 6;

inline std::string report_csv_header() {
  return "instance_id,mechanism,n,opt,opt_dec,expected_value,expected_value_dec,"
         "ratio,ratio_dec,invariant_violations,seed\n";
}

inline std::string report_csv_row(const ExperimentReport& r) {
  std::string ratio = "inf", ratio_dec = "inf";
  if (r.ratio) {
    ratio = to_string(*r.ratio);
    ratio_dec = decimal_string(*r.ratio, kCsvDecimalDigits);
  }
  std::ostringstream row;
  row << csv_field(r.instance_id) << ',' << mech_name(r.mech) << ',' << r.n << ','
      << to_string(r.opt) << ',' << decimal_string(r.opt, kCsvDecimalDigits) << ','
      << to_string(r.expected) << ',' << decimal_string(r.expected, kCsvDecimalDigits) << ','
      << ratio << ',' << ratio_dec << ',' << r.invariant_violations << ',' << r.seed << '\n';
  return row.str();
}

// rows sorted by (instance_id, mechanism) so merged reports are deterministic
inline std::string report_csv(std::vector<ExperimentReport> rows) {
  std::sort(rows.begin(), rows.end(), [](const ExperimentReport& a, const ExperimentReport& b) {
    if (a.instance_id != b.instance_id) return a.instance_id < b.instance_id;
    return std::string(mech_name(a.mech)) < mech_name(b.mech);
  });
  std::string out = report_csv_header();
  for (const auto& r : rows) out += report_csv_row(r);
  return out;
}

inline void write_report_csv(const std::vector<ExperimentReport>& rows, const std::string& path) {
  write_text_file_atomic(path, report_csv(rows));
}

}  // namespace bfm
