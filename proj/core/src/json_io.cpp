#include "bellgap/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bellgap/errors.hpp"

namespace bellgap::io {
namespace {

using nlohmann::json;

// 17 significant digits: enough for strtod to recover the exact double, so
// save -> load -> save is byte-identical.
std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return '"' + out + '"';
}

void append_int_array(std::string& out, std::span<const int> values,
                      int offset) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(values[i] + offset);
  }
  out += ']';
}

const json& require(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ValidationError(std::string("GameFile is missing \"") + key + '"');
  }
  return *it;
}

std::vector<int> read_alphabets(const json& j, const char* key, int parties) {
  const json& arr = require(j, key);
  if (!arr.is_array() || static_cast<int>(arr.size()) != parties) {
    throw ValidationError(std::string("\"") + key +
                          "\" must list one alphabet size per party");
  }
  std::vector<int> out;
  out.reserve(parties);
  for (const json& v : arr) {
    if (!v.is_number_integer() || v.get<int>() < 1) {
      throw ValidationError(std::string("\"") + key +
                            "\" entries must be positive integers");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

// 1-based on-disk index tuple -> flat 0-based index.
Index read_tuple(const json& entry, const char* key,
                 std::span<const int> alphabet) {
  const json& arr = require(entry, key);
  if (!arr.is_array() || arr.size() != alphabet.size()) {
    throw ValidationError(std::string("coefficient \"") + key +
                          "\" must list one index per party");
  }
  std::vector<int> tuple(alphabet.size());
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (!arr[i].is_number_integer()) {
      throw ValidationError("coefficient indices must be integers");
    }
    const int v = arr[i].get<int>();
    if (v < 1 || v > alphabet[i]) {
      std::ostringstream msg;
      msg << "coefficient index " << v << " out of range 1.." << alphabet[i]
          << " for party " << i + 1;
      throw ValidationError(msg.str());
    }
    tuple[i] = v - 1;
  }
  return flat_index(tuple, alphabet);
}

json certificate_json(const solvers::Certificate& c) {
  json out = json::object();
  if (c.behaviour) {
    const Behaviour& p = *c.behaviour;
    json b;
    b["inputs"] = std::vector<int>(p.scenario().inputs().begin(),
                                   p.scenario().inputs().end());
    b["outputs"] = std::vector<int>(p.scenario().outputs().begin(),
                                    p.scenario().outputs().end());
    b["table"] = std::vector<double>(p.table().begin(), p.table().end());
    out["behaviour"] = std::move(b);
  }
  if (c.strategy) {
    json rows = json::array();
    for (const auto& per_party : c.strategy->assignment) {
      json row = json::array();
      for (int a : per_party) row.push_back(a + 1);
      rows.push_back(std::move(row));
    }
    out["strategy"] = std::move(rows);
  }
  if (c.partition) {
    out["partition"] = {{"merged",
                         {c.partition->merged[0] + 1, c.partition->merged[1] + 1}},
                        {"lone", c.partition->lone + 1}};
  }
  if (c.correlation) {
    out["correlation"] = std::vector<double>(c.correlation->table().begin(),
                                             c.correlation->table().end());
  }
  if (c.observables) {
    const auto& obs = *c.observables;
    json state = json::array();
    for (Eigen::Index i = 0; i < obs.state.size(); ++i) {
      state.push_back({obs.state[i].real(), obs.state[i].imag()});
    }
    json parties = json::array();
    for (const auto& family : obs.observables) {
      json per_input = json::array();
      for (const auto& matrix : family) {
        json rows = json::array();
        for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
          json row = json::array();
          for (Eigen::Index cc = 0; cc < matrix.cols(); ++cc) {
            row.push_back({matrix(r, cc).real(), matrix(r, cc).imag()});
          }
          rows.push_back(std::move(row));
        }
        per_input.push_back(std::move(rows));
      }
      parties.push_back(std::move(per_input));
    }
    out["observables"] = {{"dims", obs.dims},
                          {"state", std::move(state)},
                          {"operators", std::move(parties)}};
  }
  return out;
}

json value_report_json(const solvers::ValueReport& report, double seconds) {
  json out;
  out["functional"] = report.functional_id;
  out["class"] = report.class_label;
  out["value"] = report.value;
  out["method"] = report.method;
  out["is_bound"] = report.is_bound;
  if (report.is_bound) out["bound_kind"] = report.bound_kind;
  out["seconds"] = seconds;
  out["certificate"] = certificate_json(report.certificate);
  return out;
}

}  // namespace

std::string game_to_json(const BellFunctional& g) {
  const Scenario& sc = g.scenario();
  const bool correlation = g.kind() == FunctionalKind::kCorrelation;
  const Index ot = correlation ? 1 : sc.output_tuples();

  std::string out = "{\n  \"parties\": " + std::to_string(sc.parties());
  out += ",\n  \"inputs\": ";
  append_int_array(out, sc.inputs(), 0);
  out += ",\n  \"outputs\": ";
  append_int_array(out, sc.outputs(), 0);
  out += ",\n  \"kind\": " + escape(to_string(g.kind()));
  out += ",\n  \"coeffs\": [";

  std::vector<int> x(sc.parties()), a(sc.parties());
  bool first = true;
  for (Index xf = 0; xf < sc.input_tuples(); ++xf) {
    for (Index af = 0; af < ot; ++af) {
      const double v = g.coeffs()[xf * ot + af];
      if (v == 0.0) continue;  // omitted coefficients are zero
      out += first ? "\n    {\"x\": " : ",\n    {\"x\": ";
      first = false;
      unflatten(xf, sc.inputs(), x);
      append_int_array(out, x, 1);
      if (!correlation) {
        unflatten(af, sc.outputs(), a);
        out += ", \"a\": ";
        append_int_array(out, a, 1);
      }
      out += ", \"v\": " + format_double(v) + '}';
    }
  }
  out += first ? "]" : "\n  ]";

  out += ",\n  \"meta\": {";
  first = true;
  for (const auto& [key, value] : g.meta()) {
    if (!first) out += ", ";
    first = false;
    out += escape(key) + ": " + escape(value);
  }
  out += "}\n}\n";
  return out;
}

BellFunctional game_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("GameFile parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("GameFile must be a JSON object");

  const json& parties_j = require(doc, "parties");
  if (!parties_j.is_number_integer() || parties_j.get<int>() < 1) {
    throw ValidationError("\"parties\" must be a positive integer");
  }
  const int parties = parties_j.get<int>();
  std::vector<int> inputs = read_alphabets(doc, "inputs", parties);
  std::vector<int> outputs = read_alphabets(doc, "outputs", parties);
  const Scenario sc(inputs, outputs);

  const json& kind_j = require(doc, "kind");
  if (!kind_j.is_string()) throw ValidationError("\"kind\" must be a string");
  const FunctionalKind kind =
      functional_kind_from_string(kind_j.get<std::string>());
  const bool correlation = kind == FunctionalKind::kCorrelation;

  const Index ot = correlation ? 1 : sc.output_tuples();
  std::vector<double> coeffs(sc.input_tuples() * ot, 0.0);
  std::vector<char> seen(coeffs.size(), 0);

  const json& entries = require(doc, "coeffs");
  if (!entries.is_array()) throw ValidationError("\"coeffs\" must be an array");
  for (const json& entry : entries) {
    if (!entry.is_object()) {
      throw ValidationError("coefficient entries must be objects");
    }
    const Index xf = read_tuple(entry, "x", sc.inputs());
    Index af = 0;
    if (!correlation) {
      af = read_tuple(entry, "a", sc.outputs());
    } else if (entry.contains("a")) {
      throw ValidationError("correlation coefficients must not carry \"a\"");
    }
    const json& v = require(entry, "v");
    if (!v.is_number()) throw ValidationError("coefficient \"v\" must be a number");
    const Index flat = xf * ot + af;
    if (seen[flat]) throw ValidationError("duplicate coefficient entry");
    seen[flat] = 1;
    coeffs[flat] = v.get<double>();
  }

  std::map<std::string, std::string> meta;
  if (doc.contains("meta")) {
    const json& meta_j = doc["meta"];
    if (!meta_j.is_object()) throw ValidationError("\"meta\" must be an object");
    for (const auto& [key, value] : meta_j.items()) {
      if (!value.is_string()) {
        throw ValidationError("\"meta\" values must be strings");
      }
      meta.emplace(key, value.get<std::string>());
    }
  }
  return BellFunctional(sc, kind, std::move(coeffs), std::move(meta));
}

void save_game(const BellFunctional& g, const std::string& path) {
  write_text_file(path, game_to_json(g));
}

BellFunctional load_game(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open game file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return game_from_json(buffer.str());
}

std::string value_report_to_json(const solvers::ValueReport& report,
                                 double seconds) {
  return value_report_json(report, seconds).dump(2) + "\n";
}

std::string certificate_to_json(const solvers::Certificate& certificate) {
  return certificate_json(certificate).dump(2) + "\n";
}

std::string lv_report_to_json(const solvers::LVReport& report, double seconds) {
  json out;
  out["functional"] = report.functional_id;
  out["ratio"] = report.ratio;
  out["numerator"] = value_report_json(report.numerator, 0.0);
  out["denominator"] = value_report_json(report.denominator, 0.0);
  out["seconds"] = seconds;
  return out.dump(2) + "\n";
}

std::string checks_to_json(const std::string& suite,
                           const std::vector<verify::CheckResult>& checks) {
  json arr = json::array();
  double total = 0.0;
  for (const verify::CheckResult& c : checks) {
    arr.push_back({{"name", c.name},
                   {"lhs", c.lhs},
                   {"cmp", c.cmp},
                   {"rhs", c.rhs},
                   {"tol", c.tol},
                   {"pass", c.pass},
                   {"seconds", c.seconds}});
    total += c.seconds;
  }
  json out;
  out["suite"] = suite;
  out["checks"] = std::move(arr);
  out["all_pass"] = verify::all_pass(checks);
  out["seconds"] = total;
  return out.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << text;
  if (!out.flush()) throw ValidationError("failed writing: " + path);
}

}  // namespace bellgap::io
