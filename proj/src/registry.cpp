#include "qseries/registry.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qseries {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* name, const std::string& where) {
  const auto it = obj.find(name);
  if (it == obj.end()) throw RegistryError(where + ": missing field '" + name + "'");
  return *it;
}

std::string string_field(const json& obj, const char* name, const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_string()) throw RegistryError(where + ": field '" + name + "' must be a string");
  return v.get<std::string>();
}

SignedMonomial parse_binding(const json& b, const std::string& where, std::string& name) {
  if (!b.is_object()) throw RegistryError(where + ": parameter binding must be an object");
  name = string_field(b, "name", where);
  const json& sign = field(b, "sign", where);
  const json& num = field(b, "exp_num", where);
  const json& den = field(b, "exp_den", where);
  if (!sign.is_number_integer() || (sign.get<int>() != 1 && sign.get<int>() != -1)) {
    throw RegistryError(where + ": parameter '" + name + "' needs sign 1 or -1");
  }
  if (!num.is_number_integer() || !den.is_number_integer() || den.get<std::int64_t>() <= 0) {
    throw RegistryError(where + ": parameter '" + name + "' needs integer exp_num and positive exp_den");
  }
  return SignedMonomial::q_pow(ratio(num.get<std::int64_t>(), den.get<std::int64_t>()), sign.get<int>());
}

dsl::Bindings parse_instance(const json& list, const std::string& where) {
  dsl::Bindings out;
  for (const json& b : list) {
    std::string name;
    SignedMonomial m = parse_binding(b, where, name);
    if (!out.emplace(name, m).second) throw RegistryError(where + ": parameter '" + name + "' bound twice");
  }
  return out;
}

dsl::ExprPtr parse_side(const json& obj, const char* name, const std::string& where) {
  const std::string text = string_field(obj, name, where);
  try {
    return dsl::parse(text);
  } catch (const dsl::ParseError& e) {
    throw RegistryError(where + ": " + name + ": " + e.what());
  }
}

IdentityRecord parse_record(const json& obj, std::size_t index) {
  std::string where = "record " + std::to_string(index);
  if (!obj.is_object()) throw RegistryError(where + ": not an object");
  IdentityRecord rec;
  rec.id = string_field(obj, "id", where);
  where = rec.id;
  rec.ref = string_field(obj, "ref", where);
  rec.quote = string_field(obj, "quote", where);
  rec.lhs_text = string_field(obj, "lhs", where);
  rec.rhs_text = string_field(obj, "rhs", where);
  rec.lhs = parse_side(obj, "lhs", where);
  rec.rhs = parse_side(obj, "rhs", where);

  const json& order = field(obj, "order", where);
  if (!order.is_number_integer() || order.get<std::int64_t>() < 1) {
    throw RegistryError(where + ": order must be a positive integer");
  }
  rec.order = order.get<std::int64_t>();

  const std::string expected = string_field(obj, "expected", where);
  if (expected == "pass") {
    rec.expected = Expectation::Pass;
  } else if (expected == "flagged-as-printed") {
    rec.expected = Expectation::FlaggedAsPrinted;
  } else {
    throw RegistryError(where + ": expected must be \"pass\" or \"flagged-as-printed\"");
  }

  if (const auto it = obj.find("granularity"); it != obj.end()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
      throw RegistryError(where + ": granularity must be a nonnegative integer");
    }
    rec.granularity = it->get<std::int64_t>();
  }

  // params: [] (no parameters), a flat list of bindings (one instantiation),
  // or a list of such lists (several instantiations).
  const json& params = field(obj, "params", where);
  if (!params.is_array()) throw RegistryError(where + ": params must be an array");
  if (params.empty()) {
    rec.instantiations.emplace_back();
  } else if (params.front().is_array()) {
    for (const json& inst : params) {
      if (!inst.is_array()) throw RegistryError(where + ": mixed params layout");
      rec.instantiations.push_back(parse_instance(inst, where));
    }
  } else {
    rec.instantiations.push_back(parse_instance(params, where));
  }

  std::set<std::string> free;
  for (const auto& p : dsl::free_parameters(*rec.lhs)) free.insert(p);
  for (const auto& p : dsl::free_parameters(*rec.rhs)) free.insert(p);
  for (std::size_t i = 0; i < rec.instantiations.size(); ++i) {
    for (const auto& p : free) {
      if (!rec.instantiations[i].count(p)) {
        throw RegistryError(where + ": instantiation " + std::to_string(i) + " leaves '" + p + "' unbound");
      }
    }
  }
  return rec;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw RegistryError(std::string("registry is not valid JSON: ") + e.what());
  }
}

}  // namespace

const IdentityRecord* Registry::find(std::string_view id) const {
  for (const auto& r : records) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

Registry load_registry(std::string_view json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_array()) throw RegistryError("registry must be a JSON array of records");
  Registry reg;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    IdentityRecord rec = parse_record(doc[i], i);
    if (!ids.insert(rec.id).second) throw RegistryError("duplicate id " + rec.id);
    reg.records.push_back(std::move(rec));
  }
  return reg;
}

Registry load_registry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RegistryError("cannot open registry file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_registry(buf.str());
}

const Registry& default_registry() {
  static const Registry reg = load_registry(embedded_registry_json());
  return reg;
}

std::vector<std::string> lint_registry(std::string_view json_text) {
  std::vector<std::string> problems;
  json doc;
  try {
    doc = parse_json(json_text);
  } catch (const RegistryError& e) {
    return {e.what()};
  }
  if (!doc.is_array()) return {"registry must be a JSON array of records"};
  std::set<std::string> ids;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    try {
      const IdentityRecord rec = parse_record(doc[i], i);
      if (!ids.insert(rec.id).second) problems.push_back("duplicate id " + rec.id);
      for (const auto* side : {&rec.lhs, &rec.rhs}) {
        const std::string printed = dsl::print(**side);
        const dsl::ExprPtr again = dsl::parse(printed);
        if (!dsl::structurally_equal(**side, *again)) {
          problems.push_back(rec.id + ": parse-print-parse changed the tree for \"" + printed + "\"");
        }
      }
      if (rec.ref.empty() || rec.quote.empty()) problems.push_back(rec.id + ": empty ref or quote");
    } catch (const Error& e) {
      problems.push_back(e.what());
    }
  }
  return problems;
}

std::string describe(const dsl::Bindings& b) {
  std::string out;
  for (const auto& [name, m] : b) out += (out.empty() ? "" : ", ") + name + "=" + to_string(m);
  return out;
}

const char* to_string(Expectation e) { return e == Expectation::Pass ? "pass" : "flagged-as-printed"; }

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
  }
  return "error";
}

bool VerificationReport::acceptable() const {
  if (expected == Expectation::Pass) return status == Status::Pass;
  return status != Status::Error;
}

}  // namespace qseries
