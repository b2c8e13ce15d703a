#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qseries/evaluator.hpp"
#include "qseries/expr.hpp"

namespace qseries {

enum class Expectation { Pass, FlaggedAsPrinted };

/// One checkable identity lhs = rhs, verified at each parameter instantiation.
struct IdentityRecord {
  std::string id;
  std::string ref;
  std::string quote;
  std::string lhs_text;
  std::string rhs_text;
  dsl::ExprPtr lhs;
  dsl::ExprPtr rhs;
  /// Each entry binds every free parameter. A record without parameters has
  /// a single empty instantiation.
  std::vector<dsl::Bindings> instantiations;
  std::int64_t order = 100;
  /// 0 selects the granularity automatically.
  std::int64_t granularity = 0;
  Expectation expected = Expectation::Pass;
};

struct Registry {
  std::vector<IdentityRecord> records;

  const IdentityRecord* find(std::string_view id) const;
};

/// Parses registry JSON. Throws RegistryError on schema or DSL errors.
Registry load_registry(std::string_view json_text);
Registry load_registry_file(const std::string& path);

/// The corpus compiled into the library.
std::string_view embedded_registry_json();
const Registry& default_registry();

/// Schema and consistency problems (empty if the corpus is clean): required
/// fields, unique ids, DSL parse errors, unbound parameters, and
/// parse-print-parse stability.
std::vector<std::string> lint_registry(std::string_view json_text);

std::string describe(const dsl::Bindings& b);
const char* to_string(Expectation e);

enum class Status { Pass, Fail, Error };
const char* to_string(Status s);

struct VerificationReport {
  std::string id;
  std::string ref;
  std::string quote;
  Expectation expected = Expectation::Pass;
  Rational order_checked;
  Status status = Status::Pass;
  std::optional<Rational> first_fail_exponent;
  /// lhs - rhs at the first failing exponent.
  std::optional<Rational> discrepancy;
  std::chrono::duration<double, std::milli> elapsed{0};
  /// Failing instantiation, if any.
  std::string instance;
  std::string message;

  /// Whether this outcome is consistent with the record's expectation:
  /// expected-pass records must pass; flagged records only need a clean report.
  bool acceptable() const;
};

struct VerifyOptions {
  /// Overrides the record's default order when set.
  std::optional<std::int64_t> order;
  /// Overrides the record's granularity when nonzero.
  std::int64_t granularity = 0;
};

VerificationReport verify(const IdentityRecord& rec, const VerifyOptions& opts = {});

/// Runs records concurrently; reports are sorted by id.
std::vector<VerificationReport> verify_all(const Registry& reg, const VerifyOptions& opts = {},
                                           std::string_view id_filter = {}, unsigned threads = 0);

/// Copy of the record with q^k added to its right-hand side.
IdentityRecord perturbed(const IdentityRecord& rec, const Rational& k);

}  // namespace qseries
