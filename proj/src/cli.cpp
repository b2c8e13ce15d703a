#include "qseries/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace qseries {

namespace {

nlohmann::json rational_or_null(const std::optional<Rational>& v) {
  return v ? nlohmann::json(to_string(*v)) : nlohmann::json(nullptr);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string scientific(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string sample_text(const NumericSample& s) {
  return "degree check q=" + fixed(s.q, 4) + ": alpha=" + scientific(s.alpha) + " beta=" + scientific(s.beta) +
         " ratio=" + fixed(s.ratio, 12) + " |ratio-5|=" + scientific(std::abs(s.ratio - 5)) +
         " |m_theta-m_F|=" + scientific(std::abs(s.m_theta - s.m_hypergeometric)) +
         " |m_series-m_theta|=" + scientific(std::abs(s.m_series - s.m_theta)) + " " + (s.ok() ? "pass" : "fail");
}

struct Config {
  std::int64_t order = 0;
  std::int64_t granularity = 0;
  std::string registry;
  std::string format = "text";
  std::string id_filter;
  std::vector<double> numeric_q;
  bool quiet = false;
  std::string expr;
  std::string record_id;
};

Registry load(const Config& cfg) {
  return cfg.registry.empty() ? default_registry() : load_registry_file(cfg.registry);
}

int report_runs(const std::vector<VerificationReport>& reports, const std::vector<NumericSample>& samples,
                const Config& cfg, std::ostream& out) {
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.acceptable();
  for (const auto& s : samples) ok = ok && s.ok();
  if (cfg.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    if (samples.empty()) {
      out << arr.dump(2) << "\n";
    } else {
      nlohmann::json numeric = nlohmann::json::array();
      for (const auto& s : samples) numeric.push_back(to_json(s));
      out << nlohmann::json{{"reports", arr}, {"numeric", numeric}}.dump(2) << "\n";
    }
    return ok ? 0 : 1;
  }
  std::size_t pass = 0, fail = 0, flagged = 0, error = 0;
  for (const auto& r : reports) {
    if (r.status == Status::Pass) ++pass;
    if (r.status == Status::Fail) ++fail;
    if (r.status == Status::Error) ++error;
    if (r.status != Status::Pass && r.expected == Expectation::FlaggedAsPrinted) ++flagged;
    if (!cfg.quiet || !r.acceptable()) out << to_text(r) << "\n";
  }
  for (const auto& s : samples) out << sample_text(s) << "\n";
  out << reports.size() << " record(s): " << pass << " pass, " << fail << " fail, " << error << " error; " << flagged
      << " flagged-as-printed failure(s) recorded\n";
  return ok ? 0 : 1;
}

}  // namespace

nlohmann::json to_json(const VerificationReport& r) {
  return {
      {"id", r.id},
      {"ref", r.ref},
      {"quote", r.quote},
      {"order", to_string(r.order_checked)},
      {"status", to_string(r.status)},
      {"first_fail_exponent", rational_or_null(r.first_fail_exponent)},
      {"discrepancy", rational_or_null(r.discrepancy)},
      {"elapsed_ms", r.elapsed.count()},
      {"expected", to_string(r.expected)},
      {"instance", r.instance},
      {"message", r.message},
  };
}

nlohmann::json to_json(const NumericSample& s) {
  return {{"q", s.q},
          {"alpha", s.alpha},
          {"beta", s.beta},
          {"ratio", s.ratio},
          {"m_theta", s.m_theta},
          {"m_hypergeometric", s.m_hypergeometric},
          {"m_series", s.m_series},
          {"hypergeometric_crosscheck", s.hypergeometric_crosscheck},
          {"tol", s.tol},
          {"status", s.ok() ? "pass" : "fail"}};
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream s;
  s << to_string(r.status) << "  " << r.id << "  order " << to_string(r.order_checked);
  if (r.first_fail_exponent) {
    s << "  first fail at q^" << to_string(*r.first_fail_exponent) << " (lhs-rhs = " << to_string(*r.discrepancy)
      << ")";
  }
  if (!r.instance.empty() && r.status != Status::Pass) s << "  [" << r.instance << "]";
  if (r.expected == Expectation::FlaggedAsPrinted) s << "  {flagged-as-printed}";
  if (r.status == Status::Error) s << "  " << r.message;
  s << "  " << fixed(r.elapsed.count(), 1) << " ms";
  return s.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact q-series expansion and identity verification"};
  app.name("qverify");
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("-n,--order", cfg.order, "Truncation order in q (default: per record, 20 for expand)")
      ->check(CLI::PositiveNumber);
  app.add_option("-g,--granularity", cfg.granularity, "Exponent lattice 1/D, D in {0,1,2,4,8}; 0 = auto")
      ->check(CLI::IsMember({0, 1, 2, 4, 8}));
  app.add_option("--registry", cfg.registry, "Registry JSON file (default: embedded corpus)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--id", cfg.id_filter, "Only records whose id contains this string");
  app.add_option("--numeric-q", cfg.numeric_q, "Run the numeric degree-5 check at this q (repeatable)")
      ->check(CLI::Range(1e-6, 0.2));
  app.add_flag("--quiet", cfg.quiet, "Only print records that need attention");

  auto* expand = app.add_subcommand("expand", "Expand a DSL expression");
  expand->add_option("expr", cfg.expr, "Expression, e.g. \"phi(1)^4/phi(5)^2\"")->required();
  auto* verify_cmd = app.add_subcommand("verify", "Verify one registry record");
  verify_cmd->add_option("id", cfg.record_id, "Record id, e.g. R-TD")->required();
  auto* verify_all_cmd = app.add_subcommand("verify-all", "Verify every registry record");
  auto* lint = app.add_subcommand("corpus-lint", "Validate the registry file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (expand->parsed()) {
      const std::int64_t order = cfg.order ? cfg.order : 20;
      const std::int64_t d = cfg.granularity ? cfg.granularity : 1;
      const QSeries s = dsl::evaluate_to_order(*dsl::parse(cfg.expr), order, d);
      const QSeries shown = s.truncated(std::min(Rational(order), s.truncation()));
      if (cfg.format == "json") {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : shown.terms()) {
          terms.push_back({{"exponent", to_string(ratio(t.key, shown.granularity()))},
                           {"coefficient", to_string(t.coeff)}});
        }
        out << nlohmann::json{{"expr", cfg.expr},
                              {"order", to_string(shown.truncation())},
                              {"granularity", shown.granularity()},
                              {"series", shown.to_string()},
                              {"terms", terms}}
                   .dump(2)
            << "\n";
      } else {
        out << shown.to_string() << "\n";
        if (shown.truncation() < order) err << "note: known only to order " << to_string(shown.truncation()) << "\n";
      }
      return 0;
    }

    if (lint->parsed()) {
      std::string text;
      if (cfg.registry.empty()) {
        text = std::string(embedded_registry_json());
      } else {
        std::ifstream in(cfg.registry);
        if (!in) {
          err << "cannot open " << cfg.registry << "\n";
          return 2;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
      }
      const auto problems = lint_registry(text);
      for (const auto& p : problems) out << "problem: " << p << "\n";
      if (problems.empty()) out << "registry ok: " << load_registry(text).records.size() << " records\n";
      return problems.empty() ? 0 : 1;
    }

    const Registry reg = load(cfg);
    VerifyOptions opts;
    if (cfg.order) opts.order = cfg.order;
    opts.granularity = cfg.granularity;
    std::vector<NumericSample> samples;
    for (double q : cfg.numeric_q) samples.push_back(degree_check(q));

    if (verify_cmd->parsed()) {
      const IdentityRecord* rec = reg.find(cfg.record_id);
      if (!rec) {
        err << "unknown record id " << cfg.record_id << "\n";
        return 2;
      }
      return report_runs({verify(*rec, opts)}, samples, cfg, out);
    }
    if (verify_all_cmd->parsed()) return report_runs(verify_all(reg, opts, cfg.id_filter), samples, cfg, out);
  } catch (const Error& e) {
    err << "error (" << e.kind() << "): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace qseries
