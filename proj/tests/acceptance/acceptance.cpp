// One PASS/FAIL line per acceptance criterion. Exit status is 0 when the set of
// failing criteria equals the set given by --expect-red, so a criterion that
// is known to be red is still reported as FAIL but does not break the build,
// and a criterion that unexpectedly turns green is flagged.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bilateral_oracle.hpp"
#include "qseries/lambert.hpp"
#include "qseries/modeq.hpp"
#include "qseries/registry.hpp"
#include "qseries/theta.hpp"

using namespace qseries;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> info;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool has_bilateral(const IdentityRecord& rec) {
  for (const auto& b : rec.instantiations) {
    if (!dsl::bilateral_calls(*rec.lhs, b).empty() || !dsl::bilateral_calls(*rec.rhs, b).empty()) return true;
  }
  return false;
}

Outcome registry_pass() {
  const Registry& reg = default_registry();
  Registry expected;
  for (const auto& r : reg.records) {
    if (r.expected == Expectation::Pass) expected.records.push_back(r);
  }
  const auto t0 = Clock::now();
  const auto reports = verify_all(expected);
  const double elapsed = seconds_since(t0);
  Outcome o;
  std::size_t ok = 0;
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& rep = reports[i];
    const IdentityRecord* rec = reg.find(rep.id);
    const Rational needed = has_bilateral(*rec) ? 80 : 100;
    if (rep.status == Status::Pass && rep.order_checked >= needed) {
      ++ok;
    } else {
      bad.push_back(rep.id + " (" + to_string(rep.status) + ", order " + to_string(rep.order_checked) + ")");
    }
  }
  o.pass = bad.empty() && expected.records.size() >= 30 && elapsed <= 120;
  std::ostringstream s;
  s << ok << "/" << expected.records.size() << " expected-pass records verified in " << elapsed << " s";
  for (const auto& b : bad) s << "; " << b;
  o.detail = s.str();
  return o;
}

Outcome triple_product() {
  const IdentityRecord* rec = default_registry().find("R-JTP");
  Outcome o;
  if (!rec) return {false, "R-JTP missing"};
  std::size_t ok = 0;
  for (const auto& b : rec->instantiations) {
    const ThetaArgs args{b.at("r"), b.at("s")};
    if (eq_to_order(theta_product(args, 200), theta_sum(args, 200), 200).equal) ++ok;
  }
  o.pass = ok == rec->instantiations.size() && ok == 7;
  o.detail = std::to_string(ok) + "/" + std::to_string(rec->instantiations.size()) +
             " (r, s) pairs agree to order 200";
  return o;
}

Outcome pentagonal() {
  // Oracle: coefficient (-1)^k at k(3k-1)/2 for every integer k.
  std::map<long, long> expected;
  for (long k = -20; k <= 20; ++k) {
    const long e = k * (3 * k - 1) / 2;
    if (e <= 100) expected[e] = (k % 2 == 0) ? 1 : -1;
  }
  const QSeries euler = pochhammer_inf(SignedMonomial::q_pow(1), Rational(1), 101);
  long mismatches = 0;
  for (long n = 0; n <= 100; ++n) {
    const long want = expected.count(n) ? expected[n] : 0;
    if (euler.coefficient(n) != want) ++mismatches;
  }
  return {mismatches == 0, std::to_string(101 - mismatches) + "/101 coefficients of (q;q) match for n <= 100"};
}

Rational oracle_bernoulli(int n) {
  // Akiyama-Tanigawa gives B_1 = +1/2; flip it to the x/(e^x - 1) convention.
  std::vector<Rational> a(n + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = Rational(1) / (m + 1);
    a[m].canonicalize();
    for (int j = m; j >= 1; --j) {
      a[j - 1] = j * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
  }
  return n == 1 ? Rational(-a[0]) : a[0];
}

Outcome eisenstein() {
  constexpr long N = 200;
  const QSeries l = (Rational(1) / 24) * (QSeries::constant(1, N + 1) - eisenstein_L(1, N + 1));
  const QSeries m = (Rational(1) / 240) * (eisenstein_E(4, N + 1) - QSeries::constant(1, N + 1));
  const QSeries n6 = (Rational(1) / 504) * (QSeries::constant(1, N + 1) - eisenstein_E(6, N + 1));
  long bad = 0;
  for (long n = 1; n <= N; ++n) {
    mpz_class s1 = 0, s3 = 0, s5 = 0;
    for (long d = 1; d <= n; ++d) {
      if (n % d) continue;
      const mpz_class dd = d;
      s1 += dd;
      s3 += dd * dd * dd;
      s5 += dd * dd * dd * dd * dd;
    }
    if (l.coefficient(n) != Rational(s1) || m.coefficient(n) != Rational(s3) || n6.coefficient(n) != Rational(s5)) ++bad;
  }
  const std::vector<Rational> listed{1, Rational(-1, 2), Rational(1, 6), 0, Rational(-1, 30)};
  bool bern = true;
  for (int k = 0; k < 5; ++k) bern = bern && bernoulli(k) == listed[k];
  for (int k = 0; k <= 20; ++k) bern = bern && bernoulli(k) == oracle_bernoulli(k);
  for (int k = 3; k <= 21; k += 2) bern = bern && bernoulli(k) == 0;
  std::ostringstream s;
  s << (N - bad) << "/" << N << " sigma_1, sigma_3, sigma_5 coefficient triples match; Bernoulli B_0..B_4 "
    << (bern ? "match" : "DIFFER") << " the listed values and the B_0..B_20 oracle";
  return {bad == 0 && bern, s.str()};
}

Outcome modular_equation() {
  Outcome o;
  const ModularResidual printed = modular_eq_residual(100, ModularVariant::AsPrinted);
  const ModularResidual derived = modular_eq_residual(100, ModularVariant::AsDerived);
  o.pass = printed.residual.is_zero() && printed.integral && printed.order_checked >= 100;
  std::ostringstream s;
  s << "equation as stated: residual ";
  if (printed.residual.is_zero()) {
    s << "zero";
  } else {
    const Rational v = printed.residual.valuation();
    s << "nonzero, leading term " << to_string(printed.residual.coefficient(v)) << " q^" << to_string(v);
  }
  s << " (order " << to_string(printed.order_checked) << ", granularity 8, integral " << (printed.integral ? "yes" : "no")
    << ")";
  o.detail = s.str();
  std::ostringstream d;
  d << "theta-derived form (2m(ab)^(1/2), 8(1-b)): residual "
    << (derived.residual.is_zero() ? "zero" : "NONZERO") << " to order " << to_string(derived.order_checked)
    << ", integral " << (derived.integral ? "yes" : "no") << ", radicals on lattice "
    << (derived.radicals_on_lattice ? "yes" : "no");
  o.info.push_back(d.str());
  return o;
}

Outcome numeric_degree() {
  Outcome o{true, ""};
  std::ostringstream s;
  for (double q : {0.05, 0.1}) {
    const NumericSample n = degree_check(q);
    o.pass = o.pass && n.ok();
    s << (s.tellp() > 0 ? "; " : "") << "q=" << q << ": |ratio-5|=" << std::abs(n.ratio - 5) << ", |m_theta-m_F|=" << std::abs(n.m_theta - n.m_hypergeometric)
      << ", AGM vs series " << n.hypergeometric_crosscheck;
    std::ostringstream i;
    i << "q=" << q << ": [F(1-b)/F(b)]/[F(1-a)/F(a)] = " << n.ratio << ", reciprocal orientation gives " << 1 / n.ratio;
    o.info.push_back(i.str());
  }
  o.detail = s.str();
  return o;
}

Outcome divisor_theorems() {
  const Registry& reg = default_registry();
  Outcome o{true, ""};
  std::ostringstream s;
  for (const char* id : {"R-51", "R-51G", "R-51-GROUPED", "R-52", "R-52G", "R-52-GROUPED"}) {
    const IdentityRecord* rec = reg.find(id);
    VerifyOptions opts;
    opts.order = std::max<std::int64_t>(150, rec ? rec->order : 0);
    const bool ok = rec && rec->expected == Expectation::Pass && verify(*rec, opts).status == Status::Pass;
    o.pass = o.pass && ok;
    s << (s.tellp() > 0 ? "; " : "") << id << (ok ? " pass@150" : " FAIL");
  }
  for (const char* id : {"R-51-printed", "R-51-GROUPED-printed", "R-52-printed", "R-52G-printed",
                         "R-52-GROUPED-printed", "R-52-inner"}) {
    const IdentityRecord* rec = reg.find(id);
    if (!rec) {
      o.pass = false;
      s << "; " << id << " missing";
      continue;
    }
    const auto a = verify(*rec);
    const auto b = verify(*rec);
    const bool ok = a.status == Status::Fail && a.first_fail_exponent && a.status == b.status &&
                    a.first_fail_exponent == b.first_fail_exponent && a.discrepancy == b.discrepancy &&
                    a.acceptable();
    o.pass = o.pass && ok;
    s << "; " << id
      << (ok ? " recorded fail at q^" + to_string(*a.first_fail_exponent) : std::string(" NOT DETERMINISTIC"));
  }
  o.detail = s.str();
  return o;
}

Outcome bilateral_oracle() {
  constexpr std::int64_t order = 40;
  std::map<std::string, dsl::BilateralCall> calls;
  for (const auto& rec : default_registry().records) {
    for (const auto& b : rec.instantiations) {
      for (const auto* side : {&rec.lhs, &rec.rhs}) {
        for (const auto& c : dsl::bilateral_calls(**side, b)) {
          std::ostringstream key;
          key << (c.type == dsl::BilateralCall::Type::Lambert ? "bilambert(" : "biratio(") << to_string(c.x);
          if (c.type == dsl::BilateralCall::Type::Ratio) key << ", " << to_string(c.a);
          key << ", " << c.modulus;
          if (c.type == dsl::BilateralCall::Type::Lambert) key << ", " << c.power;
          key << ")";
          calls.emplace(key.str(), c);
        }
      }
    }
  }
  std::vector<std::string> bad;
  for (const auto& [key, c] : calls) {
    QSeries fast{1, 0}, slow{1, 0};
    if (c.type == dsl::BilateralCall::Type::Lambert) {
      fast = bilateral_lambert(c.x, c.modulus, c.power, order);
      slow = oracle::bilateral_lambert(c.x, c.modulus, c.power, order);
    } else {
      fast = bilateral_ratio(c.x, c.a, c.modulus, order);
      slow = oracle::bilateral_ratio(c.x, c.a, c.modulus, order);
    }
    if (!eq_to_order(fast, slow, order).equal || fast.truncation() < order || slow.truncation() < order) bad.push_back(key);
  }
  std::ostringstream s;
  s << (calls.size() - bad.size()) << "/" << calls.size() << " distinct bilateral instantiations agree to order 40";
  for (const auto& b : bad) s << "; " << b;
  return {bad.empty() && !calls.empty(), s.str()};
}

Outcome mutation() {
  const Registry& reg = default_registry();
  std::size_t tried = 0;
  std::vector<std::string> bad;
  for (const auto& rec : reg.records) {
    if (rec.expected != Expectation::Pass) continue;
    // Spread over the record's own checked range: start, middle, last exponent.
    for (std::int64_t k : {std::int64_t{0}, rec.order / 2, rec.order - 1}) {
      ++tried;
      const auto r = verify(perturbed(rec, k));
      if (r.status != Status::Fail || !r.first_fail_exponent || *r.first_fail_exponent != k) {
        bad.push_back(rec.id + " k=" + std::to_string(k));
      }
    }
  }
  std::ostringstream s;
  s << (tried - bad.size()) << "/" << tried << " perturbations (k = 0, N/2, N-1 at each record's order N) caught at exponent k";
  for (const auto& b : bad) s << "; " << b;
  return {bad.empty(), s.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::vector<int> expect_red;
  std::vector<int> only;
  app.add_option("--expect-red", expect_red, "Criteria known to fail; exit 0 if exactly these fail");
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"full registry pass", registry_pass},
      {"triple product: product = sum", triple_product},
      {"pentagonal theorem", pentagonal},
      {"Eisenstein divisor sums and Bernoulli numbers", eisenstein},
      {"degree-5 modular equation as stated", modular_equation},
      {"numeric degree-5 confirmation", numeric_degree},
      {"divisor-sum theorems: corrected forms pass, printed forms recorded", divisor_theorems},
      {"bilateral sums vs brute force", bilateral_oracle},
      {"mutation sensitivity", mutation},
  };

  std::set<int> red;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << criteria[i].first << ": " << o.detail
              << " [" << seconds_since(t0) << " s]\n";
    for (const auto& line : o.info) std::cout << "      info: " << line << "\n";
    if (!o.pass) red.insert(id);
  }

  std::set<int> expected;
  for (int id : expect_red) {
    if (only.empty() || std::find(only.begin(), only.end(), id) != only.end()) expected.insert(id);
  }
  for (int id : red) {
    if (!expected.count(id)) std::cout << "unexpected red: criterion " << id << "\n";
  }
  for (int id : expected) {
    if (!red.count(id)) std::cout << "expected red but passed: criterion " << id << "\n";
  }
  return red == expected ? 0 : 1;
}
