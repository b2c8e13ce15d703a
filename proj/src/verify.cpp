#include <algorithm>
#include <atomic>
#include <thread>

#include "qseries/registry.hpp"

namespace qseries {

namespace {

struct InstanceOutcome {
  Rational order_checked;
  std::optional<Rational> first_fail;
  Rational discrepancy;
};

InstanceOutcome check_instance(const dsl::Expr& diff, std::int64_t order, std::int64_t granularity,
                               const dsl::Bindings& bindings) {
  const QSeries r = dsl::evaluate_to_order(diff, order, granularity, bindings);
  InstanceOutcome out;
  out.order_checked = std::min(Rational(order), r.truncation());
  for (const auto& t : r.terms()) {
    const Rational e = ratio(t.key, r.granularity());
    if (e >= out.order_checked) break;
    out.first_fail = e;
    out.discrepancy = t.coeff;
    break;
  }
  return out;
}

}  // namespace

VerificationReport verify(const IdentityRecord& rec, const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.id = rec.id;
  rep.ref = rec.ref;
  rep.quote = rec.quote;
  rep.expected = rec.expected;
  const std::int64_t order = opts.order.value_or(rec.order);
  const std::int64_t granularity = std::max<std::int64_t>(1, opts.granularity ? opts.granularity : rec.granularity);
  rep.order_checked = order;

  const dsl::ExprPtr diff = dsl::binary(dsl::Kind::Sub, rec.lhs, rec.rhs);
  try {
    for (const auto& bindings : rec.instantiations) {
      const InstanceOutcome o = check_instance(*diff, order, granularity, bindings);
      rep.order_checked = std::min(rep.order_checked, o.order_checked);
      if (o.first_fail) {
        rep.status = Status::Fail;
        rep.first_fail_exponent = o.first_fail;
        rep.discrepancy = o.discrepancy;
        rep.instance = describe(bindings);
        rep.message = "lhs - rhs has coefficient " + to_string(o.discrepancy) + " at q^" + to_string(*o.first_fail);
        break;
      }
    }
    if (rep.status == Status::Pass && rep.order_checked < order) {
      rep.message = "verified to order " + to_string(rep.order_checked) + " only";
    }
  } catch (const std::exception& e) {
    rep.status = Status::Error;
    rep.message = e.what();
  }
  rep.elapsed = std::chrono::steady_clock::now() - start;
  return rep;
}

std::vector<VerificationReport> verify_all(const Registry& reg, const VerifyOptions& opts,
                                           std::string_view id_filter, unsigned threads) {
  std::vector<const IdentityRecord*> selected;
  for (const auto& r : reg.records) {
    if (id_filter.empty() || r.id.find(id_filter) != std::string::npos) selected.push_back(&r);
  }
  std::vector<VerificationReport> reports(selected.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, selected.size())));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++) reports[i] = verify(*selected[i], opts);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return reports;
}

IdentityRecord perturbed(const IdentityRecord& rec, const Rational& k) {
  IdentityRecord out = rec;
  out.rhs = dsl::binary(dsl::Kind::Add, rec.rhs, dsl::monomial(k));
  out.rhs_text = dsl::print(*out.rhs);
  return out;
}

}  // namespace qseries
