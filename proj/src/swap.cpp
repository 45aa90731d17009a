#include "qsms/swap.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsms {

int SwapInstance::uniform_shift() const {
  if (cat.shifts.empty()) throw std::invalid_argument("swap instance: cat label has no shift entries");
  return cat.shifts[0];
}

void SwapInstance::validate() const {
  if (bells.empty()) throw std::invalid_argument("swap instance: at least one Bell pair required");
  if (cat.shifts.size() != bells.size()) {
    throw std::invalid_argument("swap instance: one cat shift entry per Bell pair required");
  }
  dim.require_digit(cat.v);
  const int u = cat.shifts[0];
  for (int s : cat.shifts) {
    dim.require_digit(s);
    if (s != u) throw std::invalid_argument("swap instance: cat shift label must be uniform");
  }
  for (const BellLabel& b : bells) {
    dim.require_digit(b.r);
    dim.require_digit(b.w);
  }
}

SwapOutcome implied_from_party_results(const SwapInstance& inst, std::span<const BellLabel> party_results) {
  inst.validate();
  if (party_results.size() != inst.bells.size()) {
    throw std::invalid_argument("one party result per Bell pair required");
  }
  const Dimension dim = inst.dim;
  const int u = inst.uniform_shift();
  SwapOutcome out;
  out.party_results.assign(party_results.begin(), party_results.end());
  out.tp_result.v = inst.cat.v;
  for (std::size_t i = 0; i < party_results.size(); ++i) {
    const int k = dim.sub(inst.bells[i].r, party_results[i].r);
    const int l = dim.sub(u, party_results[i].w);
    out.k.push_back(k);
    out.l.push_back(l);
    out.tp_result.v = dim.add(out.tp_result.v, k);
    out.tp_result.shifts.push_back(dim.add(inst.bells[i].w, l));
  }
  return out;
}

int swap_sum(const SwapInstance& inst, const SwapOutcome& outcome) {
  const Dimension dim = inst.dim;
  int acc = outcome.tp_result.v;
  for (int s : outcome.tp_result.shifts) acc = dim.add(acc, s);
  for (const BellLabel& b : outcome.party_results) acc = dim.add(acc, dim.add(b.r, b.w));
  acc = dim.sub(acc, inst.cat.v);
  for (std::size_t i = 0; i < outcome.party_results.size(); ++i) acc = dim.sub(acc, inst.uniform_shift());
  return acc;
}

void check_swap_memory(Dimension dim, int parties) {
  if (parties < 1) throw std::invalid_argument("swap: at least one party required");
  double amps = 1.0;
  for (int i = 0; i < parties + 3; ++i) amps *= static_cast<double>(dim.value());
  if (amps > 1e8) {
    throw std::invalid_argument("swap: d^(parties+3) exceeds the 1e8 amplitude budget");
  }
}

namespace {

// Qudit id layout for a standalone swap: cat qudits 0..n, then pair i
// (1-based) gets kept qudit h_i = n+2i-1 and transmitted qudit t_i = n+2i.
struct SwapIds {
  std::vector<QuditId> cat;
  std::vector<QuditId> h, t;
};

SwapIds swap_ids(int parties) {
  SwapIds ids;
  for (int i = 0; i <= parties; ++i) ids.cat.push_back(QuditId{static_cast<std::uint32_t>(i)});
  for (int i = 1; i <= parties; ++i) {
    ids.h.push_back(QuditId{static_cast<std::uint32_t>(parties + 2 * i - 1)});
    ids.t.push_back(QuditId{static_cast<std::uint32_t>(parties + 2 * i)});
  }
  return ids;
}

SwapOutcome swap_dense_impl(const SwapInstance& inst, Rng* rng, std::span<const BellLabel> forced) {
  inst.validate();
  const int n = inst.parties();
  check_swap_memory(inst.dim, n);
  const SwapIds ids = swap_ids(n);
  QuditRegister reg = make_cat(inst.dim, inst.cat, ids.cat);

  std::vector<BellLabel> party_results;
  for (int i = 0; i < n; ++i) {
    reg.attach(make_bell(inst.dim, inst.bells[static_cast<std::size_t>(i)], ids.h[static_cast<std::size_t>(i)],
                         ids.t[static_cast<std::size_t>(i)]));
    // The kept pair qudit leads the Bell projector; this orientation is what
    // makes the label update rules close (pinned by the worked-example test).
    if (forced.empty()) {
      party_results.push_back(
          reg.measure_bell(ids.h[static_cast<std::size_t>(i)], ids.cat[static_cast<std::size_t>(i + 1)], *rng).bell());
    } else {
      reg.project_bell(ids.h[static_cast<std::size_t>(i)], ids.cat[static_cast<std::size_t>(i + 1)],
                       forced[static_cast<std::size_t>(i)]);
      party_results.push_back(forced[static_cast<std::size_t>(i)]);
    }
  }

  SwapOutcome out = implied_from_party_results(inst, party_results);

  // The register now holds exactly (s_0, t_1..t_n); it must be the cat state
  // the labels imply, and the final measurement must reproduce that label.
  std::vector<QuditId> tp_ids;
  tp_ids.push_back(ids.cat[0]);
  tp_ids.insert(tp_ids.end(), ids.t.begin(), ids.t.end());
  const QuditRegister expected = make_cat(inst.dim, out.tp_result, tp_ids);
  if (reg.fidelity(expected) < 1.0 - kNormTolerance) {
    throw std::logic_error("swap_dense: collapsed register disagrees with the implied cat label");
  }
  Rng fallback(0);  // the measurement below is deterministic after the fidelity check
  const CatLabel measured = reg.measure_cat(tp_ids, rng != nullptr ? *rng : fallback).cat();
  if (!(measured == out.tp_result)) {
    throw std::logic_error("swap_dense: cat measurement disagrees with the implied label");
  }
  return out;
}

}  // namespace

SwapOutcome swap_dense(const SwapInstance& inst, Rng& rng) { return swap_dense_impl(inst, &rng, {}); }

SwapOutcome swap_dense_forced(const SwapInstance& inst, std::span<const BellLabel> party_results) {
  if (party_results.size() != inst.bells.size()) {
    throw std::invalid_argument("swap_dense_forced: one forced result per Bell pair required");
  }
  return swap_dense_impl(inst, nullptr, party_results);
}

SwapOutcome swap_labels(const SwapInstance& inst, Rng& rng) {
  inst.validate();
  const int d = inst.dim.value();
  std::vector<int> k(inst.bells.size()), l(inst.bells.size());
  for (std::size_t i = 0; i < inst.bells.size(); ++i) {
    k[i] = rng.uniform_int(d);
    l[i] = rng.uniform_int(d);
  }
  return swap_labels_forced(inst, k, l);
}

SwapOutcome swap_labels_forced(const SwapInstance& inst, std::span<const int> k, std::span<const int> l) {
  inst.validate();
  if (k.size() != inst.bells.size() || l.size() != inst.bells.size()) {
    throw std::invalid_argument("swap_labels_forced: one (k,l) per Bell pair required");
  }
  const Dimension dim = inst.dim;
  const int u = inst.uniform_shift();
  SwapOutcome out;
  out.k.assign(k.begin(), k.end());
  out.l.assign(l.begin(), l.end());
  out.tp_result.v = inst.cat.v;
  for (std::size_t i = 0; i < k.size(); ++i) {
    dim.require_digit(k[i]);
    dim.require_digit(l[i]);
    out.party_results.push_back(BellLabel{dim.sub(inst.bells[i].r, k[i]), dim.sub(u, l[i])});
    out.tp_result.v = dim.add(out.tp_result.v, k[i]);
    out.tp_result.shifts.push_back(dim.add(inst.bells[i].w, l[i]));
  }
  return out;
}

namespace {

// The exact label identities every outcome must satisfy, phrased so a failure
// in either engine shows up the same way.
bool outcome_identities_hold(const SwapInstance& inst, const SwapOutcome& out) {
  const Dimension dim = inst.dim;
  const int n = inst.parties();
  const int u = inst.uniform_shift();
  int ksum = 0;
  int expected_sum = 0;
  for (int i = 0; i < n; ++i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    if (out.party_results[ui].r != dim.sub(inst.bells[ui].r, out.k[ui])) return false;
    if (out.party_results[ui].w != dim.sub(u, out.l[ui])) return false;
    if (out.tp_result.shifts[ui] != dim.add(inst.bells[ui].w, out.l[ui])) return false;
    ksum = dim.add(ksum, out.k[ui]);
    expected_sum = dim.add(expected_sum, dim.add(inst.bells[ui].r, inst.bells[ui].w));
  }
  if (out.tp_result.v != dim.add(inst.cat.v, ksum)) return false;
  return swap_sum(inst, out) == expected_sum;
}

std::string describe_instance(const SwapInstance& inst, const SwapOutcome& out) {
  std::ostringstream os;
  os << "cat (v=" << inst.cat.v << ", u=" << inst.uniform_shift() << "), bells";
  for (const BellLabel& b : inst.bells) os << " (" << b.r << "," << b.w << ")";
  os << "; results";
  for (const BellLabel& b : out.party_results) os << " (" << b.r << "," << b.w << ")";
  os << "; tp (v~=" << out.tp_result.v << ", u~=";
  for (int s : out.tp_result.shifts) os << s << " ";
  os << ")";
  return os.str();
}

}  // namespace

CrossValidateReport cross_validate(Dimension dim, int parties, int trials, Rng& rng) {
  if (trials < 1) throw std::invalid_argument("cross_validate: need at least one trial");
  check_swap_memory(dim, parties);
  const int d = dim.value();
  const std::size_t cells = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  std::vector<std::vector<long long>> dense_counts(static_cast<std::size_t>(parties),
                                                   std::vector<long long>(cells, 0));
  std::vector<std::vector<long long>> label_counts = dense_counts;

  CrossValidateReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    SwapInstance inst{dim, CatLabel{rng.uniform_int(d), std::vector<int>(static_cast<std::size_t>(parties), rng.uniform_int(d))}, {}};
    for (int i = 0; i < parties; ++i) inst.bells.push_back(BellLabel{rng.uniform_int(d), rng.uniform_int(d)});

    const SwapOutcome dense = swap_dense(inst, rng);
    if (!outcome_identities_hold(inst, dense)) {
      ++report.dense_identity_failures;
      if (report.first_failure.empty()) report.first_failure = "dense: " + describe_instance(inst, dense);
    }
    const SwapOutcome labels = swap_labels(inst, rng);
    if (!outcome_identities_hold(inst, labels)) {
      ++report.label_identity_failures;
      if (report.first_failure.empty()) report.first_failure = "labels: " + describe_instance(inst, labels);
    }
    for (int i = 0; i < parties; ++i) {
      const std::size_t ui = static_cast<std::size_t>(i);
      dense_counts[ui][static_cast<std::size_t>(dense.k[ui] * d + dense.l[ui])] += 1;
      label_counts[ui][static_cast<std::size_t>(labels.k[ui] * d + labels.l[ui])] += 1;
    }
  }

  std::ostringstream text;
  text << "cross-validation d=" << d << " parties=" << parties << " trials=" << trials << "\n";
  text << "  label identity failures: dense=" << report.dense_identity_failures
       << " labels=" << report.label_identity_failures << "\n";
  for (int i = 0; i < parties; ++i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    const ChiSquare du = chi_square_uniform(dense_counts[ui]);
    const ChiSquare lu = chi_square_uniform(label_counts[ui]);
    const ChiSquare hom = chi_square_two_sample(dense_counts[ui], label_counts[ui]);
    report.min_p_value = std::min({report.min_p_value, du.p_value, lu.p_value, hom.p_value});
    text << "  party " << (i + 1) << ": (k,l) uniformity dense chi2=" << du.statistic << " p=" << du.p_value
         << ", labels chi2=" << lu.statistic << " p=" << lu.p_value << ", dense-vs-labels chi2=" << hom.statistic
         << " p=" << hom.p_value << "\n";
  }
  report.passed = report.dense_identity_failures == 0 && report.label_identity_failures == 0 &&
                  report.min_p_value > 0.001;
  text << "  min p-value " << report.min_p_value << " (threshold 0.001): " << (report.passed ? "PASS" : "FAIL");
  if (!report.first_failure.empty()) text << "\n  first failure: " << report.first_failure;
  report.text = text.str();
  return report;
}

}  // namespace qsms
