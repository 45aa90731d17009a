#pragma once

#include <span>
#include <string>
#include <vector>

#include "qsms/qudit.hpp"
#include "qsms/states.hpp"
#include "qsms/stats.hpp"

namespace qsms {

// One multi-party entanglement-swapping event: a cat state with a uniform
// shift label u shared between the coordinator (leading qudit) and n parties,
// plus one Bell pair (r_i, w_i) per party. Each party Bell-measures its cat
// qudit against the pair qudit it kept; the coordinator's side collapses to a
// new cat state.
struct SwapInstance {
  Dimension dim;
  CatLabel cat;                  // shifts must all be equal
  std::vector<BellLabel> bells;  // one per party

  int parties() const { return static_cast<int>(bells.size()); }
  int uniform_shift() const;
  void validate() const;
};

struct SwapOutcome {
  std::vector<BellLabel> party_results;  // measured (r~_i, w~_i)
  CatLabel tp_result;                    // collapsed (v~, u~_1..u~_n)
  std::vector<int> k;                    // r_i - r~_i
  std::vector<int> l;                    // u - w~_i
};

// Label bookkeeping shared by both engines: given the party results, the
// masks are k_i = r_i - r~_i and l_i = u - w~_i, and the collapsed cat label
// is v~ = v + sum(k_i), u~_i = w_i + l_i.
SwapOutcome implied_from_party_results(const SwapInstance& inst, std::span<const BellLabel> party_results);

// Modular-sum summary used by the final protocol step:
// v~ + sum(u~_i) + sum(r~_i + w~_i) - v - n*u.
int swap_sum(const SwapInstance& inst, const SwapOutcome& outcome);

// Throws unless d^(parties+3) amplitudes fit the engine budget (1e8).
void check_swap_memory(Dimension dim, int parties);

// State-vector engine. Builds the cat state, attaches one Bell pair at a
// time and measures it out, so the register never exceeds parties+3 qudits.
// Before the final cat measurement the collapsed register is checked against
// the label-implied cat state; a mismatch throws (engine bug, not an input
// error).
SwapOutcome swap_dense(const SwapInstance& inst, Rng& rng);

// Same engine, conditioned on the given party outcomes instead of sampling.
SwapOutcome swap_dense_forced(const SwapInstance& inst, std::span<const BellLabel> party_results);

// Classical label-tracking engine: draws the masks (k_i, l_i) uniformly and
// applies the update rules directly. O(parties) per call.
SwapOutcome swap_labels(const SwapInstance& inst, Rng& rng);
SwapOutcome swap_labels_forced(const SwapInstance& inst, std::span<const int> k, std::span<const int> l);

// Run both engines over random instances and compare: every outcome must
// satisfy the label identities exactly, and the per-party (k_i, l_i)
// histograms must be uniform and mutually consistent (chi-squared p > 0.001).
struct CrossValidateReport {
  bool passed = false;
  int trials = 0;
  long long dense_identity_failures = 0;
  long long label_identity_failures = 0;
  double min_p_value = 1.0;
  std::string first_failure;
  std::string text;
};
CrossValidateReport cross_validate(Dimension dim, int parties, int trials, Rng& rng);

}  // namespace qsms
