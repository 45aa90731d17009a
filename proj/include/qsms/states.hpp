#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsms/qudit.hpp"

namespace qsms {

// Generalized Bell state |Phi(r,w)> = 1/sqrt(d) sum_j phase(j*r) |j>|j+w>,
// built by applying Z^r then X^w to the second qudit of |Phi(0,0)>. The
// construction-path and the closed-form amplitudes agree exactly; a test
// holds them together.
QuditRegister make_bell(Dimension dim, BellLabel label, QuditId first, QuditId second);
QuditRegister make_bell(Dimension dim, BellLabel label);  // ids 0, 1

// Cat state over label.shifts.size()+1 qudits:
// |Psi(v,u_2..u_k)> = 1/sqrt(d) sum_j phase(j*v) |j, j+u_2, .., j+u_k>.
QuditRegister make_cat(Dimension dim, const CatLabel& label, std::span<const QuditId> ids);
QuditRegister make_cat(Dimension dim, const CatLabel& label);  // ids 0..k-1

// All-B1 consistency condition for a cat state whose shift entries all equal
// u: outcomes[0] + u == outcomes[i] for every i >= 1.
bool check_c1(Dimension dim, std::span<const int> outcomes, int u);

// All-B2 consistency condition: sum of all outcomes plus v is 0 mod d.
bool check_c2(Dimension dim, std::span<const int> outcomes, int v);

// Two-qudit specialisation with (r,w) offsets, used by the Bell-pair
// detection round. B1: a0 + w == a1. B2: a0 + a1 + r == 0.
bool check_corollary1(Dimension dim, int a0, int a1, Basis basis, BellLabel label);

// Search the uniform-shift cat family |Psi(v,u,..,u)| for a label whose state
// matches the register (fidelity >= 1 - kNormTolerance, global phase
// ignored). The register's own qudit order defines the leading qudit.
std::optional<CatLabel> identify_uniform_cat(const QuditRegister& reg);

// Same search over the full cat basis (every shift combination).
std::optional<CatLabel> identify_cat(const QuditRegister& reg);

// Sampling suite behind `validate` and the acceptance gate: for every label
// (v,u) at this dimension, B1 sampling of |Psi(v,u,..,u)> must satisfy c1 and
// B2 sampling must satisfy c2, each `trials` times; randomly perturbed cats
// (L2 distance >= 0.1) must fail at least once. Returns a pass flag and a
// printable summary.
struct Theorem1SuiteResult {
  bool passed = false;
  long long samples = 0;
  long long failures = 0;
  long long perturbed_samples = 0;
  long long perturbed_failures = 0;
  std::string text;
};
Theorem1SuiteResult theorem1_suite(Dimension dim, int parties, int trials_per_label, Rng& rng);

}  // namespace qsms
