#include "qsms/states.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsms {

QuditRegister make_bell(Dimension dim, BellLabel label, QuditId first, QuditId second) {
  dim.require_digit(label.r);
  dim.require_digit(label.w);
  const int d = dim.value();
  const double coeff = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Complex> amps(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), Complex{0.0, 0.0});
  for (int j = 0; j < d; ++j) {
    amps[static_cast<std::size_t>(j * d + j)] = Complex{coeff, 0.0};
  }
  QuditRegister reg(dim, {first, second}, std::move(amps));
  reg.apply_clock(second, label.r);
  reg.apply_shift(second, label.w);
  return reg;
}

QuditRegister make_bell(Dimension dim, BellLabel label) {
  return make_bell(dim, label, QuditId{0}, QuditId{1});
}

QuditRegister make_cat(Dimension dim, const CatLabel& label, std::span<const QuditId> ids) {
  if (label.shifts.empty()) throw std::invalid_argument("make_cat: at least one shift entry (two qudits) required");
  if (ids.size() != label.shifts.size() + 1) throw std::invalid_argument("make_cat: id count must be shifts + 1");
  dim.require_digit(label.v);
  for (int u : label.shifts) dim.require_digit(u);
  const int d = dim.value();
  const int k = static_cast<int>(ids.size());
  std::size_t n = 1;
  for (int i = 0; i < k; ++i) n *= static_cast<std::size_t>(d);
  const double coeff = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Complex> amps(n, Complex{0.0, 0.0});
  for (int j = 0; j < d; ++j) {
    std::size_t index = static_cast<std::size_t>(j);
    for (int u : label.shifts) index = index * static_cast<std::size_t>(d) + static_cast<std::size_t>(dim.add(j, u));
    amps[index] = dim.phase(static_cast<long long>(j) * label.v) * coeff;
  }
  return QuditRegister(dim, std::vector<QuditId>(ids.begin(), ids.end()), std::move(amps));
}

QuditRegister make_cat(Dimension dim, const CatLabel& label) {
  std::vector<QuditId> ids(label.shifts.size() + 1);
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = QuditId{static_cast<std::uint32_t>(i)};
  return make_cat(dim, label, ids);
}

bool check_c1(Dimension dim, std::span<const int> outcomes, int u) {
  if (outcomes.size() < 2) throw std::invalid_argument("check_c1: need the leading outcome plus at least one more");
  dim.require_digit(u);
  for (int o : outcomes) dim.require_digit(o);
  const int expected = dim.add(outcomes[0], u);
  for (std::size_t i = 1; i < outcomes.size(); ++i) {
    if (outcomes[i] != expected) return false;
  }
  return true;
}

bool check_c2(Dimension dim, std::span<const int> outcomes, int v) {
  if (outcomes.size() < 2) throw std::invalid_argument("check_c2: need at least two outcomes");
  dim.require_digit(v);
  int acc = v;
  for (int o : outcomes) {
    dim.require_digit(o);
    acc = dim.add(acc, o);
  }
  return acc == 0;
}

bool check_corollary1(Dimension dim, int a0, int a1, Basis basis, BellLabel label) {
  dim.require_digit(a0);
  dim.require_digit(a1);
  dim.require_digit(label.r);
  dim.require_digit(label.w);
  if (basis == Basis::B1) return dim.add(a0, label.w) == a1;
  return dim.add(dim.add(a0, a1), label.r) == 0;
}

namespace {

// |<Psi(v,shifts)|reg>| read off the d-point support of the cat state.
double cat_overlap(const QuditRegister& reg, int v, std::span<const int> shifts) {
  const Dimension dim = reg.dim();
  const int d = dim.value();
  const double coeff = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<int> digits(static_cast<std::size_t>(reg.qudit_count()));
  Complex acc{0.0, 0.0};
  for (int j = 0; j < d; ++j) {
    digits[0] = j;
    for (std::size_t i = 0; i < shifts.size(); ++i) digits[i + 1] = dim.add(j, shifts[i]);
    acc += dim.phase(-static_cast<long long>(j) * v) * coeff * reg.amplitude(digits);
  }
  return std::abs(acc);
}

}  // namespace

std::optional<CatLabel> identify_uniform_cat(const QuditRegister& reg) {
  if (reg.qudit_count() < 2) throw std::invalid_argument("identify_uniform_cat: need at least two qudits");
  const int d = reg.dim().value();
  std::vector<int> shifts(static_cast<std::size_t>(reg.qudit_count() - 1));
  for (int u = 0; u < d; ++u) {
    std::fill(shifts.begin(), shifts.end(), u);
    for (int v = 0; v < d; ++v) {
      if (cat_overlap(reg, v, shifts) >= 1.0 - kNormTolerance) return CatLabel{v, shifts};
    }
  }
  return std::nullopt;
}

std::optional<CatLabel> identify_cat(const QuditRegister& reg) {
  if (reg.qudit_count() < 2) throw std::invalid_argument("identify_cat: need at least two qudits");
  const int d = reg.dim().value();
  const int k = reg.qudit_count();
  std::size_t combos = 1;
  for (int i = 1; i < k; ++i) combos *= static_cast<std::size_t>(d);
  std::vector<int> shifts(static_cast<std::size_t>(k - 1));
  for (std::size_t c = 0; c < combos; ++c) {
    std::size_t rem = c;
    for (std::size_t i = shifts.size(); i-- > 0;) {
      shifts[i] = static_cast<int>(rem % static_cast<std::size_t>(d));
      rem /= static_cast<std::size_t>(d);
    }
    for (int v = 0; v < d; ++v) {
      if (cat_overlap(reg, v, shifts) >= 1.0 - kNormTolerance) return CatLabel{v, shifts};
    }
  }
  return std::nullopt;
}

Theorem1SuiteResult theorem1_suite(Dimension dim, int parties, int trials_per_label, Rng& rng) {
  if (parties < 1) throw std::invalid_argument("theorem1_suite: need at least one party");
  if (trials_per_label < 1) throw std::invalid_argument("theorem1_suite: need at least one trial per label");
  const int d = dim.value();
  Theorem1SuiteResult result;
  std::ostringstream text;

  for (int v = 0; v < d; ++v) {
    for (int u = 0; u < d; ++u) {
      const CatLabel label{v, std::vector<int>(static_cast<std::size_t>(parties), u)};
      const QuditRegister cat = make_cat(dim, label);
      for (Basis basis : {Basis::B1, Basis::B2}) {
        for (int t = 0; t < trials_per_label; ++t) {
          QuditRegister copy = cat;
          std::vector<int> outcomes;
          outcomes.reserve(static_cast<std::size_t>(parties + 1));
          const auto ids = copy.qudits();
          for (QuditId id : ids) outcomes.push_back(copy.measure_single(id, basis, rng).digit());
          const bool ok = basis == Basis::B1 ? check_c1(dim, outcomes, u) : check_c2(dim, outcomes, v);
          ++result.samples;
          if (!ok) ++result.failures;
        }
      }
    }
  }

  // Converse direction: states pushed at least 0.1 away in L2 (fidelity at
  // most 0.99, so the distance bound holds for every global phase) must
  // trip the checks at least once per batch.
  const int perturbed_states = 3;
  long long converse_misses = 0;
  for (int s = 0; s < perturbed_states; ++s) {
    const CatLabel label{rng.uniform_int(d), std::vector<int>(static_cast<std::size_t>(parties), rng.uniform_int(d))};
    const QuditRegister cat = make_cat(dim, label);
    QuditRegister noisy = cat;
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::vector<Complex> amps = cat.amplitudes();
      double noise_norm = 0.0;
      std::vector<Complex> noise(amps.size());
      for (Complex& c : noise) {
        c = Complex{rng.normal(), rng.normal()};
        noise_norm += std::norm(c);
      }
      const double scale = 0.25 / std::sqrt(noise_norm);
      for (std::size_t i = 0; i < amps.size(); ++i) amps[i] += noise[i] * scale;
      double total = 0.0;
      for (const Complex& c : amps) total += std::norm(c);
      const double renorm = 1.0 / std::sqrt(total);
      for (Complex& c : amps) c *= renorm;
      QuditRegister candidate(dim, cat.qudits(), std::move(amps));
      if (candidate.fidelity(cat) <= 0.99) {
        noisy = std::move(candidate);
        break;
      }
    }
    long long fail_here = 0;
    for (int t = 0; t < trials_per_label; ++t) {
      QuditRegister copy = noisy;
      const Basis basis = rng.uniform_int(2) == 0 ? Basis::B1 : Basis::B2;
      std::vector<int> outcomes;
      const auto ids = copy.qudits();
      for (QuditId id : ids) outcomes.push_back(copy.measure_single(id, basis, rng).digit());
      const bool ok = basis == Basis::B1 ? check_c1(dim, outcomes, label.shifts[0]) : check_c2(dim, outcomes, label.v);
      ++result.perturbed_samples;
      if (!ok) ++result.perturbed_failures;
      if (!ok) ++fail_here;
    }
    if (fail_here == 0) ++converse_misses;
  }

  result.passed = result.failures == 0 && converse_misses == 0;
  text << "theorem-1 suite d=" << d << " parties=" << parties << ": " << result.samples << " honest samples, "
       << result.failures << " failures; " << result.perturbed_samples << " perturbed samples, "
       << result.perturbed_failures << " failures (" << converse_misses << " perturbed states never failed)";
  result.text = text.str();
  return result;
}

}  // namespace qsms
