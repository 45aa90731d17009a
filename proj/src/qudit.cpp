#include "qsms/qudit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsms {

namespace {

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

constexpr std::size_t kMaxAmplitudes = 100000000;  // matches the engine memory guard

}  // namespace

int MeasurementOutcome::digit() const {
  if (kind != Kind::SingleB1 && kind != Kind::SingleB2) throw std::logic_error("outcome is not a single-qudit result");
  return values.at(0);
}

BellLabel MeasurementOutcome::bell() const {
  if (kind != Kind::Bell) throw std::logic_error("outcome is not a Bell result");
  return BellLabel{values.at(0), values.at(1)};
}

CatLabel MeasurementOutcome::cat() const {
  if (kind != Kind::Cat) throw std::logic_error("outcome is not a cat result");
  return CatLabel{values.at(0), std::vector<int>(values.begin() + 1, values.end())};
}

QuditRegister::QuditRegister(Dimension dim, std::vector<QuditId> ids, std::vector<Complex> amps)
    : dim_(dim), ids_(std::move(ids)), amps_(std::move(amps)) {
  if (amps_.size() != ipow(dim_.value(), static_cast<int>(ids_.size()))) {
    throw std::invalid_argument("amplitude count does not match qudit count");
  }
  if (amps_.size() > kMaxAmplitudes) throw std::invalid_argument("register exceeds the amplitude budget");
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    for (std::size_t j = i + 1; j < ids_.size(); ++j) {
      if (ids_[i] == ids_[j]) throw std::invalid_argument("duplicate qudit id in register");
    }
  }
  if (std::abs(norm() - 1.0) > kNormTolerance) throw std::invalid_argument("register state must have unit norm");
}

QuditRegister QuditRegister::basis_state(Dimension dim, std::vector<QuditId> ids, std::span<const int> digits) {
  if (ids.size() != digits.size()) throw std::invalid_argument("basis_state: one digit per qudit required");
  std::size_t index = 0;
  for (int dgt : digits) {
    dim.require_digit(dgt);
    index = index * static_cast<std::size_t>(dim.value()) + static_cast<std::size_t>(dgt);
  }
  std::vector<Complex> amps(ipow(dim.value(), static_cast<int>(ids.size())), Complex{0.0, 0.0});
  amps[index] = Complex{1.0, 0.0};
  return QuditRegister(dim, std::move(ids), std::move(amps));
}

bool QuditRegister::holds(QuditId id) const {
  return std::find(ids_.begin(), ids_.end(), id) != ids_.end();
}

int QuditRegister::position_of(QuditId id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) throw std::invalid_argument("register does not hold the requested qudit");
  return static_cast<int>(it - ids_.begin());
}

std::size_t QuditRegister::stride_of(int pos) const {
  return ipow(dim_.value(), qudit_count() - 1 - pos);
}

int QuditRegister::digit_at(std::size_t index, int pos) const {
  return static_cast<int>((index / stride_of(pos)) % static_cast<std::size_t>(dim_.value()));
}

Complex QuditRegister::amplitude(std::span<const int> digits) const {
  if (static_cast<int>(digits.size()) != qudit_count()) throw std::invalid_argument("amplitude: one digit per qudit required");
  std::size_t index = 0;
  for (int dgt : digits) {
    dim_.require_digit(dgt);
    index = index * static_cast<std::size_t>(dim_.value()) + static_cast<std::size_t>(dgt);
  }
  return amps_[index];
}

void QuditRegister::apply_shift(QuditId id, int t) {
  const int d = dim_.value();
  t = dim_.reduce(t);
  if (t == 0) return;
  const int pos = position_of(id);
  const std::size_t s = stride_of(pos);
  const std::size_t block = s * static_cast<std::size_t>(d);
  std::vector<Complex> tmp(static_cast<std::size_t>(d));
  for (std::size_t outer = 0; outer < amps_.size(); outer += block) {
    for (std::size_t inner = 0; inner < s; ++inner) {
      const std::size_t base = outer + inner;
      for (int j = 0; j < d; ++j) tmp[static_cast<std::size_t>(j)] = amps_[base + static_cast<std::size_t>(j) * s];
      for (int j = 0; j < d; ++j) amps_[base + static_cast<std::size_t>(dim_.add(j, t)) * s] = tmp[static_cast<std::size_t>(j)];
    }
  }
}

void QuditRegister::apply_clock(QuditId id, int t) {
  const int d = dim_.value();
  t = dim_.reduce(t);
  if (t == 0) return;
  const int pos = position_of(id);
  const std::size_t s = stride_of(pos);
  const std::size_t block = s * static_cast<std::size_t>(d);
  std::vector<Complex> phases(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) phases[static_cast<std::size_t>(j)] = dim_.phase(static_cast<long long>(j) * t);
  for (std::size_t outer = 0; outer < amps_.size(); outer += block) {
    for (std::size_t inner = 0; inner < s; ++inner) {
      const std::size_t base = outer + inner;
      for (int j = 0; j < d; ++j) amps_[base + static_cast<std::size_t>(j) * s] *= phases[static_cast<std::size_t>(j)];
    }
  }
}

namespace {

// Shared axis transform for F and its inverse: new[j] = 1/sqrt(d) * sum_k phase(sign*j*k) old[k].
void fourier_axis(std::vector<Complex>& amps, const Dimension& dim, std::size_t stride, int sign) {
  const int d = dim.value();
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Complex> table(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      table[static_cast<std::size_t>(j * d + k)] = dim.phase(static_cast<long long>(sign) * j * k) * scale;
    }
  }
  const std::size_t block = stride * static_cast<std::size_t>(d);
  std::vector<Complex> tmp(static_cast<std::size_t>(d));
  for (std::size_t outer = 0; outer < amps.size(); outer += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      const std::size_t base = outer + inner;
      for (int k = 0; k < d; ++k) tmp[static_cast<std::size_t>(k)] = amps[base + static_cast<std::size_t>(k) * stride];
      for (int j = 0; j < d; ++j) {
        Complex acc{0.0, 0.0};
        for (int k = 0; k < d; ++k) acc += table[static_cast<std::size_t>(j * d + k)] * tmp[static_cast<std::size_t>(k)];
        amps[base + static_cast<std::size_t>(j) * stride] = acc;
      }
    }
  }
}

}  // namespace

void QuditRegister::apply_fourier(QuditId id) { fourier_axis(amps_, dim_, stride_of(position_of(id)), +1); }

void QuditRegister::apply_fourier_inverse(QuditId id) { fourier_axis(amps_, dim_, stride_of(position_of(id)), -1); }

void QuditRegister::apply_unitary(std::span<const QuditId> ids, const std::vector<Complex>& matrix) {
  const int d = dim_.value();
  const int m = static_cast<int>(ids.size());
  if (m < 1) throw std::invalid_argument("apply_unitary: at least one target qudit");
  const std::size_t dm = ipow(d, m);
  if (matrix.size() != dm * dm) throw std::invalid_argument("apply_unitary: matrix size does not match target count");
  std::vector<std::size_t> strides(static_cast<std::size_t>(m));
  std::vector<int> targets(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    targets[static_cast<std::size_t>(i)] = position_of(ids[i]);
    strides[static_cast<std::size_t>(i)] = stride_of(targets[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (targets[static_cast<std::size_t>(i)] == targets[static_cast<std::size_t>(j)]) {
        throw std::invalid_argument("apply_unitary: repeated target qudit");
      }
    }
  }
  // Offsets of every combination of target digits, big-endian in target order.
  std::vector<std::size_t> combo_offset(dm, 0);
  for (std::size_t c = 0; c < dm; ++c) {
    std::size_t rem = c;
    for (int i = m - 1; i >= 0; --i) {
      combo_offset[c] += (rem % static_cast<std::size_t>(d)) * strides[static_cast<std::size_t>(i)];
      rem /= static_cast<std::size_t>(d);
    }
  }
  const auto rest = rest_positions(targets);
  const std::size_t rest_count = amps_.size() / dm;
  std::vector<Complex> x(dm), y(dm);
  for (std::size_t rIdx = 0; rIdx < rest_count; ++rIdx) {
    std::size_t base = 0;
    std::size_t rem = rIdx;
    for (std::size_t i = rest.size(); i-- > 0;) {
      base += (rem % static_cast<std::size_t>(d)) * stride_of(rest[i]);
      rem /= static_cast<std::size_t>(d);
    }
    for (std::size_t c = 0; c < dm; ++c) x[c] = amps_[base + combo_offset[c]];
    for (std::size_t row = 0; row < dm; ++row) {
      Complex acc{0.0, 0.0};
      const Complex* mrow = &matrix[row * dm];
      for (std::size_t col = 0; col < dm; ++col) acc += mrow[col] * x[col];
      y[row] = acc;
    }
    for (std::size_t c = 0; c < dm; ++c) amps_[base + combo_offset[c]] = y[c];
  }
}

std::vector<int> QuditRegister::rest_positions(std::span<const int> measured) const {
  std::vector<int> rest;
  rest.reserve(ids_.size());
  for (int p = 0; p < qudit_count(); ++p) {
    if (std::find(measured.begin(), measured.end(), p) == measured.end()) rest.push_back(p);
  }
  return rest;
}

std::vector<double> QuditRegister::digit_probabilities(QuditId id, Basis basis) const {
  if (basis == Basis::B2) {
    QuditRegister rotated = *this;
    rotated.apply_fourier(id);
    return rotated.digit_probabilities(id, Basis::B1);
  }
  const int d = dim_.value();
  const int pos = position_of(id);
  std::vector<double> probs(static_cast<std::size_t>(d), 0.0);
  for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
    probs[static_cast<std::size_t>(digit_at(idx, pos))] += std::norm(amps_[idx]);
  }
  return probs;
}

int QuditRegister::collapse_single(QuditId id, Basis basis, Rng& rng) {
  if (basis == Basis::B2) {
    apply_fourier(id);
    const int outcome = collapse_single(id, Basis::B1, rng);
    apply_fourier_inverse(id);
    return outcome;
  }
  const int pos = position_of(id);
  const auto probs = digit_probabilities(id, Basis::B1);
  const int outcome = static_cast<int>(rng.sample_discrete(probs, kProbabilityFloor));
  const double mass = probs[static_cast<std::size_t>(outcome)];
  if (mass < kProbabilityFloor) throw std::logic_error("collapse selected a branch with no probability mass");
  const double scale = 1.0 / std::sqrt(mass);
  for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
    if (digit_at(idx, pos) == outcome) {
      amps_[idx] *= scale;
    } else {
      amps_[idx] = Complex{0.0, 0.0};
    }
  }
  return outcome;
}

void QuditRegister::remove_collapsed(int pos, int digit) {
  const std::size_t s = stride_of(pos);
  const std::size_t block = s * static_cast<std::size_t>(dim_.value());
  std::vector<Complex> next(amps_.size() / static_cast<std::size_t>(dim_.value()));
  std::size_t out = 0;
  for (std::size_t outer = 0; outer < amps_.size(); outer += block) {
    for (std::size_t inner = 0; inner < s; ++inner) {
      next[out++] = amps_[outer + inner + static_cast<std::size_t>(digit) * s];
    }
  }
  amps_ = std::move(next);
  ids_.erase(ids_.begin() + pos);
}

MeasurementOutcome QuditRegister::measure_single(QuditId id, Basis basis, Rng& rng) {
  if (basis == Basis::B2) apply_fourier(id);  // the removed axis needs no restoring rotation
  const int outcome = collapse_single(id, Basis::B1, rng);
  remove_collapsed(position_of(id), outcome);
  return MeasurementOutcome{basis == Basis::B1 ? MeasurementOutcome::Kind::SingleB1 : MeasurementOutcome::Kind::SingleB2,
                            {id},
                            {outcome}};
}

std::vector<std::vector<Complex>> QuditRegister::phased_shift_branches(std::span<const int> positions) const {
  const int d = dim_.value();
  const int m = static_cast<int>(positions.size());
  const std::size_t label_count = ipow(d, m);        // phase label x shift labels
  const std::size_t shift_count = label_count / static_cast<std::size_t>(d);
  const std::size_t rest_count = amps_.size() / label_count;
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));

  std::vector<std::size_t> strides(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) strides[i] = stride_of(positions[i]);
  const auto rest = rest_positions(positions);

  // conj_phase[v*d + j] = conj(phase(j*v)), the projector coefficient.
  std::vector<Complex> conj_phase(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
  for (int v = 0; v < d; ++v) {
    for (int j = 0; j < d; ++j) {
      conj_phase[static_cast<std::size_t>(v * d + j)] = dim_.phase(-static_cast<long long>(j) * v) * scale;
    }
  }

  std::vector<std::vector<Complex>> branches(label_count, std::vector<Complex>(rest_count));
  std::vector<int> shifts(static_cast<std::size_t>(m > 0 ? m - 1 : 0));
  std::vector<Complex> along(static_cast<std::size_t>(d));
  for (std::size_t rIdx = 0; rIdx < rest_count; ++rIdx) {
    std::size_t base = 0;
    std::size_t rem = rIdx;
    for (std::size_t i = rest.size(); i-- > 0;) {
      base += (rem % static_cast<std::size_t>(d)) * stride_of(rest[i]);
      rem /= static_cast<std::size_t>(d);
    }
    for (std::size_t sIdx = 0; sIdx < shift_count; ++sIdx) {
      std::size_t srem = sIdx;
      for (std::size_t i = shifts.size(); i-- > 0;) {
        shifts[i] = static_cast<int>(srem % static_cast<std::size_t>(d));
        srem /= static_cast<std::size_t>(d);
      }
      // Amplitudes along the diagonal |j, j+u_2, .., j+u_m>.
      for (int j = 0; j < d; ++j) {
        std::size_t addr = base + static_cast<std::size_t>(j) * strides[0];
        for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
          addr += static_cast<std::size_t>(dim_.add(j, shifts[i])) * strides[i + 1];
        }
        along[static_cast<std::size_t>(j)] = amps_[addr];
      }
      for (int v = 0; v < d; ++v) {
        Complex acc{0.0, 0.0};
        for (int j = 0; j < d; ++j) acc += conj_phase[static_cast<std::size_t>(v * d + j)] * along[static_cast<std::size_t>(j)];
        branches[static_cast<std::size_t>(v) * shift_count + sIdx][rIdx] = acc;
      }
    }
  }
  return branches;
}

namespace {

double branch_weight(const std::vector<Complex>& branch) {
  double w = 0.0;
  for (const Complex& c : branch) w += std::norm(c);
  return w;
}

}  // namespace

MeasurementOutcome QuditRegister::measure_bell(QuditId first, QuditId second, Rng& rng) {
  if (first == second) throw std::invalid_argument("measure_bell: qudits must differ");
  const int d = dim_.value();
  const int p1 = position_of(first);
  const int p2 = position_of(second);
  const int positions[2] = {p1, p2};
  auto branches = phased_shift_branches(positions);
  std::vector<double> weights(branches.size());
  for (std::size_t i = 0; i < branches.size(); ++i) weights[i] = branch_weight(branches[i]);
  const std::size_t pick = rng.sample_discrete(weights, kProbabilityFloor);
  const double scale = 1.0 / std::sqrt(weights[pick]);
  amps_ = std::move(branches[pick]);
  for (Complex& c : amps_) c *= scale;
  ids_.erase(ids_.begin() + std::max(p1, p2));
  ids_.erase(ids_.begin() + std::min(p1, p2));
  const int r = static_cast<int>(pick) / d;
  const int w = static_cast<int>(pick) % d;
  return MeasurementOutcome{MeasurementOutcome::Kind::Bell, {first, second}, {r, w}};
}

double QuditRegister::project_bell(QuditId first, QuditId second, BellLabel label) {
  if (first == second) throw std::invalid_argument("project_bell: qudits must differ");
  dim_.require_digit(label.r);
  dim_.require_digit(label.w);
  const int d = dim_.value();
  const int p1 = position_of(first);
  const int p2 = position_of(second);
  const int positions[2] = {p1, p2};
  auto branches = phased_shift_branches(positions);
  const std::size_t pick = static_cast<std::size_t>(label.r) * static_cast<std::size_t>(d) + static_cast<std::size_t>(label.w);
  const double weight = branch_weight(branches[pick]);
  if (weight < kProbabilityFloor) throw std::invalid_argument("project_bell: branch carries no probability mass");
  const double scale = 1.0 / std::sqrt(weight);
  amps_ = std::move(branches[pick]);
  for (Complex& c : amps_) c *= scale;
  ids_.erase(ids_.begin() + std::max(p1, p2));
  ids_.erase(ids_.begin() + std::min(p1, p2));
  return weight;
}

MeasurementOutcome QuditRegister::measure_cat(std::span<const QuditId> ids, Rng& rng) {
  const int m = static_cast<int>(ids.size());
  if (m < 2) throw std::invalid_argument("measure_cat: at least two qudits required");
  const int d = dim_.value();
  std::vector<int> positions(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) positions[i] = position_of(ids[i]);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if (positions[i] == positions[j]) throw std::invalid_argument("measure_cat: repeated qudit");
    }
  }
  auto branches = phased_shift_branches(positions);
  std::vector<double> weights(branches.size());
  for (std::size_t i = 0; i < branches.size(); ++i) weights[i] = branch_weight(branches[i]);
  const std::size_t pick = rng.sample_discrete(weights, kProbabilityFloor);
  const double scale = 1.0 / std::sqrt(weights[pick]);
  amps_ = std::move(branches[pick]);
  for (Complex& c : amps_) c *= scale;
  std::vector<int> order(positions.begin(), positions.end());
  std::sort(order.begin(), order.end(), std::greater<int>());
  for (int p : order) ids_.erase(ids_.begin() + p);
  // Decode (v, u_2..u_m) from the branch index.
  std::vector<int> values(static_cast<std::size_t>(m));
  std::size_t rem = pick;
  for (std::size_t i = values.size(); i-- > 0;) {
    values[i] = static_cast<int>(rem % static_cast<std::size_t>(d));
    rem /= static_cast<std::size_t>(d);
  }
  std::vector<QuditId> measured(ids.begin(), ids.end());
  return MeasurementOutcome{MeasurementOutcome::Kind::Cat, std::move(measured), std::move(values)};
}

void QuditRegister::attach(QuditRegister other) {
  if (other.dim_ != dim_) throw std::invalid_argument("attach: dimensions differ");
  for (const QuditId& id : other.ids_) {
    if (holds(id)) throw std::invalid_argument("attach: qudit id already present");
  }
  if (amps_.size() * other.amps_.size() > kMaxAmplitudes) throw std::invalid_argument("attach: register exceeds the amplitude budget");
  std::vector<Complex> next(amps_.size() * other.amps_.size());
  std::size_t out = 0;
  for (const Complex& a : amps_) {
    for (const Complex& b : other.amps_) next[out++] = a * b;
  }
  amps_ = std::move(next);
  ids_.insert(ids_.end(), other.ids_.begin(), other.ids_.end());
}

double QuditRegister::norm() const {
  double n = 0.0;
  for (const Complex& c : amps_) n += std::norm(c);
  return std::sqrt(n);
}

Complex QuditRegister::inner_product(const QuditRegister& other) const {
  if (other.dim_ != dim_ || other.ids_.size() != ids_.size()) {
    throw std::invalid_argument("inner_product: registers are not comparable");
  }
  const int k = qudit_count();
  std::vector<int> other_pos(static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p) other_pos[static_cast<std::size_t>(p)] = other.position_of(ids_[static_cast<std::size_t>(p)]);
  Complex acc{0.0, 0.0};
  std::vector<std::size_t> other_stride(static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p) other_stride[static_cast<std::size_t>(p)] = other.stride_of(other_pos[static_cast<std::size_t>(p)]);
  for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
    std::size_t oidx = 0;
    for (int p = 0; p < k; ++p) oidx += static_cast<std::size_t>(digit_at(idx, p)) * other_stride[static_cast<std::size_t>(p)];
    acc += std::conj(other.amps_[oidx]) * amps_[idx];
  }
  return acc;
}

double QuditRegister::fidelity(const QuditRegister& other) const { return std::abs(inner_product(other)); }

QuditRegister make_register(Dimension dim, std::span<const int> digits) {
  if (digits.empty()) throw std::invalid_argument("make_register: at least one qudit required");
  std::vector<QuditId> ids(digits.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = QuditId{static_cast<std::uint32_t>(i)};
  return QuditRegister::basis_state(dim, std::move(ids), digits);
}

}  // namespace qsms
