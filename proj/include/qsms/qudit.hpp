#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "qsms/modmath.hpp"
#include "qsms/rng.hpp"

namespace qsms {

// Norm / equality tolerance for state checks, and the mass below which a
// projection branch counts as exactly zero.
inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kProbabilityFloor = 1e-12;

// B1 is the computational basis. B2 is the Fourier basis; an outcome j in B2
// labels the basis vector obtained by applying F to the register qudit and
// reading the computational digit. With that labeling, B1 outcomes of a cat
// state satisfy k_0 + u = k_i and B2 outcomes satisfy sum(k_i) + v = 0, the
// two conditions the detection rounds test.
enum class Basis { B1, B2 };

// Opaque handle for a qudit. Registers address qudits by id, not position,
// because measurements remove qudits and custody moves them between actors.
struct QuditId {
  std::uint32_t value = 0;
  auto operator<=>(const QuditId&) const = default;
};

// Bell-state label (r, w): phase r, shift w.
struct BellLabel {
  int r = 0;
  int w = 0;
  bool operator==(const BellLabel&) const = default;
};

// Cat-state label over k qudits: phase v plus k-1 shift entries, one per
// qudit after the leading one.
struct CatLabel {
  int v = 0;
  std::vector<int> shifts;
  bool operator==(const CatLabel&) const = default;
};

struct MeasurementOutcome {
  enum class Kind { SingleB1, SingleB2, Bell, Cat };
  Kind kind = Kind::SingleB1;
  std::vector<QuditId> qudits;
  std::vector<int> values;  // 1 entry for single, (r,w) for Bell, (v,u...) for cat

  int digit() const;
  BellLabel bell() const;
  CatLabel cat() const;
};

// Dense state vector over k qudits of equal dimension d. Indexing is
// big-endian: the first qudit in `qudits()` is the most significant digit.
// States are kept at unit norm; measurement operations collapse and, except
// for collapse_single, remove the measured qudits from the register.
class QuditRegister {
 public:
  QuditRegister(Dimension dim, std::vector<QuditId> ids, std::vector<Complex> amps);

  static QuditRegister basis_state(Dimension dim, std::vector<QuditId> ids, std::span<const int> digits);

  Dimension dim() const { return dim_; }
  int qudit_count() const { return static_cast<int>(ids_.size()); }
  const std::vector<QuditId>& qudits() const { return ids_; }
  bool holds(QuditId id) const;
  std::size_t size() const { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  Complex amplitude(std::span<const int> digits) const;

  // Single-qudit gates.
  void apply_fourier(QuditId id);
  void apply_fourier_inverse(QuditId id);
  void apply_shift(QuditId id, int t);  // |j> -> |j+t>
  void apply_clock(QuditId id, int t);  // |j> -> phase(j*t) |j>

  // General unitary on an ordered group of qudits; `matrix` is row-major of
  // size d^m x d^m where m = ids.size(), rows/cols indexed big-endian in the
  // given qudit order.
  void apply_unitary(std::span<const QuditId> ids, const std::vector<Complex>& matrix);

  // Outcome distribution of a single-qudit measurement, without collapsing.
  std::vector<double> digit_probabilities(QuditId id, Basis basis) const;

  // Collapse in place, keep the qudit (post-measurement state stays in the
  // register). Repeating the same measurement reproduces the outcome.
  int collapse_single(QuditId id, Basis basis, Rng& rng);

  // Measure and remove the qudit.
  MeasurementOutcome measure_single(QuditId id, Basis basis, Rng& rng);

  // Project (first, second) onto the generalized Bell basis
  // |Phi(r,w)> = 1/sqrt(d) sum_j phase(j*r) |j>|j+w>, first qudit leading.
  // Both qudits are removed.
  MeasurementOutcome measure_bell(QuditId first, QuditId second, Rng& rng);

  // Collapse onto one chosen Bell branch; returns the branch probability.
  // Throws if the branch carries no mass.
  double project_bell(QuditId first, QuditId second, BellLabel label);

  // Project an ordered group of k >= 2 qudits onto the cat basis
  // |Psi(v,u_2..u_k)> = 1/sqrt(d) sum_j phase(j*v) |j, j+u_2, .., j+u_k>.
  // Measured qudits are removed; any others stay.
  MeasurementOutcome measure_cat(std::span<const QuditId> ids, Rng& rng);

  // Tensor product; id sets must be disjoint. The other register's qudits are
  // appended after this register's.
  void attach(QuditRegister other);

  double norm() const;

  // <other|this> with digit axes aligned by qudit id; both registers must
  // hold exactly the same id set (order may differ).
  Complex inner_product(const QuditRegister& other) const;
  double fidelity(const QuditRegister& other) const;

 private:
  int position_of(QuditId id) const;
  std::size_t stride_of(int pos) const;
  int digit_at(std::size_t index, int pos) const;
  void remove_collapsed(int pos, int digit);
  std::vector<int> rest_positions(std::span<const int> measured) const;
  // Branch amplitudes for every label of a Bell (m=2) or cat (m>=2) projection.
  std::vector<std::vector<Complex>> phased_shift_branches(std::span<const int> positions) const;

  Dimension dim_;
  std::vector<QuditId> ids_;
  std::vector<Complex> amps_;
};

// Register over `digits.size()` qudits prepared in the given computational
// basis state, with ids 0, 1, 2, ...
QuditRegister make_register(Dimension dim, std::span<const int> digits);

}  // namespace qsms
