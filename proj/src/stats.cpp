#include "qsms/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <stdexcept>

namespace qsms {

double chi_square_p_value(double statistic, int dof) {
  if (dof < 1) throw std::invalid_argument("chi_square_p_value: dof must be positive");
  if (statistic <= 0.0) return 1.0;
  const boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

ChiSquare chi_square_uniform(std::span<const long long> counts) {
  if (counts.size() < 2) throw std::invalid_argument("chi_square_uniform: need at least two cells");
  long long total = 0;
  for (long long c : counts) total += c;
  if (total <= 0) throw std::invalid_argument("chi_square_uniform: empty sample");
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  double stat = 0.0;
  for (long long c : counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  const int dof = static_cast<int>(counts.size()) - 1;
  return ChiSquare{stat, dof, chi_square_p_value(stat, dof)};
}

ChiSquare chi_square_two_sample(std::span<const long long> a, std::span<const long long> b) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("chi_square_two_sample: mismatched cells");
  long long total_a = 0, total_b = 0;
  for (long long c : a) total_a += c;
  for (long long c : b) total_b += c;
  if (total_a <= 0 || total_b <= 0) throw std::invalid_argument("chi_square_two_sample: empty sample");
  const double grand = static_cast<double>(total_a + total_b);
  double stat = 0.0;
  int live_cells = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double cell = static_cast<double>(a[i] + b[i]);
    if (cell == 0.0) continue;
    ++live_cells;
    const double ea = cell * static_cast<double>(total_a) / grand;
    const double eb = cell * static_cast<double>(total_b) / grand;
    const double da = static_cast<double>(a[i]) - ea;
    const double db = static_cast<double>(b[i]) - eb;
    stat += da * da / ea + db * db / eb;
  }
  if (live_cells < 2) throw std::invalid_argument("chi_square_two_sample: not enough occupied cells");
  const int dof = live_cells - 1;
  return ChiSquare{stat, dof, chi_square_p_value(stat, dof)};
}

double mutual_information_bits(const std::vector<std::vector<long long>>& joint) {
  if (joint.empty() || joint[0].empty()) throw std::invalid_argument("mutual_information_bits: empty table");
  const std::size_t rows = joint.size();
  const std::size_t cols = joint[0].size();
  long long total = 0;
  std::vector<long long> row_sum(rows, 0), col_sum(cols, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    if (joint[r].size() != cols) throw std::invalid_argument("mutual_information_bits: ragged table");
    for (std::size_t c = 0; c < cols; ++c) {
      row_sum[r] += joint[r][c];
      col_sum[c] += joint[r][c];
      total += joint[r][c];
    }
  }
  if (total <= 0) throw std::invalid_argument("mutual_information_bits: empty sample");
  double mi = 0.0;
  const double n = static_cast<double>(total);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (joint[r][c] == 0) continue;
      const double pxy = static_cast<double>(joint[r][c]) / n;
      const double px = static_cast<double>(row_sum[r]) / n;
      const double py = static_cast<double>(col_sum[c]) / n;
      mi += pxy * std::log2(pxy / (px * py));
    }
  }
  return mi < 0.0 ? 0.0 : mi;
}

}  // namespace qsms
