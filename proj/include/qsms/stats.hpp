#pragma once

#include <span>
#include <vector>

namespace qsms {

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

// Upper-tail probability of the chi-squared distribution.
double chi_square_p_value(double statistic, int dof);

// Goodness of fit against the uniform distribution over counts.size() cells.
ChiSquare chi_square_uniform(std::span<const long long> counts);

// Homogeneity test: were the two count vectors drawn from one distribution?
// Cells empty in both samples are dropped from the statistic.
ChiSquare chi_square_two_sample(std::span<const long long> a, std::span<const long long> b);

// Plug-in mutual information estimate, in bits, from a joint count table.
double mutual_information_bits(const std::vector<std::vector<long long>>& joint);

}  // namespace qsms
