#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>

namespace qsms {

using Complex = std::complex<double>;

// Qudit level d with the mod-d arithmetic the protocol runs on. Everything
// that says "plus" or "minus" about digits below means mod-d.
class Dimension {
 public:
  explicit Dimension(int d) : d_(d) {
    if (d < 2) throw std::invalid_argument("qudit dimension must be at least 2");
  }

  int value() const { return d_; }

  bool valid_digit(int a) const { return a >= 0 && a < d_; }

  void require_digit(int a) const {
    if (!valid_digit(a)) throw std::invalid_argument("digit out of range for dimension");
  }

  int add(int a, int b) const { return reduce(static_cast<long long>(a) + b); }
  int sub(int a, int b) const { return reduce(static_cast<long long>(a) - b); }
  int neg(int a) const { return reduce(-static_cast<long long>(a)); }
  int mul(int a, int b) const { return reduce(static_cast<long long>(a) * b); }

  int reduce(long long a) const {
    long long r = a % d_;
    if (r < 0) r += d_;
    return static_cast<int>(r);
  }

  // Primitive d-th root of unity raised to the given power: exp(2*pi*i*k/d).
  Complex phase(long long k) const {
    long long r = k % d_;
    if (r < 0) r += d_;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / d_);
  }

  bool operator==(const Dimension& other) const { return d_ == other.d_; }
  bool operator!=(const Dimension& other) const { return d_ != other.d_; }

 private:
  int d_;
};

}  // namespace qsms
