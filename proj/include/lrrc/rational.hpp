#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lrrc {

// Exact rational on int64. All capacities, storage sizes, and cut values in
// this library are rationals so that equality checks against the closed-form
// expressions are exact. Magnitudes stay tiny (sums of n*alpha-scale terms),
// so int64 with normalization after every operation is plenty.
class Rat {
 public:
  constexpr Rat() : num_(0), den_(1) {}
  constexpr Rat(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rat(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }

  Rat operator+(const Rat& o) const { return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
  Rat operator-(const Rat& o) const { return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
  Rat operator*(const Rat& o) const { return Rat(num_ * o.num_, den_ * o.den_); }
  Rat operator/(const Rat& o) const {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    return Rat(num_ * o.den_, den_ * o.num_);
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }

  bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const {
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
  }
  bool operator<=(const Rat& o) const { return !(o < *this); }
  bool operator>(const Rat& o) const { return o < *this; }
  bool operator>=(const Rat& o) const { return !(*this < o); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "a" or "a/b".
  static Rat parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(std::stoll(text));
    return Rat(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  }

 private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_;
  std::int64_t den_;
};

inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace lrrc
