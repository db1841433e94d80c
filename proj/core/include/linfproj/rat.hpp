#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace linfproj {

/// Exact rational number backed by GMP. Always stored in lowest terms with a
/// positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rat(std::int64_t num, std::int64_t den);

  /// Parses "p/q" or "p" (optional leading sign, decimal digits only).
  /// Throws ArithmeticError on malformed input or a zero denominator.
  static Rat parse(std::string_view text);

  static Rat from_mpq(mpq_class value);

  [[nodiscard]] const mpq_class& mpq() const { return value_; }
  [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }

  [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }

  [[nodiscard]] double to_double() const { return value_.get_d(); }

  /// "p/q", or "p" when the denominator is 1.
  [[nodiscard]] std::string to_string() const;

  Rat& operator+=(const Rat& rhs);
  Rat& operator-=(const Rat& rhs);
  Rat& operator*=(const Rat& rhs);
  Rat& operator/=(const Rat& rhs);

  friend Rat operator+(Rat lhs, const Rat& rhs) { return lhs += rhs; }
  friend Rat operator-(Rat lhs, const Rat& rhs) { return lhs -= rhs; }
  friend Rat operator*(Rat lhs, const Rat& rhs) { return lhs *= rhs; }
  friend Rat operator/(Rat lhs, const Rat& rhs) { return lhs /= rhs; }
  Rat operator-() const;

  friend bool operator==(const Rat& lhs, const Rat& rhs) {
    return lhs.value_ == rhs.value_;
  }
  friend std::strong_ordering operator<=>(const Rat& lhs, const Rat& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

Rat abs(const Rat& x);

/// x^k for k >= 0.
Rat pow(const Rat& x, unsigned k);

/// Exact square root when x is the square of a rational, otherwise nullopt.
std::optional<Rat> exact_sqrt(const Rat& x);

std::ostream& operator<<(std::ostream& os, const Rat& x);

}  // namespace linfproj
