#include "linfproj/rat.hpp"

#include <cctype>
#include <ostream>

#include "linfproj/errors.hpp"

namespace linfproj {
namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rat::Rat(std::int64_t value) : value_(static_cast<long>(value)) {}

Rat::Rat(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  value_ = mpq_class(mpz_class(static_cast<long>(num)),
                     mpz_class(static_cast<long>(den)));
  value_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  // Whitespace is tolerated around the literal but not inside it.
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);

  const auto slash = text.find('/');
  const std::string_view num_part = text.substr(0, slash);
  if (!is_integer_literal(num_part)) {
    throw ArithmeticError("malformed rational literal '" + std::string(text) + "'");
  }
  Rat r;
  if (slash == std::string_view::npos) {
    r.value_ = mpq_class(parse_integer(num_part));
    return r;
  }
  const std::string_view den_part = text.substr(slash + 1);
  if (!is_integer_literal(den_part) || den_part.front() == '-' ||
      den_part.front() == '+') {
    throw ArithmeticError("malformed rational literal '" + std::string(text) + "'");
  }
  const mpz_class den = parse_integer(den_part);
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  r.value_ = mpq_class(parse_integer(num_part), den);
  r.value_.canonicalize();
  return r;
}

Rat Rat::from_mpq(mpq_class value) {
  Rat r;
  r.value_ = std::move(value);
  r.value_.canonicalize();
  return r;
}

std::string Rat::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rat& Rat::operator+=(const Rat& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rat& Rat::operator-=(const Rat& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rat& Rat::operator*=(const Rat& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rat& Rat::operator/=(const Rat& rhs) {
  if (rhs.is_zero()) throw ArithmeticError("division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rat Rat::operator-() const {
  Rat r;
  r.value_ = -value_;
  return r;
}

Rat abs(const Rat& x) { return x.sign() < 0 ? -x : x; }

Rat pow(const Rat& x, unsigned k) {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), x.mpq().get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), x.mpq().get_den_mpz_t(), k);
  return Rat::from_mpq(mpq_class(num, den));
}

std::optional<Rat> exact_sqrt(const Rat& x) {
  if (x.sign() < 0) return std::nullopt;
  const mpz_class num = x.numerator();
  const mpz_class den = x.denominator();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 ||
      mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  return Rat::from_mpq(mpq_class(sqrt(num), sqrt(den)));
}

std::ostream& operator<<(std::ostream& os, const Rat& x) {
  return os << x.to_string();
}

}  // namespace linfproj
