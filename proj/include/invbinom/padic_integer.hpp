#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "invbinom/rational.hpp"

namespace invbinom {

/// A p-adic integer given by a rule for its base-p digits.
///
/// - rational: a rational with denominator prime to p;
/// - digits:   a finite prefix followed by a repeating period (an empty period
///             means the tail is all zeros);
/// - sparse2:  x = sum 2^{e_i} over a strictly increasing exponent list
///             (p = 2 only; the list is the known prefix of the expansion).
class PadicIntegerSpec {
 public:
  enum class Form { rational, digits, sparse2 };

  static PadicIntegerSpec from_rational(const Rational& q, Prime p);
  static PadicIntegerSpec from_digits(Prime p, std::vector<std::uint64_t> prefix,
                                      std::vector<std::uint64_t> period = {});
  static PadicIntegerSpec from_sparse2(std::vector<std::uint64_t> exponents, Prime p = 2);

  Prime prime() const { return p_; }
  Form form() const { return form_; }
  const Rational& rational_value() const { return value_; }
  const std::vector<std::uint64_t>& prefix() const { return prefix_; }
  const std::vector<std::uint64_t>& period() const { return period_; }
  const std::vector<std::uint64_t>& exponents() const { return exponents_; }

  /// The first `count` digits.
  std::vector<std::uint64_t> digits(std::uint64_t count) const;

  /// The rational this spec denotes, when it has one (rational form, or an
  /// eventually periodic digit string).
  std::optional<Rational> as_rational() const;

  /// True when x is a natural number (finitely many nonzero digits).
  bool is_natural() const;

  std::string describe() const;

 private:
  Prime p_ = 2;
  Form form_ = Form::digits;
  Rational value_;
  std::vector<std::uint64_t> prefix_;
  std::vector<std::uint64_t> period_;
  std::vector<std::uint64_t> exponents_;
};

/// Base-p digits e_0..e_{count-1} of q in Z_p. Throws "not a p-adic integer"
/// when p divides the denominator.
std::vector<std::uint64_t> digits_of_rational(const Rational& q, Prime p, std::uint64_t count);

/// x_n = sum_{i<=n} e_i p^i.
BigInt partial_sum(const PadicIntegerSpec& spec, std::uint64_t n);

}  // namespace invbinom
