#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// A CycNum stores its value in the power basis 1, z, ..., z^(phi(N)-1) of
// Q(z), z = exp(2 pi i / N), reduced modulo the N-th cyclotomic polynomial.
// Values are always kept at their minimal conductor, so two CycNums are
// equal iff their conductors and coefficient vectors coincide. Conductors
// congruent to 2 mod 4 never occur (Q(zeta_2k) = Q(zeta_k) for odd k).

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace eigenposet {

/// Euler's totient.
int euler_phi(int n);

/// exp(2 pi i exponent / order). `order` must be positive.
struct RootOfUnity {
  int order = 1;
  long exponent = 0;

  /// Multiplicative order of the represented root.
  int exact_order() const;
  bool is_primitive() const { return exact_order() == order; }

  /// Parses "m:k".
  static RootOfUnity parse(std::string_view text);
  std::string to_string() const;

  friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b);
};

class CycNum {
 public:
  CycNum() : conductor_(1), coeffs_(1) {}
  CycNum(int value) : conductor_(1), coeffs_{mpq_class(value)} {}  // NOLINT
  CycNum(long value) : conductor_(1), coeffs_{mpq_class(value)} {}  // NOLINT
  CycNum(const mpq_class& value) : conductor_(1), coeffs_{value} {}  // NOLINT

  /// Value sum_j coeffs[j] z_N^j for j < phi(N), any positive N.
  static CycNum from_power_basis(int conductor, std::vector<mpq_class> coeffs);
  static CycNum root_of_unity(int order, long exponent);

  int conductor() const { return conductor_; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }

  bool is_zero() const { return conductor_ == 1 && sgn(coeffs_[0]) == 0; }
  bool is_one() const { return conductor_ == 1 && coeffs_[0] == 1; }
  bool is_rational() const { return conductor_ == 1; }
  /// Throws InvalidArgument when the value is not rational.
  const mpq_class& rational() const;

  CycNum& operator+=(const CycNum& other);
  CycNum& operator-=(const CycNum& other);
  CycNum& operator*=(const CycNum& other);
  CycNum& operator/=(const CycNum& other);

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
  friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }
  friend CycNum operator-(CycNum a);

  friend bool operator==(const CycNum& a, const CycNum& b) {
    return a.conductor_ == b.conductor_ && a.coeffs_ == b.coeffs_;
  }
  /// Arbitrary total order (conductor, then coefficients); not a field order.
  friend bool operator<(const CycNum& a, const CycNum& b);

  /// "cyc(N; c0, c1, ...)" with rationals written "p/q".
  std::string to_string() const;
  /// Accepts the to_string format, or a bare rational such as "-3/4".
  static CycNum parse(std::string_view text);

  std::complex<double> to_complex() const;
  std::size_t hash() const;

 private:
  CycNum(int conductor, std::vector<mpq_class> coeffs)
      : conductor_(conductor), coeffs_(std::move(coeffs)) {}

  void promote_to(int conductor);
  void reduce();

  int conductor_;
  std::vector<mpq_class> coeffs_;
};

CycNum add(const CycNum& a, const CycNum& b);
CycNum mul(const CycNum& a, const CycNum& b);
/// Throws DivisionByZero on zero.
CycNum inv(const CycNum& a);
/// Complex conjugation z_N -> z_N^(N-1).
CycNum conj(const CycNum& a);
CycNum embed(const RootOfUnity& r);
inline bool is_zero(const CycNum& a) { return a.is_zero(); }

/// x^k by repeated squaring; negative k inverts.
CycNum pow(const CycNum& x, long k);

std::ostream& operator<<(std::ostream& os, const CycNum& x);

/// Power-basis coordinates of z_N^k for k in [0, N); N must not be 2 mod 4.
const std::vector<std::vector<mpz_class>>& cyclotomic_power_table(int conductor);
/// Integer coefficients of the N-th cyclotomic polynomial, constant first.
std::vector<mpz_class> cyclotomic_polynomial(int n);

}  // namespace eigenposet

template <>
struct std::hash<eigenposet::CycNum> {
  std::size_t operator()(const eigenposet::CycNum& x) const { return x.hash(); }
};
