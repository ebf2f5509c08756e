#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tdi {

// A half-integer, stored as twice its value.
struct HalfInt {
  int64_t twice = 0;

  static constexpr HalfInt from_int(int64_t v) { return HalfInt{2 * v}; }
  static constexpr HalfInt from_halves(int64_t h) { return HalfInt{h}; }

  bool is_integer() const { return twice % 2 == 0; }
  int64_t floor() const { return twice >= 0 ? twice / 2 : -((-twice + 1) / 2); }
  std::string str() const;

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt{a.twice + b.twice}; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt{a.twice - b.twice}; }
  friend constexpr HalfInt operator-(HalfInt a) { return HalfInt{-a.twice}; }
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;
};

// Parses "7", "-3", "5/2", "2.5".
HalfInt parse_half(const std::string& s);

// Orders at or beyond this are treated as exact (no truncation).
inline constexpr int64_t kExactOrder = INT64_C(1) << 60;

// Laurent series in q^(1/2) with integer coefficients, exact through a truncation order.
// Exponents and orders are counted in units of q^(1/2).
class TruncatedSeries {
public:
  TruncatedSeries() = default;  // exact zero

  static TruncatedSeries zero(int64_t order_h);
  static TruncatedSeries one(int64_t order_h = kExactOrder);
  static TruncatedSeries monomial(const mpz_class& c, int64_t exp_h, int64_t order_h = kExactOrder);
  static TruncatedSeries from_terms(const std::map<int64_t, mpz_class>& terms, int64_t order_h);
  // Coefficients of q^0, q^1, ... (integer powers).
  static TruncatedSeries from_coeffs(const std::vector<mpz_class>& c, int64_t order_h);
  // Dense half-unit coefficients starting at exponent low_h.
  static TruncatedSeries from_dense(int64_t low_h, std::vector<mpz_class> c, int64_t order_h);

  int64_t order_h() const { return order_; }
  HalfInt order() const { return HalfInt{order_}; }
  bool exact() const { return order_ >= kExactOrder; }
  bool is_zero() const { return c_.empty(); }

  // Lowest stored exponent; for a zero series, its order (nothing known below it is nonzero).
  int64_t min_exp_h() const { return c_.empty() ? order_ : low_; }
  int64_t max_exp_h() const { return c_.empty() ? order_ : low_ + int64_t(c_.size()) - 1; }
  int64_t low_h() const { return low_; }
  const std::vector<mpz_class>& dense() const { return c_; }
  bool uniform_parity() const { return step2_; }

  mpz_class coeff(int64_t exp_h) const;
  std::map<int64_t, mpz_class> terms() const;
  size_t term_count() const;

  TruncatedSeries truncated(int64_t order_h) const;

  // Canonical rendering, increasing exponents, followed by the O(..) marker unless exact.
  std::string str() const;
  // Bare integer coefficients of q^0..q^n; throws if a half-integer exponent is present.
  std::vector<mpz_class> integer_coeffs(int64_t n) const;

  // Same coefficients and same order.
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);
  // Same coefficients up to the smaller of the two orders.
  bool agrees_with(const TruncatedSeries& other) const;

private:
  void normalize();

  int64_t low_ = 0;
  std::vector<mpz_class> c_;
  int64_t order_ = kExactOrder;
  bool step2_ = true;
};

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries negate(const TruncatedSeries& a);
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);
// As mul, but never computes past cap_h.
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b, int64_t cap_h);
TruncatedSeries scale(const TruncatedSeries& a, const mpz_class& c);
// Multiply by q^(k/2).
TruncatedSeries shift_h(const TruncatedSeries& s, int64_t k);
// Multiply by (-q^(1/2))^k.
TruncatedSeries scale_by_signed_half_power(const TruncatedSeries& s, int64_t k);
TruncatedSeries invert_unit_power_series(const TruncatedSeries& s);

// In-place accumulate; acc.order becomes min of the two.
void add_into(TruncatedSeries& acc, const TruncatedSeries& b);

inline TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) { return add(a, b); }
inline TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return sub(a, b); }
inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return mul(a, b); }

int64_t sat_add(int64_t a, int64_t b);
std::string render_exponent_h(int64_t k);

} // namespace tdi
