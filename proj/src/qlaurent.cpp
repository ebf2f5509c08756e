#include "tdi/qlaurent.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "tdi/errors.hpp"

namespace tdi {

std::string HalfInt::str() const {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

HalfInt parse_half(const std::string& s) {
  auto bad = [&] { return InputError("not a half-integer: '" + s + "'"); };
  if (s.empty()) throw bad();
  size_t pos = 0;
  try {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      if (s.substr(slash + 1) != "2") throw bad();
      long long v = std::stoll(s.substr(0, slash), &pos);
      if (pos != slash) throw bad();
      return HalfInt{v};
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string frac = s.substr(dot + 1);
      long long w = dot == 0 ? 0 : std::stoll(s.substr(0, dot), &pos);
      if (dot != 0 && pos != dot) throw bad();
      bool neg = !s.empty() && s[0] == '-';
      if (frac == "5") return HalfInt{2 * w + (neg ? -1 : 1)};
      if (frac.find_first_not_of('0') == std::string::npos) return HalfInt{2 * w};
      throw bad();
    }
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw bad();
    return HalfInt::from_int(v);
  } catch (const std::logic_error&) {
    throw bad();
  }
}

int64_t sat_add(int64_t a, int64_t b) {
  if (a >= kExactOrder || b >= kExactOrder) return kExactOrder;
  int64_t r = a + b;
  return r >= kExactOrder ? kExactOrder : r;
}

std::string render_exponent_h(int64_t k) {
  if (k % 2 == 0) return "q^" + std::to_string(k / 2);
  return "q^(" + std::to_string(k) + "/2)";
}

void TruncatedSeries::normalize() {
  // drop anything above the order, then trim zeros at both ends
  if (!c_.empty() && order_ < kExactOrder) {
    int64_t keep = order_ - low_ + 1;
    if (keep <= 0) c_.clear();
    else if (keep < int64_t(c_.size())) c_.resize(size_t(keep));
  }
  size_t b = 0;
  while (b < c_.size() && sgn(c_[b]) == 0) ++b;
  if (b == c_.size()) {
    c_.clear();
    low_ = 0;
    step2_ = true;
    return;
  }
  size_t e = c_.size();
  while (sgn(c_[e - 1]) == 0) --e;
  if (b > 0 || e < c_.size()) {
    std::vector<mpz_class> t(std::make_move_iterator(c_.begin() + b), std::make_move_iterator(c_.begin() + e));
    c_.swap(t);
    low_ += int64_t(b);
  }
  step2_ = true;
  for (size_t i = 1; i < c_.size(); i += 2)
    if (sgn(c_[i]) != 0) { step2_ = false; break; }
}

TruncatedSeries TruncatedSeries::zero(int64_t order_h) {
  TruncatedSeries s;
  s.order_ = std::min(order_h, kExactOrder);
  return s;
}

TruncatedSeries TruncatedSeries::one(int64_t order_h) { return monomial(1, 0, order_h); }

TruncatedSeries TruncatedSeries::monomial(const mpz_class& c, int64_t exp_h, int64_t order_h) {
  TruncatedSeries s;
  s.order_ = std::min(order_h, kExactOrder);
  s.low_ = exp_h;
  s.c_.push_back(c);
  s.normalize();
  return s;
}

TruncatedSeries TruncatedSeries::from_terms(const std::map<int64_t, mpz_class>& terms, int64_t order_h) {
  TruncatedSeries s;
  s.order_ = std::min(order_h, kExactOrder);
  if (!terms.empty()) {
    int64_t lo = terms.begin()->first, hi = terms.rbegin()->first;
    if (s.order_ < kExactOrder) hi = std::min(hi, s.order_);
    if (hi >= lo) {
      s.low_ = lo;
      s.c_.resize(size_t(hi - lo + 1));
      for (auto& [k, v] : terms)
        if (k <= hi) s.c_[size_t(k - lo)] += v;
    }
  }
  s.normalize();
  return s;
}

TruncatedSeries TruncatedSeries::from_coeffs(const std::vector<mpz_class>& c, int64_t order_h) {
  std::vector<mpz_class> d(c.empty() ? 0 : 2 * c.size() - 1);
  for (size_t i = 0; i < c.size(); ++i) d[2 * i] = c[i];
  return from_dense(0, std::move(d), order_h);
}

TruncatedSeries TruncatedSeries::from_dense(int64_t low_h, std::vector<mpz_class> c, int64_t order_h) {
  TruncatedSeries s;
  s.order_ = std::min(order_h, kExactOrder);
  s.low_ = low_h;
  s.c_ = std::move(c);
  s.normalize();
  return s;
}

mpz_class TruncatedSeries::coeff(int64_t exp_h) const {
  if (c_.empty() || exp_h < low_ || exp_h > max_exp_h()) return 0;
  return c_[size_t(exp_h - low_)];
}

std::map<int64_t, mpz_class> TruncatedSeries::terms() const {
  std::map<int64_t, mpz_class> r;
  for (size_t i = 0; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) r.emplace(low_ + int64_t(i), c_[i]);
  return r;
}

size_t TruncatedSeries::term_count() const {
  size_t n = 0;
  for (auto& x : c_) n += sgn(x) != 0;
  return n;
}

TruncatedSeries TruncatedSeries::truncated(int64_t order_h) const {
  TruncatedSeries s = *this;
  s.order_ = std::min(order_, order_h);
  s.normalize();
  return s;
}

std::string TruncatedSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    const mpz_class& c = c_[i];
    if (sgn(c) == 0) continue;
    int64_t k = low_ + int64_t(i);
    mpz_class mag = abs(c);
    if (first) os << (sgn(c) < 0 ? "-" : "");
    else os << (sgn(c) < 0 ? " - " : " + ");
    first = false;
    if (k == 0) os << mag.get_str();
    else {
      if (mag != 1) os << mag.get_str() << "*";
      os << render_exponent_h(k);
    }
  }
  if (!exact()) {
    if (first) os << "O(" << render_exponent_h(order_ + 1) << ")";
    else os << " + O(" << render_exponent_h(order_ + 1) << ")";
  } else if (first) {
    os << "0";
  }
  return os.str();
}

std::vector<mpz_class> TruncatedSeries::integer_coeffs(int64_t n) const {
  std::vector<mpz_class> r(size_t(n + 1));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    int64_t k = low_ + int64_t(i);
    if (k % 2 != 0) throw Error("series has a half-integer exponent " + render_exponent_h(k));
    if (k < 0) throw Error("series has a negative exponent " + render_exponent_h(k));
    if (k / 2 <= n) r[size_t(k / 2)] = c_[i];
  }
  return r;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.order_ == b.order_ && a.low_ == b.low_ && a.c_ == b.c_;
}

bool TruncatedSeries::agrees_with(const TruncatedSeries& other) const {
  int64_t t = std::min(order_, other.order_);
  TruncatedSeries x = truncated(t), y = other.truncated(t);
  return x.low_ == y.low_ && x.c_ == y.c_;
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries r = a;
  add_into(r, b);
  return r;
}

void add_into(TruncatedSeries& acc, const TruncatedSeries& b) {
  int64_t t = std::min(acc.order_h(), b.order_h());
  if (b.is_zero()) {
    acc = acc.truncated(t);
    return;
  }
  if (acc.is_zero()) {
    acc = b.truncated(t);
    return;
  }
  int64_t lo = std::min(acc.low_h(), b.low_h());
  int64_t hi = std::max(acc.max_exp_h(), b.max_exp_h());
  if (t < kExactOrder) hi = std::min(hi, t);
  if (hi < lo) {
    acc = TruncatedSeries::zero(t);
    return;
  }
  std::vector<mpz_class> d(size_t(hi - lo + 1));
  const auto& ac = acc.dense();
  for (size_t i = 0; i < ac.size(); ++i) {
    int64_t k = acc.low_h() + int64_t(i);
    if (k > hi) break;
    d[size_t(k - lo)] = ac[i];
  }
  const auto& bc = b.dense();
  for (size_t i = 0; i < bc.size(); ++i) {
    int64_t k = b.low_h() + int64_t(i);
    if (k > hi) break;
    d[size_t(k - lo)] += bc[i];
  }
  acc = TruncatedSeries::from_dense(lo, std::move(d), t);
}

TruncatedSeries negate(const TruncatedSeries& a) { return scale(a, -1); }

TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) { return add(a, negate(b)); }

TruncatedSeries scale(const TruncatedSeries& a, const mpz_class& c) {
  std::vector<mpz_class> d = a.dense();
  for (auto& x : d) x *= c;
  return TruncatedSeries::from_dense(a.low_h(), std::move(d), a.order_h());
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) { return mul(a, b, kExactOrder); }

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b, int64_t cap_h) {
  int64_t t = std::min(sat_add(a.order_h(), b.min_exp_h()), sat_add(b.order_h(), a.min_exp_h()));
  t = std::min(t, cap_h);
  if (a.is_zero() || b.is_zero()) return TruncatedSeries::zero(t);
  int64_t lo = a.low_h() + b.low_h();
  int64_t hi = a.max_exp_h() + b.max_exp_h();
  if (t < kExactOrder) hi = std::min(hi, t);
  if (hi < lo) return TruncatedSeries::zero(t);
  std::vector<mpz_class> d(size_t(hi - lo + 1));
  const auto& ac = a.dense();
  const auto& bc = b.dense();
  const size_t sa = a.uniform_parity() ? 2 : 1;
  const size_t sb = b.uniform_parity() ? 2 : 1;
  const int64_t span = hi - lo;
  for (size_t i = 0; i < ac.size() && int64_t(i) <= span; i += sa) {
    const mpz_class& x = ac[i];
    if (sgn(x) == 0) continue;
    size_t jmax = std::min(bc.size() - 1, size_t(span - int64_t(i)));
    mpz_class* out = d.data() + i;
    for (size_t j = 0; j <= jmax; j += sb) {
      if (sgn(bc[j]) == 0) continue;
      mpz_addmul(out[j].get_mpz_t(), x.get_mpz_t(), bc[j].get_mpz_t());
    }
  }
  return TruncatedSeries::from_dense(lo, std::move(d), t);
}

TruncatedSeries shift_h(const TruncatedSeries& s, int64_t k) {
  return TruncatedSeries::from_dense(s.low_h() + k, s.dense(), sat_add(s.order_h(), k));
}

TruncatedSeries scale_by_signed_half_power(const TruncatedSeries& s, int64_t k) {
  TruncatedSeries r = shift_h(s, k);
  return (k % 2 != 0) ? negate(r) : r;
}

TruncatedSeries invert_unit_power_series(const TruncatedSeries& s) {
  if (s.is_zero() || s.low_h() != 0 || abs(s.dense()[0]) != 1)
    throw NotAUnit("series is not a unit power series: " + s.str());
  if (s.exact()) {
    // a monomial +-1 is its own inverse; anything else has an infinite inverse
    if (s.dense().size() == 1) return s;
    throw NotAUnit("inverse of an exact non-constant series needs a finite order");
  }
  const int64_t T = s.order_h();
  const auto& sc = s.dense();
  const mpz_class& s0 = sc[0];
  std::vector<mpz_class> t(size_t(T + 1));
  t[0] = s0;
  mpz_class acc;
  for (int64_t k = 1; k <= T; ++k) {
    acc = 0;
    int64_t imax = std::min<int64_t>(k, int64_t(sc.size()) - 1);
    for (int64_t i = 1; i <= imax; ++i)
      if (sgn(sc[size_t(i)]) != 0) mpz_addmul(acc.get_mpz_t(), sc[size_t(i)].get_mpz_t(), t[size_t(k - i)].get_mpz_t());
    t[size_t(k)] = -s0 * acc;
  }
  return TruncatedSeries::from_dense(0, std::move(t), T);
}

} // namespace tdi
