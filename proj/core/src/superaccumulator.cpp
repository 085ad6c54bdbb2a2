#include "sawq/superaccumulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sawq {

namespace {

constexpr double kLn2 = 0x1.62e42fefa39efp-1;
constexpr double kLog2E = 0x1.71547652b82fep+0;

// bit q of the magnitude, 0 outside the window
inline uint64_t read_bit(const std::vector<uint64_t>& mag, int64_t mbase, int64_t q) {
  int64_t limb = q >> 6;  // arithmetic shift: floor division
  int64_t idx = limb - mbase;
  if (idx < 0 || idx >= static_cast<int64_t>(mag.size())) return 0;
  return (mag[static_cast<size_t>(idx)] >> (q & 63)) & 1u;
}

// any magnitude bit strictly below `cutoff`?
inline bool any_below(const std::vector<uint64_t>& mag, int64_t mbase, int64_t cutoff) {
  int64_t cut_limb = cutoff >> 6;
  int cut_bit = static_cast<int>(cutoff & 63);
  for (int64_t i = 0; i < static_cast<int64_t>(mag.size()); ++i) {
    int64_t limb = mbase + i;
    if (limb < cut_limb) {
      if (mag[static_cast<size_t>(i)]) return true;
    } else if (limb == cut_limb && cut_bit > 0) {
      uint64_t mask = (1ULL << cut_bit) - 1;
      if (mag[static_cast<size_t>(i)] & mask) return true;
    }
  }
  return false;
}

}  // namespace

void Superaccumulator::reserve_range(int64_t lo, int64_t hi) {
  if (limbs_.empty()) {
    base_ = lo;
    limbs_.assign(static_cast<size_t>(hi - lo + 1), 0);  // fill_ == 0 here by invariant
    return;
  }
  if (lo < base_) {
    limbs_.insert(limbs_.begin(), static_cast<size_t>(base_ - lo), 0);
    base_ = lo;
  }
  int64_t top = base_ + static_cast<int64_t>(limbs_.size()) - 1;
  if (hi > top) limbs_.insert(limbs_.end(), static_cast<size_t>(hi - top), fill_);
}

void Superaccumulator::apply(int64_t pos, unsigned __int128 mag, bool negative) {
  if (mag == 0) return;
  reserve_range(pos, pos + 1);
  const uint64_t parts[2] = {static_cast<uint64_t>(mag), static_cast<uint64_t>(mag >> 64)};
  if (!negative) {
    uint64_t carry = 0;
    for (int k = 0; k < 2; ++k) {
      uint64_t& limb = limbs_[static_cast<size_t>(pos + k - base_)];
      uint64_t sum = limb + parts[k];
      uint64_t c1 = sum < limb ? 1u : 0u;
      uint64_t sum2 = sum + carry;
      uint64_t c2 = sum2 < sum ? 1u : 0u;
      limb = sum2;
      carry = c1 | c2;
    }
    int64_t p = pos + 2;
    while (carry) {
      int64_t top = base_ + static_cast<int64_t>(limbs_.size()) - 1;
      if (p > top) {
        if (fill_ == ~0ULL) {
          fill_ = 0;  // ...111 + 1 rolls over to ...000
        } else {
          limbs_.push_back(1);
        }
        break;
      }
      uint64_t& limb = limbs_[static_cast<size_t>(p - base_)];
      limb += 1;
      carry = (limb == 0) ? 1u : 0u;
      ++p;
    }
  } else {
    uint64_t borrow = 0;
    for (int k = 0; k < 2; ++k) {
      uint64_t& limb = limbs_[static_cast<size_t>(pos + k - base_)];
      uint64_t t = limb - parts[k];
      uint64_t b1 = limb < parts[k] ? 1u : 0u;
      uint64_t t2 = t - borrow;
      uint64_t b2 = t < borrow ? 1u : 0u;
      limb = t2;
      borrow = b1 | b2;
    }
    int64_t p = pos + 2;
    while (borrow) {
      int64_t top = base_ + static_cast<int64_t>(limbs_.size()) - 1;
      if (p > top) {
        if (fill_ == 0) {
          fill_ = ~0ULL;  // ...000 - 1 rolls under to ...111
        } else {
          limbs_.push_back(~0ULL - 1);  // ~0 - borrow, higher fill unchanged
        }
        break;
      }
      uint64_t& limb = limbs_[static_cast<size_t>(p - base_)];
      borrow = (limb == 0) ? 1u : 0u;
      limb -= 1;
      ++p;
    }
  }
}

void Superaccumulator::add_scaled(double x, int64_t pow2) {
  if (x == 0.0) return;
  if (!std::isfinite(x)) throw std::invalid_argument("Superaccumulator: non-finite addend");
  int e = 0;
  double f = std::frexp(std::fabs(x), &e);                    // |x| = f * 2^e
  uint64_t mant = static_cast<uint64_t>(std::ldexp(f, 53));   // exact integer in [2^52, 2^53)
  int64_t p = static_cast<int64_t>(e) - 53 + pow2;            // |x|*2^pow2 = mant * 2^p
  int64_t limb = p >> 6;
  int shift = static_cast<int>(p - (limb << 6));
  apply(limb, static_cast<unsigned __int128>(mant) << shift, x < 0.0);
}

void Superaccumulator::add_product(double x, uint64_t count) {
  if (count == 0 || x == 0.0) return;
  if (!std::isfinite(x)) throw std::invalid_argument("Superaccumulator: non-finite addend");
  int e = 0;
  double f = std::frexp(std::fabs(x), &e);
  uint64_t mant = static_cast<uint64_t>(std::ldexp(f, 53));
  unsigned __int128 full = static_cast<unsigned __int128>(mant) * count;  // < 2^117
  int64_t p = static_cast<int64_t>(e) - 53;
  int64_t limb = p >> 6;
  int shift = static_cast<int>(p - (limb << 6));
  uint64_t lo = static_cast<uint64_t>(full);
  uint64_t hi = static_cast<uint64_t>(full >> 64);
  bool neg = x < 0.0;
  if (lo) apply(limb, static_cast<unsigned __int128>(lo) << shift, neg);
  if (hi) apply(limb + 1, static_cast<unsigned __int128>(hi) << shift, neg);
}

void Superaccumulator::add_exp(double log_x) {
  if (std::isnan(log_x)) throw std::invalid_argument("Superaccumulator: NaN exponent");
  if (log_x == -std::numeric_limits<double>::infinity()) return;
  if (log_x > -700.0 && log_x < 700.0) {
    add(std::exp(log_x));
    return;
  }
  double t = log_x * kLog2E;
  if (std::fabs(t) > static_cast<double>(int64_t{1} << 22))
    throw std::overflow_error("Superaccumulator: exponent out of range");
  double fi = std::floor(t);
  double m = std::exp2(t - fi);  // [1, 2]
  add_scaled(m, static_cast<int64_t>(fi));
}

void Superaccumulator::merge(const Superaccumulator& other) {
  for (size_t k = 0; k < other.limbs_.size(); ++k) {
    if (other.limbs_[k])
      apply(other.base_ + static_cast<int64_t>(k), other.limbs_[k], false);
  }
  if (other.fill_ == ~0ULL)
    apply(other.base_ + static_cast<int64_t>(other.limbs_.size()), 1, true);
}

int Superaccumulator::sign() const {
  if (fill_) return -1;
  for (uint64_t v : limbs_)
    if (v) return 1;
  return 0;
}

void Superaccumulator::magnitude(std::vector<uint64_t>& out, int64_t& out_base, bool& negative) const {
  out_base = base_;
  if (fill_ == 0) {
    out = limbs_;
    negative = false;
    return;
  }
  negative = true;
  out.resize(limbs_.size());
  uint64_t carry = 1;
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t v = ~limbs_[i];
    uint64_t r = v + carry;
    carry = (r < carry) ? 1u : 0u;
    out[i] = r;
  }
  if (carry) out.push_back(1);  // explicit part was zero: magnitude is 2^(64*size)
}

double Superaccumulator::to_double() const {
  std::vector<uint64_t> mag;
  int64_t mbase = 0;
  bool neg = false;
  magnitude(mag, mbase, neg);
  int64_t hi = -1;
  for (int64_t i = static_cast<int64_t>(mag.size()) - 1; i >= 0; --i) {
    if (mag[static_cast<size_t>(i)]) {
      hi = i;
      break;
    }
  }
  if (hi < 0) return 0.0;
  int topbit = 63 - std::countl_zero(mag[static_cast<size_t>(hi)]);
  int64_t msb = 64 * (mbase + hi) + topbit;
  int64_t lbit = std::max(msb - 52, int64_t{-1074});
  uint64_t window = 0;  // bits [lbit-2 .. msb], at most 55 of them
  for (int64_t q = msb; q >= lbit - 2; --q) window = (window << 1) | read_bit(mag, mbase, q);
  bool sticky = any_below(mag, mbase, lbit - 2);
  uint64_t mant = window >> 2;
  uint64_t guard = (window >> 1) & 1;
  uint64_t low = (window & 1) | (sticky ? 1u : 0u);
  if (guard && (low || (mant & 1))) mant += 1;  // round to nearest, ties to even
  int exp2 = static_cast<int>(std::clamp<int64_t>(lbit, -100000, 100000));
  double r = std::ldexp(static_cast<double>(mant), exp2);
  return neg ? -r : r;
}

double Superaccumulator::log_abs() const {
  std::vector<uint64_t> mag;
  int64_t mbase = 0;
  bool neg = false;
  magnitude(mag, mbase, neg);
  int64_t hi = -1;
  for (int64_t i = static_cast<int64_t>(mag.size()) - 1; i >= 0; --i) {
    if (mag[static_cast<size_t>(i)]) {
      hi = i;
      break;
    }
  }
  if (hi < 0) return -std::numeric_limits<double>::infinity();
  int topbit = 63 - std::countl_zero(mag[static_cast<size_t>(hi)]);
  int64_t msb = 64 * (mbase + hi) + topbit;
  uint64_t w = 0;  // the top 64 bits, MSB aligned
  for (int64_t q = msb; q > msb - 64; --q) w = (w << 1) | read_bit(mag, mbase, q);
  return std::log(static_cast<double>(w)) + static_cast<double>(msb - 63) * kLn2;
}

std::vector<uint64_t> Superaccumulator::canonical(int64_t& out_base, uint64_t& out_fill) const {
  std::vector<uint64_t> v = limbs_;
  out_base = base_;
  out_fill = fill_;
  while (!v.empty() && v.back() == out_fill) v.pop_back();
  size_t lead = 0;
  while (lead < v.size() && v[lead] == 0) ++lead;
  if (lead) {
    v.erase(v.begin(), v.begin() + static_cast<ptrdiff_t>(lead));
    out_base += static_cast<int64_t>(lead);
  }
  // an empty window still encodes -2^(64*base) when fill is set
  if (v.empty() && out_fill == 0) out_base = 0;
  return v;
}

bool Superaccumulator::value_equal(const Superaccumulator& other) const {
  int64_t b1 = 0, b2 = 0;
  uint64_t f1 = 0, f2 = 0;
  std::vector<uint64_t> v1 = canonical(b1, f1);
  std::vector<uint64_t> v2 = other.canonical(b2, f2);
  return f1 == f2 && b1 == b2 && v1 == v2;
}

}  // namespace sawq
