#pragma once

#include <cstdint>
#include <vector>

namespace sawq {

// Exact fixed-point accumulator for IEEE doubles.
//
// The sum is held as a two's-complement integer spread over 64-bit limbs;
// limb i carries weight 2^(64*(base+i)), and the window grows on demand in
// both directions. add/add_scaled/add_product insert their value exactly, so
// the stored sum does not depend on insertion order and partial accumulators
// merge without rounding. That property is what makes subtree-parallel
// enumeration bit-reproducible for every work split.
//
// add_exp inserts e^x for any finite x, including magnitudes far outside the
// double range (e^-2000 and the like), with a single 53-bit rounding of the
// inserted value. Everything after that insertion is exact.
class Superaccumulator {
 public:
  Superaccumulator() = default;

  void add(double x) { add_scaled(x, 0); }
  // x * 2^pow2, exact.
  void add_scaled(double x, int64_t pow2);
  // x * count, exact (mantissa * count fits in 128 bits).
  void add_product(double x, uint64_t count);
  // e^log_x; -inf adds zero. Throws std::overflow_error far outside the
  // supported exponent window (|log2 e^x| > 2^22 bits).
  void add_exp(double log_x);
  // Exact merge; commutative and associative bit-for-bit.
  void merge(const Superaccumulator& other);

  // Round to nearest, ties to even. Overflows to +-inf like IEEE.
  double to_double() const;
  // log(|sum|); -inf when the sum is zero. Accurate to ~1 ulp of the top
  // 53 bits plus |position|*2^-52 from the exponent term.
  double log_abs() const;
  int sign() const;  // -1, 0, +1
  bool is_zero() const { return sign() == 0; }
  // Value equality (exact, independent of internal window placement).
  bool value_equal(const Superaccumulator& other) const;

 private:
  // Little-endian limbs over limb indices [base_, base_ + limbs_.size());
  // fill_ (0 or ~0) is the implicit two's-complement extension above the
  // window. Empty limbs_ implies fill_ == 0 (the zero value).
  std::vector<uint64_t> limbs_;
  int64_t base_ = 0;
  uint64_t fill_ = 0;

  void reserve_range(int64_t lo, int64_t hi);
  void apply(int64_t limb, unsigned __int128 magnitude, bool negative);
  void magnitude(std::vector<uint64_t>& out, int64_t& out_base, bool& negative) const;
  std::vector<uint64_t> canonical(int64_t& out_base, uint64_t& out_fill) const;

  friend struct SuperaccumulatorProbe;
};

}  // namespace sawq
