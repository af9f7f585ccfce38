// Difference bound matrices over clocks x_1..x_n with reference clock x_0 = 0.
// Entry (i, j) bounds x_i - x_j.
#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "adlv/expr.hpp"

namespace adlv {

struct Bound {
  std::int64_t value = 0;
  bool strict = false;
  bool infinite = false;

  static Bound le(std::int64_t v) { return {v, false, false}; }
  static Bound lt(std::int64_t v) { return {v, true, false}; }
  static Bound inf() { return {0, true, true}; }

  /// Values add, strictness ORs, infinity absorbs.
  friend Bound operator+(const Bound& a, const Bound& b);
  friend bool operator<(const Bound& a, const Bound& b);
  friend bool operator==(const Bound& a, const Bound& b);
  friend bool operator<=(const Bound& a, const Bound& b) { return !(b < a); }

  std::string to_string() const;
};

class Dbm {
 public:
  using raw_t = std::int32_t;
  static constexpr raw_t kInf = std::numeric_limits<raw_t>::max();
  static constexpr raw_t kLeZero = 1;

  static raw_t encode(const Bound& b);
  static Bound decode(raw_t r);
  static raw_t add(raw_t a, raw_t b) {
    if (a == kInf || b == kInf) return kInf;
    return static_cast<raw_t>((((a >> 1) + (b >> 1)) * 2) | (a & b & 1));
  }

  Dbm() : Dbm(1) {}
  /// Unconstrained nonnegative zone over `dim - 1` clocks (not canonical-closed by up).
  explicit Dbm(std::size_t dim);
  /// The distinguished empty zone of the given dimension.
  static Dbm empty(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t clocks() const { return dim_ - 1; }
  bool is_empty() const { return empty_; }

  Bound at(std::size_t i, std::size_t j) const { return decode(raw(i, j)); }
  void set(std::size_t i, std::size_t j, const Bound& b) { raw(i, j) = encode(b); }
  raw_t raw(std::size_t i, std::size_t j) const { return m_[i * dim_ + j]; }
  raw_t& raw(std::size_t i, std::size_t j) { return m_[i * dim_ + j]; }
  const std::vector<raw_t>& data() const { return m_; }

  // In-place operations. The mutators return false once the zone is empty.
  bool canonicalize();
  void up();
  /// Past: all valuations that reach the zone by delaying.
  void down();
  bool constrain(std::size_t i, std::size_t j, raw_t bound);
  /// Atom `x op c` with op in Lt, Le, Eq, Ge, Gt.
  bool constrain(std::size_t clock, ExprOp op, std::int64_t c);
  void reset(std::size_t clock, std::int64_t value);
  /// Drops every constraint on `clock` except clock >= 0.
  void free_clock(std::size_t clock);
  /// Extra_M; `maxc[i]` is the bound for clock i (index 0 ignored). Re-closes.
  void extrapolate(const std::vector<std::int64_t>& maxc);
  /// b's solution set is a subset of this one.
  bool includes(const Dbm& b) const;
  /// Some clock valuation satisfies `x op c`.
  bool intersects(std::size_t clock, ExprOp op, std::int64_t c) const;
  /// Time may pass without bound: every upper bound is infinite.
  bool unbounded_above() const;

  std::size_t hash() const;
  friend bool operator==(const Dbm& a, const Dbm& b) {
    return a.dim_ == b.dim_ && a.empty_ == b.empty_ && a.m_ == b.m_;
  }

  /// One `name in [lo, hi]` entry per clock; names[0] is unused.
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void make_empty();

  std::size_t dim_;
  bool empty_ = false;
  std::vector<raw_t> m_;
};

Dbm dbm_init(std::size_t n);
Dbm canonicalize(Dbm d);
Dbm up(Dbm d);
Dbm constrain(Dbm d, std::size_t clock, ExprOp op, std::int64_t c);
Dbm constrain(Dbm d, std::size_t i, std::size_t j, const Bound& b);
Dbm reset(Dbm d, std::size_t clock, std::int64_t value);
bool includes(const Dbm& a, const Dbm& b);
Dbm extrapolate(Dbm d, const std::vector<std::int64_t>& maxc);

}  // namespace adlv
