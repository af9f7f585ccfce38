#include "adlv/dbm.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace adlv {

Bound operator+(const Bound& a, const Bound& b) {
  if (a.infinite || b.infinite) return Bound::inf();
  return Bound{a.value + b.value, a.strict || b.strict, false};
}

bool operator<(const Bound& a, const Bound& b) {
  if (a.infinite) return false;
  if (b.infinite) return true;
  if (a.value != b.value) return a.value < b.value;
  return a.strict && !b.strict;
}

bool operator==(const Bound& a, const Bound& b) {
  if (a.infinite || b.infinite) return a.infinite == b.infinite;
  return a.value == b.value && a.strict == b.strict;
}

std::string Bound::to_string() const {
  if (infinite) return "<inf";
  return (strict ? "<" : "<=") + std::to_string(value);
}

Dbm::raw_t Dbm::encode(const Bound& b) {
  if (b.infinite) return kInf;
  return static_cast<raw_t>(b.value * 2 + (b.strict ? 0 : 1));
}

Bound Dbm::decode(raw_t r) {
  if (r == kInf) return Bound::inf();
  return Bound{static_cast<std::int64_t>(r >> 1), (r & 1) == 0, false};
}

Dbm::Dbm(std::size_t dim) : dim_(std::max<std::size_t>(dim, 1)), m_(dim_ * dim_, kInf) {
  for (std::size_t i = 0; i < dim_; ++i) {
    raw(i, i) = kLeZero;
    raw(0, i) = kLeZero;
  }
}

Dbm Dbm::empty(std::size_t dim) {
  Dbm d(dim);
  d.make_empty();
  return d;
}

void Dbm::make_empty() {
  empty_ = true;
  std::fill(m_.begin(), m_.end(), raw_t{0});
}

bool Dbm::canonicalize() {
  if (empty_) return false;
  for (std::size_t k = 0; k < dim_; ++k)
    for (std::size_t i = 0; i < dim_; ++i) {
      raw_t ik = raw(i, k);
      if (ik == kInf) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        raw_t v = add(ik, raw(k, j));
        if (v < raw(i, j)) raw(i, j) = v;
      }
    }
  for (std::size_t i = 0; i < dim_; ++i)
    if (raw(i, i) < kLeZero) {
      make_empty();
      return false;
    }
  return true;
}

void Dbm::up() {
  if (empty_) return;
  for (std::size_t i = 1; i < dim_; ++i) raw(i, 0) = kInf;
}

void Dbm::free_clock(std::size_t c) {
  if (empty_) return;
  for (std::size_t j = 0; j < dim_; ++j) {
    if (j == c) continue;
    raw(c, j) = kInf;
    raw(j, c) = raw(j, 0);
  }
}

void Dbm::down() {
  if (empty_) return;
  for (std::size_t i = 1; i < dim_; ++i) {
    raw_t b = kLeZero;
    for (std::size_t j = 1; j < dim_; ++j) b = std::min(b, raw(j, i));
    raw(0, i) = b;
  }
}

bool Dbm::constrain(std::size_t i, std::size_t j, raw_t b) {
  if (empty_) return false;
  if (b >= raw(i, j)) return true;
  if (add(b, raw(j, i)) < kLeZero) {
    make_empty();
    return false;
  }
  raw(i, j) = b;
  for (std::size_t k = 0; k < dim_; ++k) {
    raw_t ki = raw(k, i);
    if (ki == kInf) continue;
    raw_t kib = add(ki, b);
    for (std::size_t l = 0; l < dim_; ++l) {
      raw_t v = add(kib, raw(j, l));
      if (v < raw(k, l)) raw(k, l) = v;
    }
  }
  return true;
}

bool Dbm::constrain(std::size_t x, ExprOp op, std::int64_t c) {
  switch (op) {
    case ExprOp::Lt: return constrain(x, 0, encode(Bound::lt(c)));
    case ExprOp::Le: return constrain(x, 0, encode(Bound::le(c)));
    case ExprOp::Gt: return constrain(0, x, encode(Bound::lt(-c)));
    case ExprOp::Ge: return constrain(0, x, encode(Bound::le(-c)));
    case ExprOp::Eq:
      return constrain(x, 0, encode(Bound::le(c))) && constrain(0, x, encode(Bound::le(-c)));
    default: return !empty_;
  }
}

void Dbm::reset(std::size_t x, std::int64_t c) {
  if (empty_) return;
  const raw_t pos = encode(Bound::le(c));
  const raw_t neg = encode(Bound::le(-c));
  for (std::size_t j = 0; j < dim_; ++j) {
    if (j == x) continue;
    raw(x, j) = add(pos, raw(0, j));
    raw(j, x) = add(raw(j, 0), neg);
  }
  raw(x, x) = kLeZero;
}

void Dbm::extrapolate(const std::vector<std::int64_t>& maxc) {
  if (empty_) return;
  bool changed = false;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      if (i == j) continue;
      raw_t& e = raw(i, j);
      if (e == kInf) continue;
      if (i >= 1 && e > encode(Bound::le(maxc[i]))) {
        e = kInf;
        changed = true;
      } else if (j >= 1 && e < encode(Bound::lt(-maxc[j]))) {
        e = encode(Bound::lt(-maxc[j]));
        changed = true;
      }
    }
  if (changed) canonicalize();
}

bool Dbm::includes(const Dbm& b) const {
  if (b.empty_) return true;
  if (empty_ || dim_ != b.dim_) return false;
  for (std::size_t k = 0; k < m_.size(); ++k)
    if (b.m_[k] > m_[k]) return false;
  return true;
}

bool Dbm::intersects(std::size_t x, ExprOp op, std::int64_t c) const {
  Dbm copy = *this;
  return copy.constrain(x, op, c);
}

bool Dbm::unbounded_above() const {
  if (empty_) return false;
  for (std::size_t i = 1; i < dim_; ++i)
    if (raw(i, 0) != kInf) return false;
  return true;
}

std::size_t Dbm::hash() const {
  std::size_t h = std::hash<std::size_t>{}(dim_) ^ (empty_ ? 0x9e3779b9u : 0u);
  for (raw_t v : m_) h = h * 1000003u ^ std::hash<raw_t>{}(v);
  return h;
}

std::string Dbm::to_string(const std::vector<std::string>& names) const {
  if (empty_) return "empty";
  std::ostringstream os;
  for (std::size_t i = 1; i < dim_; ++i) {
    if (i > 1) os << ", ";
    Bound lo = at(0, i);
    Bound hi = at(i, 0);
    os << (i < names.size() ? names[i] : "x" + std::to_string(i)) << " in "
       << (lo.strict ? "(" : "[") << -lo.value << ", ";
    if (hi.infinite)
      os << "inf)";
    else
      os << hi.value << (hi.strict ? ")" : "]");
  }
  return os.str();
}

Dbm dbm_init(std::size_t n) {
  Dbm d(n + 1);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j) d.raw(i, j) = Dbm::kLeZero;
  return d;
}

Dbm canonicalize(Dbm d) {
  d.canonicalize();
  return d;
}

Dbm up(Dbm d) {
  d.up();
  return d;
}

Dbm constrain(Dbm d, std::size_t clock, ExprOp op, std::int64_t c) {
  d.constrain(clock, op, c);
  return d;
}

Dbm constrain(Dbm d, std::size_t i, std::size_t j, const Bound& b) {
  d.constrain(i, j, Dbm::encode(b));
  return d;
}

Dbm reset(Dbm d, std::size_t clock, std::int64_t value) {
  d.reset(clock, value);
  return d;
}

bool includes(const Dbm& a, const Dbm& b) { return a.includes(b); }

Dbm extrapolate(Dbm d, const std::vector<std::int64_t>& maxc) {
  d.extrapolate(maxc);
  return d;
}

}  // namespace adlv
