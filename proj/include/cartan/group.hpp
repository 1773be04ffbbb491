#pragma once

// Coordinate groups over Z and Z/m components with a strictly triangular
// quadratic twist in the multiplication: (a*b)_i = a_i + b_i + sum of
// q*a_j*b_k over twist terms targeting i, with j,k > i. Triangularity makes
// inverses closed-form by back-substitution and keeps validation finite.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cartan/rational.hpp"

namespace cartan {

struct Component {
  bool torsion = false;
  std::int64_t modulus = 0;  // >= 2 when torsion, ignored otherwise
};

/// One twist contribution (a*b)_target += coeff * a_left * b_right.
/// Indices are 0-based in memory; configs use 1-based indices.
struct TwistTerm {
  std::size_t target = 0, left = 0, right = 0;
  std::int64_t coeff = 0;
};

using Coords = std::vector<std::int64_t>;

struct GroupElement {
  Coords c;
  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.c == b.c; }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }
  friend bool operator<(const GroupElement& a, const GroupElement& b) { return a.c < b.c; }
};

inline std::string element_str(const GroupElement& g) {
  std::string out = "(";
  for (std::size_t i = 0; i < g.c.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(g.c[i]);
  }
  return out + ")";
}

namespace detail {

using Wide = __int128;

inline std::int64_t narrow_i64(Wide v, const char* what) {
  if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max())
    throw Error(std::string("coordinate overflow in ") + what);
  return static_cast<std::int64_t>(v);
}

/// coeff * a * b without silent wraparound; int64 inputs always fit the
/// first product in 128 bits, the second is guarded.
inline Wide twist_product(std::int64_t coeff, std::int64_t a, std::int64_t b, const char* what) {
  Wide out;
  if (__builtin_mul_overflow(static_cast<Wide>(coeff) * a, static_cast<Wide>(b), &out))
    throw Error(std::string("coordinate overflow in ") + what);
  return out;
}

inline std::int64_t mod_residue(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace detail

class GroupDescriptor {
 public:
  static constexpr std::size_t kMaxRank = 16;

  GroupDescriptor() = default;

  /// Rejects out-of-range indices and bad moduli outright; triangularity is
  /// left to validate_descriptor so broken descriptors can be reported on.
  GroupDescriptor(std::vector<Component> components, std::vector<TwistTerm> twist)
      : comps_(std::move(components)), twist_(std::move(twist)) {
    if (comps_.empty() || comps_.size() > kMaxRank)
      throw Error("group rank must be between 1 and " + std::to_string(kMaxRank));
    for (const auto& cp : comps_)
      if (cp.torsion && cp.modulus < 2) throw Error("torsion component needs modulus >= 2");
    for (const auto& t : twist_)
      if (t.target >= comps_.size() || t.left >= comps_.size() || t.right >= comps_.size())
        throw Error("twist term index out of range");
  }

  std::size_t rank() const { return comps_.size(); }
  const std::vector<Component>& components() const { return comps_; }
  const std::vector<TwistTerm>& twist() const { return twist_; }

  bool triangular() const {
    for (const auto& t : twist_)
      if (t.left <= t.target || t.right <= t.target) return false;
    return true;
  }

  GroupElement identity() const { return GroupElement{Coords(rank(), 0)}; }
  bool is_identity(const GroupElement& a) const { return a == identity(); }

  /// Canonicalizes torsion coordinates into [0, m).
  GroupElement element(Coords raw) const {
    if (raw.size() != rank()) throw Error("arity mismatch: expected " + std::to_string(rank()) +
                                          " coordinates, got " + std::to_string(raw.size()));
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (comps_[i].torsion) raw[i] = detail::mod_residue(raw[i], comps_[i].modulus);
    return GroupElement{std::move(raw)};
  }

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const {
    check_arity(a);
    check_arity(b);
    // twist targets are strictly below their operands, so the quadratic
    // additions never feed each other and order does not matter
    std::array<detail::Wide, kMaxRank> acc;
    for (std::size_t i = 0; i < rank(); ++i)
      acc[i] = static_cast<detail::Wide>(a.c[i]) + b.c[i];
    for (const auto& t : twist_)
      acc[t.target] += detail::twist_product(t.coeff, a.c[t.left], b.c[t.right], "multiply");
    Coords out(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      out[i] = detail::narrow_i64(acc[i], "multiply");
      if (comps_[i].torsion) out[i] = detail::mod_residue(out[i], comps_[i].modulus);
    }
    return GroupElement{std::move(out)};
  }

  /// Unique x with a*x = x*a = e, by back-substitution from the last
  /// coordinate down (twist targets only read strictly later coordinates).
  GroupElement inverse(const GroupElement& a) const {
    check_arity(a);
    Coords x(rank(), 0);
    for (std::size_t i = rank(); i-- > 0;) {
      detail::Wide v = -static_cast<detail::Wide>(a.c[i]);
      for (const auto& t : twist_)
        if (t.target == i) v -= detail::twist_product(t.coeff, a.c[t.left], x[t.right], "inverse");
      x[i] = detail::narrow_i64(v, "inverse");
      if (comps_[i].torsion) x[i] = detail::mod_residue(x[i], comps_[i].modulus);
    }
    return GroupElement{std::move(x)};
  }

  GroupElement power(const GroupElement& a, std::int64_t j) const {
    GroupElement base = j < 0 ? inverse(a) : a;
    std::uint64_t n = j < 0 ? -static_cast<std::uint64_t>(j) : static_cast<std::uint64_t>(j);
    GroupElement acc = identity();
    for (std::uint64_t i = 0; i < n; ++i) acc = multiply(acc, base);
    return acc;
  }

  /// g * s * g^{-1}.
  GroupElement conjugate(const GroupElement& g, const GroupElement& s) const {
    return multiply(multiply(g, s), inverse(g));
  }

 private:
  void check_arity(const GroupElement& a) const {
    if (a.c.size() != rank()) throw Error("arity mismatch in group operation");
  }

  std::vector<Component> comps_;
  std::vector<TwistTerm> twist_;
};

/// Finite window into the group: free coordinates in [-B, B], torsion
/// coordinates unrestricted. Two deterministic traversals are exposed:
/// enumeration order (lexicographic, the public stream) and scan order
/// (near-identity-first), which witness searches use so that the reported
/// witness is a smallest one.
class Ball {
 public:
  Ball(const GroupDescriptor& d, std::int64_t radius) : d_(&d), radius_(radius) {
    if (radius < 0) throw Error("ball radius must be >= 0");
    sizes_.reserve(d.rank());
    std::uint64_t total = 1;
    for (const auto& cp : d.components()) {
      std::uint64_t s = cp.torsion ? static_cast<std::uint64_t>(cp.modulus)
                                   : static_cast<std::uint64_t>(2 * radius + 1);
      sizes_.push_back(s);
      if (total > (std::uint64_t(1) << 62) / s) throw Error("ball too large to enumerate");
      total *= s;
    }
    size_ = total;
  }

  const GroupDescriptor& descriptor() const { return *d_; }
  std::int64_t radius() const { return radius_; }
  std::uint64_t size() const { return size_; }

  /// idx-th element in lexicographic order (free: -B..B; torsion: 0..m-1),
  /// first coordinate most significant.
  GroupElement at(std::uint64_t idx) const {
    Coords c(sizes_.size());
    for (std::size_t i = sizes_.size(); i-- > 0;) {
      std::uint64_t digit = idx % sizes_[i];
      idx /= sizes_[i];
      c[i] = d_->components()[i].torsion ? static_cast<std::int64_t>(digit)
                                         : static_cast<std::int64_t>(digit) - radius_;
    }
    return GroupElement{std::move(c)};
  }

  /// idx-th element in scan order: per-coordinate value sequences
  /// 0, 1, -1, 2, -2, ... (free) and 0, 1, m-1, 2, m-2, ... (torsion),
  /// nested with the first coordinate outermost.
  GroupElement scan_at(std::uint64_t idx) const {
    Coords c(sizes_.size());
    for (std::size_t i = sizes_.size(); i-- > 0;) {
      std::uint64_t digit = idx % sizes_[i];
      idx /= sizes_[i];
      c[i] = zigzag_value(i, digit);
    }
    return GroupElement{std::move(c)};
  }

  bool contains(const GroupElement& g) const {
    if (g.c.size() != sizes_.size()) return false;
    for (std::size_t i = 0; i < g.c.size(); ++i) {
      const auto& cp = d_->components()[i];
      if (cp.torsion) {
        if (g.c[i] < 0 || g.c[i] >= cp.modulus) return false;
      } else if (g.c[i] < -radius_ || g.c[i] > radius_) {
        return false;
      }
    }
    return true;
  }

  /// Lexicographic visit of the whole ball.
  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t i = 0; i < size_; ++i) f(at(i));
  }

  /// Scan-order visit; stops early when f returns true.
  template <class F>
  bool scan_until(F&& f) const {
    for (std::uint64_t i = 0; i < size_; ++i)
      if (f(scan_at(i))) return true;
    return false;
  }

 private:
  std::int64_t zigzag_value(std::size_t comp, std::uint64_t digit) const {
    const auto& cp = d_->components()[comp];
    if (digit == 0) return 0;
    std::int64_t step = static_cast<std::int64_t>((digit + 1) / 2);
    bool positive = (digit % 2) == 1;
    if (cp.torsion) return positive ? step : cp.modulus - step;
    return positive ? step : -step;
  }

  const GroupDescriptor* d_;
  std::int64_t radius_;
  std::vector<std::uint64_t> sizes_;
  std::uint64_t size_ = 0;
};

struct LawViolation {
  std::string law;
  std::vector<GroupElement> witness;
};

struct DescriptorReport {
  bool ok = false;
  bool triangular = false;
  std::uint64_t samples_checked = 0;
  std::vector<LawViolation> violations;  // first few only
};

}  // namespace cartan
