#ifndef RCX_SIMPLEX_HPP
#define RCX_SIMPLEX_HPP

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rcx/errors.hpp"

namespace rcx {

/// A nonempty, strictly increasing set of 1-based vertex labels.
class Simplex {
 public:
  Simplex() = default;

  Simplex(std::initializer_list<int> vertices) : Simplex(std::vector<int>(vertices)) {}

  explicit Simplex(std::vector<int> vertices) : v_(std::move(vertices)) {
    std::sort(v_.begin(), v_.end());
    require(!v_.empty(), "simplex must be nonempty");
    require(v_.front() >= 1, "simplex vertex labels start at 1");
    require(std::adjacent_find(v_.begin(), v_.end()) == v_.end(),
            "simplex vertices must be distinct");
  }

  static Simplex from_sorted(std::span<const int> vertices) {
    Simplex s;
    s.v_.assign(vertices.begin(), vertices.end());
    return s;
  }

  int size() const noexcept { return static_cast<int>(v_.size()); }
  int dimension() const noexcept { return size() - 1; }
  int min() const { return v_.front(); }
  int max() const { return v_.back(); }
  std::span<const int> vertices() const noexcept { return v_; }
  int operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }

  bool contains(int v) const { return std::binary_search(v_.begin(), v_.end(), v); }

  bool is_face_of(const Simplex& other) const {
    return std::includes(other.v_.begin(), other.v_.end(), v_.begin(), v_.end());
  }

  /// The simplex with its minimum removed; empty for a vertex.
  std::vector<int> without_min() const { return {v_.begin() + 1, v_.end()}; }

  Simplex with(int v) const {
    std::vector<int> w = v_;
    w.insert(std::upper_bound(w.begin(), w.end(), v), v);
    return Simplex(std::move(w));
  }

  /// Comma-separated vertex list, e.g. "3,4,5".
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(v_[i]);
    }
    return out;
  }

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex& a, const Simplex& b) { return a.v_ <=> b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Simplex& s) {
    return os << '{' << s.to_string() << '}';
  }

 private:
  std::vector<int> v_;
};

/// Order used for dumps: size ascending, then lexicographic.
struct BySizeThenLex {
  bool operator()(const Simplex& a, const Simplex& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

}  // namespace rcx

#endif  // RCX_SIMPLEX_HPP
