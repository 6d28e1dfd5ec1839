#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace sunada {

// Permutation of {0..n-1} as an image array.
//
// Products compose left-to-right: (a * b)(x) = b(a(x)), so right coset
// actions Hx -> Hxg become honest homomorphisms g -> act(g).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images) : img_(std::move(images)) { check(); }

  static Permutation identity(int degree) {
    std::vector<int> v(degree);
    std::iota(v.begin(), v.end(), 0);
    Permutation p;
    p.img_ = std::move(v);
    return p;
  }

  // Builds a permutation from disjoint cycles, e.g. {{0,1},{2,3,4}}.
  static Permutation from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
    Permutation p = identity(degree);
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) p.img_[c[i]] = c[(i + 1) % c.size()];
    }
    p.check();
    return p;
  }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[x]; }
  const std::vector<int>& images() const { return img_; }

  Permutation operator*(const Permutation& o) const {
    if (degree() != o.degree()) throw std::invalid_argument("Permutation: degree mismatch");
    std::vector<int> v(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) v[i] = o.img_[img_[i]];
    Permutation p;
    p.img_ = std::move(v);
    return p;
  }

  Permutation inverse() const {
    std::vector<int> v(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) v[img_[i]] = static_cast<int>(i);
    Permutation p;
    p.img_ = std::move(v);
    return p;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != static_cast<int>(i)) return false;
    return true;
  }

  int fixed_points() const {
    int n = 0;
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] == static_cast<int>(i)) ++n;
    return n;
  }

  auto operator<=>(const Permutation&) const = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(img_[i]);
    }
    return s + ")";
  }

 private:
  void check() const {
    std::vector<char> seen(img_.size(), 0);
    for (int x : img_) {
      if (x < 0 || x >= degree() || seen[x]) throw std::invalid_argument("Permutation: not a bijection");
      seen[x] = 1;
    }
  }

  std::vector<int> img_;
};

// h conjugated by g, i.e. g^{-1} h g in left-to-right convention.
inline Permutation conjugate(const Permutation& h, const Permutation& g) {
  return g.inverse() * h * g;
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : p.images()) {
      h ^= static_cast<std::size_t>(x);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace sunada
