#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sunada/errors.hpp"
#include "sunada/perm.hpp"

namespace sunada {

inline constexpr std::size_t kElementCap = 200000;
inline constexpr int kDegreeCap = 10000;
inline constexpr std::size_t kSearchCap = 500000;

// Finite permutation group given by generators; elements enumerated on
// demand (closure under products, sorted for binary-search membership).
class PermGroup {
 public:
  PermGroup() = default;
  PermGroup(int degree, std::vector<Permutation> generators, std::string name = "")
      : degree_(degree), gens_(std::move(generators)), name_(std::move(name)) {
    if (degree_ <= 0 || degree_ > kDegreeCap) throw CapExceeded("PermGroup: degree out of range");
    for (const auto& g : gens_)
      if (g.degree() != degree_) throw std::invalid_argument("PermGroup: generator degree mismatch");
  }

  int degree() const { return degree_; }
  const std::string& name() const { return name_; }
  const std::vector<Permutation>& generators() const { return gens_; }

  const std::vector<Permutation>& elements() const {
    enumerate();
    return elems_;
  }

  std::size_t order() const { return elements().size(); }

  bool contains(const Permutation& p) const {
    enumerate();
    return std::binary_search(elems_.begin(), elems_.end(), p);
  }

  // Index into the sorted element list, or -1.
  int index_of(const Permutation& p) const {
    enumerate();
    auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
    if (it == elems_.end() || *it != p) return -1;
    return static_cast<int>(it - elems_.begin());
  }

  bool is_subgroup_of(const PermGroup& parent) const {
    if (degree_ != parent.degree()) return false;
    for (const auto& g : gens_)
      if (!parent.contains(g)) return false;
    return true;
  }

 private:
  void enumerate() const {
    if (!elems_.empty()) return;
    std::unordered_set<Permutation, PermutationHash> seen;
    std::deque<Permutation> queue;
    const Permutation id = Permutation::identity(degree_);
    seen.insert(id);
    queue.push_back(id);
    while (!queue.empty()) {
      Permutation p = std::move(queue.front());
      queue.pop_front();
      for (const auto& g : gens_) {
        Permutation q = p * g;
        if (seen.insert(q).second) {
          if (seen.size() > kElementCap) throw CapExceeded("PermGroup: enumeration cap exceeded");
          queue.push_back(std::move(q));
        }
      }
    }
    elems_.assign(seen.begin(), seen.end());
    std::sort(elems_.begin(), elems_.end());
  }

  int degree_ = 1;
  std::vector<Permutation> gens_;
  std::string name_;
  mutable std::vector<Permutation> elems_;
};

// A subgroup is itself a PermGroup; parenthood is checked at the call
// sites that need it.
using Subgroup = PermGroup;

struct ConjugacyClassTable {
  std::vector<Permutation> representatives;
  std::vector<std::size_t> sizes;
  std::vector<int> class_of;  // parallel to group.elements()

  std::size_t class_count() const { return representatives.size(); }
};

inline ConjugacyClassTable conjugacy_classes(const PermGroup& group) {
  const auto& elems = group.elements();
  ConjugacyClassTable table;
  table.class_of.assign(elems.size(), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (table.class_of[i] >= 0) continue;
    const int cls = static_cast<int>(table.representatives.size());
    table.representatives.push_back(elems[i]);
    // Orbit of elems[i] under conjugation by generators.
    std::size_t size = 0;
    std::deque<int> queue{static_cast<int>(i)};
    table.class_of[i] = cls;
    while (!queue.empty()) {
      const int j = queue.front();
      queue.pop_front();
      ++size;
      for (const auto& g : group.generators()) {
        const int k = group.index_of(conjugate(elems[j], g));
        if (table.class_of[k] < 0) {
          table.class_of[k] = cls;
          queue.push_back(k);
        }
      }
    }
    table.sizes.push_back(size);
  }
  return table;
}

inline void require_subgroup(const PermGroup& G, const Subgroup& H, const char* who) {
  if (!H.is_subgroup_of(G)) throw std::invalid_argument(std::string(who) + ": not a subgroup of the parent group");
}

// Exhaustive test for g H1 g^{-1} = H2 over all g in G.
inline bool is_conjugate_subgroups(const PermGroup& G, const Subgroup& H1, const Subgroup& H2) {
  require_subgroup(G, H1, "is_conjugate_subgroups");
  require_subgroup(G, H2, "is_conjugate_subgroups");
  if (H1.order() != H2.order()) return false;
  const auto& h2 = H2.elements();
  for (const auto& g : G.elements()) {
    bool all = true;
    for (const auto& h : H1.elements()) {
      if (!std::binary_search(h2.begin(), h2.end(), conjugate(h, g))) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

struct AlmostConjugacyReport {
  bool verdict = false;
  // Per conjugacy class of G: |class ∩ H1| and |class ∩ H2|.
  std::vector<std::pair<std::size_t, std::size_t>> per_class_counts;
};

inline AlmostConjugacyReport almost_conjugate(const PermGroup& G, const Subgroup& H1, const Subgroup& H2) {
  require_subgroup(G, H1, "almost_conjugate");
  require_subgroup(G, H2, "almost_conjugate");
  const ConjugacyClassTable table = conjugacy_classes(G);
  AlmostConjugacyReport report;
  report.per_class_counts.assign(table.class_count(), {0, 0});
  for (const auto& h : H1.elements()) report.per_class_counts[table.class_of[G.index_of(h)]].first++;
  for (const auto& h : H2.elements()) report.per_class_counts[table.class_of[G.index_of(h)]].second++;
  report.verdict = true;
  for (const auto& [a, b] : report.per_class_counts)
    if (a != b) report.verdict = false;
  return report;
}

// Right cosets Hg of a subgroup, with the right-multiplication action of
// the parent group on coset indices.
class CosetTable {
 public:
  CosetTable() = default;
  CosetTable(const PermGroup& G, const Subgroup& H) {
    require_subgroup(G, H, "coset_action");
    subgroup_elems_ = H.elements();
    degree_ = G.degree();
    for (const auto& g : G.elements()) {
      bool found = false;
      for (const auto& r : reps_) {
        if (std::binary_search(subgroup_elems_.begin(), subgroup_elems_.end(), g * r.inverse())) {
          found = true;
          break;
        }
      }
      if (!found) reps_.push_back(g);
    }
  }

  int index() const { return static_cast<int>(reps_.size()); }
  int degree() const { return degree_; }
  const std::vector<Permutation>& coset_reps() const { return reps_; }
  const std::vector<Permutation>& subgroup_elements() const { return subgroup_elems_; }

  int coset_of(const Permutation& g) const {
    for (std::size_t i = 0; i < reps_.size(); ++i)
      if (std::binary_search(subgroup_elems_.begin(), subgroup_elems_.end(), g * reps_[i].inverse()))
        return static_cast<int>(i);
    throw std::invalid_argument("CosetTable: element not in parent group");
  }

  // The permutation of coset indices induced by right multiplication.
  Permutation action(const Permutation& g) const {
    std::vector<int> img(reps_.size());
    for (std::size_t i = 0; i < reps_.size(); ++i) img[i] = coset_of(reps_[i] * g);
    return Permutation(std::move(img));
  }

 private:
  int degree_ = 1;
  std::vector<Permutation> reps_;
  std::vector<Permutation> subgroup_elems_;
};

inline CosetTable coset_action(const PermGroup& G, const Subgroup& H) { return CosetTable(G, H); }

// Number of cosets fixed by the action of g.
inline int permutation_character(const CosetTable& table, const Permutation& g) {
  return table.action(g).fixed_points();
}

// All subgroups generated by at most max_generators elements,
// deduplicated by element set.
inline std::vector<Subgroup> small_subgroups(const PermGroup& G, int max_generators) {
  if (max_generators > 2) throw std::invalid_argument("small_subgroups: at most 2 generators supported");
  const auto& elems = G.elements();
  const std::size_t n = elems.size();
  std::size_t candidates = 1 + n + (max_generators >= 2 ? n * (n - 1) / 2 : 0);
  if (candidates > kSearchCap) throw CapExceeded("small_subgroups: candidate count exceeds search cap");

  std::map<std::vector<Permutation>, Subgroup> dedup;
  auto add = [&](std::vector<Permutation> gens) {
    Subgroup H(G.degree(), std::move(gens));
    std::vector<Permutation> key = H.elements();
    dedup.emplace(std::move(key), std::move(H));
  };
  add({});
  if (max_generators >= 1)
    for (const auto& a : elems) add({a});
  if (max_generators >= 2)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) add({elems[i], elems[j]});

  std::vector<Subgroup> out;
  out.reserve(dedup.size());
  for (auto& [key, H] : dedup) out.push_back(std::move(H));
  return out;
}

// Almost conjugate, non-conjugate pairs among <= max_generators subgroups.
inline std::vector<std::pair<Subgroup, Subgroup>> search_gassmann(const PermGroup& G, int max_generators) {
  const std::vector<Subgroup> subs = small_subgroups(G, max_generators);
  const ConjugacyClassTable table = conjugacy_classes(G);

  // Class-intersection count vector per subgroup: Gassmann pairs must match.
  std::vector<std::vector<std::size_t>> counts(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    counts[i].assign(table.class_count(), 0);
    for (const auto& h : subs[i].elements()) counts[i][table.class_of[G.index_of(h)]]++;
  }

  std::vector<std::pair<Subgroup, Subgroup>> pairs;
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = i + 1; j < subs.size(); ++j) {
      if (counts[i] != counts[j]) continue;
      if (is_conjugate_subgroups(G, subs[i], subs[j])) continue;
      pairs.emplace_back(subs[i], subs[j]);
    }
  return pairs;
}

}  // namespace sunada
