#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "palg/element_set.hpp"
#include "palg/error.hpp"

namespace palg {

// A finite partial order on 0..size-1, stored as a full reachability matrix
// (both directions) so that leq is a single bit test.
class Poset {
 public:
  Poset() = default;

  // Reflexive-transitive closure of the given (lo, hi) pairs. Throws
  // invalid_argument if the closure is not antisymmetric.
  static Poset from_pairs(std::size_t size,
                          const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                          const Limits& limits = {});

  // Uses `leq` verbatim; checks reflexivity, antisymmetry and transitivity.
  static Poset from_relation(std::size_t size,
                             const std::function<bool(std::size_t, std::size_t)>& leq,
                             const Limits& limits = {});

  static Poset antichain(std::size_t size);
  static Poset chain(std::size_t size);

  std::size_t size() const noexcept { return up_.size(); }
  bool leq(std::size_t i, std::size_t j) const noexcept { return up_[i].test(j); }
  bool less(std::size_t i, std::size_t j) const noexcept { return i != j && leq(i, j); }

  // {j : i <= j} and {j : j <= i}.
  const ElementSet& up(std::size_t i) const noexcept { return up_[i]; }
  const ElementSet& down(std::size_t i) const noexcept { return down_[i]; }

  // Covering pairs (lo, hi), sorted; the transitive reduction of leq.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

  Poset reversed() const;
  // Points of *this keep their indices; points of `other` are shifted by size().
  Poset disjoint_union(const Poset& other) const;
  Poset restricted(const ElementSet& subset) const;

  ElementSet empty_set() const { return ElementSet(size()); }
  ElementSet full_set() const { return ElementSet::full(size()); }

  friend bool operator==(const Poset&, const Poset&) = default;

 private:
  std::vector<ElementSet> up_;
  std::vector<ElementSet> down_;
};

bool is_upset(const Poset& p, const ElementSet& s);
bool is_downset(const Poset& p, const ElementSet& s);
ElementSet upset_closure(const Poset& p, const ElementSet& s);
ElementSet downset_closure(const Poset& p, const ElementSet& s);
ElementSet max_elements(const Poset& p, const ElementSet& s);
ElementSet min_elements(const Poset& p, const ElementSet& s);

// Every upset exactly once, ordered by cardinality then mask value. Throws
// cap_exceeded as soon as more than `cap` upsets have been produced.
std::vector<ElementSet> enumerate_upsets(const Poset& p, std::size_t cap);

// Same count as enumerate_upsets without storing anything.
std::size_t count_upsets(const Poset& p, std::size_t cap);

// Order-preserving and f(max up(x)) = max up(f(x)) for every x.
bool is_pp_morphism(const Poset& from, const Poset& to,
                    const std::vector<std::size_t>& map);

std::optional<std::vector<std::size_t>> poset_isomorphic(const Poset& p,
                                                         const Poset& q);

std::string export_dot(const Poset& p, const std::vector<std::string>& labels,
                       const std::string& name = "poset");

}  // namespace palg
