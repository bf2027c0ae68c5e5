#pragma once

// Reference versions of the search-space operations on small explicit sets.
// The production enumerator implements the same operations incrementally.

#include <algorithm>
#include <span>
#include <vector>

#include "merlin/dist.hpp"

namespace merlin::theory {

template <class T>
bool contains(const std::vector<T>& xs, const T& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

// Walk `ordered` and keep an element once all of its children are kept.
template <class T, class ChildrenFn>
std::vector<T> enumerate_bottom_up(std::span<const T> ordered, ChildrenFn children) {
  std::vector<T> kept;
  for (const auto& p : ordered) {
    bool ok = true;
    for (const auto& c : children(p)) ok = ok && contains(kept, T(c));
    if (ok) kept.push_back(p);
  }
  return kept;
}

// Largest subset of P closed under taking children.
template <class T, class ChildrenFn>
std::vector<T> bottom_up_closure(std::span<const T> set, ChildrenFn children) {
  std::vector<T> cur(set.begin(), set.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<T> next;
    for (const auto& p : cur) {
      bool ok = true;
      for (const auto& c : children(p)) ok = ok && contains(cur, T(c));
      if (ok) next.push_back(p);
      else changed = true;
    }
    cur = std::move(next);
  }
  return cur;
}

// Keep the first element of each class of the induced equivalence.
template <class T, class DistFn>
std::vector<T> factorize(std::span<const T> ordered, DistFn dist) {
  std::vector<T> kept;
  for (const auto& p : ordered) {
    bool dup = false;
    for (const auto& q : kept) dup = dup || dist(p, q).is_zero();
    if (!dup) kept.push_back(p);
  }
  return kept;
}

// Elements a with dist(a, center) < r, or <= r when closed.
template <class T, class DistFn>
std::vector<T> ball(std::span<const T> set, const T& center, Dist r, bool closed, DistFn dist) {
  std::vector<T> out;
  for (const auto& a : set) {
    Dist d = dist(a, center);
    if (closed ? d <= r : d < r) out.push_back(a);
  }
  return out;
}

template <class T, class DistFn>
std::vector<T> prune(std::span<const T> set, const T& target, Dist r, DistFn dist) {
  return ball(set, target, r, false, dist);
}

}  // namespace merlin::theory
