#pragma once

// Naive fixed-point saturation of the supported closure, and the closed-set
// description of the least nucleus, written without the library's worklists.

#include <set>
#include <utility>
#include <vector>

#include "qmodal/quantale.hpp"

namespace oracle {

  using qmodal::element;
  using qmodal::Quantale;
  using PairSet = std::set<std::pair<element, element>>;

  inline PairSet supported_closure(Quantale const& q, PairSet R) {
    bool changed = true;
    while (changed) {
      changed = false;
      PairSet next = R;
      for (auto [y, z] : R) {
        for (element a = 0; a < q.size(); ++a) {
          next.emplace(q.mul(a, y), q.mul(a, z));
          next.emplace(q.mul(y, a), q.mul(z, a));
        }
        next.emplace(q.support(y), q.support(z));
        next.emplace(q.inv(y), q.inv(z));
      }
      if (next.size() != R.size()) {
        changed = true;
        R       = std::move(next);
      }
    }
    return R;
  }

  inline std::vector<bool> closed_set(Quantale const& q, PairSet const& closure) {
    std::vector<bool> closed(q.size(), true);
    for (element x = 0; x < q.size(); ++x) {
      for (auto [y, z] : closure) {
        if (q.leq(z, x) && !q.leq(y, x)) {
          closed[x] = false;
        }
      }
    }
    return closed;
  }

  // j(x) = ⋀{c closed : x ≤ c}, by scanning the order.
  inline std::vector<element> closure_map(Quantale const& q, std::vector<bool> const& closed) {
    std::vector<element> j(q.size());
    for (element x = 0; x < q.size(); ++x) {
      element best = q.top();
      for (element c = 0; c < q.size(); ++c) {
        if (closed[c] && q.leq(x, c) && q.leq(c, best)) {
          best = c;
        }
      }
      j[x] = best;
    }
    return j;
  }

}  // namespace oracle
