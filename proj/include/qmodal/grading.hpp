#pragma once

// Gradings of a finite quantale that is also a locale, given by a family
// e^(m) indexed by a finite involutive monoid, and graded nuclei.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qmodal/error.hpp"
#include "qmodal/lattice.hpp"
#include "qmodal/nucleus.hpp"
#include "qmodal/quantale.hpp"

namespace qmodal {

  struct InvolutiveMonoid {
    std::vector<std::string> names;
    std::vector<std::size_t> mul;  // size n*n, mul[m*n + k] = mk
    std::vector<std::size_t> inv;
    std::size_t              unit = 0;

    std::size_t size() const noexcept {
      return names.size();
    }
    std::size_t operator()(std::size_t m, std::size_t k) const {
      return mul[m * size() + k];
    }
  };

  namespace monoids {

    // Z/k with m⁻ = -m
    inline InvolutiveMonoid cyclic(std::size_t k) {
      InvolutiveMonoid M;
      for (std::size_t i = 0; i < k; ++i) {
        M.names.push_back(std::to_string(i));
        M.inv.push_back((k - i) % k);
        for (std::size_t j = 0; j < k; ++j) {
          M.mul.push_back((i + j) % k);
        }
      }
      return M;
    }

  }  // namespace monoids

  inline CheckResult check_monoid(InvolutiveMonoid const& M) {
    std::size_t n = M.size();
    if (M.mul.size() != n * n || M.inv.size() != n || M.unit >= n) {
      return CheckResult::fail("monoid.shape", "table sizes do not match");
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (M(M.unit, a) != a || M(a, M.unit) != a) {
        return CheckResult::fail("monoid.unit", M.names[a]);
      }
      if (M.inv[M.inv[a]] != a) {
        return CheckResult::fail("monoid.involution", M.names[a]);
      }
      for (std::size_t b = 0; b < n; ++b) {
        if (M.inv[M(a, b)] != M(M.inv[b], M.inv[a])) {
          return CheckResult::fail("monoid.involution", M.names[a] + " " + M.names[b]);
        }
        for (std::size_t c = 0; c < n; ++c) {
          if (M(M(a, b), c) != M(a, M(b, c))) {
            return CheckResult::fail("monoid.associative", M.names[a] + " " + M.names[b] + " " + M.names[c]);
          }
        }
      }
    }
    return CheckResult::pass();
  }

  struct GradingWitness {
    Quantale             quantale;
    InvolutiveMonoid     monoid;
    std::vector<element> units;  // e^(m)
  };

  // The five conditions: cover, disjointness, e^(m)e^(n) ≤ e^(mn),
  // e^(ε) = e, (e^(m))⁻ ≤ e^(m⁻).
  inline CheckResult check_grading(GradingWitness const& W) {
    auto const& q = W.quantale;
    auto const& M = W.monoid;
    auto const& u = W.units;
    if (!q.lattice().is_frame()) {
      return CheckResult::fail("grading.locale", "host lattice is not a frame");
    }
    if (auto r = check_monoid(M); !r) {
      return r;
    }
    if (u.size() != M.size()) {
      return CheckResult::fail("grading.shape", "one unit per degree required");
    }
    element cover = q.bottom();
    for (auto x : u) {
      cover = q.join(cover, x);
    }
    if (cover != q.top()) {
      return CheckResult::fail("grading.cover", "join is " + q.describe(cover));
    }
    for (std::size_t m = 0; m < M.size(); ++m) {
      for (std::size_t k = 0; k < M.size(); ++k) {
        if (m != k && q.meet(u[m], u[k]) != q.bottom()) {
          return CheckResult::fail("grading.disjoint", M.names[m] + " " + M.names[k]);
        }
      }
    }
    for (std::size_t m = 0; m < M.size(); ++m) {
      for (std::size_t k = 0; k < M.size(); ++k) {
        if (!q.leq(q.mul(u[m], u[k]), u[M(m, k)])) {
          return CheckResult::fail("grading.multiplicative", M.names[m] + " " + M.names[k]);
        }
      }
    }
    if (u[M.unit] != q.unit()) {
      return CheckResult::fail("grading.unit", "e^(" + M.names[M.unit] + ") = " + q.describe(u[M.unit]));
    }
    for (std::size_t m = 0; m < M.size(); ++m) {
      if (!q.leq(q.inv(u[m]), u[M.inv[m]])) {
        return CheckResult::fail("grading.involution", M.names[m]);
      }
    }
    return CheckResult::pass();
  }

  // a_m = a ∧ e^(m)
  inline std::vector<element> decompose(GradingWitness const& W, element a) {
    std::vector<element> out;
    for (auto x : W.units) {
      out.push_back(W.quantale.meet(a, x));
    }
    return out;
  }

  inline std::size_t degree_of(GradingWitness const& W, element a) {
    for (std::size_t m = 0; m < W.units.size(); ++m) {
      if (W.quantale.leq(a, W.units[m])) {
        return m;
      }
    }
    return W.units.size();
  }

  // True when every pair lies inside a single component.
  inline bool respects_grading(GradingWitness const& W, GeneratingRelation const& R) {
    for (auto [y, z] : R) {
      bool same = false;
      for (auto x : W.units) {
        same = same || (W.quantale.leq(y, x) && W.quantale.leq(z, x));
      }
      if (!same) {
        return false;
      }
    }
    return true;
  }

  // Density j(0) = 0, j(Q^(m)) ⊂ Q^(m), j(⋁ a_m) = ⋁ j(a_m), and the
  // quotient graded by j(e^(m)).
  inline CheckResult check_graded_nucleus(GradingWitness const& W, ClosureOperator const& j) {
    auto const& q = W.quantale;
    if (auto r = check_grading(W); !r) {
      return r;
    }
    if (auto r = is_nucleus(q, j); !r) {
      return r;
    }
    if (j(q.bottom()) != q.bottom()) {
      return CheckResult::fail("graded.dense", "j(0) = " + q.describe(j(q.bottom())));
    }
    for (std::size_t m = 0; m < W.units.size(); ++m) {
      for (element a = 0; a < q.size(); ++a) {
        if (q.leq(a, W.units[m]) && !q.leq(j(a), W.units[m])) {
          return CheckResult::fail("graded.preserves-degree", q.describe(a) + " in degree " + W.monoid.names[m]);
        }
      }
    }
    for (element a = 0; a < q.size(); ++a) {
      element s = q.bottom();
      for (auto am : decompose(W, a)) {
        s = q.join(s, j(am));
      }
      if (s != j(a)) {
        return CheckResult::fail("graded.preserves-decomposition", q.describe(a));
      }
    }
    auto           Qj = quotient(q, j);
    GradingWitness down{Qj.quantale, W.monoid, {}};
    for (auto x : W.units) {
      down.units.push_back(Qj.project[x]);
    }
    if (auto r = check_grading(down); !r) {
      return CheckResult::fail("graded.quotient", r.law + " " + r.witness);
    }
    return CheckResult::pass();
  }

}  // namespace qmodal
