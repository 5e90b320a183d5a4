#pragma once

// Quantic nuclei on table quantales, the supported closure of a set of
// inequalities, the least nucleus forcing them, and quotients.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qmodal/error.hpp"
#include "qmodal/lattice.hpp"
#include "qmodal/quantale.hpp"

namespace qmodal {

  // Each pair (y, z) is read as the inequality y ≤ z.
  using GeneratingRelation = std::vector<std::pair<element, element>>;

  // j(x)j(y) ≤ j(xy), j(x)⁻ = j(x⁻), ς(j x) ≤ j(ς x), plus the closure laws.
  // The support law is skipped when q carries no support.
  inline CheckResult is_nucleus(Quantale const& q, ClosureOperator const& j) {
    if (auto r = check_closure(q.lattice(), j.map); !r) {
      return r;
    }
    auto nm = [&](element x) { return q.describe(x); };
    for (element x = 0; x < q.size(); ++x) {
      if (q.inv(j(x)) != j(q.inv(x))) {
        return CheckResult::fail("nucleus.involution", nm(x));
      }
      if (q.has_support() && !q.leq(q.support(j(x)), j(q.support(x)))) {
        return CheckResult::fail("nucleus.support", nm(x));
      }
      for (element y = 0; y < q.size(); ++y) {
        if (!q.leq(q.mul(j(x), j(y)), j(q.mul(x, y)))) {
          return CheckResult::fail("nucleus.multiplicative", nm(x) + ", " + nm(y));
        }
      }
    }
    return CheckResult::pass();
  }

  // Least superset of R closed under (y,z) ↦ (ay,az), (ya,za), (ςy,ςz) and
  // (y⁻,z⁻).  Pairs come out in discovery order.
  inline GeneratingRelation supported_closure(Quantale const& q, GeneratingRelation const& R) {
    std::size_t        n = q.size();
    std::vector<bool>  seen(n * n, false);
    GeneratingRelation out;
    auto add = [&](element y, element z) {
      if (!seen[y * n + z]) {
        seen[y * n + z] = true;
        out.emplace_back(y, z);
      }
    };
    for (auto [y, z] : R) {
      if (y >= n || z >= n) {
        throw Error(Errc::UnknownSymbol, "generating pair outside the carrier");
      }
      add(y, z);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      auto [y, z] = out[i];
      for (element a = 0; a < n; ++a) {
        add(q.mul(a, y), q.mul(a, z));
        add(q.mul(y, a), q.mul(z, a));
      }
      if (q.has_support()) {
        add(q.support(y), q.support(z));
      }
      add(q.inv(y), q.inv(z));
    }
    return out;
  }

  // {x : ∀(y,z) ∈ R̄, z ≤ x ⇒ y ≤ x}.
  inline std::vector<element> closed_by_characterization(Quantale const&           q,
                                                         GeneratingRelation const& closure) {
    std::vector<element> out;
    for (element x = 0; x < q.size(); ++x) {
      bool ok = true;
      for (auto [y, z] : closure) {
        if (q.leq(z, x) && !q.leq(y, x)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        out.push_back(x);
      }
    }
    return out;
  }

  inline ClosureOperator least_nucleus(Quantale const& q, GeneratingRelation const& R) {
    auto        closure = supported_closure(q, R);
    auto        closed  = closed_by_characterization(q, closure);
    auto const& L       = q.lattice();
    ClosureOperator j;
    try {
      j = closure_from_meet_closed(L, closed);
    } catch (Error const& e) {
      throw Error(Errc::InternalValidationFailed, std::string("closed set: ") + e.what());
    }
    if (auto r = is_nucleus(q, j); !r) {
      throw Error(Errc::InternalValidationFailed, r.law + " fails at " + r.witness);
    }
    for (auto [y, z] : R) {
      if (!L.leq(j(y), j(z))) {
        throw Error(Errc::InternalValidationFailed,
                    "generator " + q.describe(y) + " <= " + q.describe(z) + " not forced");
      }
    }
    return j;
  }

  struct QuantaleQuotient {
    Quantale             quantale;
    std::vector<element> members;  // quotient index -> closed element of the host
    std::vector<element> project;  // host element -> quotient index of j(x)
  };

  // Q_j with x·y = j(xy), joins j(⋁), unit j(e) and support δ = j∘ς.  All
  // quantale and support laws are re-validated, and so are the homomorphism
  // equations for x ↦ j(x).
  inline QuantaleQuotient quotient(Quantale const& q, ClosureOperator const& j) {
    if (auto r = is_nucleus(q, j); !r) {
      throw Error(Errc::InternalValidationFailed, "not a nucleus: " + r.law + " at " + r.witness);
    }
    auto        fixed = closed_elements(q.lattice(), j);
    std::size_t m     = fixed.members.size();
    auto        idx   = [&](element x) { return fixed.index_of(j(x)); };
    std::vector<element> mul(m * m), inv(m);
    for (element a = 0; a < m; ++a) {
      inv[a] = idx(q.inv(fixed.members[a]));
      for (element b = 0; b < m; ++b) {
        mul[a * m + b] = idx(q.mul(fixed.members[a], fixed.members[b]));
      }
    }
    QuantaleQuotient out;
    out.members = fixed.members;
    out.project.resize(q.size());
    for (element x = 0; x < q.size(); ++x) {
      out.project[x] = idx(x);
    }
    try {
      out.quantale = make_quantale(fixed.lattice, std::move(mul), std::move(inv), idx(q.unit()));
      if (q.has_support()) {
        std::vector<element> delta(m);
        for (element a = 0; a < m; ++a) {
          delta[a] = idx(q.support(fixed.members[a]));
        }
        // With a stable support upstairs the quotient must carry one too.
        bool stable = static_cast<bool>(check_support_laws(q));
        out.quantale = stable ? with_support(std::move(out.quantale), std::move(delta))
                              : with_presupport(std::move(out.quantale), std::move(delta));
      }
    } catch (Error const& e) {
      throw Error(Errc::InternalValidationFailed, std::string("quotient: ") + e.what());
    }
    auto const& Qj = out.quantale;
    auto const& p  = out.project;
    for (element x = 0; x < q.size(); ++x) {
      bool ok = p[q.inv(x)] == Qj.inv(p[x]);
      if (q.has_support()) {
        ok = ok && p[q.support(x)] == Qj.support(p[x]);
      }
      for (element y = 0; y < q.size() && ok; ++y) {
        ok = p[q.join(x, y)] == Qj.join(p[x], p[y]) && p[q.mul(x, y)] == Qj.mul(p[x], p[y]);
      }
      if (!ok) {
        throw Error(Errc::InternalValidationFailed,
                    "projection is not a homomorphism at " + q.describe(x));
      }
    }
    return out;
  }

  // Every nucleus of a small quantale, via the meet-closed subsets of its
  // lattice.  Limited to 4 elements.
  inline std::vector<ClosureOperator> enumerate_nuclei(Quantale const& q) {
    if (q.size() > 4) {
      throw Error(Errc::TooLarge, "nucleus enumeration limited to 4 elements");
    }
    std::vector<ClosureOperator> out;
    auto const&                  L = q.lattice();
    for (std::uint32_t mask = 0; mask < (1u << q.size()); ++mask) {
      std::vector<bool> in_s(q.size());
      std::vector<element> S;
      for (element x = 0; x < q.size(); ++x) {
        in_s[x] = (mask >> x & 1u) != 0;
        if (in_s[x]) {
          S.push_back(x);
        }
      }
      if (!is_meet_closed(L, in_s)) {
        continue;
      }
      auto j = closure_from_meet_closed(L, S);
      if (is_nucleus(q, j)) {
        out.push_back(std::move(j));
      }
    }
    return out;
  }

}  // namespace qmodal
