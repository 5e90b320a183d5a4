#pragma once

// Frames with a pair of join-preserving modalities (◇, ◆), their right
// adjoints, and the T/K4/S4/S5 conditions.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qmodal/error.hpp"
#include "qmodal/lattice.hpp"
#include "qmodal/quantale.hpp"

namespace qmodal {

  using Endomap = std::vector<element>;

  struct BimodalFrame {
    FiniteLattice frame;
    Endomap       diamond;  // ◇
    Endomap       black;    // ◆
  };

  enum class ModalClass { K, T, K4, S4, S5 };

  inline std::string modal_class_name(ModalClass c) {
    switch (c) {
      case ModalClass::K: return "K";
      case ModalClass::T: return "T";
      case ModalClass::K4: return "K4";
      case ModalClass::S4: return "S4";
      case ModalClass::S5: return "S5";
    }
    return "?";
  }

  inline CheckResult check_join_preserving(FiniteLattice const& L, Endomap const& f) {
    if (f.size() != L.size()) {
      return CheckResult::fail("join-preserving", "table has wrong size");
    }
    if (f[L.bottom()] != L.bottom()) {
      return CheckResult::fail("join-preserving", "f(0) != 0");
    }
    for (element a = 0; a < L.size(); ++a) {
      for (element b = a + 1; b < L.size(); ++b) {
        if (f[L.join(a, b)] != L.join(f[a], f[b])) {
          return CheckResult::fail("join-preserving", L.name(a) + " v " + L.name(b));
        }
      }
    }
    return CheckResult::pass();
  }

  // ◇x ∧ y ≤ ◇(x ∧ ◆y) and ◆x ∧ y ≤ ◆(x ∧ ◇y).  Throws NotJoinPreserving
  // before looking at the inequalities.
  inline CheckResult check_conjugacy(FiniteLattice const& L, Endomap const& d, Endomap const& b) {
    for (auto const* f : {&d, &b}) {
      if (auto r = check_join_preserving(L, *f); !r) {
        throw Error(Errc::NotJoinPreserving,
                    std::string(f == &d ? "first map" : "second map") + ": " + r.witness);
      }
    }
    for (element x = 0; x < L.size(); ++x) {
      for (element y = 0; y < L.size(); ++y) {
        if (!L.leq(L.meet(d[x], y), d[L.meet(x, b[y])])) {
          return CheckResult::fail("conjugacy.diamond", "x=" + L.name(x) + " y=" + L.name(y));
        }
        if (!L.leq(L.meet(b[x], y), b[L.meet(x, d[y])])) {
          return CheckResult::fail("conjugacy.black", "x=" + L.name(x) + " y=" + L.name(y));
        }
      }
    }
    return CheckResult::pass();
  }

  inline BimodalFrame make_bimodal_frame(FiniteLattice L, Endomap d, Endomap b) {
    if (!L.is_frame()) {
      throw Error(Errc::NotAFrame, "bimodal frames live on frames");
    }
    if (auto r = check_conjugacy(L, d, b); !r) {
      throw Error(Errc::NotConjugate, r.law + " fails at " + r.witness);
    }
    return {std::move(L), std::move(d), std::move(b)};
  }

  // (ςQ, ς(α·−), ς(α⁻·−)) on the support locale of q.
  template <SupportedQuantale Q>
  BimodalFrame diamonds_from_point(Q const& q, typename Q::element const& alpha) {
    auto        loc  = supports_locale(q);
    auto        ainv = q.inv(alpha);
    std::size_t n    = loc.members.size();
    Endomap     d(n), b(n);
    for (element i = 0; i < n; ++i) {
      d[i] = loc.index_of(q.support(q.mul(alpha, loc.members[i])));
      b[i] = loc.index_of(q.support(q.mul(ainv, loc.members[i])));
    }
    try {
      return make_bimodal_frame(std::move(loc.lattice), std::move(d), std::move(b));
    } catch (Error const& e) {
      throw Error(Errc::InternalValidationFailed, std::string("modalities of a point: ") + e.what());
    }
  }

  // □y = ⋁{x : ◆x ≤ y} and ■y = ⋁{x : ◇x ≤ y}; both adjunctions are
  // re-checked on every pair.
  inline std::pair<Endomap, Endomap> box_adjoints(FiniteLattice const& L,
                                                  Endomap const&       d,
                                                  Endomap const&       b) {
    std::size_t n = L.size();
    Endomap     box(n, L.bottom()), blackbox(n, L.bottom());
    for (element y = 0; y < n; ++y) {
      for (element x = 0; x < n; ++x) {
        if (L.leq(b[x], y)) {
          box[y] = L.join(box[y], x);
        }
        if (L.leq(d[x], y)) {
          blackbox[y] = L.join(blackbox[y], x);
        }
      }
    }
    for (element x = 0; x < n; ++x) {
      for (element y = 0; y < n; ++y) {
        if (L.leq(b[x], y) != L.leq(x, box[y]) || L.leq(d[x], y) != L.leq(x, blackbox[y])) {
          throw Error(Errc::InternalValidationFailed,
                      "adjunction fails at " + L.name(x) + ", " + L.name(y)
                          + " (maps not join-preserving?)");
        }
      }
    }
    return {std::move(box), std::move(blackbox)};
  }

  // T: x ≤ ◇x, x ≤ ◆x.  K4: ◇◇x ≤ ◇x, ◆◆x ≤ ◆x.  S4: both.  S5: S4 and
  // ◇ = ◆, with ◇ conjugate to itself.
  inline CheckResult check_modal_class(FiniteLattice const& L,
                                       Endomap const&       d,
                                       Endomap const&       b,
                                       ModalClass           c) {
    bool t  = c == ModalClass::T || c == ModalClass::S4 || c == ModalClass::S5;
    bool k4 = c == ModalClass::K4 || c == ModalClass::S4 || c == ModalClass::S5;
    for (element x = 0; x < L.size(); ++x) {
      if (t && !(L.leq(x, d[x]) && L.leq(x, b[x]))) {
        return CheckResult::fail("T", L.name(x));
      }
      if (k4 && !(L.leq(d[d[x]], d[x]) && L.leq(b[b[x]], b[x]))) {
        return CheckResult::fail("K4", L.name(x));
      }
      if (c == ModalClass::S5 && d[x] != b[x]) {
        return CheckResult::fail("S5", L.name(x));
      }
    }
    if (c == ModalClass::S5) {
      if (auto r = check_conjugacy(L, d, d); !r) {
        return CheckResult::fail("S5.self-conjugate", r.witness);
      }
    }
    return CheckResult::pass();
  }

  // Join-preserving endomaps of a finite distributive lattice, from their
  // monotone restrictions to the join-irreducibles.
  inline std::vector<Endomap> enumerate_join_preserving(FiniteLattice const& L) {
    if (!L.is_frame()) {
      throw Error(Errc::NotAFrame, "enumeration needs a distributive lattice");
    }
    auto        J = join_irreducibles(L);
    std::size_t n = L.size(), k = J.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
      total *= n;
      if (total > 1'000'000) {
        throw Error(Errc::TooLarge, "too many candidate maps");
      }
    }
    std::vector<Endomap> out;
    std::vector<element> val(k);
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (std::size_t i = 0; i < k; ++i) {
        val[i] = c % n;
        c /= n;
      }
      bool monotone = true;
      for (std::size_t i = 0; i < k && monotone; ++i) {
        for (std::size_t i2 = 0; i2 < k; ++i2) {
          if (L.leq(J[i], J[i2]) && !L.leq(val[i], val[i2])) {
            monotone = false;
            break;
          }
        }
      }
      if (!monotone) {
        continue;
      }
      Endomap f(n, L.bottom());
      for (element x = 0; x < n; ++x) {
        for (std::size_t i = 0; i < k; ++i) {
          if (L.leq(J[i], x)) {
            f[x] = L.join(f[x], val[i]);
          }
        }
      }
      out.push_back(std::move(f));
    }
    return out;
  }

  inline std::vector<std::pair<Endomap, Endomap>> enumerate_conjugate_pairs(FiniteLattice const& L) {
    auto                                     maps = enumerate_join_preserving(L);
    std::vector<std::pair<Endomap, Endomap>> out;
    for (auto const& d : maps) {
      for (auto const& b : maps) {
        if (check_conjugacy(L, d, b)) {
          out.emplace_back(d, b);
        }
      }
    }
    return out;
  }

}  // namespace qmodal
