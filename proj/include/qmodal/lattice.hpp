#pragma once

// Finite complete lattices stored as dense tables, together with closure
// operators, congruences and Heyting residuation.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmodal/error.hpp"

namespace qmodal {

  // Elements of a table-backed structure are dense indices.
  using element = std::size_t;

  class FiniteLattice {
   public:
    FiniteLattice() = default;

    std::size_t size() const noexcept {
      return _n;
    }
    element bottom() const noexcept {
      return _bottom;
    }
    element top() const noexcept {
      return _top;
    }
    bool leq(element a, element b) const noexcept {
      return _leq[a * _n + b] != 0;
    }
    element join(element a, element b) const noexcept {
      return _join[a * _n + b];
    }
    element meet(element a, element b) const noexcept {
      return _meet[a * _n + b];
    }
    bool is_frame() const noexcept {
      return _frame;
    }

    template <typename Range>
    element join_all(Range const& xs) const {
      element r = _bottom;
      for (element x : xs) {
        r = join(r, x);
      }
      return r;
    }

    template <typename Range>
    element meet_all(Range const& xs) const {
      element r = _top;
      for (element x : xs) {
        r = meet(r, x);
      }
      return r;
    }

    std::string const& name(element a) const {
      return _names[a];
    }
    std::vector<std::string> const& names() const noexcept {
      return _names;
    }
    std::optional<element> index_of(std::string const& nm) const {
      auto it = std::find(_names.begin(), _names.end(), nm);
      if (it == _names.end()) {
        return std::nullopt;
      }
      return static_cast<element>(it - _names.begin());
    }

    // Builds a lattice from a partial order given as a predicate; computes
    // the join and meet tables.  Throws NotAPartialOrder or NotALattice.
    template <typename Leq>
    static FiniteLattice from_order(std::vector<std::string> names, Leq&& le);

    // Builds a lattice from known operations.  Only consistency between the
    // order and the two operations is checked (O(n^2)).
    template <typename Leq, typename Join, typename Meet>
    static FiniteLattice from_operations(std::vector<std::string> names,
                                         Leq&&                    le,
                                         Join&&                   jn,
                                         Meet&&                   mt);

    friend bool operator==(FiniteLattice const& a, FiniteLattice const& b) {
      return a._n == b._n && a._leq == b._leq;
    }

   private:
    void finish();

    std::size_t                _n = 0;
    std::vector<std::uint8_t>  _leq;
    std::vector<std::uint32_t> _join;
    std::vector<std::uint32_t> _meet;
    element                    _bottom = 0;
    element                    _top    = 0;
    bool                       _frame  = false;
    std::vector<std::string>   _names;
  };

  template <typename Leq>
  FiniteLattice FiniteLattice::from_order(std::vector<std::string> names,
                                          Leq&&                    le) {
    FiniteLattice L;
    std::size_t   n = names.size();
    if (n == 0) {
      throw Error(Errc::NotALattice, "empty carrier");
    }
    L._n     = n;
    L._names = std::move(names);
    L._leq.assign(n * n, 0);
    for (element a = 0; a < n; ++a) {
      for (element b = 0; b < n; ++b) {
        L._leq[a * n + b] = le(a, b) ? 1 : 0;
      }
    }
    for (element a = 0; a < n; ++a) {
      if (!L.leq(a, a)) {
        throw Error(Errc::NotAPartialOrder,
                    "not reflexive at " + L._names[a]);
      }
      for (element b = 0; b < n; ++b) {
        if (a != b && L.leq(a, b) && L.leq(b, a)) {
          throw Error(Errc::NotAPartialOrder,
                      "not antisymmetric at " + L._names[a] + ", "
                          + L._names[b]);
        }
        if (!L.leq(a, b)) {
          continue;
        }
        for (element c = 0; c < n; ++c) {
          if (L.leq(b, c) && !L.leq(a, c)) {
            throw Error(Errc::NotAPartialOrder,
                        "not transitive at " + L._names[a] + " <= "
                            + L._names[b] + " <= " + L._names[c]);
          }
        }
      }
    }
    L._join.assign(n * n, 0);
    L._meet.assign(n * n, 0);
    std::vector<element> bounds;
    bounds.reserve(n);
    for (element a = 0; a < n; ++a) {
      for (element b = a; b < n; ++b) {
        for (int pass = 0; pass < 2; ++pass) {
          bool upper = pass == 0;
          bounds.clear();
          for (element c = 0; c < n; ++c) {
            bool ok = upper ? (L.leq(a, c) && L.leq(b, c))
                            : (L.leq(c, a) && L.leq(c, b));
            if (ok) {
              bounds.push_back(c);
            }
          }
          std::optional<element> best;
          if (!bounds.empty()) {
            element cand = bounds.front();
            for (element c : bounds) {
              if (upper ? L.leq(c, cand) : L.leq(cand, c)) {
                cand = c;
              }
            }
            bool least = std::all_of(bounds.begin(), bounds.end(), [&](element c) {
              return upper ? L.leq(cand, c) : L.leq(c, cand);
            });
            if (least) {
              best = cand;
            }
          }
          if (!best) {
            throw Error(Errc::NotALattice,
                        std::string(upper ? "no least upper bound" : "no greatest lower bound")
                            + " for " + L._names[a] + ", " + L._names[b]);
          }
          auto& table = upper ? L._join : L._meet;
          table[a * n + b] = table[b * n + a] = static_cast<std::uint32_t>(*best);
        }
      }
    }
    L.finish();
    return L;
  }

  template <typename Leq, typename Join, typename Meet>
  FiniteLattice FiniteLattice::from_operations(std::vector<std::string> names,
                                               Leq&&                    le,
                                               Join&&                   jn,
                                               Meet&&                   mt) {
    FiniteLattice L;
    std::size_t   n = names.size();
    if (n == 0) {
      throw Error(Errc::NotALattice, "empty carrier");
    }
    L._n     = n;
    L._names = std::move(names);
    L._leq.assign(n * n, 0);
    L._join.assign(n * n, 0);
    L._meet.assign(n * n, 0);
    for (element a = 0; a < n; ++a) {
      for (element b = 0; b < n; ++b) {
        bool     l = le(a, b);
        element  j = jn(a, b);
        element  m = mt(a, b);
        L._leq[a * n + b]  = l ? 1 : 0;
        L._join[a * n + b] = static_cast<std::uint32_t>(j);
        L._meet[a * n + b] = static_cast<std::uint32_t>(m);
        if (l != (j == b) || l != (m == a)) {
          throw Error(Errc::NotALattice,
                      "order inconsistent with operations at " + L._names[a]
                          + ", " + L._names[b]);
        }
      }
    }
    L.finish();
    return L;
  }

  inline void FiniteLattice::finish() {
    std::size_t n = _n;
    _bottom       = 0;
    _top          = 0;
    for (element a = 0; a < n; ++a) {
      if (leq(a, _bottom)) {
        _bottom = a;
      }
      if (leq(_top, a)) {
        _top = a;
      }
    }
    // Binary distributivity is enough for finite lattices: every join of a
    // subset is a finite iterated binary join, and x ∧ 0 = 0.
    _frame = true;
    for (element x = 0; x < n && _frame; ++x) {
      for (element a = 0; a < n && _frame; ++a) {
        for (element b = a + 1; b < n; ++b) {
          if (meet(x, join(a, b)) != join(meet(x, a), meet(x, b))) {
            _frame = false;
            break;
          }
        }
      }
    }
  }

  // The public constructor: a list of element names and an order predicate.
  template <typename Leq>
  FiniteLattice make_lattice(std::vector<std::string> names, Leq&& le) {
    return FiniteLattice::from_order(std::move(names), std::forward<Leq>(le));
  }

  // x ∧ ⋁Y = ⋁{x ∧ y : y ∈ Y} for all x and Y.
  inline bool is_frame(FiniteLattice const& L) noexcept {
    return L.is_frame();
  }

  namespace lattices {

    inline FiniteLattice chain(std::size_t k) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < k; ++i) {
        names.push_back(std::to_string(i));
      }
      return make_lattice(std::move(names),
                          [](element a, element b) { return a <= b; });
    }

    // 0 < m < 1.
    inline FiniteLattice chain3() {
      return make_lattice({"0", "m", "1"},
                          [](element a, element b) { return a <= b; });
    }

    // Subsets of {0,...,k-1}; element index is the bitmask.
    inline FiniteLattice powerset(std::size_t k) {
      std::size_t              n = std::size_t{1} << k;
      std::vector<std::string> names;
      for (std::size_t m = 0; m < n; ++m) {
        std::string s = "{";
        bool        first = true;
        for (std::size_t i = 0; i < k; ++i) {
          if (m >> i & 1u) {
            s += (first ? "" : ",") + std::to_string(i + 1);
            first = false;
          }
        }
        names.push_back(s + "}");
      }
      return FiniteLattice::from_operations(
          std::move(names),
          [](element a, element b) { return (a & ~b) == 0; },
          [](element a, element b) { return a | b; },
          [](element a, element b) { return a & b; });
    }

    // 0 < a, b < 1 with a, b incomparable.
    inline FiniteLattice diamond() {
      // indices: 0 = bottom, 1 = a, 2 = b, 3 = top (bitmask encoding)
      return make_lattice({"0", "a", "b", "1"}, [](element x, element y) {
        return (x & ~y) == 0;
      });
    }

    // 0 < a, b, c < 1 with three pairwise incomparable atoms.
    inline FiniteLattice m3() {
      return make_lattice({"0", "a", "b", "c", "1"}, [](element x, element y) {
        return x == y || x == 0 || y == 4;
      });
    }

    // 0 < a < c < 1, 0 < b < 1: the non-modular pentagon.
    inline FiniteLattice n5() {
      return make_lattice({"0", "a", "b", "c", "1"}, [](element x, element y) {
        return x == y || x == 0 || y == 4 || (x == 1 && y == 3);
      });
    }

  }  // namespace lattices

  ////////////////////////////////////////////////////////////////////////
  // Closure operators
  ////////////////////////////////////////////////////////////////////////

  // A monotone, inflationary, idempotent endomap of the lattice it was built
  // for.  Only the table is stored; operations take the lattice explicitly.
  struct ClosureOperator {
    std::vector<element> map;

    element operator()(element x) const {
      return map[x];
    }
    friend bool operator==(ClosureOperator const&, ClosureOperator const&) = default;
  };

  inline CheckResult check_closure(FiniteLattice const&        L,
                                   std::vector<element> const& map) {
    if (map.size() != L.size()) {
      return CheckResult::fail("total", "table has wrong size");
    }
    for (element a = 0; a < L.size(); ++a) {
      if (map[a] >= L.size()) {
        return CheckResult::fail("total", "value out of range at " + L.name(a));
      }
      if (!L.leq(a, map[a])) {
        return CheckResult::fail("inflationary", L.name(a));
      }
      if (map[map[a]] != map[a]) {
        return CheckResult::fail("idempotent", L.name(a));
      }
      for (element b = 0; b < L.size(); ++b) {
        if (L.leq(a, b) && !L.leq(map[a], map[b])) {
          return CheckResult::fail("monotone", L.name(a) + " <= " + L.name(b));
        }
      }
    }
    return CheckResult::pass();
  }

  inline ClosureOperator make_closure(FiniteLattice const& L,
                                      std::vector<element> map) {
    if (auto r = check_closure(L, map); !r) {
      throw Error(Errc::NotAClosure, r.law + " fails at " + r.witness);
    }
    return ClosureOperator{std::move(map)};
  }

  inline ClosureOperator identity_closure(FiniteLattice const& L) {
    std::vector<element> m(L.size());
    for (element a = 0; a < L.size(); ++a) {
      m[a] = a;
    }
    return ClosureOperator{std::move(m)};
  }

  inline ClosureOperator top_closure(FiniteLattice const& L) {
    return ClosureOperator{std::vector<element>(L.size(), L.top())};
  }

  // S must contain top and be closed under binary meets.
  inline bool is_meet_closed(FiniteLattice const&        L,
                             std::vector<bool> const&    in_s) {
    if (!in_s[L.top()]) {
      return false;
    }
    for (element a = 0; a < L.size(); ++a) {
      if (!in_s[a]) {
        continue;
      }
      for (element b = a + 1; b < L.size(); ++b) {
        if (in_s[b] && !in_s[L.meet(a, b)]) {
          return false;
        }
      }
    }
    return true;
  }

  // j_S(x) = ⋀{y ∈ S : x ≤ y}.
  inline ClosureOperator closure_from_meet_closed(FiniteLattice const&        L,
                                                  std::vector<element> const& S) {
    std::vector<bool> in_s(L.size(), false);
    for (element s : S) {
      in_s.at(s) = true;
    }
    if (!is_meet_closed(L, in_s)) {
      throw Error(Errc::NotMeetClosed, "subset is not closed under meets");
    }
    std::vector<element> m(L.size());
    for (element x = 0; x < L.size(); ++x) {
      element r = L.top();
      for (element y = 0; y < L.size(); ++y) {
        if (in_s[y] && L.leq(x, y)) {
          r = L.meet(r, y);
        }
      }
      m[x] = r;
    }
    return ClosureOperator{std::move(m)};
  }

  // The lattice L_j of fixed points, with ⋁^j = j ∘ ⋁ and inherited meets.
  struct ClosedLattice {
    FiniteLattice        lattice;
    std::vector<element> members;  // index in L_j -> element of L

    // Position in L_j of a closed element of L.
    element index_of(element x) const {
      auto it = std::lower_bound(members.begin(), members.end(), x);
      return static_cast<element>(it - members.begin());
    }
  };

  inline ClosedLattice closed_elements(FiniteLattice const&   L,
                                       ClosureOperator const& j) {
    ClosedLattice out;
    for (element x = 0; x < L.size(); ++x) {
      if (j(x) == x) {
        out.members.push_back(x);
      }
    }
    std::vector<std::string> names;
    for (element x : out.members) {
      names.push_back(L.name(x));
    }
    auto const& mem = out.members;
    auto        idx = [&](element x) { return out.index_of(x); };
    out.lattice     = FiniteLattice::from_operations(
        std::move(names),
        [&](element a, element b) { return L.leq(mem[a], mem[b]); },
        [&](element a, element b) { return idx(j(L.join(mem[a], mem[b]))); },
        [&](element a, element b) { return idx(L.meet(mem[a], mem[b])); });
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Congruences
  ////////////////////////////////////////////////////////////////////////

  struct Congruence {
    std::size_t               n = 0;
    std::vector<std::uint8_t> rel;

    bool related(element a, element b) const {
      return rel[a * n + b] != 0;
    }
    friend bool operator==(Congruence const&, Congruence const&) = default;
  };

  // (x, y) ∈ θ_j ⟺ j(x) = j(y).
  inline Congruence congruence_from_closure(FiniteLattice const&   L,
                                            ClosureOperator const& j) {
    Congruence t{L.size(), std::vector<std::uint8_t>(L.size() * L.size(), 0)};
    for (element a = 0; a < L.size(); ++a) {
      for (element b = 0; b < L.size(); ++b) {
        t.rel[a * L.size() + b] = j(a) == j(b) ? 1 : 0;
      }
    }
    return t;
  }

  inline CheckResult check_congruence(FiniteLattice const& L,
                                      Congruence const&    t) {
    std::size_t n = L.size();
    if (t.n != n || t.rel.size() != n * n) {
      return CheckResult::fail("shape", "relation has wrong size");
    }
    for (element a = 0; a < n; ++a) {
      if (!t.related(a, a)) {
        return CheckResult::fail("reflexive", L.name(a));
      }
      for (element b = 0; b < n; ++b) {
        if (!t.related(a, b)) {
          continue;
        }
        if (!t.related(b, a)) {
          return CheckResult::fail("symmetric", L.name(a) + ", " + L.name(b));
        }
        for (element c = 0; c < n; ++c) {
          if (t.related(b, c) && !t.related(a, c)) {
            return CheckResult::fail("transitive", L.name(a) + ", " + L.name(c));
          }
        }
        for (element c = 0; c < n; ++c) {
          for (element d = 0; d < n; ++d) {
            if (t.related(c, d) && !t.related(L.join(a, c), L.join(b, d))) {
              return CheckResult::fail("join-closed",
                                       L.name(a) + "~" + L.name(b) + ", "
                                           + L.name(c) + "~" + L.name(d));
            }
          }
        }
      }
    }
    return CheckResult::pass();
  }

  // j_θ(x) = ⋁[x]_θ.
  inline ClosureOperator closure_from_congruence(FiniteLattice const& L,
                                                 Congruence const&    t) {
    if (auto r = check_congruence(L, t); !r) {
      throw Error(Errc::NotACongruence, r.law + " fails at " + r.witness);
    }
    std::vector<element> m(L.size());
    for (element x = 0; x < L.size(); ++x) {
      element r = L.bottom();
      for (element y = 0; y < L.size(); ++y) {
        if (t.related(x, y)) {
          r = L.join(r, y);
        }
      }
      m[x] = r;
    }
    return ClosureOperator{std::move(m)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Residuation and irreducibles
  ////////////////////////////////////////////////////////////////////////

  // b \ a = ⋁{c : b ∧ c ≤ a}.
  inline element heyting_residual(FiniteLattice const& L, element b, element a) {
    if (!L.is_frame()) {
      throw Error(Errc::NotAFrame, "residuation needs a distributive lattice");
    }
    element r = L.bottom();
    for (element c = 0; c < L.size(); ++c) {
      if (L.leq(L.meet(b, c), a)) {
        r = L.join(r, c);
      }
    }
    return r;
  }

  inline std::vector<element> join_irreducibles(FiniteLattice const& L) {
    std::vector<element> out;
    for (element x = 0; x < L.size(); ++x) {
      if (x == L.bottom()) {
        continue;
      }
      // x is join-irreducible iff the join of everything strictly below x is
      // strictly below x.
      element below = L.bottom();
      for (element y = 0; y < L.size(); ++y) {
        if (y != x && L.leq(y, x)) {
          below = L.join(below, y);
        }
      }
      if (below != x) {
        out.push_back(x);
      }
    }
    return out;
  }

}  // namespace qmodal
