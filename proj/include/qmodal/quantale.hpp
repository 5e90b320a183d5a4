#pragma once

// Unital involutive quantales.  Algorithms are written against the
// InvolutiveQuantale / SupportedQuantale concepts so they run both on
// explicit tables (Quantale, below) and on symbolic carriers such as
// RelationQuantale whose tables would not fit in memory.

#include <concepts>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmodal/error.hpp"
#include "qmodal/lattice.hpp"

namespace qmodal {

  template <typename Q>
  concept InvolutiveQuantale
      = requires(Q const& q, typename Q::element a, typename Q::element b) {
          { q.bottom() } -> std::convertible_to<typename Q::element>;
          { q.top() } -> std::convertible_to<typename Q::element>;
          { q.unit() } -> std::convertible_to<typename Q::element>;
          { q.join(a, b) } -> std::convertible_to<typename Q::element>;
          { q.meet(a, b) } -> std::convertible_to<typename Q::element>;
          { q.leq(a, b) } -> std::convertible_to<bool>;
          { q.mul(a, b) } -> std::convertible_to<typename Q::element>;
          { q.inv(a) } -> std::convertible_to<typename Q::element>;
          { q.elements() } -> std::convertible_to<std::vector<typename Q::element>>;
          { q.unit_downset() } -> std::convertible_to<std::vector<typename Q::element>>;
          { q.describe(a) } -> std::convertible_to<std::string>;
          { a == b } -> std::convertible_to<bool>;
          { a < b } -> std::convertible_to<bool>;
        };

  template <typename Q>
  concept SupportedQuantale
      = InvolutiveQuantale<Q> && requires(Q const& q, typename Q::element a) {
          { q.support(a) } -> std::convertible_to<typename Q::element>;
        };

  ////////////////////////////////////////////////////////////////////////
  // Table-backed quantale
  ////////////////////////////////////////////////////////////////////////

  class Quantale {
   public:
    using element = qmodal::element;

    Quantale() = default;

    FiniteLattice const& lattice() const noexcept {
      return _lat;
    }
    std::size_t size() const noexcept {
      return _lat.size();
    }
    element bottom() const noexcept {
      return _lat.bottom();
    }
    element top() const noexcept {
      return _lat.top();
    }
    element unit() const noexcept {
      return _unit;
    }
    element join(element a, element b) const noexcept {
      return _lat.join(a, b);
    }
    element meet(element a, element b) const noexcept {
      return _lat.meet(a, b);
    }
    bool leq(element a, element b) const noexcept {
      return _lat.leq(a, b);
    }
    element mul(element a, element b) const noexcept {
      return _mul[a * _lat.size() + b];
    }
    element inv(element a) const noexcept {
      return _inv[a];
    }
    bool has_support() const noexcept {
      return _supp.has_value();
    }
    element support(element a) const {
      if (!_supp) {
        throw Error(Errc::NoSupport, "quantale carries no support");
      }
      return (*_supp)[a];
    }
    std::vector<element> const& support_table() const {
      if (!_supp) {
        throw Error(Errc::NoSupport, "quantale carries no support");
      }
      return *_supp;
    }
    std::vector<element> elements() const {
      std::vector<element> v(size());
      std::iota(v.begin(), v.end(), element{0});
      return v;
    }
    std::vector<element> unit_downset() const {
      std::vector<element> v;
      for (element a = 0; a < size(); ++a) {
        if (leq(a, _unit)) {
          v.push_back(a);
        }
      }
      return v;
    }
    std::string describe(element a) const {
      return _lat.name(a);
    }

    friend Quantale make_quantale(FiniteLattice        L,
                                  std::vector<element> mul,
                                  std::vector<element> inv,
                                  element              e);
    friend Quantale with_presupport(Quantale q, std::vector<element> supp);
    friend Quantale with_support(Quantale q, std::vector<element> supp);
    friend Quantale without_support(Quantale q);

   private:
    FiniteLattice                       _lat;
    std::vector<element>                _mul;
    std::vector<element>                _inv;
    element                             _unit = 0;
    std::optional<std::vector<element>> _supp;
  };

  // First violated quantale law, or success.  `law` is the name of the
  // matching error code.
  inline CheckResult check_quantale_laws(FiniteLattice const&        L,
                                         std::vector<element> const& mul,
                                         std::vector<element> const& inv,
                                         element                     e) {
    std::size_t n  = L.size();
    auto        m  = [&](element a, element b) { return mul[a * n + b]; };
    auto const& nm = [&](element a) -> std::string const& { return L.name(a); };
    if (mul.size() != n * n || inv.size() != n || e >= n) {
      return CheckResult::fail("UnitLawFails", "tables have wrong shape");
    }
    for (element a = 0; a < n; ++a) {
      if (m(e, a) != a || m(a, e) != a) {
        return CheckResult::fail("UnitLawFails", "e*" + nm(a) + " or " + nm(a) + "*e");
      }
    }
    for (element a = 0; a < n; ++a) {
      if (m(a, L.bottom()) != L.bottom() || m(L.bottom(), a) != L.bottom()) {
        return CheckResult::fail("NotDistributive", nm(a) + "*0");
      }
      for (element b = 0; b < n; ++b) {
        element ab = m(a, b);
        for (element c = 0; c < n; ++c) {
          if (m(ab, c) != m(a, m(b, c))) {
            return CheckResult::fail("NotAssociative",
                                     "(" + nm(a) + "*" + nm(b) + ")*" + nm(c));
          }
        }
      }
    }
    for (element a = 0; a < n; ++a) {
      for (element b = 0; b < n; ++b) {
        element bc_join = 0;
        for (element c = b + 1; c < n; ++c) {
          bc_join = L.join(b, c);
          if (m(a, bc_join) != L.join(m(a, b), m(a, c))) {
            return CheckResult::fail("NotDistributive",
                                     nm(a) + "*(" + nm(b) + " v " + nm(c) + ")");
          }
          if (m(bc_join, a) != L.join(m(b, a), m(c, a))) {
            return CheckResult::fail("NotDistributive",
                                     "(" + nm(b) + " v " + nm(c) + ")*" + nm(a));
          }
        }
      }
    }
    if (inv[L.bottom()] != L.bottom()) {
      return CheckResult::fail("NotInvolutive", "0~ != 0");
    }
    for (element a = 0; a < n; ++a) {
      if (inv[a] >= n || inv[inv[a]] != a) {
        return CheckResult::fail("NotInvolutive", nm(a) + "~~");
      }
      for (element b = 0; b < n; ++b) {
        if (inv[m(a, b)] != m(inv[b], inv[a])) {
          return CheckResult::fail("NotInvolutive", "(" + nm(a) + "*" + nm(b) + ")~");
        }
        if (inv[L.join(a, b)] != L.join(inv[a], inv[b])) {
          return CheckResult::fail("NotInvolutive", "(" + nm(a) + " v " + nm(b) + ")~");
        }
      }
    }
    return CheckResult::pass();
  }

  inline Quantale make_quantale(FiniteLattice        L,
                                std::vector<element> mul,
                                std::vector<element> inv,
                                element              e) {
    if (auto r = check_quantale_laws(L, mul, inv, e); !r) {
      Errc c = r.law == "NotAssociative"    ? Errc::NotAssociative
               : r.law == "NotDistributive" ? Errc::NotDistributive
               : r.law == "NotInvolutive"   ? Errc::NotInvolutive
                                            : Errc::UnitLawFails;
      throw Error(c, r.witness);
    }
    Quantale q;
    q._lat  = std::move(L);
    q._mul  = std::move(mul);
    q._inv  = std::move(inv);
    q._unit = e;
    return q;
  }

  ////////////////////////////////////////////////////////////////////////
  // Supports
  ////////////////////////////////////////////////////////////////////////

  // The support axioms on the given samples: ςa ≤ e, ςa ≤ aa⁻, a ≤ (ςa)a,
  // join preservation, ς(ab) ≤ ςa, and stability ς(ab) = ς(a ςb).
  template <SupportedQuantale Q>
  CheckResult check_support_laws(Q const&                                q,
                                 std::vector<typename Q::element> const& as,
                                 std::vector<typename Q::element> const& bs) {
    auto d = [&](auto const& x) { return q.describe(x); };
    if (!(q.support(q.bottom()) == q.bottom())) {
      return CheckResult::fail("support.preserves-bottom", d(q.bottom()));
    }
    for (auto const& a : as) {
      auto sa = q.support(a);
      if (!q.leq(sa, q.unit())) {
        return CheckResult::fail("support.below-unit", d(a));
      }
      if (!q.leq(sa, q.mul(a, q.inv(a)))) {
        return CheckResult::fail("support.below-aa*", d(a));
      }
      if (!q.leq(a, q.mul(sa, a))) {
        return CheckResult::fail("support.absorbs", d(a));
      }
      for (auto const& b : bs) {
        auto ab = q.mul(a, b);
        if (!(q.support(q.join(a, b)) == q.join(sa, q.support(b)))) {
          return CheckResult::fail("support.preserves-joins", d(a) + ", " + d(b));
        }
        if (!q.leq(q.support(ab), sa)) {
          return CheckResult::fail("support.of-product", d(a) + ", " + d(b));
        }
        if (!(q.support(ab) == q.support(q.mul(a, q.support(b))))) {
          return CheckResult::fail("support.stable", d(a) + ", " + d(b));
        }
      }
    }
    return CheckResult::pass();
  }

  template <SupportedQuantale Q>
  CheckResult check_support_laws(Q const& q) {
    auto all = q.elements();
    return check_support_laws(q, all, all);
  }

  // Attach a sup-lattice endomorphism below e without further axioms.
  inline Quantale with_presupport(Quantale q, std::vector<element> supp) {
    auto const& L = q.lattice();
    if (supp.size() != L.size()) {
      throw Error(Errc::NoStableSupport, "support table has wrong size");
    }
    if (supp[L.bottom()] != L.bottom()) {
      throw Error(Errc::NoStableSupport, "pre-support does not preserve 0");
    }
    for (element a = 0; a < L.size(); ++a) {
      if (!L.leq(supp[a], q.unit())) {
        throw Error(Errc::NoStableSupport, "pre-support exceeds e at " + L.name(a));
      }
      for (element b = a + 1; b < L.size(); ++b) {
        if (supp[L.join(a, b)] != L.join(supp[a], supp[b])) {
          throw Error(Errc::NoStableSupport,
                      "pre-support does not preserve " + L.name(a) + " v " + L.name(b));
        }
      }
    }
    q._supp = std::move(supp);
    return q;
  }

  // Attach a fully validated stable support.
  inline Quantale with_support(Quantale q, std::vector<element> supp) {
    q = with_presupport(std::move(q), std::move(supp));
    if (auto r = check_support_laws(q); !r) {
      throw Error(Errc::NoStableSupport, r.law + " fails at " + r.witness);
    }
    return q;
  }

  inline Quantale without_support(Quantale q) {
    q._supp.reset();
    return q;
  }

  // Candidate ςa = e ∧ aa⁻, validated against every support axiom.
  inline std::vector<element> derive_support(Quantale const& q) {
    std::vector<element> supp(q.size());
    for (element a = 0; a < q.size(); ++a) {
      supp[a] = q.meet(q.unit(), q.mul(a, q.inv(a)));
    }
    // with_support throws NoStableSupport on the first failed axiom.
    (void) with_support(without_support(q), supp);
    return supp;
  }

  // A frame as a quantale: multiplication ∧, trivial involution, e = 1,
  // identity support.  Rejects non-distributive lattices.
  inline Quantale locale_quantale(FiniteLattice const& L) {
    std::size_t          n = L.size();
    std::vector<element> mul(n * n), inv(n), supp(n);
    for (element a = 0; a < n; ++a) {
      inv[a]  = a;
      supp[a] = a;
      for (element b = 0; b < n; ++b) {
        mul[a * n + b] = L.meet(a, b);
      }
    }
    return with_support(make_quantale(L, std::move(mul), std::move(inv), L.top()),
                        std::move(supp));
  }

  // Copy any enumerable quantale into tables.  The support, when the source
  // has one, is attached and validated.
  template <InvolutiveQuantale Q>
  Quantale tabulate(Q const& src) {
    using E     = typename Q::element;
    auto elems  = src.elements();
    std::size_t n = elems.size();
    std::map<E, element> index;
    for (element i = 0; i < n; ++i) {
      index.emplace(elems[i], i);
    }
    auto idx = [&](E const& x) { return index.at(x); };
    std::vector<std::string> names;
    names.reserve(n);
    for (auto const& x : elems) {
      names.push_back(src.describe(x));
    }
    auto L = FiniteLattice::from_operations(
        std::move(names),
        [&](element a, element b) { return src.leq(elems[a], elems[b]); },
        [&](element a, element b) { return idx(src.join(elems[a], elems[b])); },
        [&](element a, element b) { return idx(src.meet(elems[a], elems[b])); });
    std::vector<element> mul(n * n), inv(n);
    for (element a = 0; a < n; ++a) {
      inv[a] = idx(src.inv(elems[a]));
      for (element b = 0; b < n; ++b) {
        mul[a * n + b] = idx(src.mul(elems[a], elems[b]));
      }
    }
    Quantale q = make_quantale(std::move(L), std::move(mul), std::move(inv), idx(src.unit()));
    if constexpr (SupportedQuantale<Q>) {
      std::vector<element> supp(n);
      for (element a = 0; a < n; ++a) {
        supp[a] = idx(src.support(elems[a]));
      }
      q = with_support(std::move(q), std::move(supp));
    }
    return q;
  }

  ////////////////////////////////////////////////////////////////////////
  // The support locale ↓e
  ////////////////////////////////////////////////////////////////////////

  template <typename E>
  struct SupportLocale {
    FiniteLattice       lattice;
    std::vector<E>      members;  // lattice index -> quantale element
    std::map<E, element> index;

    element index_of(E const& x) const {
      auto it = index.find(x);
      if (it == index.end()) {
        throw Error(Errc::SupportLocaleLawFails, "element is not below e");
      }
      return it->second;
    }
    E const& member(element i) const {
      return members[i];
    }
  };

  // ↓e as a frame; checks b = b² = b⁻ on ↓e and that multiplication there is
  // the meet.
  template <InvolutiveQuantale Q>
  SupportLocale<typename Q::element> supports_locale(Q const& q) {
    using E = typename Q::element;
    SupportLocale<E> loc;
    loc.members = q.unit_downset();
    for (element i = 0; i < loc.members.size(); ++i) {
      loc.index.emplace(loc.members[i], i);
    }
    auto const& mem = loc.members;
    for (auto const& b : mem) {
      if (!(q.mul(b, b) == b) || !(q.inv(b) == b)) {
        throw Error(Errc::SupportLocaleLawFails,
                    "b = b^2 = b~ fails at " + q.describe(b));
      }
      for (auto const& c : mem) {
        if (!(q.mul(b, c) == q.meet(b, c))) {
          throw Error(Errc::SupportLocaleLawFails,
                      "bc != b meet c at " + q.describe(b) + ", " + q.describe(c));
        }
      }
    }
    std::vector<std::string> names;
    for (auto const& b : mem) {
      names.push_back(q.describe(b));
    }
    auto idx    = [&](E const& x) { return loc.index_of(x); };
    loc.lattice = FiniteLattice::from_operations(
        std::move(names),
        [&](element a, element b) { return q.leq(mem[a], mem[b]); },
        [&](element a, element b) { return idx(q.join(mem[a], mem[b])); },
        [&](element a, element b) { return idx(q.meet(mem[a], mem[b])); });
    if (!loc.lattice.is_frame()) {
      throw Error(Errc::SupportLocaleLawFails, "down-set of e is not a frame");
    }
    return loc;
  }

  ////////////////////////////////////////////////////////////////////////
  // Point properties
  ////////////////////////////////////////////////////////////////////////

  struct PointFlags {
    bool reflexive     = false;  // e ≤ α
    bool transitive    = false;  // αα ≤ α
    bool symmetric     = false;  // α = α⁻
    bool total_support = false;  // ςα = e

    friend bool operator==(PointFlags const&, PointFlags const&) = default;
  };

  template <SupportedQuantale Q>
  PointFlags check_point_properties(Q const& q, typename Q::element const& alpha) {
    PointFlags f;
    f.reflexive     = q.leq(q.unit(), alpha);
    f.transitive    = q.leq(q.mul(alpha, alpha), alpha);
    f.symmetric     = q.inv(alpha) == alpha;
    f.total_support = q.support(alpha) == q.unit();
    return f;
  }

}  // namespace qmodal
