#pragma once

// Finite groupoids and their powerset quantales P(G).  Composition is
// diagrammatic: gh is defined when cod g = dom h and runs from dom g to
// cod h.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "qmodal/error.hpp"
#include "qmodal/quantale.hpp"

namespace qmodal {

  struct Arrow {
    std::string name;
    std::size_t dom = 0;
    std::size_t cod = 0;
  };

  class FiniteGroupoid {
   public:
    static constexpr std::size_t max_arrows = 64;

    std::vector<std::string> const& objects() const noexcept {
      return _objects;
    }
    std::vector<Arrow> const& arrows() const noexcept {
      return _arrows;
    }
    std::size_t arrow_count() const noexcept {
      return _arrows.size();
    }
    std::optional<std::size_t> compose(std::size_t g, std::size_t h) const {
      return _comp[g * _arrows.size() + h];
    }
    std::size_t inverse(std::size_t g) const {
      return _inv[g];
    }
    std::size_t identity(std::size_t object) const {
      return _id[object];
    }
    std::optional<std::size_t> arrow_index(std::string const& nm) const {
      for (std::size_t i = 0; i < _arrows.size(); ++i) {
        if (_arrows[i].name == nm) {
          return i;
        }
      }
      return std::nullopt;
    }

    // Validates the category and inverse laws; identities are found as the
    // idempotent arrows.  Throws InvalidGroupoid.
    friend FiniteGroupoid make_groupoid(
        std::vector<std::string>                                   objects,
        std::vector<Arrow>                                         arrows,
        std::vector<std::pair<std::size_t, std::size_t>> const&    inverses,
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> const& comp);

   private:
    std::vector<std::string>                _objects;
    std::vector<Arrow>                      _arrows;
    std::vector<std::optional<std::size_t>> _comp;
    std::vector<std::size_t>                _inv;
    std::vector<std::size_t>                _id;
  };

  inline FiniteGroupoid make_groupoid(
      std::vector<std::string>                                              objects,
      std::vector<Arrow>                                                    arrows,
      std::vector<std::pair<std::size_t, std::size_t>> const&               inverses,
      std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> const& comp) {
    auto fail = [](std::string const& msg) { throw Error(Errc::InvalidGroupoid, msg); };
    FiniteGroupoid G;
    std::size_t    m = arrows.size();
    if (objects.empty()) {
      fail("no objects");
    }
    if (m > FiniteGroupoid::max_arrows) {
      fail("at most 64 arrows are supported");
    }
    for (auto const& a : arrows) {
      if (a.dom >= objects.size() || a.cod >= objects.size()) {
        fail("arrow " + a.name + " has an unknown endpoint");
      }
    }
    G._objects = std::move(objects);
    G._arrows  = std::move(arrows);
    auto const& A  = G._arrows;
    auto        nm = [&](std::size_t g) { return A[g].name; };
    G._comp.assign(m * m, std::nullopt);
    for (auto [g, h, k] : comp) {
      if (g >= m || h >= m || k >= m) {
        fail("composition mentions an unknown arrow");
      }
      if (A[g].cod != A[h].dom) {
        fail(nm(g) + " " + nm(h) + " composed although cod and dom differ");
      }
      if (A[k].dom != A[g].dom || A[k].cod != A[h].cod) {
        fail(nm(g) + " " + nm(h) + " = " + nm(k) + " has the wrong endpoints");
      }
      auto& slot = G._comp[g * m + h];
      if (slot && *slot != k) {
        fail(nm(g) + " " + nm(h) + " composed twice");
      }
      slot = k;
    }
    for (std::size_t g = 0; g < m; ++g) {
      for (std::size_t h = 0; h < m; ++h) {
        if ((A[g].cod == A[h].dom) != G._comp[g * m + h].has_value()) {
          fail(nm(g) + " " + nm(h) + " must be defined exactly when cod = dom");
        }
      }
    }
    for (std::size_t f = 0; f < m; ++f) {
      for (std::size_t g = 0; g < m; ++g) {
        auto fg = G._comp[f * m + g];
        if (!fg) {
          continue;
        }
        for (std::size_t h = 0; h < m; ++h) {
          auto gh = G._comp[g * m + h];
          if (!gh) {
            continue;
          }
          if (G._comp[*fg * m + h] != G._comp[f * m + *gh]) {
            fail("composition not associative at " + nm(f) + " " + nm(g) + " " + nm(h));
          }
        }
      }
    }
    G._id.assign(G._objects.size(), m);
    for (std::size_t g = 0; g < m; ++g) {
      if (A[g].dom == A[g].cod && G._comp[g * m + g] == g) {
        if (G._id[A[g].dom] != m) {
          fail("two identities on object " + G._objects[A[g].dom]);
        }
        G._id[A[g].dom] = g;
      }
    }
    for (std::size_t o = 0; o < G._objects.size(); ++o) {
      if (G._id[o] == m) {
        fail("no identity on object " + G._objects[o]);
      }
    }
    for (std::size_t g = 0; g < m; ++g) {
      if (G._comp[G._id[A[g].dom] * m + g] != g || G._comp[g * m + G._id[A[g].cod]] != g) {
        fail("identity law fails at " + nm(g));
      }
    }
    G._inv.assign(m, m);
    for (auto [g, h] : inverses) {
      if (g >= m || h >= m) {
        fail("inverse mentions an unknown arrow");
      }
      for (auto [x, y] : {std::pair{g, h}, std::pair{h, g}}) {
        if (G._inv[x] != m && G._inv[x] != y) {
          fail("two inverses for " + nm(x));
        }
        G._inv[x] = y;
      }
    }
    for (std::size_t g = 0; g < m; ++g) {
      std::size_t h = G._inv[g];
      if (h == m) {
        fail("no inverse for " + nm(g));
      }
      if (G._comp[g * m + h] != G._id[A[g].dom] || G._comp[h * m + g] != G._id[A[g].cod]) {
        fail("inverse law fails at " + nm(g));
      }
    }
    return G;
  }

  namespace groupoids {

    // W × W with (x,y)(y,z) = (x,z).
    inline FiniteGroupoid pair_groupoid(std::vector<std::string> const& worlds) {
      std::size_t                                                    n = worlds.size();
      std::vector<Arrow>                                             arrows;
      std::vector<std::pair<std::size_t, std::size_t>>               inv;
      std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> comp;
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          arrows.push_back({"(" + worlds[x] + "," + worlds[y] + ")", x, y});
          inv.emplace_back(x * n + y, y * n + x);
          for (std::size_t z = 0; z < n; ++z) {
            comp.emplace_back(x * n + y, y * n + z, x * n + z);
          }
        }
      }
      return make_groupoid(worlds, std::move(arrows), inv, comp);
    }

    inline FiniteGroupoid pair_groupoid(std::size_t n) {
      std::vector<std::string> w;
      for (std::size_t i = 0; i < n; ++i) {
        w.push_back(std::to_string(i));
      }
      return pair_groupoid(w);
    }

    // Z/k as a one-object groupoid; arrow i is the residue i, arrow 0 is the
    // identity.  Arrows are named "id", "g", "g2", ...
    inline FiniteGroupoid cyclic_group(std::size_t k) {
      std::vector<Arrow>                                             arrows;
      std::vector<std::pair<std::size_t, std::size_t>>               inv;
      std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> comp;
      for (std::size_t i = 0; i < k; ++i) {
        arrows.push_back({i == 0 ? "id" : i == 1 ? "g" : "g" + std::to_string(i), 0, 0});
        inv.emplace_back(i, (k - i) % k);
        for (std::size_t j = 0; j < k; ++j) {
          comp.emplace_back(i, j, (i + j) % k);
        }
      }
      return make_groupoid({"*"}, std::move(arrows), inv, comp);
    }

  }  // namespace groupoids

  struct ArrowSet {
    std::uint64_t bits = 0;

    friend auto operator<=>(ArrowSet const&, ArrowSet const&) = default;
  };

  class GroupoidQuantale {
   public:
    using element = ArrowSet;

    explicit GroupoidQuantale(FiniteGroupoid G) : _g(std::move(G)) {
      std::size_t m = _g.arrow_count();
      _full         = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
      _right.assign(m * m, 0);
      _inv.resize(m);
      _dom_id.resize(m);
      for (std::size_t g = 0; g < m; ++g) {
        _inv[g]    = _g.inverse(g);
        _dom_id[g] = _g.identity(_g.arrows()[g].dom);
        _unit |= std::uint64_t{1} << _g.identity(_g.arrows()[g].dom);
        for (std::size_t h = 0; h < m; ++h) {
          if (auto k = _g.compose(g, h)) {
            _right[g * m + h] = std::uint64_t{1} << *k;
          }
        }
      }
    }

    FiniteGroupoid const& groupoid() const noexcept {
      return _g;
    }
    ArrowSet singleton(std::size_t g) const noexcept {
      return {std::uint64_t{1} << g};
    }

    ArrowSet bottom() const noexcept {
      return {};
    }
    ArrowSet top() const noexcept {
      return {_full};
    }
    ArrowSet unit() const noexcept {
      return {_unit};
    }
    ArrowSet join(ArrowSet a, ArrowSet b) const noexcept {
      return {a.bits | b.bits};
    }
    ArrowSet meet(ArrowSet a, ArrowSet b) const noexcept {
      return {a.bits & b.bits};
    }
    bool leq(ArrowSet a, ArrowSet b) const noexcept {
      return (a.bits & ~b.bits) == 0;
    }
    ArrowSet mul(ArrowSet a, ArrowSet b) const noexcept {
      std::size_t   m   = _g.arrow_count();
      std::uint64_t out = 0;
      for (std::uint64_t x = a.bits; x != 0; x &= x - 1) {
        std::size_t g = static_cast<std::size_t>(std::countr_zero(x));
        for (std::uint64_t y = b.bits; y != 0; y &= y - 1) {
          out |= _right[g * m + static_cast<std::size_t>(std::countr_zero(y))];
        }
      }
      return {out};
    }
    ArrowSet inv(ArrowSet a) const noexcept {
      std::uint64_t out = 0;
      for (std::uint64_t x = a.bits; x != 0; x &= x - 1) {
        out |= std::uint64_t{1} << _inv[static_cast<std::size_t>(std::countr_zero(x))];
      }
      return {out};
    }
    ArrowSet support(ArrowSet a) const noexcept {
      std::uint64_t out = 0;
      for (std::uint64_t x = a.bits; x != 0; x &= x - 1) {
        out |= std::uint64_t{1} << _dom_id[static_cast<std::size_t>(std::countr_zero(x))];
      }
      return {out};
    }
    std::vector<ArrowSet> elements() const {
      if (_g.arrow_count() > 16) {
        throw Error(Errc::TooLarge, "carrier too large to enumerate");
      }
      std::vector<ArrowSet> v;
      for (std::uint64_t m = 0; m <= _full; ++m) {
        v.push_back({m});
      }
      return v;
    }
    std::vector<ArrowSet> unit_downset() const {
      std::vector<ArrowSet> v;
      // Enumerate submasks of the identity mask in increasing order.
      std::uint64_t s = 0;
      while (true) {
        v.push_back({s});
        if (s == _unit) {
          break;
        }
        s = (s - _unit) & _unit;
      }
      return v;
    }
    std::string describe(ArrowSet a) const {
      std::string s     = "{";
      bool        first = true;
      for (std::size_t g = 0; g < _g.arrow_count(); ++g) {
        if (a.bits >> g & 1u) {
          s += (first ? "" : ",") + _g.arrows()[g].name;
          first = false;
        }
      }
      return s + "}";
    }

   private:
    FiniteGroupoid             _g;
    std::uint64_t              _full = 0;
    std::uint64_t              _unit = 0;
    std::vector<std::uint64_t> _right;
    std::vector<std::size_t>   _inv;
    std::vector<std::size_t>   _dom_id;
  };

  static_assert(SupportedQuantale<GroupoidQuantale>);

  // The table form of P(G), validated on construction.
  inline Quantale groupoid_quantale(FiniteGroupoid G) {
    if (G.arrow_count() > 9) {
      throw Error(Errc::TooLarge, "table form limited to 9 arrows");
    }
    return tabulate(GroupoidQuantale(std::move(G)));
  }

}  // namespace qmodal
