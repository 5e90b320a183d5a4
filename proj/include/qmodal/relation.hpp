#pragma once

// The quantale P(W×W) of binary relations on a small set of worlds.  A
// relation is a 64-bit mask with bit i*n+j standing for the pair (i, j), so
// |W| is limited to 8.  Composition is diagrammatic: (R·S) relates i to k
// when R relates i to some j and S relates j to k.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qmodal/error.hpp"
#include "qmodal/quantale.hpp"

namespace qmodal {

  struct Relation {
    std::uint64_t bits = 0;

    friend auto operator<=>(Relation const&, Relation const&) = default;
  };

  class RelationQuantale {
   public:
    using element = Relation;

    static constexpr std::size_t max_worlds = 8;

    explicit RelationQuantale(std::size_t n) : RelationQuantale(default_names(n)) {}

    explicit RelationQuantale(std::vector<std::string> worlds)
        : _names(std::move(worlds)), _n(_names.size()) {
      if (_n == 0) {
        throw Error(Errc::TooLarge, "a relation quantale needs at least one world");
      }
      if (_n > max_worlds) {
        throw Error(Errc::TooLarge, "at most 8 worlds are supported");
      }
      _row = (_n == 8) ? 0xffu : ((std::uint64_t{1} << _n) - 1);
      for (std::size_t i = 0; i < _n; ++i) {
        _diag |= bit(i, i);
        _full |= _row << (i * _n);
      }
    }

    std::size_t worlds() const noexcept {
      return _n;
    }
    std::vector<std::string> const& world_names() const noexcept {
      return _names;
    }

    std::uint64_t bit(std::size_t i, std::size_t j) const noexcept {
      return std::uint64_t{1} << (i * _n + j);
    }
    bool contains(Relation r, std::size_t i, std::size_t j) const noexcept {
      return (r.bits & bit(i, j)) != 0;
    }
    Relation from_pairs(std::vector<std::pair<std::size_t, std::size_t>> const& ps) const {
      Relation r;
      for (auto [i, j] : ps) {
        if (i >= _n || j >= _n) {
          throw Error(Errc::UndeclaredWorld, "pair outside W x W");
        }
        r.bits |= bit(i, j);
      }
      return r;
    }
    // The sub-diagonal {(i,i) : i ∈ S} for a world mask S.
    Relation diagonal_of(std::uint64_t worlds_mask) const noexcept {
      Relation r;
      for (std::size_t i = 0; i < _n; ++i) {
        if (worlds_mask >> i & 1u) {
          r.bits |= bit(i, i);
        }
      }
      return r;
    }
    // Inverse of diagonal_of on ↓e; also the domain of an arbitrary relation.
    std::uint64_t domain_mask(Relation r) const noexcept {
      std::uint64_t m = 0;
      for (std::size_t i = 0; i < _n; ++i) {
        if (row(r, i) != 0) {
          m |= std::uint64_t{1} << i;
        }
      }
      return m;
    }
    std::uint64_t row(Relation r, std::size_t i) const noexcept {
      return (r.bits >> (i * _n)) & _row;
    }

    Relation bottom() const noexcept {
      return {};
    }
    Relation top() const noexcept {
      return {_full};
    }
    Relation unit() const noexcept {
      return {_diag};
    }
    Relation join(Relation a, Relation b) const noexcept {
      return {a.bits | b.bits};
    }
    Relation meet(Relation a, Relation b) const noexcept {
      return {a.bits & b.bits};
    }
    bool leq(Relation a, Relation b) const noexcept {
      return (a.bits & ~b.bits) == 0;
    }
    Relation mul(Relation a, Relation b) const noexcept {
      Relation out;
      for (std::size_t i = 0; i < _n; ++i) {
        std::uint64_t r   = row(a, i);
        std::uint64_t acc = 0;
        while (r != 0) {
          std::size_t j = static_cast<std::size_t>(std::countr_zero(r));
          r &= r - 1;
          acc |= row(b, j);
        }
        out.bits |= acc << (i * _n);
      }
      return out;
    }
    Relation inv(Relation a) const noexcept {
      Relation out;
      for (std::size_t i = 0; i < _n; ++i) {
        for (std::size_t j = 0; j < _n; ++j) {
          if (contains(a, i, j)) {
            out.bits |= bit(j, i);
          }
        }
      }
      return out;
    }
    Relation support(Relation a) const noexcept {
      return diagonal_of(domain_mask(a));
    }

    // All 2^(n^2) relations; only for n <= 4.
    std::vector<Relation> elements() const {
      if (_n * _n > 16) {
        throw Error(Errc::TooLarge, "carrier too large to enumerate");
      }
      std::vector<Relation> v;
      v.reserve(std::size_t{1} << (_n * _n));
      for (std::uint64_t m = 0; m <= _full; ++m) {
        v.push_back({m});
      }
      return v;
    }
    std::vector<Relation> unit_downset() const {
      std::vector<Relation> v;
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << _n); ++m) {
        v.push_back(diagonal_of(m));
      }
      return v;
    }
    std::string describe(Relation a) const {
      std::string s     = "{";
      bool        first = true;
      for (std::size_t i = 0; i < _n; ++i) {
        for (std::size_t j = 0; j < _n; ++j) {
          if (contains(a, i, j)) {
            s += (first ? "(" : ",(") + _names[i] + "," + _names[j] + ")";
            first = false;
          }
        }
      }
      return s + "}";
    }
    // A support element printed as the set of worlds it contains.
    std::string describe_worlds(std::uint64_t mask) const {
      std::string s     = "{";
      bool        first = true;
      for (std::size_t i = 0; i < _n; ++i) {
        if (mask >> i & 1u) {
          s += (first ? "" : ",") + _names[i];
          first = false;
        }
      }
      return s + "}";
    }

   private:
    static std::vector<std::string> default_names(std::size_t n) {
      std::vector<std::string> v;
      for (std::size_t i = 0; i < n; ++i) {
        v.push_back(std::to_string(i));
      }
      return v;
    }

    std::vector<std::string> _names;
    std::size_t              _n    = 0;
    std::uint64_t            _row  = 0;
    std::uint64_t            _diag = 0;
    std::uint64_t            _full = 0;
  };

  static_assert(SupportedQuantale<RelationQuantale>);

  // The table form of P(W×W), validated on construction; |W| <= 3.
  inline Quantale relation_quantale(std::size_t n) {
    if (n > 3) {
      throw Error(Errc::TooLarge, "table form limited to 3 worlds");
    }
    return tabulate(RelationQuantale(n));
  }

}  // namespace qmodal
