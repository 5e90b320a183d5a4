#pragma once

// The graded tensor quantale T(L) of a finite frame, truncated at word length
// D.  The component in degree w is L^(|w|+1), stored as a down-set of
// J(L)^(|w|+1) where J(L) are the join-irreducibles; a pure tensor
// x0 ⊗ ... ⊗ xn is the set of irreducible tuples below it coordinatewise.
//
// PureTensor is a symbolic form of the same generators, closed under the
// multiplication and involution, used for the exhaustive lemma grids.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qmodal/bimodal.hpp"
#include "qmodal/error.hpp"
#include "qmodal/lattice.hpp"

namespace qmodal {

  inline constexpr std::size_t max_word_length = 15;

  // A word over {α, α⁻}; bit i set means letter i is α⁻.
  struct Word {
    std::uint8_t  length = 0;
    std::uint16_t bits   = 0;

    static Word epsilon() {
      return {};
    }
    static Word alpha(bool converse = false) {
      return {1, static_cast<std::uint16_t>(converse ? 1 : 0)};
    }
    bool converse_at(std::size_t i) const {
      return (bits >> i & 1u) != 0;
    }
    // reversed, letters flipped
    Word inv() const {
      Word r{length, 0};
      for (std::size_t i = 0; i < length; ++i) {
        if (!converse_at(i)) {
          r.bits |= static_cast<std::uint16_t>(1u << (length - 1 - i));
        }
      }
      return r;
    }

    auto operator<=>(Word const&) const = default;
  };

  inline Word concat(Word a, Word b) {
    if (a.length + b.length > max_word_length) {
      throw Error(Errc::DepthExceeded, "word longer than " + std::to_string(max_word_length));
    }
    return {static_cast<std::uint8_t>(a.length + b.length),
            static_cast<std::uint16_t>(a.bits | (b.bits << a.length))};
  }

  // "eps", or letters a / a' in order
  inline std::string to_string(Word w) {
    if (w.length == 0) {
      return "eps";
    }
    std::string s;
    for (std::size_t i = 0; i < w.length; ++i) {
      s += w.converse_at(i) ? "a'" : "a";
    }
    return s;
  }

  inline std::vector<Word> words_up_to(std::size_t d) {
    std::vector<Word> out;
    for (std::size_t n = 0; n <= d && n <= max_word_length; ++n) {
      for (std::uint32_t b = 0; b < (1u << n); ++b) {
        out.push_back({static_cast<std::uint8_t>(n), static_cast<std::uint16_t>(b)});
      }
    }
    return out;
  }

  // x0 ∧ ⟨w1⟩(x1 ∧ ⟨w2⟩(...)), ⟨α⟩ = ◇ and ⟨α⁻⟩ = ◆.
  template <class Factors>
  element presupport_of_tuple(BimodalFrame const& F, Word w, Factors const& x) {
    auto const& L = F.frame;
    element     s = x[w.length];
    for (std::size_t i = w.length; i-- > 0;) {
      s = L.meet(static_cast<element>(x[i]), w.converse_at(i) ? F.black[s] : F.diamond[s]);
    }
    return s;
  }

  // ---------------------------------------------------------------------
  // symbolic pure tensors

  struct PureTensor {
    Word                                             w;
    std::array<std::uint8_t, max_word_length + 1> x{};
    bool                                             zero = false;

    std::size_t factors() const {
      return w.length + 1u;
    }

    friend bool operator==(PureTensor const& a, PureTensor const& b) {
      if (a.zero || b.zero) {
        return a.zero == b.zero;
      }
      if (a.w != b.w) {
        return false;
      }
      for (std::size_t i = 0; i < a.factors(); ++i) {
        if (a.x[i] != b.x[i]) {
          return false;
        }
      }
      return true;
    }
  };

  inline void require_small(FiniteLattice const& L) {
    if (L.size() > 256) {
      throw Error(Errc::TooLarge, "pure tensors store factors in one byte");
    }
  }

  // Zero as soon as a factor is bottom.
  inline PureTensor pure_tensor(FiniteLattice const& L, Word w, std::vector<element> const& xs) {
    require_small(L);
    if (xs.size() != w.length + 1u) {
      throw Error(Errc::DepthExceeded, "factor count does not match the degree");
    }
    PureTensor t;
    t.w = w;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] == L.bottom()) {
        return PureTensor{{}, {}, true};
      }
      t.x[i] = static_cast<std::uint8_t>(xs[i]);
    }
    return t;
  }

  inline PureTensor pure_embed(FiniteLattice const& L, element x) {
    return pure_tensor(L, Word::epsilon(), {x});
  }

  // 1 ⊗ ... ⊗ 1 in degree w
  inline PureTensor pure_bar(FiniteLattice const& L, Word w) {
    return pure_tensor(L, w, std::vector<element>(w.length + 1u, L.top()));
  }

  // (x0..xn)(y0..ym) = x0 ⊗ ... ⊗ (xn ∧ y0) ⊗ ... ⊗ ym
  inline PureTensor pure_mul(FiniteLattice const& L, PureTensor const& a, PureTensor const& b) {
    if (a.zero || b.zero) {
      return PureTensor{{}, {}, true};
    }
    PureTensor r;
    r.w             = concat(a.w, b.w);
    std::size_t n   = a.w.length;
    element     mid = L.meet(a.x[n], b.x[0]);
    if (mid == L.bottom()) {
      return PureTensor{{}, {}, true};
    }
    for (std::size_t i = 0; i < n; ++i) {
      r.x[i] = a.x[i];
    }
    r.x[n] = static_cast<std::uint8_t>(mid);
    for (std::size_t i = 1; i < b.factors(); ++i) {
      r.x[n + i] = b.x[i];
    }
    return r;
  }

  inline PureTensor pure_inv(PureTensor const& a) {
    if (a.zero) {
      return a;
    }
    PureTensor r;
    r.w = a.w.inv();
    for (std::size_t i = 0; i < a.factors(); ++i) {
      r.x[i] = a.x[a.w.length - i];
    }
    return r;
  }

  inline element pure_support(BimodalFrame const& F, PureTensor const& a) {
    if (a.zero) {
      return F.frame.bottom();
    }
    return presupport_of_tuple(F, a.w, a.x);
  }

  inline std::string describe(FiniteLattice const& L, PureTensor const& a) {
    if (a.zero) {
      return "0";
    }
    std::string s;
    for (std::size_t i = 0; i < a.factors(); ++i) {
      s += (i ? " ⊗ " : "") + L.name(a.x[i]);
    }
    return s + " @" + to_string(a.w);
  }

  // Zero and every pure tensor with nonzero factors up to degree d.
  inline std::vector<PureTensor> pure_grid(FiniteLattice const& L, std::size_t d) {
    require_small(L);
    std::vector<element> nonzero;
    for (element x = 0; x < L.size(); ++x) {
      if (x != L.bottom()) {
        nonzero.push_back(x);
      }
    }
    std::vector<PureTensor> out{PureTensor{{}, {}, true}};
    for (Word w : words_up_to(d)) {
      std::size_t          k = w.length + 1u;
      std::vector<element> xs(k);
      std::vector<std::size_t> idx(k, 0);
      while (true) {
        for (std::size_t i = 0; i < k; ++i) {
          xs[i] = nonzero[idx[i]];
        }
        out.push_back(pure_tensor(L, w, xs));
        std::size_t i = 0;
        while (i < k && ++idx[i] == nonzero.size()) {
          idx[i++] = 0;
        }
        if (i == k) {
          break;
        }
      }
    }
    return out;
  }

  // ---------------------------------------------------------------------
  // down-set representation

  class TensorLab {
   public:
    using Component = std::vector<bool>;              // down-set of irreducible tuples
    using Element   = std::map<Word, Component>;      // absent degrees are bottom

    TensorLab(BimodalFrame F, std::size_t depth) : _f(std::move(F)), _depth(depth) {
      auto const& L = _f.frame;
      if (!L.is_frame()) {
        throw Error(Errc::NotAFrame, "tensor construction needs a frame");
      }
      if (auto r = check_join_preserving(L, _f.diamond); !r) {
        throw Error(Errc::NotJoinPreserving, "diamond: " + r.witness);
      }
      if (auto r = check_join_preserving(L, _f.black); !r) {
        throw Error(Errc::NotJoinPreserving, "black diamond: " + r.witness);
      }
      if (depth > max_word_length) {
        throw Error(Errc::DepthExceeded, "depth above " + std::to_string(max_word_length));
      }
      _j = join_irreducibles(L);
      std::size_t pts = 1;
      for (std::size_t i = 0; i <= depth; ++i) {
        pts *= _j.size();
        if (pts > (std::size_t{1} << 16)) {
          throw Error(Errc::TooLarge, "components above 65536 irreducible tuples");
        }
      }
      _jle.assign(_j.size(), std::vector<bool>(_j.size()));
      for (std::size_t a = 0; a < _j.size(); ++a) {
        for (std::size_t b = 0; b < _j.size(); ++b) {
          _jle[a][b] = L.leq(_j[a], _j[b]);
        }
      }
    }

    FiniteLattice const& lattice() const noexcept {
      return _f.frame;
    }
    BimodalFrame const& frame() const noexcept {
      return _f;
    }
    std::size_t depth() const noexcept {
      return _depth;
    }
    std::vector<element> const& irreducibles() const noexcept {
      return _j;
    }

    std::size_t points(Word w) const {
      check_depth(w);
      std::size_t p = 1;
      for (std::size_t i = 0; i <= w.length; ++i) {
        p *= _j.size();
      }
      return p;
    }

    // Coordinates of a point as indices into irreducibles(); coordinate 0
    // is the most significant digit.
    std::vector<std::size_t> coordinates(Word w, std::size_t point) const {
      std::vector<std::size_t> c(w.length + 1u);
      for (std::size_t i = c.size(); i-- > 0;) {
        c[i] = point % _j.size();
        point /= _j.size();
      }
      return c;
    }

    std::size_t point_index(std::vector<std::size_t> const& c) const {
      std::size_t p = 0;
      for (auto ci : c) {
        p = p * _j.size() + ci;
      }
      return p;
    }

    Element bottom() const {
      return {};
    }
    Element unit() const {
      return top(Word::epsilon());
    }
    // e^(w), the top of the component in degree w
    Element top(Word w) const {
      return normal({{w, Component(points(w), true)}});
    }

    Element pure(Word w, std::vector<element> const& xs) const {
      check_depth(w);
      if (xs.size() != w.length + 1u) {
        throw Error(Errc::DepthExceeded, "factor count does not match the degree");
      }
      Component c(points(w), false);
      for (std::size_t p = 0; p < c.size(); ++p) {
        auto co = coordinates(w, p);
        bool in = true;
        for (std::size_t i = 0; i < co.size() && in; ++i) {
          in = lattice().leq(_j[co[i]], xs[i]);
        }
        c[p] = in;
      }
      return normal({{w, std::move(c)}});
    }
    Element embed(element x) const {
      return pure(Word::epsilon(), {x});
    }
    Element bar(Word w) const {
      return top(w);
    }
    Element from_pure(PureTensor const& t) const {
      if (t.zero) {
        return {};
      }
      return pure(t.w, std::vector<element>(t.x.begin(), t.x.begin() + static_cast<std::ptrdiff_t>(t.factors())));
    }

    Element join(Element a, Element const& b) const {
      for (auto const& [w, c] : b) {
        auto& d = a[w];
        if (d.empty()) {
          d = c;
        } else {
          for (std::size_t p = 0; p < c.size(); ++p) {
            d[p] = d[p] || c[p];
          }
        }
      }
      return a;
    }
    Element meet(Element const& a, Element const& b) const {
      Element r;
      for (auto const& [w, c] : a) {
        auto it = b.find(w);
        if (it == b.end()) {
          continue;
        }
        Component d(c.size());
        for (std::size_t p = 0; p < c.size(); ++p) {
          d[p] = c[p] && it->second[p];
        }
        r[w] = std::move(d);
      }
      return normal(std::move(r));
    }
    bool leq(Element const& a, Element const& b) const {
      for (auto const& [w, c] : a) {
        auto it = b.find(w);
        for (std::size_t p = 0; p < c.size(); ++p) {
          if (c[p] && (it == b.end() || !it->second[p])) {
            return false;
          }
        }
      }
      return true;
    }

    // Bilinear extension of the pure-tensor rule: on down-sets, a relational
    // join on the shared middle coordinate.
    Element mul(Element const& a, Element const& b) const {
      Element r;
      for (auto const& [w1, c1] : a) {
        for (auto const& [w2, c2] : b) {
          Word w = concat(w1, w2);
          check_depth(w);
          std::size_t tail = points(w2) / _j.size();  // k^m
          auto&       out  = r[w];
          if (out.empty()) {
            out.assign(points(w), false);
          }
          for (std::size_t p = 0; p < c1.size(); ++p) {
            if (!c1[p]) {
              continue;
            }
            std::size_t last = p % _j.size();
            for (std::size_t s = 0; s < tail; ++s) {
              if (c2[last * tail + s]) {
                out[p * tail + s] = true;
              }
            }
          }
        }
      }
      return normal(std::move(r));
    }

    Element inv(Element const& a) const {
      Element r;
      for (auto const& [w, c] : a) {
        Word      v = w.inv();
        Component d(c.size(), false);
        for (std::size_t p = 0; p < c.size(); ++p) {
          if (c[p]) {
            auto co = coordinates(w, p);
            std::vector<std::size_t> rev(co.rbegin(), co.rend());
            d[point_index(rev)] = true;
          }
        }
        r[v] = std::move(d);
      }
      return r;
    }

    // Maximal irreducible tuples of a component, as factor lists: the
    // irredundant decomposition into pure tensors.
    std::vector<std::vector<element>> decomposition(Word w, Component const& c) const {
      std::vector<std::vector<element>> out;
      for (std::size_t p = 0; p < c.size(); ++p) {
        if (!c[p]) {
          continue;
        }
        auto co      = coordinates(w, p);
        bool maximal = true;
        for (std::size_t i = 0; i < co.size() && maximal; ++i) {
          std::size_t keep = co[i];
          for (std::size_t j = 0; j < _j.size() && maximal; ++j) {
            if (j != keep && _jle[keep][j]) {
              co[i] = j;
              if (c[point_index(co)]) {
                maximal = false;
              }
              co[i] = keep;
            }
          }
        }
        if (maximal) {
          std::vector<element> xs;
          for (auto ci : co) {
            xs.push_back(_j[ci]);
          }
          out.push_back(std::move(xs));
        }
      }
      return out;
    }

    // Join of the pre-supports of the maximal pure tensors of each component.
    element pre_support(Element const& a) const {
      auto const& L = lattice();
      element     s = L.bottom();
      for (auto const& [w, c] : a) {
        for (auto const& xs : decomposition(w, c)) {
          s = L.join(s, presupport_of_tuple(_f, w, xs));
        }
      }
      return s;
    }

    // The degree-ε component read back as an element of L.
    element as_lattice_element(Element const& a) const {
      auto const& L = lattice();
      element     s = L.bottom();
      for (auto const& [w, c] : a) {
        if (w.length != 0) {
          throw Error(Errc::NotInSupportLocale, "element has a component in degree " + to_string(w));
        }
        for (std::size_t p = 0; p < c.size(); ++p) {
          if (c[p]) {
            s = L.join(s, _j[p]);
          }
        }
      }
      return s;
    }

    // Every down-set of J^(|w|+1); only for components with at most 20 points.
    std::vector<Component> component_elements(Word w) const {
      std::size_t n = points(w);
      if (n > 20) {
        throw Error(Errc::TooLarge, "component enumeration limited to 20 points");
      }
      std::vector<Component> out;
      for (std::uint32_t m = 0; m < (1u << n); ++m) {
        Component c(n);
        for (std::size_t p = 0; p < n; ++p) {
          c[p] = (m >> p & 1u) != 0;
        }
        if (is_downset(w, c)) {
          out.push_back(std::move(c));
        }
      }
      return out;
    }

    bool is_downset(Word w, Component const& c) const {
      for (std::size_t p = 0; p < c.size(); ++p) {
        if (!c[p]) {
          continue;
        }
        auto co = coordinates(w, p);
        for (std::size_t i = 0; i < co.size(); ++i) {
          std::size_t keep = co[i];
          for (std::size_t j = 0; j < _j.size(); ++j) {
            if (_jle[j][keep]) {
              co[i] = j;
              if (!c[point_index(co)]) {
                return false;
              }
            }
          }
          co[i] = keep;
        }
      }
      return true;
    }

    std::string describe(Element const& a) const {
      if (a.empty()) {
        return "0";
      }
      auto const& L = lattice();
      std::string s;
      for (auto const& [w, c] : a) {
        for (auto const& xs : decomposition(w, c)) {
          std::string t;
          for (std::size_t i = 0; i < xs.size(); ++i) {
            t += (i ? " ⊗ " : "") + L.name(xs[i]);
          }
          s += (s.empty() ? "" : " v ") + ("(" + t + ")@" + to_string(w));
        }
      }
      return s;
    }

   private:
    void check_depth(Word w) const {
      if (w.length > _depth) {
        throw Error(Errc::DepthExceeded,
                    "degree " + to_string(w) + " exceeds depth " + std::to_string(_depth));
      }
    }

    static Element normal(Element a) {
      for (auto it = a.begin(); it != a.end();) {
        bool any = false;
        for (bool b : it->second) {
          any = any || b;
        }
        it = any ? std::next(it) : a.erase(it);
      }
      return a;
    }

    BimodalFrame                   _f;
    std::size_t                    _depth;
    std::vector<element>           _j;
    std::vector<std::vector<bool>> _jle;
  };

}  // namespace qmodal
