#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "oracles/tensor_oracle.hpp"
#include "qmodal/bimodal.hpp"
#include "qmodal/tensor.hpp"
#include "qmodal/tensor_laws.hpp"

using namespace qmodal;

namespace {

  template <class F>
  Errc code_of(F&& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.code();
    }
    FAIL("no error raised");
    return Errc::InternalValidationFailed;
  }

  std::vector<FiniteLattice> frames() {
    return {lattices::chain(2), lattices::chain3(), lattices::diamond()};
  }

  BimodalFrame identity_frame(FiniteLattice const& L) {
    Endomap id(L.size());
    for (element x = 0; x < L.size(); ++x) {
      id[x] = x;
    }
    return make_bimodal_frame(L, id, id);
  }

  // W = {a, b} and α = {(a,b)} on P(W) = diamond: ◇S = {a} iff b ∈ S, ◆S = {b}
  // iff a ∈ S.
  BimodalFrame edge_frame() {
    auto L = lattices::diamond();
    return make_bimodal_frame(L, {0, 0, 1, 1}, {0, 2, 0, 2});
  }

  std::vector<bool> letters(Word w) {
    std::vector<bool> c;
    for (std::size_t i = 0; i < w.length; ++i) {
      c.push_back(w.converse_at(i));
    }
    return c;
  }

  // Down-set image I ∩ J^k of a closed subset, in the lab's point order.
  TensorLab::Component restrict_to_irreducibles(TensorLab const& lab, Word w, oracle::TensorPower const& P,
                                                std::uint64_t I) {
    TensorLab::Component c(lab.points(w), false);
    auto const&          J = lab.irreducibles();
    for (std::size_t p = 0; p < c.size(); ++p) {
      auto                 co = lab.coordinates(w, p);
      std::vector<element> x;
      for (auto ci : co) {
        x.push_back(J[ci]);
      }
      c[p] = (I >> P.index(x) & 1u) != 0;
    }
    return c;
  }

  TensorLab::Element as_element(TensorLab const& lab, Word w, oracle::TensorPower const& P, std::uint64_t I) {
    TensorLab::Element e;
    auto               c = restrict_to_irreducibles(lab, w, P, I);
    if (std::find(c.begin(), c.end(), true) != c.end()) {
      e[w] = c;
    }
    return e;
  }

  std::vector<element> random_factors(std::mt19937_64& rng, FiniteLattice const& L, std::size_t k) {
    std::vector<element> x(k);
    for (auto& xi : x) {
      xi = std::uniform_int_distribution<element>(0, L.size() - 1)(rng);
    }
    return x;
  }

  Word random_word(std::mt19937_64& rng, std::size_t max_len) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
    return {static_cast<std::uint8_t>(n),
            static_cast<std::uint16_t>(std::uniform_int_distribution<std::uint32_t>(0, (1u << n) - 1)(rng))};
  }

  // A join of up to three pure tensors, in up to two degrees.
  TensorLab::Element random_element(std::mt19937_64& rng, TensorLab const& lab, std::size_t max_len) {
    TensorLab::Element a;
    std::size_t        terms = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    for (std::size_t t = 0; t < terms; ++t) {
      Word w = random_word(rng, max_len);
      a      = lab.join(a, lab.pure(w, random_factors(rng, lab.lattice(), w.length + 1u)));
    }
    return a;
  }

}  // namespace

TEST_CASE("words", "[tensor]") {
  CHECK(words_up_to(0).size() == 1);
  CHECK(words_up_to(3).size() == 1 + 2 + 4 + 8);
  for (Word w : words_up_to(4)) {
    CHECK(w.inv().inv() == w);
    for (Word v : words_up_to(3)) {
      CHECK(concat(w, v).inv() == concat(v.inv(), w.inv()));
    }
  }
  CHECK(to_string(Word::epsilon()) == "eps");
  CHECK(to_string(concat(Word::alpha(), Word::alpha(true))) == "aa'");
  CHECK(Word::alpha().inv() == Word::alpha(true));
  CHECK(code_of([] {
          Word w{15, 0};
          concat(w, Word::alpha());
        })
        == Errc::DepthExceeded);
}

TEST_CASE("degree zero component is the frame itself", "[tensor]") {
  for (auto const& L : frames()) {
    TensorLab lab(identity_frame(L), 2);
    auto      comps = lab.component_elements(Word::epsilon());
    CHECK(comps.size() == L.size());
    for (element x = 0; x < L.size(); ++x) {
      CHECK(lab.as_lattice_element(lab.embed(x)) == x);
      for (element y = 0; y < L.size(); ++y) {
        CHECK(lab.leq(lab.embed(x), lab.embed(y)) == L.leq(x, y));
        CHECK(lab.mul(lab.embed(x), lab.embed(y)) == lab.embed(L.meet(x, y)));
      }
      CHECK(lab.pre_support(lab.embed(x)) == x);
      CHECK(lab.inv(lab.embed(x)) == lab.embed(x));
    }
  }
}

TEST_CASE("component sizes", "[tensor]") {
  TensorLab two(identity_frame(lattices::chain(2)), 3);
  CHECK(two.component_elements(Word::alpha()).size() == 2);
  CHECK(two.component_elements(Word{3, 5}).size() == 2);
  TensorLab ch(identity_frame(lattices::chain3()), 2);
  // down-sets of a 2x2 grid, and of a 2x2x2 cube
  CHECK(ch.component_elements(Word::alpha()).size() == 6);
  CHECK(ch.component_elements(Word{2, 0}).size() == 20);
  TensorLab di(identity_frame(lattices::diamond()), 2);
  CHECK(di.component_elements(Word::alpha()).size() == 16);
  CHECK(di.component_elements(Word{2, 3}).size() == 256);
}

TEST_CASE("pure tensors with a bottom factor vanish", "[tensor]") {
  auto      L = lattices::diamond();
  TensorLab lab(identity_frame(L), 3);
  for (Word w : words_up_to(3)) {
    for (std::size_t i = 0; i <= w.length; ++i) {
      std::vector<element> x(w.length + 1u, L.top());
      x[i] = L.bottom();
      CHECK(lab.pure(w, x).empty());
      CHECK(pure_tensor(L, w, x).zero);
    }
  }
}

TEST_CASE("product of x(x)1 and 1(x)y", "[tensor]") {
  auto      L = lattices::diamond();
  TensorLab lab(identity_frame(L), 2);
  Word      a = Word::alpha();
  for (element x = 0; x < L.size(); ++x) {
    for (element y = 0; y < L.size(); ++y) {
      auto prod = lab.mul(lab.pure(a, {x, L.top()}), lab.pure(a, {L.top(), y}));
      CHECK(prod == lab.pure(concat(a, a), {x, L.top(), y}));
      oracle::TensorPower P2{L, 2}, P3{L, 3};
      auto                o = oracle::tensor_mul(P2, P2.pure({x, L.top()}), P2, P2.pure({L.top(), y}), P3);
      CHECK(as_element(lab, concat(a, a), P3, o) == prod);
    }
  }
  // (a(x)1)(b(x)1) has middle factor 1 ∧ b
  CHECK(lab.mul(lab.pure(a, {1, 3}), lab.pure(a, {2, 3})) == lab.pure(concat(a, a), {1, 2, 3}));
  CHECK(lab.mul(lab.pure(a, {3, 1}), lab.pure(a, {2, 3})).empty());
}

TEST_CASE("unit, associativity and involution", "[tensor][property]") {
  std::mt19937_64 rng(99);
  for (auto const& L : frames()) {
    TensorLab lab(identity_frame(L), 4);
    auto      e = lab.unit();
    for (int i = 0; i < 150; ++i) {
      auto a = random_element(rng, lab, 2);
      auto b = random_element(rng, lab, 1);
      auto c = random_element(rng, lab, 1);
      CHECK(lab.mul(e, a) == a);
      CHECK(lab.mul(a, e) == a);
      CHECK(lab.mul(lab.mul(a, b), c) == lab.mul(a, lab.mul(b, c)));
      CHECK(lab.inv(lab.inv(a)) == a);
      CHECK(lab.inv(lab.mul(a, b)) == lab.mul(lab.inv(b), lab.inv(a)));
      CHECK(lab.mul(a, lab.join(b, c)) == lab.join(lab.mul(a, b), lab.mul(a, c)));
      CHECK(lab.inv(lab.join(a, b)) == lab.join(lab.inv(a), lab.inv(b)));
      for (auto const& [w, comp] : a) {
        CHECK(lab.inv(TensorLab::Element{{w, comp}}).begin()->first == w.inv());
      }
      for (auto const& [w, comp] : lab.mul(b, c)) {
        bool from_pair = false;
        for (auto const& [u, _] : b) {
          for (auto const& [v, __] : c) {
            from_pair = from_pair || concat(u, v) == w;
          }
        }
        CHECK(from_pair);
      }
    }
  }
}

TEST_CASE("depth is enforced", "[tensor]") {
  auto      L = lattices::chain3();
  TensorLab lab(identity_frame(L), 2);
  auto      a = lab.pure(Word::alpha(), {2, 2});
  auto      b = lab.pure(Word{2, 0}, {2, 2, 2});
  CHECK_NOTHROW(lab.mul(a, a));
  CHECK(code_of([&] { lab.mul(a, b); }) == Errc::DepthExceeded);
  CHECK(code_of([&] { lab.pure(Word{3, 0}, {2, 2, 2, 2}); }) == Errc::DepthExceeded);
  CHECK(code_of([&] { lab.top(Word{3, 1}); }) == Errc::DepthExceeded);
  CHECK_NOTHROW(lab.mul(b, lab.unit()));
  CHECK(code_of([&] { TensorLab(identity_frame(lattices::m3()), 1); }) == Errc::NotAFrame);
}

TEST_CASE("down-set encoding of L(x)L is the bi-closed subset tensor", "[tensor][oracle]") {
  for (auto const& L : frames()) {
    INFO(L.size() << " elements");
    TensorLab           lab(identity_frame(L), 2);
    oracle::TensorPower P{L, 2};
    auto                closed = P.all_closed();
    std::size_t         brute  = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << P.tuples()); ++m) {
      if (P.closed_by_definition(m)) {
        ++brute;
        CHECK(std::find(closed.begin(), closed.end(), m) != closed.end());
      }
    }
    CHECK(brute == closed.size());

    Word                              a = Word::alpha();
    auto                              comps = lab.component_elements(a);
    std::set<TensorLab::Component>    images;
    std::set<TensorLab::Component> const all(comps.begin(), comps.end());
    for (auto I : closed) {
      images.insert(restrict_to_irreducibles(lab, a, P, I));
    }
    CHECK(images == all);
    CHECK(closed.size() == comps.size());
    for (auto I : closed) {
      for (auto K : closed) {
        auto ci = restrict_to_irreducibles(lab, a, P, I), ck = restrict_to_irreducibles(lab, a, P, K);
        bool sub = (I & ~K) == 0;
        CHECK(lab.leq(TensorLab::Element{{a, ci}}, TensorLab::Element{{a, ck}}) == sub);
      }
    }
    for (element x = 0; x < L.size(); ++x) {
      for (element y = 0; y < L.size(); ++y) {
        CHECK(as_element(lab, a, P, P.pure({x, y})) == lab.pure(a, {x, y}));
      }
    }
  }
}

TEST_CASE("down-set encoding of L(x)L(x)L against tri-closed subsets", "[tensor][oracle]") {
  for (auto const& L : frames()) {
    TensorLab           lab(identity_frame(L), 2);
    oracle::TensorPower P{L, 3};
    auto                closed = P.all_closed();
    Word                w{2, 2};
    auto                comps = lab.component_elements(w);
    CHECK(closed.size() == comps.size());
    std::set<TensorLab::Component> images;
    for (auto I : closed) {
      images.insert(restrict_to_irreducibles(lab, w, P, I));
    }
    CHECK(images == std::set<TensorLab::Component>(comps.begin(), comps.end()));
    std::mt19937_64 rng(L.size());
    for (int i = 0; i < 200; ++i) {
      auto x = random_factors(rng, L, 3);
      CHECK(as_element(lab, w, P, P.pure(x)) == lab.pure(w, x));
    }
  }
}

TEST_CASE("multiplication, involution and support against the closure oracle", "[tensor][oracle]") {
  std::mt19937_64 rng(7);
  for (auto const& L : frames()) {
    for (auto const& [d, b] : enumerate_conjugate_pairs(L)) {
      BimodalFrame F{L, d, b};
      TensorLab    lab(F, 2);
      for (int i = 0; i < 40; ++i) {
        Word u = random_word(rng, 1);
        Word v = random_word(rng, 2 - u.length);
        oracle::TensorPower Pu{L, u.length + 1u}, Pv{L, v.length + 1u}, Puv{L, u.length + v.length + 1u};
        TensorLab::Element  x, y;
        std::uint64_t       ox = Pu.closure(0), oy = Pv.closure(0);
        for (int t = 0; t < 2; ++t) {
          auto fx = random_factors(rng, L, u.length + 1u);
          auto fy = random_factors(rng, L, v.length + 1u);
          x       = lab.join(x, lab.pure(u, fx));
          y       = lab.join(y, lab.pure(v, fy));
          ox      = Pu.closure(ox | Pu.pure(fx));
          oy      = Pv.closure(oy | Pv.pure(fy));
        }
        REQUIRE(as_element(lab, u, Pu, ox) == x);
        auto prod = oracle::tensor_mul(Pu, ox, Pv, oy, Puv);
        CHECK(as_element(lab, concat(u, v), Puv, prod) == lab.mul(x, y));
        CHECK(as_element(lab, u.inv(), Pu, oracle::tensor_reverse(Pu, ox)) == lab.inv(x));
        CHECK(oracle::tensor_support(F, letters(u), Pu, ox) == lab.pre_support(x));
        CHECK(oracle::tensor_support(F, letters(concat(u, v)), Puv, prod) == lab.pre_support(lab.mul(x, y)));
      }
    }
  }
}

TEST_CASE("pre-support examples", "[tensor]") {
  auto two = lattices::chain(2);
  {
    TensorLab lab(identity_frame(two), 1);
    CHECK(lab.pre_support(lab.pure(Word::alpha(), {1, 0})) == 0);
    CHECK(pure_support(lab.frame(), pure_tensor(two, Word::alpha(), {1, 0})) == 0);
    CHECK(lab.pre_support(lab.unit()) == 1);
  }
  auto      F = edge_frame();
  auto const& L = F.frame;
  TensorLab lab(F, 2);
  for (element x0 = 0; x0 < 4; ++x0) {
    for (element x1 = 0; x1 < 4; ++x1) {
      element hand = (x1 & 2u) ? (x0 & 1u) : 0u;  // x0 ∩ ◇x1, ◇x1 = {a} iff b ∈ x1
      CHECK(lab.pre_support(lab.pure(Word::alpha(), {x0, x1})) == hand);
      CHECK(pure_support(F, pure_tensor(L, Word::alpha(), {x0, x1})) == hand);
      element hand_inv = (x1 & 1u) ? (x0 & 2u) : 0u;  // ◆x1 = {b} iff a ∈ x1
      CHECK(lab.pre_support(lab.pure(Word::alpha(true), {x0, x1})) == hand_inv);
    }
  }
  // a ⊗ 1 ⊗ 1 in degree αα: a ∧ ◇(1 ∧ ◇1) = a ∧ ◇{a} = 0
  CHECK(lab.pre_support(lab.pure(Word{2, 0}, {1, 3, 3})) == 0);
  // a ⊗ 1 ⊗ 1 in degree αα⁻: a ∧ ◇(◆1) = a ∧ ◇{b} = a
  CHECK(lab.pre_support(lab.pure(Word{2, 2}, {1, 3, 3})) == 1);
}

TEST_CASE("symbolic pure tensors agree with the down-set encoding", "[tensor][property]") {
  for (auto const& L : frames()) {
    for (auto const& [d, b] : enumerate_conjugate_pairs(L)) {
      BimodalFrame F{L, d, b};
      TensorLab    lab(F, 2);
      auto         grid = pure_grid(L, 1);
      for (auto const& x : grid) {
        CHECK(lab.pre_support(lab.from_pure(x)) == pure_support(F, x));
        CHECK(lab.from_pure(pure_inv(x)) == lab.inv(lab.from_pure(x)));
        for (auto const& y : grid) {
          CHECK(lab.from_pure(pure_mul(L, x, y)) == lab.mul(lab.from_pure(x), lab.from_pure(y)));
        }
      }
    }
  }
}

TEST_CASE("grid sizes", "[tensor]") {
  CHECK(pure_grid(lattices::chain(2), 2).size() == 1 + 1 + 2 + 4);
  CHECK(pure_grid(lattices::chain3(), 2).size() == 1 + 2 + 2 * 4 + 4 * 8);
  CHECK(pure_grid(lattices::diamond(), 2).size() == 1 + 3 + 2 * 9 + 4 * 27);
}

TEST_CASE("grading of the tensor quantale", "[tensor]") {
  for (auto const& L : frames()) {
    for (std::size_t depth = 0; depth <= 3; ++depth) {
      TensorLab lab(identity_frame(L), depth);
      auto      r = check_tensor_grading(lab);
      INFO(r);
      CHECK(r.ok());
    }
  }
}

TEST_CASE("lemma suite on the pure tensor grid", "[tensor][lemma]") {
  for (auto const& L : frames()) {
    auto grid = pure_grid(L, 2);
    for (auto const& [d, b] : enumerate_conjugate_pairs(L)) {
      BimodalFrame F{L, d, b};
      PureAlgebra  alg{F};
      auto         r = check_presupport_laws(alg, grid);
      r.append(check_lemmaB_inequalities(alg, grid, modal_class_flags(F)));
      INFO(r);
      CHECK(r.ok());
      CHECK(r.lines.size() == 14);
    }
  }
}

TEST_CASE("lemma suite on random joins in the down-set encoding", "[tensor][lemma]") {
  std::mt19937_64 rng(31);
  for (auto const& L : frames()) {
    auto pairs = enumerate_conjugate_pairs(L);
    for (std::size_t i = 0; i < pairs.size(); i += 3) {
      BimodalFrame F{L, pairs[i].first, pairs[i].second};
      TensorLab    lab(F, 4);
      std::vector<TensorLab::Element> samples;
      for (int k = 0; k < 14; ++k) {
        samples.push_back(random_element(rng, lab, 1));
      }
      GradedAlgebra alg{lab};
      auto          r = check_presupport_laws(alg, samples);
      r.append(check_lemmaB_inequalities(alg, samples, modal_class_flags(F)));
      INFO(r);
      CHECK(r.ok());
      CHECK(r.find("lemmaA.preserves-joins")->status == LawLine::Status::Pass);
    }
  }
}

TEST_CASE("a non-conjugate pair breaks item 4 only", "[tensor][lemma]") {
  // ◇ = id and ◆ = 0 on the two-element frame
  auto L = lattices::chain(2);
  REQUIRE_FALSE(check_conjugacy(L, {0, 1}, {0, 0}));
  BimodalFrame F{L, {0, 1}, {0, 0}};
  PureAlgebra  alg{F};
  auto         r = check_presupport_laws(alg, pure_grid(L, 2));
  for (auto const* name : {"lemmaA.1.support-of-unit", "lemmaA.1.below-unit", "lemmaA.2.support-of-product",
                           "lemmaA.3.stable"}) {
    CHECK(r.find(name)->status == LawLine::Status::Pass);
  }
  CHECK(r.find("lemmaA.4a")->status == LawLine::Status::Fail);
  CHECK(r.find("lemmaA.4b")->status == LawLine::Status::Fail);
  CHECK_FALSE(r.ok());
}

TEST_CASE("corollary forms", "[tensor][lemma]") {
  for (auto const& L : frames()) {
    auto         F    = identity_frame(L);
    auto         grid = pure_grid(L, 2);
    PureAlgebra  alg{F};
    auto         fl = modal_class_flags(F);
    CHECK(fl.t);
    CHECK(fl.k4);
    CHECK(fl.s5);
    auto r = check_lemmaB_inequalities(alg, grid, fl);
    INFO(r);
    CHECK(r.ok());
    for (auto const& l : r.lines) {
      CHECK(l.status == LawLine::Status::Pass);
    }
    // degree-ε t: ςt = tt⁻
    for (element x = 0; x < L.size(); ++x) {
      auto t = pure_embed(L, x);
      CHECK(pure_mul(L, t, pure_inv(t)) == pure_embed(L, pure_support(F, t)));
    }
    // zero modalities are conjugate but not T; forcing the T family fails
    Endomap      zero(L.size(), L.bottom());
    BimodalFrame Z{L, zero, zero};
    CHECK_FALSE(modal_class_flags(Z).t);
    PureAlgebra za{Z};
    auto        forced = check_lemmaB_inequalities(za, grid, {true, false, false});
    CHECK(forced.find("cor.T")->status == LawLine::Status::Fail);
    CHECK(forced.find("cor.K4")->status == LawLine::Status::Skip);
    CHECK(check_lemmaB_inequalities(za, grid, modal_class_flags(Z)).ok());
  }
}

TEST_CASE("report format", "[tensor]") {
  Report r;
  r.lines.push_back({"x", LawLine::Status::Pass, "cases=3"});
  r.lines.push_back({"y", LawLine::Status::Fail, "a=0"});
  r.lines.push_back({"z", LawLine::Status::Skip, "why"});
  std::ostringstream os;
  os << r;
  CHECK(os.str() == "LAW x PASS cases=3\nLAW y FAIL a=0\nLAW z SKIP why\n");
  CHECK_FALSE(r.ok());
}
