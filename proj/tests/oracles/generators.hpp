#pragma once

// Seeded random formulas, programs and Kripke models.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oracles/kripke_oracle.hpp"
#include "qmodal/formula.hpp"
#include "qmodal/parser.hpp"
#include "qmodal/relation.hpp"
#include "qmodal/semantics.hpp"

namespace gen {

  using qmodal::FormulaPtr;
  using qmodal::Mode;
  using qmodal::Op;
  using qmodal::ProgramPtr;

  inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }

  struct Alphabet {
    std::vector<std::string> atoms{"p", "q"};
    std::vector<std::string> programs{"a", "b"};
  };

  ProgramPtr random_program(std::mt19937_64& rng, std::size_t depth, Alphabet const& ab);

  // Connectives available in each mode; the unary list drives modal depth.
  inline std::vector<Op> unary_ops(Mode m, bool full) {
    switch (m) {
      case Mode::Classical:
      case Mode::Intuitionistic: return {Op::Not, Op::Diamond, Op::Box};
      case Mode::CTL:
        return {Op::Not, Op::EX, Op::EF, Op::EG, Op::AX, Op::AF, Op::AG};
      case Mode::PDL: return full ? std::vector<Op>{Op::Not, Op::ProgDiamond, Op::ProgBox}
                                  : std::vector<Op>{Op::Not, Op::ProgDiamond};
    }
    return {};
  }

  // `full` also draws ->, <->, true and false.
  inline FormulaPtr random_formula(std::mt19937_64& rng, Mode m, std::size_t depth,
                                   Alphabet const& ab = {}, bool full = true) {
    namespace f = qmodal::fml;
    if (depth == 0 || pick(rng, 5) == 0) {
      if (full && pick(rng, 8) == 0) {
        return pick(rng, 2) ? f::top() : f::bot();
      }
      return f::atom(ab.atoms[pick(rng, ab.atoms.size())]);
    }
    auto        un     = unary_ops(m, full);
    std::size_t binary = full ? 4 : 2;
    std::size_t c      = pick(rng, un.size() + binary);
    if (c < un.size()) {
      Op op = un[c];
      if (op == Op::ProgDiamond || op == Op::ProgBox) {
        auto p = random_program(rng, depth - 1, ab);
        return f::make(op, random_formula(rng, m, depth - 1, ab, full), {}, p);
      }
      return f::unary(op, random_formula(rng, m, depth - 1, ab, full));
    }
    auto l = random_formula(rng, m, depth - 1, ab, full);
    auto r = random_formula(rng, m, depth - 1, ab, full);
    switch (c - un.size()) {
      case 0: return f::conj(l, r);
      case 1: return f::disj(l, r);
      case 2: return f::imp(l, r);
      default: return f::iff(l, r);
    }
  }

  inline ProgramPtr random_program(std::mt19937_64& rng, std::size_t depth, Alphabet const& ab) {
    namespace p = qmodal::prg;
    if (depth == 0 || pick(rng, 4) == 0) {
      return p::atom(ab.programs[pick(rng, ab.programs.size())]);
    }
    switch (pick(rng, 4)) {
      case 0: return p::choice(random_program(rng, depth - 1, ab), random_program(rng, depth - 1, ab));
      case 1: return p::seq(random_program(rng, depth - 1, ab), random_program(rng, depth - 1, ab));
      case 2: return p::star(random_program(rng, depth - 1, ab));
      default: return p::test(random_formula(rng, Mode::PDL, depth - 1, ab, true));
    }
  }

  inline oracle::Matrix random_matrix(std::mt19937_64& rng, std::size_t n, bool total) {
    auto m = oracle::empty_matrix(n);
    for (std::size_t i = 0; i < n; ++i) {
      bool any = false;
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] = pick(rng, 3) == 0;
        any     = any || m[i][j];
      }
      if (total && !any) {
        m[i][pick(rng, n)] = true;
      }
    }
    return m;
  }

  struct ModelPair {
    oracle::Kripke                                  kripke;
    qmodal::PointedModel<qmodal::RelationQuantale>  model;
  };

  inline qmodal::Relation to_relation(qmodal::RelationQuantale const& R, oracle::Matrix const& m) {
    qmodal::Relation r;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[i][j]) {
          r.bits |= R.bit(i, j);
        }
      }
    }
    return r;
  }

  // A random Kripke structure and the same data as a pointed relation
  // quantale.  `total` makes every world have a successor.
  inline ModelPair random_model(std::mt19937_64& rng, std::size_t n, bool total,
                                Alphabet const& ab = {}) {
    ModelPair mp{oracle::Kripke{}, {qmodal::RelationQuantale(n), {}, {}, {}}};
    auto&     K = mp.kripke;
    auto const& R = mp.model.quantale;
    K.n       = n;
    K.alpha   = random_matrix(rng, n, total);
    mp.model.alpha = to_relation(R, K.alpha);
    for (auto const& a : ab.atoms) {
      std::vector<bool> s(n);
      for (std::size_t w = 0; w < n; ++w) {
        s[w] = pick(rng, 2) == 1;
      }
      K.atoms[a]          = s;
      mp.model.atoms[a] = R.diagonal_of(K.set_mask(s));
    }
    for (auto const& p : ab.programs) {
      K.programs[p]         = random_matrix(rng, n, false);
      mp.model.programs[p] = to_relation(R, K.programs[p]);
    }
    return mp;
  }

}  // namespace gen
