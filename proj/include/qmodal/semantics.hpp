#pragma once

// Evaluation of formulas in a pointed supported quantale (Q, α, v).  Formula
// values live in the support locale ↓e; program values live in Q.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qmodal/error.hpp"
#include "qmodal/formula.hpp"
#include "qmodal/parser.hpp"
#include "qmodal/quantale.hpp"

namespace qmodal {

  template <SupportedQuantale Q>
  struct PointedModel {
    using element = typename Q::element;

    Q                              quantale;
    element                        alpha;
    std::map<std::string, element> atoms;     // values below e
    std::map<std::string, element> programs;  // PDL atomic programs
  };

  template <SupportedQuantale Q>
  class Evaluator {
   public:
    using E = typename Q::element;

    explicit Evaluator(PointedModel<Q> const& m)
        : _m(m), _q(m.quantale), _locale(m.quantale.unit_downset()) {
      for (auto const& [name, v] : _m.atoms) {
        if (!_q.leq(v, _q.unit())) {
          throw Error(Errc::NotInSupportLocale, "value of atom " + name + " is not below e");
        }
      }
    }

    // ¬, ∨, ◇ are primitive; ∧, →, ↔, □ are expanded into them.
    E classical(FormulaPtr const& f) {
      switch (f->op) {
        case Op::Atom: return atom(f);
        case Op::True: return _q.unit();
        case Op::False: return _q.bottom();
        case Op::Not: return complement(classical(f->lhs), f->lhs);
        case Op::Or: return _q.join(classical(f->lhs), classical(f->rhs));
        case Op::Diamond: return diamond(classical(f->lhs));
        case Op::And: return classical(fml::neg(fml::disj(fml::neg(f->lhs), fml::neg(f->rhs))));
        case Op::Implies: return classical(fml::disj(fml::neg(f->lhs), f->rhs));
        case Op::Iff:
          return classical(fml::conj(fml::imp(f->lhs, f->rhs), fml::imp(f->rhs, f->lhs)));
        case Op::Box: return classical(fml::neg(fml::dia(fml::neg(f->lhs))));
        default: throw unsupported(f, Mode::Classical);
      }
    }

    // ∧ is multiplication, → residuation in ↓e, ¬φ = φ → false, and □ is
    // the right adjoint of ◆.
    E intuitionistic(FormulaPtr const& f) {
      switch (f->op) {
        case Op::Atom: return atom(f);
        case Op::True: return _q.unit();
        case Op::False: return _q.bottom();
        case Op::And: return _q.mul(intuitionistic(f->lhs), intuitionistic(f->rhs));
        case Op::Or: return _q.join(intuitionistic(f->lhs), intuitionistic(f->rhs));
        case Op::Implies: return residual(intuitionistic(f->lhs), intuitionistic(f->rhs));
        case Op::Iff: {
          E a = intuitionistic(f->lhs), b = intuitionistic(f->rhs);
          return _q.mul(residual(a, b), residual(b, a));
        }
        case Op::Not: return residual(intuitionistic(f->lhs), _q.bottom());
        case Op::Diamond: return diamond(intuitionistic(f->lhs));
        case Op::Box: return box(intuitionistic(f->lhs));
        default: throw unsupported(f, Mode::Intuitionistic);
      }
    }

    // Classical base with EX, EF, EG primitive and AX, AF, AG as duals.
    // Requires ςα = e.
    E ctl(FormulaPtr const& f) {
      if (!(_q.support(_m.alpha) == _q.unit())) {
        throw Error(Errc::TimeEnds, "the point has a world without successors");
      }
      return ctl_rec(f);
    }

    E pdl(FormulaPtr const& f) {
      switch (f->op) {
        case Op::Atom: return atom(f);
        case Op::True: return _q.unit();
        case Op::False: return _q.bottom();
        case Op::Not: return complement(pdl(f->lhs), f->lhs);
        case Op::Or: return _q.join(pdl(f->lhs), pdl(f->rhs));
        case Op::And: return _q.mul(pdl(f->lhs), pdl(f->rhs));
        case Op::Implies: return pdl(fml::disj(fml::neg(f->lhs), f->rhs));
        case Op::Iff: return pdl(fml::conj(fml::imp(f->lhs, f->rhs), fml::imp(f->rhs, f->lhs)));
        case Op::ProgDiamond: return _q.support(_q.mul(program(f->prog), pdl(f->lhs)));
        case Op::ProgBox: return pdl(fml::neg(fml::pdia(f->prog, fml::neg(f->lhs))));
        case Op::Diamond: return diamond(pdl(f->lhs));
        case Op::Box: return pdl(fml::neg(fml::dia(fml::neg(f->lhs))));
        default: throw unsupported(f, Mode::PDL);
      }
    }

    E program(ProgramPtr const& p) {
      switch (p->op) {
        case ProgOp::Atom: {
          auto it = _m.programs.find(p->name);
          if (it == _m.programs.end()) {
            throw Error(Errc::UnknownSymbol, "program " + p->name + " has no value");
          }
          return it->second;
        }
        case ProgOp::Union: return _q.join(program(p->lhs), program(p->rhs));
        case ProgOp::Seq: return _q.mul(program(p->lhs), program(p->rhs));
        case ProgOp::Star: return star(program(p->lhs));
        case ProgOp::Test: return pdl(p->test);
      }
      return _q.bottom();
    }

    E eval(FormulaPtr const& f, Mode mode) {
      switch (mode) {
        case Mode::Classical: return classical(f);
        case Mode::Intuitionistic: return intuitionistic(f);
        case Mode::CTL: return ctl(f);
        case Mode::PDL: return pdl(f);
      }
      return _q.bottom();
    }

    // ⋁_n aⁿ, starting from a⁰ = e, to stabilization.
    E star(E a) const {
      E s = _q.unit();
      while (true) {
        E next = _q.join(s, _q.mul(s, a));
        if (next == s) {
          return s;
        }
        s = next;
      }
    }

    E diamond(E x) const {
      return _q.support(_q.mul(_m.alpha, x));
    }
    E black_diamond(E x) const {
      return _q.support(_q.mul(_q.inv(_m.alpha), x));
    }
    // ⋁{x ∈ ↓e : ◆x ≤ y}
    E box(E y) const {
      E r = _q.bottom();
      for (auto const& x : _locale) {
        if (_q.leq(black_diamond(x), y)) {
          r = _q.join(r, x);
        }
      }
      return r;
    }
    // a \ b = ⋁{c ∈ ↓e : a ∧ c ≤ b}
    E residual(E a, E b) const {
      E r = _q.bottom();
      for (auto const& c : _locale) {
        if (_q.leq(_q.meet(a, c), b)) {
          r = _q.join(r, c);
        }
      }
      return r;
    }

   private:
    E atom(FormulaPtr const& f) const {
      auto it = _m.atoms.find(f->name);
      if (it == _m.atoms.end()) {
        throw Error(Errc::UnknownSymbol, "atom " + f->name + " has no value");
      }
      return it->second;
    }

    E complement(E x, FormulaPtr const& sub) const {
      for (auto const& c : _locale) {
        if (_q.join(x, c) == _q.unit() && _q.meet(x, c) == _q.bottom()) {
          return c;
        }
      }
      throw Error(Errc::NotComplemented, "value of " + to_string(sub) + " has no complement");
    }

    Error unsupported(FormulaPtr const& f, Mode m) const {
      return Error(Errc::UnknownSymbol,
                   "connective of " + to_string(f) + " is not interpreted in " + mode_name(m) + " mode");
    }

    E ctl_rec(FormulaPtr const& f) {
      switch (f->op) {
        case Op::Atom: return atom(f);
        case Op::True: return _q.unit();
        case Op::False: return _q.bottom();
        case Op::Not: return complement(ctl_rec(f->lhs), f->lhs);
        case Op::Or: return _q.join(ctl_rec(f->lhs), ctl_rec(f->rhs));
        case Op::And: return _q.mul(ctl_rec(f->lhs), ctl_rec(f->rhs));
        case Op::Implies: return ctl_rec(fml::disj(fml::neg(f->lhs), f->rhs));
        case Op::Iff:
          return ctl_rec(fml::conj(fml::imp(f->lhs, f->rhs), fml::imp(f->rhs, f->lhs)));
        case Op::EX:
        case Op::Diamond: return diamond(ctl_rec(f->lhs));
        case Op::EF: return _q.support(_q.mul(star(_m.alpha), ctl_rec(f->lhs)));
        case Op::EG: {
          // greatest fixed point of a ↦ v ∧ ς(αa), iterated down from v
          E v = ctl_rec(f->lhs);
          E a = v;
          while (true) {
            E next = _q.meet(v, diamond(a));
            if (next == a) {
              return a;
            }
            a = next;
          }
        }
        case Op::AX:
        case Op::Box: return ctl_rec(fml::neg(fml::unary(Op::EX, fml::neg(f->lhs))));
        case Op::AF: return ctl_rec(fml::neg(fml::unary(Op::EG, fml::neg(f->lhs))));
        case Op::AG: return ctl_rec(fml::neg(fml::unary(Op::EF, fml::neg(f->lhs))));
        default: throw unsupported(f, Mode::CTL);
      }
    }

    PointedModel<Q> const& _m;
    Q const&               _q;
    std::vector<E>         _locale;
  };

  template <SupportedQuantale Q>
  typename Q::element eval_classical(PointedModel<Q> const& m, FormulaPtr const& f) {
    return Evaluator<Q>(m).classical(f);
  }
  template <SupportedQuantale Q>
  typename Q::element eval_intuitionistic(PointedModel<Q> const& m, FormulaPtr const& f) {
    return Evaluator<Q>(m).intuitionistic(f);
  }
  template <SupportedQuantale Q>
  typename Q::element eval_ctl(PointedModel<Q> const& m, FormulaPtr const& f) {
    return Evaluator<Q>(m).ctl(f);
  }
  template <SupportedQuantale Q>
  typename Q::element eval_pdl(PointedModel<Q> const& m, FormulaPtr const& f) {
    return Evaluator<Q>(m).pdl(f);
  }
  template <SupportedQuantale Q>
  typename Q::element eval_program(PointedModel<Q> const& m, ProgramPtr const& p) {
    return Evaluator<Q>(m).program(p);
  }

  template <SupportedQuantale Q>
  typename Q::element evaluate(PointedModel<Q> const& m, FormulaPtr const& f, Mode mode) {
    return Evaluator<Q>(m).eval(f, mode);
  }

  // v(φ) = e.
  template <SupportedQuantale Q>
  bool valid_in_model(PointedModel<Q> const& m, FormulaPtr const& f, Mode mode) {
    return evaluate(m, f, mode) == m.quantale.unit();
  }

}  // namespace qmodal
