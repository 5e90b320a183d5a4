#pragma once

// Formula and program syntax trees, shared immutable nodes, and an ASCII
// printer whose output the parser reads back to the same tree.

#include <memory>
#include <string>
#include <utility>

namespace qmodal {

  enum class Op {
    Atom,
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Diamond,
    Box,
    EX,
    EF,
    EG,
    AX,
    AF,
    AG,
    ProgDiamond,
    ProgBox,
  };

  enum class ProgOp { Atom, Union, Seq, Star, Test };

  struct Formula;
  struct Program;
  using FormulaPtr = std::shared_ptr<Formula const>;
  using ProgramPtr = std::shared_ptr<Program const>;

  struct Formula {
    Op          op;
    std::string name;  // atoms only
    FormulaPtr  lhs;   // sole operand of unary connectives
    FormulaPtr  rhs;
    ProgramPtr  prog;  // ProgDiamond / ProgBox
  };

  struct Program {
    ProgOp      op;
    std::string name;  // atoms only
    ProgramPtr  lhs;   // sole operand of Star
    ProgramPtr  rhs;
    FormulaPtr  test;
  };

  bool equal(FormulaPtr const& a, FormulaPtr const& b);
  bool equal(ProgramPtr const& a, ProgramPtr const& b);

  inline bool equal(FormulaPtr const& a, FormulaPtr const& b) {
    if (a == b) {
      return true;
    }
    if (!a || !b || a->op != b->op || a->name != b->name) {
      return false;
    }
    return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs) && equal(a->prog, b->prog);
  }

  inline bool equal(ProgramPtr const& a, ProgramPtr const& b) {
    if (a == b) {
      return true;
    }
    if (!a || !b || a->op != b->op || a->name != b->name) {
      return false;
    }
    return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs) && equal(a->test, b->test);
  }

  namespace fml {

    inline FormulaPtr make(Op op, FormulaPtr l = {}, FormulaPtr r = {}, ProgramPtr p = {}) {
      return std::make_shared<Formula const>(Formula{op, {}, std::move(l), std::move(r), std::move(p)});
    }
    inline FormulaPtr atom(std::string name) {
      return std::make_shared<Formula const>(Formula{Op::Atom, std::move(name), {}, {}, {}});
    }
    inline FormulaPtr top() {
      return make(Op::True);
    }
    inline FormulaPtr bot() {
      return make(Op::False);
    }
    inline FormulaPtr neg(FormulaPtr a) {
      return make(Op::Not, std::move(a));
    }
    inline FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
      return make(Op::And, std::move(a), std::move(b));
    }
    inline FormulaPtr disj(FormulaPtr a, FormulaPtr b) {
      return make(Op::Or, std::move(a), std::move(b));
    }
    inline FormulaPtr imp(FormulaPtr a, FormulaPtr b) {
      return make(Op::Implies, std::move(a), std::move(b));
    }
    inline FormulaPtr iff(FormulaPtr a, FormulaPtr b) {
      return make(Op::Iff, std::move(a), std::move(b));
    }
    inline FormulaPtr dia(FormulaPtr a) {
      return make(Op::Diamond, std::move(a));
    }
    inline FormulaPtr box(FormulaPtr a) {
      return make(Op::Box, std::move(a));
    }
    inline FormulaPtr unary(Op op, FormulaPtr a) {
      return make(op, std::move(a));
    }
    inline FormulaPtr pdia(ProgramPtr p, FormulaPtr a) {
      return make(Op::ProgDiamond, std::move(a), {}, std::move(p));
    }
    inline FormulaPtr pbox(ProgramPtr p, FormulaPtr a) {
      return make(Op::ProgBox, std::move(a), {}, std::move(p));
    }

  }  // namespace fml

  namespace prg {

    inline ProgramPtr atom(std::string name) {
      return std::make_shared<Program const>(Program{ProgOp::Atom, std::move(name), {}, {}, {}});
    }
    inline ProgramPtr choice(ProgramPtr a, ProgramPtr b) {
      return std::make_shared<Program const>(Program{ProgOp::Union, {}, std::move(a), std::move(b), {}});
    }
    inline ProgramPtr seq(ProgramPtr a, ProgramPtr b) {
      return std::make_shared<Program const>(Program{ProgOp::Seq, {}, std::move(a), std::move(b), {}});
    }
    inline ProgramPtr star(ProgramPtr a) {
      return std::make_shared<Program const>(Program{ProgOp::Star, {}, std::move(a), {}, {}});
    }
    inline ProgramPtr test(FormulaPtr f) {
      return std::make_shared<Program const>(Program{ProgOp::Test, {}, {}, {}, std::move(f)});
    }

  }  // namespace prg

  inline bool is_unary(Op op) {
    switch (op) {
      case Op::Not:
      case Op::Diamond:
      case Op::Box:
      case Op::EX:
      case Op::EF:
      case Op::EG:
      case Op::AX:
      case Op::AF:
      case Op::AG:
      case Op::ProgDiamond:
      case Op::ProgBox: return true;
      default: return false;
    }
  }

  inline char const* op_keyword(Op op) {
    switch (op) {
      case Op::Not: return "~";
      case Op::And: return "/\\";
      case Op::Or: return "\\/";
      case Op::Implies: return "->";
      case Op::Iff: return "<->";
      case Op::Diamond: return "<>";
      case Op::Box: return "[]";
      case Op::EX: return "EX";
      case Op::EF: return "EF";
      case Op::EG: return "EG";
      case Op::AX: return "AX";
      case Op::AF: return "AF";
      case Op::AG: return "AG";
      default: return "";
    }
  }

  std::string to_string(ProgramPtr const& p);

  // Binding strength: <-> 0, -> 1 (right associative), \/ 2, /\ 3, unary 4.
  inline std::string to_string(FormulaPtr const& f, int context = 0) {
    auto wrap = [&](int level, std::string s) {
      return level < context ? "(" + s + ")" : s;
    };
    switch (f->op) {
      case Op::Atom: return f->name;
      case Op::True: return "true";
      case Op::False: return "false";
      case Op::And: return wrap(3, to_string(f->lhs, 3) + " /\\ " + to_string(f->rhs, 4));
      case Op::Or: return wrap(2, to_string(f->lhs, 2) + " \\/ " + to_string(f->rhs, 3));
      case Op::Implies: return wrap(1, to_string(f->lhs, 2) + " -> " + to_string(f->rhs, 1));
      case Op::Iff: return wrap(0, to_string(f->lhs, 0) + " <-> " + to_string(f->rhs, 1));
      case Op::ProgDiamond: return "<" + to_string(f->prog) + ">" + to_string(f->lhs, 4);
      case Op::ProgBox: return "[" + to_string(f->prog) + "]" + to_string(f->lhs, 4);
      case Op::EX:
      case Op::EF:
      case Op::EG:
      case Op::AX:
      case Op::AF:
      case Op::AG: return std::string(op_keyword(f->op)) + " " + to_string(f->lhs, 4);
      default: return op_keyword(f->op) + to_string(f->lhs, 4);
    }
  }

  // Union 0, sequence 1, star 2; tests print as `phi?` and count as primaries.
  inline std::string to_string(ProgramPtr const& p, int context) {
    auto wrap = [&](int level, std::string s) {
      return level < context ? "(" + s + ")" : s;
    };
    switch (p->op) {
      case ProgOp::Atom: return p->name;
      case ProgOp::Union: return wrap(0, to_string(p->lhs, 0) + " u " + to_string(p->rhs, 1));
      case ProgOp::Seq: return wrap(1, to_string(p->lhs, 1) + " ; " + to_string(p->rhs, 2));
      case ProgOp::Star: return to_string(p->lhs, 3) + "*";
      case ProgOp::Test: return to_string(p->test, 0) + "?";
    }
    return "";
  }

  inline std::string to_string(ProgramPtr const& p) {
    return to_string(p, 0);
  }

}  // namespace qmodal
