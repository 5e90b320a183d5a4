#pragma once

// Recursive-descent parser for the formula languages.
//
//   iff     := imp ( "<->" imp )*
//   imp     := or ( "->" imp )?
//   or      := and ( "\/" and )*
//   and     := unary ( "/\" unary )*
//   unary   := ("~" | "<>" | "[]" | EX | EF | EG | AX | AF | AG) unary
//            | "<" prog ">" unary | "[" prog "]" unary | primary
//   primary := ident | "true" | "false" | "(" iff ")"
//   prog    := seq ( "u" seq )*
//   seq     := star ( ";" star )*
//   star    := pprim "*"*
//   pprim   := iff "?" | ident | "(" prog ")"
//
// Unicode aliases: ¬ ∧ ∨ → ↔ ◇ □ ∪.  Which connectives are accepted depends
// on the mode.

#include <cctype>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmodal/error.hpp"
#include "qmodal/formula.hpp"

namespace qmodal {

  enum class Mode { Classical, Intuitionistic, CTL, PDL };

  inline std::string mode_name(Mode m) {
    switch (m) {
      case Mode::Classical: return "classical";
      case Mode::Intuitionistic: return "intuitionistic";
      case Mode::CTL: return "ctl";
      case Mode::PDL: return "pdl";
    }
    return "?";
  }

  inline std::optional<Mode> mode_from_name(std::string_view s) {
    if (s == "classical") return Mode::Classical;
    if (s == "intuitionistic") return Mode::Intuitionistic;
    if (s == "ctl") return Mode::CTL;
    if (s == "pdl") return Mode::PDL;
    return std::nullopt;
  }

  class ParseError : public Error {
   public:
    ParseError(std::size_t line, std::size_t col, std::set<std::string> expected, std::string found)
        : Error(Errc::SyntaxError, render(line, col, expected, found)),
          _line(line),
          _col(col),
          _expected(std::move(expected)),
          _found(std::move(found)) {}

    std::size_t line() const noexcept {
      return _line;
    }
    std::size_t column() const noexcept {
      return _col;
    }
    std::set<std::string> const& expected() const noexcept {
      return _expected;
    }
    std::string const& found() const noexcept {
      return _found;
    }

   private:
    static std::string render(std::size_t line, std::size_t col,
                              std::set<std::string> const& expected, std::string const& found) {
      std::string s = "line " + std::to_string(line) + ", column " + std::to_string(col)
                      + ": expected ";
      bool first = true;
      for (auto const& e : expected) {
        s += (first ? "" : " or ") + e;
        first = false;
      }
      return s + ", found " + found;
    }

    std::size_t           _line, _col;
    std::set<std::string> _expected;
    std::string           _found;
  };

  namespace detail {

    enum class Tok {
      Ident,
      True,
      False,
      Not,
      And,
      Or,
      Imp,
      Iff,
      Dia,
      Box,
      EX,
      EF,
      EG,
      AX,
      AF,
      AG,
      LAngle,
      RAngle,
      LBrack,
      RBrack,
      LParen,
      RParen,
      Union,
      Semi,
      Star,
      Quest,
      End,
    };

    struct Token {
      Tok         kind;
      std::string text;
      std::size_t line, col;
    };

    inline std::vector<Token> lex(std::string_view src) {
      static constexpr std::pair<std::string_view, Tok> symbols[] = {
          {"<->", Tok::Iff}, {"\xE2\x86\x94", Tok::Iff},  // ↔
          {"->", Tok::Imp},  {"\xE2\x86\x92", Tok::Imp},  // →
          {"<>", Tok::Dia},  {"\xE2\x97\x87", Tok::Dia},  // ◇
          {"[]", Tok::Box},  {"\xE2\x96\xA1", Tok::Box},  // □
          {"/\\", Tok::And}, {"\xE2\x88\xA7", Tok::And},  // ∧
          {"\\/", Tok::Or},  {"\xE2\x88\xA8", Tok::Or},   // ∨
          {"~", Tok::Not},   {"\xC2\xAC", Tok::Not},      // ¬
          {"\xE2\x88\xAA", Tok::Union},                   // ∪
          {"<", Tok::LAngle}, {">", Tok::RAngle}, {"[", Tok::LBrack}, {"]", Tok::RBrack},
          {"(", Tok::LParen}, {")", Tok::RParen}, {";", Tok::Semi},   {"*", Tok::Star},
          {"?", Tok::Quest},
      };
      static constexpr std::pair<std::string_view, Tok> words[] = {
          {"true", Tok::True}, {"false", Tok::False}, {"u", Tok::Union}, {"EX", Tok::EX},
          {"EF", Tok::EF},     {"EG", Tok::EG},       {"AX", Tok::AX},   {"AF", Tok::AF},
          {"AG", Tok::AG},
      };
      std::vector<Token> out;
      std::size_t        line = 1, col = 1, i = 0;
      auto               advance = [&](std::size_t k) {
        for (std::size_t t = 0; t < k; ++t) {
          if (src[i] == '\n') {
            ++line;
            col = 1;
          } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
            ++col;
          }
          ++i;
        }
      };
      while (i < src.size()) {
        unsigned char c = static_cast<unsigned char>(src[i]);
        if (std::isspace(c)) {
          advance(1);
          continue;
        }
        if (std::isalpha(c) || c == '_') {
          std::size_t j = i;
          while (j < src.size()
                 && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\'')) {
            ++j;
          }
          std::string w(src.substr(i, j - i));
          Tok         kind = Tok::Ident;
          for (auto const& [kw, t] : words) {
            if (w == kw) {
              kind = t;
            }
          }
          out.push_back({kind, w, line, col});
          advance(j - i);
          continue;
        }
        bool matched = false;
        for (auto const& [sym, t] : symbols) {
          if (src.substr(i, sym.size()) == sym) {
            out.push_back({t, std::string(sym), line, col});
            advance(sym.size());
            matched = true;
            break;
          }
        }
        if (!matched) {
          std::size_t k = 1;
          while (i + k < src.size() && (static_cast<unsigned char>(src[i + k]) & 0xC0) == 0x80) {
            ++k;
          }
          throw ParseError(line, col, {"a formula symbol"}, "'" + std::string(src.substr(i, k)) + "'");
        }
      }
      out.push_back({Tok::End, "", line, col});
      return out;
    }

    class Parser {
     public:
      Parser(std::vector<Token> toks, Mode mode) : _t(std::move(toks)), _mode(mode) {}

      FormulaPtr formula_to_end() {
        auto f = iff();
        expect_end();
        return f;
      }
      ProgramPtr program_to_end() {
        auto p = prog();
        expect_end();
        return p;
      }

     private:
      Token const& peek() const {
        return _t[_pos];
      }
      bool at(Tok k) const {
        return peek().kind == k;
      }
      Token const& take() {
        return _t[_pos++];
      }
      [[noreturn]] void fail(std::set<std::string> expected) const {
        auto const& t = peek();
        throw ParseError(t.line, t.col, std::move(expected),
                         t.kind == Tok::End ? "end of input" : "'" + t.text + "'");
      }
      void expect(Tok k, std::string const& what) {
        if (!at(k)) {
          fail({what});
        }
        take();
      }
      void expect_end() {
        if (!at(Tok::End)) {
          std::set<std::string> e{"end of input", "'/\\'", "'\\/'", "'->'", "'<->'"};
          fail(e);
        }
      }

      bool modal_basic() const {
        return _mode == Mode::Classical || _mode == Mode::Intuitionistic;
      }

      void gate(bool allowed, Token const& t) const {
        if (!allowed) {
          throw ParseError(t.line, t.col, {"a connective of " + mode_name(_mode) + " mode"},
                           "'" + t.text + "'");
        }
      }

      FormulaPtr iff() {
        auto l = imp();
        while (at(Tok::Iff)) {
          take();
          l = fml::iff(l, imp());
        }
        return l;
      }
      FormulaPtr imp() {
        auto l = disj();
        if (at(Tok::Imp)) {
          take();
          return fml::imp(l, imp());
        }
        return l;
      }
      FormulaPtr disj() {
        auto l = conj();
        while (at(Tok::Or)) {
          take();
          l = fml::disj(l, conj());
        }
        return l;
      }
      FormulaPtr conj() {
        auto l = unary();
        while (at(Tok::And)) {
          take();
          l = fml::conj(l, unary());
        }
        return l;
      }

      FormulaPtr unary() {
        auto const& t = peek();
        switch (t.kind) {
          case Tok::Not: take(); return fml::neg(unary());
          case Tok::Dia:
            gate(modal_basic(), t);
            take();
            return fml::dia(unary());
          case Tok::Box:
            gate(modal_basic(), t);
            take();
            return fml::box(unary());
          case Tok::EX:
          case Tok::EF:
          case Tok::EG:
          case Tok::AX:
          case Tok::AF:
          case Tok::AG: {
            gate(_mode == Mode::CTL, t);
            Op op = t.kind == Tok::EX   ? Op::EX
                    : t.kind == Tok::EF ? Op::EF
                    : t.kind == Tok::EG ? Op::EG
                    : t.kind == Tok::AX ? Op::AX
                    : t.kind == Tok::AF ? Op::AF
                                        : Op::AG;
            take();
            return fml::unary(op, unary());
          }
          case Tok::LAngle: {
            gate(_mode == Mode::PDL, t);
            take();
            auto p = prog();
            expect(Tok::RAngle, "'>'");
            return fml::pdia(p, unary());
          }
          case Tok::LBrack: {
            gate(_mode == Mode::PDL, t);
            take();
            auto p = prog();
            expect(Tok::RBrack, "']'");
            return fml::pbox(p, unary());
          }
          default: return primary();
        }
      }

      FormulaPtr primary() {
        auto const& t = peek();
        switch (t.kind) {
          case Tok::Ident: return fml::atom(take().text);
          case Tok::True: take(); return fml::top();
          case Tok::False: take(); return fml::bot();
          case Tok::LParen: {
            take();
            auto f = iff();
            expect(Tok::RParen, "')'");
            return f;
          }
          default: {
            std::set<std::string> e{"an atom", "'('", "'~'", "'true'", "'false'"};
            if (modal_basic()) {
              e.insert({"'<>'", "'[]'"});
            }
            if (_mode == Mode::CTL) {
              e.insert({"'EX'", "'EF'", "'EG'", "'AX'", "'AF'", "'AG'"});
            }
            if (_mode == Mode::PDL) {
              e.insert({"'<'", "'['"});
            }
            fail(e);
          }
        }
      }

      ProgramPtr prog() {
        auto l = seq();
        while (at(Tok::Union)) {
          take();
          l = prg::choice(l, seq());
        }
        return l;
      }
      ProgramPtr seq() {
        auto l = starred();
        while (at(Tok::Semi)) {
          take();
          l = prg::seq(l, starred());
        }
        return l;
      }
      ProgramPtr starred() {
        auto p = pprim();
        while (at(Tok::Star)) {
          take();
          p = prg::star(p);
        }
        return p;
      }
      ProgramPtr pprim() {
        std::size_t mark = _pos;
        try {
          auto f = iff();
          if (at(Tok::Quest)) {
            take();
            return prg::test(f);
          }
        } catch (ParseError const&) {
        }
        _pos = mark;
        if (at(Tok::Ident)) {
          return prg::atom(take().text);
        }
        if (at(Tok::LParen)) {
          take();
          auto p = prog();
          expect(Tok::RParen, "')'");
          return p;
        }
        fail({"a program", "a test 'phi ?'", "'('"});
      }

      std::vector<Token> _t;
      std::size_t        _pos = 0;
      Mode               _mode;
    };

  }  // namespace detail

  inline FormulaPtr parse_formula(std::string_view text, Mode mode) {
    return detail::Parser(detail::lex(text), mode).formula_to_end();
  }

  inline ProgramPtr parse_program(std::string_view text) {
    return detail::Parser(detail::lex(text), Mode::PDL).program_to_end();
  }

}  // namespace qmodal
