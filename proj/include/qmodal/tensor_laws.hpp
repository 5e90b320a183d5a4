#pragma once

// Machine checks of the pre-support lemma on T(L), the Lemma B inequality
// for pairs (ςt, tt⁻), and the T/K4/S5 inequalities for ᾱ = 1⊗1.  Both the
// symbolic pure-tensor grid and the down-set representation plug in through
// a small algebra adaptor.

#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qmodal/bimodal.hpp"
#include "qmodal/tensor.hpp"

namespace qmodal {

  struct LawLine {
    enum class Status { Pass, Fail, Skip };

    std::string name;
    Status      status = Status::Pass;
    std::string detail;  // case count, witness, or skip reason
  };

  struct Report {
    std::vector<LawLine> lines;

    bool ok() const {
      for (auto const& l : lines) {
        if (l.status == LawLine::Status::Fail) {
          return false;
        }
      }
      return true;
    }
    LawLine const* find(std::string const& name) const {
      for (auto const& l : lines) {
        if (l.name == name) {
          return &l;
        }
      }
      return nullptr;
    }
    void append(Report const& r) {
      lines.insert(lines.end(), r.lines.begin(), r.lines.end());
    }
  };

  // LAW <name> PASS|FAIL|SKIP [detail]
  inline std::ostream& operator<<(std::ostream& os, Report const& r) {
    for (auto const& l : r.lines) {
      os << "LAW " << l.name << ' '
         << (l.status == LawLine::Status::Pass   ? "PASS"
             : l.status == LawLine::Status::Fail ? "FAIL"
                                                 : "SKIP");
      if (!l.detail.empty()) {
        os << ' ' << l.detail;
      }
      os << '\n';
    }
    return os;
  }

  struct PureAlgebra {
    using value = PureTensor;

    BimodalFrame const& F;

    FiniteLattice const& lattice() const {
      return F.frame;
    }
    value mul(value const& a, value const& b) const {
      return pure_mul(F.frame, a, b);
    }
    value inv(value const& a) const {
      return pure_inv(a);
    }
    element support(value const& a) const {
      return pure_support(F, a);
    }
    value embed(element x) const {
      return pure_embed(F.frame, x);
    }
    value bar(bool converse) const {
      return pure_bar(F.frame, Word::alpha(converse));
    }
    std::string describe(value const& a) const {
      return qmodal::describe(F.frame, a);
    }
  };

  struct GradedAlgebra {
    using value = TensorLab::Element;

    TensorLab const& lab;

    FiniteLattice const& lattice() const {
      return lab.lattice();
    }
    value mul(value const& a, value const& b) const {
      return lab.mul(a, b);
    }
    value inv(value const& a) const {
      return lab.inv(a);
    }
    element support(value const& a) const {
      return lab.pre_support(a);
    }
    value embed(element x) const {
      return lab.embed(x);
    }
    value bar(bool converse) const {
      return lab.bar(Word::alpha(converse));
    }
    value join(value const& a, value const& b) const {
      return lab.join(a, b);
    }
    std::string describe(value const& a) const {
      return lab.describe(a);
    }
  };

  namespace detail {

    // Runs `holds` over a case enumeration and records the first failure.
    class LawRun {
     public:
      explicit LawRun(std::string name) : _name(std::move(name)) {}

      template <class Holds, class Witness>
      void check(Holds&& holds, Witness&& witness) {
        ++_cases;
        if (!_witness && !holds()) {
          _witness = witness();
        }
      }
      bool failed() const {
        return _witness.has_value();
      }
      LawLine line() const {
        if (_witness) {
          return {_name, LawLine::Status::Fail, *_witness};
        }
        return {_name, LawLine::Status::Pass, "cases=" + std::to_string(_cases)};
      }

     private:
      std::string                _name;
      std::size_t                _cases = 0;
      std::optional<std::string> _witness;
    };

    template <class A>
    std::string show(A const& alg, char const* var, typename A::value const& v) {
      return std::string(var) + "=" + alg.describe(v);
    }

  }  // namespace detail

  // Items 1-4 of the pre-support lemma.  Item 4 assumes conjugate
  // modalities but is evaluated regardless.
  template <class A>
  Report check_presupport_laws(A const& alg, std::vector<typename A::value> const& samples) {
    using detail::LawRun;
    using detail::show;
    auto const& L = alg.lattice();
    auto        e = alg.embed(L.top());
    auto        name = [&](element x) { return L.name(x); };

    std::vector<element>               supp;
    std::vector<typename A::value>     supp_t, aa;
    for (auto const& a : samples) {
      supp.push_back(alg.support(a));
      supp_t.push_back(alg.embed(supp.back()));
      aa.push_back(alg.mul(a, alg.inv(a)));
    }

    LawRun unit("lemmaA.1.support-of-unit"), below("lemmaA.1.below-unit"), idem("lemmaA.2.support-of-product"),
        stable("lemmaA.3.stable"), a4("lemmaA.4a"), b4("lemmaA.4b"), c4("lemmaA.4c");

    unit.check([&] { return alg.support(e) == L.top(); },
               [&] { return "support(e)=" + name(alg.support(e)); });
    for (std::size_t i = 0; i < samples.size(); ++i) {
      auto const& a = samples[i];
      below.check([&] { return L.leq(supp[i], L.top()); }, [&] { return show(alg, "a", a); });
      a4.check([&] { return L.leq(supp[i], alg.support(aa[i])); },
               [&] { return show(alg, "a", a) + " lhs=" + name(supp[i]) + " rhs=" + name(alg.support(aa[i])); });
      for (std::size_t k = 0; k < samples.size(); ++k) {
        auto const& b = samples[k];
        idem.check(
            [&] { return alg.support(alg.mul(supp_t[i], b)) == L.meet(supp[i], supp[k]); },
            [&] { return show(alg, "a", a) + " " + show(alg, "b", b); });
        stable.check(
            [&] { return alg.support(alg.mul(a, b)) == alg.support(alg.mul(a, supp_t[k])); },
            [&] { return show(alg, "a", a) + " " + show(alg, "b", b); });
        b4.check(
            [&] { return L.leq(alg.support(alg.mul(supp_t[i], b)), alg.support(alg.mul(aa[i], b))); },
            [&] { return show(alg, "a", a) + " " + show(alg, "b", b); });
      }
    }
    for (std::size_t ci = 0; ci < samples.size(); ++ci) {
      for (std::size_t i = 0; i < samples.size(); ++i) {
        auto left  = alg.mul(samples[ci], supp_t[i]);
        auto right = alg.mul(samples[ci], aa[i]);
        for (auto const& b : samples) {
          c4.check([&] { return L.leq(alg.support(alg.mul(left, b)), alg.support(alg.mul(right, b))); },
                   [&] {
                     return show(alg, "c", samples[ci]) + " " + show(alg, "a", samples[i]) + " "
                            + show(alg, "b", b);
                   });
        }
      }
    }
    Report r;
    for (auto const* run : {&unit, &below, &idem, &stable, &a4, &b4, &c4}) {
      r.lines.push_back(run->line());
    }
    if constexpr (requires(A const& x, typename A::value const& v) { x.join(v, v); }) {
      LawRun joins("lemmaA.preserves-joins");
      for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t k = 0; k < samples.size(); ++k) {
          joins.check(
              [&] { return alg.support(alg.join(samples[i], samples[k])) == L.join(supp[i], supp[k]); },
              [&] { return show(alg, "a", samples[i]) + " " + show(alg, "b", samples[k]); });
        }
      }
      r.lines.push_back(joins.line());
    }
    return r;
  }

  struct ClassFlags {
    bool t  = false;
    bool k4 = false;
    bool s5 = false;
  };

  inline ClassFlags modal_class_flags(BimodalFrame const& F) {
    return {static_cast<bool>(check_modal_class(F.frame, F.diamond, F.black, ModalClass::T)),
            static_cast<bool>(check_modal_class(F.frame, F.diamond, F.black, ModalClass::K4)),
            static_cast<bool>(check_modal_class(F.frame, F.diamond, F.black, ModalClass::S5))};
  }

  // ς(a y b) ≤ ς(a z b) and ς(a y⁻ b) ≤ ς(a z⁻ b) for (y, z) = (ςt, tt⁻);
  // then the T, K4 and S5 forms for ᾱ, each only when its class holds.
  template <class A>
  Report check_lemmaB_inequalities(A const& alg, std::vector<typename A::value> const& samples,
                                   ClassFlags flags) {
    using detail::LawRun;
    using detail::show;
    auto const& L = alg.lattice();

    LawRun base("lemmaB.base"), base_inv("lemmaB.base-converse");
    for (auto const& t : samples) {
      auto y = alg.embed(alg.support(t));
      auto z = alg.mul(t, alg.inv(t));
      auto yi = alg.inv(y), zi = alg.inv(z);
      for (auto const& a : samples) {
        auto ay = alg.mul(a, y), az = alg.mul(a, z), ayi = alg.mul(a, yi), azi = alg.mul(a, zi);
        for (auto const& b : samples) {
          auto wit = [&] { return show(alg, "a", a) + " " + show(alg, "t", t) + " " + show(alg, "b", b); };
          base.check([&] { return L.leq(alg.support(alg.mul(ay, b)), alg.support(alg.mul(az, b))); }, wit);
          base_inv.check([&] { return L.leq(alg.support(alg.mul(ayi, b)), alg.support(alg.mul(azi, b))); },
                         wit);
        }
      }
    }
    Report r;
    r.lines.push_back(base.line());
    r.lines.push_back(base_inv.line());

    auto al = alg.bar(false), ali = alg.bar(true);
    auto pairs = [&](std::string const& name, bool enabled, char const* why, auto&& holds) {
      if (!enabled) {
        r.lines.push_back({name, LawLine::Status::Skip, why});
        return;
      }
      LawRun run(name);
      for (auto const& a : samples) {
        for (auto const& b : samples) {
          run.check([&] { return holds(a, b); }, [&] { return show(alg, "a", a) + " " + show(alg, "b", b); });
        }
      }
      r.lines.push_back(run.line());
    };
    auto s = [&](auto const& x) { return alg.support(x); };
    auto m = [&](auto const& x, auto const& y) { return alg.mul(x, y); };
    pairs("cor.T", flags.t, "x <= <>x fails", [&](auto const& a, auto const& b) {
      return L.leq(s(m(a, b)), s(m(m(a, al), b)));
    });
    pairs("cor.T-converse", flags.t, "x <= <*>x fails", [&](auto const& a, auto const& b) {
      return L.leq(s(m(a, b)), s(m(m(a, ali), b)));
    });
    pairs("cor.K4", flags.k4, "<><>x <= <>x fails", [&](auto const& a, auto const& b) {
      return L.leq(s(m(m(m(a, al), al), b)), s(m(m(a, al), b)));
    });
    pairs("cor.K4-converse", flags.k4, "<*><*>x <= <*>x fails", [&](auto const& a, auto const& b) {
      return L.leq(s(m(m(m(a, ali), ali), b)), s(m(m(a, ali), b)));
    });
    pairs("cor.S5", flags.s5, "not an S5 frame", [&](auto const& a, auto const& b) {
      return s(m(m(a, al), b)) == s(m(m(a, ali), b));
    });
    return r;
  }

  // Components meet to bottom, e^(eps) = e, (e^(w))⁻ = e^(w⁻) and
  // e^(w)e^(v) ≤ e^(wv) for all words within the depth.
  inline Report check_tensor_grading(TensorLab const& lab) {
    using detail::LawRun;
    auto   ws = words_up_to(lab.depth());
    LawRun disjoint("grading.disjoint"), unit("grading.unit"), inv("grading.involution"),
        mul("grading.multiplicative");
    unit.check([&] { return lab.top(Word::epsilon()) == lab.unit(); }, [] { return std::string("e^(eps)"); });
    for (Word w : ws) {
      auto ew = lab.top(w);
      inv.check([&] { return lab.inv(ew) == lab.top(w.inv()); }, [&] { return "w=" + to_string(w); });
      for (Word v : ws) {
        auto ev = lab.top(v);
        if (w != v) {
          disjoint.check([&] { return lab.meet(ew, ev).empty(); },
                         [&] { return "w=" + to_string(w) + " v=" + to_string(v); });
        }
        if (w.length + v.length <= lab.depth()) {
          mul.check([&] { return lab.leq(lab.mul(ew, ev), lab.top(concat(w, v))); },
                    [&] { return "w=" + to_string(w) + " v=" + to_string(v); });
        }
      }
    }
    return {{disjoint.line(), unit.line(), inv.line(), mul.line()}};
  }

}  // namespace qmodal
