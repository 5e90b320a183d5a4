#pragma once

// The qmodal command line.  Every check prints one line
//   CHECK <name> PASS|FAIL [detail]   or   LAW <name> PASS|FAIL|SKIP [detail]
// and the exit status is 0 when no FAIL or INVALID line was printed, 1
// otherwise, 2 on a usage or input error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "qmodal/bimodal.hpp"
#include "qmodal/model_doc.hpp"
#include "qmodal/nucleus.hpp"
#include "qmodal/parser.hpp"
#include "qmodal/quantale.hpp"
#include "qmodal/relation.hpp"
#include "qmodal/semantics.hpp"
#include "qmodal/tensor.hpp"
#include "qmodal/tensor_laws.hpp"

namespace qmodal::cli {

  inline void collect_atoms(FormulaPtr const& f, std::set<std::string>& out);

  inline void collect_atoms(ProgramPtr const& p, std::set<std::string>& out) {
    if (!p) {
      return;
    }
    collect_atoms(p->lhs, out);
    collect_atoms(p->rhs, out);
    if (p->test) {
      collect_atoms(p->test, out);
    }
  }

  inline void collect_atoms(FormulaPtr const& f, std::set<std::string>& out) {
    if (!f) {
      return;
    }
    if (f->op == Op::Atom) {
      out.insert(f->name);
    }
    collect_atoms(f->lhs, out);
    collect_atoms(f->rhs, out);
    collect_atoms(f->prog, out);
  }

  inline std::string pass_fail(bool b) {
    return b ? "PASS" : "FAIL";
  }

  struct Status {
    bool failed = false;

    void line(std::ostream& out, std::string const& kind, std::string const& name, bool ok,
              std::string const& detail = "") {
      failed = failed || !ok;
      out << kind << ' ' << name << ' ' << pass_fail(ok);
      if (!detail.empty()) {
        out << ' ' << detail;
      }
      out << '\n';
    }
    void check(std::ostream& out, std::string const& name, CheckResult const& r) {
      line(out, "CHECK", name, static_cast<bool>(r), r ? "" : r.law + " at " + r.witness);
    }
  };

  // ---------------------------------------------------------------------
  // eval / valid

  inline int cmd_eval(std::string const& path, std::string const& text, std::ostream& out, bool validity) {
    auto built   = load_model(path);
    auto formula = parse_formula(text, built.mode);
    return std::visit(
        [&](auto const& m) {
          auto v  = evaluate(m, formula, built.mode);
          auto ws = worlds_of(m, v);
          if (!validity) {
            out << format_worlds(world_names(m), ws) << '\n';
            return 0;
          }
          if (v == m.quantale.unit()) {
            out << "VALID\n";
            return 0;
          }
          std::size_t w = 0;
          while (std::find(ws.begin(), ws.end(), w) != ws.end()) {
            ++w;
          }
          out << "INVALID world " << world_names(m)[w] << '\n';
          return 1;
        },
        built.model);
  }

  // ---------------------------------------------------------------------
  // axioms

  // Named elements of the model closed under the operations, up to a cap.
  template <class Q>
  std::vector<typename Q::element> sample_elements(PointedModel<Q> const& m, std::size_t cap) {
    auto const& q = m.quantale;
    using E       = typename Q::element;
    std::vector<E> s{q.bottom(), q.unit(), q.top(), m.alpha, q.inv(m.alpha)};
    for (auto const& [_, v] : m.atoms) {
      s.push_back(v);
    }
    for (auto const& [_, v] : m.programs) {
      s.push_back(v);
    }
    std::set<E> seen(s.begin(), s.end());
    s.assign(seen.begin(), seen.end());
    for (std::size_t i = 0; i < s.size() && s.size() < cap; ++i) {
      for (std::size_t j = 0; j <= i && s.size() < cap; ++j) {
        for (E x : {q.mul(s[i], s[j]), q.mul(s[j], s[i]), q.join(s[i], s[j]), q.support(s[i])}) {
          if (seen.insert(x).second) {
            s.push_back(x);
          }
        }
      }
    }
    return s;
  }

  template <class Q>
  std::vector<typename Q::element> check_elements(PointedModel<Q> const& m, std::string& how) {
    std::vector<typename Q::element> all;
    if constexpr (std::is_same_v<Q, RelationQuantale>) {
      if (m.quantale.worlds() <= 3) {
        all = m.quantale.elements();
      }
    } else {
      if (m.quantale.groupoid().arrow_count() <= 9) {
        all = m.quantale.elements();
      }
    }
    if (!all.empty()) {
      how = "elements=" + std::to_string(all.size());
      return all;
    }
    all = sample_elements(m, 256);
    how = "sampled=" + std::to_string(all.size());
    return all;
  }

  inline int cmd_axioms(std::string const& path, std::ostream& out) {
    auto   built = load_model(path);
    Status st;
    std::visit(
        [&](auto const& m) {
          auto const& q = m.quantale;
          std::string how;
          auto        xs = check_elements(m, how);
          st.check(out, "support", check_support_laws(q, xs, xs));
          out << "# " << how << '\n';
          try {
            auto loc = supports_locale(q);
            st.line(out, "CHECK", "support-locale", true, "size=" + std::to_string(loc.members.size()));
          } catch (Error const& e) {
            st.line(out, "CHECK", "support-locale", false, e.what());
          }
          try {
            auto F = diamonds_from_point(q, m.alpha);
            st.check(out, "conjugacy", check_conjugacy(F.frame, F.diamond, F.black));
            st.check(out, "diamond.join-preserving", check_join_preserving(F.frame, F.diamond));
            st.check(out, "black.join-preserving", check_join_preserving(F.frame, F.black));
          } catch (Error const& e) {
            st.line(out, "CHECK", "conjugacy", false, e.what());
          }
          for (auto const& [name, v] : m.atoms) {
            st.line(out, "CHECK", "atom." + name + ".below-unit", q.leq(v, q.unit()));
          }
          auto f = check_point_properties(q, m.alpha);
          out << "POINT reflexive=" << f.reflexive << " transitive=" << f.transitive
              << " symmetric=" << f.symmetric << " total_support=" << f.total_support << '\n';
        },
        built.model);
    return st.failed ? 1 : 0;
  }

  // ---------------------------------------------------------------------
  // quotient

  struct SystemFlags {
    bool reflexive = false, transitive = false, symmetric = false;
  };

  inline SystemFlags system_flags(std::string const& s) {
    if (s == "K") return {};
    if (s == "T") return {true, false, false};
    if (s == "K4") return {false, true, false};
    if (s == "S4") return {true, true, false};
    if (s == "S5") return {true, true, true};
    throw CLI::ValidationError("--system", "expected K, T, K4, S4 or S5");
  }

  // e ≤ α, αα ≤ α, α⁻ ≤ α as generators of the least nucleus on the table form.
  inline int cmd_quotient(std::string const& path, std::string const& system, std::ostream& out) {
    auto        built = load_model(path);
    SystemFlags want  = system_flags(system);
    Quantale    q;
    element     alpha = 0;
    if (auto const* rm = std::get_if<RelationModel>(&built.model)) {
      if (rm->quantale.worlds() > 3) {
        throw Error(Errc::TooLarge, "quotients need at most 3 worlds");
      }
      q     = tabulate(rm->quantale);
      alpha = static_cast<element>(rm->alpha.bits);
    } else {
      auto const& gm = std::get<GroupoidModel>(built.model);
      if (gm.quantale.groupoid().arrow_count() > 9) {
        throw Error(Errc::TooLarge, "quotients need at most 9 arrows");
      }
      q     = tabulate(gm.quantale);
      alpha = static_cast<element>(gm.alpha.bits);
    }
    GeneratingRelation R;
    if (want.reflexive) {
      R.emplace_back(q.unit(), alpha);
    }
    if (want.transitive) {
      R.emplace_back(q.mul(alpha, alpha), alpha);
    }
    if (want.symmetric) {
      R.emplace_back(q.inv(alpha), alpha);
    }
    auto   j  = least_nucleus(q, R);
    auto   Qj = quotient(q, j);
    auto   a  = Qj.project[alpha];
    auto   f  = check_point_properties(Qj.quantale, a);
    Status st;
    out << "QUOTIENT system=" << system << " size=" << Qj.quantale.size() << " of " << q.size() << '\n';
    st.check(out, "nucleus", is_nucleus(q, j));
    st.check(out, "quotient.support", check_support_laws(Qj.quantale));
    if (want.reflexive) {
      st.line(out, "CHECK", "quotient.reflexive", f.reflexive);
    }
    if (want.transitive) {
      st.line(out, "CHECK", "quotient.transitive", f.transitive);
    }
    if (want.symmetric) {
      st.line(out, "CHECK", "quotient.symmetric", f.symmetric);
    }
    out << "POINT reflexive=" << f.reflexive << " transitive=" << f.transitive << " symmetric=" << f.symmetric
        << " total_support=" << f.total_support << '\n';
    return st.failed ? 1 : 0;
  }

  // ---------------------------------------------------------------------
  // tensor-verify

  inline int cmd_tensor_verify(std::string const& path, std::size_t depth, std::ostream& out) {
    auto doc = parse_frame(read_file(path));
    std::vector<std::pair<Endomap, Endomap>> pairs;
    if (doc.diamond) {
      pairs.emplace_back(*doc.diamond, *doc.black);
    } else {
      pairs = enumerate_conjugate_pairs(doc.lattice);
    }
    auto   grid = pure_grid(doc.lattice, depth);
    Status st;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      BimodalFrame F{doc.lattice, pairs[i].first, pairs[i].second};
      out << "PAIR " << i << " diamond=";
      for (std::size_t x = 0; x < F.diamond.size(); ++x) {
        out << (x ? "," : "") << doc.lattice.name(F.diamond[x]);
      }
      out << " black=";
      for (std::size_t x = 0; x < F.black.size(); ++x) {
        out << (x ? "," : "") << doc.lattice.name(F.black[x]);
      }
      out << '\n';
      st.check(out, "conjugacy", check_conjugacy(F.frame, F.diamond, F.black));
      PureAlgebra alg{F};
      Report      r = check_presupport_laws(alg, grid);
      r.append(check_lemmaB_inequalities(alg, grid, modal_class_flags(F)));
      if (st.failed) {
        // grading requires a validated frame
        out << r;
        continue;
      }
      r.append(check_tensor_grading(TensorLab(F, depth)));
      out << r;
      st.failed = st.failed || !r.ok();
    }
    out << "# pairs=" << pairs.size() << " grid=" << grid.size() << '\n';
    return st.failed ? 1 : 0;
  }

  // ---------------------------------------------------------------------
  // sweep

  inline bool has_flags(RelationQuantale const& q, Relation a, SystemFlags want) {
    auto f = check_point_properties(q, a);
    return (!want.reflexive || f.reflexive) && (!want.transitive || f.transitive)
           && (!want.symmetric || f.symmetric);
  }

  // Every α with the system's properties and every valuation of the atoms.
  inline int cmd_sweep(std::size_t n, std::string const& system, std::string const& text, std::string const& mode,
                       std::ostream& out) {
    if (n == 0 || n > 4) {
      throw CLI::ValidationError("--worlds", "expected 1 to 4");
    }
    auto m = mode_from_name(mode);
    if (!m) {
      throw CLI::ValidationError("--mode", "unknown mode " + mode);
    }
    SystemFlags           want    = system_flags(system);
    auto                  formula = parse_formula(text, *m);
    std::set<std::string> atoms;
    collect_atoms(formula, atoms);
    std::vector<std::string> names(atoms.begin(), atoms.end());
    if (names.size() * n > 16) {
      throw CLI::ValidationError("--scheme", "too many atoms for this many worlds");
    }
    RelationQuantale q(n);
    std::uint64_t    rels = std::uint64_t{1} << (n * n);
    std::uint64_t    vals = std::uint64_t{1} << (n * names.size());
    std::size_t      models = 0, frames = 0;
    for (std::uint64_t r = 0; r < rels; ++r) {
      Relation a{r};
      if (!has_flags(q, a, want)) {
        continue;
      }
      if (*m == Mode::CTL && !(q.support(a) == q.unit())) {
        continue;
      }
      ++frames;
      for (std::uint64_t v = 0; v < vals; ++v) {
        RelationModel M{q, a, {}, {}};
        for (std::size_t i = 0; i < names.size(); ++i) {
          M.atoms[names[i]] = q.diagonal_of((v >> (i * n)) & ((std::uint64_t{1} << n) - 1));
        }
        ++models;
        auto val = evaluate(M, formula, *m);
        if (!(val == q.unit())) {
          auto ws = worlds_of(M, val);
          std::size_t w = 0;
          while (std::find(ws.begin(), ws.end(), w) != ws.end()) {
            ++w;
          }
          out << "SWEEP worlds=" << n << " system=" << system << " frames=" << frames << " models=" << models
              << '\n';
          out << "INVALID alpha=" << q.describe(a);
          for (auto const& [atom, x] : M.atoms) {
            out << ' ' << atom << '=' << q.describe_worlds(q.domain_mask(x));
          }
          out << " world " << q.world_names()[w] << '\n';
          return 1;
        }
      }
    }
    out << "SWEEP worlds=" << n << " system=" << system << " frames=" << frames << " models=" << models << '\n';
    out << "VALID\n";
    return 0;
  }

  // ---------------------------------------------------------------------

  inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantale-valued modal logic workbench", "qmodal"};
    app.require_subcommand(1);

    std::string model, formula, system = "S5", frame, mode = "classical";
    std::size_t depth = 2, worlds = 3;

    auto* eval = app.add_subcommand("eval", "print the worlds satisfying a formula");
    eval->add_option("model", model)->required();
    eval->add_option("formula", formula)->required();

    auto* valid = app.add_subcommand("valid", "check that a formula holds at every world");
    valid->add_option("model", model)->required();
    valid->add_option("formula", formula)->required();

    auto* axioms = app.add_subcommand("axioms", "support, conjugacy and point checks");
    axioms->add_option("model", model)->required();

    auto* quot = app.add_subcommand("quotient", "quotient forcing the point properties of a system");
    quot->add_option("model", model)->required();
    quot->add_option("--system", system)->required()->check(CLI::IsMember({"K", "T", "K4", "S4", "S5"}));

    auto* tensor = app.add_subcommand("tensor-verify", "tensor lab law suites on a frame");
    tensor->add_option("--frame", frame)->required();
    tensor->add_option("--depth", depth)->check(CLI::Range(0, 6));

    auto* sweep = app.add_subcommand("sweep", "exhaustive soundness sweep over small relational models");
    sweep->add_option("--worlds", worlds)->check(CLI::Range(1, 4));
    sweep->add_option("--system", system)->check(CLI::IsMember({"K", "T", "K4", "S4", "S5"}));
    sweep->add_option("--scheme", formula)->required();
    sweep->add_option("--mode", mode);

    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return 0;
    } catch (CLI::ParseError const& e) {
      err << "usage error: " << e.what() << '\n' << app.help();
      return 2;
    }

    try {
      if (*eval) {
        return cmd_eval(model, formula, out, false);
      }
      if (*valid) {
        return cmd_eval(model, formula, out, true);
      }
      if (*axioms) {
        return cmd_axioms(model, out);
      }
      if (*quot) {
        return cmd_quotient(model, system, out);
      }
      if (*tensor) {
        return cmd_tensor_verify(frame, depth, out);
      }
      if (*sweep) {
        return cmd_sweep(worlds, system, formula, mode, out);
      }
    } catch (CLI::ParseError const& e) {
      err << "usage error: " << e.what() << '\n';
      return 2;
    } catch (Error const& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    } catch (std::exception const& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
    return 2;
  }

}  // namespace qmodal::cli
