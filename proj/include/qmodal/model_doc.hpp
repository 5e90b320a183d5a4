#pragma once

// Plain-text model and frame documents.
//
// A model is a list of sections, one keyword per header line:
//
//   MODE ctl                 classical | intuitionistic | ctl | pdl
//   WORLDS 0 1
//   REL alpha                followed by one "x y" pair per line
//   VAL p 1                  the worlds where p holds, on one line
//
// A groupoid model replaces WORLDS by OBJECTS o1 o2 ..., then ARROWS (lines
// "name dom cod"), INV (lines "g h") and COMP (lines "g h = k"); REL lines
// then list arrow names and VAL lists objects.  "#" starts a comment.  The
// relation named alpha is the point; every other REL is a PDL program.
//
// A frame is ELEMENTS a b ..., ORDER (lines "x y" for x ≤ y), and
// optionally DIAMOND and BLACK (lines "x y" for ◇x = y).

#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "qmodal/bimodal.hpp"
#include "qmodal/error.hpp"
#include "qmodal/groupoid.hpp"
#include "qmodal/lattice.hpp"
#include "qmodal/parser.hpp"
#include "qmodal/relation.hpp"
#include "qmodal/semantics.hpp"

namespace qmodal {

  struct DocToken {
    std::string text;
    std::size_t line = 0;
    std::size_t col  = 0;
  };

  struct ModelDocument {
    Mode                                             mode = Mode::Classical;
    std::vector<std::string>                         worlds;  // or objects
    std::map<std::string, std::vector<std::vector<DocToken>>> relations;
    std::map<std::string, std::vector<DocToken>>        valuations;

    struct GroupoidSection {
      std::vector<std::vector<DocToken>> arrows;  // name dom cod
      std::vector<std::vector<DocToken>> inverses;
      std::vector<std::vector<DocToken>> comp;  // g h k
    };
    std::optional<GroupoidSection> groupoid;
  };

  namespace detail {

    // Lines of whitespace-separated tokens, comments dropped, blank lines
    // skipped.
    inline std::vector<std::vector<DocToken>> tokenize(std::string_view text) {
      std::vector<std::vector<DocToken>> out;
      std::size_t                     line = 1, col = 1;
      std::vector<DocToken>              cur;
      DocToken                           tok;
      bool                            comment = false;
      auto flush_token = [&] {
        if (!tok.text.empty()) {
          cur.push_back(tok);
          tok.text.clear();
        }
      };
      for (char c : text) {
        if (c == '\n') {
          flush_token();
          if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
          }
          comment = false;
          ++line;
          col = 1;
          continue;
        }
        if (c == '#') {
          comment = true;
        }
        if (!comment) {
          if (c == ' ' || c == '\t' || c == '\r') {
            flush_token();
          } else {
            if (tok.text.empty()) {
              tok.line = line;
              tok.col  = col;
            }
            tok.text += c;
          }
        }
        ++col;
      }
      flush_token();
      if (!cur.empty()) {
        out.push_back(std::move(cur));
      }
      return out;
    }

    [[noreturn]] inline void syntax(DocToken const& t, std::set<std::string> expected) {
      throw ParseError(t.line, t.col, std::move(expected), t.text);
    }

    [[noreturn]] inline void syntax_eol(std::vector<DocToken> const& line, std::set<std::string> expected) {
      DocToken const& last = line.back();
      throw ParseError(last.line, last.col + last.text.size(), std::move(expected), "end of line");
    }

    inline void arity(std::vector<DocToken> const& line, std::size_t n, std::string const& what) {
      if (line.size() < n) {
        syntax_eol(line, {what});
      }
      if (line.size() > n) {
        syntax(line[n], {"end of line"});
      }
    }

    inline bool is_keyword(std::string const& s) {
      static std::set<std::string> const kw{"MODE", "WORLDS", "REL",  "VAL",      "OBJECTS",
                                            "ARROWS", "INV",  "COMP", "ELEMENTS", "ORDER",
                                            "DIAMOND", "BLACK"};
      return kw.count(s) != 0;
    }

    inline std::vector<std::string> names_of(std::vector<DocToken> const& line, std::size_t from) {
      std::vector<std::string> v;
      for (std::size_t i = from; i < line.size(); ++i) {
        if (is_keyword(line[i].text)) {
          syntax(line[i], {"name"});
        }
        v.push_back(line[i].text);
      }
      return v;
    }

  }  // namespace detail

  inline ModelDocument parse_model(std::string_view text) {
    using detail::arity;
    using detail::syntax;
    ModelDocument doc;
    bool          have_mode = false, have_worlds = false;
    std::string   section;
    std::string   rel;
    for (auto const& line : detail::tokenize(text)) {
      auto const& head = line.front();
      if (detail::is_keyword(head.text)) {
        section = head.text;
        if (section == "MODE") {
          arity(line, 2, "mode");
          auto m = mode_from_name(line[1].text);
          if (!m) {
            syntax(line[1], {"classical", "intuitionistic", "ctl", "pdl"});
          }
          if (have_mode) {
            syntax(head, {"a single MODE line"});
          }
          doc.mode  = *m;
          have_mode = true;
        } else if (section == "WORLDS" || section == "OBJECTS") {
          if (have_worlds) {
            syntax(head, {"a single WORLDS or OBJECTS line"});
          }
          doc.worlds  = detail::names_of(line, 1);
          have_worlds = true;
          if (section == "OBJECTS") {
            doc.groupoid.emplace();
          }
        } else if (section == "REL") {
          arity(line, 2, "relation name");
          rel = line[1].text;
          if (doc.relations.count(rel)) {
            syntax(line[1], {"a new relation name"});
          }
          doc.relations[rel];
        } else if (section == "VAL") {
          if (line.size() < 2) {
            detail::syntax_eol(line, {"atom name"});
          }
          if (doc.valuations.count(line[1].text)) {
            syntax(line[1], {"a new atom name"});
          }
          doc.valuations[line[1].text] = std::vector<DocToken>(line.begin() + 2, line.end());
          section.clear();
        } else if (section == "ARROWS" || section == "INV" || section == "COMP") {
          arity(line, 1, "end of line");
          if (!doc.groupoid) {
            syntax(head, {"OBJECTS before groupoid sections"});
          }
        } else {
          syntax(head, {"MODE", "WORLDS", "REL", "VAL", "OBJECTS", "ARROWS", "INV", "COMP"});
        }
        continue;
      }
      if (section == "REL") {
        if (!doc.groupoid) {
          arity(line, 2, "world");
        }
        doc.relations[rel].push_back(line);
      } else if (section == "ARROWS") {
        arity(line, 3, "object");
        doc.groupoid->arrows.push_back(line);
      } else if (section == "INV") {
        arity(line, 2, "arrow");
        doc.groupoid->inverses.push_back(line);
      } else if (section == "COMP") {
        arity(line, 4, "arrow");
        if (line[2].text != "=") {
          syntax(line[2], {"="});
        }
        doc.groupoid->comp.push_back({line[0], line[1], line[3]});
      } else {
        syntax(head, {"MODE", "WORLDS", "REL", "VAL", "OBJECTS"});
      }
    }
    if (!have_worlds) {
      throw ParseError(1, 1, {"WORLDS or OBJECTS"}, "end of input");
    }
    return doc;
  }

  using RelationModel = PointedModel<RelationQuantale>;
  using GroupoidModel = PointedModel<GroupoidQuantale>;

  struct BuiltModel {
    Mode                                       mode = Mode::Classical;
    std::variant<RelationModel, GroupoidModel> model;

    bool is_groupoid() const noexcept {
      return model.index() == 1;
    }
  };

  namespace detail {

    inline std::size_t lookup(std::vector<std::string> const& names, DocToken const& t, Errc code,
                              std::string const& what) {
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == t.text) {
          return i;
        }
      }
      throw Error(code, "line " + std::to_string(t.line) + ", column " + std::to_string(t.col) + ": " + what
                            + " " + t.text + " is not declared");
    }

    inline void require_total(Mode mode, auto const& q, auto const& alpha) {
      if (mode == Mode::CTL && !(q.support(alpha) == q.unit())) {
        throw Error(Errc::TimeEnds, "alpha leaves a world without successors");
      }
    }

    inline RelationModel build_relational(ModelDocument const& doc) {
      auto const&      W = doc.worlds;
      RelationQuantale q(W);
      RelationModel    m{q, q.bottom(), {}, {}};
      for (auto const& [name, pairs] : doc.relations) {
        Relation r{};
        for (auto const& p : pairs) {
          auto x = lookup(W, p[0], Errc::UndeclaredWorld, "world");
          auto y = lookup(W, p[1], Errc::UndeclaredWorld, "world");
          r.bits |= q.bit(x, y);
        }
        if (name == "alpha") {
          m.alpha = r;
        } else {
          m.programs[name] = r;
        }
      }
      for (auto const& [atom, ws] : doc.valuations) {
        std::uint64_t mask = 0;
        for (auto const& w : ws) {
          mask |= std::uint64_t{1} << lookup(W, w, Errc::UndeclaredWorld, "world");
        }
        m.atoms[atom] = q.diagonal_of(mask);
      }
      return m;
    }

    inline GroupoidModel build_groupoid(ModelDocument const& doc) {
      auto const&              O = doc.worlds;
      auto const&              S = *doc.groupoid;
      std::vector<Arrow>       arrows;
      std::vector<std::string> names;
      for (auto const& a : S.arrows) {
        for (auto const& n : names) {
          if (n == a[0].text) {
            throw Error(Errc::InvalidGroupoid, "arrow " + n + " declared twice");
          }
        }
        names.push_back(a[0].text);
        arrows.push_back({a[0].text, lookup(O, a[1], Errc::UndeclaredWorld, "object"),
                          lookup(O, a[2], Errc::UndeclaredWorld, "object")});
      }
      auto arrow = [&](DocToken const& t) { return lookup(names, t, Errc::InvalidGroupoid, "arrow"); };
      std::vector<std::pair<std::size_t, std::size_t>>               inv;
      std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> comp;
      for (auto const& l : S.inverses) {
        inv.emplace_back(arrow(l[0]), arrow(l[1]));
      }
      for (auto const& l : S.comp) {
        comp.emplace_back(arrow(l[0]), arrow(l[1]), arrow(l[2]));
      }
      GroupoidQuantale q(make_groupoid(O, std::move(arrows), inv, comp));
      GroupoidModel    m{q, q.bottom(), {}, {}};
      for (auto const& [name, lines] : doc.relations) {
        ArrowSet s{};
        for (auto const& l : lines) {
          for (auto const& t : l) {
            s = q.join(s, q.singleton(arrow(t)));
          }
        }
        if (name == "alpha") {
          m.alpha = s;
        } else {
          m.programs[name] = s;
        }
      }
      auto const& G = q.groupoid();
      for (auto const& [atom, os] : doc.valuations) {
        ArrowSet s{};
        for (auto const& o : os) {
          s = q.join(s, q.singleton(G.identity(lookup(O, o, Errc::UndeclaredWorld, "object"))));
        }
        m.atoms[atom] = s;
      }
      return m;
    }

  }  // namespace detail

  inline BuiltModel build(ModelDocument const& doc) {
    if (doc.groupoid) {
      auto m = detail::build_groupoid(doc);
      detail::require_total(doc.mode, m.quantale, m.alpha);
      return {doc.mode, std::move(m)};
    }
    auto m = detail::build_relational(doc);
    detail::require_total(doc.mode, m.quantale, m.alpha);
    return {doc.mode, std::move(m)};
  }

  inline std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  inline BuiltModel load_model(std::string const& path) {
    return build(parse_model(read_file(path)));
  }

  // Worlds (or objects) contained in a value below e.
  inline std::vector<std::size_t> worlds_of(RelationModel const& m, Relation v) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m.quantale.worlds(); ++i) {
      if (m.quantale.contains(v, i, i)) {
        out.push_back(i);
      }
    }
    return out;
  }
  inline std::vector<std::size_t> worlds_of(GroupoidModel const& m, ArrowSet v) {
    std::vector<std::size_t> out;
    auto const&              G = m.quantale.groupoid();
    for (std::size_t o = 0; o < G.objects().size(); ++o) {
      if (v.bits >> G.identity(o) & 1u) {
        out.push_back(o);
      }
    }
    return out;
  }

  inline std::vector<std::string> const& world_names(RelationModel const& m) {
    return m.quantale.world_names();
  }
  inline std::vector<std::string> const& world_names(GroupoidModel const& m) {
    return m.quantale.groupoid().objects();
  }

  inline std::string format_worlds(std::vector<std::string> const& names, std::vector<std::size_t> const& ws) {
    std::string s = "{";
    for (std::size_t i = 0; i < ws.size(); ++i) {
      s += (i ? "," : "") + names[ws[i]];
    }
    return s + "}";
  }

  // A frame document, read into a lattice and an optional modality pair.
  struct FrameDocument {
    FiniteLattice          lattice;
    std::optional<Endomap> diamond;
    std::optional<Endomap> black;
  };

  inline FrameDocument parse_frame(std::string_view text) {
    using detail::arity;
    using detail::syntax;
    std::vector<std::string>                              names;
    std::vector<std::pair<std::size_t, std::size_t>>      order;
    std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> maps;
    std::map<std::string, DocToken>                          headers;
    std::string                                           section;
    auto idx = [&](DocToken const& t) {
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == t.text) {
          return i;
        }
      }
      syntax(t, {"declared element"});
    };
    for (auto const& line : detail::tokenize(text)) {
      auto const& head = line.front();
      if (head.text == "ELEMENTS") {
        if (!names.empty()) {
          syntax(head, {"a single ELEMENTS line"});
        }
        names = detail::names_of(line, 1);
        if (names.empty()) {
          detail::syntax_eol(line, {"element name"});
        }
        section.clear();
        continue;
      }
      if (head.text == "ORDER" || head.text == "DIAMOND" || head.text == "BLACK") {
        arity(line, 1, "end of line");
        if (names.empty()) {
          syntax(head, {"ELEMENTS"});
        }
        section = head.text;
        if (section != "ORDER") {
          if (headers.count(section)) {
            syntax(head, {"a single " + section + " section"});
          }
          headers[section] = head;
          maps[section];
        }
        continue;
      }
      if (section.empty()) {
        syntax(head, {"ELEMENTS", "ORDER", "DIAMOND", "BLACK"});
      }
      arity(line, 2, "element");
      auto p = std::pair{idx(line[0]), idx(line[1])};
      if (section == "ORDER") {
        order.push_back(p);
      } else {
        for (auto [x, y] : maps[section]) {
          if (x == p.first) {
            syntax(line[0], {"an element not yet mapped"});
          }
        }
        maps[section].push_back(p);
      }
    }
    if (names.empty()) {
      throw ParseError(1, 1, {"ELEMENTS"}, "end of input");
    }
    std::size_t            n = names.size();
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      le[i][i] = true;
    }
    for (auto [x, y] : order) {
      le[x][y] = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (le[i][k] && le[k][j]) {
            le[i][j] = true;
          }
        }
      }
    }
    FrameDocument doc{FiniteLattice::from_order(names, [&](element a, element b) { return le[a][b]; }), {}, {}};
    if (!doc.lattice.is_frame()) {
      throw Error(Errc::NotAFrame, "the declared order is not distributive");
    }
    if (maps.count("DIAMOND") != maps.count("BLACK")) {
      auto const& t = headers.begin()->second;
      syntax(t, {"both DIAMOND and BLACK, or neither"});
    }
    for (auto const& [sec, pairs] : maps) {
      if (pairs.size() != n) {
        syntax(headers[sec], {"a value for every element"});
      }
      Endomap f(n);
      for (auto [x, y] : pairs) {
        f[x] = static_cast<element>(y);
      }
      (sec == "DIAMOND" ? doc.diamond : doc.black) = std::move(f);
    }
    return doc;
  }

}  // namespace qmodal
