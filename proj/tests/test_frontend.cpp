#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/kripke_oracle.hpp"
#include "qmodal/cli.hpp"
#include "qmodal/model_doc.hpp"

using namespace qmodal;

namespace {

  std::string const models = QMODAL_MODELS_DIR;

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

  struct Run {
    int         status;
    std::string out;
    std::string err;
  };

  Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int                s = cli::run(std::move(args), out, err);
    return {s, out.str(), err.str()};
  }

  std::string temp_file(std::string const& name, std::string const& text) {
    auto dir = std::filesystem::temp_directory_path() / "qmodal_frontend";
    std::filesystem::create_directories(dir);
    auto p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::size_t count_lines(std::string const& s, std::string const& needle) {
    std::size_t n = 0;
    for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) {
      ++n;
    }
    return n;
  }

}  // namespace

TEST_CASE("model documents parse", "[frontend]") {
  auto doc = parse_model(R"(
# comment line
MODE pdl
WORLDS u v w   # trailing comment
REL alpha
u v
REL a
v w
w w
VAL p w
VAL q
)");
  CHECK(doc.mode == Mode::PDL);
  CHECK(doc.worlds == std::vector<std::string>{"u", "v", "w"});
  CHECK(doc.relations.size() == 2);
  CHECK(doc.relations.at("a").size() == 2);
  CHECK(doc.valuations.at("q").empty());
  CHECK_FALSE(doc.groupoid);

  auto b = build(doc);
  REQUIRE_FALSE(b.is_groupoid());
  auto const& m = std::get<RelationModel>(b.model);
  CHECK(m.alpha.bits == m.quantale.bit(0, 1));
  CHECK(m.programs.at("a").bits == (m.quantale.bit(1, 2) | m.quantale.bit(2, 2)));
  CHECK(m.atoms.at("p") == m.quantale.diagonal_of(4));
  CHECK(m.atoms.at("q") == m.quantale.bottom());
}

TEST_CASE("the two-world ctl model", "[frontend]") {
  auto b = load_model(models + "/m.model");
  CHECK(b.mode == Mode::CTL);
  auto const& m = std::get<RelationModel>(b.model);
  auto        v = evaluate(m, parse_formula("EG p", Mode::CTL), Mode::CTL);
  CHECK(format_worlds(world_names(m), worlds_of(m, v)) == "{1}");
  CHECK(format_worlds(world_names(m), worlds_of(m, evaluate(m, parse_formula("EF p", Mode::CTL), Mode::CTL)))
        == "{0,1}");
}

TEST_CASE("model document errors", "[frontend]") {
  SECTION("undeclared world") {
    auto doc = parse_model("WORLDS 0 1\nREL alpha\n0 2\n");
    try {
      build(doc);
      FAIL("built");
    } catch (Error const& e) {
      CHECK(e.code() == Errc::UndeclaredWorld);
      CHECK(std::string(e.what()).find("line 3, column 3") != std::string::npos);
    }
    CHECK(code_of([] { build(parse_model("WORLDS 0 1\nVAL p 0 7\n")); }) == Errc::UndeclaredWorld);
  }
  SECTION("time ends in ctl mode") {
    CHECK(code_of([] { build(parse_model("MODE ctl\nWORLDS 0 1\nREL alpha\n0 1\n")); }) == Errc::TimeEnds);
    // the same document is fine outside ctl mode
    CHECK_NOTHROW(build(parse_model("MODE classical\nWORLDS 0 1\nREL alpha\n0 1\n")));
  }
  SECTION("syntax errors carry positions") {
    auto at = [](std::string const& text) {
      try {
        parse_model(text);
      } catch (ParseError const& e) {
        return std::pair{e.line(), e.column()};
      }
      return std::pair<std::size_t, std::size_t>{0, 0};
    };
    CHECK(at("WORLDS 0 1\nREL alpha\n0 1 1\n") == std::pair<std::size_t, std::size_t>{3, 5});
    CHECK(at("MODE modal\nWORLDS 0\n") == std::pair<std::size_t, std::size_t>{1, 6});
    CHECK(at("WORLDS 0\nbogus\n") == std::pair<std::size_t, std::size_t>{2, 1});
    CHECK(at("WORLDS 0\nREL\n") == std::pair<std::size_t, std::size_t>{2, 4});
    CHECK(at("MODE ctl\n") == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(at("WORLDS 0\nWORLDS 1\n") == std::pair<std::size_t, std::size_t>{2, 1});
    CHECK(at("WORLDS 0\nREL a\nREL a\n") == std::pair<std::size_t, std::size_t>{3, 5});
    CHECK(at("WORLDS 0\nARROWS\n") == std::pair<std::size_t, std::size_t>{2, 1});
    CHECK(at("OBJECTS x\nCOMP\nid id id\n") == std::pair<std::size_t, std::size_t>{3, 9});
    CHECK(at("OBJECTS x\nCOMP\nid id - id\n") == std::pair<std::size_t, std::size_t>{3, 7});
    CHECK(code_of([] { parse_model("WORLDS REL\n"); }) == Errc::SyntaxError);
  }
  SECTION("invalid groupoids") {
    // g·g must be defined in a one-object groupoid
    std::string broken = "OBJECTS x\nARROWS\nid x x\ng x x\nINV\nid id\ng g\nCOMP\nid id = id\nid g = g\ng id = g\n";
    CHECK(code_of([&] { build(parse_model(broken)); }) == Errc::InvalidGroupoid);
    CHECK(code_of([] { build(parse_model("OBJECTS x\nARROWS\nid x x\nINV\nid h\n")); }) == Errc::InvalidGroupoid);
    CHECK(code_of([] { build(parse_model("OBJECTS x\nARROWS\nid x y\n")); }) == Errc::UndeclaredWorld);
  }
}

TEST_CASE("groupoid models", "[frontend]") {
  auto b = load_model(models + "/z2.model");
  REQUIRE(b.is_groupoid());
  auto const& m = std::get<GroupoidModel>(b.model);
  CHECK(m.quantale.groupoid().arrow_count() == 2);
  CHECK(m.quantale.describe(m.alpha) == "{g}");
  auto v = evaluate(m, parse_formula("<>p", Mode::Classical), Mode::Classical);
  CHECK(format_worlds(world_names(m), worlds_of(m, v)) == "{x}");

  // pair groupoid on two objects agrees with the relational model of the
  // same relation
  std::string pairs = R"(OBJECTS 0 1
ARROWS
e0 0 0
e1 1 1
s 0 1
t 1 0
INV
e0 e0
e1 e1
s t
COMP
e0 e0 = e0
e1 e1 = e1
e0 s = s
s e1 = s
e1 t = t
t e0 = t
s t = e0
t s = e1
REL alpha
s
e1
VAL p 1
)";
  auto g = build(parse_model(pairs));
  auto r = load_model(models + "/m.model");
  auto const& gm = std::get<GroupoidModel>(g.model);
  auto const& rm = std::get<RelationModel>(r.model);
  for (auto const* text : {"<>p", "[]p", "<><>~p", "p \\/ <>~p", "[]<>p"}) {
    auto f = parse_formula(text, Mode::Classical);
    CHECK(worlds_of(gm, evaluate(gm, f, Mode::Classical)) == worlds_of(rm, evaluate(rm, f, Mode::Classical)));
  }
}

TEST_CASE("frame documents", "[frontend]") {
  auto d = parse_frame(read_file(models + "/diamond.frame"));
  CHECK(d.lattice == lattices::diamond());
  CHECK_FALSE(d.diamond);
  auto e = parse_frame(read_file(models + "/edge.frame"));
  REQUIRE(e.diamond);
  CHECK(*e.diamond == Endomap{0, 0, 1, 1});
  CHECK(*e.black == Endomap{0, 2, 0, 2});
  CHECK(parse_frame(read_file(models + "/chain3.frame")).lattice == lattices::chain3());
  CHECK(parse_frame(read_file(models + "/two.frame")).lattice == lattices::chain(2));

  CHECK(code_of([] { parse_frame("ELEMENTS 0 a b c 1\nORDER\n0 a\n0 b\n0 c\na 1\nb 1\nc 1\n"); })
        == Errc::NotAFrame);
  CHECK(code_of([] { parse_frame("ELEMENTS 0 1\nORDER\n0 2\n"); }) == Errc::SyntaxError);
  CHECK(code_of([] { parse_frame("ELEMENTS 0 1\nORDER\n0 1\nDIAMOND\n0 0\n1 1\n"); }) == Errc::SyntaxError);
  CHECK(code_of([] { parse_frame("ELEMENTS 0 1\nORDER\n0 1\nDIAMOND\n0 0\nBLACK\n0 0\n1 0\n"); })
        == Errc::SyntaxError);
}

TEST_CASE("cli eval and valid", "[frontend][cli]") {
  auto r = run({"eval", models + "/m.model", "EG p"});
  CHECK(r.status == 0);
  CHECK(r.out == "{1}\n");

  r = run({"valid", models + "/m_equiv.model", "<>p /\\ q -> <>(p /\\ <>q)"});
  CHECK(r.status == 0);
  CHECK(r.out == "VALID\n");

  // p = {0} is not closed under □ in the class {0,1}
  r = run({"valid", models + "/m_equiv.model", "p -> []p"});
  CHECK(r.status == 1);
  CHECK(r.out == "INVALID world 0\n");

  r = run({"eval", models + "/pdl.model", "<a;b>p"});
  CHECK(r.out == "{0}\n");
  r = run({"eval", models + "/pdl.model", "<(a u b)*>p"});
  CHECK(r.out == "{0,1,2}\n");

  r = run({"eval", models + "/m.model", "<>p"});
  CHECK(r.status == 2);
  CHECK(r.err.find("SyntaxError") != std::string::npos);

  r = run({"eval", models + "/ends.model", "EX p"});
  CHECK(r.status == 2);
  CHECK(r.err.find("TimeEnds") != std::string::npos);

  r = run({"eval", models + "/missing.model", "p"});
  CHECK(r.status == 2);
}

TEST_CASE("cli axioms", "[frontend][cli]") {
  for (auto const* file : {"/m.model", "/m_equiv.model", "/pdl.model", "/z2.model"}) {
    auto r = run({"axioms", models + file});
    INFO(file << "\n" << r.out);
    CHECK(r.status == 0);
    CHECK(r.out.find("CHECK support PASS") != std::string::npos);
    CHECK(r.out.find("CHECK conjugacy PASS") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
  auto r = run({"axioms", models + "/m_equiv.model"});
  CHECK(r.out.find("POINT reflexive=1 transitive=1 symmetric=1 total_support=1") != std::string::npos);

  // five worlds are sampled rather than enumerated
  auto big = temp_file("five.model", "WORLDS 0 1 2 3 4\nREL alpha\n0 1\n1 2\n2 3\n3 4\n4 0\nVAL p 0 2\n");
  r        = run({"axioms", big});
  CHECK(r.status == 0);
  CHECK(r.out.find("# sampled=") != std::string::npos);
}

TEST_CASE("cli quotient", "[frontend][cli]") {
  // already an equivalence relation: nothing is identified
  auto r = run({"quotient", models + "/m_equiv.model", "--system", "S5"});
  CHECK(r.status == 0);
  CHECK(r.out.find("QUOTIENT system=S5 size=512 of 512") != std::string::npos);
  CHECK(count_lines(r.out, " PASS") == 5);

  // forcing e ≤ α when α misses (0,0): {(0,0)} e {(0,0)} ≤ j({(0,0)} α {(0,0)}) = j(0)
  // identifies everything in the simple quantale P(W×W)
  r = run({"quotient", models + "/m.model", "--system", "T"});
  CHECK(r.status == 0);
  CHECK(r.out.find("size=1 of 16") != std::string::npos);

  r = run({"quotient", models + "/m.model", "--system", "K4"});
  CHECK(r.out.find("size=16 of 16") != std::string::npos);

  r = run({"quotient", models + "/z2.model", "--system", "K4"});
  CHECK(r.status == 0);
  CHECK(r.out.find("CHECK quotient.transitive PASS") != std::string::npos);

  r = run({"quotient", models + "/m.model", "--system", "B"});
  CHECK(r.status == 2);
}

TEST_CASE("cli tensor-verify", "[frontend][cli]") {
  auto r = run({"tensor-verify", "--frame", models + "/edge.frame", "--depth", "2"});
  CHECK(r.status == 0);
  CHECK(r.out.find("PAIR 0 diamond=0,0,a,a black=0,b,0,b") != std::string::npos);
  CHECK(count_lines(r.out, "LAW ") == 18);
  CHECK(r.out.find("LAW cor.T SKIP") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);

  r = run({"tensor-verify", "--frame", models + "/two.frame"});
  CHECK(r.status == 0);
  CHECK(count_lines(r.out, "PAIR ") == 2);

  // ◇ = id with ◆ = 0 is not conjugate
  auto bad = temp_file("bad.frame", "ELEMENTS 0 1\nORDER\n0 1\nDIAMOND\n0 0\n1 1\nBLACK\n0 0\n1 0\n");
  r        = run({"tensor-verify", "--frame", bad, "--depth", "1"});
  CHECK(r.status == 1);
  CHECK(r.out.find("CHECK conjugacy FAIL") != std::string::npos);
  CHECK(r.out.find("LAW lemmaA.4a FAIL") != std::string::npos);

  r = run({"tensor-verify", "--depth", "2"});
  CHECK(r.status == 2);
}

TEST_CASE("cli sweep", "[frontend][cli]") {
  auto r = run({"sweep", "--worlds", "3", "--system", "S5", "--scheme", "<>p /\\ q -> <>(p /\\ <>q)"});
  CHECK(r.status == 0);
  // five equivalence relations on three worlds, 64 valuations of p and q
  CHECK(r.out == "SWEEP worlds=3 system=S5 frames=5 models=320\nVALID\n");

  r = run({"sweep", "--worlds", "3", "--system", "T", "--scheme", "p -> <>p"});
  CHECK(r.status == 0);
  CHECK(r.out.find("frames=64 models=512") != std::string::npos);

  r = run({"sweep", "--worlds", "2", "--system", "K4", "--scheme", "p -> <>p"});
  CHECK(r.status == 1);
  CHECK(r.out.find("INVALID alpha={} p={0} world 0") != std::string::npos);

  r = run({"sweep", "--worlds", "3", "--system", "S4", "--scheme", "<>p -> []<>p"});
  CHECK(r.status == 1);

  r = run({"sweep", "--worlds", "2", "--system", "K", "--scheme", "EF p", "--mode", "ctl"});
  CHECK(r.status == 1);

  r = run({"sweep", "--worlds", "9", "--scheme", "p"});
  CHECK(r.status == 2);
}

TEST_CASE("sweep agrees with the pointwise oracle", "[frontend][cli]") {
  // Count K4 counterexamples to ◇p → □◇p by brute force and compare with the
  // library verdict per frame.
  RelationQuantale q(3);
  auto             f = parse_formula("<>p -> []<>p", Mode::Classical);
  std::size_t      lib = 0, ora = 0;
  for (std::uint64_t a = 0; a < 512; ++a) {
    for (std::uint64_t v = 0; v < 8; ++v) {
      oracle::Kripke K{3, oracle::empty_matrix(3), {}, {}};
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          K.alpha[i][j] = (a >> (i * 3 + j) & 1u) != 0;
        }
      }
      K.atoms["p"] = {(v & 1u) != 0, (v & 2u) != 0, (v & 4u) != 0};
      RelationModel M{q, Relation{a}, {{"p", q.diagonal_of(v)}}, {}};
      bool          lib_valid = evaluate(M, f, Mode::Classical) == q.unit();
      bool          ora_valid = true;
      for (std::size_t w = 0; w < 3; ++w) {
        ora_valid = ora_valid && oracle::holds(K, f, w);
      }
      CHECK(lib_valid == ora_valid);
      lib += lib_valid ? 0 : 1;
      ora += ora_valid ? 0 : 1;
    }
  }
  CHECK(lib == ora);
  CHECK(lib > 0);
}

TEST_CASE("help and usage errors", "[frontend][cli]") {
  auto r = run({"--help"});
  CHECK(r.status == 0);
  CHECK(r.out.find("tensor-verify") != std::string::npos);
  CHECK(run({}).status == 2);
  CHECK(run({"nonsense"}).status == 2);
  CHECK(run({"eval", models + "/m.model"}).status == 2);
}
