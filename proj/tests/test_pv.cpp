#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cubical/pv.hpp"
#include "support/brute_force.hpp"

using namespace cubical;
using namespace cubical::pv;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }
Interval op(std::int64_t a, std::int64_t b) { return open(q(a), q(b)); }

PvProgram load(const std::string& name) {
  std::ifstream in(std::string(CUBICAL_CORPUS_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const char* kSwiss = "T1 = Pa.Pb.Vb.Va\nT2 = Pb.Pa.Va.Vb";

ParseError parse_error(std::string_view src) {
  try {
    parse(src);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << src;
  return ParseError(0, 0, "");
}

ValidationError validation_error(std::string_view src) {
  try {
    validate(parse(src));
  } catch (const ValidationError& e) {
    return e;
  }
  ADD_FAILURE() << "no validation error for: " << src;
  return ValidationError(ValidationKind::v_without_p, "", "", 0);
}

}  // namespace

TEST(Parse, SwissFlag) {
  const auto prog = parse(kSwiss);
  ASSERT_EQ(prog.processes.size(), 2u);
  EXPECT_EQ(prog.main, (std::vector<std::string>{"T1", "T2"}));
  EXPECT_EQ(prog.process("T1").body,
            (std::vector<Action>{{Op::P, "a"}, {Op::P, "b"}, {Op::V, "b"}, {Op::V, "a"}}));
}

TEST(Parse, ParenthesizedAndLongNames) {
  const auto prog = parse("X = P(sem).V(sem)");
  ASSERT_EQ(prog.processes.size(), 1u);
  EXPECT_EQ(prog.processes[0].body, (std::vector<Action>{{Op::P, "sem"}, {Op::V, "sem"}}));
  EXPECT_EQ(parse("Y = Pab.Vab").processes[0].body[0].resource, "ab");
}

TEST(Parse, CommentsBlankLinesAndMain) {
  const auto prog = parse("# header\n\nA = Pa.Va  # trailing\nB = Pa.Va\r\nmain = B | A\n");
  EXPECT_EQ(prog.main, (std::vector<std::string>{"B", "A"}));
  EXPECT_EQ(prog.dim(), 2u);
}

TEST(Parse, Errors) {
  auto e = parse_error("T = Pa.Qa");
  EXPECT_EQ(e.line(), 1u);
  EXPECT_EQ(e.column(), 8u);
  e = parse_error("A = Pa.Va\nB = Pa.\n");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 8u);
  e = parse_error("A = Pa.Va\nA = Pb.Vb");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_NE(e.message().find("duplicate"), std::string::npos);
  e = parse_error("A = Pa.Va\nmain = A | C");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 12u);
  e = parse_error("A =\n");
  EXPECT_NE(e.message().find("empty body"), std::string::npos);
  EXPECT_THROW(parse("A = Pa.Va\nmain = A | A"), ParseError);
  EXPECT_THROW(parse("A = Pa.Va\nmain = A\nmain = A"), ParseError);
  EXPECT_THROW(parse("A = P(a"), ParseError);
  EXPECT_THROW(parse("A = Pa Va"), ParseError);
  EXPECT_THROW(parse("A = Pa.Va;"), ParseError);
  EXPECT_THROW(parse("= Pa.Va"), ParseError);
}

TEST(Validate, SwissFlagHolds) {
  const auto holds = validate(parse(kSwiss));
  ASSERT_EQ(holds.size(), 4u);
  EXPECT_EQ(holds[0], (HoldInterval{0, "a", 1, 4}));
  EXPECT_EQ(holds[1], (HoldInterval{0, "b", 2, 3}));
  EXPECT_EQ(holds[2], (HoldInterval{1, "b", 1, 4}));
  EXPECT_EQ(holds[3], (HoldInterval{1, "a", 2, 3}));
}

TEST(Validate, Errors) {
  auto e = validation_error("T = Pa.Pa.Va.Va");
  EXPECT_EQ(e.kind(), ValidationKind::p_while_held);
  EXPECT_EQ(e.position(), 2u);
  EXPECT_EQ(e.process(), "T");
  EXPECT_EQ(e.resource(), "a");
  e = validation_error("T = Va");
  EXPECT_EQ(e.kind(), ValidationKind::v_without_p);
  EXPECT_EQ(e.position(), 1u);
  e = validation_error("T = Pa.Pb.Va");
  EXPECT_EQ(e.kind(), ValidationKind::p_unreleased_at_end);
  EXPECT_EQ(e.resource(), "b");
  EXPECT_EQ(e.position(), 2u);
}

TEST(Validate, ReacquireAfterReleaseIsFine) {
  const auto holds = validate(parse("T = Pa.Va.Pa.Va"));
  EXPECT_EQ(holds, (std::vector<HoldInterval>{{0, "a", 1, 2}, {0, "a", 3, 4}}));
}

TEST(Semantics, SwissFlag) {
  const auto prog = parse(kSwiss);
  EXPECT_EQ(ambient(prog), (Cube{closed(q(0), q(5)), closed(q(0), q(5))}));
  const auto f = forbidden_region(prog);
  EXPECT_EQ(std::vector<Cube>(f.cubes().begin(), f.cubes().end()),
            (std::vector<Cube>{Cube{op(1, 4), op(2, 3)}, Cube{op(2, 3), op(1, 4)}}));
  const auto m = model(prog);
  EXPECT_TRUE(contains_point(m, {q(0), q(0)}));
  EXPECT_TRUE(contains_point(m, {q(5), q(5)}));
  EXPECT_FALSE(contains_point(m, {q(5, 2), q(5, 2)}));
  EXPECT_EQ(area_union(m, f), CubicalArea::from_cube(ambient(prog)));
  EXPECT_TRUE(area_intersect(m, f).is_empty());
}

TEST(Semantics, NoConflicts) {
  const auto single = parse("T = Pa.Va");
  EXPECT_TRUE(forbidden_region(single).is_empty());
  EXPECT_EQ(model(single), CubicalArea::from_cube(ambient(single)));
  const auto disjoint = parse("T1 = Pa.Va\nT2 = Pb.Vb");
  EXPECT_TRUE(forbidden_region(disjoint).is_empty());
  EXPECT_EQ(model(disjoint), CubicalArea::from_cube(ambient(disjoint)));
  EXPECT_THROW(ambient(PvProgram{}), std::invalid_argument);
}

TEST(Semantics, ThirdAxisIsAmbient) {
  const auto prog = load("swiss_plus_free.pv");
  const auto f = forbidden_region(prog);
  ASSERT_EQ(f.size(), 2u);
  for (const Cube& c : f.cubes()) EXPECT_EQ(c[2], closed(q(0), q(3)));
}

TEST(ResourceGroups, Examples) {
  EXPECT_EQ(resource_groups(parse(kSwiss)), (std::vector<std::vector<std::size_t>>{{0, 1}}));
  EXPECT_EQ(resource_groups(parse("T1 = Pa.Va\nT2 = Pb.Vb")), (std::vector<std::vector<std::size_t>>{{0}, {1}}));
  EXPECT_EQ(resource_groups(load("chain.pv")), (std::vector<std::vector<std::size_t>>{{0, 1, 2}}));
  EXPECT_EQ(resource_groups(load("two_swiss.pv")), (std::vector<std::vector<std::size_t>>{{0, 2}, {1, 3}}));
}

TEST(Semantics, ModelIsProductOverResourceGroups) {
  for (const char* name : {"two_swiss.pv", "pairs.pv", "swiss_plus_free.pv", "singletons.pv", "independent.pv"}) {
    const auto prog = load(name);
    const auto groups = resource_groups(prog);
    ASSERT_GE(groups.size(), 2u) << name;
    std::vector<std::pair<std::vector<std::size_t>, CubicalArea>> parts;
    for (const auto& g : groups) parts.emplace_back(g, model(restrict_to(prog, g)));
    EXPECT_EQ(product(std::span<const std::pair<std::vector<std::size_t>, CubicalArea>>(parts)), model(prog)) << name;
  }
}

TEST(Semantics, PermutingProcessesPermutesAxes) {
  const auto prog = load("pairs.pv");
  const std::vector<std::size_t> order{2, 0, 3, 1};
  const auto permuted = restrict_to(prog, order);
  const auto m = model(prog), pm = model(permuted);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    std::vector<Rational> p(4), pp(4);
    for (std::size_t k = 0; k < 4; ++k) p[k] = Rational(static_cast<std::int64_t>(rng() % 15), 2);
    for (std::size_t k = 0; k < 4; ++k) pp[k] = p[order[k]];
    EXPECT_EQ(contains_point(m, p), contains_point(pm, pp));
  }
}

TEST(Semantics, MembershipMatchesHoldIntervals) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const auto prog = reference::random_program(s, 2 + s % 2, 6);
    const auto holds = validate(prog);
    const auto m = model(prog);
    const Cube amb = ambient(prog);
    std::vector<std::vector<Rational>> axes;
    for (std::size_t k = 0; k < prog.dim(); ++k) {
      std::vector<Rational> v;
      for (Rational x(-1, 2); x <= amb[k].hi().value() + Rational(1, 2); x += Rational(1, 4)) v.push_back(x);
      axes.push_back(v);
    }
    for (const auto& p : reference::lattice_points(axes)) {
      bool forbidden = false;
      for (const auto& a : holds)
        for (const auto& b : holds)
          if (a.process < b.process && a.resource == b.resource && q(a.p_pos) < p[a.process] &&
              p[a.process] < q(a.v_pos) && q(b.p_pos) < p[b.process] && p[b.process] < q(b.v_pos))
            forbidden = true;
      ASSERT_EQ(contains_point(m, p), amb.contains(std::span<const Rational>(p)) && !forbidden);
    }
  }
}

TEST(Actions, ToString) { EXPECT_EQ(to_string(Action{Op::V, "m"}), "V(m)"); }
