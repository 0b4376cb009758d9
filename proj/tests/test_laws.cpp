#include <gtest/gtest.h>

#include "cubical/laws.hpp"

using namespace cubical;
using namespace cubical::laws;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }
Interval cl(std::int64_t a, std::int64_t b) { return closed(q(a), q(b)); }
OneDimArea one(Interval iv) { return OneDimArea(iv); }
CubicalArea area1(Interval iv) { return CubicalArea::from_cube(Cube{iv}); }

Bimorphism<FiniteSemilatticeZ::Element> sample_witness() {
  return witness_bimorphism(FiniteSemilatticeZ::powerset(3), {Cube{cl(0, 1), cl(0, 1)}, Cube{open(q(1), q(2)), cl(3, 4)},
                                                             Cube{closed_open(q(5), q(6)), real_line()}});
}

}  // namespace

TEST(RandomArea, Deterministic) {
  EXPECT_TRUE(random_area(17, 1, 0).is_empty());
  for (std::uint64_t s = 0; s < 50; ++s) EXPECT_EQ(random_area(s, 2, 3), random_area(s, 2, 3));
  EXPECT_NE(random_area(1, 2, 3), random_area(2, 2, 3));
}

TEST(RandomArea, CoversTheRawCubes) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto fam = random_family(s, 2, 3);
    const auto a = random_area(s, 2, 3);
    for (int x = -2; x <= 18; ++x)
      for (int y = -2; y <= 18; ++y) {
        const std::vector<Rational> p{q(x, 2), q(y, 2)};
        ASSERT_EQ(contains_point(a, p), fam.contains(p));
      }
  }
}

TEST(Seeds, MixingIsStable) {
  EXPECT_EQ(mix_seed(0), 0xe220a8397b1dcdafULL);
  EXPECT_NE(trial_seed(42, 1, 0), trial_seed(42, 2, 0));
  EXPECT_NE(trial_seed(42, 1, 0), trial_seed(42, 1, 1));
}

TEST(GeneratorMeet, Examples) {
  EXPECT_TRUE(check_generator_meet(one(cl(0, 2)), one(cl(0, 2)), one(cl(1, 3)), one(cl(1, 3))));
  const auto lhs = area_intersect(product(area1(cl(0, 2)), area1(cl(0, 2))), product(area1(cl(1, 3)), area1(cl(1, 3))));
  EXPECT_EQ(lhs, CubicalArea::from_cube(Cube{cl(1, 2), cl(1, 2)}));
  EXPECT_TRUE(check_generator_meet(OneDimArea(), one(cl(0, 2)), one(cl(1, 3)), one(cl(1, 3))));
  EXPECT_TRUE(check_generator_meet(random_area(1, 2, 2), random_area(2, 1, 2), random_area(3, 2, 2),
                                   random_area(4, 1, 2)));
}

TEST(GeneratorMeet, RandomOneDimensional) {
  for (std::uint64_t s = 0; s < 500; ++s)
    EXPECT_TRUE(check_generator_meet(random_area1d(4 * s, 2), random_area1d(4 * s + 1, 2), random_area1d(4 * s + 2, 2),
                                     random_area1d(4 * s + 3, 2)));
}

TEST(GeneratorComplement, Examples) {
  EXPECT_TRUE(check_generator_complement(cl(0, 1), cl(0, 1)));
  EXPECT_TRUE(check_generator_complement(real_line(), real_line()));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 500; ++i) EXPECT_TRUE(check_generator_complement(random_interval(rng), random_interval(rng)));
}

TEST(BooleanLaws, RandomTriples) {
  for (std::size_t dim = 1; dim <= 3; ++dim)
    for (std::uint64_t s = 0; s < 100; ++s)
      EXPECT_TRUE(check_boolean_laws(random_area(3 * s, dim, 3), random_area(3 * s + 1, dim, 3),
                                     random_area(3 * s + 2, dim, 3)))
          << "dim " << dim << " seed " << s;
  EXPECT_THROW(check_boolean_laws(CubicalArea::full(1), CubicalArea::full(2), CubicalArea::full(1)), dimension_error);
}

TEST(Semilattice, Validation) {
  using T = std::vector<std::vector<std::size_t>>;
  EXPECT_NO_THROW(FiniteSemilatticeZ(T{{0, 1}, {1, 1}}, 0));
  EXPECT_THROW(FiniteSemilatticeZ(T{{0, 1}, {1, 1}}, 2), std::invalid_argument);
  EXPECT_THROW(FiniteSemilatticeZ(T{{0, 1}, {1}}, 0), std::invalid_argument);
  EXPECT_THROW(FiniteSemilatticeZ(T{{0, 1}, {0, 1}}, 0), std::invalid_argument);  // not commutative
  EXPECT_THROW(FiniteSemilatticeZ(T{{0, 1}, {1, 0}}, 0), std::invalid_argument);  // not idempotent
  EXPECT_THROW(FiniteSemilatticeZ(T{{1, 1}, {1, 1}}, 0), std::invalid_argument);  // zero not neutral
  EXPECT_THROW(FiniteSemilatticeZ(T{{0, 5}, {5, 1}}, 0), std::invalid_argument);
  // 0 < {1, 2} < 3 but with 1 v 2 = 1: commutativity fails on the other side
  EXPECT_THROW(FiniteSemilatticeZ(T{{0, 1, 2, 3}, {1, 1, 1, 3}, {2, 3, 2, 3}, {3, 3, 3, 3}}, 0), std::invalid_argument);
  const auto p = FiniteSemilatticeZ::powerset(3);
  EXPECT_EQ(p.size(), 8u);
  EXPECT_EQ(p.zero(), 0u);
  EXPECT_EQ(p.join(5, 3), 7u);
}

TEST(Bimorphism, WitnessSatisfiesTheLaws) {
  const auto f = sample_witness();
  std::vector<OneDimArea> xs{OneDimArea(), one(cl(0, 1)), one(open(q(1), q(2))), one(point(q(1))),
                             area1d_normalize({cl(0, 1), cl(5, 7)}), one(real_line())};
  EXPECT_TRUE(spot_check_bimorphism(f, xs));
  for (std::uint64_t s = 0; s < 20; ++s) {
    std::vector<OneDimArea> ys;
    for (std::uint64_t k = 0; k < 4; ++k) ys.push_back(random_area1d(s * 10 + k, 2));
    EXPECT_TRUE(spot_check_bimorphism(random_witness_bimorphism(s, 6), ys));
  }
}

TEST(Bimorphism, SpotCheckRejectsANonBimorphism) {
  Bimorphism<FiniteSemilatticeZ::Element> bad = sample_witness();
  bad.eval = [](const OneDimArea& a, const OneDimArea&) -> FiniteSemilatticeZ::Element {
    return a.parts().size() == 1 ? 1 : 0;
  };
  const std::vector<OneDimArea> xs{one(cl(0, 1)), one(cl(2, 3))};
  EXPECT_FALSE(spot_check_bimorphism(bad, xs));
}

TEST(ExtendBimorphism, Examples) {
  const auto f = sample_witness();
  const Cube ab{cl(0, 2), cl(0, 5)};
  EXPECT_EQ(extend_bimorphism(f, CubeFamily(2, {ab})), f.eval(one(cl(0, 2)), one(cl(0, 5))));
  EXPECT_EQ(extend_bimorphism(f, CubeFamily(2, {})), f.zero);
  const auto e = canonical_embedding();
  EXPECT_EQ(extend_bimorphism(e, CubeFamily(2, {})), CubicalArea::empty(2));
  EXPECT_THROW(extend_bimorphism(f, CubeFamily(1, {Cube{cl(0, 1)}})), dimension_error);
}

TEST(ExtendBimorphism, SubdividedSquare) {
  // a = b = [0,2] split at 1 into [0,1] and [1,2]; the three pieces
  // a1 x b2, a2 x b2, a x b1 cover [0,2]^2.
  const Interval a = cl(0, 2), a1 = cl(0, 1), a2 = cl(1, 2), b1 = cl(0, 1), b2 = cl(1, 2);
  const CubeFamily cover(2, {Cube{a1, b2}, Cube{a2, b2}, Cube{a, b1}});
  const auto whole = CubicalArea::from_cube(Cube{a, a});
  ASSERT_EQ(normalize(cover), whole);
  const auto f = sample_witness();
  EXPECT_EQ(extend_bimorphism(f, cover), f.eval(one(a), one(a)));
  const auto e = canonical_embedding();
  EXPECT_EQ(extend_bimorphism(e, cover), whole);
  EXPECT_TRUE(check_cover_invariance(f, whole, cover, whole.as_family()));
  EXPECT_TRUE(check_cover_invariance(e, whole, cover, whole.as_family()));
}

TEST(CoverInvariance, RandomRefinements) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto a = random_area(s, 2, 3);
    const auto cover = random_refinement(a, s + 7);
    ASSERT_EQ(normalize(cover), a);
    EXPECT_TRUE(check_cover_invariance(random_witness_bimorphism(s, 6), a, a.as_family(), cover)) << s;
    EXPECT_TRUE(check_cover_invariance(canonical_embedding(), a, a.as_family(), cover)) << s;
    EXPECT_EQ(extend_bimorphism(canonical_embedding(), cover), a);
  }
}

TEST(CoverInvariance, RejectsCoversOfADifferentArea) {
  const auto a = CubicalArea::from_cube(Cube{cl(0, 2), cl(0, 2)});
  const CubeFamily partial(2, {Cube{cl(0, 1), cl(0, 2)}});
  EXPECT_THROW(check_cover_invariance(sample_witness(), a, a.as_family(), partial), std::invalid_argument);
  EXPECT_THROW(check_cover_invariance(sample_witness(), CubicalArea::full(1), CubeFamily(1, {}), CubeFamily(1, {})),
               dimension_error);
}

// Two-element bounded lattices {0 < 1}: a map f that preserves both bounds in
// each argument must send (1, 0) to 0 (f(1, -) preserves 0) and to 1 (f(-, 0)
// preserves 1). So no such map exists unless the target has 0 = 1.
TEST(BoundedLattices, TensorIsDegenerate) {
  for (std::size_t n = 1; n <= 3; ++n) {  // target: the chain 0 < 1 < ... < n-1
    const std::size_t top = n - 1;
    std::size_t bimorphisms = 0;
    for (std::size_t code = 0; code < n * n * n * n; ++code) {
      std::size_t f[2][2];
      std::size_t c = code;
      for (auto& row : f)
        for (auto& v : row) {
          v = c % n;
          c /= n;
        }
      bool ok = true;
      for (std::size_t x = 0; x < 2; ++x) {
        ok = ok && f[x][0] == 0 && f[0][x] == 0;      // zero-preserving in each argument
        ok = ok && f[x][1] == top && f[1][x] == top;  // top-preserving in each argument
        ok = ok && std::max(f[x][0], f[x][1]) == f[x][1] && std::max(f[0][x], f[1][x]) == f[1][x];
      }
      bimorphisms += ok;
    }
    EXPECT_EQ(bimorphisms, n == 1 ? 1u : 0u) << "chain of length " << n;
  }
}

TEST(LawSuite, SmallRunPasses) {
  for (std::size_t dim = 1; dim <= 3; ++dim) {
    const auto rep = run_law_suite(7, 15, dim);
    ASSERT_EQ(rep.laws.size(), 6u);
    for (const auto& law : rep.laws) EXPECT_TRUE(law.passed()) << law.name;
    EXPECT_TRUE(rep.passed());
  }
  EXPECT_THROW(run_law_suite(1, 0, 2), std::invalid_argument);
  EXPECT_THROW(run_law_suite(1, 1, 4), std::invalid_argument);
}

TEST(LawSuite, ReportsAreDeterministic) {
  const auto a = law_report_to_json(run_law_suite(42, 10, 2)).dump(2);
  const auto b = law_report_to_json(run_law_suite(42, 10, 2)).dump(2);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, law_report_to_json(run_law_suite(43, 10, 2)).dump(2));
  const auto text = law_report_to_text(run_law_suite(42, 5, 1));
  EXPECT_NE(text.find("all laws hold"), std::string::npos);
}

TEST(LawSuite, MinimizerShrinksCounterexamples) {
  const auto a = random_area(5, 2, 4);
  ASSERT_GE(a.size(), 2u);
  // "fails" whenever the first input is nonempty; minimal failing input has one cube
  const auto out = minimize_counterexample({a}, [](const std::vector<CubicalArea>& v) { return !v[0].is_empty(); });
  EXPECT_EQ(out[0].size(), 1u);
  EXPECT_TRUE(area_subset(out[0], a));
}
