#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "metriq/metriq.hpp"

using namespace metriq;
using testutil::rat;

namespace {

GenPoly q_pow(const Rational& coeff, const ExactScalar& exp) { return GenPoly::monomial(coeff, exp); }

GenPoly int_poly(std::initializer_list<std::pair<long, long>> coeff_exp) {
  GenPoly p;
  for (auto [c, e] : coeff_exp) p = p + q_pow(Rational(c), rat(e));
  return p;
}

}  // namespace

TEST_CASE("wedge sums", "[corpus]") {
  auto edge = path_graph(2);
  auto glued = wedge_sum(edge, edge, 1, 0);
  CHECK(glued.n() == 3);
  CHECK(glued.distance_multiset() == LengthMultiset({rat(1), rat(1), rat(2)}));

  // end vs middle gluing of path-3 and path-2
  auto p3 = path_graph(3);
  CHECK(is_isometric(wedge_sum(p3, edge, 2, 0), path_graph(4)).has_value());
  CHECK(is_isometric(wedge_sum(p3, edge, 1, 0), star_graph(3)).has_value());

  CHECK_THROWS_AS(wedge_sum(p3, edge, 3, 0), Error);

  // wedge with irrational distances stays a metric
  auto square = regular_ngon(4);
  CHECK_NOTHROW(wedge_sum(square, p3, 0, 0));
}

TEST_CASE("whitney twists", "[corpus]") {
  // triangles glued along an edge: the twist is the same diamond either way
  Graph triangle{3, {{0, 1}, {1, 2}, {0, 2}}};
  auto [d1, d2] = whitney_twist(triangle, triangle, 0, 1, 0, 1);
  CHECK(d1.n == 4);
  CHECK(d1.edges.size() == 5);  // double edge removed
  CHECK(is_isometric(graph_to_metric(d1), graph_to_metric(d2)).has_value());

  CHECK_THROWS_AS(whitney_twist(triangle, triangle, 0, 0, 0, 1), Error);
  CHECK_THROWS_AS(whitney_twist(triangle, triangle, 0, 1, 0, 5), Error);

  // adjacent gluing points: equal magnitudes, different metrics
  auto [wa, wb] = whitney_adjacent_pair();
  auto xa = graph_to_metric(wa);
  auto xb = graph_to_metric(wb);
  CHECK_FALSE(is_isometric(xa, xb).has_value());
  Real tol = pow(Real(10), -20);
  for (Real t : {Real(Rational(1, 2)), Real(1), Real(2)}) {
    CHECK(abs(magnitude(xa, t) - magnitude(xb, t)) < tol);
  }
  CHECK(charpoly(xa) != charpoly(xb));

  // non-adjacent asymmetric gluing: the twist changes the diameter
  Graph tailed_triangle{4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}};
  Graph tailed_path{5, {{0, 1}, {1, 2}, {2, 3}, {1, 4}}};
  auto [na, nb] = whitney_twist(tailed_triangle, tailed_path, 0, 3, 0, 3);
  auto ya = graph_to_metric(na);
  auto yb = graph_to_metric(nb);
  CHECK_FALSE(is_isometric(ya, yb).has_value());
  CHECK(charpoly(ya) != charpoly(yb));
  CHECK(ya.distance_multiset() != yb.distance_multiset());
}

TEST_CASE("regular polygons", "[corpus]") {
  // n = 3: equilateral, all rational
  auto r3 = regular_ngon(3);
  CHECK(r3.distance_multiset() == LengthMultiset({rat(1), rat(1), rat(1)}));
  CHECK(r3.basis() == nullptr);

  // n = 4: diagonal sqrt2
  auto r4 = regular_ngon(4);
  auto chords4 = ngon_chords(4);
  CHECK(chords4[0] == rat(1));
  CHECK(abs(chords4[1].numeric() - sqrt(Real(2))) < pow(Real(10), -45));
  CHECK_FALSE(chords4[1].is_rational());

  // n = 6: (1, sqrt3, 2) with the long diagonal exactly rational
  auto chords6 = ngon_chords(6);
  CHECK(chords6[0] == rat(1));
  CHECK(chords6[2] == rat(2));
  CHECK_FALSE(chords6[1].is_rational());
  CHECK(abs(chords6[1].numeric() - sqrt(Real(3))) < pow(Real(10), -45));

  // n = 9: the hidden rational relation delta_4 = delta_2 + 1 is exact
  auto chords9 = ngon_chords(9);
  CHECK(chords9[3] - chords9[1] == rat(1));

  // n = 12: delta_6 = 2 delta_2 and delta_5 = delta_3 + 1
  auto chords12 = ngon_chords(12);
  CHECK(chords12[5] == chords12[1].scaled(Rational(2)));
  CHECK(chords12[4] - chords12[2] == rat(1));

  // every constructor output validates as a metric
  for (int n : {3, 4, 5, 6, 7, 8, 9, 12}) CHECK(regular_ngon(n).is_metric());
}

TEST_CASE("chord algebra matches the sine ratios numerically", "[corpus]") {
  // the exact reduced-basis coordinates must evaluate to sin(m pi/n)/sin(pi/n)
  Real pi = boost::math::constants::pi<Real>();
  Real tol = pow(Real(10), -45);
  for (int n : {3, 4, 5, 6, 7, 9, 12, 15, 16, 30}) {
    auto chords = ngon_chords(n);
    REQUIRE(static_cast<int>(chords.size()) == n / 2);
    for (int m = 1; m <= n / 2; ++m) {
      Real expected = sin(m * pi / n) / sin(pi / n);
      CHECK(abs(chords[m - 1].numeric() - expected) < tol);
    }
  }
}

TEST_CASE("nonagon isomer", "[corpus]") {
  auto r9 = regular_ngon(9);
  auto r9p = isomer_r9prime();
  auto chords = ngon_chords(9);

  CHECK(r9p.is_metric());
  CHECK(r9p.d(0, 3) == chords[3]);  // gap 3 carries delta_4
  CHECK(r9p.d(0, 4) == chords[2]);  // gap 4 carries delta_3
  CHECK(r9.d(0, 3) == chords[2]);
  CHECK(r9.distance_multiset() == r9p.distance_multiset());
  CHECK_FALSE(is_isometric(r9, r9p).has_value());

  // maximal 3-cycle lengths: 3 delta_3 for R9 versus 3 delta_4 for R9'
  TauVector t9 = tau(r9, 3);
  TauVector t9p = tau(r9p, 3);
  CHECK(extract_S3(t9[3]).max_value() == chords[2].scaled(Rational(3)));
  CHECK(extract_S3(t9p[3]).max_value() == chords[3].scaled(Rational(3)));
}

TEST_CASE("prism and K33 share tau2 but differ at tau3", "[corpus]") {
  auto [prism, k33] = prism_and_k33();
  CHECK(prism.distance_multiset() == LengthMultiset::from_counted({{rat(1), 9}, {rat(2), 6}}));
  CHECK(k33.distance_multiset() == prism.distance_multiset());

  TauVector tp = tau(prism);
  TauVector tk = tau(k33);
  CHECK(tp[2] == tk[2]);
  CHECK(tp[3] != tk[3]);

  // maximal 3-cycle length 5 vs 6
  CHECK(extract_S3(tp[3]).max_value() == rat(5));
  CHECK(extract_S3(tk[3]).max_value() == rat(6));

  // printed lambda^4 coefficient -3(2q^4 + 3q^2 - 5) for both
  GenPoly lambda4 = int_poly({{15, 0}, {-9, 2}, {-6, 4}});
  LambdaPoly pp = charpoly_from_tau(tp);
  LambdaPoly pk = charpoly_from_tau(tk);
  CHECK(pp.coeff(4) == lambda4);
  CHECK(pk.coeff(4) == lambda4);

  // printed lambda^3 coefficients -4(3q^5+q^3-9q^2+5) vs -4(q^6+3q^4-9q^2+5)
  CHECK(pp.coeff(3) == int_poly({{-20, 0}, {36, 2}, {-4, 3}, {-12, 5}}));
  CHECK(pk.coeff(3) == int_poly({{-20, 0}, {36, 2}, {-12, 4}, {-4, 6}}));

  Real tol = pow(Real(10), -20);
  for (Real t : {Real(Rational(1, 2)), Real(1), Real(2)}) {
    CHECK(abs(magnitude(prism, t) - magnitude(k33, t)) < tol);
  }
}

TEST_CASE("regular hexagon charpoly with irrational exponents", "[corpus]") {
  auto r6 = regular_ngon(6);
  auto chords = ngon_chords(6);
  const ExactScalar& s3 = chords[1];  // sqrt3

  LambdaPoly p = charpoly(r6);

  // lambda^4: 15 + tau2 with distance multiset [1 x6, sqrt3 x6, 2 x3]
  GenPoly l4 = GenPoly::constant(15) + q_pow(-6, rat(2)) + q_pow(-6, s3.scaled(2)) + q_pow(-3, rat(4));
  CHECK(p.coeff(4) == l4);

  // lambda^3: 2(-2q^{3sqrt3} - 12q^{3+sqrt3} - 6q^{2+sqrt3} + 6q^4 + 12q^{2sqrt3} + 12q^2 - 10)
  GenPoly l3 = GenPoly::constant(-20) + q_pow(24, rat(2)) + q_pow(24, s3.scaled(2)) + q_pow(12, rat(4)) +
               q_pow(-12, rat(2) + s3) + q_pow(-24, rat(3) + s3) + q_pow(-4, s3.scaled(3));
  CHECK(p.coeff(3) == l3);
}

TEST_CASE("the cycle-six lambda^4 coefficient from its distance multiset", "[corpus]") {
  // distance multiset [1 x6, 2 x6, 3 x3] forces -3(q^6 + 2q^4 + 2q^2 - 5)
  auto c6 = cycle_graph(6);
  LambdaPoly p = charpoly(c6);
  CHECK(p.coeff(4) == int_poly({{15, 0}, {-6, 2}, {-6, 4}, {-3, 6}}));
  CHECK(p.coeff(3) == int_poly({{-20, 0}, {24, 2}, {12, 4}, {-16, 6}}));
}

TEST_CASE("circle subsets", "[corpus]") {
  auto sigma = full_circle_space();
  CHECK(sigma.n() == 16);
  std::vector<LengthMultiset::Entry> expected;
  for (long d = 1; d <= 7; ++d) expected.emplace_back(rat(d), 16);
  expected.emplace_back(rat(8), 8);
  CHECK(sigma.distance_multiset() == LengthMultiset::from_counted(expected));

  auto pair = circle_space({1, 9});
  CHECK(pair.d(0, 1) == rat(8));

  auto triple = circle_space({1, 2, 3});
  CHECK(triple.distance_multiset() == LengthMultiset({rat(1), rat(1), rat(2)}));

  CHECK_THROWS_AS(circle_space({1, 1}), Error);
  CHECK_THROWS_AS(circle_space({0}), Error);
  CHECK_THROWS_AS(circle_space({17}), Error);
}

TEST_CASE("corpus constructors validate", "[corpus]") {
  for (const char* name : {"p4", "k13", "prism", "k33", "r6", "r8", "r9", "r9prime", "circle16", "whitney-a",
                           "whitney-b", "path:5", "cycle:7", "complete:4", "star:4", "ngon:5", "circle:1,4,9"}) {
    CHECK(corpus_emit(name).is_metric());
  }
  CHECK_THROWS_AS(corpus_emit("nope"), Error);
  CHECK_THROWS_AS(corpus_emit("path:x"), Error);
}

TEST_CASE("comparison harness verdicts", "[corpus]") {
  CompareConfig cfg;
  cfg.t_samples = {Rational(1, 2), Rational(1), Rational(2)};
  cfg.formal_cutoff = Rational(5);

  auto p4 = path_graph(4);
  auto k13 = star_graph(3);

  // self-comparison: everything equal
  ComparisonReport self = compare(p4, p4, cfg);
  CHECK(self.isometric);
  CHECK(self.charpoly_equal);
  CHECK(self.magnitude_equal);
  CHECK(self.formal_equal);
  CHECK(self.alpha_equal);
  CHECK(self.beta_equal);
  CHECK_FALSE(self.charpoly_first_diff.has_value());

  // wedge pair: same magnitude, charpoly differs first at lambda^2
  Graph g_p4 = make_path_graph(4);
  Graph g_k13 = make_star_graph(3);
  ComparisonReport rep = compare(p4, k13, cfg, &g_p4, &g_k13);
  CHECK_FALSE(rep.isometric);
  CHECK(rep.magnitude_equal);
  CHECK(rep.formal_equal);
  CHECK_FALSE(rep.charpoly_equal);
  REQUIRE(rep.charpoly_first_diff.has_value());
  CHECK(*rep.charpoly_first_diff == 2);
  CHECK_FALSE(rep.alpha_equal);
  CHECK_FALSE(rep.beta_equal);
  REQUIRE(rep.adjacency_equal.has_value());
  CHECK_FALSE(*rep.adjacency_equal);

  // symmetry of the report
  ComparisonReport flipped = compare(k13, p4, cfg, &g_k13, &g_p4);
  CHECK(flipped.isometric == rep.isometric);
  CHECK(flipped.charpoly_equal == rep.charpoly_equal);
  CHECK(flipped.charpoly_first_diff == rep.charpoly_first_diff);
  CHECK(flipped.magnitude_equal == rep.magnitude_equal);
  CHECK(flipped.alpha_equal == rep.alpha_equal);

  // fibration pair: magnitude equal, charpoly differs at lambda^3
  auto [prism, k33] = prism_and_k33();
  ComparisonReport fib = compare(prism, k33, cfg);
  CHECK_FALSE(fib.isometric);
  CHECK(fib.magnitude_equal);
  CHECK_FALSE(fib.charpoly_equal);
  CHECK(*fib.charpoly_first_diff == 3);
  CHECK_FALSE(fib.alpha_equal);

  // cospectral pair: equal adjacency spectra, different magnitudes
  Graph c4_k1{5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}};
  Graph k14 = make_star_graph(4);
  CHECK(adjacency_charpoly(c4_k1) == adjacency_charpoly(k14));
  auto k14_space = graph_to_metric(k14);
  auto c4_space = graph_to_metric(Graph{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}});
  CHECK(abs(magnitude(k14_space, Real(1)) - magnitude(c4_space, Real(1)) - 1) > Real(Rational(1, 100)));
}

TEST_CASE("comparison of the nonagon isomer pair", "[corpus]") {
  CompareConfig cfg;
  cfg.t_samples = {Rational(1, 2), Rational(1), Rational(2)};
  cfg.magnitude_tolerance = pow(Real(10), -15);
  cfg.run_formal = false;  // exercised separately; path enumeration over 9 points is slow
  cfg.run_stochastic = false;
  ComparisonReport rep = compare(regular_ngon(9), isomer_r9prime(), cfg);
  CHECK_FALSE(rep.isometric);
  CHECK(rep.magnitude_equal);
  CHECK_FALSE(rep.charpoly_equal);
  CHECK(*rep.charpoly_first_diff == 6);  // lambda^{n-3}: the tau3 difference
}
