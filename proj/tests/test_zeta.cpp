#include "hypzeta/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace hypzeta;

namespace {

const SchottkyGroup& funnel() {
  static const SchottkyGroup g = three_funnel(6, 6);
  return g;
}

double funnel_delta() {
  static const double d = hausdorff_dimension(funnel());
  return d;
}

const PrimitiveTable& classes12() {
  static const PrimitiveTable t = enumerate_primitives(funnel(), 12);
  return t;
}

cplx cylinder_closed_form(double l, cplx s, double theta = 0.0) {
  const cplx chi = std::polar(1.0, 2 * std::numbers::pi * theta);
  cplx z = 1.0;
  for (int k = 0; k < 80; ++k) z *= 1.0 - chi * std::exp(-(s + double(k)) * l);
  return z;
}

}  // namespace

TEST_CASE("character grid") {
  auto grid = character_grid(CoverSpec{{3}}, 2);
  REQUIRE(grid.size() == 3);
  CHECK(grid[0][0] == 0.0);
  CHECK(grid[1][0] == doctest::Approx(1.0 / 3));
  CHECK(grid[2][0] == doctest::Approx(2.0 / 3));
  for (const auto& t : grid) CHECK(t[1] == 0.0);

  auto g2 = character_grid(CoverSpec{{2, 3}}, 2);
  REQUIRE(g2.size() == 6);
  CHECK(g2[1][0] == 0.0);
  CHECK(g2[1][1] == doctest::Approx(1.0 / 3));
  CHECK(g2[3][0] == 0.5);
  CHECK(CoverSpec{{2, 3}}.order() == 6);
}

TEST_CASE("cover validation") {
  CHECK_CODE(CoverSpec{{}}.check(2), InvalidCover);
  CHECK_CODE(CoverSpec{{1}}.check(2), InvalidCover);
  CHECK_CODE((CoverSpec{{2, 2, 2}}.check(2)), InvalidCover);
  CHECK_NOTHROW(CoverSpec{{5, 7}}.check(2));
  CHECK(CoverSpec{{4}}.in_kernel({8, 3}));
  CHECK_FALSE(CoverSpec{{4}}.in_kernel({6, 0}));
  CHECK_FALSE((CoverSpec{{4, 4}}.in_kernel({8, 3})));
}

TEST_CASE("character orthogonality") {
  std::uniform_int_distribution<int> coord(-200, 200);
  for (const auto& cover : {CoverSpec{{8}}, CoverSpec{{16}}, CoverSpec{{32}}, CoverSpec{{4, 4}}}) {
    const auto grid = character_grid(cover, 2);
    const double order = static_cast<double>(cover.order());
    for (int trial = 0; trial < 100; ++trial) {
      HomologyVector v{coord(testing::rng()), coord(testing::rng())};
      if (trial % 10 == 0) v[0] = 4 * cover.moduli[0] * (trial / 10);
      cplx sum = 0;
      for (const auto& t : grid) sum += character(t, v);
      const double expected = cover.in_kernel(v) ? order : 0.0;
      CHECK(std::abs(sum - expected) < 1e-9);
    }
  }
}

TEST_CASE("twisted determinant symmetries") {
  const auto& g = funnel();
  ZetaEvaluator z(g);
  const double delta = funnel_delta();
  const cplx s0(0.4, 2.5);
  CHECK(z(s0, ThetaPoint::zero(2)) == z(s0, ThetaPoint({0.0, 0.0})));
  for (double a : {0.1, 0.27, 0.5}) {
    for (cplx s : {cplx(delta, 0.0), s0, cplx(-0.3, 0.8)}) {
      ThetaPoint t({a, 0.6 * a});
      const cplx v = z(s, t);
      // Rounding in the LU grows with |Z| left of the critical line.
      const double tol = 1e-10 * std::max(1.0, std::abs(v));
      CHECK(std::abs(v - z(s, t.negated())) < tol);
      CHECK(std::abs(std::conj(v) - z(std::conj(s), t)) < tol);
    }
  }
  // Untwisted determinant vanishes at delta.
  CHECK(std::abs(z(delta, ThetaPoint::zero(2))) < 1e-10);
  // Nontrivial twist lifts the zero.
  CHECK(std::abs(z(delta, ThetaPoint({0.5, 0.0}))) > 1e-3);
}

TEST_CASE("zeta_det error estimate") {
  const auto v = zeta_det(funnel(), cplx(0.5, 1.0), ThetaPoint({0.25, 0.0}));
  CHECK(v.error_estimate < 1e-10);
  ZetaEvaluator z(funnel(), kDefaultOrder + 8);
  CHECK(v.value == z(cplx(0.5, 1.0), ThetaPoint({0.25, 0.0})));
}

TEST_CASE("determinant against periodic-orbit series") {
  const double delta = funnel_delta();
  SeriesOptions opt;
  opt.delta = delta;
  opt.n_max = 6;
  ZetaEvaluator z(funnel());
  for (cplx s : {cplx(delta + 1, 0), cplx(delta + 0.7, 0.3), cplx(delta + 0.7, -0.3)}) {
    for (const auto& t : {ThetaPoint::zero(2), ThetaPoint({0.5, 0}), ThetaPoint({1.0 / 3, 0.2})}) {
      const auto series = zeta_series(funnel(), s, t, classes12(), opt);
      CHECK(series.tail_bound < 1e-6);
      CHECK(std::abs(z(s, t) - series.value) < 1e-5);
    }
  }
}

TEST_CASE("series preconditions") {
  SeriesOptions opt;
  opt.delta = funnel_delta();
  CHECK_CODE(zeta_series(funnel(), cplx(opt.delta + 0.1, 0), ThetaPoint::zero(2), classes12(), opt),
             DomainTooClose);
  PrimitiveTable bare = classes12();
  bare.complete_word_length.reset();
  CHECK_CODE(zeta_series(funnel(), cplx(opt.delta + 1, 0), ThetaPoint::zero(2), bare, opt),
             IncompletePrimitives);
}

TEST_CASE("cylinder test mode") {
  const double l = 2.0;
  const auto g = cylinder(l);
  CylinderZeta z(g, 32);
  for (cplx s : {cplx(1.0, 0.0), cplx(0.3, 1.7), cplx(-0.6, -2.2), cplx(-1.4, 0.5)})
    CHECK(std::abs(z(s) - cylinder_closed_form(l, s)) < 1e-10);

  PrimitiveTable single;
  single.classes.push_back(make_class(g, Word{{1}}));
  single.exhaustive = true;
  CHECK(single.classes[0].length == doctest::Approx(l).epsilon(1e-12));
  SeriesOptions opt;
  opt.n_max = 60;
  for (cplx s : {cplx(1.0, 0.0), cplx(0.5, 3.0)}) {
    for (double th : {0.0, 0.3}) {
      const auto r = zeta_series(g, s, ThetaPoint({th}), single, opt);
      CHECK(r.tail_bound < 1e-12);
      CHECK(std::abs(r.value - cylinder_closed_form(l, s, th)) < 1e-12);
    }
  }
  CHECK_CODE(CylinderZeta(funnel()), InvalidArgument);
}

TEST_CASE("cover zeta factorizes over characters") {
  const cplx s(0.45, 1.2);
  ZetaEvaluator z(funnel());
  const cplx product = z(s, ThetaPoint::zero(2)) * z(s, ThetaPoint({0.5, 0.0}));
  const cplx cover = cover_zeta(funnel(), s, CoverSpec{{2}});
  CHECK(std::abs(cover - product) <= 1e-8 * std::abs(product));

  // Log-series of the cover equals the sum of twisted log-series.
  SeriesOptions opt;
  opt.delta = funnel_delta();
  const cplx s1(opt.delta + 1, 0.2);
  cplx log_sum = 0;
  for (const auto& t : character_grid(CoverSpec{{2, 2}}, 2))
    log_sum += zeta_series(funnel(), s1, t, classes12(), opt).log_value;
  const cplx direct = cover_zeta(funnel(), s1, CoverSpec{{2, 2}});
  CHECK(std::abs(std::exp(log_sum) - direct) < 1e-5);
}

TEST_CASE("largest real zero is delta") {
  CHECK(std::abs(largest_real_zero(funnel()) - funnel_delta()) < 1e-8);
  const auto g = three_funnel(3, 4);
  CHECK(std::abs(largest_real_zero(g) - hausdorff_dimension(g)) < 1e-8);
}
