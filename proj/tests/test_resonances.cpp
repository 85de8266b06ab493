#include "hypzeta/resonances.hpp"

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

const ResonanceSolver& solver() {
  static const ResonanceSolver s(funnel());
  return s;
}

PhiOptions phi_options() {
  PhiOptions o;
  o.delta = funnel_delta();
  return o;
}

bool has_near(const std::vector<Resonance>& zs, cplx s, double tol) {
  return std::any_of(zs.begin(), zs.end(), [&](const Resonance& r) { return std::abs(r.s - s) < tol; });
}

}  // namespace

TEST_CASE("winding counts of elementary functions") {
  auto cubic = [](cplx s) { return s * s * s - 1.0; };
  CHECK(count_zeros(cubic, {-2, 2, -2, 2}) == 3);
  CHECK(count_zeros(cubic, {0.5, 1.5, -0.5, 0.5}) == 1);
  CHECK(count_zeros(cubic, {-2, 0, 0.1, 2}) == 1);
  CHECK(count_zeros(cubic, {2, 3, -1, 1}) == 0);
  auto double_root = [](cplx s) { return (s - 0.3) * (s - 0.3) * std::exp(s); };
  CHECK(count_zeros(double_root, {0, 1, -1, 1}) == 2);
  CHECK_CODE(count_zeros([](cplx s) { return s; }, {0, 1, -1, 1}), BoundaryZero);
  CHECK_CODE(count_zeros(cubic, {1, 0, 0, 1}), InvalidArgument);
}

TEST_CASE("winding count is additive") {
  auto f = [](cplx s) { return std::sin(3.0 * s) * std::exp(0.5 * s) + 0.2; };
  const Rect whole{-2.1, 1.9, -0.7, 0.9};
  const Rect left{-2.1, -0.13, -0.7, 0.9}, right{-0.13, 1.9, -0.7, 0.9};
  const int n = count_zeros(f, whole);
  CHECK(n > 2);
  CHECK(n == count_zeros(f, left) + count_zeros(f, right));
}

TEST_CASE("find_zeros on polynomials") {
  auto cubic = [](cplx s) { return s * s * s - 1.0; };
  auto res = find_zeros(cubic, {-2, 2, -2, 2});
  CHECK(res.complete);
  REQUIRE(res.zeros.size() == 3);
  for (int k = 0; k < 3; ++k)
    CHECK(has_near(res.zeros, std::polar(1.0, 2 * std::numbers::pi * k / 3), 1e-12));
  CHECK(res.zeros[0].s.imag() < res.zeros[1].s.imag());

  auto dbl = [](cplx s) { return (s - cplx(0.3, 0.2)) * (s - cplx(0.3, 0.2)) * (s + 0.5); };
  auto r2 = find_zeros(dbl, {-1, 1, -1, 1});
  CHECK(r2.complete);
  CHECK(r2.count == 3);
  REQUIRE(r2.zeros.size() == 2);
  const auto& d = r2.zeros[1].s.imag() > 0.1 ? r2.zeros[1] : r2.zeros[0];
  CHECK(d.multiplicity == 2);
  CHECK(std::abs(d.s - cplx(0.3, 0.2)) < 1e-7);
}

TEST_CASE("unresolved clusters are flagged") {
  auto pair = [](cplx s) { return (s - cplx(0.1, 0.1)) * (s - cplx(0.1 + 1e-6, 0.1)); };
  FindOptions opt;
  opt.max_depth = 6;
  opt.cluster_size = 1e-12;
  auto res = find_zeros(pair, {-1, 1, -1, 1}, opt);
  CHECK_FALSE(res.complete);
  CHECK_FALSE(res.note.empty());
}

TEST_CASE("newton refinement") {
  cplx s(1.3, 0.1);
  const double r = newton_refine([](cplx z) { return z * z - 2.0; }, s);
  CHECK(r < 1e-12);
  CHECK(std::abs(s - std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("cylinder lattice") {
  const double l = 2.0;
  CylinderZeta z(cylinder(l), 32);
  auto res = find_zeros([&](cplx s) { return z(s); }, {-1.5, 0.5, -7, 7});
  CHECK(res.complete);
  REQUIRE(res.zeros.size() == 10);
  for (int k = 0; k <= 1; ++k)
    for (int m = -2; m <= 2; ++m)
      CHECK(has_near(res.zeros, cplx(-k, 2 * std::numbers::pi * m / l), 1e-8));
}

TEST_CASE("no zeros right of delta") {
  const double delta = funnel_delta();
  CHECK(count_zeros(funnel(), {delta + 0.1, 3.0, -10, 10}, ThetaPoint::zero(2)) == 0);
  CHECK(count_zeros(funnel(), {delta + 0.1, 3.0, -10, 10}, ThetaPoint({0.3, 0.1})) == 0);
}

TEST_CASE("determinant zeros and their invariants") {
  const double delta = funnel_delta();
  const Rect rect{-0.05, delta + 0.05, -1.0, 1.0};
  for (const auto& theta : {ThetaPoint::zero(2), ThetaPoint({0.5, 0.0})}) {
    auto res = solver().find(rect, theta);
    if (theta[0] == 0.0) {
      // Double zero at the origin comes back as one cluster.
      REQUIRE(has_near(res.zeros, 0.0, 1e-8));
      CHECK(res.zeros[res.zeros.size() / 2 - 1].multiplicity == 2);
    }
    CHECK(res.complete);
    int total = 0;
    for (const auto& z : res.zeros) {
      total += z.multiplicity;
      CHECK(z.winding == z.multiplicity);
      CHECK(z.newton_residual < 1e-9);
      CHECK(z.s.real() <= delta + 1e-6);
      CHECK(z.det_error < 1e-8);
      CHECK(z.theta.coords() == theta.coords());
      // Z(conj s) = conj Z(s) for real characters.
      if (std::abs(z.s.imag()) > 1e-6) CHECK(has_near(res.zeros, std::conj(z.s), 1e-8));
    }
    CHECK(total == res.count);
  }
  // Known strip layout at theta = 0: delta plus complex pairs further left.
  auto strip = solver().find(StripWindow{}.rect(delta), ThetaPoint::zero(2));
  REQUIRE(strip.zeros.size() == 1);
  CHECK(std::abs(strip.zeros[0].s - delta) < 1e-10);
  auto upper = solver().find({0.05, 0.2, 0.8, 1.0}, ThetaPoint::zero(2));
  REQUIRE(upper.zeros.size() == 1);
  CHECK(std::abs(upper.zeros[0].s - cplx(0.0995, 0.925)) < 5e-3);
}

TEST_CASE("real zero continuation") {
  const auto opt = phi_options();
  const auto path = straight_path({0.08, 0.0});
  CHECK(path.front().distance_to_lattice() == 0.0);
  const auto trace = trace_phi(solver(), path, opt);
  REQUIRE(trace.size() == path.size());
  CHECK(std::abs(trace.front().phi - opt.delta) < 1e-10);
  for (std::size_t i = 1; i < trace.size(); ++i) {
    CHECK(trace[i].phi < trace[i - 1].phi);
    CHECK(trace[i].strip_count == 1);
  }
  CHECK(std::abs(phi_at(solver(), {0.05, 0.03}, opt) - phi_at(solver(), {-0.05, -0.03}, opt)) < 1e-9);
  CHECK(std::abs(phi_at(solver(), {0.05, 0.0}, opt) - phi_at(solver(), {0.0, 0.05}, opt)) < 1e-9);
  CHECK_CODE(trace_phi(solver(), straight_path({0.2, 0.0}), opt), LostZero);
  CHECK_CODE(trace_phi(solver(), {ThetaPoint({0.1, 0.0})}, opt), InvalidArgument);
}

TEST_CASE("hessian of phi at the origin") {
  const auto opt = phi_options();
  const auto h1 = hessian_phi(solver(), 0.01, opt);
  const auto h2 = hessian_phi(solver(), 0.005, opt);
  CHECK(h1.hessian.rows() == 2);
  CHECK(std::abs(h1.hessian(0, 1) - h1.hessian(1, 0)) < 1e-6);
  CHECK(h1.eigenvalues.maxCoeff() < 0.0);
  CHECK(h1.gradient.norm() < 1e-5);
  CHECK((h1.hessian - h2.hessian).norm() < 1e-2 * h1.hessian.norm());
  CHECK_CODE(hessian_phi(solver(), 0.5, opt), InvalidArgument);
}

TEST_CASE("cover scan is the union over characters") {
  const double delta = funnel_delta();
  const Rect rect{delta - 0.12, delta + 0.05, -1.0, 1.0};
  auto scan = cover_resonances(funnel(), CoverSpec{{2}}, rect);
  CHECK(scan.complete);
  std::vector<Resonance> expected;
  for (const auto& t : character_grid(CoverSpec{{2}}, 2)) {
    auto r = solver().find(rect, t);
    expected.insert(expected.end(), r.zeros.begin(), r.zeros.end());
  }
  REQUIRE(scan.zeros.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(scan.zeros[i].s == expected[i].s);
    CHECK(scan.zeros[i].theta.coords() == expected[i].theta.coords());
  }
}

TEST_CASE("cover real zeros match the continued zero") {
  const auto opt = phi_options();
  auto scan = cover_resonances(funnel(), CoverSpec{{16}}, opt.window.rect(opt.delta));
  CHECK(scan.complete);
  int checked = 0;
  for (const auto& z : scan.zeros) {
    if (std::abs(z.s.imag()) > kRealTolerance) continue;
    double t = z.theta[0];
    if (t > 0.5) t -= 1.0;
    if (std::abs(t) > 0.1) continue;
    CHECK(std::abs(z.s.real() - phi_at(solver(), {t, 0.0}, opt)) < 1e-8);
    ++checked;
  }
  CHECK(checked == 3);
}

TEST_CASE("histograms") {
  std::vector<Resonance> zs(4);
  zs[0].s = 0.1;
  zs[1].s = 0.19;
  zs[2].s = cplx(0.15, 0.3);
  zs[3].s = 0.2;
  auto h = histogram_of(zs, 0.1, 0.2, 4, 0.5);
  CHECK(h.points == 3);
  CHECK(h.total() == doctest::Approx(1.5));
  CHECK(h.mass[0] == doctest::Approx(0.5));
  CHECK(h.mass[3] == doctest::Approx(1.0));

  const double delta = funnel_delta();
  auto m = spectral_measure(funnel(), CoverSpec{{4}}, delta, StripWindow{0.05, 1.0}, 4);
  CHECK(m.total() <= 1.0 + 1e-12);
  CHECK(m.mass.back() >= 0.25 - 1e-12);
}

TEST_CASE("window calibration") {
  const double delta = funnel_delta();
  const auto sample = calibration_sample(1, 2, 4);
  REQUIRE(sample.size() == 3);
  CHECK(sample[2][0] == 0.5);
  auto cal = calibrate_window(funnel(), delta, sample, {0.12, 0.05}, {1.0});
  REQUIRE(cal.table.size() == 2);
  // The complex pair near Re 0.1 disqualifies the wide window.
  CHECK_FALSE(cal.table[0].accepted);
  CHECK(cal.table[1].accepted);
  CHECK(cal.eps == 0.05);
  CHECK(cal.height == 1.0);
}
