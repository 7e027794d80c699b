#include <doctest.h>

#include <cmath>
#include <functional>
#include <stdexcept>

#include "natave/stats.hpp"

using namespace natave;

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double eps,
                        int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double eps) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 60);
}

// Quadrature oracle for the logarithmic integral: symmetric excision of the
// singularity at t = 1; the excised principal value contributes delta + O(delta^3).
double li_oracle(double x) {
  auto f = [](double t) { return t == 0.0 ? 0.0 : 1.0 / std::log(t); };
  double delta = 1e-3;
  double left = integrate(f, 0.0, 1.0 - delta, 1e-11);
  double right = integrate(f, 1.0 + delta, x, 1e-9 * x);
  return left + right + delta;
}

}  // namespace

TEST_CASE("li matches the quadrature oracle") {
  for (double x : {2.0, 10.0, 1000.0, 1e6}) {
    CHECK(li(x) == doctest::Approx(li_oracle(x)).epsilon(1e-7));
  }
  CHECK(li(2.0) == doctest::Approx(1.04516378011749).epsilon(1e-9));
  CHECK(li(1e6) == doctest::Approx(78627.5491594622).epsilon(1e-9));
  CHECK(li(1e6) < li(1e6 + 1));
  CHECK_THROWS_AS(li(1.5), std::invalid_argument);
}

TEST_CASE("prime counts against x/log x") {
  DensityTarget primes{TargetKind::word, "(())"};
  DensityReport r = count_matches(primes, 1000000, {1000000}, DensityModel::pnt);
  REQUIRE(r.checkpoints.size() == 1);
  CHECK(r.checkpoints[0].count == 78498);
  double expected_ratio = 78498.0 / (1e6 / std::log(1e6));
  CHECK(r.checkpoints[0].ratio == doctest::Approx(expected_ratio).epsilon(1e-12));
  CHECK(r.checkpoints[0].ratio == doctest::Approx(1.084).epsilon(2e-3));
}

TEST_CASE("prime count fluctuation stays inside the sqrt(x) log x band") {
  DensityTarget primes{TargetKind::word, "(())"};
  DensityReport r = count_matches(primes, 1000000, {1000, 10000, 100000, 1000000},
                                  DensityModel::li);
  for (const auto& c : r.checkpoints) {
    double x = static_cast<double>(c.x);
    CHECK(std::abs(static_cast<double>(c.count) - c.model_value) <
          std::sqrt(x) * std::log(x));
  }
}

TEST_CASE("squarefree density approaches 6/pi^2") {
  DensityTarget sf{TargetKind::squarefree, ""};
  double c = 6.0 / (M_PI * M_PI);
  DensityReport r = count_matches(sf, 1000000, {1000000}, DensityModel::constant, c);
  CHECK(r.checkpoints[0].count == 607926);
  CHECK(std::abs(r.checkpoints[0].ratio - 1.0) < 1e-3);
}

TEST_CASE("squarefree count decomposes into bushes") {
  DensityTarget sf{TargetKind::squarefree, ""};
  u64 total = count_matches(sf, 10000, {10000}, DensityModel::constant, 1.0)
                  .checkpoints[0].count;
  CHECK(total == 6083);

  u64 bush_sum = 0;
  for (int k = 0; k <= 5; ++k) {  // omega(n) <= 5 below 10^4
    std::string shape = "(";
    for (int i = 0; i < k; ++i) shape += "()";
    shape += ")";
    DensityTarget bush{TargetKind::word, shape};
    bush_sum += count_matches(bush, 10000, {10000}, DensityModel::constant, 1.0)
                    .checkpoints[0].count;
  }
  CHECK(bush_sum == total);
}

TEST_CASE("semiprime counts against x loglog x / log x") {
  DensityTarget semis{TargetKind::word, "(()())"};
  DensityReport r = count_matches(semis, 10000, {10000}, DensityModel::semiprime);
  CHECK(r.checkpoints[0].count == 2600);
  CHECK(r.checkpoints[0].ratio > 0.0);
  CHECK(std::isfinite(r.checkpoints[0].ratio));

  CHECK_THROWS_AS(count_matches(semis, 10000, {10}, DensityModel::semiprime),
                  std::invalid_argument);
}

TEST_CASE("canonical-shape targets count the whole class") {
  // class of t(12): planar forms ((())()) and (()(()))
  DensityTarget cls{TargetKind::canonical_shape, "((())())"};
  u64 class_count =
      count_matches(cls, 1000, {1000}, DensityModel::constant, 1.0).checkpoints[0].count;
  DensityTarget a{TargetKind::word, "((())())"};
  DensityTarget b{TargetKind::word, "(()(()))"};
  u64 split =
      count_matches(a, 1000, {1000}, DensityModel::constant, 1.0).checkpoints[0].count +
      count_matches(b, 1000, {1000}, DensityModel::constant, 1.0).checkpoints[0].count;
  CHECK(class_count == split);
}

TEST_CASE("count_matches argument checks") {
  DensityTarget primes{TargetKind::word, "(())"};
  CHECK_THROWS_AS(count_matches(primes, 100, {}, DensityModel::pnt),
                  std::invalid_argument);
  CHECK_THROWS_AS(count_matches(primes, 100, {50, 20}, DensityModel::pnt),
                  std::invalid_argument);
  CHECK_THROWS_AS(count_matches(primes, 100, {200}, DensityModel::pnt),
                  std::invalid_argument);
}

TEST_CASE("gap statistics") {
  Word prime = make_word({"(())"});
  GapReport r = gap_stats(prime, 100);
  CHECK(r.max_gap == 8);  // between 89 and 97
  u64 total = 0;
  for (const auto& [gap, count] : r.gap_histogram) total += count;
  CHECK(total == 25 - 1);  // pi(100) - 1 gaps

  GapReport unique = gap_stats(word_of(2, 2), 10000);
  CHECK(unique.gap_histogram.empty());
  CHECK(unique.max_gap == 0);

  Word twins = make_word({"(())", "*", "(())"});
  GapReport tg = gap_stats(twins, 100);
  // anchors 3,5,11,17,29,41,59,71
  u64 tcount = 0;
  for (const auto& [gap, count] : tg.gap_histogram) tcount += count;
  CHECK(tcount == 7);
  CHECK(tg.max_gap == 18);  // 41 -> 59
}

TEST_CASE("max prime gap is non-decreasing in the bound") {
  Word prime = make_word({"(())"});
  u64 previous = 0;
  for (u64 bound : {1000, 10000, 100000, 1000000}) {
    GapReport r = gap_stats(prime, bound);
    CHECK(r.max_gap >= previous);
    previous = r.max_gap;
  }
}
