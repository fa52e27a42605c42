#include <cmath>

#include "doctest.h"
#include "fch/forcing.h"

using namespace fch;

TEST_CASE("named forcing fields") {
  auto c = ForcingField::constant(2.0);
  CHECK(c({0.3, 0.7}) == doctest::Approx(2.0));
  CHECK(c.integral() == 2.0);
  auto m = ForcingField::cosine(0.5, 1, 2);
  CHECK(m({0.2, 0.3}) == doctest::Approx(0.5 * std::cos(M_PI * 0.2) * std::cos(2 * M_PI * 0.3)));
  CHECK(m.integral() == 0.0);
  CHECK(m.laplacian({0.2, 0.3}) == doctest::Approx(-5 * M_PI * M_PI * m({0.2, 0.3})));
  auto g = ForcingField::gaussian(1.0, {0.5, 0.45}, 0.1);
  // a bump well inside the box is reproduced by its projection
  CHECK(std::abs(g({0.5, 0.45}) - 1.0) < 1e-8);
  CHECK(std::abs(g({0.6, 0.5}) - std::exp(-0.0125 / 0.02)) < 1e-8);
  auto line = [](double x0, double s) {
    return s * std::sqrt(M_PI / 2) * (std::erf((1 - x0) / (s * std::sqrt(2.0))) + std::erf(x0 / (s * std::sqrt(2.0))));
  };
  CHECK(std::abs(g.integral() - line(0.5, 0.1) * line(0.45, 0.1)) < 1e-8);
  CHECK(g.wall_flux() < 1e-10);
  CHECK(ForcingField::gaussian(1.0, {0.1, 0.2}, 0.15).wall_flux() < 1e-10);
  auto s = c + m * 2.0;
  CHECK(s({0.4, 0.1}) == doctest::Approx(2.0 + 2 * m({0.4, 0.1})));
  auto grid = s.sample(32, 16);
  CHECK(grid(3, 5) == doctest::Approx(s({grid.x(3), grid.y(5)})));
  CHECK(ForcingField().is_zero());
}

TEST_CASE("forcing expansion") {
  ForcingExpansion e;
  e.G1 = {ForcingField::constant(1.0), ForcingField::cosine(1.0, 1, 0)};
  e.G2 = {ForcingField::cosine(2.0, 0, 1)};
  auto g1 = e.G1_at(0.1);
  CHECK(g1({0.0, 0.5}) == doctest::Approx(1.1));
  CHECK(e.G2_at(0.1)({0.5, 0.0}) == doctest::Approx(2.0));
  CHECK(e.negated().G1_at(0.1)({0.0, 0.5}) == doctest::Approx(-1.1));
  CHECK(limit_of(e).G10({0.3, 0.3}) == doctest::Approx(1.0));
  CHECK(e.g2(3).is_zero());
}
