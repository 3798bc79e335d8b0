#include "schedfree/core.hpp"

#include <string>

#include "doctest.h"

using namespace schedfree;

TEST_CASE("points are flat vectors with span views") {
  Point p(3, 1.5);
  CHECK(p.size() == 3);
  CHECK(p[2] == 1.5);
  p[0] = -2.0;
  CHECK(p.span()[0] == -2.0);
  const Point q(std::vector<double>{1.0, 2.0});
  CHECK(q.span().size() == 2);
  CHECK(q[1] == 2.0);
}

TEST_CASE("trace records default to absent optional fields") {
  TraceRecord rec;
  CHECK(!rec.bound.has_value());
  CHECK(!rec.stepsize_raw.has_value());
  CHECK(rec.t == 0);
}

TEST_CASE("distance is Euclidean") {
  const std::vector<double> a{0.0, 0.0};
  const std::vector<double> b{3.0, 4.0};
  CHECK(distance(a, b) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(distance(a, a) == 0.0);
}

TEST_CASE("convex combination hits its endpoints exactly") {
  const std::vector<double> a{1.0, -2.0, 0.25};
  const std::vector<double> b{0.5, 3.0, -1.0};
  std::vector<double> out(3);
  convex_combination(out, a, b, 0.0);
  CHECK(out == a);
  convex_combination(out, a, b, 1.0);
  CHECK(out == b);
  convex_combination(out, a, b, 0.5);
  CHECK(out[0] == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("divergence errors carry the failing step") {
  const diverged_error err(17);
  CHECK(err.step == 17);
  CHECK(std::string(err.what()).find("17") != std::string::npos);
}
