#include <doctest.h>

#include <limits>
#include <stou/core.hpp>

using namespace stou;

TEST_CASE("ModelParams validates positivity") {
  CHECK_NOTHROW(ModelParams(1.0, 1.0));
  CHECK_THROWS_AS(ModelParams(0.0, 1.0), Error);
  CHECK_THROWS_AS(ModelParams(-1.0, 1.0), Error);
  CHECK_THROWS_AS(ModelParams(1.0, 0.0), Error);
  CHECK_THROWS_AS(ModelParams(1.0, -2.0), Error);
}

TEST_CASE("GridSpec coordinates are 1-based affine") {
  GridSpec g{1.5, -2.0, 0.25, 0.5, 5, 4};
  CHECK(g.x(1) == 1.5);
  CHECK(g.x(5) == 2.5);
  CHECK(g.t(1) == -2.0);
  CHECK(g.t(4) == -0.5);
}

TEST_CASE("validate_grid rejects bad extents and spacings") {
  GridSpec g{0, 0, 1, 1, 2, 2};
  CHECK_NOTHROW(validate_grid(g));
  g.dx = 0.0;
  CHECK_THROWS_AS(validate_grid(g), InvalidGrid);
  g.dx = 1.0;
  g.dt = -0.5;
  CHECK_THROWS_AS(validate_grid(g), InvalidGrid);
  g.dt = 1.0;
  g.n = 0;
  CHECK_THROWS_AS(validate_grid(g), InvalidGrid);
  g.n = 2;
  g.m = 0;
  CHECK_THROWS_AS(validate_grid(g), InvalidGrid);
  g.m = 2;
  g.x0 = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate_grid(g), InvalidGrid);
}

TEST_CASE("FieldData checks matrix extents against the grid") {
  GridSpec g{0, 0, 1, 1, 3, 2};
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(3, 2);
  CHECK_NOTHROW(FieldData(g, v));

  Eigen::MatrixXd wrong = Eigen::MatrixXd::Zero(2, 2);
  CHECK_THROWS_AS(FieldData(g, wrong), Error);

  BoolMatrix wrong_mask = BoolMatrix::Constant(3, 3, true);
  CHECK_THROWS_AS(FieldData(g, v, wrong_mask), Error);
}

TEST_CASE("FieldData valid_count counts the mask") {
  GridSpec g{0, 0, 1, 1, 2, 2};
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(2, 2);
  BoolMatrix m(2, 2);
  m << true, false, false, true;
  FieldData f(g, v, m);
  CHECK(f.valid_count() == 2);
  FieldData full(g, v);
  CHECK(full.valid_count() == 4);
}
