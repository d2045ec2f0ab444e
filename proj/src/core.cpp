#include "stou/core.hpp"

namespace stou {

void validate_grid(const GridSpec& grid) {
  if (!(grid.dx > 0.0)) throw InvalidGrid("grid: dx must be > 0");
  if (!(grid.dt > 0.0)) throw InvalidGrid("grid: dt must be > 0");
  if (grid.n < 1) throw InvalidGrid("grid: n must be >= 1");
  if (grid.m < 1) throw InvalidGrid("grid: m must be >= 1");
  if (!std::isfinite(grid.x0)) throw InvalidGrid("grid: x0 must be finite");
  if (!std::isfinite(grid.t0)) throw InvalidGrid("grid: t0 must be finite");
}

}  // namespace stou
