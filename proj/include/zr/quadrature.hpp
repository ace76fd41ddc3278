#ifndef ZR_QUADRATURE_HPP
#define ZR_QUADRATURE_HPP

#include <array>
#include <cstddef>

namespace zr {

// 7-point Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr std::array<double, 7> kGL7Nodes = {
    -0.9491079123427585245261897, -0.7415311855993944398638648,
    -0.4058451513773971669066064, 0.0,
    0.4058451513773971669066064,  0.7415311855993944398638648,
    0.9491079123427585245261897};
inline constexpr std::array<double, 7> kGL7Weights = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020,
    0.3818300505051189449503698, 0.2797053914892766679014678,
    0.1294849661688696932706114};

// Composite 7-point Gauss-Legendre over [a, b] with ncells equal cells.
// Exact to machine precision for the smooth profiles used here.
template <typename F>
double integrate_gl(F&& f, double a, double b, std::size_t ncells = 256) {
  if (!(b > a)) return 0.0;
  const double dx = (b - a) / static_cast<double>(ncells);
  double total = 0.0;
  for (std::size_t c = 0; c < ncells; ++c) {
    const double x0 = a + dx * static_cast<double>(c);
    const double mid = x0 + 0.5 * dx;
    const double half = 0.5 * dx;
    double cell = 0.0;
    for (std::size_t i = 0; i < kGL7Nodes.size(); ++i)
      cell += kGL7Weights[i] * f(mid + half * kGL7Nodes[i]);
    total += cell * half;
  }
  return total;
}

}  // namespace zr

#endif
