#pragma once

#include "matgroup.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace picard {

using cd = std::complex<double>;
using CMat3 = std::array<std::array<cd, 3>, 3>;

struct BallCoord {
  cd z1, z2;
  double ball_value() const { return 2 * z1.real() + std::norm(z2); }
  bool interior() const { return ball_value() < 0; }
};

inline CMat3 to_complex(const Mat3& m) {
  CMat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m(i, j).embed<double>();
  return r;
}

inline std::array<cd, 3> apply_projective(const CMat3& g, const std::array<cd, 3>& v) {
  std::array<cd, 3> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i] += g[i][j] * v[j];
  return r;
}

inline std::optional<BallCoord> act_ball(const CMat3& g, const BallCoord& p) {
  auto e = apply_projective(g, {p.z1, p.z2, 1.0});
  if (std::abs(e[2]) < 1e-14) return std::nullopt;
  return BallCoord{e[0] / e[2], e[1] / e[2]};
}

inline cd det3(const CMat3& g) {
  return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
         g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

// points with 2 Re z1 + |z2|^2 <= -margin
inline std::vector<BallCoord> random_interior(std::size_t n, std::uint64_t seed, double margin = 0.3) {
  std::mt19937_64 gen(seed);
  auto uni = [&] { return std::ldexp(static_cast<double>(gen() >> 11), -53); };
  std::vector<BallCoord> pts;
  while (pts.size() < n) {
    double u = margin + 1.5 * uni();
    cd z2(uni() - 0.5, uni() - 0.5);
    double t = 1.2 * (uni() - 0.5);
    BallCoord p{cd(-(u + std::norm(z2)) / 2, t), z2};
    if (p.ball_value() <= -margin) pts.push_back(p);
  }
  return pts;
}

}  // namespace picard
