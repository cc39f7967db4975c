#include "geolog/random.hpp"

#include <cmath>

namespace geolog {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index)
    : engine_(splitmix64(seed ^ splitmix64(0x9e3779b97f4a7c15ULL * (index + 1)))) {}

double SampleStream::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double SampleStream::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Mat random_matrix(SampleStream& rng, int n, double scale) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(-scale, scale);
  return m;
}

Mat random_gl_plus(SampleStream& rng, int n, double lo, double hi, double det_lo, double det_hi) {
  for (;;) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(lo, hi);
    const double d = m.determinant();
    if (d >= det_lo && d <= det_hi) return m;
  }
}

Mat haar_rotation(SampleStream& rng, int n) {
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

Mat random_spd(SampleStream& rng, int n, double spread) {
  const Mat q = haar_rotation(rng, n);
  Vec d(n);
  for (int i = 0; i < n; ++i) d[i] = std::exp(rng.uniform(-spread, spread));
  return sym(q * d.asDiagonal() * q.transpose());
}

}  // namespace geolog
