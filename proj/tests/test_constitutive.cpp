#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "geolog/constitutive.hpp"
#include "geolog/geodesy.hpp"
#include "support.hpp"

namespace geolog {
namespace {

using test::diag;
using test::mat2;

std::vector<MaterialModel> energy_models() {
  return {MaterialModel::hencky(1.3, 2.1), MaterialModel::exp_hencky(0.8, 1.5, 0.6, 0.3),
          MaterialModel::svk(1.1, 3.0), MaterialModel::biot_linear(0.9, 2.5)};
}

TEST(Model, Validation) {
  EXPECT_THROW(MaterialModel::hencky(0.0, 1.0).validate(), Error);
  EXPECT_THROW(MaterialModel::hencky(1.0, -1.0).validate(), Error);
  EXPECT_THROW(MaterialModel::exp_hencky(1, 1, 0.2, 1).validate(), Error);
  EXPECT_THROW(MaterialModel::exp_hencky(1, 1, 1, 0.1).validate(), Error);
  EXPECT_NO_THROW(MaterialModel::exp_hencky(1, 1, 0.25, 0.125).validate());
  try {
    energy(MaterialModel::hencky(-1, 1), identity(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parameter_out_of_range);
  }
}

TEST(Model, NamesRoundtrip) {
  for (auto k : {ModelKind::hencky, ModelKind::exp_hencky, ModelKind::svk, ModelKind::biot_linear,
                 ModelKind::hill_family, ModelKind::neo_hooke_linear, ModelKind::almansi_signorini,
                 ModelKind::becker_biot}) {
    EXPECT_EQ(model_kind_from_string(to_string(k)), k);
  }
  EXPECT_FALSE(model_kind_from_string("ogden"));
}

TEST(Model, LameLambda) {
  const MaterialModel m = MaterialModel::hencky(1.5, 4.0);
  EXPECT_DOUBLE_EQ(m.lame_lambda(3), 3.0);
  MaterialModel explicit_lambda = m;
  explicit_lambda.lambda = 7.0;
  EXPECT_DOUBLE_EQ(explicit_lambda.lame_lambda(3), 7.0);
}

TEST(Energy, Examples) {
  EXPECT_EQ(energy(MaterialModel::hencky(1, 1), identity(3)), 0.0);
  const double mu = 1.7;
  const double l = 2.3;
  const Mat f = diag({l, 1 / std::sqrt(l), 1 / std::sqrt(l)});
  EXPECT_NEAR(energy(MaterialModel::hencky(mu, 5), f), 1.5 * mu * std::log(l) * std::log(l), 1e-14);
  const MaterialModel eh = MaterialModel::exp_hencky(2, 3, 0.5, 0.25);
  EXPECT_NEAR(energy(eh, identity(3)), 2 / 0.5 + 3 / (2 * 0.25), 1e-14);
  MaterialModel ehn = eh;
  ehn.normalized = true;
  EXPECT_NEAR(energy(ehn, identity(3)), 0.0, 1e-15);
  EXPECT_THROW(energy(MaterialModel::hencky(1, 1), diag({-1, 1, 1})), Error);
  EXPECT_THROW(energy(MaterialModel::hill(ModelKind::almansi_signorini, 1, 1), identity(3)), Error);
}

TEST(Energy, SvkAndBiotFormulas) {
  SampleStream rng(1, 0);
  const Mat f = random_gl_plus(rng, 3);
  const Mat id = identity(3);
  const double mu = 1.1;
  const double kappa = 3.0;
  const Mat e1 = 0.5 * (f.transpose() * f - id);
  EXPECT_NEAR(energy(MaterialModel::svk(mu, kappa), f),
              mu * dev(e1).squaredNorm() + 0.5 * kappa * e1.trace() * e1.trace(), 1e-10);
  const Mat u = sqrt_spd(f.transpose() * f) - id;
  const double lambda = kappa - 2 * mu / 3;
  EXPECT_NEAR(energy(MaterialModel::biot_linear(mu, kappa), f),
              mu * u.squaredNorm() + 0.5 * lambda * u.trace() * u.trace(), 1e-10);
}

TEST(Energy, OneDimensionalSections) {
  // One-dimensional curves: W_H = ln^2, W_eH - 1 = exp(ln^2) - 1 with kappa = 2.
  MaterialModel h = MaterialModel::hencky(1, 2);
  MaterialModel eh = MaterialModel::exp_hencky(1, 2, 1, 1, true);
  for (double l : {0.3, 0.8, 1.0, 1.5, 3.0}) {
    const Mat f = diag({l});
    const double ln = std::log(l);
    EXPECT_NEAR(energy(h, f), ln * ln, 1e-14);
    EXPECT_NEAR(energy(eh, f), std::exp(ln * ln) - 1, 1e-13);
    EXPECT_NEAR(cauchy_stress(kirchhoff_stress(h, f), f)(0, 0), 2 * ln / l, 1e-13);
    EXPECT_NEAR(cauchy_stress(kirchhoff_stress(eh, f), f)(0, 0), 2 * ln / l * std::exp(ln * ln), 1e-12);
    // The plotted stress is dW/dlambda, which equals the 1-D first Piola stress.
    EXPECT_NEAR(first_piola_fd(h, f)(0, 0), 2 * ln / l, 1e-7 * std::max(1.0, std::abs(2 * ln / l)));
  }
}

TEST(Energy, FrameIndifferenceAndIsotropy) {
  for (const auto& m : energy_models()) {
    for (std::uint64_t i = 0; i < 50; ++i) {
      SampleStream rng(2, i);
      const Mat f = random_gl_plus(rng, 3, -1.5, 1.5);
      const Mat q = haar_rotation(rng, 3);
      const Mat q2 = haar_rotation(rng, 3);
      const double w = energy(m, f);
      EXPECT_NEAR(energy(m, q * f * q2), w, 1e-10 * std::max(1.0, std::abs(w))) << to_string(m.kind);
    }
  }
}

TEST(Energy, VanishesOnRotations) {
  for (auto m : energy_models()) {
    m.normalized = true;
    for (std::uint64_t i = 0; i < 20; ++i) {
      SampleStream rng(3, i);
      EXPECT_NEAR(energy(m, haar_rotation(rng, 3)), 0.0, 1e-12) << to_string(m.kind);
    }
  }
}

TEST(Energy, LinearizationOrder) {
  const MaterialModel m = MaterialModel::hencky(1.4, 2.6);
  const MetricParams p(1.4, 1.0, 2.6);
  for (std::uint64_t i = 0; i < 10; ++i) {
    SampleStream rng(4, i);
    Mat h = random_matrix(rng, 3);
    h /= h.norm();
    const double quad = std::pow(linear_dist_to_so(h, p).distance(), 2);
    auto err = [&](double eps) { return std::abs(energy(m, identity(3) + eps * h) - quad * eps * eps); };
    const double order = std::log10(err(1e-2) / err(1e-3));
    EXPECT_GE(order, 2.7) << order;
  }
}

TEST(Kirchhoff, Examples) {
  const MaterialModel h = MaterialModel::hencky(1.2, 1.7);
  EXPECT_MAT_NEAR(kirchhoff_stress(h, identity(3)), Mat::Zero(3, 3), 0.0);
  const double a = 1.6;
  EXPECT_MAT_NEAR(kirchhoff_stress(h, a * identity(3)), 3 * 1.7 * std::log(a) * identity(3), 1e-14);
  EXPECT_THROW(kirchhoff_stress(MaterialModel::svk(1, 1), identity(3)), Error);
}

TEST(Kirchhoff, EquationOfState) {
  const MaterialModel h = MaterialModel::hencky(1.0, 1.0);
  for (double x : {0.2, 0.5, 1.0, 2.0, 4.0}) {
    const Mat f = std::cbrt(x) * identity(3);
    const Mat sigma = cauchy_stress(kirchhoff_stress(h, f), f);
    EXPECT_NEAR(sigma.trace() / 3, std::log(x) / x, 1e-14);
    EXPECT_MAT_NEAR(sigma, std::log(x) / x * identity(3), 1e-14);
  }
}

TEST(Kirchhoff, ExpHenckyMatchesLogDerivative) {
  // d/dt W(exp(log V + t H)) at t = 0 equals <tau, H> for symmetric H.
  const MaterialModel m = MaterialModel::exp_hencky(0.9, 1.8, 0.7, 0.4);
  for (std::uint64_t i = 0; i < 20; ++i) {
    SampleStream rng(5, i);
    const Mat s = sym(random_matrix(rng, 3, 0.6));
    const Mat hdir = sym(random_matrix(rng, 3));
    const double t = 1e-5;
    const double dw = (energy(m, mat_exp(s + t * hdir)) - energy(m, mat_exp(s - t * hdir))) / (2 * t);
    const Mat tau = kirchhoff_stress(m, mat_exp(s));
    EXPECT_NEAR(dw, tau.cwiseProduct(hdir).sum(), 1e-6 * std::max(1.0, tau.norm()));
  }
}

TEST(Kirchhoff, StressEnergyConsistency) {
  for (const auto& m : {MaterialModel::hencky(1.3, 2.1), MaterialModel::exp_hencky(0.8, 1.5, 0.6, 0.3)}) {
    for (std::uint64_t i = 0; i < 30; ++i) {
      SampleStream rng(6, i);
      const Mat f = random_gl_plus(rng, 3, -1.5, 1.5, 0.3, 3.0);
      const Mat tau = kirchhoff_stress(m, f);
      const Mat s1 = first_piola_fd(m, f, 1e-5);
      EXPECT_LE((s1 * f.transpose() - tau).norm(), 1e-5 * std::max(1.0, tau.norm())) << f;
    }
  }
  EXPECT_MAT_NEAR(first_piola_fd(MaterialModel::hencky(1, 1), identity(3)), Mat::Zero(3, 3), 1e-8);
}

TEST(Kirchhoff, DoublingLogV) {
  const MaterialModel h = MaterialModel::hencky(1.1, 0.7);
  for (std::uint64_t i = 0; i < 30; ++i) {
    SampleStream rng(7, i);
    const Mat f = random_gl_plus(rng, 3);
    const PolarDecomposition pd = polar_decompose(f);
    const Mat v2f = pd.left_stretch * f;  // left stretch V^2
    EXPECT_MAT_NEAR(kirchhoff_stress(h, v2f), 2 * kirchhoff_stress(h, f), 1e-10 * std::max(1.0, kirchhoff_stress(h, f).norm()));
  }
}

TEST(Svk, AnalyticFirstPiola) {
  const MaterialModel m = MaterialModel::svk(1.2, 2.4);
  for (std::uint64_t i = 0; i < 20; ++i) {
    SampleStream rng(8, i);
    const Mat f = random_gl_plus(rng, 3, -1.5, 1.5);
    const Mat a = svk_first_piola(m, f);
    EXPECT_LE((first_piola_fd(m, f) - a).norm(), 1e-6 * std::max(1.0, a.norm()));
  }
}

TEST(Cauchy, Examples) {
  const Mat f = mat2(1, 1, 0, 1);
  EXPECT_MAT_NEAR(cauchy_stress(Mat::Zero(2, 2), f), Mat::Zero(2, 2), 0.0);
  const Mat tau = mat2(1, 2, 2, 3);
  EXPECT_MAT_NEAR(cauchy_stress(tau, f), tau, 1e-15);
  EXPECT_THROW(cauchy_stress(tau, diag({-1, 1})), Error);
}

TEST(HillLaw, Examples) {
  StrainTensor e;
  e.value = Mat::Zero(3, 3);
  EXPECT_MAT_NEAR(hill_law({1.0}, e, 1, 2), Mat::Zero(3, 3), 0.0);
  const double eps = 0.01;
  e.value = eps * identity(3);
  EXPECT_MAT_NEAR(hill_law({0.0}, e, 1.5, 0.5), (2 * 1.5 + 3 * 0.5) * eps * identity(3), 1e-16);
  const double mu = 0.8;
  const double lambda = 1.3;
  const StrainTensor green = seth_hill(sqrt_spd(diag({4, 1, 1})), {1.0});
  EXPECT_MAT_NEAR(hill_law({1.0}, green, mu, lambda), mu * diag({3, 0, 0}) + 1.5 * lambda * identity(3), 1e-14);
}

TEST(HillLaw, NamedInstances) {
  SampleStream rng(9, 0);
  const Mat f = random_gl_plus(rng, 3);
  const PolarDecomposition pd = polar_decompose(f);
  const double mu = 1.0;
  const double kappa = 2.0;
  const double lambda = kappa - 2 * mu / 3;
  const Mat id = identity(3);
  const Mat e1 = 0.5 * (f.transpose() * f - id);
  EXPECT_MAT_NEAR(linear_law_stress(MaterialModel::svk(mu, kappa), f), 2 * mu * e1 + lambda * e1.trace() * id, 1e-12);
  const Mat b = f * f.transpose();
  const Mat nh = 0.5 * (b - id);
  EXPECT_MAT_NEAR(linear_law_stress(MaterialModel::hill(ModelKind::neo_hooke_linear, mu, kappa), f),
                  2 * mu * nh + lambda * nh.trace() * id, 1e-12);
  const Mat alm = 0.5 * (id - b.inverse());
  EXPECT_MAT_NEAR(linear_law_stress(MaterialModel::hill(ModelKind::almansi_signorini, mu, kappa), f),
                  2 * mu * alm + lambda * alm.trace() * id, 1e-12);
  const Mat lu = principal_log_spd(pd.right_stretch);
  EXPECT_MAT_NEAR(linear_law_stress(MaterialModel::hill(ModelKind::becker_biot, mu, kappa), f),
                  2 * mu * lu + lambda * lu.trace() * id, 1e-12);
  EXPECT_THROW(linear_law_stress(MaterialModel::exp_hencky(1, 1, 1, 1), f), Error);
}

TEST(Rates, VelocitySplitExamples) {
  const VelocitySplit z = velocity_split({identity(3), Mat::Zero(3, 3)});
  EXPECT_MAT_NEAR(z.l, Mat::Zero(3, 3), 0.0);
  const Mat s = mat2(1, 2, 2, -1);
  const VelocitySplit v = velocity_split({identity(2), s});
  EXPECT_MAT_NEAR(v.d, s, 1e-15);
  EXPECT_MAT_NEAR(v.spin, Mat::Zero(2, 2), 1e-15);
  // Rigid rotation Q(t) = exp(t W): D = 0, spin = W (by finite differences).
  const Mat w = hat3(Eigen::Vector3d(0.3, -0.2, 0.5));
  const double t = 0.7;
  const double h = 1e-6;
  const Mat qdot = (mat_exp((t + h) * w) - mat_exp((t - h) * w)) / (2 * h);
  const VelocitySplit r = velocity_split({mat_exp(t * w), qdot});
  EXPECT_LT(r.d.norm(), 1e-8);
  EXPECT_MAT_NEAR(r.spin, w, 1e-8);
}

TEST(Rates, JaumannExamples) {
  SampleStream rng(10, 0);
  const Mat xd = random_matrix(rng, 3);
  const Mat x = sym(random_matrix(rng, 3));
  const Mat w = skew(random_matrix(rng, 3));
  EXPECT_MAT_NEAR(zaremba_jaumann_rate(xd, x, Mat::Zero(3, 3)), xd, 0.0);
  EXPECT_MAT_NEAR(zaremba_jaumann_rate(xd, identity(3), w), xd, 1e-15);
  const Mat w2 = mat2(0, 1, -1, 0);
  const Mat x2 = 2.5 * identity(2) + 0.5 * w2 * w2;  // polynomial in w2, so they commute
  EXPECT_MAT_NEAR(zaremba_jaumann_rate(identity(2), x2, w2), identity(2), 1e-15);
}

TEST(Rates, OldroydExamples) {
  SampleStream rng(11, 0);
  const Mat xd = random_matrix(rng, 3);
  const Mat x = random_matrix(rng, 3);
  const OldroydRates r0 = oldroyd_rates(xd, x, Mat::Zero(3, 3));
  EXPECT_MAT_NEAR(r0.lower, xd, 0.0);
  EXPECT_MAT_NEAR(r0.upper, xd, 0.0);
  const OldroydRates r1 = oldroyd_rates(Mat::Zero(3, 3), Mat::Zero(3, 3), random_matrix(rng, 3));
  EXPECT_MAT_NEAR(r1.lower, Mat::Zero(3, 3), 0.0);
  EXPECT_MAT_NEAR(r1.upper, Mat::Zero(3, 3), 0.0);
}

MotionPath static_path() {
  return sample_motion([](double) { return Mat(diag({2, 1, 0.5})); }, [](double) { return Mat(Mat::Zero(3, 3)); },
                       0, 1, 10);
}

TEST(Rates, AlmansiIdentity) {
  EXPECT_EQ(almansi_rate_check(static_path()), 0.0);
  const Mat w = hat3(Eigen::Vector3d(0.1, 0.7, -0.4));
  const MotionPath rot =
      sample_motion([&](double t) { return mat_exp(t * w); }, [&](double t) { return Mat(w * mat_exp(t * w)); }, 0, 1, 1000);
  EXPECT_LT(almansi_rate_check(rot), 1e-6);
  const MotionPath stretch = sample_motion([](double t) { return Mat(diag({1 + t / 2, 1, 1})); },
                                           [](double) { return Mat(diag({0.5, 0, 0})); }, 0, 1, 1000);
  EXPECT_LT(almansi_rate_check(stretch), 1e-5);
}

TEST(Rates, AlmansiResidualIsSecondOrder) {
  Mat a(3, 3);
  a << 0.2, 0.5, 0.0, -0.3, 0.1, 0.4, 0.2, 0.0, -0.1;
  auto path = [&](std::size_t steps) {
    return sample_motion([&](double t) { return Mat(identity(3) + t * a); }, [&](double) { return a; }, 0, 1, steps);
  };
  const double r1 = almansi_rate_check(path(100));
  const double r2 = almansi_rate_check(path(200));
  EXPECT_GT(r1 / r2, 3.5);
}

TEST(Rates, CoaxialLogRate) {
  EXPECT_EQ(coaxial_lograte_check(static_path()), 0.0);
  const MotionPath dil = sample_motion([](double t) { return Mat((1 + t) * identity(3)); },
                                       [](double) { return Mat(identity(3)); }, 0, 1, 1000);
  EXPECT_LT(coaxial_lograte_check(dil), 1e-6);
  const MotionPath iso = sample_motion(
      [](double t) {
        const double l = 1 + t;
        return Mat(diag({l, 1 / l, 1}));
      },
      [](double t) {
        const double l = 1 + t;
        return Mat(diag({1, -1 / (l * l), 0}));
      },
      0, 1, 1000);
  EXPECT_LT(coaxial_lograte_check(iso), 1e-5);
  const MotionPath shear = sample_motion([](double t) { return Mat(mat2(1, t, 0, 1)); },
                                         [](double) { return Mat(mat2(0, 1, 0, 0)); }, 0, 1, 10);
  EXPECT_THROW(coaxial_lograte_check(shear), Error);
}

TEST(Shield, Examples) {
  const MaterialModel h = MaterialModel::hencky(1, 1);
  EXPECT_EQ(shield_transform(h, identity(3)), energy(h, identity(3)));
  const MaterialModel eh = MaterialModel::exp_hencky(1, 2, 0.5, 0.5);
  for (std::uint64_t i = 0; i < 20; ++i) {
    SampleStream rng(12, i);
    Mat f = random_gl_plus(rng, 3, -1.5, 1.5);
    f /= std::cbrt(f.determinant());
    EXPECT_NEAR(shield_transform(eh, f), energy(eh, f), 1e-9 * energy(eh, f));
  }
  const MaterialModel svk = MaterialModel::svk(1, 1);
  bool found = false;
  for (std::uint64_t i = 0; i < 100 && !found; ++i) {
    SampleStream rng(13, i);
    Mat f = random_gl_plus(rng, 3);
    f /= std::cbrt(f.determinant());
    found = std::abs(shield_transform(svk, f) - energy(svk, f)) > 1e-3;
  }
  EXPECT_TRUE(found);
}

TEST(Criscione, Examples) {
  const double c = 1.5;
  const CriscioneInvariants a = criscione_invariants(c * identity(3));
  EXPECT_NEAR(a.k1, 3 * std::log(c), 1e-14);
  EXPECT_NEAR(a.k2, 0.0, 1e-14);
  EXPECT_FALSE(a.k3);
  try {
    a.k3_value();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_distortion);
  }
  const double l = 2.2;
  const CriscioneInvariants b = criscione_invariants(diag({l, 1 / std::sqrt(l), 1 / std::sqrt(l)}));
  EXPECT_NEAR(b.k1, 0.0, 1e-14);
  EXPECT_NEAR(b.k2, std::sqrt(1.5) * std::log(l), 1e-14);
  Mat s = identity(3);
  s(0, 1) = 1;
  const CriscioneInvariants sh = criscione_invariants(sqrt_spd(s.transpose() * s));
  EXPECT_NEAR(sh.k1, 0.0, 1e-14);
  EXPECT_NEAR(sh.k3_value(), 0.0, 1e-14);
  EXPECT_THROW(criscione_invariants(diag({1, 2})), Error);
}

TEST(Criscione, K3Range) {
  const double bound = 1 / (3 * std::sqrt(6.0));  // det of a unit trace-free symmetric 3x3 matrix
  for (std::uint64_t i = 0; i < 200; ++i) {
    SampleStream rng(14, i);
    const CriscioneInvariants ci = criscione_invariants(random_spd(rng, 3, 1.0));
    EXPECT_LE(std::abs(ci.k3_value()), bound + 1e-12);
  }
}

TEST(TensionCompression, OmegaModelsSymmetricSvkNot) {
  for (const auto& m : {MaterialModel::hencky(1, 2), MaterialModel::exp_hencky(1, 2, 0.5, 0.25)}) {
    const auto rep = tension_compression_check(m, 200, 42);
    EXPECT_TRUE(rep.symmetric) << to_string(m.kind) << " gap " << rep.max_gap;
    EXPECT_EQ(rep.samples, 200u);
  }
  const auto svk = tension_compression_check(MaterialModel::svk(1, 2), 50, 42);
  EXPECT_FALSE(svk.symmetric);
  EXPECT_TRUE(svk.witness.has_value());
  const MaterialModel s = MaterialModel::svk(1, 1);
  EXPECT_GT(std::abs(energy(s, diag({2, 1, 1})) - energy(s, diag({0.5, 1, 1}))), 0.1);
}

TEST(RankOne, PlanarExpHenckySecondDifferences) {
  for (double k : {0.25, 1.0}) {
    const MaterialModel m = MaterialModel::exp_hencky(1, 1, k, 0.125);
    for (std::uint64_t i = 0; i < 300; ++i) {
      SampleStream rng(15, i);
      const Mat f = random_gl_plus(rng, 2, -1.5, 1.5, 0.2, 5.0);
      Eigen::Vector2d a(rng.normal(), rng.normal());
      Eigen::Vector2d b(rng.normal(), rng.normal());
      const Mat dir = a.normalized() * b.normalized().transpose();
      for (double t : {-0.1, 0.0, 0.1}) {
        const Mat f0 = f + (t - 0.05) * dir;
        const Mat f2 = f + (t + 0.05) * dir;
        if (f0.determinant() <= 0 || f2.determinant() <= 0 || (f + t * dir).determinant() <= 0) continue;
        EXPECT_GE(energy(m, f0) - 2 * energy(m, f + t * dir) + energy(m, f2), -1e-8);
      }
    }
  }
}

}  // namespace
}  // namespace geolog
