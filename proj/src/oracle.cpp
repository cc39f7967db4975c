#include "geolog/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

#include "geolog/geodesy.hpp"
#include "geolog/optimize.hpp"
#include "geolog/random.hpp"

namespace geolog {

void OracleConfig::validate() const {
  if (nodes < 4) throw Error(ErrorCode::parameter_out_of_range, "OracleConfig: nodes must be >= 4");
  if (!(tol > 0.0)) throw Error(ErrorCode::parameter_out_of_range, "OracleConfig: tol must be > 0");
  if (samples == 0 || max_iters == 0) {
    throw Error(ErrorCode::parameter_out_of_range, "OracleConfig: samples and max_iters must be > 0");
  }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs fn(i) for i in [0, count) on up to `threads` workers. Results land in
// index order, so the caller's reduction is independent of scheduling.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, unsigned threads, Fn&& fn) {
  std::vector<T> out(count);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

double radical_inverse(std::size_t index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

// Halton points mapped into the ball of radius pi (axis-angle coordinates);
// point 0 is the origin.
std::vector<Eigen::Vector3d> axis_angle_starts(std::size_t count) {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(count);
  pts.emplace_back(Eigen::Vector3d::Zero());
  for (std::size_t i = 1; pts.size() < count; ++i) {
    const double r = 0.95 * std::numbers::pi * std::cbrt(radical_inverse(i, 2));
    const double z = 2.0 * radical_inverse(i, 3) - 1.0;
    const double phi = 2.0 * std::numbers::pi * radical_inverse(i, 5);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    pts.emplace_back(r * Eigen::Vector3d(s * std::cos(phi), s * std::sin(phi), z));
  }
  return pts;
}

Mat planar_rotation(double theta) {
  Mat q(2, 2);
  q << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return q;
}

Mat rodrigues(const Eigen::Vector3d& w) {
  const double theta = w.norm();
  const Mat k = hat3(w);
  if (theta < 1e-12) return Mat::Identity(3, 3) + k;
  const double a = std::sin(theta) / theta;
  const double b = (1.0 - std::cos(theta)) / (theta * theta);
  return Mat::Identity(3, 3) + a * k + b * k * k;
}

// ---------------------------------------------------------------------------
// Discrete geodesic path solver.

template <int Dim>
class PathSolver {
 public:
  using M = Eigen::Matrix<double, Dim, Dim>;

  PathSolver(const Mat& f, const MetricParams& p, const OracleConfig& cfg, std::optional<Mat> pinned)
      : n_(static_cast<int>(f.rows())),
        f_(f),
        p_(p),
        cfg_(cfg),
        pinned_(std::move(pinned)),
        det_floor_(0.05 * std::min(1.0, f.determinant())) {}

  PathResult solve() {
    std::vector<std::size_t> levels;
    for (std::size_t s = cfg_.nodes; s >= 2; s /= 2) {
      levels.push_back(s);
      if (s % 2 != 0) break;
    }
    std::reverse(levels.begin(), levels.end());

    // Multi-start on the coarse level over the endpoint.
    std::vector<Eigen::VectorXd> starts = endpoint_starts();
    double best_energy = kInf;
    double best_coarse = 0.0;
    std::vector<M> best_path;
    Eigen::VectorXd best_w;
    for (const auto& w0 : starts) {
      std::vector<M> path;
      Eigen::VectorXd w = w0;
      if (!linear_init(path, w, levels.front())) continue;
      relax(path, w);
      const double coarse = length(path);
      if (levels.size() > 1) {
        refine(path);
        relax(path, w);
      }
      const double e = energy(path);
      if (e < best_energy) {
        best_energy = e;
        best_coarse = coarse;
        best_path = path;
        best_w = w;
      }
    }
    if (best_path.empty()) {
      throw Error(ErrorCode::non_convergence, "geodesic oracle: no feasible initial path");
    }

    double coarse = levels.size() > 1 ? best_coarse : length(best_path);
    for (std::size_t li = 2; li < levels.size(); ++li) {
      coarse = length(best_path);
      refine(best_path);
      relax(best_path, best_w);
    }
    PathResult res;
    res.segments = best_path.size() - 1;
    res.length = length(best_path);
    res.coarse_length = coarse;
    res.discretization_bound = std::max(std::abs(res.coarse_length - res.length), 1e-9);
    res.endpoint = Mat(best_path.back());
    return res;
  }

 private:
  int n_;
  Mat f_;
  MetricParams p_;
  OracleConfig cfg_;
  std::optional<Mat> pinned_;
  double det_floor_;

  int endpoint_params() const { return n_ * (n_ - 1) / 2; }

  double weighted_sq(const M& x) const {
    const double tr = x.trace();
    const M s = 0.5 * (x + x.transpose());
    const M k = 0.5 * (x - x.transpose());
    const double dev_sq = s.squaredNorm() - tr * tr / n_;
    return p_.mu * dev_sq + p_.mu_c * k.squaredNorm() + 0.5 * p_.kappa * tr * tr;
  }

  double segment_sq(const M& a, const M& b) const {
    const M mid = 0.5 * (a + b);
    const double d = mid.determinant();
    if (!(d > det_floor_)) return kInf;
    M x;
    if constexpr (Dim == Eigen::Dynamic) {
      x = mid.partialPivLu().solve(M(b - a));
    } else {
      x = mid.inverse() * (b - a);
    }
    return weighted_sq(x);
  }

  double energy(const std::vector<M>& path) const {
    double e = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) e += segment_sq(path[i], path[i + 1]);
    return e * static_cast<double>(path.size() - 1);
  }

  double length(const std::vector<M>& path) const {
    double l = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) l += std::sqrt(segment_sq(path[i], path[i + 1]));
    return l;
  }

  M rotation(const Eigen::VectorXd& w) const {
    if (pinned_) return M(*pinned_);
    if (n_ == 1) return M(Mat::Identity(1, 1));
    if (n_ == 2) return M(planar_rotation(w[0]));
    if (n_ == 3) return M(rodrigues(Eigen::Vector3d(w[0], w[1], w[2])));
    Mat k = Mat::Zero(n_, n_);
    int idx = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        k(i, j) = w[idx];
        k(j, i) = -w[idx];
        ++idx;
      }
    return M(mat_exp(k));
  }

  std::vector<Eigen::VectorXd> endpoint_starts() const {
    std::vector<Eigen::VectorXd> out;
    const int m = endpoint_params();
    if (pinned_ || m == 0) {
      out.emplace_back(Eigen::VectorXd::Zero(m));
      return out;
    }
    if (n_ == 2) {
      for (int j = 0; j < 8; ++j) {
        Eigen::VectorXd w(1);
        w[0] = -std::numbers::pi + 2.0 * std::numbers::pi * j / 8.0;
        out.push_back(w);
      }
      return out;
    }
    if (n_ == 3) {
      for (const auto& v : axis_angle_starts(20)) out.emplace_back(Eigen::VectorXd(v));
      return out;
    }
    SampleStream rng(cfg_.seed, 0x5eed);
    out.emplace_back(Eigen::VectorXd::Zero(m));
    for (int j = 1; j < 12; ++j) {
      Eigen::VectorXd w(m);
      for (int i = 0; i < m; ++i) w[i] = rng.uniform(-1.5, 1.5);
      out.push_back(w);
    }
    return out;
  }

  bool linear_init(std::vector<M>& path, const Eigen::VectorXd& w, std::size_t segments) const {
    const M a(f_);
    const M b = rotation(w);
    path.assign(segments + 1, a);
    for (std::size_t i = 1; i <= segments; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(segments);
      path[i] = (1.0 - t) * a + t * b;
    }
    for (std::size_t i = 0; i < segments; ++i) {
      if (!std::isfinite(segment_sq(path[i], path[i + 1]))) return false;
      if (!(path[i + 1].determinant() > det_floor_)) return false;
    }
    return true;
  }

  void refine(std::vector<M>& path) const {
    std::vector<M> fine;
    fine.reserve(2 * path.size() - 1);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      fine.push_back(path[i]);
      fine.push_back(0.5 * (path[i] + path[i + 1]));
    }
    fine.push_back(path.back());
    path = std::move(fine);
  }

  static Eigen::VectorXd flatten(const M& x) {
    return Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
  }

  M unflatten(const Eigen::VectorXd& v) const {
    M x;
    if constexpr (Dim == Eigen::Dynamic) x.resize(n_, n_);
    std::copy(v.data(), v.data() + v.size(), x.data());
    return x;
  }

  // Gauss-Seidel sweeps: every interior node, then the free endpoint, each
  // solved by a local Nelder-Mead on its own two (or one) segments.
  void relax(std::vector<M>& path, Eigen::VectorXd& w) const {
    const std::size_t last = path.size() - 1;
    double prev = energy(path);
    for (std::size_t sweep = 0; sweep < cfg_.max_iters; ++sweep) {
      for (std::size_t i = 1; i < last; ++i) {
        const M& left = path[i - 1];
        const M& right = path[i + 1];
        const auto local = [&](const Eigen::VectorXd& v) {
          const M x = unflatten(v);
          if (!(x.determinant() > det_floor_)) return kInf;
          return segment_sq(left, x) + segment_sq(x, right);
        };
        NelderMeadOptions opts;
        opts.initial_step = 0.1 * std::max(1e-6, (right - left).norm() / std::sqrt(static_cast<double>(n_ * n_)));
        opts.ftol_rel = 1e-15;
        opts.ftol_abs = 1e-300;
        opts.xtol = 1e-11 * std::max(1.0, path[i].norm());
        opts.max_evals = 4000;
        const auto res = nelder_mead(local, flatten(path[i]), opts);
        if (res.value <= local(flatten(path[i]))) path[i] = unflatten(res.x);
      }
      if (!pinned_ && endpoint_params() > 0) {
        const M& left = path[last - 1];
        const auto local = [&](const Eigen::VectorXd& v) { return segment_sq(left, rotation(v)); };
        NelderMeadOptions opts;
        opts.initial_step = 0.1 * std::max(1e-6, (path[last] - left).norm());
        opts.ftol_rel = 1e-15;
        opts.xtol = 1e-12;
        opts.max_evals = 4000;
        const auto res = nelder_mead(local, w, opts);
        if (res.value <= local(w)) {
          w = res.x;
          path[last] = rotation(w);
        }
      }
      const double e = energy(path);
      if (prev - e <= 1e-13 * std::max(e, 1e-300)) break;
      prev = e;
    }
  }
};

PathResult run_path_solver(const Mat& f, const MetricParams& p, const OracleConfig& cfg,
                           const std::optional<Mat>& pinned) {
  switch (f.rows()) {
    case 2: return PathSolver<2>(f, p, cfg, pinned).solve();
    case 3: return PathSolver<3>(f, p, cfg, pinned).solve();
    default: return PathSolver<Eigen::Dynamic>(f, p, cfg, pinned).solve();
  }
}

double relative(double oracle, double closed) {
  return (oracle - closed) / std::max(std::abs(closed), 1e-12);
}

struct LogSample {
  bool admissible = false;
  double value = 0.0;
  Mat q;
};

template <class Measure>
OracleVerdict sampled_logmin(const std::string& claim, const Mat& f, const OracleConfig& cfg,
                             double closed, Measure&& measure) {
  const int n = static_cast<int>(f.rows());
  const auto samples = parallel_map<LogSample>(cfg.samples, cfg.threads, [&](std::size_t i) {
    SampleStream rng(cfg.seed, i);
    LogSample s;
    s.q = haar_rotation(rng, n);
    try {
      s.value = measure(sym(principal_log(s.q.transpose() * f)));
      s.admissible = std::isfinite(s.value);
    } catch (const Error&) {
      s.admissible = false;
    }
    return s;
  });

  OracleVerdict v;
  v.claim = claim;
  v.closed_form_value = closed;
  v.oracle_value = kInf;
  bool sound = true;
  for (const auto& s : samples) {
    if (!s.admissible) continue;
    ++v.evaluations;
    if (s.value < closed - 1e-9) sound = false;
    if (s.value < v.oracle_value) {
      v.oracle_value = s.value;
      v.witness = s.q;
    }
  }
  const Mat r = polar_decompose(f).rotation;
  const double at_polar = measure(sym(principal_log(r.transpose() * f)));
  const bool attained = std::abs(at_polar - closed) <= 1e-8;
  if (v.evaluations == 0) v.oracle_value = at_polar;
  v.relative_gap = relative(v.oracle_value, closed);
  v.passed = sound && attained;
  return v;
}

}  // namespace

OracleVerdict grioli_oracle(const Mat& f, const OracleConfig& cfg) {
  require_positive_det(f, "grioli_oracle");
  const int n = static_cast<int>(f.rows());
  const Mat id = Mat::Identity(n, n);
  const DistanceReport closed = euclid_dist_to_so(f);

  Mat best_q;
  double best = kInf;
  std::size_t evals = 0;
  if (n == 2) {
    const auto objective = [&](double theta) {
      ++evals;
      return (planar_rotation(theta).transpose() * f - id).squaredNorm();
    };
    constexpr int kSweep = 3600;
    const double step = 2.0 * std::numbers::pi / kSweep;
    double best_theta = 0.0;
    for (int j = 0; j < kSweep; ++j) {
      const double theta = -std::numbers::pi + j * step;
      const double v = objective(theta);
      if (v < best) {
        best = v;
        best_theta = theta;
      }
    }
    const ScalarMinimum m = golden_section(objective, best_theta - step, best_theta + step, 1e-13);
    if (m.value <= best) {
      best = m.value;
      best_theta = m.x;
    }
    best_q = planar_rotation(best_theta);
  } else if (n == 3) {
    const auto objective = [&](const Eigen::VectorXd& w) {
      return (rodrigues(Eigen::Vector3d(w[0], w[1], w[2])).transpose() * f - id).squaredNorm();
    };
    NelderMeadOptions opts;
    opts.initial_step = 0.3;
    opts.ftol_rel = 1e-16;
    opts.ftol_abs = 1e-300;
    opts.xtol = 1e-12;
    opts.max_evals = 4000;
    Eigen::VectorXd best_w;
    for (const auto& start : axis_angle_starts(20)) {
      const auto res = nelder_mead(objective, Eigen::VectorXd(start), opts);
      evals += res.evals;
      if (res.value < best) {
        best = res.value;
        best_w = res.x;
      }
    }
    opts.initial_step = 1e-3;
    const auto polish = nelder_mead(objective, best_w, opts);
    evals += polish.evals;
    if (polish.value <= best) {
      best = polish.value;
      best_w = polish.x;
    }
    best_q = rodrigues(Eigen::Vector3d(best_w[0], best_w[1], best_w[2]));
  } else {
    throw Error(ErrorCode::dimension_mismatch, "grioli_oracle: n must be 2 or 3");
  }

  OracleVerdict v;
  v.claim = "grioli";
  v.closed_form_value = closed.distance();
  v.oracle_value = std::sqrt(best);
  v.relative_gap = relative(v.oracle_value, v.closed_form_value);
  v.witness = best_q;
  v.evaluations = evals;
  const double gap = v.oracle_value - v.closed_form_value;
  const bool argmin_match = max_abs(best_q - *closed.minimizer) <= 1e-4;
  v.passed = gap >= -cfg.tol && gap <= cfg.tol && argmin_match;
  return v;
}

PathResult discrete_geodesic_path(const Mat& f, const MetricParams& p, const OracleConfig& cfg,
                                  const std::optional<Mat>& pinned) {
  cfg.validate();
  require_positive_det(f, "discrete_geodesic_path");
  if (pinned) {
    require_same_dim(f, *pinned, "discrete_geodesic_path");
    if (!is_rotation(*pinned, 1e-8)) {
      throw Error(ErrorCode::parameter_out_of_range, "pinned endpoint must be a rotation");
    }
  }
  return run_path_solver(f, p, cfg, pinned);
}

OracleVerdict geodesic_distance_oracle(const Mat& f, const MetricParams& p, const OracleConfig& cfg) {
  const double closed = dist_squared_to_so(f, p).distance();
  const PathResult path = discrete_geodesic_path(f, p, cfg);
  OracleVerdict v;
  v.claim = "geodesic-distance";
  v.closed_form_value = closed;
  v.oracle_value = path.length;
  v.relative_gap = relative(path.length, closed);
  v.witness = path.endpoint;
  v.evaluations = path.segments;
  const bool within = std::abs(path.length - closed) <= cfg.tol * closed + 1e-8;
  const bool no_undershoot = path.length >= closed - path.discretization_bound;
  v.passed = within && no_undershoot;
  return v;
}

OracleVerdict logmin_oracle(const Mat& f, const OracleConfig& cfg) {
  require_positive_det(f, "logmin_oracle");
  const double closed = principal_log_spd(polar_decompose(f).right_stretch).norm();
  return sampled_logmin("logmin", f, cfg, closed, [](const Mat& x) { return x.norm(); });
}

OracleVerdict weighted_logmin_oracle(const Mat& f, const MetricParams& p, const OracleConfig& cfg) {
  require_positive_det(f, "weighted_logmin_oracle");
  const double closed = weighted_norm(principal_log_spd(polar_decompose(f).right_stretch), p);
  return sampled_logmin("weighted-logmin", f, cfg, closed,
                        [&p](const Mat& x) { return weighted_norm(x, p); });
}

OracleVerdict best_approx_uniqueness_probe(const Mat& f, const MetricParams& p,
                                           const OracleConfig& cfg) {
  const DistanceReport closed = dist_squared_to_so(f, p);
  const Mat& r = *closed.minimizer;
  const int n = static_cast<int>(f.rows());

  std::vector<Mat> targets;
  for (std::size_t i = 0; targets.size() < cfg.samples && i < 1000 * cfg.samples; ++i) {
    SampleStream rng(cfg.seed, i);
    // rotations within a moderate geodesic ball around R, excluding ||Q - R|| <= 0.1
    Mat k = random_matrix(rng, n, 1.0);
    k = skew(k);
    const double scale = rng.uniform(0.15, 1.5) / std::max(1e-12, k.norm());
    const Mat q = r * mat_exp(scale * k);
    if ((q - r).norm() > 0.1) targets.push_back(q);
  }

  struct Probe {
    double excess = 0.0;
    double bound = 0.0;
    double length = 0.0;
  };
  OracleConfig inner = cfg;
  inner.threads = 1;
  const auto probes = parallel_map<Probe>(targets.size(), cfg.threads, [&](std::size_t i) {
    const PathResult pr = discrete_geodesic_path(f, p, inner, targets[i]);
    return Probe{pr.length - closed.distance(), pr.discretization_bound, pr.length};
  });

  OracleVerdict v;
  v.claim = "best-approximation";
  v.closed_form_value = closed.distance();
  v.oracle_value = kInf;
  v.passed = !probes.empty();
  for (std::size_t i = 0; i < probes.size(); ++i) {
    ++v.evaluations;
    if (!(probes[i].excess > probes[i].bound)) v.passed = false;
    if (probes[i].length < v.oracle_value) {
      v.oracle_value = probes[i].length;
      v.witness = targets[i];
    }
  }
  v.relative_gap = relative(v.oracle_value, v.closed_form_value);
  return v;
}

}  // namespace geolog
