// Copyright 2026 The permvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "permvqe/optimizer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace permvqe {

std::string to_string(OptimizerKind k) { return k == OptimizerKind::cobyla ? "cobyla" : "nelder_mead"; }

OptimizerKind parse_optimizer_kind(const std::string& s) {
  if (s == "cobyla") return OptimizerKind::cobyla;
  if (s == "nelder_mead" || s == "nelder-mead" || s == "nm") return OptimizerKind::nelder_mead;
  throw std::invalid_argument("unknown optimizer '" + s + "' (cobyla|nelder_mead)");
}

void OptimizerOptions::validate() const {
  if (max_evals < 1) throw std::invalid_argument("max_evals must be at least 1");
  if (!(rho_begin > 0.0) || !(rho_end > 0.0) || rho_end > rho_begin) {
    throw std::invalid_argument("require 0 < rho_end <= rho_begin");
  }
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Counts evaluations and remembers the best point seen.
class Evaluator {
 public:
  Evaluator(const Objective& f, const OptimizerOptions& opt) : f_(f), opt_(opt) {}

  double operator()(const VectorXd& x) {
    double v = f_(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
    if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
    ++evals_;
    if (best_x_.size() == 0 || v < best_f_) {
      best_f_ = v;
      best_x_ = x;
    }
    return v;
  }
  bool exhausted() const { return evals_ >= opt_.max_evals; }
  bool hit_target() const { return best_x_.size() != 0 && best_f_ <= opt_.f_target; }
  bool done() const { return exhausted() || hit_target(); }

  OptimizeResult result(bool converged) const {
    OptimizeResult r;
    r.x.assign(best_x_.data(), best_x_.data() + best_x_.size());
    r.fx = best_f_;
    r.evals = evals_;
    r.converged = converged || hit_target();
    return r;
  }

 private:
  const Objective& f_;
  const OptimizerOptions& opt_;
  int evals_ = 0;
  VectorXd best_x_;
  double best_f_ = std::numeric_limits<double>::infinity();
};

class LinearTrustRegion {
 public:
  LinearTrustRegion(Evaluator& eval, const VectorXd& x0, const OptimizerOptions& opt)
      : eval_(eval), opt_(opt), n_(x0.size()), rho_(opt.rho_begin) {
    // Initial simplex x0 + rho e_j; the best vertex becomes the pivot.
    MatrixXd verts(n_ + 1, n_);
    VectorXd vals(n_ + 1);
    verts.row(0) = x0.transpose();
    vals(0) = eval_(x0);
    for (Eigen::Index j = 0; j < n_ && !eval_.done(); ++j) {
      VectorXd v = x0;
      v(j) += rho_;
      verts.row(j + 1) = v.transpose();
      vals(j + 1) = eval_(v);
    }
    ready_ = !eval_.done();
    if (!ready_) return;
    Eigen::Index best = 0;
    vals.minCoeff(&best);
    x0_ = verts.row(best).transpose();
    f0_ = vals(best);
    d_.resize(n_, n_);
    fv_.resize(n_);
    Eigen::Index r = 0;
    for (Eigen::Index k = 0; k <= n_; ++k) {
      if (k == best) continue;
      d_.row(r) = verts.row(k) - x0_.transpose();
      fv_(r) = vals(k);
      ++r;
    }
    rebuild_inverse();
  }

  bool run() {
    if (!ready_) return eval_.hit_target();
    while (!eval_.done()) {
      const VectorXd g = a_ * (fv_.array() - f0_).matrix();
      const double gn = g.norm();
      bool poor = true;
      if (gn > 0.0 && std::isfinite(gn)) {
        const VectorXd step = -(rho_ / gn) * g;
        const double ft = eval_(x0_ + step);
        const double predicted = rho_ * gn;
        const double actual = f0_ - ft;
        accept_trial(step, ft, actual > 0.0);
        poor = !(actual >= 0.1 * predicted);
      }
      if (eval_.done()) break;
      if (!poor) continue;
      if (!acceptable()) {
        geometry_step(g);
      } else if (rho_ <= opt_.rho_end) {
        return true;
      } else {
        rho_ *= 0.5;
        if (rho_ <= 1.5 * opt_.rho_end) rho_ = opt_.rho_end;
      }
    }
    return eval_.hit_target();
  }

 private:
  void rebuild_inverse() {
    a_ = d_.partialPivLu().inverse();
    since_rebuild_ = 0;
  }

  // Replace displacement row j by u (value fu).
  void replace_row(Eigen::Index j, const VectorXd& u, double fu) {
    const double denom = u.dot(a_.col(j));
    const VectorXd w = u - d_.row(j).transpose();
    d_.row(j) = u.transpose();
    fv_(j) = fu;
    if (std::abs(denom) < 1e-10 || ++since_rebuild_ >= n_) {
      rebuild_inverse();
      return;
    }
    const VectorXd aj = a_.col(j);
    const Eigen::RowVectorXd wa = w.transpose() * a_;
    a_ -= (aj * wa) / denom;
  }

  // Vertex j becomes the pivot.
  void make_pivot(Eigen::Index j) {
    const VectorXd dj = d_.row(j).transpose();
    x0_ += dj;
    for (Eigen::Index i = 0; i < n_; ++i) {
      if (i != j) d_.row(i) -= dj.transpose();
    }
    d_.row(j) = -dj.transpose();
    std::swap(f0_, fv_(j));
    const VectorXd total = a_.rowwise().sum();
    a_.col(j) = -total;
  }

  void accept_trial(const VectorXd& step, double ft, bool improved) {
    const VectorXd sigma = (step.transpose() * a_).transpose().cwiseAbs();
    Eigen::Index drop = -1;
    double ratio = improved ? 0.0 : 1.0;
    for (Eigen::Index j = 0; j < n_; ++j) {
      if (sigma(j) > ratio) {
        ratio = sigma(j);
        drop = j;
      }
    }
    // Prefer discarding a far vertex whose replacement keeps the simplex sound.
    double edge = 1.1 * rho_;
    Eigen::Index far = -1;
    for (Eigen::Index j = 0; j < n_; ++j) {
      const double vsig = 1.0 / a_.col(j).norm();
      const double sigbar = sigma(j) * vsig;
      if (sigbar >= 0.25 * rho_ || sigbar >= vsig) {
        const double dist = (d_.row(j).transpose() - step).norm();
        if (dist > edge) {
          edge = dist;
          far = j;
        }
      }
    }
    if (far >= 0) drop = far;
    if (drop < 0) return;
    replace_row(drop, step, ft);
    if (improved) make_pivot(drop);
  }

  bool acceptable() const {
    for (Eigen::Index j = 0; j < n_; ++j) {
      if (d_.row(j).norm() > 2.1 * rho_) return false;
      if (1.0 / a_.col(j).norm() < 0.25 * rho_) return false;
    }
    return true;
  }

  void geometry_step(const VectorXd& g) {
    Eigen::Index j = -1;
    double worst = 2.1 * rho_;
    for (Eigen::Index k = 0; k < n_; ++k) {
      const double len = d_.row(k).norm();
      if (len > worst) {
        worst = len;
        j = k;
      }
    }
    if (j < 0) {
      double smallest = std::numeric_limits<double>::infinity();
      for (Eigen::Index k = 0; k < n_; ++k) {
        const double vsig = 1.0 / a_.col(k).norm();
        if (vsig < smallest) {
          smallest = vsig;
          j = k;
        }
      }
    }
    VectorXd dir = a_.col(j);
    dir *= 0.5 * rho_ / dir.norm();
    if (g.dot(dir) > 0.0) dir = -dir;
    const double fn = eval_(x0_ + dir);
    replace_row(j, dir, fn);
    if (fn < f0_) make_pivot(j);
  }

  Evaluator& eval_;
  const OptimizerOptions& opt_;
  Eigen::Index n_;
  double rho_;
  bool ready_ = false;
  VectorXd x0_;
  double f0_ = 0.0;
  MatrixXd d_;   // rows: vertex - pivot
  VectorXd fv_;  // values at the non-pivot vertices
  MatrixXd a_;   // d_^{-1}
  Eigen::Index since_rebuild_ = 0;
};

bool nelder_mead(Evaluator& eval, const VectorXd& x0, const OptimizerOptions& opt) {
  const Eigen::Index n = x0.size();
  const double dn = static_cast<double>(n);
  const double alpha = 1.0, beta = 1.0 + 2.0 / dn, gamma = 0.75 - 0.5 / dn, delta = 1.0 - 1.0 / dn;
  std::vector<VectorXd> pts(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> vals(static_cast<std::size_t>(n + 1));
  vals[0] = eval(x0);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (eval.done()) return eval.hit_target();
    pts[static_cast<std::size_t>(j + 1)](j) += opt.rho_begin;
    vals[static_cast<std::size_t>(j + 1)] = eval(pts[static_cast<std::size_t>(j + 1)]);
  }
  std::vector<std::size_t> order(pts.size());
  while (!eval.done()) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t lo = order.front(), hi = order.back(), second = order[order.size() - 2];
    double diameter = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) diameter = std::max(diameter, (pts[k] - pts[lo]).norm());
    const double spread = vals[hi] - vals[lo];
    if (diameter <= opt.rho_end) return true;
    if (spread <= 1e-15 * std::max(1.0, std::abs(vals[lo])) && diameter <= std::sqrt(opt.rho_end)) return true;

    VectorXd centroid = VectorXd::Zero(n);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k != hi) centroid += pts[k];
    }
    centroid /= dn;
    const VectorXd xr = centroid + alpha * (centroid - pts[hi]);
    const double fr = eval(xr);
    if (fr < vals[lo]) {
      if (eval.done()) break;
      const VectorXd xe = centroid + beta * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[hi] = xe;
        vals[hi] = fe;
      } else {
        pts[hi] = xr;
        vals[hi] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[hi] = xr;
      vals[hi] = fr;
      continue;
    }
    if (eval.done()) break;
    const bool outside = fr < vals[hi];
    const VectorXd xc = outside ? VectorXd(centroid + gamma * (xr - centroid))
                                : VectorXd(centroid - gamma * (centroid - pts[hi]));
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[hi])) {
      pts[hi] = xc;
      vals[hi] = fc;
      continue;
    }
    for (std::size_t k = 0; k < pts.size() && !eval.done(); ++k) {
      if (k == lo) continue;
      pts[k] = pts[lo] + delta * (pts[k] - pts[lo]);
      vals[k] = eval(pts[k]);
    }
  }
  return eval.hit_target();
}

}  // namespace

OptimizeResult minimize_local(const Objective& f, std::vector<double> x0, const OptimizerOptions& options) {
  options.validate();
  Evaluator eval(f, options);
  const VectorXd start = Eigen::Map<const VectorXd>(x0.data(), static_cast<Eigen::Index>(x0.size()));
  if (x0.empty()) {
    eval(start);
    return eval.result(true);
  }
  bool converged = false;
  if (options.kind == OptimizerKind::cobyla) {
    LinearTrustRegion tr(eval, start, options);
    converged = tr.run();
  } else {
    converged = nelder_mead(eval, start, options);
  }
  return eval.result(converged);
}

}  // namespace permvqe
