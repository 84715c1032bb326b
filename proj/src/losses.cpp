// Copyright 2026 The iriskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "iris/losses.hpp"

#include <cmath>
#include <functional>

#include "iris/rng.hpp"

namespace iris {

void LossConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("loss: alpha not in (0,1)");
  if (gamma < 0.0) throw ConfigError("loss: gamma < 0");
  if (lambda1 < 0.0 || lambda2 < 0.0 || lambda3 < 0.0)
    throw ConfigError("loss: negative task weight");
  if (!(eps > 0.0 && eps < 0.5)) throw ConfigError("loss: eps not in (0,0.5)");
}

namespace {

void require_same_shape(const GrayImage& p, const BinaryMask& gt,
                        const char* who) {
  if (p.width() != gt.width() || p.height() != gt.height())
    throw ShapeError(std::string(who) + ": prediction/ground-truth size mismatch");
}

GradImage zero_grad(const GrayImage& like) {
  GradImage g;
  g.width = like.width();
  g.height = like.height();
  g.data.assign(static_cast<std::size_t>(g.width) * g.height, 0.0);
  return g;
}

}  // namespace

LossResult focal_loss(const GrayImage& p, const BinaryMask& gt,
                      const LossConfig& cfg) {
  cfg.validate();
  require_same_shape(p, gt, "focal_loss");
  LossResult res;
  GradImage grad = zero_grad(p);
  for (int y = 0; y < p.height(); ++y) {
    for (int x = 0; x < p.width(); ++x) {
      const double raw = p.at(x, y);
      const bool clamped = raw < cfg.eps || raw > 1.0 - cfg.eps;
      const double pc = std::clamp(raw, cfg.eps, 1.0 - cfg.eps);
      const bool positive = gt.get(x, y);
      const double q = positive ? pc : 1.0 - pc;
      const double one_minus = 1.0 - q;
      res.value += -cfg.alpha * std::pow(one_minus, cfg.gamma) * std::log(q);
      if (!clamped) {
        const double focus_term =
            cfg.gamma == 0.0
                ? 0.0
                : cfg.gamma * std::pow(one_minus, cfg.gamma - 1.0) * std::log(q);
        const double dq =
            cfg.alpha * (focus_term - std::pow(one_minus, cfg.gamma) / q);
        grad.data[static_cast<std::size_t>(y) * p.width() + x] =
            positive ? dq : -dq;
      }
    }
  }
  res.grads.push_back(std::move(grad));
  return res;
}

LossResult seg_bce_loss(const GrayImage& s, const BinaryMask& gt,
                        const LossConfig& cfg) {
  cfg.validate();
  require_same_shape(s, gt, "seg_bce_loss");
  LossResult res;
  GradImage grad = zero_grad(s);
  for (int y = 0; y < s.height(); ++y) {
    for (int x = 0; x < s.width(); ++x) {
      const double raw = s.at(x, y);
      const bool clamped = raw < cfg.eps || raw > 1.0 - cfg.eps;
      const double sc = std::clamp(raw, cfg.eps, 1.0 - cfg.eps);
      const double g = gt.get(x, y) ? 1.0 : 0.0;
      res.value += -(g * std::log(sc) + (1.0 - g) * std::log(1.0 - sc));
      if (!clamped) {
        grad.data[static_cast<std::size_t>(y) * s.width() + x] =
            (sc - g) / (sc * (1.0 - sc));
      }
    }
  }
  res.grads.push_back(std::move(grad));
  return res;
}

namespace {

// One class-balanced map; beta is the non-edge fraction of this map's gt.
void edge_map_term(const GrayImage& e, const BinaryMask& gt,
                   const LossConfig& cfg, double* value, GradImage* grad) {
  const double total = static_cast<double>(e.width()) * e.height();
  const double beta = (total - static_cast<double>(gt.count())) / total;
  for (int y = 0; y < e.height(); ++y) {
    for (int x = 0; x < e.width(); ++x) {
      const double raw = e.at(x, y);
      const bool clamped = raw < cfg.eps || raw > 1.0 - cfg.eps;
      const double ec = std::clamp(raw, cfg.eps, 1.0 - cfg.eps);
      const double g = gt.get(x, y) ? 1.0 : 0.0;
      *value += -(beta * g * std::log(ec) +
                  (1.0 - beta) * (1.0 - g) * std::log(1.0 - ec));
      if (!clamped) {
        grad->data[static_cast<std::size_t>(y) * e.width() + x] =
            -beta * g / ec + (1.0 - beta) * (1.0 - g) / (1.0 - ec);
      }
    }
  }
}

}  // namespace

LossResult edge_balanced_loss(const GrayImage& e1, const GrayImage& e2,
                              const BinaryMask& gt1, const BinaryMask& gt2,
                              const LossConfig& cfg) {
  cfg.validate();
  require_same_shape(e1, gt1, "edge_balanced_loss");
  require_same_shape(e2, gt2, "edge_balanced_loss");
  if (e1.width() != e2.width() || e1.height() != e2.height())
    throw ShapeError("edge_balanced_loss: boundary maps differ in size");
  LossResult res;
  GradImage g1 = zero_grad(e1);
  GradImage g2 = zero_grad(e2);
  edge_map_term(e1, gt1, cfg, &res.value, &g1);
  edge_map_term(e2, gt2, cfg, &res.value, &g2);
  res.grads.push_back(std::move(g1));
  res.grads.push_back(std::move(g2));
  return res;
}

LossResult joint_loss(const ProbMapSet& maps, const LossGroundTruth& gts,
                      const LossConfig& cfg) {
  cfg.validate();
  maps.validate();
  LossResult pupil = focal_loss(maps.pupil_center, gts.pupil, cfg);
  LossResult seg = seg_bce_loss(maps.mask, gts.mask, cfg);
  LossResult edge = edge_balanced_loss(maps.inner_boundary, maps.outer_boundary,
                                       gts.inner, gts.outer, cfg);
  LossResult res;
  res.value =
      cfg.lambda1 * pupil.value + cfg.lambda2 * seg.value + cfg.lambda3 * edge.value;
  auto scaled = [](GradImage g, double lambda) {
    for (double& v : g.data) v *= lambda;
    return g;
  };
  res.grads.push_back(scaled(std::move(pupil.grads[0]), cfg.lambda1));
  res.grads.push_back(scaled(std::move(seg.grads[0]), cfg.lambda2));
  res.grads.push_back(scaled(std::move(edge.grads[0]), cfg.lambda3));
  res.grads.push_back(scaled(std::move(edge.grads[1]), cfg.lambda3));
  return res;
}

namespace {

GrayImage random_prob_map(Rng& rng, int w, int h) {
  GrayImage img(w, h);
  for (double& v : img.data()) v = rng.uniform(0.05, 0.95);
  return img;
}

BinaryMask random_mask(Rng& rng, int w, int h) {
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) m.set(x, y, rng.uniform() < 0.3);
  return m;
}

// Central difference of `value_fn` against the analytic grad of one map.
double fd_max_rel_error(GrayImage& map, const GradImage& analytic,
                        const std::function<double()>& value_fn, double step,
                        double sabotage) {
  double worst = 0.0;
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      const double saved = map.at(x, y);
      map.at(x, y) = saved + step;
      const double plus = value_fn();
      map.at(x, y) = saved - step;
      const double minus = value_fn();
      map.at(x, y) = saved;
      const double numeric = (plus - minus) / (2.0 * step);
      const double a = analytic.at(x, y) + sabotage;
      const double rel = std::abs(a - numeric) / std::max(1.0, std::abs(numeric));
      worst = std::max(worst, rel);
    }
  }
  return worst;
}

}  // namespace

std::vector<GradCheckEntry> check_loss_gradients(std::uint64_t seed,
                                                 double step, int instances,
                                                 double sabotage) {
  Rng rng(seed);
  LossConfig cfg;
  std::vector<GradCheckEntry> report = {
      {"focal", 0.0}, {"seg_bce", 0.0}, {"edge_balanced", 0.0}, {"joint", 0.0}};
  constexpr int kSide = 8;

  for (int inst = 0; inst < instances; ++inst) {
    ProbMapSet maps;
    maps.pupil_center = random_prob_map(rng, kSide, kSide);
    maps.mask = random_prob_map(rng, kSide, kSide);
    maps.inner_boundary = random_prob_map(rng, kSide, kSide);
    maps.outer_boundary = random_prob_map(rng, kSide, kSide);
    LossGroundTruth gts;
    gts.pupil = random_mask(rng, kSide, kSide);
    gts.mask = random_mask(rng, kSide, kSide);
    gts.inner = random_mask(rng, kSide, kSide);
    gts.outer = random_mask(rng, kSide, kSide);

    {
      const LossResult r = focal_loss(maps.pupil_center, gts.pupil, cfg);
      report[0].max_rel_error = std::max(
          report[0].max_rel_error,
          fd_max_rel_error(
              maps.pupil_center, r.grads[0],
              [&] { return focal_loss(maps.pupil_center, gts.pupil, cfg).value; },
              step, sabotage));
    }
    {
      const LossResult r = seg_bce_loss(maps.mask, gts.mask, cfg);
      report[1].max_rel_error = std::max(
          report[1].max_rel_error,
          fd_max_rel_error(
              maps.mask, r.grads[0],
              [&] { return seg_bce_loss(maps.mask, gts.mask, cfg).value; },
              step, sabotage));
    }
    {
      const LossResult r = edge_balanced_loss(
          maps.inner_boundary, maps.outer_boundary, gts.inner, gts.outer, cfg);
      auto value = [&] {
        return edge_balanced_loss(maps.inner_boundary, maps.outer_boundary,
                                  gts.inner, gts.outer, cfg)
            .value;
      };
      report[2].max_rel_error =
          std::max({report[2].max_rel_error,
                    fd_max_rel_error(maps.inner_boundary, r.grads[0], value,
                                     step, sabotage),
                    fd_max_rel_error(maps.outer_boundary, r.grads[1], value,
                                     step, sabotage)});
    }
    {
      const LossResult r = joint_loss(maps, gts, cfg);
      auto value = [&] { return joint_loss(maps, gts, cfg).value; };
      GrayImage* fields[4] = {&maps.pupil_center, &maps.mask,
                              &maps.inner_boundary, &maps.outer_boundary};
      for (int m = 0; m < 4; ++m) {
        report[3].max_rel_error =
            std::max(report[3].max_rel_error,
                     fd_max_rel_error(*fields[m], r.grads[m], value, step,
                                      sabotage));
      }
    }
  }
  return report;
}

}  // namespace iris
