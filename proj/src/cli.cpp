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

#include "iris/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "iris/annotation.hpp"
#include "iris/config.hpp"
#include "iris/fmap.hpp"
#include "iris/localize.hpp"
#include "iris/losses.hpp"
#include "iris/metrics.hpp"
#include "iris/pgm.hpp"
#include "iris/recognize.hpp"
#include "iris/synth.hpp"

namespace iris {

namespace fs = std::filesystem;

namespace {

std::string case_id(int index) {
  std::ostringstream s;
  s << "case" << std::setw(4) << std::setfill('0') << index;
  return s.str();
}

std::vector<std::string> read_manifest(const fs::path& dir) {
  std::vector<std::string> ids;
  std::ifstream in(dir / "manifest.csv");
  if (!in) return ids;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (line.empty() || line == "id") continue;
    ids.push_back(line);
  }
  return ids;
}

std::vector<std::string> ids_from_glob(const fs::path& dir,
                                       const std::string& ext) {
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ext)
      ids.push_back(entry.path().stem().string());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min<std::size_t>(jobs, n);
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
        fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

PipelineConfig load_config(const std::string& path,
                           const std::vector<std::string>& overrides) {
  PipelineConfig cfg =
      path.empty() ? PipelineConfig{} : PipelineConfig::from_file(path);
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set expects key=value, got '" + kv + "'");
    cfg.apply(kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------
// synth

int cmd_synth(int n, const std::string& out_dir, std::uint64_t seed, int width,
              int height, const CorruptionSpec& corruption) {
  fs::create_directories(out_dir);
  Rng master(seed);
  std::ofstream manifest(fs::path(out_dir) / "manifest.csv");
  if (!manifest) throw IoError("cannot write manifest in " + out_dir);
  manifest << "id\n";
  for (int i = 0; i < n; ++i) {
    SynthSpec spec = random_spec(master, width, height);
    spec.corruption = corruption;
    const SynthCase sc = generate(spec);
    const std::string id = case_id(i);
    const fs::path base = fs::path(out_dir) / id;
    write_pgm(base.string() + ".pgm", sc.image);
    write_pgm(base.string() + "_mask.pgm", sc.gt.mask);
    write_fmap(base.string() + ".fmap", sc.maps.to_tensor());
    Annotation ann;
    ann.id = id;
    ann.pupil_center = sc.gt.pupil_center;
    ann.inner = sc.gt.inner;
    ann.outer = sc.gt.outer;
    ann.mask_path = id + "_mask.pgm";
    write_annotation(base.string() + ".json", ann);
    manifest << id << "\n";
  }
  if (!manifest) throw IoError("short manifest write in " + out_dir);
  return 0;
}

// ---------------------------------------------------------------------------
// localize

struct LocalizeRow {
  std::string id;
  bool ok = false;
  std::string reason;
};

void write_localization_json(const fs::path& path, const std::string& id,
                             const LocalizationResult& res) {
  nlohmann::json j;
  j["id"] = id;
  j["pupil_center"] = {res.pupil_center.x, res.pupil_center.y};
  j["inner"] = {{"cx", res.inner.cx}, {"cy", res.inner.cy}, {"r", res.inner.r}};
  j["outer"] = {{"cx", res.outer.cx}, {"cy", res.outer.cy}, {"r", res.outer.r}};
  j["mask_path"] = id + "_mask.pgm";
  for (const char* key : {"inner_contour", "outer_contour"}) {
    const PolarContour& c =
        key[0] == 'i' ? res.inner_contour : res.outer_contour;
    j[key] = {{"center", {c.center.x, c.center.y}},
              {"n_angles", c.n_angles},
              {"radii", c.radii}};
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << j.dump(2) << '\n';
}

int cmd_localize(const std::string& input, const std::string& out_dir,
                 const std::string& config_path,
                 const std::vector<std::string>& overrides, int jobs) {
  const PipelineConfig cfg = load_config(config_path, overrides);
  fs::create_directories(out_dir);

  std::vector<std::string> ids;
  fs::path in_dir;
  if (fs::is_directory(input)) {
    in_dir = input;
    ids = read_manifest(in_dir);
    if (ids.empty()) ids = ids_from_glob(in_dir, ".fmap");
  } else {
    in_dir = fs::path(input).parent_path();
    ids.push_back(fs::path(input).stem().string());
  }
  if (ids.empty()) {
    std::cerr << "localize: no input maps found in " << input << "\n";
    return 1;
  }

  std::vector<LocalizeRow> rows(ids.size());
  parallel_for(ids.size(), jobs, [&](std::size_t i) {
    LocalizeRow row;
    row.id = ids[i];
    try {
      const Tensor t = read_fmap((in_dir / (ids[i] + ".fmap")).string());
      const ProbMapSet maps = ProbMapSet::from_tensor(t);
      const LocalizationResult res = localize(maps, cfg.localize);
      write_localization_json(fs::path(out_dir) / (ids[i] + ".json"), ids[i],
                              res);
      BinaryMask seg(maps.width(), maps.height());
      for (int y = 0; y < maps.height(); ++y)
        for (int x = 0; x < maps.width(); ++x)
          seg.set(x, y, maps.mask.at(x, y) >= cfg.mask_binarize);
      write_pgm((fs::path(out_dir) / (ids[i] + "_mask.pgm")).string(), seg);
      row.ok = true;
    } catch (const NoIrisError&) {
      row.reason = "no-iris";
    } catch (const GeometryError&) {
      row.reason = "degenerate-geometry";
    } catch (const Error& e) {
      row.reason = e.what();
    }
    rows[i] = std::move(row);
  });

  std::ofstream results(fs::path(out_dir) / "results.csv");
  if (!results) throw IoError("cannot write results.csv in " + out_dir);
  results << "id,status,reason\n";
  std::size_t ok = 0;
  for (const LocalizeRow& row : rows) {
    results << row.id << ',' << (row.ok ? "ok" : "failed") << ',' << row.reason
            << '\n';
    ok += row.ok ? 1 : 0;
  }
  std::cout << "localized " << ok << "/" << rows.size() << " images\n";
  return ok > 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// evaluate

int cmd_evaluate(const std::string& results_dir, const std::string& gt_dir,
                 const std::string& out_dir) {
  fs::create_directories(out_dir);
  std::vector<std::string> ids = read_manifest(gt_dir);
  if (ids.empty()) ids = ids_from_glob(gt_dir, ".json");
  if (ids.empty()) {
    std::cerr << "evaluate: no ground-truth annotations in " << gt_dir << "\n";
    return 1;
  }

  std::vector<PerImageScores> rows;
  std::vector<double> inner_errors, outer_errors;
  std::vector<std::string> skipped;
  for (const std::string& id : ids) {
    try {
      const Annotation gt =
          read_annotation((fs::path(gt_dir) / (id + ".json")).string());
      const Annotation pred =
          read_annotation((fs::path(results_dir) / (id + ".json")).string());
      const BinaryMask gt_mask =
          read_pgm_mask((fs::path(gt_dir) / gt.mask_path).string());
      const BinaryMask pred_mask =
          read_pgm_mask((fs::path(results_dir) / pred.mask_path).string());

      PerImageScores s;
      s.id = id;
      s.e1 = e1_rate(gt_mask, pred_mask);
      s.e2 = e2_rate(gt_mask, pred_mask);
      s.f1 = f1_score(gt_mask, pred_mask);
      s.iou = miou_score(gt_mask, pred_mask);
      s.hd_inner = hausdorff(densify_circle(gt.inner), densify_circle(pred.inner));
      s.hd_outer = hausdorff(densify_circle(gt.outer), densify_circle(pred.outer));
      rows.push_back(s);
      inner_errors.push_back(s.hd_inner);
      outer_errors.push_back(s.hd_outer);
    } catch (const Error&) {
      skipped.push_back(id);
    }
  }
  for (const std::string& id : skipped)
    std::cerr << "evaluate: skipped " << id << " (missing or unreadable)\n";
  if (rows.empty()) {
    std::cerr << "evaluate: nothing to evaluate\n";
    return 1;
  }

  const EvalReport report = aggregate(rows);
  write_report_csv((fs::path(out_dir) / "report.csv").string(), report);
  write_report_json((fs::path(out_dir) / "report.json").string(), report);
  write_curve_csv((fs::path(out_dir) / "curve_inner.csv").string(),
                  success_curve(inner_errors, default_hd_thresholds()));
  write_curve_csv((fs::path(out_dir) / "curve_outer.csv").string(),
                  success_curve(outer_errors, default_hd_thresholds()));
  std::cout << "evaluated " << report.n << " images: e1=" << report.seg.e1
            << " e2=" << report.seg.e2 << " f1=" << report.seg.f1_mean
            << " miou=" << report.seg.miou
            << " mhdis=" << report.loc.mhdis_overall << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// encode / match / verify

int cmd_encode(const std::string& image_path, const std::string& mask_path,
               const std::string& annotation_path, const std::string& out_path,
               const std::string& config_path,
               const std::vector<std::string>& overrides) {
  const PipelineConfig cfg = load_config(config_path, overrides);
  const GrayImage img = read_pgm(image_path);
  const BinaryMask mask = read_pgm_mask(mask_path);
  const Annotation ann = read_annotation(annotation_path);
  const NormalizedIris norm =
      normalize(img, mask, ann.inner, ann.outer, cfg.norm_rows, cfg.norm_cols);
  const IrisTemplate tpl =
      encode(norm, cfg.gabor_wavelength, cfg.gabor_sigma_ratio);
  write_template(out_path, tpl);
  return 0;
}

int cmd_match(const std::string& templates_dir, const std::string& pairs_path,
              const std::string& out_path, const std::string& config_path,
              const std::vector<std::string>& overrides) {
  const PipelineConfig cfg = load_config(config_path, overrides);
  std::ifstream pairs(pairs_path);
  if (!pairs) throw IoError("cannot open pairs file: " + pairs_path);

  std::map<std::string, IrisTemplate> cache;
  auto get_template = [&](const std::string& id) -> const IrisTemplate& {
    auto it = cache.find(id);
    if (it == cache.end()) {
      it = cache
               .emplace(id, read_template(
                                (fs::path(templates_dir) / (id + ".itpl"))
                                    .string()))
               .first;
    }
    return it->second;
  };

  std::ofstream out(out_path);
  if (!out) throw IoError("cannot open for writing: " + out_path);
  out << "label,score\n";
  out.precision(17);

  std::string line;
  std::size_t n_pairs = 0;
  while (std::getline(pairs, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (line.empty() || line[0] == '#' || line == "id_a,id_b,label") continue;
    std::istringstream ss(line);
    std::string id_a, id_b, label;
    if (!std::getline(ss, id_a, ',') || !std::getline(ss, id_b, ',') ||
        !std::getline(ss, label, ','))
      throw IoError("bad pairs row: " + line);
    ++n_pairs;
    try {
      const MatchScore score =
          match(get_template(id_a), get_template(id_b), cfg.match_max_shift);
      out << label << ',' << score.hd << '\n';
    } catch (const NoOverlapError&) {
      out << "invalid,nan\n";
    }
  }
  if (n_pairs == 0) {
    std::cerr << "match: pairs file has no pairs\n";
    return 1;
  }
  std::cout << "matched " << n_pairs << " pairs\n";
  return 0;
}

int cmd_verify(const std::string& scores_path) {
  std::ifstream in(scores_path);
  if (!in) throw IoError("cannot open scores file: " + scores_path);
  std::vector<double> genuine, impostor;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (line.empty() || line == "label,score" || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError("bad score row: " + line);
    const std::string label = line.substr(0, comma);
    if (label == "invalid") continue;
    double score = 0.0;
    try {
      score = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw IoError("bad score value in row: " + line);
    }
    if (!std::isfinite(score)) throw IoError("non-finite score in row: " + line);
    if (label == "genuine")
      genuine.push_back(score);
    else if (label == "impostor")
      impostor.push_back(score);
    else
      throw IoError("unknown score label: " + label);
  }
  if (genuine.empty() || impostor.empty()) {
    std::cerr << "verify: need both genuine and impostor scores\n";
    return 1;
  }
  const VerificationStats stats = verification_stats(genuine, impostor);
  std::cout << "EER " << stats.eer << "\nDI " << stats.di << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// gradcheck

int cmd_gradcheck(std::uint64_t seed, bool sabotage) {
  const double tolerance = 1e-4;
  const auto report =
      check_loss_gradients(seed, 1e-4, 20, sabotage ? 0.01 : 0.0);
  bool all_ok = true;
  for (const GradCheckEntry& entry : report) {
    std::cout << entry.loss << " max_rel_error=" << entry.max_rel_error
              << "\n";
    all_ok = all_ok && entry.max_rel_error < tolerance;
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"iris localization, matching, and evaluation toolkit",
               "iristool"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate synthetic eye cases");
  int n = 1;
  std::string out_dir;
  std::uint64_t seed = 1;
  int width = 200, height = 160;
  CorruptionSpec corruption;
  synth->add_option("--n", n, "number of cases");
  synth->add_option("--out", out_dir, "output directory")->required();
  synth->add_option("--seed", seed, "master seed");
  synth->add_option("--width", width, "image width");
  synth->add_option("--height", height, "image height");
  synth->add_option("--edge-width", corruption.edge_width,
                    "boundary thickening radius");
  synth->add_option("--blobs", corruption.blob_count, "spurious blobs per map");
  synth->add_option("--blob-intensity", corruption.blob_intensity,
                    "blob probability value");
  synth->add_option("--noise", corruption.map_noise_sigma,
                    "map noise sigma");
  synth->add_option("--occlusion", corruption.occlusion_fraction,
                    "upper-lid occlusion fraction");

  // localize
  auto* loc = app.add_subcommand("localize", "run the localization chain");
  std::string loc_in, loc_out, loc_config;
  int jobs = 1;
  loc->add_option("--in", loc_in, "fmap file or directory")->required();
  loc->add_option("--out", loc_out, "output directory")->required();
  loc->add_option("--config", loc_config, "key=value config file");
  loc->add_option("--jobs", jobs, "worker threads");
  std::vector<std::string> loc_sets;
  loc->add_option("--set", loc_sets, "override one config key (key=value)");

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "score results against ground truth");
  std::string eval_results, eval_gt, eval_out;
  eval->add_option("--results", eval_results, "localization output directory")
      ->required();
  eval->add_option("--gt", eval_gt, "ground-truth directory")->required();
  eval->add_option("--out", eval_out, "report directory")->required();

  // encode
  auto* enc = app.add_subcommand("encode", "build an iris template");
  std::string enc_image, enc_mask, enc_ann, enc_out, enc_config;
  enc->add_option("--image", enc_image, "eye image (PGM)")->required();
  enc->add_option("--mask", enc_mask, "segmentation mask (PGM)")->required();
  enc->add_option("--annotation", enc_ann, "circles (JSON)")->required();
  enc->add_option("--out", enc_out, "output template (.itpl)")->required();
  enc->add_option("--config", enc_config, "key=value config file");
  std::vector<std::string> enc_sets;
  enc->add_option("--set", enc_sets, "override one config key (key=value)");

  // match
  auto* mat = app.add_subcommand("match", "score template pairs");
  std::string mat_templates, mat_pairs, mat_out, mat_config;
  mat->add_option("--templates", mat_templates, "template directory")->required();
  mat->add_option("--pairs", mat_pairs, "pairs CSV (id_a,id_b,label)")
      ->required();
  mat->add_option("--out", mat_out, "scores CSV")->required();
  mat->add_option("--config", mat_config, "key=value config file");
  std::vector<std::string> mat_sets;
  mat->add_option("--set", mat_sets, "override one config key (key=value)");

  // verify
  auto* ver = app.add_subcommand("verify", "EER/DI from a scores CSV");
  std::string ver_scores;
  ver->add_option("--scores", ver_scores, "scores CSV")->required();

  // gradcheck
  auto* grad = app.add_subcommand("gradcheck", "finite-difference loss check");
  std::uint64_t grad_seed = 7;
  bool sabotage = false;
  grad->add_option("--seed", grad_seed, "instance seed");
  grad->add_flag("--sabotage", sabotage, "perturb analytic gradients")
      ->group("");  // test fixture, hidden from help

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*synth) return cmd_synth(n, out_dir, seed, width, height, corruption);
    if (*loc) return cmd_localize(loc_in, loc_out, loc_config, loc_sets, jobs);
    if (*eval) return cmd_evaluate(eval_results, eval_gt, eval_out);
    if (*enc)
      return cmd_encode(enc_image, enc_mask, enc_ann, enc_out, enc_config,
                        enc_sets);
    if (*mat)
      return cmd_match(mat_templates, mat_pairs, mat_out, mat_config, mat_sets);
    if (*ver) return cmd_verify(ver_scores);
    if (*grad) return cmd_gradcheck(grad_seed, sabotage);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace iris
