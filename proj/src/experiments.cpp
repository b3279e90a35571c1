#include "experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <type_traits>
#include <unordered_set>

#include "json.hpp"

#include "error.hpp"
#include "io.hpp"
#include "sampling.hpp"
#include "stats.hpp"

namespace prsi {

namespace {

// Sub-stream tags for seed derivation within experiments.
constexpr std::uint64_t kTrial = 0x01;
constexpr std::uint64_t kData = 0x02;
constexpr std::uint64_t kSim = 0x03;
constexpr std::uint64_t kPoint = 0x04;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out.push_back(',');
    if constexpr (std::is_floating_point_v<T>)
      out += fmt(xs[i]);
    else
      out += std::to_string(xs[i]);
  }
  return out;
}

void require_trials(std::uint32_t trials) {
  if (trials == 0)
    fail(ErrorCode::invalid_argument, "experiment: need at least one trial");
}

// Sums the first t shares incrementally and records the Jaccard similarity
// against the full mask for every t in [0, s_spl].
void similarity_sweep(std::uint32_t s_spl, const SplitConfig& cfg,
                      std::uint32_t n_max, Rng& rng,
                      std::vector<std::vector<double>>& per_t) {
  const std::unordered_set<std::uint32_t> none;
  const std::size_t len = 1 + rng.uniform_u32(n_max);
  InteractionVector source{sample_distinct(rng, cfg.n_item, len, none)};
  auto shares = split_vector(source, cfg, rng);

  std::vector<std::int32_t> full(cfg.n_star(), 0);
  for (const auto& s : shares)
    for (std::size_t d = 0; d < full.size(); ++d)
      full[d] += s.split.values[d];

  std::vector<std::int32_t> acc(cfg.n_star(), 0);
  for (std::uint32_t t = 0; t <= s_spl; ++t) {
    per_t[t].push_back(jaccard_similarity(acc, full));
    if (t < s_spl)
      for (std::size_t d = 0; d < acc.size(); ++d)
        acc[d] += shares[t].split.values[d];
  }
}

// Appends the two claims checked for every similarity curve: exact recovery
// with the complete share set, bounded similarity before that.
void similarity_assertions(ExperimentResult& result, const std::string& label,
                           std::uint32_t s_spl,
                           const std::vector<double>& means,
                           const std::vector<double>& stds) {
  ExperimentAssertion full_set;
  full_set.name = "full_set_exact_" + label;
  full_set.observed = means[s_spl];
  full_set.passed = means[s_spl] == 1.0 && stds[s_spl] == 0.0;
  full_set.detail = "similarity at t=s_spl";
  result.assertions.push_back(std::move(full_set));

  double worst = 0.0;
  for (std::uint32_t t = 0; t < s_spl; ++t) worst = std::max(worst, means[t]);
  ExperimentAssertion bound;
  bound.name = "partial_below_0.4_" + label;
  bound.observed = worst;
  bound.passed = worst < 0.4;
  bound.detail = "largest mean similarity over t < s_spl";
  result.assertions.push_back(std::move(bound));
}

}  // namespace

bool ExperimentResult::passed() const {
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const ExperimentAssertion& a) { return a.passed; });
}

std::string ExperimentResult::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out.push_back(',');
    out += columns[i];
  }
  out.push_back('\n');
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      out += fmt(row[i]);
    }
    out.push_back('\n');
  }
  return out;
}

std::string ExperimentResult::summary_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& [key, value] : parameters) p[key] = value;
  j["parameters"] = std::move(p);
  j["passed"] = passed();
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& a : assertions) {
    nlohmann::ordered_json c;
    c["name"] = a.name;
    c["passed"] = a.passed;
    c["observed"] = a.observed;
    c["detail"] = a.detail;
    checks.push_back(std::move(c));
  }
  j["assertions"] = std::move(checks);
  return j.dump(2) + "\n";
}

void write_result(const ExperimentResult& result, const std::string& out_dir) {
  ensure_directory(out_dir);
  atomic_write_file(out_dir + "/" + result.name + ".csv", result.to_csv());
  atomic_write_file(out_dir + "/" + result.name + ".summary.json",
                    result.summary_json());
}

ExperimentResult attack_curve(const AttackParams& params) {
  require_trials(params.trials);
  if (params.s_spl_values.empty())
    fail(ErrorCode::invalid_argument, "attack: no share counts given");

  ExperimentResult result;
  result.name = "attack_curve";
  result.parameters = {
      {"s_spl_values", join(params.s_spl_values)},
      {"c", std::to_string(params.c)},
      {"n_item", std::to_string(params.n_item)},
      {"n_max", std::to_string(params.n_max)},
      {"trials", std::to_string(params.trials)},
      {"seed", std::to_string(params.seed)},
  };
  result.columns = {"s_spl", "t", "mean_jaccard", "std_jaccard", "n_trials"};

  for (std::uint32_t s_spl : params.s_spl_values) {
    SplitConfig cfg{params.n_item, params.n_max, params.c, s_spl};
    cfg.validate();
    std::vector<std::vector<double>> per_t(s_spl + 1);
    const std::uint64_t point = derive_seed(params.seed, kPoint, s_spl);
    for (std::uint32_t trial = 0; trial < params.trials; ++trial) {
      Rng rng(derive_seed(point, kTrial, trial));
      similarity_sweep(s_spl, cfg, params.n_max, rng, per_t);
    }
    std::vector<double> means(s_spl + 1), stds(s_spl + 1);
    for (std::uint32_t t = 0; t <= s_spl; ++t) {
      means[t] = mean_of(per_t[t]);
      stds[t] = sample_std(per_t[t]);
      result.rows.push_back({static_cast<double>(s_spl),
                             static_cast<double>(t), means[t], stds[t],
                             static_cast<double>(params.trials)});
    }
    similarity_assertions(result, "s_spl_" + std::to_string(s_spl), s_spl,
                          means, stds);
  }
  return result;
}

ExperimentResult ratio_curve(const RatioParams& params) {
  require_trials(params.trials);
  if (params.c_values.empty())
    fail(ErrorCode::invalid_argument, "ratio: no padding ratios given");

  ExperimentResult result;
  result.name = "ratio_curve";
  result.parameters = {
      {"c_values", join(params.c_values)},
      {"s_spl", std::to_string(params.s_spl)},
      {"n_item", std::to_string(params.n_item)},
      {"n_max", std::to_string(params.n_max)},
      {"trials", std::to_string(params.trials)},
      {"seed", std::to_string(params.seed)},
  };
  result.columns = {"c", "t", "mean_jaccard", "std_jaccard", "n_trials"};

  for (std::uint32_t c : params.c_values) {
    SplitConfig cfg{params.n_item, params.n_max, c, params.s_spl};
    cfg.validate();
    std::vector<std::vector<double>> per_t(params.s_spl + 1);
    const std::uint64_t point = derive_seed(params.seed, kPoint, c);
    for (std::uint32_t trial = 0; trial < params.trials; ++trial) {
      Rng rng(derive_seed(point, kTrial, trial));
      similarity_sweep(params.s_spl, cfg, params.n_max, rng, per_t);
    }
    std::vector<double> means(params.s_spl + 1), stds(params.s_spl + 1);
    for (std::uint32_t t = 0; t <= params.s_spl; ++t) {
      means[t] = mean_of(per_t[t]);
      stds[t] = sample_std(per_t[t]);
      result.rows.push_back({static_cast<double>(c), static_cast<double>(t),
                             means[t], stds[t],
                             static_cast<double>(params.trials)});
    }
    similarity_assertions(result, "c_" + std::to_string(c), params.s_spl,
                          means, stds);
  }
  return result;
}

ExperimentResult id_collision_curve(const IdCollisionParams& params) {
  require_trials(params.trials);
  if (params.id_lengths.empty())
    fail(ErrorCode::invalid_argument, "id-collision: no lengths given");
  if (params.n_user == 0)
    fail(ErrorCode::invalid_argument, "id-collision: need at least one user");

  ExperimentResult result;
  result.name = "id_collision_curve";
  result.parameters = {
      {"id_lengths", join(params.id_lengths)},
      {"n_user", std::to_string(params.n_user)},
      {"trials", std::to_string(params.trials)},
      {"seed", std::to_string(params.seed)},
  };
  result.columns = {"id_len", "mean_repetition_rate", "std_repetition_rate",
                    "n_trials"};

  for (std::uint32_t id_len : params.id_lengths) {
    if (id_len == 0)
      fail(ErrorCode::invalid_argument, "id-collision: zero id length");
    std::vector<double> rates;
    rates.reserve(params.trials);
    const std::uint64_t point = derive_seed(params.seed, kPoint, id_len);
    for (std::uint32_t trial = 0; trial < params.trials; ++trial) {
      Rng rng(derive_seed(point, kTrial, trial));
      std::unordered_set<std::string> distinct;
      distinct.reserve(params.n_user * 2);
      for (std::uint32_t u = 0; u < params.n_user; ++u)
        distinct.insert(generate_vid(id_len, rng).text);
      rates.push_back(
          static_cast<double>(params.n_user - distinct.size()) /
          static_cast<double>(params.n_user));
    }
    const double m = mean_of(rates);
    result.rows.push_back({static_cast<double>(id_len), m, sample_std(rates),
                           static_cast<double>(params.trials)});
    if (id_len == 7) {
      ExperimentAssertion a;
      a.name = "zero_repetition_at_len_7";
      a.observed = m;
      a.passed = m == 0.0;
      a.detail = "mean repetition rate for 7-character ids";
      result.assertions.push_back(std::move(a));
    }
  }
  return result;
}

namespace {

struct CostPoint {
  std::vector<double> upload, download, total, sends;
  std::uint32_t incomplete = 0;

  void add(const PipelineResult& r) {
    upload.push_back(static_cast<double>(r.upload.total_bytes));
    download.push_back(static_cast<double>(r.download.total_bytes));
    total.push_back(
        static_cast<double>(r.upload.total_bytes + r.download.total_bytes));
    sends.push_back(r.upload.mean_per_client_sends() +
                    r.download.mean_per_client_sends());
  }
};

}  // namespace

ExperimentResult alpha_sweep(const AlphaSweepParams& params) {
  require_trials(params.trials);
  if (params.alphas.empty())
    fail(ErrorCode::invalid_argument, "alpha-sweep: no alphas given");

  ExperimentResult result;
  result.name = "alpha_sweep";
  result.parameters = {
      {"alphas", join(params.alphas)},
      {"n_user", std::to_string(params.n_user)},
      {"n_item", std::to_string(params.n_item)},
      {"n_max", std::to_string(params.n_max)},
      {"c", std::to_string(params.c)},
      {"s_spl", std::to_string(params.s_spl)},
      {"id_len", std::to_string(params.id_len)},
      {"k", std::to_string(params.k)},
      {"trials", std::to_string(params.trials)},
      {"seed", std::to_string(params.seed)},
  };
  result.columns = {"alpha",         "upload_bytes_mean", "upload_bytes_std",
                    "download_bytes_mean", "download_bytes_std",
                    "total_bytes_mean",    "total_bytes_std",
                    "n_trials",      "incomplete_runs"};

  std::vector<Dataset> datasets;
  datasets.reserve(params.trials);
  for (std::uint32_t trial = 0; trial < params.trials; ++trial)
    datasets.push_back(generate_synthetic(params.n_user, params.n_item,
                                          params.n_max,
                                          derive_seed(params.seed, kData,
                                                      trial)));

  std::vector<double> up_means, down_means, total_means;
  for (std::size_t ai = 0; ai < params.alphas.size(); ++ai) {
    const double alpha = params.alphas[ai];
    CostPoint point;
    const std::uint64_t sim_point = derive_seed(params.seed, kSim, ai);
    for (std::uint32_t trial = 0; trial < params.trials; ++trial) {
      PipelineConfig cfg;
      cfg.sim.n_user = params.n_user;
      cfg.sim.split = {params.n_item, params.n_max, params.c, params.s_spl};
      cfg.sim.alpha = alpha;
      cfg.sim.id_len = params.id_len;
      cfg.sim.seed = derive_seed(sim_point, kTrial, trial);
      cfg.rec.k = params.k;
      try {
        point.add(run_pipeline(datasets[trial], cfg));
      } catch (const PhaseIncompleteError&) {
        point.incomplete += 1;
      }
    }
    if (point.total.empty())
      fail(ErrorCode::phase_incomplete,
           "alpha-sweep: every trial at alpha=" + fmt(alpha) +
               " exhausted its round budget");
    up_means.push_back(mean_of(point.upload));
    down_means.push_back(mean_of(point.download));
    total_means.push_back(mean_of(point.total));
    result.rows.push_back({alpha, up_means.back(), sample_std(point.upload),
                           down_means.back(), sample_std(point.download),
                           total_means.back(), sample_std(point.total),
                           static_cast<double>(point.total.size()),
                           static_cast<double>(point.incomplete)});
  }

  if (params.alphas.size() >= 2) {
    ExperimentAssertion up;
    up.name = "upload_bytes_rise_with_alpha";
    up.observed = spearman(params.alphas, up_means);
    up.passed = up.observed > 0.9;
    up.detail = "Spearman correlation of mean upload bytes against alpha";
    result.assertions.push_back(std::move(up));

    ExperimentAssertion down;
    down.name = "download_bytes_fall_with_alpha";
    down.observed = spearman(params.alphas, down_means);
    down.passed = down.observed < -0.9;
    down.detail = "Spearman correlation of mean download bytes against alpha";
    result.assertions.push_back(std::move(down));
  }

  const std::size_t best =
      std::min_element(total_means.begin(), total_means.end()) -
      total_means.begin();
  ExperimentAssertion cheapest;
  cheapest.name = "cheapest_alpha_in_high_band";
  cheapest.observed = params.alphas[best];
  cheapest.passed =
      params.alphas[best] > 0.84 && params.alphas[best] < 0.96;
  cheapest.detail = "alpha with the smallest mean total bytes";
  result.assertions.push_back(std::move(cheapest));
  return result;
}

ExperimentResult scaling_curve(const ScalingParams& params) {
  require_trials(params.trials);
  if (params.n_users.empty())
    fail(ErrorCode::invalid_argument, "scaling: no population sizes given");
  if (params.alphas.empty())
    fail(ErrorCode::invalid_argument, "scaling: no alphas given");

  ExperimentResult result;
  result.name = "scaling_curve";
  result.parameters = {
      {"n_users", join(params.n_users)},
      {"alphas", join(params.alphas)},
      {"n_item", std::to_string(params.n_item)},
      {"n_max", std::to_string(params.n_max)},
      {"c", std::to_string(params.c)},
      {"s_spl", std::to_string(params.s_spl)},
      {"id_len", std::to_string(params.id_len)},
      {"k", std::to_string(params.k)},
      {"trials", std::to_string(params.trials)},
      {"seed", std::to_string(params.seed)},
  };
  result.columns = {"alpha",
                    "n_user",
                    "total_bytes_mean",
                    "total_bytes_std",
                    "upload_bytes_mean",
                    "download_bytes_mean",
                    "sends_per_client_upload",
                    "sends_per_client_download",
                    "sends_per_client_total",
                    "n_trials",
                    "incomplete_runs"};

  for (std::size_t ai = 0; ai < params.alphas.size(); ++ai) {
    const double alpha = params.alphas[ai];
    std::vector<double> sizes, total_means, sends_means;
    for (std::uint32_t n_user : params.n_users) {
      CostPoint point;
      std::vector<double> up_sends, down_sends;
      const std::uint64_t data_point = derive_seed(params.seed, kData, n_user);
      const std::uint64_t sim_point =
          derive_seed(derive_seed(params.seed, kSim, ai), kPoint, n_user);
      for (std::uint32_t trial = 0; trial < params.trials; ++trial) {
        Dataset data = generate_synthetic(n_user, params.n_item, params.n_max,
                                          derive_seed(data_point, kTrial,
                                                      trial));
        PipelineConfig cfg;
        cfg.sim.n_user = n_user;
        cfg.sim.split = {params.n_item, params.n_max, params.c, params.s_spl};
        cfg.sim.alpha = alpha;
        cfg.sim.id_len = params.id_len;
        cfg.sim.seed = derive_seed(sim_point, kTrial, trial);
        cfg.rec.k = params.k;
        try {
          PipelineResult r = run_pipeline(data, cfg);
          point.add(r);
          up_sends.push_back(r.upload.mean_per_client_sends());
          down_sends.push_back(r.download.mean_per_client_sends());
        } catch (const PhaseIncompleteError&) {
          point.incomplete += 1;
        }
      }
      if (point.total.empty())
        fail(ErrorCode::phase_incomplete,
             "scaling: every trial at n_user=" + std::to_string(n_user) +
                 " exhausted its round budget");
      sizes.push_back(static_cast<double>(n_user));
      total_means.push_back(mean_of(point.total));
      sends_means.push_back(mean_of(point.sends));
      result.rows.push_back({alpha, static_cast<double>(n_user),
                             total_means.back(), sample_std(point.total),
                             mean_of(point.upload), mean_of(point.download),
                             mean_of(up_sends), mean_of(down_sends),
                             sends_means.back(),
                             static_cast<double>(point.total.size()),
                             static_cast<double>(point.incomplete)});
    }
    const std::string label = "alpha_" + fmt(alpha);
    if (sizes.size() >= 2) {
      ExperimentAssertion linear;
      linear.name = "total_bytes_linear_" + label;
      linear.observed = linear_fit(sizes, total_means).r2;
      linear.passed = linear.observed >= 0.95;
      linear.detail = "R^2 of the linear fit of mean total bytes over n_user";
      result.assertions.push_back(std::move(linear));
    }
    ExperimentAssertion stable;
    stable.name = "sends_per_client_stable_" + label;
    stable.observed = relative_spread(sends_means);
    stable.passed = stable.observed < 0.20;
    stable.detail =
        "relative spread of mean per-client triplet sends over n_user";
    result.assertions.push_back(std::move(stable));
  }
  return result;
}

}  // namespace prsi
