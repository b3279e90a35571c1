#include "prsi.h"

#include <algorithm>
#include <exception>
#include <iterator>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "dataset.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "pipeline.hpp"
#include "sampling.hpp"
#include "splitcore.hpp"
#include "wire.hpp"

struct prsi_dataset {
  prsi::Dataset data;
};

struct prsi_split_demo {
  std::uint32_t n_star = 0;
  std::uint32_t s_spl = 0;
  std::vector<double> similarity;  // index t in [0, s_spl]
  bool roundtrip_exact = false;
};

struct prsi_pipeline_result {
  prsi::PipelineResult result;
  std::string csv;
  std::string summary;
};

struct prsi_experiment {
  prsi::ExperimentResult result;
  std::string csv;
  std::string summary;
};

namespace {

thread_local std::string t_last_error;

prsi_status map_code(prsi::ErrorCode code) {
  switch (code) {
    case prsi::ErrorCode::invalid_argument:
      return PRSI_ERR_INVALID_ARGUMENT;
    case prsi::ErrorCode::parse_error:
      return PRSI_ERR_PARSE;
    case prsi::ErrorCode::validation_error:
      return PRSI_ERR_VALIDATION;
    case prsi::ErrorCode::share_mixing:
      return PRSI_ERR_SHARE_MIXING;
    case prsi::ErrorCode::incomplete_shares:
      return PRSI_ERR_INCOMPLETE_SHARES;
    case prsi::ErrorCode::phase_incomplete:
      return PRSI_ERR_PHASE_INCOMPLETE;
    case prsi::ErrorCode::io_error:
      return PRSI_ERR_IO;
  }
  return PRSI_ERR_UNKNOWN;
}

template <typename Fn>
prsi_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    t_last_error.clear();
    return PRSI_OK;
  } catch (const prsi::Error& e) {
    t_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return PRSI_ERR_UNKNOWN;
  }
}

prsi_status arg_error(const char* message) noexcept {
  try {
    t_last_error = message;
  } catch (...) {
  }
  return PRSI_ERR_INVALID_ARGUMENT;
}

void fill_metrics(const prsi::PhaseMetrics& m, prsi_phase_metrics* out) {
  out->total_bytes = m.total_bytes;
  out->messages_client_to_client = m.messages_client_to_client;
  out->messages_to_server = m.messages_to_server;
  out->messages_server_to_client = m.messages_server_to_client;
  out->rounds_used = m.rounds_used;
  out->undelivered = m.undelivered;
  out->mean_sends_per_client = m.mean_per_client_sends();
}

prsi_experiment* wrap(prsi::ExperimentResult result) {
  auto* exp = new prsi_experiment;
  exp->result = std::move(result);
  exp->csv = exp->result.to_csv();
  exp->summary = exp->result.summary_json();
  return exp;
}

const uint32_t kDefaultSspl[] = {50, 100, 200};
const uint32_t kDefaultRatios[] = {2, 4, 6, 8, 10};
const uint32_t kDefaultIdLens[] = {1, 2, 3, 4, 5, 6, 7, 8};
const double kDefaultAlphas[] = {0.5, 0.6, 0.7, 0.8, 0.85, 0.9, 0.95};
const uint32_t kDefaultPopulations[] = {100, 200, 300, 400, 500,
                                        600, 700, 800, 900, 1000};
const double kDefaultScalingAlphas[] = {0.5, 0.9};

}  // namespace

extern "C" {

const char* prsi_version(void) { return PRSI_VERSION; }

const char* prsi_last_error(void) { return t_last_error.c_str(); }

/* ---- datasets -------------------------------------------------------- */

prsi_status prsi_dataset_load(const char* path, uint32_t n_max,
                              uint32_t n_item, prsi_dataset** out) {
  if (path == nullptr || out == nullptr)
    return arg_error("prsi_dataset_load: null pointer");
  return guarded([&] {
    auto* handle = new prsi_dataset{prsi::load_interactions(path, n_max,
                                                            n_item)};
    *out = handle;
  });
}

prsi_status prsi_dataset_synthetic(uint32_t n_user, uint32_t n_item,
                                   uint32_t n_max, uint64_t seed,
                                   prsi_dataset** out) {
  if (out == nullptr) return arg_error("prsi_dataset_synthetic: null output");
  return guarded([&] {
    auto* handle =
        new prsi_dataset{prsi::generate_synthetic(n_user, n_item, n_max,
                                                  seed)};
    *out = handle;
  });
}

uint32_t prsi_dataset_n_user(const prsi_dataset* data) {
  return data == nullptr ? 0
                         : static_cast<uint32_t>(data->data.users.size());
}

uint32_t prsi_dataset_n_item(const prsi_dataset* data) {
  return data == nullptr ? 0 : data->data.n_item;
}

void prsi_dataset_free(prsi_dataset* data) { delete data; }

/* ---- split demo ------------------------------------------------------ */

prsi_status prsi_split_demo_run(const prsi_split_config* cfg,
                                const uint32_t* items, size_t n_items,
                                uint64_t seed, prsi_split_demo** out) {
  if (cfg == nullptr || out == nullptr)
    return arg_error("prsi_split_demo_run: null pointer");
  if (items == nullptr && n_items != 0)
    return arg_error("prsi_split_demo_run: null items with nonzero count");
  return guarded([&] {
    prsi::SplitConfig split{cfg->n_item, cfg->n_max, cfg->c, cfg->s_spl};
    split.validate();
    prsi::Rng rng(seed);
    prsi::InteractionVector source;
    if (n_items == 0) {
      const std::unordered_set<std::uint32_t> none;
      const std::size_t len = 1 + rng.uniform_u32(cfg->n_max);
      source.items = prsi::sample_distinct(rng, cfg->n_item, len, none);
    } else {
      source.items.assign(items, items + n_items);
    }
    prsi::validate_interactions(source, split);

    auto shares = prsi::split_vector(source, split, rng);
    auto demo = std::make_unique<prsi_split_demo>();
    demo->n_star = split.n_star();
    demo->s_spl = cfg->s_spl;

    const auto full = prsi::speculate(shares, shares.size());
    demo->similarity.reserve(cfg->s_spl + 1);
    for (std::uint32_t t = 0; t <= cfg->s_spl; ++t)
      demo->similarity.push_back(
          prsi::jaccard_similarity(prsi::speculate(shares, t), full));

    std::vector<prsi::ItemId> truth = source.items;
    std::sort(truth.begin(), truth.end());
    demo->roundtrip_exact = prsi::reconstruct(shares).items == truth;
    *out = demo.release();
  });
}

uint32_t prsi_split_demo_n_star(const prsi_split_demo* demo) {
  return demo == nullptr ? 0 : demo->n_star;
}

uint32_t prsi_split_demo_share_count(const prsi_split_demo* demo) {
  return demo == nullptr ? 0 : demo->s_spl;
}

prsi_status prsi_split_demo_message_bytes(const prsi_split_demo* demo,
                                          uint32_t id_len, size_t* out) {
  if (demo == nullptr || out == nullptr)
    return arg_error("prsi_split_demo_message_bytes: null pointer");
  return guarded([&] {
    if (id_len == 0)
      prsi::fail(prsi::ErrorCode::invalid_argument,
                 "message bytes: zero id length");
    *out = static_cast<size_t>(prsi::message_size(id_len, demo->n_star));
  });
}

prsi_status prsi_split_demo_similarity_at(const prsi_split_demo* demo,
                                          uint32_t t, double* out) {
  if (demo == nullptr || out == nullptr)
    return arg_error("prsi_split_demo_similarity_at: null pointer");
  if (t >= demo->similarity.size())
    return arg_error("prsi_split_demo_similarity_at: t beyond share count");
  *out = demo->similarity[t];
  t_last_error.clear();
  return PRSI_OK;
}

int prsi_split_demo_roundtrip_exact(const prsi_split_demo* demo) {
  return demo != nullptr && demo->roundtrip_exact ? 1 : 0;
}

void prsi_split_demo_free(prsi_split_demo* demo) { delete demo; }

/* ---- pipeline -------------------------------------------------------- */

void prsi_pipeline_config_init(prsi_pipeline_config* cfg) {
  if (cfg == nullptr) return;
  cfg->n_user = 1000;
  cfg->n_item = 2000;
  cfg->n_max = 50;
  cfg->c = 2;
  cfg->s_spl = 50;
  cfg->alpha = 0.9;
  cfg->id_len = 7;
  cfg->max_rounds = 0;
  cfg->seed = 0;
  cfg->top_k = 10;
  cfg->recommender = nullptr;
}

prsi_status prsi_pipeline_run(const prsi_dataset* data,
                              const prsi_pipeline_config* cfg,
                              prsi_pipeline_result** out) {
  if (data == nullptr || cfg == nullptr || out == nullptr)
    return arg_error("prsi_pipeline_run: null pointer");
  return guarded([&] {
    prsi::PipelineConfig pc;
    pc.sim.n_user = cfg->n_user;
    pc.sim.split = {cfg->n_item, cfg->n_max, cfg->c, cfg->s_spl};
    pc.sim.alpha = cfg->alpha;
    pc.sim.id_len = cfg->id_len;
    if (cfg->max_rounds > 0xffffffffull)
      prsi::fail(prsi::ErrorCode::invalid_argument,
                 "pipeline: max_rounds beyond 32 bits");
    pc.sim.max_rounds = static_cast<std::uint32_t>(cfg->max_rounds);
    pc.sim.seed = cfg->seed;
    pc.rec.k = cfg->top_k;
    if (cfg->recommender != nullptr) pc.rec.kind = cfg->recommender;

    auto handle = std::make_unique<prsi_pipeline_result>();
    handle->result = prsi::run_pipeline(data->data, pc);
    handle->csv = prsi::metrics_csv(handle->result);
    handle->summary = prsi::summary_json(handle->result);
    *out = handle.release();
  });
}

void prsi_pipeline_result_upload(const prsi_pipeline_result* result,
                                 prsi_phase_metrics* out) {
  if (result == nullptr || out == nullptr) return;
  fill_metrics(result->result.upload, out);
}

void prsi_pipeline_result_download(const prsi_pipeline_result* result,
                                   prsi_phase_metrics* out) {
  if (result == nullptr || out == nullptr) return;
  fill_metrics(result->result.download, out);
}

void prsi_pipeline_result_fidelity(const prsi_pipeline_result* result,
                                   prsi_fidelity* out) {
  if (result == nullptr || out == nullptr) return;
  const prsi::PipelineResult& r = result->result;
  out->duplicate_vid_groups = r.duplicate_vid_groups;
  out->detected_collisions = r.detected_collisions;
  out->aggregated_groups = r.aggregated_groups;
  out->aggregate_failures = r.aggregate_failures;
  out->upload_expected = r.upload_expected;
  out->upload_exact = r.upload_exact;
  out->assembly_expected = r.assembly_expected;
  out->assembled_exact = r.assembled_exact;
  out->fidelity_ok = r.fidelity_ok ? 1 : 0;
}

const char* prsi_pipeline_result_csv(const prsi_pipeline_result* r) {
  return r == nullptr ? "" : r->csv.c_str();
}

const char* prsi_pipeline_result_summary(const prsi_pipeline_result* r) {
  return r == nullptr ? "" : r->summary.c_str();
}

void prsi_pipeline_result_free(prsi_pipeline_result* result) { delete result; }

/* ---- experiments ----------------------------------------------------- */

void prsi_attack_params_init(prsi_attack_params* params) {
  if (params == nullptr) return;
  const prsi::AttackParams d;
  params->s_spl_values = kDefaultSspl;
  params->n_s_spl_values = std::size(kDefaultSspl);
  params->c = d.c;
  params->n_item = d.n_item;
  params->n_max = d.n_max;
  params->trials = d.trials;
  params->seed = d.seed;
}

void prsi_ratio_params_init(prsi_ratio_params* params) {
  if (params == nullptr) return;
  const prsi::RatioParams d;
  params->c_values = kDefaultRatios;
  params->n_c_values = std::size(kDefaultRatios);
  params->s_spl = d.s_spl;
  params->n_item = d.n_item;
  params->n_max = d.n_max;
  params->trials = d.trials;
  params->seed = d.seed;
}

void prsi_id_collision_params_init(prsi_id_collision_params* params) {
  if (params == nullptr) return;
  const prsi::IdCollisionParams d;
  params->id_lengths = kDefaultIdLens;
  params->n_id_lengths = std::size(kDefaultIdLens);
  params->n_user = d.n_user;
  params->trials = d.trials;
  params->seed = d.seed;
}

void prsi_alpha_sweep_params_init(prsi_alpha_sweep_params* params) {
  if (params == nullptr) return;
  const prsi::AlphaSweepParams d;
  params->alphas = kDefaultAlphas;
  params->n_alphas = std::size(kDefaultAlphas);
  params->n_user = d.n_user;
  params->n_item = d.n_item;
  params->n_max = d.n_max;
  params->c = d.c;
  params->s_spl = d.s_spl;
  params->id_len = d.id_len;
  params->top_k = d.k;
  params->trials = d.trials;
  params->seed = d.seed;
}

void prsi_scaling_params_init(prsi_scaling_params* params) {
  if (params == nullptr) return;
  const prsi::ScalingParams d;
  params->n_users = kDefaultPopulations;
  params->n_n_users = std::size(kDefaultPopulations);
  params->alphas = kDefaultScalingAlphas;
  params->n_alphas = std::size(kDefaultScalingAlphas);
  params->n_item = d.n_item;
  params->n_max = d.n_max;
  params->c = d.c;
  params->s_spl = d.s_spl;
  params->id_len = d.id_len;
  params->top_k = d.k;
  params->trials = d.trials;
  params->seed = d.seed;
}

prsi_status prsi_attack_run(const prsi_attack_params* params,
                            prsi_experiment** out) {
  if (params == nullptr || out == nullptr)
    return arg_error("prsi_attack_run: null pointer");
  if (params->s_spl_values == nullptr && params->n_s_spl_values != 0)
    return arg_error("prsi_attack_run: null list with nonzero count");
  return guarded([&] {
    prsi::AttackParams p;
    p.s_spl_values.assign(params->s_spl_values,
                          params->s_spl_values + params->n_s_spl_values);
    p.c = params->c;
    p.n_item = params->n_item;
    p.n_max = params->n_max;
    p.trials = params->trials;
    p.seed = params->seed;
    *out = wrap(prsi::attack_curve(p));
  });
}

prsi_status prsi_ratio_run(const prsi_ratio_params* params,
                           prsi_experiment** out) {
  if (params == nullptr || out == nullptr)
    return arg_error("prsi_ratio_run: null pointer");
  if (params->c_values == nullptr && params->n_c_values != 0)
    return arg_error("prsi_ratio_run: null list with nonzero count");
  return guarded([&] {
    prsi::RatioParams p;
    p.c_values.assign(params->c_values, params->c_values + params->n_c_values);
    p.s_spl = params->s_spl;
    p.n_item = params->n_item;
    p.n_max = params->n_max;
    p.trials = params->trials;
    p.seed = params->seed;
    *out = wrap(prsi::ratio_curve(p));
  });
}

prsi_status prsi_id_collision_run(const prsi_id_collision_params* params,
                                  prsi_experiment** out) {
  if (params == nullptr || out == nullptr)
    return arg_error("prsi_id_collision_run: null pointer");
  if (params->id_lengths == nullptr && params->n_id_lengths != 0)
    return arg_error("prsi_id_collision_run: null list with nonzero count");
  return guarded([&] {
    prsi::IdCollisionParams p;
    p.id_lengths.assign(params->id_lengths,
                        params->id_lengths + params->n_id_lengths);
    p.n_user = params->n_user;
    p.trials = params->trials;
    p.seed = params->seed;
    *out = wrap(prsi::id_collision_curve(p));
  });
}

prsi_status prsi_alpha_sweep_run(const prsi_alpha_sweep_params* params,
                                 prsi_experiment** out) {
  if (params == nullptr || out == nullptr)
    return arg_error("prsi_alpha_sweep_run: null pointer");
  if (params->alphas == nullptr && params->n_alphas != 0)
    return arg_error("prsi_alpha_sweep_run: null list with nonzero count");
  return guarded([&] {
    prsi::AlphaSweepParams p;
    p.alphas.assign(params->alphas, params->alphas + params->n_alphas);
    p.n_user = params->n_user;
    p.n_item = params->n_item;
    p.n_max = params->n_max;
    p.c = params->c;
    p.s_spl = params->s_spl;
    p.id_len = params->id_len;
    p.k = params->top_k;
    p.trials = params->trials;
    p.seed = params->seed;
    *out = wrap(prsi::alpha_sweep(p));
  });
}

prsi_status prsi_scaling_run(const prsi_scaling_params* params,
                             prsi_experiment** out) {
  if (params == nullptr || out == nullptr)
    return arg_error("prsi_scaling_run: null pointer");
  if ((params->n_users == nullptr && params->n_n_users != 0) ||
      (params->alphas == nullptr && params->n_alphas != 0))
    return arg_error("prsi_scaling_run: null list with nonzero count");
  return guarded([&] {
    prsi::ScalingParams p;
    p.n_users.assign(params->n_users, params->n_users + params->n_n_users);
    p.alphas.assign(params->alphas, params->alphas + params->n_alphas);
    p.n_item = params->n_item;
    p.n_max = params->n_max;
    p.c = params->c;
    p.s_spl = params->s_spl;
    p.id_len = params->id_len;
    p.k = params->top_k;
    p.trials = params->trials;
    p.seed = params->seed;
    *out = wrap(prsi::scaling_curve(p));
  });
}

const char* prsi_experiment_name(const prsi_experiment* exp) {
  return exp == nullptr ? "" : exp->result.name.c_str();
}

int prsi_experiment_passed(const prsi_experiment* exp) {
  return exp != nullptr && exp->result.passed() ? 1 : 0;
}

const char* prsi_experiment_csv(const prsi_experiment* exp) {
  return exp == nullptr ? "" : exp->csv.c_str();
}

const char* prsi_experiment_summary(const prsi_experiment* exp) {
  return exp == nullptr ? "" : exp->summary.c_str();
}

size_t prsi_experiment_assertion_count(const prsi_experiment* exp) {
  return exp == nullptr ? 0 : exp->result.assertions.size();
}

prsi_status prsi_experiment_assertion(const prsi_experiment* exp, size_t index,
                                      prsi_assertion_view* out) {
  if (exp == nullptr || out == nullptr)
    return arg_error("prsi_experiment_assertion: null pointer");
  if (index >= exp->result.assertions.size())
    return arg_error("prsi_experiment_assertion: index out of range");
  const prsi::ExperimentAssertion& a = exp->result.assertions[index];
  out->name = a.name.c_str();
  out->passed = a.passed ? 1 : 0;
  out->observed = a.observed;
  out->detail = a.detail.c_str();
  t_last_error.clear();
  return PRSI_OK;
}

prsi_status prsi_experiment_write(const prsi_experiment* exp,
                                  const char* out_dir) {
  if (exp == nullptr || out_dir == nullptr)
    return arg_error("prsi_experiment_write: null pointer");
  return guarded([&] { prsi::write_result(exp->result, out_dir); });
}

void prsi_experiment_free(prsi_experiment* exp) { delete exp; }

}  // extern "C"
