// Command-line front end for the prsi shared library. Every subcommand that
// writes files first drops a manifest.json with the fully resolved
// configuration, so a run can be reproduced from its output directory alone.
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "prsi.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitError = 1;        // runtime failure
constexpr int kExitCheckFailed = 2;  // run finished but a check did not hold

// Raised when results are produced but their built-in checks fail.
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(prsi_status status) {
  if (status != PRSI_OK) throw std::runtime_error(prsi_last_error());
}

template <typename T>
using Handle = std::unique_ptr<T, void (*)(T*)>;

void write_text(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move " + tmp + " into place");
}

void write_manifest(const std::string& out_dir, const std::string& command,
                    ordered_json config, ordered_json input) {
  std::filesystem::create_directories(out_dir);
  ordered_json manifest;
  manifest["tool"] = "prsi";
  manifest["version"] = prsi_version();
  manifest["command"] = command;
  manifest["config"] = std::move(config);
  if (!input.is_null()) manifest["input"] = std::move(input);
  write_text(out_dir + "/manifest.json", manifest.dump(2) + "\n");
}

// Accepts "5", "1..8" (inclusive, step 1), "100..1000:100", and comma-joined
// combinations of those.
std::vector<std::uint32_t> parse_u32_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string piece = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (piece.empty())
      throw CLI::ValidationError("list", "empty element in '" + text + "'");
    const auto parse_one = [&](const std::string& s) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (s.empty() || used != s.size() || v > 0xfffffffful)
        throw CLI::ValidationError("list", "bad number '" + s + "'");
      return static_cast<std::uint32_t>(v);
    };
    const std::size_t dots = piece.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_one(piece));
      continue;
    }
    const std::size_t colon = piece.find(':', dots + 2);
    const std::uint32_t lo = parse_one(piece.substr(0, dots));
    const std::uint32_t hi =
        parse_one(piece.substr(dots + 2, colon == std::string::npos
                                             ? std::string::npos
                                             : colon - dots - 2));
    const std::uint32_t step =
        colon == std::string::npos ? 1 : parse_one(piece.substr(colon + 1));
    if (step == 0 || hi < lo)
      throw CLI::ValidationError("list", "bad range '" + piece + "'");
    for (std::uint64_t v = lo; v <= hi; v += step)
      out.push_back(static_cast<std::uint32_t>(v));
  }
  if (out.empty()) throw CLI::ValidationError("list", "no values");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string piece = text.substr(pos, comma - pos);
    pos = comma + 1;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(piece, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (piece.empty() || used != piece.size())
      throw CLI::ValidationError("list", "bad number '" + piece + "'");
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError("list", "no values");
  return out;
}

std::string join_u32(const std::vector<std::uint32_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string join_double(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out.push_back(',');
    out += fmt_double(xs[i]);
  }
  return out;
}

// Prints one line per built-in check and reports whether all of them held.
bool report_assertions(const prsi_experiment* exp) {
  const size_t count = prsi_experiment_assertion_count(exp);
  for (size_t i = 0; i < count; ++i) {
    prsi_assertion_view view{};
    check(prsi_experiment_assertion(exp, i, &view));
    std::printf("%s %s observed=%s (%s)\n", view.passed ? "[PASS]" : "[FAIL]",
                view.name, fmt_double(view.observed).c_str(), view.detail);
  }
  return prsi_experiment_passed(exp) != 0;
}

void finish_experiment(const prsi_experiment* exp, const std::string& out_dir) {
  check(prsi_experiment_write(exp, out_dir.c_str()));
  std::printf("wrote %s/%s.csv and %s/%s.summary.json\n", out_dir.c_str(),
              prsi_experiment_name(exp), out_dir.c_str(),
              prsi_experiment_name(exp));
  if (!report_assertions(exp)) throw CheckFailed("a built-in check failed");
}

struct SplitDemoOpts {
  std::uint32_t n_item = 2000, n_max = 50, c = 2, s_spl = 50, id_len = 7;
  std::uint64_t seed = 0;
  std::string items_text;
};

void run_split_demo(const SplitDemoOpts& opt) {
  prsi_split_config cfg{opt.n_item, opt.n_max, opt.c, opt.s_spl};
  std::vector<std::uint32_t> items;
  if (!opt.items_text.empty()) items = parse_u32_list(opt.items_text);

  prsi_split_demo* raw = nullptr;
  check(prsi_split_demo_run(&cfg, items.empty() ? nullptr : items.data(),
                            items.size(), opt.seed, &raw));
  Handle<prsi_split_demo> demo(raw, prsi_split_demo_free);

  size_t bytes = 0;
  check(prsi_split_demo_message_bytes(demo.get(), opt.id_len, &bytes));
  std::printf("shares: %u over %u padded dimensions, %zu bytes each on the wire\n",
              prsi_split_demo_share_count(demo.get()),
              prsi_split_demo_n_star(demo.get()), bytes);

  const std::uint32_t s = opt.s_spl;
  std::set<std::uint32_t> ts{0, s / 4, s / 2, 3 * s / 4, s - 1, s};
  std::printf("similarity of a partial sum to the full vector:\n");
  for (std::uint32_t t : ts) {
    double sim = 0.0;
    check(prsi_split_demo_similarity_at(demo.get(), t, &sim));
    std::printf("  t=%-4u %s\n", t, fmt_double(sim).c_str());
  }
  std::printf("round trip with all shares: %s\n",
              prsi_split_demo_roundtrip_exact(demo.get()) ? "exact"
                                                          : "MISMATCH");
  if (!prsi_split_demo_roundtrip_exact(demo.get()))
    throw CheckFailed("round trip mismatch");
}

struct PipelineOpts {
  std::uint32_t n_user = 1000, n_item = 2000, n_max = 50, c = 2, s_spl = 50;
  std::uint32_t id_len = 7, top_k = 10;
  double alpha = 0.9;
  std::uint64_t max_rounds = 0, seed = 0;
  std::string recommender = "popularity";
  std::string data_path;
  std::string out_dir;
};

void run_pipeline_cmd(const PipelineOpts& opt) {
  Handle<prsi_dataset> data(nullptr, prsi_dataset_free);
  ordered_json input;
  prsi_dataset* raw_data = nullptr;
  std::uint32_t n_user = opt.n_user;
  std::uint32_t n_item = opt.n_item;
  if (!opt.data_path.empty()) {
    check(prsi_dataset_load(opt.data_path.c_str(), opt.n_max, opt.n_item,
                            &raw_data));
    data.reset(raw_data);
    n_user = prsi_dataset_n_user(data.get());
    n_item = prsi_dataset_n_item(data.get());
    input = {{"kind", "file"},
             {"path", opt.data_path},
             {"n_user", n_user},
             {"n_item", n_item}};
  } else {
    check(prsi_dataset_synthetic(opt.n_user, opt.n_item, opt.n_max, opt.seed,
                                 &raw_data));
    data.reset(raw_data);
    input = {{"kind", "synthetic"},
             {"n_user", n_user},
             {"n_item", n_item},
             {"n_max", opt.n_max},
             {"seed", opt.seed}};
  }

  ordered_json config{{"n_user", n_user},
                      {"n_item", n_item},
                      {"n_max", opt.n_max},
                      {"c", opt.c},
                      {"s_spl", opt.s_spl},
                      {"alpha", opt.alpha},
                      {"id_len", opt.id_len},
                      {"max_rounds", opt.max_rounds},
                      {"seed", opt.seed},
                      {"top_k", opt.top_k},
                      {"recommender", opt.recommender}};
  write_manifest(opt.out_dir, "pipeline", std::move(config), std::move(input));

  prsi_pipeline_config cfg;
  prsi_pipeline_config_init(&cfg);
  cfg.n_user = n_user;
  cfg.n_item = n_item;
  cfg.n_max = opt.n_max;
  cfg.c = opt.c;
  cfg.s_spl = opt.s_spl;
  cfg.alpha = opt.alpha;
  cfg.id_len = opt.id_len;
  cfg.max_rounds = opt.max_rounds;
  cfg.seed = opt.seed;
  cfg.top_k = opt.top_k;
  cfg.recommender = opt.recommender.c_str();

  prsi_pipeline_result* raw = nullptr;
  check(prsi_pipeline_run(data.get(), &cfg, &raw));
  Handle<prsi_pipeline_result> result(raw, prsi_pipeline_result_free);

  write_text(opt.out_dir + "/pipeline_metrics.csv",
             prsi_pipeline_result_csv(result.get()));
  write_text(opt.out_dir + "/pipeline_summary.json",
             prsi_pipeline_result_summary(result.get()));

  prsi_phase_metrics up{}, down{};
  prsi_fidelity fid{};
  prsi_pipeline_result_upload(result.get(), &up);
  prsi_pipeline_result_download(result.get(), &down);
  prsi_pipeline_result_fidelity(result.get(), &fid);

  std::printf("upload:   %llu bytes, %llu peer hops, %llu server flushes, "
              "%llu rounds, %s sends/client\n",
              (unsigned long long)up.total_bytes,
              (unsigned long long)up.messages_client_to_client,
              (unsigned long long)up.messages_to_server,
              (unsigned long long)up.rounds_used,
              fmt_double(up.mean_sends_per_client).c_str());
  std::printf("download: %llu bytes, %llu dispatches, %llu peer hops, "
              "%llu rounds, %llu undelivered\n",
              (unsigned long long)down.total_bytes,
              (unsigned long long)down.messages_server_to_client,
              (unsigned long long)down.messages_client_to_client,
              (unsigned long long)down.rounds_used,
              (unsigned long long)down.undelivered);
  std::printf("fidelity: upload %llu/%llu exact, assembly %llu/%llu exact, "
              "%llu duplicate vid groups (%llu detected)\n",
              (unsigned long long)fid.upload_exact,
              (unsigned long long)fid.upload_expected,
              (unsigned long long)fid.assembled_exact,
              (unsigned long long)fid.assembly_expected,
              (unsigned long long)fid.duplicate_vid_groups,
              (unsigned long long)fid.detected_collisions);
  std::printf("wrote %s/manifest.json, pipeline_metrics.csv, "
              "pipeline_summary.json\n",
              opt.out_dir.c_str());
  if (!fid.fidelity_ok) throw CheckFailed("fidelity check failed");
}

struct ExperimentOpts {
  std::string list_a, list_b;  // meaning depends on the subcommand
  std::uint32_t n_user = 0, n_item = 0, n_max = 0, c = 0, s_spl = 0;
  std::uint32_t id_len = 0, top_k = 0, trials = 0;
  std::uint64_t seed = 0;
  std::string out_dir;
};

void run_attack(const ExperimentOpts& opt) {
  prsi_attack_params p;
  prsi_attack_params_init(&p);
  std::vector<std::uint32_t> values(
      p.s_spl_values, p.s_spl_values + p.n_s_spl_values);
  if (!opt.list_a.empty()) values = parse_u32_list(opt.list_a);
  p.s_spl_values = values.data();
  p.n_s_spl_values = values.size();
  p.c = opt.c;
  p.n_item = opt.n_item;
  p.n_max = opt.n_max;
  p.trials = opt.trials;
  p.seed = opt.seed;

  write_manifest(opt.out_dir, "attack",
                 {{"s_spl_values", join_u32(values)},
                  {"c", p.c},
                  {"n_item", p.n_item},
                  {"n_max", p.n_max},
                  {"trials", p.trials},
                  {"seed", p.seed}},
                 {});
  prsi_experiment* raw = nullptr;
  check(prsi_attack_run(&p, &raw));
  Handle<prsi_experiment> exp(raw, prsi_experiment_free);
  finish_experiment(exp.get(), opt.out_dir);
}

void run_ratio(const ExperimentOpts& opt) {
  prsi_ratio_params p;
  prsi_ratio_params_init(&p);
  std::vector<std::uint32_t> values(p.c_values, p.c_values + p.n_c_values);
  if (!opt.list_a.empty()) values = parse_u32_list(opt.list_a);
  p.c_values = values.data();
  p.n_c_values = values.size();
  p.s_spl = opt.s_spl;
  p.n_item = opt.n_item;
  p.n_max = opt.n_max;
  p.trials = opt.trials;
  p.seed = opt.seed;

  write_manifest(opt.out_dir, "ratio",
                 {{"c_values", join_u32(values)},
                  {"s_spl", p.s_spl},
                  {"n_item", p.n_item},
                  {"n_max", p.n_max},
                  {"trials", p.trials},
                  {"seed", p.seed}},
                 {});
  prsi_experiment* raw = nullptr;
  check(prsi_ratio_run(&p, &raw));
  Handle<prsi_experiment> exp(raw, prsi_experiment_free);
  finish_experiment(exp.get(), opt.out_dir);
}

void run_id_collision(const ExperimentOpts& opt) {
  prsi_id_collision_params p;
  prsi_id_collision_params_init(&p);
  std::vector<std::uint32_t> lengths(p.id_lengths,
                                     p.id_lengths + p.n_id_lengths);
  if (!opt.list_a.empty()) lengths = parse_u32_list(opt.list_a);
  p.id_lengths = lengths.data();
  p.n_id_lengths = lengths.size();
  p.n_user = opt.n_user;
  p.trials = opt.trials;
  p.seed = opt.seed;

  write_manifest(opt.out_dir, "id-collision",
                 {{"id_lengths", join_u32(lengths)},
                  {"n_user", p.n_user},
                  {"trials", p.trials},
                  {"seed", p.seed}},
                 {});
  prsi_experiment* raw = nullptr;
  check(prsi_id_collision_run(&p, &raw));
  Handle<prsi_experiment> exp(raw, prsi_experiment_free);
  finish_experiment(exp.get(), opt.out_dir);
}

void run_alpha_sweep(const ExperimentOpts& opt) {
  prsi_alpha_sweep_params p;
  prsi_alpha_sweep_params_init(&p);
  std::vector<double> alphas(p.alphas, p.alphas + p.n_alphas);
  if (!opt.list_a.empty()) alphas = parse_double_list(opt.list_a);
  p.alphas = alphas.data();
  p.n_alphas = alphas.size();
  p.n_user = opt.n_user;
  p.n_item = opt.n_item;
  p.n_max = opt.n_max;
  p.c = opt.c;
  p.s_spl = opt.s_spl;
  p.id_len = opt.id_len;
  p.top_k = opt.top_k;
  p.trials = opt.trials;
  p.seed = opt.seed;

  write_manifest(opt.out_dir, "alpha-sweep",
                 {{"alphas", join_double(alphas)},
                  {"n_user", p.n_user},
                  {"n_item", p.n_item},
                  {"n_max", p.n_max},
                  {"c", p.c},
                  {"s_spl", p.s_spl},
                  {"id_len", p.id_len},
                  {"top_k", p.top_k},
                  {"trials", p.trials},
                  {"seed", p.seed}},
                 {});
  prsi_experiment* raw = nullptr;
  check(prsi_alpha_sweep_run(&p, &raw));
  Handle<prsi_experiment> exp(raw, prsi_experiment_free);
  finish_experiment(exp.get(), opt.out_dir);
}

void run_scaling(const ExperimentOpts& opt) {
  prsi_scaling_params p;
  prsi_scaling_params_init(&p);
  std::vector<std::uint32_t> populations(p.n_users, p.n_users + p.n_n_users);
  if (!opt.list_a.empty()) populations = parse_u32_list(opt.list_a);
  std::vector<double> alphas(p.alphas, p.alphas + p.n_alphas);
  if (!opt.list_b.empty()) alphas = parse_double_list(opt.list_b);
  p.n_users = populations.data();
  p.n_n_users = populations.size();
  p.alphas = alphas.data();
  p.n_alphas = alphas.size();
  p.n_item = opt.n_item;
  p.n_max = opt.n_max;
  p.c = opt.c;
  p.s_spl = opt.s_spl;
  p.id_len = opt.id_len;
  p.top_k = opt.top_k;
  p.trials = opt.trials;
  p.seed = opt.seed;

  write_manifest(opt.out_dir, "scaling",
                 {{"n_users", join_u32(populations)},
                  {"alphas", join_double(alphas)},
                  {"n_item", p.n_item},
                  {"n_max", p.n_max},
                  {"c", p.c},
                  {"s_spl", p.s_spl},
                  {"id_len", p.id_len},
                  {"top_k", p.top_k},
                  {"trials", p.trials},
                  {"seed", p.seed}},
                 {});
  prsi_experiment* raw = nullptr;
  check(prsi_scaling_run(&p, &raw));
  Handle<prsi_experiment> exp(raw, prsi_experiment_free);
  finish_experiment(exp.get(), opt.out_dir);
}

void add_out_dir(CLI::App* cmd, std::string& out_dir) {
  cmd->add_option("--out-dir", out_dir, "Output directory")
      ->envname("PRSI_OUT_DIR")
      ->default_val("out");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy-preserving recommendation protocol simulator"};
  app.set_config("--config", "", "Read options from an INI file");
  app.set_version_flag("--version", std::string(prsi_version()));
  app.require_subcommand(1);

  SplitDemoOpts sd;
  CLI::App* split_demo =
      app.add_subcommand("split-demo",
                         "Split one interaction vector and show what a "
                         "partial share set reveals");
  split_demo->add_option("--n-item", sd.n_item, "Catalogue size")
      ->default_val(2000);
  split_demo->add_option("--n-max", sd.n_max, "Interaction cap per user")
      ->default_val(50);
  split_demo->add_option("--c", sd.c, "Padding ratio")->default_val(2);
  split_demo->add_option("--s-spl", sd.s_spl, "Shares per vector")
      ->default_val(50);
  split_demo->add_option("--id-len", sd.id_len, "Virtual id length")
      ->default_val(7);
  split_demo->add_option("--seed", sd.seed, "Master seed")->default_val(0);
  split_demo->add_option("--items", sd.items_text,
                         "Item ids to split (default: random history)");

  PipelineOpts pl;
  CLI::App* pipeline = app.add_subcommand(
      "pipeline", "Run upload, aggregation, recommendation, and download");
  pipeline->add_option("--n-user", pl.n_user, "Number of clients")
      ->default_val(1000);
  pipeline->add_option("--n-item", pl.n_item, "Catalogue size")
      ->default_val(2000);
  pipeline->add_option("--n-max", pl.n_max, "Interaction cap per user")
      ->default_val(50);
  pipeline->add_option("--c", pl.c, "Padding ratio")->default_val(2);
  pipeline->add_option("--s-spl", pl.s_spl, "Shares per vector")
      ->default_val(50);
  pipeline->add_option("--alpha", pl.alpha, "Forwarding decay in (0,1)")
      ->default_val(0.9);
  pipeline->add_option("--id-len", pl.id_len, "Virtual id length")
      ->default_val(7);
  pipeline->add_option("--max-rounds", pl.max_rounds,
                       "Round budget per phase (0: ten per client)")
      ->default_val(0);
  pipeline->add_option("--seed", pl.seed, "Master seed")->default_val(0);
  pipeline->add_option("--top-k", pl.top_k, "Recommendation list length")
      ->default_val(10);
  pipeline->add_option("--recommender", pl.recommender,
                       "Recommendation strategy")
      ->default_val("popularity");
  pipeline->add_option("--data", pl.data_path,
                       "Interaction file (default: synthetic data)");
  add_out_dir(pipeline, pl.out_dir);

  ExperimentOpts at;
  CLI::App* attack = app.add_subcommand(
      "attack", "Partial-share similarity over the share count");
  attack->add_option("--s-spl-values", at.list_a,
                     "Share counts, e.g. 50,100,200");
  attack->add_option("--c", at.c, "Padding ratio")->default_val(2);
  attack->add_option("--n-item", at.n_item, "Catalogue size")
      ->default_val(2000);
  attack->add_option("--n-max", at.n_max, "Interaction cap per user")
      ->default_val(50);
  attack->add_option("--trials", at.trials, "Trials per point")
      ->default_val(20);
  attack->add_option("--seed", at.seed, "Master seed")->default_val(0);
  add_out_dir(attack, at.out_dir);

  ExperimentOpts ra;
  CLI::App* ratio = app.add_subcommand(
      "ratio", "Partial-share similarity over the padding ratio");
  ratio->add_option("--c-values", ra.list_a, "Padding ratios, e.g. 2,4,6");
  ratio->add_option("--s-spl", ra.s_spl, "Shares per vector")
      ->default_val(100);
  ratio->add_option("--n-item", ra.n_item, "Catalogue size")
      ->default_val(2000);
  ratio->add_option("--n-max", ra.n_max, "Interaction cap per user")
      ->default_val(50);
  ratio->add_option("--trials", ra.trials, "Trials per point")
      ->default_val(20);
  ratio->add_option("--seed", ra.seed, "Master seed")->default_val(0);
  add_out_dir(ratio, ra.out_dir);

  ExperimentOpts ic;
  CLI::App* id_collision = app.add_subcommand(
      "id-collision", "Virtual id repetition rate over the id length");
  id_collision->add_option("--id-lengths", ic.list_a,
                           "Id lengths, e.g. 1..8");
  id_collision->add_option("--n-user", ic.n_user, "Ids drawn per trial")
      ->default_val(31831);
  id_collision->add_option("--trials", ic.trials, "Trials per point")
      ->default_val(20);
  id_collision->add_option("--seed", ic.seed, "Master seed")->default_val(0);
  add_out_dir(id_collision, ic.out_dir);

  ExperimentOpts as;
  CLI::App* alpha_sweep = app.add_subcommand(
      "alpha-sweep", "Communication cost over the forwarding decay");
  alpha_sweep->add_option("--alphas", as.list_a,
                          "Decay factors, e.g. 0.5,0.7,0.9");
  alpha_sweep->add_option("--n-user", as.n_user, "Number of clients")
      ->default_val(1000);
  alpha_sweep->add_option("--n-item", as.n_item, "Catalogue size")
      ->default_val(2000);
  alpha_sweep->add_option("--n-max", as.n_max, "Interaction cap per user")
      ->default_val(50);
  alpha_sweep->add_option("--c", as.c, "Padding ratio")->default_val(2);
  alpha_sweep->add_option("--s-spl", as.s_spl, "Shares per vector")
      ->default_val(50);
  alpha_sweep->add_option("--id-len", as.id_len, "Virtual id length")
      ->default_val(7);
  alpha_sweep->add_option("--top-k", as.top_k, "Recommendation list length")
      ->default_val(10);
  alpha_sweep->add_option("--trials", as.trials, "Trials per point")
      ->default_val(10);
  alpha_sweep->add_option("--seed", as.seed, "Master seed")->default_val(0);
  add_out_dir(alpha_sweep, as.out_dir);

  ExperimentOpts sc;
  CLI::App* scaling = app.add_subcommand(
      "scaling", "Communication cost over the population size");
  scaling->add_option("--n-users", sc.list_a,
                      "Population sizes, e.g. 100..1000:100");
  scaling->add_option("--alphas", sc.list_b, "Decay factors, e.g. 0.5,0.9");
  scaling->add_option("--n-item", sc.n_item, "Catalogue size")
      ->default_val(2000);
  scaling->add_option("--n-max", sc.n_max, "Interaction cap per user")
      ->default_val(50);
  scaling->add_option("--c", sc.c, "Padding ratio")->default_val(2);
  scaling->add_option("--s-spl", sc.s_spl, "Shares per vector")
      ->default_val(1000);
  scaling->add_option("--id-len", sc.id_len, "Virtual id length")
      ->default_val(7);
  scaling->add_option("--top-k", sc.top_k, "Recommendation list length")
      ->default_val(10);
  scaling->add_option("--trials", sc.trials, "Trials per point")
      ->default_val(3);
  scaling->add_option("--seed", sc.seed, "Master seed")->default_val(0);
  add_out_dir(scaling, sc.out_dir);

  CLI11_PARSE(app, argc, argv);

  try {
    if (split_demo->parsed()) run_split_demo(sd);
    if (pipeline->parsed()) run_pipeline_cmd(pl);
    if (attack->parsed()) run_attack(at);
    if (ratio->parsed()) run_ratio(ra);
    if (id_collision->parsed()) run_id_collision(ic);
    if (alpha_sweep->parsed()) run_alpha_sweep(as);
    if (scaling->parsed()) run_scaling(sc);
  } catch (const CheckFailed& e) {
    std::fprintf(stderr, "check failed: %s\n", e.what());
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return 0;
}
