#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "experiments.hpp"
#include "io.hpp"
#include "test_support.hpp"

using namespace prsi;
using test_support::expect_error;
using test_support::TempDir;

namespace {

AttackParams tiny_attack() {
  AttackParams p;
  p.s_spl_values = {3, 5};
  p.c = 2;
  p.n_item = 200;
  p.n_max = 10;
  p.trials = 4;
  p.seed = 7;
  return p;
}

AlphaSweepParams tiny_sweep() {
  AlphaSweepParams p;
  p.alphas = {0.5, 0.9};
  p.n_user = 20;
  p.n_item = 300;
  p.n_max = 10;
  p.c = 2;
  p.s_spl = 5;
  p.id_len = 7;
  p.k = 3;
  p.trials = 2;
  p.seed = 1;
  return p;
}

const ExperimentAssertion* find_assertion(const ExperimentResult& r,
                                          const std::string& name) {
  const auto it =
      std::find_if(r.assertions.begin(), r.assertions.end(),
                   [&](const ExperimentAssertion& a) { return a.name == name; });
  return it == r.assertions.end() ? nullptr : &*it;
}

}  // namespace

TEST_CASE("the attack curve sweeps every prefix length per share count") {
  const ExperimentResult r = attack_curve(tiny_attack());
  CHECK(r.name == "attack_curve");
  CHECK(r.columns == std::vector<std::string>{"s_spl", "t", "mean_jaccard",
                                              "std_jaccard", "n_trials"});
  REQUIRE(r.rows.size() == (3 + 1) + (5 + 1));
  for (const auto& row : r.rows) {
    REQUIRE(row.size() == 5);
    CHECK(row[4] == 4);  // every point aggregates all trials
    CHECK(row[2] >= 0.0);
    CHECK(row[2] <= 1.0);
  }

  // The complete share set always reproduces the vector exactly.
  for (const std::uint32_t s : {3u, 5u}) {
    const auto* exact =
        find_assertion(r, "full_set_exact_s_spl_" + std::to_string(s));
    REQUIRE(exact != nullptr);
    CHECK(exact->passed);
    CHECK(exact->observed == 1.0);
    const auto last = std::find_if(r.rows.begin(), r.rows.end(),
                                   [&](const std::vector<double>& row) {
                                     return row[0] == s && row[1] == s;
                                   });
    REQUIRE(last != r.rows.end());
    CHECK((*last)[2] == 1.0);
    CHECK((*last)[3] == 0.0);
  }

  expect_error(ErrorCode::invalid_argument, "at least one trial", [] {
    AttackParams p = tiny_attack();
    p.trials = 0;
    attack_curve(p);
  });
  expect_error(ErrorCode::invalid_argument, "no share counts", [] {
    AttackParams p = tiny_attack();
    p.s_spl_values.clear();
    attack_curve(p);
  });
}

TEST_CASE("the ratio curve spans the padding ratios at one share count") {
  RatioParams p;
  p.c_values = {2, 3};
  p.s_spl = 4;
  p.n_item = 200;
  p.n_max = 10;
  p.trials = 3;
  p.seed = 2;

  const ExperimentResult r = ratio_curve(p);
  CHECK(r.name == "ratio_curve");
  REQUIRE(r.rows.size() == 2 * (4 + 1));
  for (const std::uint32_t c : {2u, 3u}) {
    const auto* exact = find_assertion(r, "full_set_exact_c_" +
                                              std::to_string(c));
    REQUIRE(exact != nullptr);
    CHECK(exact->passed);
  }

  expect_error(ErrorCode::invalid_argument, "no padding ratios", [&] {
    RatioParams bad = p;
    bad.c_values.clear();
    ratio_curve(bad);
  });
}

TEST_CASE("the id collision curve reports one rate per length") {
  IdCollisionParams p;
  p.id_lengths = {1, 7};
  p.n_user = 200;
  p.trials = 3;
  p.seed = 5;

  const ExperimentResult r = id_collision_curve(p);
  CHECK(r.name == "id_collision_curve");
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0][0] == 1);
  CHECK(r.rows[0][1] > 0.5);   // 200 draws over 62 ids collide heavily
  CHECK(r.rows[1][0] == 7);
  CHECK(r.rows[1][1] == 0.0);  // 62^7 ids swallow 200 draws

  // The length-7 claim is asserted only when that length is swept.
  REQUIRE(r.assertions.size() == 1);
  CHECK(r.assertions.front().name == "zero_repetition_at_len_7");
  CHECK(r.assertions.front().passed);

  IdCollisionParams no_seven = p;
  no_seven.id_lengths = {1, 2};
  CHECK(id_collision_curve(no_seven).assertions.empty());

  expect_error(ErrorCode::invalid_argument, "zero id length", [&] {
    IdCollisionParams bad = p;
    bad.id_lengths = {0};
    id_collision_curve(bad);
  });
  expect_error(ErrorCode::invalid_argument, "at least one user", [&] {
    IdCollisionParams bad = p;
    bad.n_user = 0;
    id_collision_curve(bad);
  });
}

TEST_CASE("the decay sweep prices both phases per alpha") {
  const ExperimentResult r = alpha_sweep(tiny_sweep());
  CHECK(r.name == "alpha_sweep");
  REQUIRE(r.rows.size() == 2);
  for (const auto& row : r.rows) {
    REQUIRE(row.size() == r.columns.size());
    CHECK(row[1] > 0);  // upload bytes
    CHECK(row[3] > 0);  // download bytes
    CHECK(row[5] == doctest::Approx(row[1] + row[3]));
    CHECK(row[7] == 2);  // completed trials
    CHECK(row[8] == 0);  // incomplete runs
  }
  CHECK(find_assertion(r, "upload_bytes_rise_with_alpha") != nullptr);
  CHECK(find_assertion(r, "download_bytes_fall_with_alpha") != nullptr);
  REQUIRE(find_assertion(r, "cheapest_alpha_in_high_band") != nullptr);

  // A single alpha keeps the optimum claim but drops the trend claims.
  AlphaSweepParams single = tiny_sweep();
  single.alphas = {0.9};
  CHECK(alpha_sweep(single).assertions.size() == 1);

  expect_error(ErrorCode::invalid_argument, "no alphas", [] {
    AlphaSweepParams bad = tiny_sweep();
    bad.alphas.clear();
    alpha_sweep(bad);
  });
}

TEST_CASE("the population sweep fits one curve per alpha") {
  ScalingParams p;
  p.n_users = {20, 40};
  p.alphas = {0.7};
  p.n_item = 300;
  p.n_max = 10;
  p.c = 2;
  p.s_spl = 5;
  p.id_len = 7;
  p.k = 3;
  p.trials = 2;
  p.seed = 3;

  const ExperimentResult r = scaling_curve(p);
  CHECK(r.name == "scaling_curve");
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0][1] == 20);
  CHECK(r.rows[1][1] == 40);
  for (const auto& row : r.rows) {
    REQUIRE(row.size() == r.columns.size());
    CHECK(row[2] > 0);  // total bytes
    CHECK(row[8] == doctest::Approx(row[6] + row[7]));  // sends by phase
  }
  CHECK(find_assertion(r, "total_bytes_linear_alpha_0.7") != nullptr);
  CHECK(find_assertion(r, "sends_per_client_stable_alpha_0.7") != nullptr);

  expect_error(ErrorCode::invalid_argument, "no population sizes", [&] {
    ScalingParams bad = p;
    bad.n_users.clear();
    scaling_curve(bad);
  });
}

TEST_CASE("experiment results render and replay byte for byte") {
  const ExperimentResult a = attack_curve(tiny_attack());
  const ExperimentResult b = attack_curve(tiny_attack());
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.summary_json() == b.summary_json());

  const std::string csv = a.to_csv();
  CHECK(csv.rfind("s_spl,t,mean_jaccard,std_jaccard,n_trials\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        static_cast<long>(a.rows.size()) + 1);

  const auto summary = nlohmann::json::parse(a.summary_json());
  CHECK(summary["name"] == "attack_curve");
  CHECK(summary["parameters"]["s_spl_values"] == "3,5");
  CHECK(summary["passed"].is_boolean());
  REQUIRE(summary["assertions"].is_array());
  CHECK(summary["assertions"].size() == a.assertions.size());
  for (const auto& check : summary["assertions"]) {
    CHECK(check.contains("name"));
    CHECK(check.contains("passed"));
    CHECK(check.contains("observed"));
    CHECK(check.contains("detail"));
  }
}

TEST_CASE("experiment results write their two files") {
  TempDir dir("experiments");
  const ExperimentResult r = attack_curve(tiny_attack());
  write_result(r, dir.file("nested/out"));

  const std::string csv = read_file(dir.file("nested/out/attack_curve.csv"));
  CHECK(csv == r.to_csv());
  const std::string summary =
      read_file(dir.file("nested/out/attack_curve.summary.json"));
  CHECK(summary == r.summary_json());
}
