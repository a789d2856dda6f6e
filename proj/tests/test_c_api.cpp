// Copyright 2026 The rqc-sim Authors
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


#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include <gtest/gtest.h>

#include "rqc/rqc.h"

TEST(CApi, VersionAndStatusStrings) {
    EXPECT_STREQ(rqc_version(), "1.0.0");
    EXPECT_STRNE(rqc_status_string(RQC_ERR_CAPACITY), "");
    EXPECT_STRNE(rqc_status_string(RQC_OK), rqc_status_string(RQC_ERR_DOMAIN));
}

TEST(CApi, ScalarsAreExact) {
    double v = 0.0;
    char* text = nullptr;
    ASSERT_EQ(rqc_triplet_probability(2, &v, &text), RQC_OK);
    EXPECT_STREQ(text, "2/3");
    rqc_free_string(text);
    ASSERT_EQ(rqc_absorption_probability(3, &v, &text), RQC_OK);
    EXPECT_STREQ(text, "2/3");
    rqc_free_string(text);
    ASSERT_EQ(rqc_expected_steps(3, &v, nullptr), RQC_OK);
    EXPECT_DOUBLE_EQ(v, 7.0 / 3.0);
    ASSERT_EQ(rqc_t_integral(2, 1, &v, &text), RQC_OK);
    EXPECT_STREQ(text, "11/192");
    EXPECT_NEAR(v, std::log(11.0 / 192.0), 1e-14);
    rqc_free_string(text);
}

TEST(CApi, ErrorsMapToCodes) {
    double v = 0.0;
    EXPECT_EQ(rqc_triplet_probability(0, &v, nullptr), RQC_ERR_DOMAIN);
    EXPECT_NE(std::string(rqc_last_error()).size(), 0u);
    int64_t m = 0;
    double log_m = 0.0;
    EXPECT_EQ(rqc_required_m(1000, 0.001, &m, &log_m), RQC_ERR_CAPACITY);
    EXPECT_GT(log_m, std::log(9.2e18));
    EXPECT_EQ(rqc_required_m(2, 1.0, &m, &log_m), RQC_OK);
    EXPECT_EQ(m, 64 * 64 * 64);
    EXPECT_EQ(rqc_walk(nullptr, nullptr), RQC_ERR_INVALID_ARGUMENT);

    rqc_tiny_exact_config t;
    rqc_tiny_exact_config_default(&t);
    t.n = 3;
    t.m = 3;
    rqc_report* r = nullptr;
    EXPECT_EQ(rqc_tiny_exact(&t, &r), RQC_ERR_CAPACITY);
    EXPECT_EQ(r, nullptr);
}

TEST(CApi, PosteriorAndErrors) {
    rqc_posterior p;
    ASSERT_EQ(rqc_posterior_summary(80, 100, &p), RQC_OK);
    EXPECT_TRUE(p.exact_arithmetic);
    EXPECT_NEAR(p.mean, p.mean_approx, 1e-3);
    EXPECT_NEAR(p.sigma, std::sqrt(p.variance_central), 1e-15);
    double e = 0.0, b = 0.0;
    ASSERT_EQ(rqc_ensemble_error(80, 100, 2, &e), RQC_OK);
    ASSERT_EQ(rqc_ensemble_error_bound(2, 100, &b), RQC_OK);
    EXPECT_LT(e, b);
    double d = 0.0;
    ASSERT_EQ(rqc_trace_distance_q(0.5, 1.0, &d), RQC_OK);
    EXPECT_NEAR(d, 2.0, 1e-12);
    EXPECT_EQ(rqc_trace_distance_q(0.2, 1.0, &d), RQC_ERR_DOMAIN);
}

TEST(CApi, ReportLifecycle) {
    rqc_walk_config c;
    rqc_walk_config_default(&c);
    EXPECT_EQ(c.seed, RQC_DEFAULT_SEED);
    c.target_n = 5;
    c.trials = 2000;
    c.threads = 2;
    rqc_report* a = nullptr;
    ASSERT_EQ(rqc_walk(&c, &a), RQC_OK);
    EXPECT_STREQ(rqc_report_kind(a), "walk");
    EXPECT_EQ(rqc_report_row_count(a), 2000u);
    double formula = 0.0;
    ASSERT_EQ(rqc_report_summary_double(a, "absorb_right_formula", &formula), RQC_OK);
    EXPECT_DOUBLE_EQ(formula, 0.6);
    char* text = nullptr;
    ASSERT_EQ(rqc_report_summary_text(a, "absorb_right_formula", &text), RQC_OK);
    EXPECT_STREQ(text, "3/5");
    rqc_free_string(text);
    EXPECT_EQ(rqc_report_summary_double(a, "no-such-key", &formula), RQC_ERR_INVALID_ARGUMENT);

    char* json = nullptr;
    ASSERT_EQ(rqc_report_render(a, RQC_FORMAT_JSON, &json), RQC_OK);
    rqc_report* b = nullptr;
    ASSERT_EQ(rqc_report_parse_json(json, &b), RQC_OK);
    EXPECT_TRUE(rqc_report_equal(a, b));
    rqc_free_string(json);

    c.threads = 1;
    rqc_report* single = nullptr;
    ASSERT_EQ(rqc_walk(&c, &single), RQC_OK);
    EXPECT_TRUE(rqc_report_equal(a, single));

    EXPECT_EQ(rqc_report_write(a, RQC_FORMAT_CSV, "/nonexistent-dir/x.csv"), RQC_ERR_IO);
    EXPECT_EQ(rqc_report_parse_json("not json", &b), RQC_ERR_INVALID_ARGUMENT);
    rqc_report_free(a);
    rqc_report_free(b);
    rqc_report_free(single);
    rqc_report_free(nullptr);
}

TEST(CApi, SweepUsesCallerArrays) {
    const int ns[] = {4, 8};
    const double es[] = {0.2};
    rqc_sweep_config s;
    rqc_sweep_config_default(&s);
    s.n_values = ns;
    s.n_count = 2;
    s.epsilon_values = es;
    s.epsilon_count = 1;
    s.trials = 5;
    rqc_report* r = nullptr;
    ASSERT_EQ(rqc_sweep(&s, &r), RQC_OK);
    EXPECT_EQ(rqc_report_row_count(r), 2u);
    rqc_report_free(r);
}
