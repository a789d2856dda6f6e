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


#include "rqc/rqc.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "rqc/error.hpp"
#include "rqc/experiments.hpp"
#include "rqc/growth.hpp"
#include "rqc/localization.hpp"
#include "rqc/report.hpp"
#include "rqc/verify.hpp"

struct rqc_report {
    rqc::report::Report value;
};

namespace {

thread_local std::string g_last_error;

template <class F>
rqc_status guard(F&& f) {
    g_last_error.clear();
    try {
        f();
        return RQC_OK;
    } catch (const rqc::Error& e) {
        g_last_error = e.what();
        return static_cast<rqc_status>(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
    } catch (const std::exception& e) {
        g_last_error = e.what();
    } catch (...) {
        g_last_error = "unknown error";
    }
    return RQC_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
    if (!p) throw rqc::InvalidArgumentError(std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string path_of(const char* path) { return path ? path : ""; }

rqc_status make_report(rqc_report** out, const auto& build) {
    return guard([&] {
        require(out, "out");
        *out = nullptr;
        *out = new rqc_report{build()};
    });
}

rqc_status rational_out(const rqc::Rational& r, double* value, char** text) {
    if (value) *value = rqc::to_double(r);
    if (text) *text = dup_string(rqc::to_string(r));
    return RQC_OK;
}

const int kDefaultSweepN[] = {4, 8, 16, 32};
const double kDefaultSweepEps[] = {0.2, 0.1, 0.05};

}  // namespace

extern "C" {

const char* rqc_version(void) { return "1.0.0"; }

const char* rqc_last_error(void) { return g_last_error.c_str(); }

const char* rqc_status_string(rqc_status status) {
    switch (status) {
        case RQC_OK: return "ok";
        case RQC_ERR_DOMAIN: return "domain error";
        case RQC_ERR_CAPACITY: return "capacity exceeded";
        case RQC_ERR_IMPOSSIBLE_OUTCOME: return "impossible outcome";
        case RQC_ERR_NUMERICAL: return "numerical failure";
        case RQC_ERR_IO: return "i/o error";
        case RQC_ERR_INVALID_ARGUMENT: return "invalid argument";
        case RQC_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void rqc_walk_config_default(rqc_walk_config* c) {
    if (c) *c = {20, 1, 0, 100000, RQC_DEFAULT_SEED, 0};
}

void rqc_growth_quantum_config_default(rqc_growth_quantum_config* c) {
    if (c) *c = {3, 30, RQC_DEFAULT_SEED, 8};
}

void rqc_localize_config_default(rqc_localize_config* c) {
    if (c) *c = {4, 1000, 1000, RQC_DEFAULT_SEED, 0};
}

void rqc_tiny_exact_config_default(rqc_tiny_exact_config* c) {
    if (c) *c = {1, 1, RQC_DEFAULT_SEED, RQC_TWIRL_CUBATURE, 96, 10000, nullptr};
}

void rqc_sweep_config_default(rqc_sweep_config* c) {
    if (c) *c = {kDefaultSweepN, 4, kDefaultSweepEps, 3, 100, RQC_DEFAULT_SEED, 0};
}

void rqc_end_to_end_config_default(rqc_end_to_end_config* c) {
    if (c) *c = {4, 100, RQC_DEFAULT_SEED, 30};
}

void rqc_verify_config_default(rqc_verify_config* c) {
    if (c) *c = {RQC_DEFAULT_SEED, 0};
}

rqc_status rqc_walk(const rqc_walk_config* c, rqc_report** out) {
    return make_report(out, [&] {
        require(c, "config");
        return rqc::exp::walk({c->target_n, c->start_k, c->max_steps, c->trials, c->seed, c->threads});
    });
}

rqc_status rqc_growth_quantum(const rqc_growth_quantum_config* c, rqc_report** out) {
    return make_report(out, [&] {
        require(c, "config");
        return rqc::exp::growth_quantum({c->k, c->measurements, c->seed, c->discard_trials});
    });
}

rqc_status rqc_localize(const rqc_localize_config* c, rqc_report** out) {
    return make_report(out, [&] {
        require(c, "config");
        return rqc::exp::localize({{c->n, c->m, c->trials, c->seed}, c->threads});
    });
}

rqc_status rqc_tiny_exact(const rqc_tiny_exact_config* c, rqc_report** out) {
    return make_report(out, [&] {
        require(c, "config");
        rqc::exp::TinyExactConfig cfg;
        cfg.n = c->n;
        cfg.m = c->m;
        cfg.seed = c->seed;
        cfg.options.twirl =
            c->twirl == RQC_TWIRL_HAAR ? rqc::pipeline::TwirlMethod::HaarMonteCarlo : rqc::pipeline::TwirlMethod::EulerCubature;
        cfg.options.theta_nodes = c->theta_nodes;
        cfg.options.haar_samples = c->haar_samples;
        cfg.outcomes = c->outcomes ? c->outcomes : "";
        return rqc::exp::tiny_exact(cfg);
    });
}

rqc_status rqc_sweep(const rqc_sweep_config* c, rqc_report** out) {
    return make_report(out, [&] {
        require(c, "config");
        if (c->n_count) require(c->n_values, "n_values");
        if (c->epsilon_count) require(c->epsilon_values, "epsilon_values");
        rqc::exp::SweepConfig cfg;
        cfg.n_values.assign(c->n_values, c->n_values + c->n_count);
        cfg.epsilon_values.assign(c->epsilon_values, c->epsilon_values + c->epsilon_count);
        cfg.trials = c->trials;
        cfg.seed = c->seed;
        cfg.threads = c->threads;
        return rqc::exp::sweep(cfg);
    });
}

rqc_status rqc_end_to_end(const rqc_end_to_end_config* c, rqc_report** out) {
    return make_report(out, [&] {
        require(c, "config");
        return rqc::exp::end_to_end({c->n, c->m, c->seed, {c->measurements_per_step}});
    });
}

rqc_status rqc_verify(const rqc_verify_config* c, rqc_report** out, int* all_passed) {
    return make_report(out, [&] {
        require(c, "config");
        const rqc::verify::VerifyOptions opt{c->seed, c->threads};
        const auto checks = rqc::verify::run_all(opt);
        if (all_passed) *all_passed = rqc::verify::all_passed(checks);
        return rqc::verify::to_report(checks, opt);
    });
}

rqc_status rqc_report_write(const rqc_report* r, rqc_format format, const char* path) {
    return guard([&] {
        require(r, "report");
        rqc::report::emit(r->value, format == RQC_FORMAT_JSON ? rqc::report::Format::Json : rqc::report::Format::Csv,
                          path_of(path));
    });
}

rqc_status rqc_report_write_summary(const rqc_report* r, const char* path) {
    return guard([&] {
        require(r, "report");
        rqc::report::write_text(rqc::report::summary_json(r->value), path_of(path));
    });
}

rqc_status rqc_report_render(const rqc_report* r, rqc_format format, char** out) {
    return guard([&] {
        require(r, "report");
        require(out, "out");
        *out = dup_string(rqc::report::render(
            r->value, format == RQC_FORMAT_JSON ? rqc::report::Format::Json : rqc::report::Format::Csv));
    });
}

rqc_status rqc_report_parse_json(const char* text, rqc_report** out) {
    return make_report(out, [&] {
        require(text, "text");
        return rqc::report::from_json(text);
    });
}

int rqc_report_equal(const rqc_report* a, const rqc_report* b) {
    if (!a || !b) return a == b;
    return a->value == b->value;
}

const char* rqc_report_kind(const rqc_report* r) { return r ? r->value.kind.c_str() : ""; }

size_t rqc_report_row_count(const rqc_report* r) { return r ? r->value.rows.size() : 0; }

rqc_status rqc_report_summary_double(const rqc_report* r, const char* key, double* out) {
    return guard([&] {
        require(r, "report");
        require(key, "key");
        require(out, "out");
        const auto* v = r->value.find_summary(key);
        if (!v) throw rqc::InvalidArgumentError(std::string("no summary field '") + key + "'");
        if (const auto* b = std::get_if<bool>(v)) *out = *b ? 1.0 : 0.0;
        else if (const auto* i = std::get_if<std::int64_t>(v)) *out = static_cast<double>(*i);
        else if (const auto* d = std::get_if<double>(v)) *out = *d;
        else if (const auto* q = std::get_if<rqc::report::RationalValue>(v)) *out = q->value;
        else throw rqc::InvalidArgumentError(std::string("summary field '") + key + "' is not numeric");
    });
}

rqc_status rqc_report_summary_text(const rqc_report* r, const char* key, char** out) {
    return guard([&] {
        require(r, "report");
        require(key, "key");
        require(out, "out");
        const auto* v = r->value.find_summary(key);
        if (!v) throw rqc::InvalidArgumentError(std::string("no summary field '") + key + "'");
        *out = dup_string(rqc::report::format_value(*v));
    });
}

void rqc_report_free(rqc_report* r) { delete r; }

void rqc_free_string(char* s) { std::free(s); }

rqc_status rqc_triplet_probability(int k, double* value, char** text) {
    return guard([&] { rational_out(rqc::growth::triplet_step_probability(k), value, text); });
}

rqc_status rqc_absorption_probability(int n, double* value, char** text) {
    return guard([&] { rational_out(rqc::growth::absorption_probability_formula(n), value, text); });
}

rqc_status rqc_expected_steps(int n, double* value, char** text) {
    return guard([&] { rational_out(rqc::growth::expected_steps_formula(n), value, text); });
}

rqc_status rqc_t_integral(int64_t a, int64_t b, double* log_value, char** text) {
    return guard([&] {
        if (log_value) *log_value = rqc::loc::log_t_integral(a, b);
        if (text) *text = a + b <= rqc::loc::kExactCap ? dup_string(rqc::to_string(rqc::loc::t_integral(a, b))) : nullptr;
    });
}

rqc_status rqc_posterior_summary(int64_t n1, int64_t m, rqc_posterior* out) {
    return guard([&] {
        require(out, "out");
        const auto s = rqc::loc::posterior_summary(n1, m);
        *out = {s.mean_exact,       s.mean_approx, s.second_moment_exact, s.variance_central,
                s.variance_approx, s.sigma(), s.exact_arithmetic ? 1 : 0};
    });
}

rqc_status rqc_trace_distance_q(double q1, double q2, double* out) {
    return guard([&] {
        require(out, "out");
        *out = rqc::loc::trace_distance_q(q1, q2);
    });
}

rqc_status rqc_trace_distance_bound(double q1, double q2, double* out) {
    return guard([&] {
        require(out, "out");
        *out = rqc::loc::trace_distance_bound(q1, q2);
    });
}

rqc_status rqc_ensemble_error(int64_t n1, int64_t m, int n, double* out) {
    return guard([&] {
        require(out, "out");
        *out = rqc::loc::ensemble_error_exact(n1, m, n);
    });
}

rqc_status rqc_ensemble_error_bound(int n, int64_t m, double* out) {
    return guard([&] {
        require(out, "out");
        *out = rqc::loc::ensemble_error_bound(n, m);
    });
}

rqc_status rqc_required_m(int n, double epsilon, int64_t* out, double* log_m) {
    return guard([&] {
        require(out, "out");
        if (log_m) *log_m = rqc::loc::log_required_m(n, epsilon);
        *out = rqc::loc::required_m(n, epsilon);
    });
}

}  // extern "C"
