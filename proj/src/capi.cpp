#define HOMFLOW_BUILDING
#include "homflow/homflow.h"

#include "homflow/commands.hpp"
#include "homflow/examples.hpp"

#include <exception>
#include <new>
#include <string>

struct homflow_algebra {
  homflow::AlgebraSource src;
};

struct homflow_report {
  homflow::ReportBundle bundle;
  std::string kv;
};

namespace {

thread_local std::string g_last_error;

homflow::RunOptions convert(const homflow_options* o) {
  homflow::RunOptions r;
  if (!o) return r;
  r.dt = o->dt;
  r.t_end = o->t_end;
  if (o->has_seed) r.seed = o->seed;
  if (o->has_alpha) r.alpha = o->alpha;
  r.method = o->method == HOMFLOW_MIDPOINT ? homflow::StepMethod::midpoint : homflow::StepMethod::rk4;
  if (o->x0) r.x0.assign(o->x0, o->x0 + o->x0_len);
  if (o->p0) r.p0.assign(o->p0, o->p0 + o->p0_len);
  return r;
}

// maps exceptions onto status codes; logic errors inside the core are internal
template <class F>
homflow_status guard(F&& f) {
  g_last_error.clear();
  try {
    return f();
  } catch (const homflow::ParseError& e) {
    g_last_error = e.what();
    return HOMFLOW_INPUT_ERROR;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return HOMFLOW_INPUT_ERROR;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return HOMFLOW_INPUT_ERROR;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return HOMFLOW_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HOMFLOW_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return HOMFLOW_INTERNAL;
  }
}

template <class F>
homflow_status run_report(homflow_report** out, F&& f) {
  if (!out) {
    g_last_error = "null output pointer";
    return HOMFLOW_INPUT_ERROR;
  }
  *out = nullptr;
  return guard([&] {
    auto* r = new homflow_report{f(), {}};
    r->kv = r->bundle.kv.str();
    *out = r;
    return r->bundle.passed ? HOMFLOW_OK : HOMFLOW_CHECK_FAILED;
  });
}

homflow_status null_arg(const char* what) {
  g_last_error = std::string("null ") + what;
  return HOMFLOW_INPUT_ERROR;
}

}  // namespace

extern "C" {

void homflow_options_init(homflow_options* opts) {
  if (!opts) return;
  *opts = homflow_options{};
  opts->method = HOMFLOW_RK4;
}

const char* homflow_last_error(void) { return g_last_error.c_str(); }

const char* homflow_version(void) { return "0.1.0"; }

const char* homflow_builtin_names(void) {
  static const std::string names = [] {
    std::string s;
    for (const auto& n : homflow::builtin_example_names()) s += (s.empty() ? "" : " ") + n;
    return s;
  }();
  return names.c_str();
}

homflow_status homflow_algebra_from_file(const char* path, const homflow_options* opts, homflow_algebra** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("output pointer");
  *out = nullptr;
  return guard([&] {
    *out = new homflow_algebra{homflow::file_source(path, convert(opts))};
    return HOMFLOW_OK;
  });
}

homflow_status homflow_algebra_from_text(const char* text, const homflow_options* opts, homflow_algebra** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("output pointer");
  *out = nullptr;
  return guard([&] {
    homflow::ParseOptions po;
    po.alpha = convert(opts).alpha;
    homflow::AlgebraSource s;
    s.file = homflow::parse_algebra_text(text, po, "algebra");
    *out = new homflow_algebra{std::move(s)};
    return HOMFLOW_OK;
  });
}

homflow_status homflow_algebra_builtin(const char* name, const homflow_options* opts, homflow_algebra** out) {
  if (!name) return null_arg("name");
  if (!out) return null_arg("output pointer");
  *out = nullptr;
  return guard([&] {
    *out = new homflow_algebra{homflow::builtin_source(name, convert(opts))};
    return HOMFLOW_OK;
  });
}

void homflow_algebra_free(homflow_algebra* alg) { delete alg; }

size_t homflow_algebra_dim(const homflow_algebra* alg) { return alg ? alg->src.file.algebra.dim() : 0; }

homflow_status homflow_analyze(const homflow_algebra* alg, const homflow_options* opts, homflow_report** out) {
  if (!alg) return null_arg("algebra");
  return run_report(out, [&] { return homflow::run_analyze(alg->src, convert(opts)); });
}

homflow_status homflow_integrate_coalgebra(const homflow_algebra* alg, const homflow_options* opts,
                                           homflow_report** out) {
  if (!alg) return null_arg("algebra");
  return run_report(out, [&] { return homflow::run_integrate_coalgebra(alg->src, convert(opts)); });
}

homflow_status homflow_integrate_geodesic(const homflow_algebra* alg, const homflow_options* opts,
                                          homflow_report** out) {
  if (!alg) return null_arg("algebra");
  return run_report(out, [&] { return homflow::run_integrate_geodesic(alg->src, convert(opts)); });
}

homflow_status homflow_check_transform(const char* example, const homflow_options* opts, homflow_report** out) {
  if (!example) return null_arg("example");
  return run_report(out, [&] { return homflow::run_check_transform(example, convert(opts)); });
}

homflow_status homflow_reproduce(const char* target, const homflow_options* opts, homflow_report** out) {
  if (!target) return null_arg("target");
  return run_report(out, [&] { return homflow::run_reproduce(target, convert(opts)); });
}

const char* homflow_report_text(const homflow_report* r) { return r ? r->bundle.text.c_str() : ""; }

const char* homflow_report_kv(const homflow_report* r) { return r ? r->kv.c_str() : ""; }

int homflow_report_passed(const homflow_report* r) { return r && r->bundle.passed ? 1 : 0; }

size_t homflow_report_csv_count(const homflow_report* r) { return r ? r->bundle.csv.size() : 0; }

const char* homflow_report_csv_name(const homflow_report* r, size_t i) {
  return r && i < r->bundle.csv.size() ? r->bundle.csv[i].name.c_str() : nullptr;
}

const char* homflow_report_csv_data(const homflow_report* r, size_t i) {
  return r && i < r->bundle.csv.size() ? r->bundle.csv[i].data.c_str() : nullptr;
}

void homflow_report_free(homflow_report* r) { delete r; }

}  // extern "C"
