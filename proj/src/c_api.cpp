// SPDX-License-Identifier: Apache-2.0
#include "mahc/mahc.h"

#include <new>
#include <string>
#include <unordered_map>

#include "mahc/error.hpp"
#include "mahc/fmeasure.hpp"
#include "mahc/mahc.hpp"
#include "mahc/segment_io.hpp"
#include "mahc/synthetic.hpp"

struct mahc_dataset {
  mahc::Dataset data;
};

struct mahc_result {
  mahc::MahcResult data;
};

namespace {

thread_local std::string g_last_error;

mahc_status set_error(mahc_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
mahc_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return MAHC_OK;
  } catch (const mahc::Error& e) {
    switch (e.kind()) {
      case mahc::ErrorKind::InvalidArgument: return set_error(MAHC_ERR_USAGE, e.what());
      case mahc::ErrorKind::Data: return set_error(MAHC_ERR_DATA, e.what());
      case mahc::ErrorKind::Internal: return set_error(MAHC_ERR_INTERNAL, e.what());
    }
    return set_error(MAHC_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(MAHC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(MAHC_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) mahc::fail(mahc::ErrorKind::InvalidArgument, what);
}

mahc::MahcConfig to_config(const mahc_config& c) {
  mahc::MahcConfig out;
  out.p0 = c.p0;
  out.beta = c.beta;
  out.manage_size = c.mode == MAHC_MODE_MAHC_M;
  out.max_iters = c.max_iters;
  out.convergence_window = c.conv_window;
  out.seed = c.seed;
  out.workers = c.workers;
  if (c.final_k != 0) out.final_k = c.final_k;
  out.ward.square_input = c.ward_on_squared == 0;
  out.lmethod.refine = c.l_refine != 0;
  out.dtw.normalize = c.dtw_normalize != 0;
  out.dtw.squared_cost = c.dtw_squared_cost != 0;
  out.split_by_cluster = c.split_by_cluster != 0;
  return out;
}

}  // namespace

extern "C" {

const char* mahc_version(void) { return "0.1.0"; }

const char* mahc_last_error(void) { return g_last_error.c_str(); }

void mahc_config_init(mahc_config* config) {
  if (!config) return;
  *config = mahc_config{};
  config->mode = MAHC_MODE_MAHC_M;
  config->p0 = 1;
  config->beta = 0;
  config->max_iters = 10;
  config->conv_window = 2;
  config->seed = 0;
  config->workers = 1;
  config->final_k = 0;
  config->ward_on_squared = 1;
}

void mahc_synthetic_spec_init(mahc_synthetic_spec* spec) {
  if (!spec) return;
  const mahc::SyntheticSpec d;
  *spec = mahc_synthetic_spec{d.classes,    d.members_min, d.members_max,
                              d.dim,        d.length_min,  d.length_max,
                              d.jitter,     d.warp,        d.seed};
}

mahc_status mahc_dataset_load(const char* path, mahc_dataset** out) {
  return guarded([&] {
    require(path && out, "mahc_dataset_load: null argument");
    *out = nullptr;
    *out = new mahc_dataset{mahc::load_segments(path)};
  });
}

mahc_status mahc_dataset_save(const mahc_dataset* dataset, const char* path) {
  return guarded([&] {
    require(dataset && path, "mahc_dataset_save: null argument");
    mahc::save_segments(path, dataset->data);
  });
}

mahc_status mahc_dataset_generate(const mahc_synthetic_spec* spec, mahc_dataset** out) {
  return guarded([&] {
    require(spec && out, "mahc_dataset_generate: null argument");
    *out = nullptr;
    mahc::SyntheticSpec s;
    s.classes = spec->classes;
    s.members_min = spec->members_min;
    s.members_max = spec->members_max;
    s.dim = spec->dim;
    s.length_min = spec->length_min;
    s.length_max = spec->length_max;
    s.jitter = spec->jitter;
    s.warp = spec->warp;
    s.seed = spec->seed;
    *out = new mahc_dataset{mahc::generate_synthetic(s)};
  });
}

void mahc_dataset_free(mahc_dataset* dataset) { delete dataset; }

size_t mahc_dataset_size(const mahc_dataset* dataset) { return dataset ? dataset->data.size() : 0; }

size_t mahc_dataset_dim(const mahc_dataset* dataset) { return dataset ? dataset->data.dim() : 0; }

int mahc_dataset_has_labels(const mahc_dataset* dataset) {
  return dataset && dataset->data.has_labels() ? 1 : 0;
}

size_t mahc_dataset_class_count(const mahc_dataset* dataset) {
  return dataset ? dataset->data.class_count() : 0;
}

int64_t mahc_dataset_segment_id(const mahc_dataset* dataset, size_t index) {
  if (!dataset || index >= dataset->data.size()) return -1;
  return dataset->data[index].id;
}

mahc_status mahc_run(const mahc_dataset* dataset, const mahc_config* config, mahc_result** out) {
  return guarded([&] {
    require(dataset && config && out, "mahc_run: null argument");
    *out = nullptr;
    mahc::MahcConfig c = to_config(*config);
    if (config->mode == MAHC_MODE_MAHC_M && config->beta == 0)
      mahc::fail(mahc::ErrorKind::InvalidArgument, "mahc-m mode needs beta");
    mahc::MahcResult r;
    switch (config->mode) {
      case MAHC_MODE_AHC_BASELINE: r = mahc::run_ahc_baseline(dataset->data, c); break;
      case MAHC_MODE_MAHC:
      case MAHC_MODE_MAHC_M: r = mahc::run_mahc(dataset->data, c); break;
      default: mahc::fail(mahc::ErrorKind::InvalidArgument, "unknown mode");
    }
    *out = new mahc_result{std::move(r)};
  });
}

void mahc_result_free(mahc_result* result) { delete result; }

size_t mahc_result_final_k(const mahc_result* result) { return result ? result->data.final_k : 0; }

size_t mahc_result_peak_occupancy(const mahc_result* result) {
  return result ? result->data.peak_occupancy : 0;
}

mahc_status mahc_result_assignment(const mahc_result* result, uint32_t* out, size_t n) {
  return guarded([&] {
    require(result && out, "mahc_result_assignment: null argument");
    const auto& labels = result->data.assignment.labels;
    require(n == labels.size(), "mahc_result_assignment: buffer size does not match dataset");
    for (size_t i = 0; i < n; ++i) out[i] = static_cast<uint32_t>(labels[i]);
  });
}

size_t mahc_result_iteration_count(const mahc_result* result) {
  return result ? result->data.history.size() : 0;
}

mahc_status mahc_result_iteration(const mahc_result* result, size_t index,
                                  mahc_iteration_stats* out) {
  return guarded([&] {
    require(result && out, "mahc_result_iteration: null argument");
    require(index < result->data.history.size(), "mahc_result_iteration: index out of range");
    const auto& s = result->data.history[index];
    *out = mahc_iteration_stats{s.iteration,  s.subsets,   s.max_occupancy,
                                s.min_occupancy, s.medoids, s.k_estimate,
                                s.seconds,    s.f_measure.has_value() ? 1 : 0,
                                s.f_measure.value_or(0.0)};
  });
}

size_t mahc_result_warning_count(const mahc_result* result) {
  return result ? result->data.warnings.size() : 0;
}

const char* mahc_result_warning(const mahc_result* result, size_t index) {
  if (!result || index >= result->data.warnings.size()) return nullptr;
  return result->data.warnings[index].c_str();
}

mahc_status mahc_evaluate(const mahc_dataset* dataset, const int64_t* segment_ids,
                          const int64_t* cluster_ids, size_t n, double* f_measure) {
  return guarded([&] {
    require(dataset && segment_ids && cluster_ids && f_measure, "mahc_evaluate: null argument");
    const mahc::Dataset& ds = dataset->data;
    if (!ds.has_labels()) mahc::fail(mahc::ErrorKind::Data, "dataset has no labels");
    if (n != ds.size())
      mahc::fail(mahc::ErrorKind::Data, "assignment has " + std::to_string(n) + " rows for " +
                                            std::to_string(ds.size()) + " segments");
    std::unordered_map<int64_t, size_t> position;
    for (size_t i = 0; i < ds.size(); ++i) position.emplace(ds[i].id, i);
    std::unordered_map<int64_t, size_t> dense_cluster;
    std::vector<size_t> clusters(n, SIZE_MAX);
    for (size_t r = 0; r < n; ++r) {
      const auto it = position.find(segment_ids[r]);
      if (it == position.end())
        mahc::fail(mahc::ErrorKind::Data, "unknown segment id " + std::to_string(segment_ids[r]));
      if (clusters[it->second] != SIZE_MAX)
        mahc::fail(mahc::ErrorKind::Data, "segment id " + std::to_string(segment_ids[r]) +
                                              " assigned twice");
      clusters[it->second] =
          dense_cluster.try_emplace(cluster_ids[r], dense_cluster.size()).first->second;
    }
    *f_measure = mahc::dataset_f_measure(mahc::contingency(clusters, ds.class_indices()));
  });
}

}  // extern "C"
