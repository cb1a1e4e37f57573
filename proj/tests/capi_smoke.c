/* SPDX-License-Identifier: Apache-2.0 */
/* Plain C consumer of the public header: generate, cluster, evaluate. */
#include <stdio.h>
#include <stdlib.h>

#include "mahc/mahc.h"

#define CHECK(cond)                                                 \
  do {                                                              \
    if (!(cond)) {                                                  \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond, \
              mahc_last_error());                                   \
      return 1;                                                     \
    }                                                               \
  } while (0)

int main(void) {
  mahc_synthetic_spec spec;
  mahc_config config;
  mahc_dataset* ds = NULL;
  mahc_result* res = NULL;
  uint32_t* labels;
  int64_t* ids;
  int64_t* clusters;
  size_t n, i;
  double f = 0.0;

  CHECK(mahc_version()[0] != '\0');
  mahc_synthetic_spec_init(&spec);
  spec.classes = 4;
  spec.members_min = 10;
  spec.members_max = 10;
  CHECK(mahc_dataset_generate(&spec, &ds) == MAHC_OK);
  n = mahc_dataset_size(ds);
  CHECK(n == 40);

  mahc_config_init(&config);
  config.p0 = 2;
  config.beta = 25;
  config.seed = 3;
  CHECK(mahc_run(ds, &config, &res) == MAHC_OK);

  labels = malloc(n * sizeof *labels);
  ids = malloc(n * sizeof *ids);
  clusters = malloc(n * sizeof *clusters);
  CHECK(mahc_result_assignment(res, labels, n) == MAHC_OK);
  for (i = 0; i < n; ++i) {
    ids[i] = mahc_dataset_segment_id(ds, i);
    clusters[i] = labels[i];
    CHECK(labels[i] < mahc_result_final_k(res));
  }
  CHECK(mahc_evaluate(ds, ids, clusters, n, &f) == MAHC_OK);
  CHECK(f > 0.0 && f <= 1.0);

  free(labels);
  free(ids);
  free(clusters);
  mahc_result_free(res);
  mahc_dataset_free(ds);
  printf("ok f=%.6f\n", f);
  return 0;
}
