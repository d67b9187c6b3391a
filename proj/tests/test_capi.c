/* Smoke test of the C interface. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "kdim/kdim.h"

static int failures = 0;
#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      ++failures;                                                 \
      fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond); \
    }                                                             \
  } while (0)

int main(void) {
  /* Error paths set a status code and a message. */
  EXPECT(kdim_group_family("nope", NULL) == KDIM_EINVAL);
  kdim_group* g = NULL;
  EXPECT(kdim_group_family("nope", &g) == KDIM_EINVAL);
  EXPECT(strlen(kdim_last_error()) > 0);

  /* Group round trip. */
  EXPECT(kdim_group_family("cyclic-parabolic", &g) == KDIM_OK);
  char* text = NULL;
  EXPECT(kdim_group_serialize(g, &text) == KDIM_OK);
  EXPECT(strncmp(text, "generators 1 free", 17) == 0);
  kdim_group* g2 = NULL;
  EXPECT(kdim_group_parse(text, &g2) == KDIM_OK);
  kdim_string_free(text);
  kdim_group_free(g2);

  /* Delta estimate on the parabolic family. */
  kdim_estimate delta;
  EXPECT(kdim_estimate_delta(g, 8.0, 20.0, 2.0, 500000, &delta) == KDIM_OK);
  EXPECT(fabs(delta.value - 0.5) < 0.05);
  kdim_group_free(g);

  /* Cloud family, points, csv round trip, mdim. */
  kdim_cloud* cloud = NULL;
  EXPECT(kdim_cloud_family("cantor", 0, 10, 0, &cloud) == KDIM_OK);
  EXPECT(kdim_cloud_size(cloud) == 2048);
  double x = -1, y = -1;
  EXPECT(kdim_cloud_point(cloud, 0, &x, &y) == KDIM_OK);
  EXPECT(x == 0.0 && y == 0.0);
  EXPECT(kdim_cloud_point(cloud, 999999, &x, &y) == KDIM_EINVAL);

  kdim_estimate md;
  EXPECT(kdim_estimate_mdim(cloud, 0, 15, 0, 0, &md) == KDIM_OK);
  EXPECT(fabs(md.value - 0.6309) < 0.05);

  char* csv = NULL;
  EXPECT(kdim_cloud_to_csv(cloud, 42, &csv) == KDIM_OK);
  kdim_cloud* back = NULL;
  EXPECT(kdim_cloud_from_csv(csv, &back) == KDIM_OK);
  EXPECT(kdim_cloud_size(back) == kdim_cloud_size(cloud));
  kdim_string_free(csv);
  kdim_cloud_free(back);

  char* svg = NULL;
  EXPECT(kdim_cloud_to_svg(cloud, &svg) == KDIM_OK);
  EXPECT(strncmp(svg, "<svg", 4) == 0);
  kdim_string_free(svg);
  kdim_cloud_free(cloud);

  /* Elementary cloud flag. */
  kdim_cloud* two = NULL;
  EXPECT(kdim_cloud_family("cyclic-loxodromic", 0, 0, 0, &two) == KDIM_OK);
  EXPECT(kdim_cloud_is_elementary(two) == 1);
  kdim_cloud_free(two);

  /* Limit set sampling through the API. */
  kdim_group* mod = NULL;
  EXPECT(kdim_group_family("modular", &mod) == KDIM_OK);
  kdim_cloud* ls = NULL;
  EXPECT(kdim_cloud_limit_set(mod, 2000, 1, &ls) == KDIM_OK);
  EXPECT(kdim_cloud_size(ls) > 100);
  kdim_cloud_free(ls);
  kdim_group_free(mod);

  if (failures) {
    fprintf(stderr, "%d failures\n", failures);
    return 1;
  }
  printf("capi smoke test ok\n");
  return 0;
}
