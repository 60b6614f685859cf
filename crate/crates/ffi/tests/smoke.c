#include <stdio.h>
#include "solenoid.h"

#define CHECK(x) do { if ((x) != SOLENOID_STATUS_OK) { fprintf(stderr, "%s failed\n", #x); return 1; } } while (0)

int main(void) {
    SolenoidSubgroup *k = NULL;
    SolenoidTessellation *t = NULL, *f = NULL;
    size_t index = 0, labels = 0, path[4], count = 0;
    CHECK(solenoid_subgroup_named("gamma2", &k));
    CHECK(solenoid_subgroup_index(k, &index));
    CHECK(solenoid_tessellation_farey(k, &t));
    CHECK(solenoid_tessellation_label_count(t, &labels));
    CHECK(solenoid_tessellation_flip(t, 0, &f));
    CHECK(solenoid_flip_path(t, f, 1000, path, 4, &count));
    if (solenoid_subgroup_named("nope", &k) != SOLENOID_STATUS_PARSE) return 1;
    printf("index %zu labels %zu path %zu\n", index, labels, count);
    solenoid_tessellation_free(f);
    solenoid_tessellation_free(t);
    solenoid_subgroup_free(k);
    return 0;
}
