#include <stdio.h>
#include <string.h>
#include "lcc.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s\n", #cond); return 1; } } while (0)

int main(void) {
    LccGraph *g = NULL;
    size_t k = 0;
    char *json = NULL;
    LccSweepSummary sweep;

    CHECK(lcc_graph_from_graph6("Dhc", &g) == LCC_STATUS_OK);
    CHECK(lcc_graph_order(g) == 5);
    CHECK(lcc_local_clique_cover_number(g, &k) == LCC_STATUS_OK && k == 2);
    CHECK(lcc_cover_certificate_json(g, LCC_METHOD_LOCAL_ALPHA, &json) == LCC_STATUS_OK);
    CHECK(strstr(json, "\"verdict\":true") != NULL);
    lcc_string_free(json);
    lcc_graph_free(g);

    CHECK(lcc_graph_from_graph6("D", &g) == LCC_STATUS_PARSE_ERROR);
    CHECK(lcc_last_error_message() != NULL);

    CHECK(lcc_check_conjectures_exhaustive(5, 1, false, &sweep) == LCC_STATUS_OK);
    CHECK(sweep.total == 1024 && sweep.conj1_violations == 0 && sweep.conj2_violations == 0);
    printf("ok\n");
    return 0;
}
