#include <stdio.h>
#include <string.h>
#include "sphvar.h"

int main(void) {
    SphvarDatum *d = NULL;
    if (sphvar_datum_from_catalog("a2-sl2", &d) != SPHVAR_STATUS_OK) return 10;
    size_t rank = 0;
    if (sphvar_datum_rank(d, &rank) != SPHVAR_STATUS_OK || rank != 1) return 11;
    bool wf = false;
    if (sphvar_check(d, SPHVAR_CHECK_WAVEFRONT, &wf) != SPHVAR_STATUS_OK || !wf) return 12;
    char *json = NULL;
    if (sphvar_basic_function_json(d, 3, 1, &json) != SPHVAR_STATUS_OK) return 13;
    if (strstr(json, "\"schema\":1") == NULL) return 14;
    sphvar_string_free(json);
    sphvar_datum_free(d);
    SphvarDatum *bad = NULL;
    if (sphvar_datum_from_json("{", &bad) != SPHVAR_STATUS_INPUT || bad != NULL) return 15;
    if (strlen(sphvar_last_error()) == 0) return 16;
    puts("ok");
    return 0;
}
