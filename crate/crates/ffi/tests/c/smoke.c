#include <stdio.h>
#include <string.h>
#include "multhopf.h"

int main(void) {
    MhInstance *h = NULL;
    if (mh_instance_new("C[S3]", &h) != MH_STATUS_OK) return 10;
    size_t dim = 0;
    if (mh_instance_dim(h, &dim) != MH_STATUS_OK || dim != 6) return 11;

    MhReport *r = NULL;
    if (mh_instance_verify_axioms(h, 5, &r) != MH_STATUS_OK) return 12;
    if (!mh_report_all_passed(r) || mh_report_len(r) == 0) return 13;
    char *json = mh_report_json(r);
    if (json == NULL || strstr(json, "\"status\"") == NULL) return 14;
    mh_string_free(json);
    mh_report_free(r);
    mh_instance_free(h);

    MhInstance *bad = NULL;
    if (mh_instance_new("K(Q8)", &bad) != MH_STATUS_UNKNOWN_INSTANCE) return 15;
    if (bad != NULL || mh_last_error() == NULL) return 16;

    printf("ok %s\n", mh_version());
    return 0;
}
