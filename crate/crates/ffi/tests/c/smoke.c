#include <stdio.h>
#include <string.h>

#include "hopfdouble.h"

static int fail(const char *what) {
    const char *e = hd_last_error();
    fprintf(stderr, "%s: %s\n", what, e ? e : "(no message)");
    return 1;
}

int main(void) {
    HdAlgebra *alg = NULL;
    if (hd_algebra_from_id("taft:3:1", &alg) != HD_STATUS_OK) return fail("from_id");
    size_t dim = 0;
    if (hd_algebra_dimension(alg, &dim) != HD_STATUS_OK || dim != 9) return fail("dimension");
    if (hd_algebra_verify(alg, 1, NULL) != HD_STATUS_OK) return fail("verify");

    char *json = NULL;
    if (hd_algebra_to_json(alg, false, &json) != HD_STATUS_OK) return fail("to_json");
    HdAlgebra *back = NULL;
    if (hd_algebra_from_json(json, &back) != HD_STATUS_OK) return fail("from_json");
    hd_string_free(json);
    hd_algebra_free(back);
    hd_algebra_free(alg);

    HdDouble *d = NULL;
    if (hd_double_build("taft:2:1", &d) != HD_STATUS_OK) return fail("double");
    size_t n = 0;
    hd_double_cross_relation_count(d, &n);
    HdAlgebra *dalg = NULL;
    hd_double_algebra(d, &dalg);
    hd_double_free(d);
    if (hd_algebra_dimension(dalg, &dim) != HD_STATUS_OK || dim != 16 || n == 0) return fail("double dimension");
    hd_algebra_free(dalg);

    if (hd_algebra_from_id("taft:4:2", &alg) != HD_STATUS_INVALID_ARGUMENT) return fail("expected rejection");
    if (hd_last_error() == NULL || strstr(hd_last_error(), "primitive") == NULL) return fail("error message");

    size_t families = 0;
    if (hd_classify("t421:1", &families, NULL) != HD_STATUS_OK || families != 1) return fail("classify");
    printf("ok %s\n", hd_version());
    return 0;
}
