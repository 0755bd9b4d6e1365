#include <stdio.h>
#include <string.h>

#include "projconn.h"

#define CHECK(cond)                                                          \
    do {                                                                     \
        if (!(cond)) {                                                       \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,   \
                    projconn_last_error());                                  \
            return 1;                                                        \
        }                                                                    \
    } while (0)

int main(void) {
    ProjconnRing *ring = NULL;
    CHECK(projconn_ring_new("x^2+y^2+z^2-1", NULL, &ring) == PROJCONN_STATUS_OK);

    char *nf = NULL;
    CHECK(projconn_ring_normal_form(ring, "(y+i*z)*(y-i*z)+x^2", &nf) == PROJCONN_STATUS_OK);
    printf("nf = %s\n", nf);
    projconn_string_free(nf);

    CHECK(projconn_ring_normal_form(ring, "x^-1", &nf) == PROJCONN_STATUS_PARSE);
    CHECK(nf == NULL);
    CHECK(strlen(projconn_last_error()) > 0);
    projconn_ring_free(ring);

    ProjconnExample *ex = NULL;
    CHECK(projconn_example_new("sphere", 1, 1, 1, &ex) == PROJCONN_STATUS_OK);
    char *json = NULL;
    bool passed = false;
    CHECK(projconn_example_verify_json(ex, 2, &json, &passed) == PROJCONN_STATUS_OK);
    CHECK(strstr(json, "\"discrepancy\"") != NULL);
    printf("verify passed = %d\n", passed ? 1 : 0);
    projconn_string_free(json);
    projconn_example_free(ex);

    CHECK(projconn_example_new("ellipsoid", 1, 1, 1, &ex) == PROJCONN_STATUS_INVALID_ARGUMENT);
    return 0;
}
