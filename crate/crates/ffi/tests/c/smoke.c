#include <stdio.h>
#include <string.h>

#include "metakit.h"

#define CHECK(call)                                                      \
    do {                                                                 \
        MkStatus st_ = (call);                                           \
        if (st_ != MK_STATUS_OK) {                                       \
            fprintf(stderr, "%s: %d %s\n", #call, st_, mk_last_error()); \
            return 1;                                                    \
        }                                                                \
    } while (0)

static const char *FIXTURE =
    "rel A(3) -> B(2)\n"
    "a1 -> b1\n"
    "a2 -> b1\n"
    "a3 -> b2\n";

int main(void) {
    MkRel *r = NULL, *k = NULL, *bad = NULL;
    MkClassification c;
    CHECK(mk_rel_parse(FIXTURE, 0, &r));
    CHECK(mk_rel_classify(r, &c));
    if (!c.function || c.injective) return 2;

    const char *names[] = {"f"};
    const MkRel *rels[] = {r};
    CHECK(mk_rel_eval("conv f ; f", names, rels, 1, 4, &k));
    bool hit = false;
    CHECK(mk_rel_get(k, 0, 1, &hit));
    if (!hit) return 3;

    if (mk_rel_compose(r, r, &bad) != MK_STATUS_TYPE || bad != NULL) return 4;
    if (mk_last_error() == NULL || strlen(mk_last_error()) == 0) return 5;

    size_t xs[] = {2, 0, 1};
    size_t ys[3];
    CHECK(mk_quicksort(xs, 3, ys));
    if (ys[0] != 0 || ys[1] != 1 || ys[2] != 2) return 6;

    mk_rel_free(k);
    mk_rel_free(r);
    puts("ok");
    return 0;
}
