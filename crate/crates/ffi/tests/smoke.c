#include <stdio.h>
#include "pregeom.h"

int main(void) {
    PregeomBinding *b = NULL;
    if (pregeom_binding_generate("fano_pair", NULL, 0, &b) != PREGEOM_STATUS_OK) {
        fprintf(stderr, "%s\n", pregeom_last_error());
        return 1;
    }
    size_t n = 0;
    uint64_t order = 0;
    PregeomVerdict v;
    pregeom_binding_element_count(b, &n);
    pregeom_binding_group_order(b, &order);
    if (pregeom_classify(b, 0, &v, NULL) != PREGEOM_STATUS_OK) {
        fprintf(stderr, "%s\n", pregeom_last_error());
        return 1;
    }
    printf("fano_pair %zu %llu verdict %d\n", n, (unsigned long long)order, (int)v);
    pregeom_binding_free(b);
    if (pregeom_binding_generate("nope", NULL, 0, &b) != PREGEOM_STATUS_INVALID_INPUT) return 1;
    return 0;
}
