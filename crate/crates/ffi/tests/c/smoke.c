#include <stdio.h>
#include <string.h>

#include "charsub.h"

int main(void) {
    uint32_t ks[] = {3, 1};
    CharsubShape *g = NULL;
    if (charsub_shape_new(2, ks, 2, &g) != CHARSUB_STATUS_OK) return 1;

    uint64_t order = 0;
    if (charsub_shape_order(g, &order) != CHARSUB_STATUS_OK || order != 16) return 2;

    int64_t gen[] = {1, 2};
    bool ch = false, fi = true;
    charsub_is_characteristic(g, gen, 1, &ch);
    charsub_is_fully_invariant(g, gen, 1, &fi);
    if (!ch || fi) return 3;

    char *json = NULL;
    if (charsub_classify_json(g, &json) != CHARSUB_STATUS_OK) return 4;
    if (!strstr(json, "\"char_eq_fi\":false")) return 5;
    charsub_string_free(json);
    charsub_shape_free(g);

    CharsubShape *bad = NULL;
    if (charsub_shape_new(4, ks, 1, &bad) != CHARSUB_STATUS_INVALID_ARGUMENT) return 6;
    if (strcmp(charsub_last_error(), "4 is not prime") != 0) return 7;

    puts("ok");
    return 0;
}
