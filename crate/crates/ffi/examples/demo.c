/* Minimal consumer of the rigidmv C ABI.
 *
 * Build (from the workspace root, after `cargo build --release -p rigidmv-ffi`):
 *   cc crates/ffi/examples/demo.c \
 *      -Icrates/ffi/include -Ltarget/release -lrigidmv_ffi -lm -o demo
 */
#include <stdio.h>
#include <rigidmv.h>

int main(void) {
    RmvGraph *g = NULL;
    if (rmv_graph_named("cyclohexane", &g) != RmvStatus_Ok) {
        fprintf(stderr, "error: %s\n", rmv_last_error_message());
        return 1;
    }
    uint8_t n, dim;
    uint32_t edges;
    rmv_graph_counts(g, &n, &dim, &edges);
    uint64_t mv = 0;
    if (rmv_min_mixed_volume(g, 1, 0, &mv) != RmvStatus_Ok) {
        fprintf(stderr, "error: %s\n", rmv_last_error_message());
        rmv_graph_free(g);
        return 1;
    }
    printf("cyclohexane: n=%u dim=%u edges=%u min mixed volume=%llu\n",
           (unsigned)n, (unsigned)dim, (unsigned)edges, (unsigned long long)mv);
    char *bez = NULL;
    rmv_bezout(n, dim, &bez);
    printf("bezout bound: %s\n", bez);
    rmv_string_free(bez);
    rmv_graph_free(g);
    return 0;
}
