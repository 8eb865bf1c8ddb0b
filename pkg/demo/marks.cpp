// Marker definitions; kept in their own translation unit so the calls in the
// benchmark can never be inlined away or elided.
#include <cstddef>

extern "C" {
void mvee_begin_M(size_t) {}
void mvee_end_M(size_t) {}
void mvee_begin_B0(size_t) {}
void mvee_end_B0(size_t) {}
void mvee_begin_B1(size_t) {}
void mvee_end_B1(size_t) {}
}
