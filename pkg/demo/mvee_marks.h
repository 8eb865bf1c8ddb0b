/*
 * Section markers for monitored benchmark code.
 *
 * gen_begin_mark(ID, TYPE, VALUE) / gen_end_mark(ID, TYPE, VALUE) surround
 * the call to a monitored run method. They expand to calls to the opaque
 * external functions mvee_begin_<ID>(VALUE) and mvee_end_<ID>(VALUE). Pass
 * the run method's input to the begin mark and its output to the end mark:
 * the data dependency keeps the optimizer from eliding or hoisting the
 * marked code, and because the marker functions live in a separate
 * translation unit the calls always survive into the .s file, where the
 * analyzer locates them by symbol name.
 *
 * Every (ID, TYPE) pair used in the project needs a definition in one
 * separate translation unit, e.g.:
 *
 *     extern "C" {
 *     void mvee_begin_B1(size_t) {}
 *     void mvee_end_B1(size_t) {}
 *     }
 *
 * Do not compile that translation unit with link-time optimization.
 */
#pragma once

#define MVEE_STRINGIFY_(x) #x

#define gen_begin_mark(ID, TYPE, VALUE)                                       \
    {                                                                         \
        extern void mvee_begin_##ID(TYPE)                                     \
            __asm__("mvee_begin_" MVEE_STRINGIFY_(ID));                       \
        mvee_begin_##ID(VALUE);                                               \
    }

#define gen_end_mark(ID, TYPE, VALUE)                                         \
    {                                                                         \
        extern void mvee_end_##ID(TYPE)                                       \
            __asm__("mvee_end_" MVEE_STRINGIFY_(ID));                         \
        mvee_end_##ID(VALUE);                                                 \
    }
