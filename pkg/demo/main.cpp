// Demo benchmark: three selective-sum methods monitored for build anomalies.
//
// The marked sections below delimit one call to each run method; the methods
// live in per-method include files so source-change tracking stays
// per method. The timing harness afterwards measures each method across
// selectivities and writes mvee-results.json.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "mvee_marks.h"

#include "src_m.inc"
#include "src_b0.inc"
#include "src_b1.inc"

static std::vector<uint32_t> make_data(size_t n, uint32_t seed) {
    std::vector<uint32_t> data(n);
    uint32_t x = seed;
    for (size_t i = 0; i < n; ++i) {
        x ^= x << 13;
        x ^= x >> 17;
        x ^= x << 5;
        data[i] = x;
    }
    return data;
}

static double time_ms(size_t (*fn)(const uint32_t*, size_t, uint32_t),
                      const uint32_t* data, size_t n, uint32_t threshold) {
    using clock = std::chrono::steady_clock;
    volatile size_t sink = 0;
    const int reps = 12;
    auto start = clock::now();
    for (int r = 0; r < reps; ++r) {
        sink += fn(data, n, threshold);
    }
    auto stop = clock::now();
    (void)sink;
    return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

int main(int argc, char**) {
    const size_t n = 200000 + (size_t)argc;  // opaque to the optimizer
    std::vector<uint32_t> data = make_data(n, 0x9e3779b9u + (uint32_t)argc);
    const uint32_t half = 0x80000000u;

    size_t input_M = (size_t)data.data() ^ n;
    gen_begin_mark(M, size_t, input_M);
    size_t res_M = run_M(data.data(), n, half);
    gen_end_mark(M, size_t, res_M);

    size_t input_B0 = res_M ^ n;
    gen_begin_mark(B0, size_t, input_B0);
    size_t res_B0 = run_B0(data.data(), n, half);
    gen_end_mark(B0, size_t, res_B0);

    size_t input_B1 = res_B0 ^ n;
    gen_begin_mark(B1, size_t, input_B1);
    size_t res_B1 = run_B1(data.data(), n, half);
    gen_end_mark(B1, size_t, res_B1);

    if (res_B0 != res_B1 || res_B0 != res_M) {
        std::fprintf(stderr, "self-check failed: methods disagree\n");
        return 1;
    }

    const double selectivities[] = {0.25, 0.5, 0.75, 1.0};
    FILE* out = std::fopen("mvee-results.json", "w");
    if (!out) {
        std::perror("mvee-results.json");
        return 1;
    }
    std::fprintf(out, "[\n");
    bool first = true;
    struct Method {
        const char* id;
        size_t (*fn)(const uint32_t*, size_t, uint32_t);
    } methods[] = {{"M", run_M}, {"B0", run_B0}, {"B1", run_B1}};
    for (const Method& m : methods) {
        for (double sel : selectivities) {
            uint32_t threshold = (uint32_t)(sel * 4294967295.0);
            double ms = time_ms(m.fn, data.data(), n, threshold);
            std::fprintf(out,
                         "%s  {\"section\": \"%s\", \"params\": {\"selectivity\": %.2f}, "
                         "\"metric\": \"runtime\", \"value\": %.4f, \"unit\": \"ms\"}",
                         first ? "" : ",\n", m.id, sel, ms);
            first = false;
        }
    }
    std::fprintf(out, "\n]\n");
    std::fclose(out);
    return 0;
}
