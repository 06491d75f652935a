// Serial vs OpenMP timing for the two data-parallel kernels: construction
// steps (independent child decisions) and QND cylinder classification.

#include "badlatt/engine.hpp"
#include "badlatt/qnd.hpp"

#include <chrono>
#include <cstdio>

#include <omp.h>

using namespace badlatt;

namespace {

template <class F>
double time_of(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

EngineConfig construct_workload() {
    return EngineConfig{FlowConfig(Weights({Rational(1)}), 16, make_rational(1, 9)),
                        CurveModel::veronese(1, Rational(-40), Rational(40)),
                        FractalMeasure::lebesgue(Rational(-40), Rational(40)),
                        Rational(0),
                        Rational(1),
                        6,
                        ThresholdSchedule{},
                        false,
                        1024};
}

QndExperiment qnd_workload() {
    QndExperiment e{FractalMeasure::lebesgue(Rational(-40), Rational(40)),
                    CurveModel::veronese(1, Rational(-40), Rational(40)),
                    Rational(0),
                    Rational(1),
                    4,
                    {Rational(2), Rational(-2)},
                    {},
                    10,
                    128};
    for (int j = 1; j <= 5; ++j) e.delta_grid.push_back(make_rational(1, 1 << j));
    return e;
}

}  // namespace

int main() {
    std::printf("threads available: %d\n\n", omp_get_max_threads());

    {
        uint64_t h_serial = 0, h_parallel = 0;
        const double ts = time_of([&] {
            ConstructionState st(construct_workload());
            st.run(false);
            h_serial = st.generations().back().hash();
        });
        const double tp = time_of([&] {
            ConstructionState st(construct_workload());
            st.run(true);
            h_parallel = st.generations().back().hash();
        });
        std::printf("construct (R=16, q_max=6, beam 1024)\n");
        std::printf("  serial   %8.3f s\n", ts);
        std::printf("  openmp   %8.3f s   speedup %.2fx   identical: %s\n\n", tp, ts / tp,
                    h_serial == h_parallel ? "yes" : "NO");
    }

    {
        Rational lo_serial, lo_parallel;
        const auto exp = qnd_workload();
        const double ts = time_of([&] { lo_serial = measure_W(exp, false).rows[0].mass_lo; });
        const double tp = time_of([&] { lo_parallel = measure_W(exp, true).rows[0].mass_lo; });
        std::printf("qnd measure_W (1024 cells, 5 deltas)\n");
        std::printf("  serial   %8.3f s\n", ts);
        std::printf("  openmp   %8.3f s   speedup %.2fx   identical: %s\n", tp, ts / tp,
                    lo_serial == lo_parallel ? "yes" : "NO");
    }
    return 0;
}
