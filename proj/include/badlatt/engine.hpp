#pragma once

// Generation-by-generation Cantor construction: R-fold splitting, the
// measure-removal family, the two dynamical removal families driven by the
// flow lattice H_{l,q}, removal-rate accounting h_{p,q}, the nonemptiness
// recursion for t_q, point extraction and Bad(r) certification.

#include "badlatt/curves.hpp"
#include "badlatt/flows.hpp"
#include "badlatt/fractal.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace badlatt {

// l-ranges of the removal schedule.  The p = 0 family sweeps
// l in [max(m, ceil(q/min_div)), floor(q/max_div)]; the p = q - 4l family
// sweeps l in [m, ceil(q/cut_div) - 1].  All four parameters are knobs.
struct ThresholdSchedule {
    long m = 1;
    long min_div = 8;
    long max_div = 4;
    long cut_div = 8;

    long l_min(long q) const { return std::max(m, (q + min_div - 1) / min_div); }
    long l_max(long q) const { return q / max_div; }
    long l_cut(long q) const { return (q + cut_div - 1) / cut_div; }
};

enum class IntervalStatus {
    Kept,
    RemovedMeasure,
    RemovedDynamical,
    RemovedIndeterminate,
    DroppedBeam,  // beam-cap thinning: unexplored, not removed by the construction
};

struct IntervalRec {
    Rational lo, hi;
    long parent_index = -1;  // index into the previous generation's records
    IntervalStatus status = IntervalStatus::Kept;
    long p = -1, l = -1;  // dynamical family attribution
    ZVec witness;         // short vector coefficients for dynamical removals
};

struct Generation {
    long q = 0;  // intervals have length |I0| R^-q
    std::vector<IntervalRec> intervals;

    size_t kept_count() const;
    std::string to_json() const;
    static Generation from_json(const std::string& text);
    // FNV-1a over the serialized form; replay determinism is checked on it.
    uint64_t hash() const;
};

struct RemovalTable {
    // (p, q) -> max over J in J_p of removals at step q inside J.
    std::map<std::pair<long, long>, long> h;

    long at(long p, long q) const;
    std::string to_csv() const;
};

struct StepStats {
    long measure_removed = 0;
    long dynamical_removed = 0;
    long indeterminate_removed = 0;
    long beam_dropped = 0;
    long kept = 0;
};

struct EngineConfig {
    FlowConfig flow;
    CurveModel curve;
    FractalMeasure mu;
    Rational I0_lo, I0_hi;
    long q_max = 8;
    ThresholdSchedule schedule;
    bool interval_mode = false;  // quantifier over the whole child instead of its midpoint
    size_t beam_cap = 4096;      // deterministic per-generation exploration bound

    void validate() const;  // domain margin, 3|I0| <= rho0, supp intersection
};

struct AuditEntry {
    long q = 0;
    size_t child_index = 0;
    IntervalRec rec;
    std::string to_jsonl() const;
};

class ConstructionState {
  public:
    explicit ConstructionState(EngineConfig cfg);

    const EngineConfig& config() const { return cfg_; }
    const std::vector<Generation>& generations() const { return gens_; }
    const RemovalTable& removal_table() const { return table_; }
    const std::vector<AuditEntry>& audit() const { return audit_; }
    const std::vector<StepStats>& stats() const { return stats_; }

    // One construction step: split the kept intervals of the last
    // generation, run the removal families, commit the new generation.
    // `parallel` runs child decisions under OpenMP; results are
    // index-ordered and bit-identical to the serial reference.
    void step(bool parallel = true);
    void run(bool parallel = true);  // until q_max

    bool last_generation_nonempty() const;

  private:
    IntervalRec decide_child(const IntervalRec& child, long q) const;
    EngineConfig cfg_;
    std::vector<Generation> gens_;
    RemovalTable table_;
    std::vector<AuditEntry> audit_;
    std::vector<StepStats> stats_;
};

// R children of equal length per kept interval.
std::vector<IntervalRec> partition_R(const Generation& gen, long R);

// Exact rational t_q sequence of the nonemptiness recursion, computed via
// the integer products M_q = (R - h_qq) M_{q-1} - sum_j h_{q-j,q} M_{q-j-1}.
struct TqResult {
    std::vector<Rational> t;
    std::optional<long> failure_q;  // first q with t_q <= 0
};
TqResult tq_recursion(long R, const std::function<Int(long, long)>& h, long q_max);
TqResult tq_recursion(long R, const RemovalTable& table, long q_max);

// Section-4 preset: h_qq = R - ceil((4C)^-2 R^alpha), h_pq = ceil(C3 *
// R^{alpha (1 - eta3)(q+1-p)}) with alpha = log(alpha_num)/log(alpha_den).
struct Section4Preset {
    long R;
    long alpha_num, alpha_den;
    Rational C;     // Ahlfors constant of the regime
    Rational C3;
    Rational eta3;
};
std::function<Int(long, long)> section4_h(const Section4Preset& preset);
// ceil(c * R^{alpha * w}) with alpha = log(an)/log(ad), decided by
// escalating enclosures (the value is never an integer in this regime).
Int ceil_scaled_power(const Rational& c, long R, long an, long ad, const Rational& w);

enum class ExtractStrategy { Leftmost, MaxMeasure };

struct Certificate {
    std::vector<std::pair<Rational, Rational>> chain;  // nested kept intervals
    Rational point;      // a supp-mu representative of the final interval
    Rational c_estimate; // certified lower bound from certify_bad
    long c_argmin_q = 0;
    std::string to_json(const EngineConfig& cfg, const std::vector<Rational>& tq) const;
};

Certificate extract_point(const ConstructionState& state, ExtractStrategy strategy);

// c_est = min_{1 <= q <= Q} max_i q^{r_i} dist(q y_i, Z) for the point
// y = phi(x); exact for rational points, enclosure for interval points.
struct CertifyResult {
    Rational c_lo, c_hi;  // equal on the exact path
    long argmin_q = 1;
};
CertifyResult certify_bad(const QVec& point, const Weights& weights, long Q);
CertifyResult certify_bad(const IVec& point, const Weights& weights, long Q);

}  // namespace badlatt
