#include "badlatt/engine.hpp"

#include <json.hpp>

#include <algorithm>
#include <exception>
#include <sstream>

namespace badlatt {

using nlohmann::json;

namespace {

const char* status_name(IntervalStatus s) {
    switch (s) {
        case IntervalStatus::Kept: return "kept";
        case IntervalStatus::RemovedMeasure: return "removed_measure";
        case IntervalStatus::RemovedDynamical: return "removed_dynamical";
        case IntervalStatus::RemovedIndeterminate: return "removed_indeterminate";
        default: return "dropped_beam";
    }
}

IntervalStatus status_from_name(const std::string& s) {
    if (s == "kept") return IntervalStatus::Kept;
    if (s == "removed_measure") return IntervalStatus::RemovedMeasure;
    if (s == "removed_dynamical") return IntervalStatus::RemovedDynamical;
    if (s == "removed_indeterminate") return IntervalStatus::RemovedIndeterminate;
    if (s == "dropped_beam") return IntervalStatus::DroppedBeam;
    throw std::invalid_argument("unknown interval status " + s);
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

json interval_to_json(const IntervalRec& r) {
    json j;
    j["lo"] = rat_to_string(r.lo);
    j["hi"] = rat_to_string(r.hi);
    j["parent"] = r.parent_index;
    j["status"] = status_name(r.status);
    if (r.status == IntervalStatus::RemovedDynamical ||
        r.status == IntervalStatus::RemovedIndeterminate) {
        j["p"] = r.p;
        j["l"] = r.l;
    }
    if (!r.witness.empty()) {
        json w = json::array();
        for (const auto& c : r.witness) w.push_back(c.get_str());
        j["witness"] = w;
    }
    return j;
}

IntervalRec interval_from_json(const json& j) {
    IntervalRec r;
    r.lo = rat_from_string(j.at("lo").get<std::string>());
    r.hi = rat_from_string(j.at("hi").get<std::string>());
    r.parent_index = j.at("parent").get<long>();
    r.status = status_from_name(j.at("status").get<std::string>());
    r.p = j.value("p", -1L);
    r.l = j.value("l", -1L);
    if (j.contains("witness"))
        for (const auto& w : j.at("witness")) r.witness.push_back(Int(w.get<std::string>()));
    return r;
}

}  // namespace

size_t Generation::kept_count() const {
    size_t n = 0;
    for (const auto& r : intervals) n += (r.status == IntervalStatus::Kept);
    return n;
}

std::string Generation::to_json() const {
    json j;
    j["q"] = q;
    json arr = json::array();
    for (const auto& r : intervals) arr.push_back(interval_to_json(r));
    j["intervals"] = std::move(arr);
    return j.dump();
}

Generation Generation::from_json(const std::string& text) {
    const json j = json::parse(text);
    Generation g;
    g.q = j.at("q").get<long>();
    for (const auto& e : j.at("intervals")) g.intervals.push_back(interval_from_json(e));
    return g;
}

uint64_t Generation::hash() const { return fnv1a(to_json()); }

long RemovalTable::at(long p, long q) const {
    auto it = h.find({p, q});
    return it == h.end() ? 0 : it->second;
}

std::string RemovalTable::to_csv() const {
    std::ostringstream os;
    os << "p,q,h\n";
    for (const auto& [pq, v] : h) os << pq.first << "," << pq.second << "," << v << "\n";
    return os.str();
}

std::string AuditEntry::to_jsonl() const {
    json j;
    j["q"] = q;
    j["child"] = child_index;
    j["record"] = interval_to_json(rec);
    return j.dump();
}

void EngineConfig::validate() const {
    if (I0_lo >= I0_hi) throw std::invalid_argument("config: empty I0");
    const Rational c = (I0_lo + I0_hi) / 2;
    const Rational half = (I0_hi - I0_lo) / 2;
    const Rational factor = rat_pow(Rational(3), flow.n() + 1);
    if (c - factor * half < curve.dom_lo() || c + factor * half > curve.dom_hi())
        throw std::invalid_argument("config: 3^{n+1} I0 exceeds the curve domain");
    if (3 * (I0_hi - I0_lo) > mu.rho0())
        throw std::invalid_argument("config: 3|I0| exceeds rho0 of the measure");
    if (!mu.supp_intersects(I0_lo, I0_hi))
        throw std::invalid_argument("config: I0 misses the support of the measure");
    if (beam_cap < 1) throw std::invalid_argument("config: beam_cap must be positive");
}

ConstructionState::ConstructionState(EngineConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    Generation g0;
    g0.q = 0;
    IntervalRec root;
    root.lo = cfg_.I0_lo;
    root.hi = cfg_.I0_hi;
    root.parent_index = -1;
    g0.intervals.push_back(std::move(root));
    gens_.push_back(std::move(g0));
}

std::vector<IntervalRec> partition_R(const Generation& gen, long R) {
    if (R < 2) throw std::invalid_argument("partition_R: R must be >= 2");
    std::vector<IntervalRec> children;
    for (size_t idx = 0; idx < gen.intervals.size(); ++idx) {
        const IntervalRec& rec = gen.intervals[idx];
        if (rec.status != IntervalStatus::Kept) continue;
        const Rational len = (rec.hi - rec.lo) / R;
        for (long i = 0; i < R; ++i) {
            IntervalRec c;
            c.lo = rec.lo + len * i;
            c.hi = i + 1 == R ? rec.hi : rec.lo + len * (i + 1);
            c.parent_index = static_cast<long>(idx);
            children.push_back(std::move(c));
        }
    }
    return children;
}

IntervalRec ConstructionState::decide_child(const IntervalRec& child, long q) const {
    IntervalRec rec = child;
    const Rational len = rec.hi - rec.lo;
    const Rational inv3C = Rational(1) / (3 * cfg_.mu.ahlfors_C());

    // Family p = q: measure too thin.
    const auto [mass_lo, mass_hi] = cfg_.mu.measure_interval_bracket(rec.lo, rec.hi);
    const Cmp upper = cfg_.mu.cmp_vs_alpha_power(mass_hi, inv3C, len);
    if (upper == Cmp::Less) {
        rec.status = IntervalStatus::RemovedMeasure;
        rec.p = q;
        return rec;
    }
    const Cmp lower = cfg_.mu.cmp_vs_alpha_power(mass_lo, inv3C, len);
    if (lower == Cmp::Less || lower == Cmp::Indeterminate || upper == Cmp::Indeterminate) {
        // The mass bracket straddles the threshold: remove conservatively.
        rec.status = IntervalStatus::RemovedIndeterminate;
        rec.p = q;
        return rec;
    }

    // Dynamical families, largest p (smallest l) first, then the p = 0 sweep.
    const Rational mid = (rec.lo + rec.hi) / 2;
    auto test = [&](long p, long l) -> bool {
        const Rational thr2 = cfg_.flow.removal_threshold_exponent(l) * 2;
        if (!cfg_.interval_mode) {
            const HMatrix H = make_H(cfg_.flow, cfg_.curve, l, q, mid);
            const HSvpDecision d = h_norm_vs_threshold(H, thr2, cfg_.flow.precision);
            if (d.verdict == Cmp::Less) {
                rec.status = IntervalStatus::RemovedDynamical;
                rec.p = p;
                rec.l = l;
                rec.witness = d.witness;
                return true;
            }
            if (d.verdict == Cmp::Indeterminate) {
                rec.status = IntervalStatus::RemovedIndeterminate;
                rec.p = p;
                rec.l = l;
                return true;
            }
            return false;
        }
        // Interval mode: certify the "for some x in I" quantifier over the
        // whole child.  An enclosure straddling the threshold is removed
        // conservatively and audited as indeterminate.
        const long cap = precision_cap();
        for (long prec = cfg_.flow.precision; prec <= cap; prec *= 2) {
            const Interval x = Interval::from_endpoints(rec.lo, rec.hi, prec);
            const IMat M = make_H_interval(cfg_.flow, cfg_.curve, l, q, x, prec);
            auto s = shortest_vector(M);
            if (!s) continue;
            const Interval thr = iv_exp_log_pow(Rational(cfg_.flow.R), thr2, prec);
            const Cmp v = s->norm2.compare(thr);
            if (v == Cmp::Less) {
                rec.status = IntervalStatus::RemovedDynamical;
                rec.p = p;
                rec.l = l;
                rec.witness = s->coeffs;
                return true;
            }
            if (v == Cmp::Greater || v == Cmp::Equal) return false;
        }
        rec.status = IntervalStatus::RemovedIndeterminate;
        rec.p = p;
        rec.l = l;
        return true;
    };

    for (long l = cfg_.schedule.m; l < cfg_.schedule.l_cut(q); ++l) {
        const long p = q - 4 * l;
        if (p <= q / 2 || p >= q) break;
        if (test(p, l)) return rec;
    }
    for (long l = cfg_.schedule.l_min(q); l <= cfg_.schedule.l_max(q); ++l) {
        if (test(0, l)) return rec;
    }
    rec.status = IntervalStatus::Kept;
    return rec;
}

void ConstructionState::step(bool parallel) {
    const Generation& prev = gens_.back();
    const long q = prev.q;
    std::vector<IntervalRec> children = partition_R(prev, cfg_.flow.R);
    std::vector<IntervalRec> decided(children.size());

    std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < static_cast<long>(children.size()); ++i) {
        try {
            decided[i] = decide_child(children[i], q);
        } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);

    // Beam thinning: keep a deterministic evenly-strided subset of survivors.
    StepStats st;
    std::vector<size_t> kept_idx;
    for (size_t i = 0; i < decided.size(); ++i)
        if (decided[i].status == IntervalStatus::Kept) kept_idx.push_back(i);
    if (kept_idx.size() > cfg_.beam_cap) {
        std::vector<bool> keep(decided.size(), false);
        const size_t n = kept_idx.size();
        for (size_t i = 0; i < cfg_.beam_cap; ++i) keep[kept_idx[i * n / cfg_.beam_cap]] = true;
        for (size_t i : kept_idx)
            if (!keep[i]) {
                decided[i].status = IntervalStatus::DroppedBeam;
                ++st.beam_dropped;
            }
    }

    // Removal accounting: per-(family, ancestor) counts, maxima into h.
    std::map<std::pair<long, long>, long> per_parent;  // (p, ancestor index in gens_[p])
    auto ancestor_at = [&](const IntervalRec& rec, long target_q) {
        // rec sits in the new generation q+1; its parent chain starts in prev.
        long idx = rec.parent_index;
        for (long g = q; g > target_q; --g) idx = gens_[g].intervals[idx].parent_index;
        return idx;
    };
    for (size_t i = 0; i < decided.size(); ++i) {
        const IntervalRec& r = decided[i];
        switch (r.status) {
            case IntervalStatus::RemovedMeasure:
                ++st.measure_removed;
                ++per_parent[{q, ancestor_at(r, q)}];
                break;
            case IntervalStatus::RemovedDynamical:
                ++st.dynamical_removed;
                ++per_parent[{r.p, ancestor_at(r, r.p)}];
                break;
            case IntervalStatus::RemovedIndeterminate:
                ++st.indeterminate_removed;
                ++per_parent[{r.p < 0 ? q : r.p, ancestor_at(r, r.p < 0 ? q : r.p)}];
                break;
            case IntervalStatus::Kept:
                ++st.kept;
                break;
            default: break;
        }
        if (r.status != IntervalStatus::Kept && r.status != IntervalStatus::DroppedBeam)
            audit_.push_back({q, i, r});
    }
    for (const auto& [key, count] : per_parent) {
        auto& cell = table_.h[{key.first, q}];
        cell = std::max(cell, count);
    }

    Generation next;
    next.q = q + 1;
    next.intervals = std::move(decided);
    gens_.push_back(std::move(next));
    stats_.push_back(st);
}

void ConstructionState::run(bool parallel) {
    while (gens_.back().q < cfg_.q_max && gens_.back().kept_count() > 0) step(parallel);
}

bool ConstructionState::last_generation_nonempty() const {
    return gens_.back().kept_count() > 0;
}

TqResult tq_recursion(long R, const std::function<Int(long, long)>& h, long q_max) {
    TqResult res;
    // M_q = (R - h_qq) M_{q-1} - sum_{j>=1} h_{q-j,q} M_{q-j-1}, M_{-1} = 1;
    // then t_q = M_q / M_{q-1} exactly, and positivity of all t_q is
    // equivalent to positivity of all M_q.
    std::vector<Int> M;  // M[i] = M_{i-1}: M[0] = M_{-1} = 1
    M.push_back(Int(1));
    for (long q = 0; q <= q_max; ++q) {
        Int m = (Int(R) - h(q, q)) * M[q];
        for (long j = 1; j <= q; ++j) m -= h(q - j, q) * M[q - j];
        res.t.push_back(make_rational(m, M[q]));
        if (m <= 0) {
            res.failure_q = q;
            return res;
        }
        M.push_back(std::move(m));
    }
    return res;
}

TqResult tq_recursion(long R, const RemovalTable& table, long q_max) {
    return tq_recursion(R, [&table](long p, long q) { return Int(table.at(p, q)); }, q_max);
}

Int ceil_scaled_power(const Rational& c, long R, long an, long ad, const Rational& w) {
    // Integer alpha (an an exact power of ad) admits an exact rational path;
    // otherwise the value is transcendental and enclosures resolve.
    if (ad >= 2) {
        long j = 0;
        Int pw(1);
        while (pw < an) {
            pw *= ad;
            ++j;
        }
        if (pw == an) {
            if (auto v = try_exact_pow(Rational(R), w * j)) return rat_ceil(c * *v);
        }
    }
    const long cap = precision_cap();
    for (long prec = 128; prec <= cap; prec *= 2) {
        const Interval lnR = log_iv(Interval::from_long(R, prec));
        const Interval alpha =
            div(log_iv(Interval::from_long(an, prec)), log_iv(Interval::from_long(ad, prec)));
        const Interval v = mul(iv_from_rational(c, prec),
                               exp_iv(mul(alpha, lnR.scaled_q(w))));
        MpFloat clo(prec), chi(prec);
        mpfr_ceil(clo.get(), v.lo().get());
        mpfr_ceil(chi.get(), v.hi().get());
        if (mpfr_cmp(clo.get(), chi.get()) == 0) {
            Int out;
            mpfr_get_z(out.get_mpz_t(), clo.get(), MPFR_RNDN);
            return out;
        }
    }
    throw std::domain_error("ceil_scaled_power: unresolved at precision cap");
}

std::function<Int(long, long)> section4_h(const Section4Preset& preset) {
    const Rational inv16C2 = Rational(1) / (16 * preset.C * preset.C);
    const Int hqq = Int(preset.R) - ceil_scaled_power(inv16C2, preset.R, preset.alpha_num,
                                                      preset.alpha_den, Rational(1));
    auto cache = std::make_shared<std::map<long, Int>>();
    const Section4Preset p = preset;
    return [p, hqq, cache](long pp, long q) -> Int {
        if (pp == q) return hqq;
        const long span = q + 1 - pp;
        auto it = cache->find(span);
        if (it != cache->end()) return it->second;
        const Int v = ceil_scaled_power(p.C3, p.R, p.alpha_num, p.alpha_den,
                                        (Rational(1) - p.eta3) * Rational(span));
        (*cache)[span] = v;
        return v;
    };
}

Certificate extract_point(const ConstructionState& state, ExtractStrategy strategy) {
    const auto& gens = state.generations();
    const Generation& last = gens.back();
    long best = -1;
    Rational best_key;
    for (size_t i = 0; i < last.intervals.size(); ++i) {
        const IntervalRec& r = last.intervals[i];
        if (r.status != IntervalStatus::Kept) continue;
        if (strategy == ExtractStrategy::Leftmost) {
            if (best < 0 || r.lo < best_key) {
                best = static_cast<long>(i);
                best_key = r.lo;
            }
        } else {
            const Rational mass = state.config().mu.measure_interval_bracket(r.lo, r.hi).first;
            if (best < 0 || mass > best_key) {
                best = static_cast<long>(i);
                best_key = mass;
            }
        }
    }
    if (best < 0) throw std::runtime_error("extract_point: empty final generation");

    Certificate cert;
    long idx = best;
    for (size_t g = gens.size(); g-- > 0;) {
        const IntervalRec& r = gens[g].intervals[idx];
        cert.chain.push_back({r.lo, r.hi});
        idx = r.parent_index;
        if (idx < 0) break;
    }
    std::reverse(cert.chain.begin(), cert.chain.end());
    const auto& fin = cert.chain.back();
    const auto point = state.config().mu.supp_point_inside(fin.first, fin.second);
    if (!point) throw std::runtime_error("extract_point: no support point in the final interval");
    cert.point = *point;
    return cert;
}

namespace {

// Exact comparison of q1^{r1} d1 vs q2^{r2} d2 (all nonnegative, r rational):
// raise to the lcm of the exponent denominators.
Cmp cmp_terms(long q1, const Rational& r1, const Rational& d1, long q2, const Rational& r2,
              const Rational& d2) {
    if (d1 == 0 && d2 == 0) return Cmp::Equal;
    if (d1 == 0) return Cmp::Less;
    if (d2 == 0) return Cmp::Greater;
    Int vl;
    mpz_lcm(vl.get_mpz_t(), r1.get_den().get_mpz_t(), r2.get_den().get_mpz_t());
    const long V = vl.get_si();
    const Rational e1 = r1 * V, e2 = r2 * V;
    const Rational lhs = rat_pow(Rational(q1), e1.get_num().get_si()) * rat_pow(d1, V);
    const Rational rhs = rat_pow(Rational(q2), e2.get_num().get_si()) * rat_pow(d2, V);
    return cmp_of_int(cmp(lhs, rhs));
}

Rational dist_to_Z(const Rational& x) {
    const Rational f = x - Rational(rat_floor(x));
    return std::min(f, Rational(Rational(1) - f));
}

Interval dist_to_Z(const Interval& v, long prec) {
    MpFloat mid(prec);
    mpfr_add(mid.get(), v.lo().get(), v.hi().get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    mpfr_round(mid.get(), mid.get());
    Int ki;
    mpfr_get_z(ki.get_mpz_t(), mid.get(), MPFR_RNDN);
    const Interval d = sub(v, Interval::from_rational(Rational(ki), prec)).abs();
    if (mpfr_cmp_q(d.hi().get(), Rational(1, 2).get_mpq_t()) <= 0) return d;
    return Interval::from_endpoints(Rational(0), Rational(1, 2), prec);
}

}  // namespace

CertifyResult certify_bad(const QVec& point, const Weights& weights, long Q) {
    if (Q < 1) throw std::invalid_argument("certify_bad: Q must be >= 1");
    const int n = weights.n();
    CertifyResult res;
    long best_q = 1;
    Rational best_d;
    Rational best_r;
    bool have = false;
    for (long q = 1; q <= Q; ++q) {
        // max_i q^{r_i} dist(q y_i, Z)
        Rational cur_d;
        Rational cur_r;
        bool cur_have = false;
        for (int i = 0; i < n; ++i) {
            const Rational d = dist_to_Z(Rational(q) * point[i]);
            if (!cur_have || cmp_terms(q, weights[i], d, q, cur_r, cur_d) == Cmp::Greater) {
                cur_have = true;
                cur_d = d;
                cur_r = weights[i];
            }
        }
        if (!have || cmp_terms(q, cur_r, cur_d, best_q, best_r, best_d) == Cmp::Less) {
            have = true;
            best_q = q;
            best_r = cur_r;
            best_d = cur_d;
            if (best_d == 0) break;  // exact rational hit; the minimum is 0
        }
    }
    res.argmin_q = best_q;
    if (best_d == 0) {
        res.c_lo = res.c_hi = 0;
        return res;
    }
    const Interval v = mul(iv_pow(Interval::from_long(best_q, 256), best_r, 256),
                           iv_from_rational(best_d, 256));
    mpq_t tmp;
    mpq_init(tmp);
    mpfr_get_q(tmp, v.lo().get());
    res.c_lo = Rational(mpq_class(tmp));
    mpfr_get_q(tmp, v.hi().get());
    res.c_hi = Rational(mpq_class(tmp));
    mpq_clear(tmp);
    return res;
}

CertifyResult certify_bad(const IVec& point, const Weights& weights, long Q) {
    if (Q < 1) throw std::invalid_argument("certify_bad: Q must be >= 1");
    const int n = weights.n();
    const long prec = point[0].prec();
    CertifyResult res;
    MpFloat min_lo(prec), min_hi(prec);
    mpfr_set_inf(min_lo.get(), 1);
    mpfr_set_inf(min_hi.get(), 1);
    long argmin = 1;
    for (long q = 1; q <= Q; ++q) {
        MpFloat max_lo(prec), max_hi(prec);
        mpfr_set_si(max_lo.get(), -1, MPFR_RNDN);
        mpfr_set_si(max_hi.get(), -1, MPFR_RNDN);
        for (int i = 0; i < n; ++i) {
            const Interval qy = point[i].scaled_q(Rational(q));
            const Interval d = dist_to_Z(qy, prec);
            const Interval term =
                weights[i] == 1 ? d.scaled_q(Rational(q))
                                : mul(iv_pow(Interval::from_long(q, prec), weights[i], prec), d);
            if (mpfr_cmp(term.lo().get(), max_lo.get()) > 0)
                mpfr_set(max_lo.get(), term.lo().get(), MPFR_RNDD);
            if (mpfr_cmp(term.hi().get(), max_hi.get()) > 0)
                mpfr_set(max_hi.get(), term.hi().get(), MPFR_RNDU);
        }
        if (mpfr_cmp(max_hi.get(), min_hi.get()) < 0) {
            mpfr_set(min_hi.get(), max_hi.get(), MPFR_RNDU);
            argmin = q;
        }
        if (mpfr_cmp(max_lo.get(), min_lo.get()) < 0)
            mpfr_set(min_lo.get(), max_lo.get(), MPFR_RNDD);
    }
    res.argmin_q = argmin;
    mpq_t tmp;
    mpq_init(tmp);
    mpfr_get_q(tmp, min_lo.get());
    res.c_lo = Rational(mpq_class(tmp));
    mpfr_get_q(tmp, min_hi.get());
    res.c_hi = Rational(mpq_class(tmp));
    mpq_clear(tmp);
    return res;
}

std::string Certificate::to_json(const EngineConfig& cfg, const std::vector<Rational>& tq) const {
    json j;
    json chain_j = json::array();
    for (const auto& [lo, hi] : chain) chain_j.push_back({rat_to_string(lo), rat_to_string(hi)});
    j["chain"] = std::move(chain_j);
    j["point"] = rat_to_string(point);
    j["c_estimate"] = rat_to_string(c_estimate);
    j["c_argmin_q"] = c_argmin_q;
    json tq_j = json::array();
    for (const auto& t : tq) tq_j.push_back(rat_to_string(t));
    j["tq"] = std::move(tq_j);

    json conf;
    json w = json::array();
    for (int i = 0; i < cfg.flow.n(); ++i) w.push_back(rat_to_string(cfg.flow.weights[i]));
    conf["weights"] = std::move(w);
    conf["R"] = cfg.flow.R;
    conf["eps"] = rat_to_string(cfg.flow.eps);
    conf["m"] = cfg.flow.m;
    conf["precision"] = cfg.flow.precision;
    json comps = json::array();
    for (int i = 0; i < cfg.curve.n(); ++i) {
        json c = json::array();
        for (const auto& co : cfg.curve.component(i).coeffs) c.push_back(rat_to_string(co));
        comps.push_back(std::move(c));
    }
    conf["curve"] = {{"n", cfg.curve.n()},
                     {"components", std::move(comps)},
                     {"domain", {rat_to_string(cfg.curve.dom_lo()), rat_to_string(cfg.curve.dom_hi())}}};
    conf["measure"] = json::parse(cfg.mu.to_json());
    conf["I0"] = {rat_to_string(cfg.I0_lo), rat_to_string(cfg.I0_hi)};
    conf["q_max"] = cfg.q_max;
    conf["schedule"] = {{"m", cfg.schedule.m},
                        {"min_div", cfg.schedule.min_div},
                        {"max_div", cfg.schedule.max_div},
                        {"cut_div", cfg.schedule.cut_div}};
    conf["mode"] = cfg.interval_mode ? "interval" : "midpoint";
    conf["beam_cap"] = cfg.beam_cap;
    j["config"] = std::move(conf);

    j["content_hash"] = fnv1a(j.dump());
    return j.dump(2);
}

}  // namespace badlatt
