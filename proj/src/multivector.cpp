#include "badlatt/multivector.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <sstream>

namespace badlatt {

IndexSets::IndexSets(int k, int r) : k_(k) {
    std::vector<int> cur;
    // Lexicographic enumeration by recursion on the smallest element.
    auto rec = [&](auto&& self, int start, int left) -> void {
        if (left == 0) {
            sets_.push_back(cur);
            return;
        }
        for (int i = start; i <= k_ - left; ++i) {
            cur.push_back(i);
            self(self, i + 1, left - 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, r);
    for (size_t i = 0; i < sets_.size(); ++i) rank_[mask_of(sets_[i])] = static_cast<int>(i);
}

int IndexSets::rank_of(uint32_t mask) const {
    auto it = rank_.find(mask);
    if (it == rank_.end()) throw std::logic_error("IndexSets: unknown mask");
    return it->second;
}

uint32_t IndexSets::mask_of(const std::vector<int>& s) {
    uint32_t m = 0;
    for (int i : s) m |= (1u << i);
    return m;
}

const IndexSets& index_sets(int k, int r) {
    static std::map<std::pair<int, int>, IndexSets> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({k, r});
    if (it == cache.end()) it = cache.emplace(std::make_pair(k, r), IndexSets(k, r)).first;
    return it->second;
}

int merge_sign(uint32_t a, uint32_t b) {
    if (a & b) return 0;
    // Count pairs (i in a, j in b) with j < i.
    int inversions = 0;
    for (uint32_t rest = a; rest; rest &= rest - 1) {
        const int i = std::countr_zero(rest);
        inversions += std::popcount(b & ((1u << i) - 1));
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

Rational laplace_gram(const std::vector<QVec>& u, const std::vector<QVec>& v) {
    if (u.size() != v.size()) throw std::invalid_argument("laplace_gram: size mismatch");
    const int r = static_cast<int>(u.size());
    QMat g(r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) g(i, j) = dot(u[i], v[j]);
    Rational d = g.det();
    return d < 0 ? Rational(-d) : d;
}

std::string multivector_to_json(const QMulti& v) {
    const IndexSets& is = index_sets(v.ambient(), v.grade());
    std::ostringstream os;
    os << "{\"dim\": " << v.ambient() << ", \"grade\": " << v.grade() << ", \"coords\": {";
    bool first = true;
    for (int t = 0; t < is.count(); ++t) {
        if (v.coord(t) == 0) continue;
        if (!first) os << ", ";
        first = false;
        os << "\"";
        const auto& s = is.set(t);
        for (size_t i = 0; i < s.size(); ++i) {
            if (i) os << ",";
            os << (s[i] + 1);  // 1-based in the serialized form
        }
        os << "\": \"" << rat_to_string(v.coord(t)) << "\"";
    }
    os << "}}";
    return os.str();
}

}  // namespace badlatt
