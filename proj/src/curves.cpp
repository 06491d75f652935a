#include "badlatt/curves.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace badlatt {

using nlohmann::json;

Rational QPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Interval QPoly::eval(const Interval& x) const {
    Interval acc(x.prec());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = add(mul(acc, x), Interval::from_rational(*it, x.prec()));
    return acc;
}

QPoly QPoly::derivative() const {
    QPoly d;
    for (size_t i = 1; i < coeffs.size(); ++i) d.coeffs.push_back(Rational(static_cast<long>(i)) * coeffs[i]);
    return d;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
    QPoly r;
    if (a.coeffs.empty() || b.coeffs.empty()) return r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Rational(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    }
    return r;
}

void poly_add_scaled(QPoly& a, const Rational& c, const QPoly& b) {
    if (c == 0) return;
    if (b.coeffs.size() > a.coeffs.size()) a.coeffs.resize(b.coeffs.size(), Rational(0));
    for (size_t i = 0; i < b.coeffs.size(); ++i) a.coeffs[i] += c * b.coeffs[i];
}

QPoly poly_shift(const QPoly& p, const Rational& m) {
    QPoly out = p;
    const int d = static_cast<int>(out.coeffs.size()) - 1;
    for (int j = 0; j < d; ++j)
        for (int i = d - 1; i >= j; --i) out.coeffs[i] += m * out.coeffs[i + 1];
    return out;
}

Interval poly_eval_centered(const QPoly& p, const Rational& lo, const Rational& hi, long prec) {
    const Rational mid = (lo + hi) / 2;
    const QPoly shifted = poly_shift(p, mid);
    return shifted.eval(Interval::from_endpoints(lo - mid, hi - mid, prec));
}

int QPoly::degree() const {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
        if (coeffs[i] != 0) return i;
    return -1;
}

bool QPoly::is_zero() const { return degree() < 0; }

CurveModel::CurveModel(int n, std::vector<QPoly> components, Rational dom_lo, Rational dom_hi)
    : n_(n), components_(std::move(components)), dom_lo_(std::move(dom_lo)), dom_hi_(std::move(dom_hi)) {
    if (n < 1 || static_cast<int>(components_.size()) != n)
        throw std::invalid_argument("CurveModel: need n components");
    if (n + 1 > kMaxAmbientDim + 1)
        throw std::invalid_argument("CurveModel: dimension exceeds build-time cap");
    if (dom_lo_ >= dom_hi_) throw std::invalid_argument("CurveModel: empty domain");
    // Normalized form: first component is the identity.
    const QPoly& first = components_[0];
    const bool ident = first.degree() == 1 && first.coeffs[0] == 0 && first.coeffs[1] == 1;
    if (!ident) throw std::invalid_argument("CurveModel: first component must be x");
    for (const auto& c : components_) derivatives_.push_back(c.derivative());
}

CurveModel CurveModel::veronese(int n, Rational dom_lo, Rational dom_hi) {
    std::vector<QPoly> comps;
    for (int i = 1; i <= n; ++i) {
        QPoly p;
        p.coeffs.assign(i + 1, Rational(0));
        p.coeffs[i] = 1;
        comps.push_back(std::move(p));
    }
    return CurveModel(n, std::move(comps), std::move(dom_lo), std::move(dom_hi));
}

CurveModel CurveModel::from_json(const std::string& text) {
    const json j = json::parse(text);
    const int n = j.at("n").get<int>();
    std::vector<QPoly> comps;
    for (const auto& comp : j.at("components")) {
        QPoly p;
        for (const auto& c : comp) p.coeffs.push_back(rat_from_string(c.get<std::string>()));
        comps.push_back(std::move(p));
    }
    const auto& dom = j.at("domain");
    return CurveModel(n, std::move(comps), rat_from_string(dom.at(0).get<std::string>()),
                      rat_from_string(dom.at(1).get<std::string>()));
}

CurveModel CurveModel::from_spec(const std::string& spec) {
    if (spec.rfind("veronese:", 0) == 0) {
        const int n = std::stoi(spec.substr(9));
        return veronese(n);
    }
    return from_json(spec);
}

QVec CurveModel::eval(const Rational& x) const {
    if (!in_domain(x)) throw std::domain_error("curve eval: x out of domain");
    QVec out;
    for (const auto& c : components_) out.push_back(c.eval(x));
    return out;
}

QVec CurveModel::eval_derivative(const Rational& x) const {
    if (!in_domain(x)) throw std::domain_error("curve eval: x out of domain");
    QVec out;
    for (const auto& d : derivatives_) out.push_back(d.eval(x));
    return out;
}

IVec CurveModel::eval(const Interval& x) const {
    IVec out;
    for (const auto& c : components_) out.push_back(c.eval(x));
    return out;
}

IVec CurveModel::eval_derivative(const Interval& x) const {
    IVec out;
    for (const auto& d : derivatives_) out.push_back(d.eval(x));
    return out;
}

QVec CurveModel::eval_tilde(const Rational& x) const {
    QVec out{Rational(1)};
    QVec phi = eval(x);
    out.insert(out.end(), phi.begin(), phi.end());
    return out;
}

QVec CurveModel::eval_tilde_derivative(const Rational& x) const {
    QVec out{Rational(0)};
    QVec d = eval_derivative(x);
    out.insert(out.end(), d.begin(), d.end());
    return out;
}

IVec CurveModel::eval_tilde(const Interval& x) const {
    IVec out{Interval::from_long(1, x.prec())};
    IVec phi = eval(x);
    out.insert(out.end(), phi.begin(), phi.end());
    return out;
}

IVec CurveModel::eval_tilde_derivative(const Interval& x) const {
    IVec out{Interval(x.prec())};
    IVec d = eval_derivative(x);
    out.insert(out.end(), d.begin(), d.end());
    return out;
}

QVec CurveModel::eval_psi(const Rational& x) const {
    QVec out;
    for (int i = 1; i < n_; ++i) out.push_back(derivatives_[i].eval(x));
    return out;
}

IVec CurveModel::eval_psi(const Interval& x) const {
    IVec out;
    for (int i = 1; i < n_; ++i) out.push_back(derivatives_[i].eval(x));
    return out;
}

bool CurveModel::nondegenerate() const {
    // Coefficient matrix of {1, phi_1, ..., phi_n} must have rank n+1.
    int max_deg = 0;
    for (const auto& c : components_) max_deg = std::max(max_deg, c.degree());
    std::vector<QVec> rows;
    QVec one(max_deg + 1, Rational(0));
    one[0] = 1;
    rows.push_back(one);
    for (const auto& c : components_) {
        QVec row(max_deg + 1, Rational(0));
        for (size_t i = 0; i < c.coeffs.size() && i <= static_cast<size_t>(max_deg); ++i)
            row[i] = c.coeffs[i];
        rows.push_back(row);
    }
    return rational_rank(rows) == n_ + 1;
}

Rational CurveModel::wronskian_pair(const ZVec& a, const ZVec& b, const Rational& x) const {
    const QVec t = eval_tilde(x);
    const QVec td = eval_tilde_derivative(x);
    const QVec aq = to_rational(a), bq = to_rational(b);
    return dot(t, aq) * dot(td, bq) - dot(t, bq) * dot(td, aq);
}

QPoly CurveModel::wronskian_poly(const ZVec& a, const ZVec& b) const {
    // tilde components as polynomials: (1, x, phi_2, ..., phi_n).
    std::vector<QPoly> tilde;
    QPoly one;
    one.coeffs = {Rational(1)};
    tilde.push_back(one);
    QPoly ident;
    ident.coeffs = {Rational(0), Rational(1)};
    tilde.push_back(ident);
    for (int i = 1; i < n_; ++i) tilde.push_back(components_[i]);

    auto lincomb = [&](const ZVec& c) {
        QPoly p;
        for (size_t i = 0; i < tilde.size(); ++i) {
            const auto& t = tilde[i].coeffs;
            if (t.size() > p.coeffs.size()) p.coeffs.resize(t.size(), Rational(0));
            for (size_t j = 0; j < t.size(); ++j) p.coeffs[j] += Rational(c[i]) * t[j];
        }
        return p;
    };
    const QPoly fa = lincomb(a), fb = lincomb(b);
    const QPoly fad = fa.derivative(), fbd = fb.derivative();
    // fa*fbd - fb*fad
    auto mul_poly = [](const QPoly& p, const QPoly& q) {
        QPoly r;
        if (p.coeffs.empty() || q.coeffs.empty()) return r;
        r.coeffs.assign(p.coeffs.size() + q.coeffs.size() - 1, Rational(0));
        for (size_t i = 0; i < p.coeffs.size(); ++i)
            for (size_t j = 0; j < q.coeffs.size(); ++j) r.coeffs[i + j] += p.coeffs[i] * q.coeffs[j];
        return r;
    };
    QPoly w = mul_poly(fa, fbd);
    const QPoly w2 = mul_poly(fb, fad);
    if (w2.coeffs.size() > w.coeffs.size()) w.coeffs.resize(w2.coeffs.size(), Rational(0));
    for (size_t i = 0; i < w2.coeffs.size(); ++i) w.coeffs[i] -= w2.coeffs[i];
    return w;
}

}  // namespace badlatt
