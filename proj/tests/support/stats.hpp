#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace testsupport {

inline double gammln(double x) {
    static const double cof[6] = {76.18009172947146,  -86.50532032941677, 24.01409824083091,
                                  -1.231739572450155, 0.1208650973866179e-2, -0.5395239384953e-5};
    double y = x, tmp = x + 5.5;
    tmp -= (x + 0.5) * std::log(tmp);
    double ser = 1.000000000190015;
    for (double c : cof) ser += c / ++y;
    return -tmp + std::log(2.5066282746310005 * ser / x);
}

// Regularised incomplete gamma functions via series / continued fraction.
inline double gammp(double a, double x);

inline double gammq(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gammq");
    if (x < a + 1.0) return 1.0 - gammp(a, x);
    double gln = gammln(a);
    double b = x + 1.0 - a, c = 1.0 / 1.0e-30, d = 1.0 / b, h = d;
    for (int i = 1; i <= 200; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1.0e-30) d = 1.0e-30;
        c = b + an / c;
        if (std::abs(c) < 1.0e-30) c = 1.0e-30;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 3.0e-12) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

inline double gammp(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gammp");
    if (x == 0.0) return 0.0;
    if (x >= a + 1.0) return 1.0 - gammq(a, x);
    double gln = gammln(a);
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 1; n <= 500; ++n) {
        ++ap;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 3.0e-12) break;
    }
    return sum * std::exp(-x + a * std::log(x) - gln);
}

// Survival function of the chi-squared distribution.
inline double chi2_sf(double chi2, int dof) { return gammq(0.5 * dof, 0.5 * chi2); }

struct Chi2Result {
    double stat = 0.0;
    int dof = 0;
    double pvalue = 1.0;
};

// One-sample test of observed counts against probabilities; bins with small
// expectation are pooled (in key order) to keep the statistic valid.
template <typename Key>
Chi2Result chi2_goodness(const std::map<Key, std::int64_t>& observed,
                         const std::map<Key, double>& probs, std::int64_t total) {
    std::vector<double> exp_pool;
    std::vector<double> obs_pool;
    double ce = 0.0, co = 0.0;
    for (const auto& [key, p] : probs) {
        auto it = observed.find(key);
        ce += p * static_cast<double>(total);
        co += it == observed.end() ? 0.0 : static_cast<double>(it->second);
        if (ce >= 5.0) {
            exp_pool.push_back(ce);
            obs_pool.push_back(co);
            ce = co = 0.0;
        }
    }
    if (ce > 0.0 && !exp_pool.empty()) {
        exp_pool.back() += ce;
        obs_pool.back() += co;
    }
    Chi2Result r;
    if (exp_pool.size() < 2) return r;
    for (size_t b = 0; b < exp_pool.size(); ++b) {
        double d = obs_pool[b] - exp_pool[b];
        r.stat += d * d / exp_pool[b];
    }
    r.dof = static_cast<int>(exp_pool.size()) - 1;
    r.pvalue = chi2_sf(r.stat, r.dof);
    return r;
}

// Two-sample homogeneity test on count tables over a shared key space.
template <typename Key>
Chi2Result chi2_two_sample(const std::map<Key, std::int64_t>& a,
                           const std::map<Key, std::int64_t>& b) {
    std::map<Key, std::pair<std::int64_t, std::int64_t>> merged;
    double ka = 0, kb = 0;
    for (const auto& [k, n] : a) {
        merged[k].first += n;
        ka += static_cast<double>(n);
    }
    for (const auto& [k, n] : b) {
        merged[k].second += n;
        kb += static_cast<double>(n);
    }
    // Pool adjacent cells until each holds a combined count of >= 10.
    std::vector<std::pair<double, double>> pooled;
    double ca = 0, cb = 0;
    for (const auto& [k, v] : merged) {
        ca += static_cast<double>(v.first);
        cb += static_cast<double>(v.second);
        if (ca + cb >= 10.0) {
            pooled.push_back({ca, cb});
            ca = cb = 0;
        }
    }
    if ((ca > 0 || cb > 0) && !pooled.empty()) {
        pooled.back().first += ca;
        pooled.back().second += cb;
    }
    Chi2Result r;
    if (pooled.size() < 2) return r;
    for (auto& [na, nb] : pooled) {
        double d = std::sqrt(kb / ka) * na - std::sqrt(ka / kb) * nb;
        r.stat += d * d / (na + nb);
    }
    r.dof = static_cast<int>(pooled.size()) - 1;
    r.pvalue = chi2_sf(r.stat, r.dof);
    return r;
}

}  // namespace testsupport
