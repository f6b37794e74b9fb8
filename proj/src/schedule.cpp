#include "quenchlab/schedule.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace quenchlab {

namespace {

void validate_ell(const std::vector<std::int64_t>& ell) {
    if (ell.empty()) throw std::invalid_argument("schedule: need at least one block");
    std::int64_t prev = 0;
    for (const auto l : ell) {
        if (l <= prev) throw std::invalid_argument("schedule: ell must be strictly increasing and positive");
        prev = l;
    }
}

BigInt pow5(std::int64_t l) {
    BigInt b(l);
    return b * b * b * b * b;
}

}  // namespace

std::int64_t ParameterSchedule::ell_at(int k) const {
    if (k < 1 || k > k_max()) throw std::out_of_range("schedule: block index out of range");
    return ell[static_cast<std::size_t>(k - 1)];
}

const BigInt& ParameterSchedule::m_at(int k) const {
    if (k == 0) return m0;
    if (k < 1 || k > k_max()) throw std::out_of_range("schedule: block index out of range");
    return m[static_cast<std::size_t>(k - 1)];
}

const BigInt& ParameterSchedule::n_at(int k) const {
    static const BigInt zero = 0;
    if (k == 0) return zero;
    if (k < 1 || k > k_max()) throw std::out_of_range("schedule: block index out of range");
    return n[static_cast<std::size_t>(k - 1)];
}

std::optional<int> ParameterSchedule::block_of(const BigInt& t) const {
    if (t <= 0) throw std::invalid_argument("block_of: time index must be positive");
    const auto it = std::lower_bound(n.begin(), n.end(), t);
    if (it == n.end()) return std::nullopt;
    return static_cast<int>(it - n.begin()) + 1;
}

ParameterSchedule build_schedule(const std::vector<std::int64_t>& ell) {
    validate_ell(ell);
    ParameterSchedule s;
    s.ell = ell;
    BigInt prev = s.m0;
    BigInt acc = 0;
    for (std::size_t idx = 0; idx < ell.size(); ++idx) {
        const std::int64_t k = static_cast<std::int64_t>(idx) + 1;
        BigInt mk = BigInt(k) * pow5(ell[idx]) * prev;
        const BigInt floor_mk = BigInt(2) * ell[idx];
        if (mk < floor_mk) mk = floor_mk;
        acc += mk;
        s.m.push_back(mk);
        s.n.push_back(acc);
        prev = std::move(mk);
    }
    return s;
}

ParameterSchedule build_schedule(const std::vector<std::int64_t>& ell,
                                 const std::vector<BigInt>& m, BigInt m0) {
    validate_ell(ell);
    if (m.size() != ell.size())
        throw std::invalid_argument("schedule: M sequence length must match ell");
    if (m0 <= 0) throw std::invalid_argument("schedule: M_0 must be positive");
    ParameterSchedule s;
    s.ell = ell;
    s.m0 = std::move(m0);
    BigInt prev = 0;
    BigInt acc = 0;
    for (std::size_t idx = 0; idx < m.size(); ++idx) {
        if (m[idx] <= prev)
            throw std::invalid_argument("schedule: M must be strictly increasing and positive");
        if (m[idx] < BigInt(2) * ell[idx])
            throw std::invalid_argument("schedule: M_k >= 2*ell_k violated");
        acc += m[idx];
        s.m.push_back(m[idx]);
        s.n.push_back(acc);
        prev = m[idx];
    }
    return s;
}

std::vector<std::int64_t> pow2_ell(int k_max) {
    if (k_max < 1 || k_max > 62) throw std::invalid_argument("pow2_ell: k_max out of range");
    std::vector<std::int64_t> ell(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) ell[static_cast<std::size_t>(k - 1)] = std::int64_t{1} << k;
    return ell;
}

double ThreePointLaw::second_moment() const {
    return 1.0 / (static_cast<double>(k) * static_cast<double>(ell) * static_cast<double>(ell));
}

ThreePointLaw three_point_law(const ParameterSchedule& s, int k) {
    ThreePointLaw law;
    law.k = k;
    law.ell = s.ell_at(k);
    law.magnitude = sqrt_big(s.m_at(k)) / static_cast<double>(law.ell);
    law.tail_denom = BigInt(2) * k * s.m_at(k);
    return law;
}

SummabilityReport check_summability(const ParameterSchedule& s) {
    SummabilityReport rep;
    double acc = 0.0;
    for (int k = 1; k <= s.k_max(); ++k) {
        const double l = static_cast<double>(s.ell_at(k));
        const double a = 1.0 / std::sqrt(static_cast<double>(k) * l);
        // ell_k^2 * sqrt(M_{k-1}/M_k) in log space: the ratio underflows
        // a double long before the schedule runs out of blocks.
        const double log2_ratio = log2_big(s.m_at(k - 1)) - log2_big(s.m_at(k));
        const double b = std::exp2(2.0 * std::log2(l) + 0.5 * log2_ratio);
        rep.summand_decay.push_back(a);
        rep.summand_ratio.push_back(b);
        rep.terms.push_back(a + b);
        acc += a + b;
        rep.partial_sums.push_back(acc);
    }
    // geometric tail estimate from the last ratio when terms are
    // decreasing at the end of the schedule
    const std::size_t kk = rep.terms.size();
    if (kk >= 2) {
        const double r = rep.terms[kk - 1] / rep.terms[kk - 2];
        if (r < 1.0 && rep.terms[kk - 1] > 0.0)
            rep.tail_bound = rep.terms[kk - 1] * r / (1.0 - r);
    } else if (kk == 1) {
        rep.tail_bound = rep.terms[0];  // single data point: report the term itself
    }
    return rep;
}

std::int64_t triangle_coefficient(std::int64_t ell, std::int64_t r) {
    if (r < 0 || r > 2 * ell - 2) return 0;
    return r <= ell - 1 ? r + 1 : 2 * ell - 1 - r;
}

std::int64_t coefficient(const ParameterSchedule& s, int k, std::int64_t r) {
    return triangle_coefficient(s.ell_at(k), r);
}

BlockMoments exact_block_moments(const ParameterSchedule& s, int k) {
    const double l = static_cast<double>(s.ell_at(k));
    const double kd = static_cast<double>(k);
    const double sqrt_m = sqrt_big(s.m_at(k));
    BlockMoments mom;
    mom.e_l1 = 1.0 / (kd * l * sqrt_m);
    mom.e_l2sq = 1.0 / (kd * l * l);
    mom.f_l2sq = 2.0 / (kd * l);
    mom.g_l1_bound = l / (kd * sqrt_m);
    return mom;
}

double l2_tail(const ParameterSchedule& s, int k_from) {
    double acc = 0.0;
    for (int k = k_from + 1; k <= s.k_max(); ++k)
        acc += 2.0 / (static_cast<double>(k) * static_cast<double>(s.ell_at(k)));
    return acc;
}

double l1_tail(const ParameterSchedule& s, int k_from) {
    double acc = 0.0;
    for (int k = k_from + 1; k <= s.k_max(); ++k)
        acc += static_cast<double>(s.ell_at(k)) / (static_cast<double>(k) * sqrt_big(s.m_at(k)));
    return acc;
}

nlohmann::json ParameterSchedule::to_json() const {
    nlohmann::json j;
    j["ell"] = ell;
    j["M0"] = m0.str();
    auto dump = [](const std::vector<BigInt>& v) {
        std::vector<std::string> out;
        out.reserve(v.size());
        for (const auto& x : v) out.push_back(x.str());
        return out;
    };
    j["M"] = dump(m);
    j["N"] = dump(n);
    return j;
}

ParameterSchedule ParameterSchedule::from_json(const nlohmann::json& j) {
    for (const auto& [key, _] : j.items()) {
        if (key != "ell" && key != "M" && key != "N" && key != "M0")
            throw std::invalid_argument("schedule json: unknown key '" + key + "'");
    }
    const auto ell = j.at("ell").get<std::vector<std::int64_t>>();
    std::vector<BigInt> m;
    for (const auto& sstr : j.at("M").get<std::vector<std::string>>()) m.push_back(parse_big(sstr));
    BigInt m0 = j.contains("M0") ? parse_big(j.at("M0").get<std::string>()) : BigInt(1);
    auto s = build_schedule(ell, m, std::move(m0));
    if (j.contains("N")) {
        // stored partial sums must agree with the recomputed ones
        const auto nstr = j.at("N").get<std::vector<std::string>>();
        if (nstr.size() != s.n.size()) throw std::invalid_argument("schedule json: N length mismatch");
        for (std::size_t i = 0; i < nstr.size(); ++i)
            if (parse_big(nstr[i]) != s.n[i])
                throw std::invalid_argument("schedule json: N inconsistent with M");
    }
    return s;
}

}  // namespace quenchlab
