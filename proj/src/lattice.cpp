#include "quenchlab/lattice.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace quenchlab {

InnovationLattice::InnovationLattice(std::uint64_t seed, ParameterSchedule schedule,
                                     OverrideMap overrides)
    : seed_(seed),
      schedule_(std::move(schedule)),
      overrides_(std::move(overrides)),
      stream_(seed, stream_domain::lattice) {
    laws_.reserve(static_cast<std::size_t>(schedule_.k_max()));
    for (int k = 1; k <= schedule_.k_max(); ++k) {
        laws_.push_back(three_point_law(schedule_, k));
        const auto& d = laws_.back().tail_denom;
        const bool fast = fits_u64(d) && d.convert_to<std::uint64_t>() < (1ULL << 63);
        law_fast_.push_back(fast);
        law_denom64_.push_back(fast ? d.convert_to<std::uint64_t>() : 0);
    }
    validate_overrides();
}

InnovationLattice InnovationLattice::zero(ParameterSchedule schedule, OverrideMap overrides) {
    InnovationLattice lat(0, std::move(schedule), std::move(overrides));
    lat.zero_base_ = true;
    return lat;
}

const ThreePointLaw& InnovationLattice::law(int k) const {
    if (k < 1 || k > schedule_.k_max()) throw std::out_of_range("lattice: block index out of range");
    return laws_[static_cast<std::size_t>(k - 1)];
}

void InnovationLattice::validate_overrides() const {
    for (const auto& [coord, value] : overrides_) {
        const auto& l = law(coord.k);
        const double v = l.magnitude;
        const bool legal = value == 0.0 || std::abs(std::abs(value) - v) <= 1e-12 * v;
        if (!legal)
            throw std::invalid_argument(
                "lattice: override value not in the legal support {-v, 0, +v} of block " +
                std::to_string(coord.k));
    }
}

double InnovationLattice::sample(int k, std::int64_t i, std::uint32_t replicate) const {
    const auto& l = laws_[static_cast<std::size_t>(k - 1)];
    const auto ku = static_cast<std::uint32_t>(k);
    int region;
    if (law_fast_[static_cast<std::size_t>(k - 1)]) {
        region = three_point_region_fast(law_denom64_[static_cast<std::size_t>(k - 1)],
                                         stream_.word(ku, i, replicate, 0));
        if (region == 2)
            region = three_point_region_exact(
                l.tail_denom, [&](std::uint32_t t) { return stream_.word(ku, i, replicate, t); });
    } else {
        region = three_point_region_exact(
            l.tail_denom, [&](std::uint32_t t) { return stream_.word(ku, i, replicate, t); });
    }
    return region == 0 ? 0.0 : region * l.magnitude;
}

double InnovationLattice::value_at(int k, std::int64_t i) const {
    return value_at(k, i, 0, false);
}

double InnovationLattice::value_at(int k, std::int64_t i, std::uint32_t replicate,
                                   bool annealed) const {
    if (k < 1 || k > schedule_.k_max()) throw std::out_of_range("lattice: block index out of range");
    if (const auto it = overrides_.find(LatticeCoord{k, i}); it != overrides_.end())
        return it->second;
    if (zero_base_) return 0.0;
    const std::uint32_t rep = (annealed || i >= 1) ? replicate : 0;
    return sample(k, i, rep);
}

InnovationLattice InnovationLattice::force_event(int k, std::int64_t n, int sign) const {
    const auto& nk = schedule_.n_at(k);
    const auto& nk1 = schedule_.n_at(k - 1);
    if (!(nk1 < n && n <= nk))
        throw std::invalid_argument("force_event: n is not inside block " + std::to_string(k));
    const BigInt base = BigInt(n) - nk;  // window start offset, <= 0
    if (!fits_i64(base))
        throw std::domain_error("force_event: lattice index exceeds supported 64-bit range");
    const std::int64_t start = base.convert_to<std::int64_t>();
    const std::int64_t ell = schedule_.ell_at(k);

    InnovationLattice out = *this;
    for (std::int64_t off = 0; off <= 2 * ell - 2; ++off)
        out.overrides_[LatticeCoord{k, start + off}] = 0.0;
    out.overrides_[LatticeCoord{k, start + ell - 1}] = sign * law(k).magnitude;
    return out;
}

nlohmann::json overrides_to_json(const OverrideMap& o) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [coord, value] : o) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", value);
        arr.push_back({{"k", coord.k}, {"i", std::to_string(coord.i)}, {"value", buf}});
    }
    return arr;
}

OverrideMap overrides_from_json(const nlohmann::json& j) {
    OverrideMap out;
    for (const auto& item : j) {
        for (const auto& [key, _] : item.items()) {
            if (key != "k" && key != "i" && key != "value")
                throw std::invalid_argument("override json: unknown key '" + key + "'");
        }
        LatticeCoord c;
        c.k = item.at("k").get<int>();
        const BigInt i = parse_big(item.at("i").get<std::string>());
        if (!fits_i64(i)) throw std::invalid_argument("override json: index out of 64-bit range");
        c.i = i.convert_to<std::int64_t>();
        out[c] = std::stod(item.at("value").get<std::string>());
    }
    return out;
}

}  // namespace quenchlab
