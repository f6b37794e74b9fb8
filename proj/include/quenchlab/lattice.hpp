#pragma once

#include "quenchlab/rng.hpp"
#include "quenchlab/schedule.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace quenchlab {

struct LatticeCoord {
    int k = 0;
    std::int64_t i = 0;
    bool operator==(const LatticeCoord&) const = default;
};

struct LatticeCoordHash {
    std::size_t operator()(const LatticeCoord& c) const {
        return static_cast<std::size_t>(
            mix64(static_cast<std::uint64_t>(c.i) ^ (static_cast<std::uint64_t>(c.k) << 48)));
    }
};

using OverrideMap = std::unordered_map<LatticeCoord, double, LatticeCoordHash>;

nlohmann::json overrides_to_json(const OverrideMap& o);
OverrideMap overrides_from_json(const nlohmann::json& j);

// The doubly-infinite independent array U^i e_k.  Entries are a pure
// function of (seed, k, i, overrides): each query rebuilds the value
// from the counter-based stream, so the lattice is immutable, cheap to
// copy, and safe to read from any number of threads.  Zero-base
// lattices make every non-overridden entry 0 (for forced-event and
// degenerate tests).
class InnovationLattice {
public:
    InnovationLattice(std::uint64_t seed, ParameterSchedule schedule,
                      OverrideMap overrides = {});
    static InnovationLattice zero(ParameterSchedule schedule, OverrideMap overrides = {});

    const ParameterSchedule& schedule() const { return schedule_; }
    std::uint64_t seed() const { return seed_; }
    const OverrideMap& overrides() const { return overrides_; }
    const ThreePointLaw& law(int k) const;

    // Base realization (the unconditioned path, replicate stream 0).
    double value_at(int k, std::int64_t i) const;

    // Scenario-aware read: entries at i >= 1 come from the replicate's
    // own substream; entries at i <= 0 are shared by all replicates.
    // Annealed reads key the whole lattice by the replicate.
    double value_at(int k, std::int64_t i, std::uint32_t replicate, bool annealed) const;

    // Returns a copy with the forced rare-event configuration for block
    // k at time n: entry (k, n + ell_k - 1 - N_k) = sign * sqrt(M_k)/ell_k
    // and the other 2*ell_k - 2 entries of the window zeroed.
    InnovationLattice force_event(int k, std::int64_t n, int sign = +1) const;

private:
    std::uint64_t seed_ = 0;
    bool zero_base_ = false;
    ParameterSchedule schedule_;
    OverrideMap overrides_;
    std::vector<ThreePointLaw> laws_;
    std::vector<bool> law_fast_;        // tail_denom < 2^63
    std::vector<std::uint64_t> law_denom64_;
    CounterStream stream_;

    double sample(int k, std::int64_t i, std::uint32_t replicate) const;
    void validate_overrides() const;
};

// A quenched conditioning: one frozen past (all entries at i <= 0,
// shared with the base lattice) plus a fresh substream for i >= 1.
struct Scenario {
    const InnovationLattice* lattice = nullptr;
    std::uint32_t replicate_id = 0;
    bool annealed = false;

    double value_at(int k, std::int64_t i) const {
        return lattice->value_at(k, i, replicate_id, annealed);
    }
    const ParameterSchedule& schedule() const { return lattice->schedule(); }
};

inline Scenario make_scenario(const InnovationLattice& lat, std::uint32_t replicate_id) {
    return Scenario{&lat, replicate_id, false};
}

inline Scenario make_annealed(const InnovationLattice& lat, std::uint32_t replicate_id) {
    return Scenario{&lat, replicate_id, true};
}

}  // namespace quenchlab
