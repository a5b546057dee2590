#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "ccsim/decoder.hpp"
#include "ccsim/inner_code.hpp"
#include "ccsim/lattice.hpp"
#include "ccsim/noise.hpp"
#include "ccsim/schedule.hpp"

namespace ccsim {

struct TrialConfig {
    std::string code_name = "cubic";
    NoiseSpec noise;
    int L = 5;
    Boundary boundary = Boundary::torus;
    int64_t trials = 10000;
    uint64_t master_seed = 1;
    int threads = 0;  // 0: hardware concurrency
};

struct TrialStats {
    int64_t trials = 0;
    int64_t failures = 0;
    double p_l = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

// 95% Wilson score interval.
TrialStats wilson_stats(int64_t trials, int64_t failures);

// Immutable per-(code, L, boundary) data shared across trials and threads.
class SchemeContext {
  public:
    SchemeContext(const std::string& code_name, int L, Boundary boundary, bool build_schedule);

    const InnerCode& code() const { return *code_; }
    const Lattice& lattice() const { return lattice_; }
    const GateSchedule& schedule() const;
    // Z-rate multipliers of the biased-noise reduction, one per block qubit:
    // (CZ gates on the qubit) * 2/3 + 4/3.
    const std::vector<double>& biased_multipliers() const { return biased_multipliers_; }

  private:
    const InnerCode* code_;
    Lattice lattice_;
    std::unique_ptr<GateSchedule> schedule_;
    std::vector<double> biased_multipliers_;
};

// Per-thread trial executor; owns all mutable scratch state.
class TrialRunner {
  public:
    explicit TrialRunner(const SchemeContext& ctx);

    // Deterministic given (noise, master_seed, trial_index).
    bool run_trial(const NoiseSpec& noise, uint64_t master_seed, uint64_t trial_index);

    const Decoder& decoder() const { return decoder_; }
    const BlockReadout& last_readout() const { return readout_; }

  private:
    void sample_circuit_level(const NoiseSpec& noise);

    const SchemeContext* ctx_;
    Decoder decoder_;
    PauliFrame frame_;
    std::vector<uint8_t> flips_;
    BlockReadout readout_;
    Rng rng_;
};

// Aggregates run_trial over [0, trials), in parallel; the failure count is
// independent of the thread count.
TrialStats run_point(const SchemeContext& ctx, const TrialConfig& config);

// Convenience wrapper building the context from the config.
TrialStats run_point(const TrialConfig& config);

}  // namespace ccsim
