#include "ccsim/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ccsim/analysis.hpp"

namespace ccsim {

TrialStats wilson_stats(int64_t trials, int64_t failures) {
    TrialStats s;
    s.trials = trials;
    s.failures = failures;
    if (trials <= 0) return s;
    const double z = 1.959963984540054;  // 97.5th percentile of the normal
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = phat + z2 / (2.0 * n);
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    s.p_l = phat;
    s.ci_low = std::max(0.0, (center - half) / denom);
    s.ci_high = std::min(1.0, (center + half) / denom);
    return s;
}

SchemeContext::SchemeContext(const std::string& code_name, int L, Boundary boundary,
                             bool build_schedule)
    : code_(&code_by_name(code_name)), lattice_(L, boundary) {
    if (build_schedule) schedule_ = std::make_unique<GateSchedule>(lattice_, *code_);
    biased_multipliers_ = ccsim::biased_multipliers(code_name);
}

const GateSchedule& SchemeContext::schedule() const {
    if (!schedule_) throw std::logic_error("schedule was not built for this context");
    return *schedule_;
}

TrialRunner::TrialRunner(const SchemeContext& ctx)
    : ctx_(&ctx),
      decoder_(ctx.lattice()),
      frame_(0),
      flips_(static_cast<size_t>(ctx.lattice().num_primal()) * ctx.code().s, 0) {}

void TrialRunner::sample_circuit_level(const NoiseSpec& noise) {
    const GateSchedule& sched = ctx_->schedule();
    const double p = noise.p;
    if (frame_.size() != sched.num_qubits()) frame_ = PauliFrame(sched.num_qubits());
    frame_.clear();

    // Perfect logical preparation followed by depolarizing noise everywhere.
    for (size_t q = 0; q < frame_.size(); ++q) sample_single_depolarizing(frame_, q, p, rng_);

    for (int step = 0; step < sched.num_steps(); ++step) {
        const auto& gates = sched.gates_at(step);
        // Conjugate the accumulated frame through this step's CZ gates
        // (X on one leg toggles Z on the other), then add fresh gate noise.
        for (const auto& g : gates) {
            frame_.z_bits[g.a] ^= frame_.x_bits[g.b];
            frame_.z_bits[g.b] ^= frame_.x_bits[g.a];
        }
        for (const auto& g : gates) sample_two_qubit_depolarizing(frame_, g.a, g.b, p, rng_);
        if (noise.include_idle_noise)
            for (int32_t q : sched.noisy_idles_at(step))
                sample_single_depolarizing(frame_, q, p, rng_);
    }

    // Noise preceding the X-basis measurement.
    for (size_t q = 0; q < frame_.size(); ++q) sample_single_depolarizing(frame_, q, p, rng_);

    // Readout flips of the primal sublattice.
    const Lattice& lat = ctx_->lattice();
    const int s = ctx_->code().s;
    for (int psub = 0; psub < lat.num_primal(); ++psub) {
        int block_id = lat.primal_blocks()[psub];
        for (int q = 0; q < s; ++q)
            flips_[static_cast<size_t>(psub) * s + q] =
                frame_.z_bits[static_cast<size_t>(block_id) * s + q];
    }
}

bool TrialRunner::run_trial(const NoiseSpec& noise, uint64_t master_seed, uint64_t trial_index) {
    rng_.reseed(master_seed, trial_index);
    const Lattice& lat = ctx_->lattice();
    const InnerCode& code = ctx_->code();

    switch (noise.model) {
        case NoiseModel::phenomenological:
            sample_phenomenological_flips(flips_, lat.num_primal(), code.s, noise.p,
                                          noise.rate_multipliers, rng_);
            decoder_.inner_stage(code, flips_, readout_);
            break;
        case NoiseModel::biased_z: {
            // Exact reduction: Z errors never propagate, so the biased model
            // is a heterogeneous per-qubit Z-flip model with the counting
            // multipliers of the scheme.
            sample_phenomenological_flips(flips_, lat.num_primal(), code.s, noise.p,
                                          noise.rate_multipliers.empty()
                                              ? ctx_->biased_multipliers()
                                              : noise.rate_multipliers,
                                          rng_);
            decoder_.inner_stage(code, flips_, readout_);
            break;
        }
        case NoiseModel::circuit_level:
            sample_circuit_level(noise);
            decoder_.inner_stage(code, flips_, readout_);
            break;
        case NoiseModel::pauli_erasure: {
            // Converted-model reference: blocks erased outright at p_erase
            // (readout uniform), otherwise flipped at the conditional Pauli
            // rate. Used by the conversion-equivalence studies.
            readout_.resize(lat.num_primal());
            for (int b = 0; b < lat.num_primal(); ++b) {
                bool erased = rng_.bernoulli(noise.p_erase);
                readout_.erased[b] = erased;
                readout_.flip[b] = erased ? (rng_.next_u64() & 1)
                                          : static_cast<uint8_t>(rng_.bernoulli(noise.p_pauli));
            }
            break;
        }
    }
    return decoder_.decode_and_judge(readout_).failure;
}

TrialStats run_point(const SchemeContext& ctx, const TrialConfig& config) {
    config.noise.validate();
    if (config.trials < 1) throw std::invalid_argument("trials must be at least 1");
    int threads = config.threads > 0
                      ? config.threads
                      : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = static_cast<int>(std::min<int64_t>(threads, config.trials));

    std::vector<int64_t> fails(threads, 0);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            TrialRunner runner(ctx);
            int64_t local = 0;
            for (int64_t i = t; i < config.trials; i += threads)
                local += runner.run_trial(config.noise, config.master_seed,
                                          static_cast<uint64_t>(i));
            fails[t] = local;
        });
    }
    for (auto& th : pool) th.join();
    int64_t failures = 0;
    for (int64_t f : fails) failures += f;
    return wilson_stats(config.trials, failures);
}

TrialStats run_point(const TrialConfig& config) {
    SchemeContext ctx(config.code_name, config.L, config.boundary,
                      config.noise.model == NoiseModel::circuit_level);
    return run_point(ctx, config);
}

}  // namespace ccsim
