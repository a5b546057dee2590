#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccsim/inner_code.hpp"
#include "ccsim/lattice.hpp"

namespace ccsim {

struct PhysGate {
    int32_t a = 0;  // physical qubit on the dual block
    int32_t b = 0;  // physical qubit on the primal block
};

// fig5: all first-round pairs over the four edge classes, then the next round,
//       and so on (the detectable ordering).
// natural: all rounds of one edge class back to back before moving on (the
//       ordering that fails detectability for the 211 code).
enum class SchedulePattern { fig5, natural };

// Timestep-ordered physical CZ list realizing every logical CZ of the lattice
// exactly once, uniformly: within a timestep every block is gated toward at
// most one neighbor, and each (edge, round) pair fires at exactly one step.
class GateSchedule {
  public:
    GateSchedule(const Lattice& lattice, const InnerCode& code,
                 SchedulePattern pattern = SchedulePattern::fig5);

    int num_steps() const { return static_cast<int>(step_gates_.size()); }
    size_t num_qubits() const { return num_qubits_; }
    const std::vector<PhysGate>& gates_at(int step) const { return step_gates_[step]; }
    // Idle locations that receive idle noise at the given step.
    const std::vector<int32_t>& noisy_idles_at(int step) const { return noisy_idles_[step]; }

    const InnerCode& code() const { return *code_; }
    const Lattice& lattice() const { return *lattice_; }
    SchedulePattern pattern() const { return pattern_; }

    int32_t qubit_of(int block_id, int q) const {
        return static_cast<int32_t>(block_id) * code_->s + q;
    }

    std::string to_json() const;

  private:
    const Lattice* lattice_;
    const InnerCode* code_;
    SchedulePattern pattern_;
    size_t num_qubits_ = 0;
    std::vector<std::vector<PhysGate>> step_gates_;
    std::vector<std::vector<int32_t>> noisy_idles_;
};

}  // namespace ccsim
