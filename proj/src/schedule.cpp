#include "ccsim/schedule.hpp"

#include <stdexcept>

#include "json.hpp"

namespace ccsim {

GateSchedule::GateSchedule(const Lattice& lattice, const InnerCode& code,
                           SchedulePattern pattern)
    : lattice_(&lattice), code_(&code), pattern_(pattern) {
    num_qubits_ = lattice.blocks().size() * code.s;

    const int rounds = static_cast<int>(code.cz_rounds.size());
    // (round, color) pairs in firing order.
    std::vector<std::pair<int, int>> order;
    if (pattern == SchedulePattern::fig5) {
        for (int r = 0; r < rounds; ++r)
            for (int c = 0; c < 4; ++c) order.emplace_back(r, c);
    } else {
        for (int c = 0; c < 4; ++c)
            for (int r = 0; r < rounds; ++r) order.emplace_back(r, c);
    }

    std::vector<int> busy(num_qubits_, -1);
    step_gates_.resize(order.size());
    noisy_idles_.resize(order.size());
    for (size_t step = 0; step < order.size(); ++step) {
        auto [r, c] = order[step];
        auto& gates = step_gates_[step];
        for (const auto& e : lattice.cz_edges()) {
            if (e.color != c) continue;
            for (auto [i, j] : code.cz_rounds[r].pairs) {
                PhysGate gate;
                gate.a = qubit_of(e.dual_block, i);
                gate.b = qubit_of(e.primal_block, j);
                if (busy[gate.a] == static_cast<int>(step) ||
                    busy[gate.b] == static_cast<int>(step))
                    throw std::logic_error("gate schedule collision");
                busy[gate.a] = static_cast<int>(step);
                busy[gate.b] = static_cast<int>(step);
                gates.push_back(gate);
            }
        }
        if (!code.idle_noise_exempt || lattice.boundary() != Boundary::torus) {
            auto& idles = noisy_idles_[step];
            for (size_t q = 0; q < num_qubits_; ++q)
                if (busy[q] != static_cast<int>(step)) {
                    // Structural idles of an exempt code draw no noise; idles
                    // caused by missing boundary edges always do.
                    if (code.idle_noise_exempt) {
                        int block = static_cast<int>(q) / code.s;
                        int color_edge = lattice.blocks()[block].primal
                                             ? lattice.edge_at_primal(
                                                   lattice.blocks()[block].sub_index, c)
                                             : lattice.edge_at_dual(
                                                   lattice.blocks()[block].sub_index, c);
                        if (color_edge >= 0) continue;  // structural idle, exempt
                    }
                    idles.push_back(static_cast<int32_t>(q));
                }
        }
    }
}

std::string GateSchedule::to_json() const {
    nlohmann::ordered_json j;
    j["code"] = code_->name;
    j["L"] = lattice_->L();
    j["boundary"] = boundary_name(lattice_->boundary());
    j["pattern"] = pattern_ == SchedulePattern::fig5 ? "fig5" : "natural";
    auto& steps = j["steps"] = nlohmann::ordered_json::array();
    for (const auto& gates : step_gates_) {
        nlohmann::ordered_json s = nlohmann::ordered_json::array();
        for (const auto& g : gates) s.push_back({g.a, g.b});
        steps.push_back(std::move(s));
    }
    return j.dump();
}

}  // namespace ccsim
