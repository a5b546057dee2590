#include "ccsim/circuit.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ccsim {

namespace {

int pattern_weight(const ZPattern& p) {
    int w = 0;
    for (const auto& [b, m] : p) w += std::popcount(m);
    return w;
}

// Lexicographic order on the flattened (block, qubit) support, used only to
// break ties between equal-weight representatives.
bool pattern_less(const ZPattern& a, const ZPattern& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) {
            uint32_t diff = ia->second ^ ib->second;
            uint32_t low = diff & (~diff + 1);
            // the pattern containing the lowest differing qubit comes first
            return (ia->second & low) != 0;
        }
        ++ia;
        ++ib;
    }
    return ib != b.end();
}

void drop_zeros(ZPattern& p) {
    for (auto it = p.begin(); it != p.end();)
        it = (it->second == 0) ? p.erase(it) : std::next(it);
}

std::vector<uint32_t> z_group_elements(const InnerCode& code) {
    std::vector<uint32_t> elems{0};
    for (uint32_t g : code.z_stabilizers) {
        size_t n = elems.size();
        for (size_t i = 0; i < n; ++i) elems.push_back(elems[i] ^ g);
    }
    return elems;
}

void inner_reduce(const InnerCode& code, ZPattern& p) {
    static thread_local const InnerCode* cached_code = nullptr;
    static thread_local std::vector<uint32_t> group;
    if (cached_code != &code) {
        cached_code = &code;
        group = z_group_elements(code);
    }
    for (auto& [b, m] : p) {
        uint32_t best = m;
        for (uint32_t g : group) {
            uint32_t cand = m ^ g;
            if (std::popcount(cand) < std::popcount(best) ||
                (std::popcount(cand) == std::popcount(best) && cand < best))
                best = cand;
        }
        m = best;
    }
    drop_zeros(p);
}

std::vector<int> block_neighbors(const Lattice& lat, int block_id) {
    const BlockSite& site = lat.blocks()[block_id];
    std::vector<int> out;
    for (int c = 0; c < 4; ++c) {
        int e = site.primal ? lat.edge_at_primal(site.sub_index, c)
                            : lat.edge_at_dual(site.sub_index, c);
        if (e < 0) continue;
        const CzEdge& edge = lat.cz_edges()[e];
        out.push_back(site.primal ? edge.dual_block : edge.primal_block);
    }
    return out;
}

struct SideReadout {
    std::vector<int> flipped_unerased;  // primal sub-indices
    std::vector<int> erased;
};

// Feasibility of the conversion: some homologically trivial cycle must move
// every undetected flip onto erased blocks, and the erased set itself must
// not carry a nontrivial cycle (otherwise zero-cost completions disagree).
bool side_convertible(const Lattice& lat, const SideReadout& side) {
    const int ne = static_cast<int>(side.erased.size());
    if (ne > 24) throw std::logic_error("erasure pattern too large for the checker");
    auto winding_trivial = [&lat](const std::vector<int>& blocks) {
        int par[3] = {0, 0, 0};
        for (int bsub : blocks) {
            const auto& c = lat.blocks()[lat.primal_blocks()[bsub]].coord;
            for (int axis = 0; axis < 3; ++axis)
                if (c[axis] == 0) par[axis] ^= 1;  // crossing the axis-0 membrane
        }
        return par[0] == 0 && par[1] == 0 && par[2] == 0;
    };
    auto is_cycle = [&lat](const std::vector<int>& blocks) {
        std::map<int, int> deg;
        for (int bsub : blocks) {
            auto cs = lat.checks_of_primal(bsub);
            deg[cs[0]] ^= 1;
            if (cs[1] >= 0) deg[cs[1]] ^= 1;
        }
        for (const auto& [chk, parity] : deg)
            if (parity) return false;
        return true;
    };

    bool feasible = false;
    for (uint32_t sel = 0; sel < (1u << ne); ++sel) {
        std::vector<int> sub;
        for (int i = 0; i < ne; ++i)
            if ((sel >> i) & 1) sub.push_back(side.erased[i]);
        // a nontrivial cycle inside the erased set makes zero-cost
        // completions disagree on the logical class
        if (!sub.empty() && is_cycle(sub) && !winding_trivial(sub)) return false;
        std::vector<int> cyc = side.flipped_unerased;
        cyc.insert(cyc.end(), sub.begin(), sub.end());
        if (is_cycle(cyc) && winding_trivial(cyc)) feasible = true;
    }
    return feasible;
}

struct FaultContext {
    const Lattice* lat;
    const InnerCode* code;
    const GateSchedule* sched;
    Decoder* decoder;
    int shift_l;  // torus size for the dual->primal shift map
};

// Splits the frame's Z bits into per-sublattice block patterns.
void collect_patterns(const FaultContext& fc, const PauliFrame& frame, ZPattern& primal,
                      ZPattern& dual) {
    primal.clear();
    dual.clear();
    const int s = fc.code->s;
    const auto& blocks = fc.lat->blocks();
    for (size_t id = 0; id < blocks.size(); ++id) {
        uint32_t mask = 0;
        for (int q = 0; q < s; ++q)
            mask |= static_cast<uint32_t>(frame.z_bits[id * s + q]) << q;
        if (!mask) continue;
        (blocks[id].primal ? primal : dual)[static_cast<int>(id)] = mask;
    }
}

// Maps a dual-sublattice pattern onto primal indices via the (1,1,1) shift,
// which is a check-structure isomorphism on the torus.
SideReadout dual_as_primal(const FaultContext& fc, const ZPattern& dual) {
    SideReadout side;
    for (const auto& [block_id, mask] : dual) {
        auto c = fc.lat->blocks()[block_id].coord;
        for (auto& x : c) x += 1;
        int psub = fc.lat->primal_sub_at(c);
        InnerReadout r = inner_decode(*fc.code, mask);
        if (r.detected) side.erased.push_back(psub);
        if (r.logical_flip && !r.detected) side.flipped_unerased.push_back(psub);
    }
    return side;
}

SideReadout primal_side(const FaultContext& fc, const ZPattern& primal) {
    SideReadout side;
    for (const auto& [block_id, mask] : primal) {
        int psub = fc.lat->blocks()[block_id].sub_index;
        InnerReadout r = inner_decode(*fc.code, mask);
        if (r.detected) side.erased.push_back(psub);
        if (r.logical_flip && !r.detected) side.flipped_unerased.push_back(psub);
    }
    return side;
}

bool decoder_ok(const FaultContext& fc, const ZPattern& pat, bool shifted) {
    BlockReadout readout;
    readout.resize(fc.lat->num_primal());
    for (const auto& [block_id, mask] : pat) {
        int psub;
        if (shifted) {
            auto c = fc.lat->blocks()[block_id].coord;
            for (auto& x : c) x += 1;
            psub = fc.lat->primal_sub_at(c);
        } else {
            psub = fc.lat->blocks()[block_id].sub_index;
        }
        InnerReadout r = inner_decode(*fc.code, mask);
        readout.erased[psub] = r.detected;
        readout.flip[psub] = static_cast<uint8_t>(r.logical_flip);
    }
    return !fc.decoder->decode_and_judge(readout).failure;
}

FaultReport assess_fault(const FaultContext& fc, PauliFrame& frame, const std::string& label,
                         int step, bool after_gate, int from_step) {
    propagate(frame, *fc.sched, from_step);
    FaultReport rep;
    rep.label = label;
    rep.step = step;
    rep.after_gate = after_gate;
    collect_patterns(fc, frame, rep.literal_primal, rep.literal_dual);
    SideReadout sp = primal_side(fc, rep.literal_primal);
    SideReadout sd = dual_as_primal(fc, rep.literal_dual);
    rep.convertible = side_convertible(*fc.lat, sp) && side_convertible(*fc.lat, sd);
    rep.decoder_failure =
        !decoder_ok(fc, rep.literal_primal, false) || !decoder_ok(fc, rep.literal_dual, true);
    ZPattern all = rep.literal_primal;
    for (const auto& [b, m] : rep.literal_dual) all[b] = m;
    rep.canonical = canonicalize(*fc.lat, *fc.code, all);
    return rep;
}

void apply_pauli(PauliFrame& frame, int qubit, int pauli) {  // 1=X, 2=Y, 3=Z
    if (pauli == 1 || pauli == 2) frame.x_bits[qubit] ^= 1;
    if (pauli == 2 || pauli == 3) frame.z_bits[qubit] ^= 1;
}

const char* pauli_name(int p) {
    static const char* names[] = {"I", "X", "Y", "Z"};
    return names[p];
}

std::string pattern_to_string(const Lattice& lat, const GateSchedule& sched, int center,
                              const ZPattern& pat) {
    static const char* dir_names[] = {"W", "E", "N", "S"};
    if (pat.empty()) return "-";
    auto w = direction_weights(lat, sched, center, pat);
    const BlockSite& site = lat.blocks()[center];
    std::ostringstream os;
    int accounted = 0;
    for (int c = 0; c < 4; ++c) {
        if (!w[c]) continue;
        int e = lat.edge_at_dual(site.sub_index, c);
        const CzEdge& edge = lat.cz_edges()[e];
        uint32_t mask = pat.at(edge.primal_block);
        if (os.tellp() > 0) os << ",";
        os << "Z_" << dir_names[c];
        if (std::popcount(mask) > 1) {
            os << "{";
            for (int q = 0; q < 32; ++q)
                if ((mask >> q) & 1) os << (q + 1);
            os << "}";
        }
        accounted += std::popcount(mask);
    }
    int total = 0;
    for (const auto& [b, m] : pat) total += std::popcount(m);
    if (accounted != total) os << " (+" << (total - accounted) << " outside patch)";
    return os.str();
}

}  // namespace

void propagate(PauliFrame& frame, const GateSchedule& schedule, int from_step) {
    if (from_step < 0 || from_step > schedule.num_steps())
        throw std::invalid_argument("from_step out of range");
    for (int step = from_step; step < schedule.num_steps(); ++step)
        for (const auto& g : schedule.gates_at(step)) {
            frame.z_bits[g.a] ^= frame.x_bits[g.b];
            frame.z_bits[g.b] ^= frame.x_bits[g.a];
        }
}

ZPattern canonicalize(const Lattice& lattice, const InnerCode& code, const ZPattern& pattern) {
    ZPattern base = pattern;
    drop_zeros(base);
    std::vector<int> support;
    for (const auto& [b, m] : base) support.push_back(b);

    // Stabilizer candidates: the support blocks themselves plus any block
    // whose neighborhood covers at least two of them (the central block of a
    // local patch). Only those products can lower the weight.
    std::map<int, int> cover;
    for (int b : support)
        for (int u : block_neighbors(lattice, b)) ++cover[u];
    std::vector<int> centers = support;
    for (const auto& [u, n] : cover)
        if (n >= 2 && std::find(centers.begin(), centers.end(), u) == centers.end())
            centers.push_back(u);
    if (centers.size() > 14)
        throw std::invalid_argument("canonicalize expects a local pattern");

    std::vector<std::vector<int>> nbrs;
    nbrs.reserve(centers.size());
    for (int b : centers) nbrs.push_back(block_neighbors(lattice, b));
    const uint32_t deposit = code.stabilizer_deposit();

    ZPattern best = base;
    inner_reduce(code, best);
    const uint32_t subsets = 1u << centers.size();
    for (uint32_t sel = 1; sel < subsets; ++sel) {
        ZPattern cand = base;
        for (size_t i = 0; i < centers.size(); ++i) {
            if (!((sel >> i) & 1)) continue;
            for (int u : nbrs[i]) cand[u] ^= deposit;
        }
        inner_reduce(code, cand);
        int wc = pattern_weight(cand), wb = pattern_weight(best);
        if (wc < wb || (wc == wb && pattern_less(cand, best))) best = cand;
    }
    return best;
}

DetectabilityReport detectability_check_code(const InnerCode& code, SchedulePattern pattern,
                                             int L) {
    Lattice lat(L, Boundary::torus);
    GateSchedule sched(lat, code, pattern);
    Decoder decoder(lat);
    FaultContext fc{&lat, &code, &sched, &decoder, L};

    DetectabilityReport report;
    report.code = code.name;
    report.pattern = pattern;

    const int rep_dual = lat.dual_blocks()[0];
    const int rep_primal = lat.primal_blocks()[0];
    const int s = code.s;
    PauliFrame frame(sched.num_qubits());

    // Single-qubit Paulis at every timestep boundary of both representatives.
    for (int t = 0; t <= sched.num_steps(); ++t)
        for (int block : {rep_dual, rep_primal})
            for (int q = 0; q < s; ++q)
                for (int pauli : {1, 2, 3}) {
                    frame.clear();
                    apply_pauli(frame, block * s + q, pauli);
                    std::ostringstream label;
                    label << pauli_name(pauli) << " on "
                          << (block == rep_dual ? "dual" : "primal") << " q" << q;
                    report.faults.push_back(
                        assess_fault(fc, frame, label.str(), t, false, t));
                }

    // All 15 two-qubit Paulis after every CZ touching the representatives.
    for (int step = 0; step < sched.num_steps(); ++step)
        for (const auto& g : sched.gates_at(step)) {
            int da = g.a / s, pb = g.b / s;
            if (da != rep_dual && pb != rep_primal) continue;
            for (int pa = 0; pa < 4; ++pa)
                for (int pzb = 0; pzb < 4; ++pzb) {
                    if (pa == 0 && pzb == 0) continue;
                    frame.clear();
                    apply_pauli(frame, g.a, pa);
                    apply_pauli(frame, g.b, pzb);
                    std::ostringstream label;
                    label << pauli_name(pa) << "(d)x" << pauli_name(pzb) << "(p)";
                    report.faults.push_back(
                        assess_fault(fc, frame, label.str(), step, true, step + 1));
                }
        }

    for (const auto& f : report.faults)
        if (!f.convertible) {
            report.all_convertible = false;
            if (report.first_offender.empty()) {
                std::ostringstream os;
                os << f.label << " at step " << f.step;
                report.first_offender = os.str();
            }
        }
    return report;
}

DetectabilityReport detectability_check(const std::string& code_name, SchedulePattern pattern,
                                        int L) {
    return detectability_check_code(code_by_name(code_name), pattern, L);
}

std::vector<PropagationRow> propagation_table(const std::string& code_name, int L) {
    const InnerCode& code = code_by_name(code_name);
    Lattice lat(L, Boundary::torus);
    GateSchedule sched(lat, code);
    const int center = lat.dual_blocks()[0];
    const int s = code.s;

    std::vector<PropagationRow> rows;
    PauliFrame frame(sched.num_qubits());

    for (int step = 0; step < sched.num_steps(); ++step) {
        // the gate at this step whose dual leg is the lowest center qubit
        const PhysGate* gate = nullptr;
        for (const auto& g : sched.gates_at(step))
            if (g.a / s == center && (!gate || g.a < gate->a)) gate = &g;
        if (!gate) throw std::logic_error("central block idle in uniform schedule");

        auto canon_at = [&](int from_step, bool add_partner_z, bool add_center_x) {
            frame.clear();
            if (add_center_x) frame.x_bits[gate->a] = 1;
            propagate(frame, sched, from_step);
            if (add_partner_z) frame.z_bits[gate->b] ^= 1;
            ZPattern primal, dual;
            FaultContext fc{&lat, &code, &sched, nullptr, L};
            collect_patterns(fc, frame, primal, dual);
            for (const auto& [b, m] : dual) primal[b] = m;
            return canonicalize(lat, code, primal);
        };

        const int color = step % 4;
        for (int kind = 0; kind < 3; ++kind) {
            PropagationRow row;
            row.step = step + 1;
            row.direction = color;
            bool center_x = kind != 2;
            bool partner_z = kind != 0;
            row.error = kind == 0 ? "X_C" : (kind == 1 ? "X_C Z_D" : "Z_D");
            row.canonical_before = canon_at(step, partner_z, center_x);
            row.canonical_after = canon_at(step + 1, partner_z, center_x);
            row.before_text = pattern_to_string(lat, sched, center, row.canonical_before);
            row.after_text = pattern_to_string(lat, sched, center, row.canonical_after);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::array<int, 4> direction_weights(const Lattice& lattice, const GateSchedule& schedule,
                                     int center_block, const ZPattern& pattern) {
    (void)schedule;
    std::array<int, 4> w{0, 0, 0, 0};
    const BlockSite& site = lattice.blocks()[center_block];
    for (int c = 0; c < 4; ++c) {
        int e = site.primal ? lattice.edge_at_primal(site.sub_index, c)
                            : lattice.edge_at_dual(site.sub_index, c);
        if (e < 0) continue;
        const CzEdge& edge = lattice.cz_edges()[e];
        int nbr = site.primal ? edge.dual_block : edge.primal_block;
        auto it = pattern.find(nbr);
        if (it != pattern.end()) w[c] = std::popcount(it->second);
    }
    return w;
}

std::string propagation_table_text(const std::vector<PropagationRow>& rows) {
    if (rows.empty()) return "";
    std::ostringstream os;
    os << "error     step  entering-step effective      after-gate effective\n";
    for (const auto& r : rows) {
        char buf[200];
        std::snprintf(buf, sizeof(buf), "%-9s %-5d %-30s %s", r.error.c_str(), r.step,
                      r.before_text.c_str(), r.after_text.c_str());
        os << buf << '\n';
        if (r.error == "Z_D") os << '\n';
    }
    return os.str();
}

std::string DetectabilityReport::to_json() const {
    nlohmann::ordered_json j;
    j["code"] = code;
    j["schedule"] = pattern == SchedulePattern::fig5 ? "fig5" : "natural";
    j["all_convertible"] = all_convertible;
    j["first_offender"] = first_offender;
    auto& jf = j["faults"] = nlohmann::ordered_json::array();
    for (const auto& f : faults) {
        nlohmann::ordered_json e;
        e["label"] = f.label;
        e["step"] = f.step;
        e["after_gate"] = f.after_gate;
        e["convertible"] = f.convertible;
        e["decoder_failure"] = f.decoder_failure;
        auto dump_pattern = [](const ZPattern& p) {
            nlohmann::ordered_json out = nlohmann::ordered_json::array();
            for (const auto& [b, m] : p) out.push_back({b, m});
            return out;
        };
        e["literal_primal"] = dump_pattern(f.literal_primal);
        e["literal_dual"] = dump_pattern(f.literal_dual);
        e["canonical"] = dump_pattern(f.canonical);
        jf.push_back(std::move(e));
    }
    return j.dump();
}

std::string DetectabilityReport::to_text() const {
    std::ostringstream os;
    int bad = 0;
    for (const auto& f : faults)
        if (!f.convertible) ++bad;
    os << "code=" << code << " schedule="
       << (pattern == SchedulePattern::fig5 ? "fig5" : "natural") << " faults=" << faults.size()
       << " non_convertible=" << bad << "\n";
    if (all_convertible) {
        os << "PASS (all 1- and 2-qubit faults convertible)\n";
    } else {
        os << "FAIL (first offender: " << first_offender << ")\n";
        for (const auto& f : faults)
            if (!f.convertible)
                os << "  not convertible: " << f.label << " at step " << f.step
                   << (f.after_gate ? " (after gate)" : " (entering step)") << "\n";
    }
    return os.str();
}

std::vector<CzRound> search_detectable_311_2_rounds() {
    // The four CZs of the 311_2 logical gate, as (dual qubit, primal qubit).
    using Pairs = std::vector<std::pair<int, int>>;
    const Pairs all = {{0, 0}, {0, 1}, {1, 0}, {2, 2}};
    (void)all;
    std::vector<std::vector<CzRound>> candidates = {
        {{{{0, 1}, {1, 0}, {2, 2}}}, {{{0, 0}}}},
        {{{{0, 0}}}, {{{0, 1}, {1, 0}, {2, 2}}}},
        {{{{0, 0}, {2, 2}}}, {{{0, 1}, {1, 0}}}},
        {{{{0, 1}, {1, 0}}}, {{{0, 0}, {2, 2}}}},
    };
    for (const auto& rounds : candidates) {
        InnerCode probe = code_by_name("311_2");
        probe.cz_rounds = rounds;
        DetectabilityReport rep = detectability_check_code(probe, SchedulePattern::fig5, 4);
        if (rep.all_convertible) return rounds;
    }
    throw std::logic_error("no detectable 311_2 round ordering found in the candidate set");
}

}  // namespace ccsim
