#include "bgd/systems.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "core/errors.hpp"

namespace fractal_spectra {

namespace {

void check_slot_list(const BgdSystem& sys, const std::vector<int>& slots,
                     const std::string& where) {
    std::set<int> seen;
    for (int s : slots) {
        if (s < 1 || s > sys.boundary_count) {
            throw invalid_input_error("system '" + sys.name + "': " + where + " slot " +
                                      std::to_string(s) + " outside 1.." +
                                      std::to_string(sys.boundary_count));
        }
        if (!seen.insert(s).second) {
            throw invalid_input_error("system '" + sys.name + "': duplicate " + where +
                                      " slot " + std::to_string(s));
        }
    }
}

}  // namespace

void validate_system(const BgdSystem& sys) {
    if (sys.domains.empty()) {
        throw invalid_input_error("system '" + sys.name + "': needs at least one domain");
    }
    if (sys.letter_count < 2) {
        throw invalid_input_error("system '" + sys.name + "': alphabet too small");
    }
    if (sys.boundary_count < 1) {
        throw invalid_input_error("system '" + sys.name + "': needs corner slots");
    }
    for (std::size_t i = 0; i < sys.domains.size(); ++i) {
        const BgdDomain& dom = sys.domains[i];
        const std::string where = "domain " + std::to_string(i);
        std::vector<int> role(static_cast<std::size_t>(sys.letter_count) + 1, 0);
        auto mark = [&](int letter, int what) {
            if (letter < 1 || letter > sys.letter_count) {
                throw invalid_input_error("system '" + sys.name + "': " + where + " letter " +
                                          std::to_string(letter) + " outside 1.." +
                                          std::to_string(sys.letter_count));
            }
            if (role[static_cast<std::size_t>(letter)] != 0) {
                throw invalid_input_error("system '" + sys.name + "': " + where + " letter " +
                                          std::to_string(letter) + " assigned twice");
            }
            role[static_cast<std::size_t>(letter)] = what;
        };
        for (int k : dom.inside_letters) mark(k, 1);
        for (int k : dom.outside_letters) mark(k, 2);
        for (const BgdEdge& e : dom.edges) {
            mark(e.letter, 3);
            if (e.target < 0 || e.target >= sys.domain_count()) {
                throw invalid_input_error("system '" + sys.name + "': " + where +
                                          " edge target " + std::to_string(e.target) +
                                          " out of range");
            }
            if (!e.extra_boundary.empty() && !sys.widetilde) {
                throw invalid_input_error("system '" + sys.name + "': " + where +
                                          " declares extra boundary corners but the system is "
                                          "not marked as relaxed (widetilde)");
            }
            check_slot_list(sys, e.extra_boundary, where + " extra-boundary");
        }
        for (int k = 1; k <= sys.letter_count; ++k) {
            if (role[static_cast<std::size_t>(k)] == 0) {
                throw invalid_input_error("system '" + sys.name + "': " + where + " letter " +
                                          std::to_string(k) + " unassigned");
            }
        }
        if (dom.edges.empty()) {
            throw invalid_input_error("system '" + sys.name + "': " + where +
                                      " has no boundary-crossing letter");
        }
        if (static_cast<int>(dom.inside_letters.size()) >= sys.letter_count) {
            throw invalid_input_error("system '" + sys.name + "': " + where +
                                      " is fully inside; its boundary would be empty");
        }
        check_slot_list(sys, dom.trace_slots, where + " trace");
        check_slot_list(sys, dom.member_slots, where + " member");
        for (int s : dom.trace_slots) {
            if (std::find(dom.member_slots.begin(), dom.member_slots.end(), s) !=
                dom.member_slots.end()) {
                throw invalid_input_error("system '" + sys.name + "': " + where + " slot " +
                                          std::to_string(s) +
                                          " cannot be both boundary trace and member");
            }
        }
    }
}

namespace {

BgdSystem sg_base(const std::string& name) {
    BgdSystem sys;
    sys.name = name;
    sys.fractal = "sg";
    sys.letter_count = 3;
    sys.boundary_count = 3;
    return sys;
}

BgdSystem make_sg_cut_bottom() {
    BgdSystem sys = sg_base("sg-cut-bottom");
    BgdDomain d;
    d.label = "gasket-minus-bottom-edge";
    d.inside_letters = {3};
    d.edges = {{1, 0, {}}, {2, 0, {}}};
    d.trace_slots = {1, 2};
    d.member_slots = {3};
    sys.domains = {d};
    return sys;
}

BgdSystem make_sg_halves() {
    BgdSystem sys = sg_base("sg-halves");
    BgdDomain left;
    left.label = "left-half";
    left.outside_letters = {2};
    left.edges = {{1, 1, {}}, {3, 0, {}}};
    left.trace_slots = {3};
    left.member_slots = {1};
    BgdDomain punctured;
    punctured.label = "gasket-minus-right-corner";
    punctured.inside_letters = {1, 3};
    punctured.edges = {{2, 1, {}}};
    punctured.trace_slots = {2};
    punctured.member_slots = {1, 3};
    sys.domains = {left, punctured};
    return sys;
}

BgdSystem make_sg_thirds() {
    BgdSystem sys = sg_base("sg-thirds");
    BgdDomain low;
    low.label = "above-one-third-height";
    low.inside_letters = {3};
    low.edges = {{1, 1, {}}, {2, 1, {}}};
    low.member_slots = {3};
    BgdDomain high;
    high.label = "above-two-thirds-height";
    high.outside_letters = {1, 2};
    high.edges = {{3, 0, {}}};
    high.member_slots = {3};
    sys.domains = {low, high};
    return sys;
}

BgdSystem make_sg_omega3() {
    BgdSystem sys = sg_base("sg-omega3");
    BgdDomain stair;
    stair.label = "staircase";
    stair.outside_letters = {2};
    stair.edges = {{1, 1, {}}, {3, 0, {}}};
    stair.trace_slots = {1, 3};
    BgdDomain half_minus;
    half_minus.label = "left-half-minus-lower-corner";
    half_minus.outside_letters = {2};
    half_minus.edges = {{1, 4, {}}, {3, 2, {}}};
    half_minus.trace_slots = {1, 3};
    BgdDomain half;
    half.label = "left-half";
    half.outside_letters = {2};
    half.edges = {{1, 3, {}}, {3, 2, {}}};
    half.trace_slots = {3};
    half.member_slots = {1};
    BgdDomain no_right;
    no_right.label = "gasket-minus-right-corner";
    no_right.inside_letters = {1, 3};
    no_right.edges = {{2, 3, {}}};
    no_right.trace_slots = {2};
    no_right.member_slots = {1, 3};
    BgdDomain no_lower;
    no_lower.label = "gasket-minus-lower-corners";
    no_lower.inside_letters = {3};
    no_lower.edges = {{1, 5, {}}, {2, 3, {}}};
    no_lower.trace_slots = {1, 2};
    no_lower.member_slots = {3};
    BgdDomain no_left;
    no_left.label = "gasket-minus-left-corner";
    no_left.inside_letters = {2, 3};
    no_left.edges = {{1, 5, {}}};
    no_left.trace_slots = {1};
    no_left.member_slots = {2, 3};
    sys.domains = {stair, half_minus, half, no_right, no_lower, no_left};
    return sys;
}

BgdSystem make_sg_tilde() {
    BgdSystem sys = sg_base("sg-tilde");
    sys.widetilde = true;
    BgdDomain comb;
    comb.label = "comb";
    comb.edges = {{1, 0, {}}, {2, 0, {}}, {3, 1, {1, 2}}};
    comb.trace_slots = {1, 2, 3};
    BgdDomain slit_cell;
    slit_cell.label = "top-cell-slit-copy";
    slit_cell.outside_letters = {1, 2};
    slit_cell.edges = {{3, 2, {}}};
    slit_cell.trace_slots = {3};
    BgdDomain cut_minus_apex;
    cut_minus_apex.label = "gasket-minus-bottom-edge-and-apex";
    cut_minus_apex.edges = {{1, 3, {}}, {2, 3, {}}, {3, 4, {}}};
    cut_minus_apex.trace_slots = {1, 2, 3};
    BgdDomain cut;
    cut.label = "gasket-minus-bottom-edge";
    cut.inside_letters = {3};
    cut.edges = {{1, 3, {}}, {2, 3, {}}};
    cut.trace_slots = {1, 2};
    cut.member_slots = {3};
    BgdDomain no_apex;
    no_apex.label = "gasket-minus-apex";
    no_apex.inside_letters = {1, 2};
    no_apex.edges = {{3, 4, {}}};
    no_apex.trace_slots = {3};
    no_apex.member_slots = {1, 2};
    sys.domains = {comb, slit_cell, cut_minus_apex, cut, no_apex};
    return sys;
}

// Snowflake domains: the outer boundary of the snowflake between two adjacent
// hexagon corners is a Koch-type arc; arc s runs from corner s to corner s+1
// (cyclically) and lies in the two cells s and s+1 with
//   arc(s) = F_s(arc(s) u arc(s+1))  u  F_{s+1}(arc(s+5) u arc(s)).
// A domain is the snowflake minus a run of t consecutive closed arcs starting
// at arc a; the family closes with runs of length 1, 2 and 4.
int hex_wrap(int s) { return ((s - 1) % 6 + 6) % 6 + 1; }

struct ArcRun {
    int start = 0;   // first arc, 1..6
    int length = 0;  // 1, 2 or 4
};

// Pullback of the boundary run under the cell map of `letter`; empty run when
// the cell misses the boundary.
ArcRun pull_back_run(const ArcRun& run, int letter) {
    std::set<int> arcs;
    for (int t = 0; t < run.length; ++t) {
        const int s = hex_wrap(run.start + t);
        if (letter == s) {
            arcs.insert(s);
            arcs.insert(hex_wrap(s + 1));
        } else if (letter == hex_wrap(s + 1)) {
            arcs.insert(hex_wrap(s + 5));
            arcs.insert(s);
        }
    }
    if (arcs.empty()) return {0, 0};
    // The collected arcs always form one cyclic run; find its start.
    for (int start = 1; start <= 6; ++start) {
        if (arcs.count(start) == 0 || arcs.count(hex_wrap(start + 5)) != 0) continue;
        int len = 0;
        while (len < 6 && arcs.count(hex_wrap(start + len)) != 0) ++len;
        if (static_cast<std::size_t>(len) == arcs.size()) return {start, len};
        break;
    }
    throw consistency_error("snowflake boundary pullback did not form one arc run");
}

BgdDomain koch_domain(const ArcRun& run, const std::vector<std::vector<int>>& index_of) {
    BgdDomain d;
    d.label = "minus-" + std::to_string(run.length) + "-arcs-from-" +
              std::to_string(run.start);
    for (int letter = 1; letter <= 7; ++letter) {
        const ArcRun image = pull_back_run(run, letter);
        if (image.length == 0) {
            d.inside_letters.push_back(letter);
        } else {
            d.edges.push_back(
                {letter, index_of[static_cast<std::size_t>(image.length)]
                                 [static_cast<std::size_t>(image.start)],
                 {}});
        }
    }
    // The run of t arcs passes through corners a .. a+t; the other corners
    // stay in the open set.
    std::set<int> on_boundary;
    for (int t = 0; t <= run.length; ++t) on_boundary.insert(hex_wrap(run.start + t));
    for (int s = 1; s <= 6; ++s) {
        if (on_boundary.count(s) != 0) {
            d.trace_slots.push_back(s);
        } else {
            d.member_slots.push_back(s);
        }
    }
    return d;
}

BgdSystem make_snowflake_koch_full() {
    BgdSystem sys;
    sys.name = "snowflake-koch-full";
    sys.fractal = "snowflake";
    sys.letter_count = 7;
    sys.boundary_count = 6;
    std::vector<std::vector<int>> index_of(5, std::vector<int>(7, -1));
    std::vector<ArcRun> runs;
    for (int length : {1, 2, 4}) {
        for (int start = 1; start <= 6; ++start) {
            index_of[static_cast<std::size_t>(length)][static_cast<std::size_t>(start)] =
                static_cast<int>(runs.size());
            runs.push_back({start, length});
        }
    }
    for (const ArcRun& run : runs) sys.domains.push_back(koch_domain(run, index_of));
    return sys;
}

BgdSystem make_snowflake_koch() {
    // Fold of the full family along the hexagon rotation: keep the start-1
    // representative of each run length and remap targets to run lengths.
    const BgdSystem full = make_snowflake_koch_full();
    BgdSystem sys;
    sys.name = "snowflake-koch";
    sys.fractal = "snowflake";
    sys.incidence_only = true;
    sys.letter_count = 7;
    sys.boundary_count = 6;
    const int reps[3] = {0, 6, 12};  // runs (1,1), (2,1), (4,1)
    auto type_of = [](int full_index) { return full_index / 6; };
    for (int t = 0; t < 3; ++t) {
        BgdDomain d = full.domains[static_cast<std::size_t>(reps[t])];
        d.label = "minus-" + std::to_string(t == 2 ? 4 : t + 1) + "-arcs";
        for (BgdEdge& e : d.edges) e.target = type_of(e.target);
        sys.domains.push_back(d);
    }
    return sys;
}

}  // namespace

BgdSystem bgd_preset(const std::string& name) {
    BgdSystem sys;
    if (name == "sg-cut-bottom") {
        sys = make_sg_cut_bottom();
    } else if (name == "sg-halves") {
        sys = make_sg_halves();
    } else if (name == "sg-thirds") {
        sys = make_sg_thirds();
    } else if (name == "sg-omega3") {
        sys = make_sg_omega3();
    } else if (name == "sg-tilde") {
        sys = make_sg_tilde();
    } else if (name == "snowflake-koch") {
        sys = make_snowflake_koch();
    } else if (name == "snowflake-koch-full") {
        sys = make_snowflake_koch_full();
    } else {
        throw missing_input_error("unknown domain-family preset '" + name + "'");
    }
    validate_system(sys);
    return sys;
}

std::vector<std::string> list_bgd_presets() {
    return {"sg-cut-bottom", "sg-halves",      "sg-thirds",         "sg-omega3",
            "sg-tilde",      "snowflake-koch", "snowflake-koch-full"};
}

}  // namespace fractal_spectra
