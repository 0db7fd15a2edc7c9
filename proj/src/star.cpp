#include "chipfire/star.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "chipfire/errors.hpp"

namespace chipfire {

namespace {

const std::vector<Label> kNoChips;

void check_vertex(const StarParams& params, const Vertex& v) {
    if (!v.is_center() && v.branch_index() > params.k) {
        throw PreconditionError("vertex " + to_string(v) + " is not on instar(" + std::to_string(params.k) + ")");
    }
}

// Visits every size-r subset of `items` in lexicographic order.
template <typename F>
void for_each_subset(const std::vector<Label>& items, int r, F&& visit) {
    const int n = static_cast<int>(items.size());
    if (r > n) return;
    std::vector<int> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Label> subset(r);
    while (true) {
        for (int t = 0; t < r; ++t) subset[t] = items[idx[t]];
        visit(subset);
        int t = r - 1;
        while (t >= 0 && idx[t] == n - r + t) --t;
        if (t < 0) return;
        ++idx[t];
        for (int u = t + 1; u < r; ++u) idx[u] = idx[u - 1] + 1;
    }
}

int parse_int(std::string_view text) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw PreconditionError("not an integer: '" + std::string(text) + "'");
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

StarParams::StarParams(int branches, int levels) : k(branches), m(levels) {
    if (k < 1 || m < 1) {
        throw PreconditionError("instar parameters need k >= 1 and m >= 1, got k=" + std::to_string(k) +
                                " m=" + std::to_string(m));
    }
}

Vertex Vertex::branch(int i, int j) {
    if (i < 1 || j < 1) {
        throw PreconditionError("branch vertex needs i >= 1 and j >= 1, got (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
    }
    return Vertex{i, j};
}

std::string to_string(const Vertex& v) {
    if (v.is_center()) return "C";
    return "B(" + std::to_string(v.branch_index()) + "," + std::to_string(v.level()) + ")";
}

Vertex inward(const Vertex& v) {
    if (v.is_center()) throw PreconditionError("the center has no inward neighbor");
    return v.level() == 1 ? Vertex::center() : Vertex::branch(v.branch_index(), v.level() - 1);
}

Vertex outward(const Vertex& v) {
    if (v.is_center()) throw PreconditionError("the center has k outward neighbors");
    return Vertex::branch(v.branch_index(), v.level() + 1);
}

int degree(const StarParams& params, const Vertex& v) {
    check_vertex(params, v);
    return v.is_center() ? params.k : 2;
}

long long UnlabeledConfig::at(const Vertex& v) const {
    auto it = counts_.find(v);
    return it == counts_.end() ? 0 : it->second;
}

long long UnlabeledConfig::total() const {
    long long sum = 0;
    for (const auto& [v, c] : counts_) sum += c;
    return sum;
}

void UnlabeledConfig::add(const Vertex& v, long long delta) {
    check_vertex(params_, v);
    long long& c = counts_[v];
    c += delta;
    if (c < 0) throw PreconditionError("negative chip count at " + to_string(v));
    if (c == 0) counts_.erase(v);
}

LabeledConfig LabeledConfig::from_chips(StarParams params, ChipMap chips) {
    std::vector<char> seen(params.chips() + 1, 0);
    for (auto it = chips.begin(); it != chips.end();) {
        check_vertex(params, it->first);
        auto& labels = it->second;
        std::sort(labels.begin(), labels.end());
        for (Label c : labels) {
            if (c < 1 || c > params.chips()) {
                throw PreconditionError("label " + std::to_string(c) + " outside [1.." +
                                        std::to_string(params.chips()) + "]");
            }
            if (seen[c]) throw PreconditionError("label " + std::to_string(c) + " appears twice");
            seen[c] = 1;
        }
        it = labels.empty() ? chips.erase(it) : std::next(it);
    }
    for (int c = 1; c <= params.chips(); ++c) {
        if (!seen[c]) throw PreconditionError("label " + std::to_string(c) + " is missing");
    }
    return LabeledConfig(params, std::move(chips));
}

const std::vector<Label>& LabeledConfig::at(const Vertex& v) const {
    auto it = chips_.find(v);
    return it == chips_.end() ? kNoChips : it->second;
}

std::string to_string(const LabeledConfig& config) {
    std::string out;
    for (const auto& [v, labels] : config.chips()) {
        if (!out.empty()) out += ' ';
        out += to_string(Move{v, labels});
    }
    return out.empty() ? "(empty)" : out;
}

std::string to_string(const Move& move) {
    std::string out = to_string(move.vertex) + ":{";
    for (std::size_t t = 0; t < move.fired.size(); ++t) {
        if (t) out += ',';
        out += std::to_string(move.fired[t]);
    }
    return out + "}";
}

Move parse_move(std::string_view text) {
    text = trim(text);
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw PreconditionError("move needs 'vertex:{chips}': " + std::string(text));
    std::string_view head = trim(text.substr(0, colon));
    std::string_view body = trim(text.substr(colon + 1));

    Move move;
    if (head == "C") {
        move.vertex = Vertex::center();
    } else if (head.size() > 4 && head.substr(0, 2) == "B(" && head.back() == ')') {
        auto inner = head.substr(2, head.size() - 3);
        auto comma = inner.find(',');
        if (comma == std::string_view::npos) throw PreconditionError("bad vertex: " + std::string(head));
        move.vertex = Vertex::branch(parse_int(trim(inner.substr(0, comma))), parse_int(trim(inner.substr(comma + 1))));
    } else {
        throw PreconditionError("bad vertex: " + std::string(head));
    }

    if (body.size() < 2 || body.front() != '{' || body.back() != '}') {
        throw PreconditionError("chip set must be braced: " + std::string(body));
    }
    body = body.substr(1, body.size() - 2);
    while (!trim(body).empty()) {
        auto comma = body.find(',');
        move.fired.push_back(parse_int(trim(body.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    std::sort(move.fired.begin(), move.fired.end());
    return move;
}

StableOutcome::StableOutcome(int k, int m, std::vector<Label> cells) : k_(k), m_(m), cells_(std::move(cells)) {
    if (k < 1 || m < 1 || static_cast<int>(cells_.size()) != k * m) {
        throw PreconditionError("outcome needs k*m cells");
    }
}

StableOutcome StableOutcome::from_rows(const std::vector<std::vector<Label>>& rows) {
    if (rows.empty() || rows.front().empty()) throw PreconditionError("outcome needs at least one cell");
    const int m = static_cast<int>(rows.front().size());
    std::vector<Label> cells;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != m) throw PreconditionError("outcome rows must have equal length");
        cells.insert(cells.end(), row.begin(), row.end());
    }
    return StableOutcome(static_cast<int>(rows.size()), m, std::move(cells));
}

std::vector<std::vector<Label>> StableOutcome::rows() const {
    std::vector<std::vector<Label>> out(k_);
    for (int i = 0; i < k_; ++i) out[i].assign(cells_.begin() + i * m_, cells_.begin() + (i + 1) * m_);
    return out;
}

bool StableOutcome::is_totally_sorted() const {
    for (std::size_t t = 0; t < cells_.size(); ++t) {
        if (cells_[t] != static_cast<Label>(t + 1)) return false;
    }
    return true;
}

std::string to_string(const StableOutcome& outcome) {
    std::string out;
    for (int i = 1; i <= outcome.k(); ++i) {
        if (i > 1) out += ',';
        out += '[';
        for (int j = 1; j <= outcome.m(); ++j) {
            if (j > 1) out += ',';
            out += std::to_string(outcome.at(i, j));
        }
        out += ']';
    }
    return out;
}

StableOutcome totally_sorted_outcome(const StarParams& params) {
    std::vector<Label> cells(params.chips());
    std::iota(cells.begin(), cells.end(), 1);
    return StableOutcome(params.k, params.m, std::move(cells));
}

LabeledConfig initial_labeled(const StarParams& params) {
    std::vector<Label> all(params.chips());
    std::iota(all.begin(), all.end(), 1);
    LabeledConfig::ChipMap chips;
    chips.emplace(Vertex::center(), std::move(all));
    return LabeledConfig(params, std::move(chips));
}

UnlabeledConfig initial_unlabeled(const StarParams& params, long long n) {
    if (n < 0) throw PreconditionError("chip count must be non-negative");
    UnlabeledConfig config(params);
    if (n > 0) config.add(Vertex::center(), n);
    return config;
}

std::vector<Move> legal_moves(const LabeledConfig& config) {
    std::vector<Move> moves;
    for (const auto& [v, labels] : config.chips()) {
        const int deg = degree(config.params(), v);
        if (static_cast<int>(labels.size()) < deg) continue;
        for_each_subset(labels, deg, [&](const std::vector<Label>& subset) { moves.push_back(Move{v, subset}); });
    }
    return moves;
}

LabeledConfig apply_move(const LabeledConfig& config, const Move& move) {
    const StarParams& params = config.params();
    const Vertex& v = move.vertex;
    const auto& present = config.at(v);
    const bool sized = static_cast<int>(move.fired.size()) == degree(params, v);
    const bool sorted_unique = std::adjacent_find(move.fired.begin(), move.fired.end(), std::greater_equal<>{}) ==
                               move.fired.end();
    const bool subset = std::includes(present.begin(), present.end(), move.fired.begin(), move.fired.end());
    if (!sized || !sorted_unique || !subset) {
        throw PreconditionError("illegal move " + to_string(move) + " on " + to_string(config));
    }

    LabeledConfig::ChipMap chips = config.chips();
    auto& source = chips[v];
    std::vector<Label> rest;
    std::set_difference(source.begin(), source.end(), move.fired.begin(), move.fired.end(), std::back_inserter(rest));
    if (rest.empty()) {
        chips.erase(v);
    } else {
        source = std::move(rest);
    }

    auto deliver = [&chips](const Vertex& to, Label c) {
        auto& dest = chips[to];
        dest.insert(std::upper_bound(dest.begin(), dest.end(), c), c);
    };
    if (v.is_center()) {
        for (int i = 1; i <= params.k; ++i) deliver(Vertex::branch(i, 1), move.fired[i - 1]);
    } else {
        deliver(inward(v), move.fired[0]);
        deliver(outward(v), move.fired[1]);
    }
    return LabeledConfig(params, std::move(chips));
}

UnlabeledConfig fire(const UnlabeledConfig& config, const Vertex& v) {
    const StarParams& params = config.params();
    const int deg = degree(params, v);
    if (config.at(v) < deg) throw PreconditionError("vertex " + to_string(v) + " is not ready to fire");
    UnlabeledConfig next = config;
    next.add(v, -deg);
    if (v.is_center()) {
        for (int i = 1; i <= params.k; ++i) next.add(Vertex::branch(i, 1), 1);
    } else {
        next.add(inward(v), 1);
        next.add(outward(v), 1);
    }
    return next;
}

UnlabeledConfig forget_labels(const LabeledConfig& config) {
    UnlabeledConfig out(config.params());
    for (const auto& [v, labels] : config.chips()) out.add(v, static_cast<long long>(labels.size()));
    return out;
}

std::vector<Vertex> ready_vertices(const UnlabeledConfig& config) {
    std::vector<Vertex> out;
    for (const auto& [v, c] : config.counts()) {
        if (c >= degree(config.params(), v)) out.push_back(v);
    }
    return out;
}

std::vector<Vertex> ready_vertices(const LabeledConfig& config) {
    std::vector<Vertex> out;
    for (const auto& [v, labels] : config.chips()) {
        if (static_cast<int>(labels.size()) >= degree(config.params(), v)) out.push_back(v);
    }
    return out;
}

bool is_stable(const UnlabeledConfig& config) { return ready_vertices(config).empty(); }
bool is_stable(const LabeledConfig& config) { return ready_vertices(config).empty(); }

StableOutcome canonical_outcome(const LabeledConfig& config) {
    const StarParams& params = config.params();
    if (!is_stable(config)) throw ShapeError("configuration is not stable: " + to_string(config));
    std::vector<Label> cells(params.chips(), 0);
    for (const auto& [v, labels] : config.chips()) {
        if (v.is_center() || v.level() > params.m || labels.size() != 1) {
            throw ShapeError("stable configuration does not have one chip per cell of [k]x[m]: " + to_string(config));
        }
        cells[(v.branch_index() - 1) * params.m + (v.level() - 1)] = labels.front();
    }
    if (std::find(cells.begin(), cells.end(), 0) != cells.end()) {
        throw ShapeError("stable configuration leaves a cell of [k]x[m] empty: " + to_string(config));
    }
    return StableOutcome(params.k, params.m, std::move(cells));
}

}  // namespace chipfire
