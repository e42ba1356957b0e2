#include "walkmem/strategy.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "walkmem/error.hpp"

namespace walkmem {

std::string display_name(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::Uniform: return "U-RW";
        case StrategyKind::InverseDegree: return "ID-RW";
        case StrategyKind::Forward: return "F-RWM";
        case StrategyKind::InverseDegreeMemory: return "ID-RWM";
        case StrategyKind::TwoHop: return "2H-RWM";
        case StrategyKind::Persistent: return "P-RWM";
        case StrategyKind::PersistentInverseDegree: return "PID-RWM";
    }
    return "?";
}

void StrategySpec::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be positive");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidArgument("beta must be nonnegative");
}

namespace {

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\"'");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\"'");
    return s.substr(b, e - b + 1);
}

bool uses_degree(StrategyKind k) {
    return k == StrategyKind::InverseDegree || k == StrategyKind::InverseDegreeMemory ||
           k == StrategyKind::PersistentInverseDegree;
}

}  // namespace

std::string StrategySpec::label() const {
    std::string name = lower(display_name(kind));
    std::vector<std::string> params;
    if (kind == StrategyKind::Persistent || kind == StrategyKind::PersistentInverseDegree) {
        params.push_back("alpha=" + format_number(alpha));
    }
    if (kind == StrategyKind::Persistent) params.push_back("beta=" + format_number(beta));
    if (uses_degree(kind) && degree != DegreeConvention::Out) {
        params.push_back(std::string("degree=") + (degree == DegreeConvention::In ? "in" : "total"));
    }
    if (params.empty()) return name;
    name += '(';
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) name += ',';
        name += params[i];
    }
    return name + ')';
}

StrategySpec StrategySpec::parse(std::string_view text) {
    text = trim(text);
    StrategySpec spec;
    const auto open = text.find('(');
    const std::string name = lower(trim(text.substr(0, open)));
    if (name == "u-rw") spec.kind = StrategyKind::Uniform;
    else if (name == "id-rw") spec.kind = StrategyKind::InverseDegree;
    else if (name == "f-rwm") spec.kind = StrategyKind::Forward;
    else if (name == "id-rwm") spec.kind = StrategyKind::InverseDegreeMemory;
    else if (name == "2h-rwm") spec.kind = StrategyKind::TwoHop;
    else if (name == "p-rwm") spec.kind = StrategyKind::Persistent;
    else if (name == "pid-rwm") spec.kind = StrategyKind::PersistentInverseDegree;
    else throw InvalidArgument("unknown strategy '" + std::string(text) + "'");

    if (open != std::string_view::npos) {
        if (text.back() != ')') throw InvalidArgument("unterminated parameter list in '" + std::string(text) + "'");
        std::string_view args = text.substr(open + 1, text.size() - open - 2);
        while (!trim(args).empty()) {
            const auto comma = args.find(',');
            const std::string_view item = trim(args.substr(0, comma));
            args = comma == std::string_view::npos ? std::string_view{} : args.substr(comma + 1);
            const auto eq = item.find('=');
            if (eq == std::string_view::npos) {
                throw InvalidArgument("expected key=value in '" + std::string(text) + "'");
            }
            const std::string key = lower(trim(item.substr(0, eq)));
            const std::string value(trim(item.substr(eq + 1)));
            if (key == "alpha" || key == "beta") {
                double x = 0.0;
                const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
                if (ec != std::errc{} || ptr != value.data() + value.size()) {
                    throw InvalidArgument("bad number '" + value + "' for " + key);
                }
                (key == "alpha" ? spec.alpha : spec.beta) = x;
            } else if (key == "degree") {
                const std::string v = lower(value);
                if (v == "out") spec.degree = DegreeConvention::Out;
                else if (v == "in") spec.degree = DegreeConvention::In;
                else if (v == "total") spec.degree = DegreeConvention::Total;
                else throw InvalidArgument("degree must be out, in or total");
            } else {
                throw InvalidArgument("unknown strategy parameter '" + key + "'");
            }
        }
    }
    spec.validate();
    return spec;
}

std::vector<StrategySpec> parse_strategy_list(std::string_view text) {
    std::vector<StrategySpec> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        const char c = i < text.size() ? text[i] : ',';
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (c == ',' && depth == 0) {
            const auto item = trim(text.substr(start, i - start));
            if (!item.empty()) out.push_back(StrategySpec::parse(item));
            start = i + 1;
        }
    }
    if (depth != 0) throw InvalidArgument("unbalanced parentheses in strategy list");
    if (out.empty()) throw InvalidArgument("empty strategy list");
    return out;
}

std::vector<StrategySpec> default_strategies() {
    std::vector<StrategySpec> out;
    for (StrategyKind k : kAllStrategies) out.push_back(StrategySpec{k});
    return out;
}

double probability_of(const TransitionDistribution& dist, NodeId node) {
    for (const auto& t : dist) {
        if (t.node == node) return t.probability;
    }
    return 0.0;
}

namespace {

void require_moves(const Graph& g, NodeId s) {
    if (g.out_degree(s) == 0) throw DeadEndError("node " + std::to_string(s) + " has no out-neighbors");
}

void require_arc(const Graph& g, NodeId r, NodeId s) {
    if (!g.has_arc(r, s)) {
        throw InvalidArgument("memory state (" + std::to_string(r) + ", " + std::to_string(s) +
                              ") is not an arc");
    }
}

double inverse_degree(const Graph& g, NodeId t, DegreeConvention conv) {
    const double k = g.degree(t, conv);
    if (k <= 0.0) throw DeadEndError("node " + std::to_string(t) + " has zero degree under the chosen convention");
    return 1.0 / k;
}

// Drops zero weights and scales the rest to sum to one.
void normalize(TransitionDistribution& out) {
    std::erase_if(out, [](const Transition& t) { return t.probability == 0.0; });
    double total = 0.0;
    for (const auto& t : out) total += t.probability;
    for (auto& t : out) t.probability /= total;
}

// True when the walk may step back to r, i.e. the reciprocal arc (s, r) exists.
bool can_return(const Graph& g, NodeId r, NodeId s) { return g.has_arc(s, r); }

void uniform_into(const Graph& g, NodeId s, TransitionDistribution& out) {
    require_moves(g, s);
    out.clear();
    const auto nbrs = g.neighbors(s);
    const double p = 1.0 / static_cast<double>(nbrs.size());
    for (NodeId t : nbrs) out.push_back({t, p});
}

void inverse_degree_into(const Graph& g, NodeId s, DegreeConvention conv, TransitionDistribution& out) {
    require_moves(g, s);
    out.clear();
    for (NodeId t : g.neighbors(s)) out.push_back({t, inverse_degree(g, t, conv)});
    normalize(out);
}

// Forward-only walks: r is excluded unless it is the sole neighbor.
template <typename Weight>
void non_backtracking_into(const Graph& g, NodeId r, NodeId s, Weight weight, TransitionDistribution& out) {
    require_moves(g, s);
    out.clear();
    const auto nbrs = g.neighbors(s);
    if (nbrs.size() == 1 && nbrs[0] == r) {
        out.push_back({r, 1.0});
        return;
    }
    for (NodeId t : nbrs) {
        if (t != r) out.push_back({t, weight(t)});
    }
    normalize(out);
}

void two_hop_into(const Graph& g, NodeId r, NodeId s, const CountMatrix& b, TransitionDistribution& out) {
    require_moves(g, s);
    out.clear();
    for (NodeId t : g.neighbors(s)) {
        const auto paths = b.coeff(r, t);
        if (paths == 0) {
            throw InvalidArgument("no two-hop path from " + std::to_string(r) + " to " + std::to_string(t));
        }
        out.push_back({t, 1.0 / static_cast<double>(paths)});
    }
    normalize(out);
}

void persistent_into(const Graph& g, NodeId r, NodeId s, double alpha, double beta,
                     TransitionDistribution& out) {
    require_moves(g, s);
    out.clear();
    const bool back = can_return(g, r, s);
    if (back && g.out_degree(s) == 1) {
        out.push_back({r, 1.0});
        return;
    }
    for (NodeId t : g.neighbors(s)) {
        if (t == r) out.push_back({t, beta});
        else out.push_back({t, g.has_arc(r, t) ? 1.0 : alpha});
    }
    normalize(out);
}

void persistent_inverse_degree_into(const Graph& g, NodeId r, NodeId s, double alpha,
                                    DegreeConvention conv, TransitionDistribution& out) {
    non_backtracking_into(
        g, r, s,
        [&](NodeId t) { return (g.has_arc(r, t) ? 1.0 : alpha) * inverse_degree(g, t, conv); }, out);
}

}  // namespace

TransitionDistribution uniform_kernel(const Graph& g, NodeId s) {
    TransitionDistribution out;
    uniform_into(g, s, out);
    return out;
}

TransitionDistribution inverse_degree_kernel(const Graph& g, NodeId s, DegreeConvention conv) {
    TransitionDistribution out;
    inverse_degree_into(g, s, conv, out);
    return out;
}

TransitionDistribution forward_memory_kernel(const Graph& g, NodeId r, NodeId s) {
    require_arc(g, r, s);
    TransitionDistribution out;
    non_backtracking_into(g, r, s, [](NodeId) { return 1.0; }, out);
    return out;
}

TransitionDistribution inverse_degree_memory_kernel(const Graph& g, NodeId r, NodeId s,
                                                    DegreeConvention conv) {
    require_arc(g, r, s);
    TransitionDistribution out;
    non_backtracking_into(g, r, s, [&](NodeId t) { return inverse_degree(g, t, conv); }, out);
    return out;
}

TransitionDistribution two_hop_memory_kernel(const Graph& g, NodeId r, NodeId s, const CountMatrix& two_hop) {
    require_arc(g, r, s);
    TransitionDistribution out;
    two_hop_into(g, r, s, two_hop, out);
    return out;
}

TransitionDistribution persistent_kernel(const Graph& g, NodeId r, NodeId s, double alpha, double beta) {
    require_arc(g, r, s);
    StrategySpec{StrategyKind::Persistent, alpha, beta}.validate();
    TransitionDistribution out;
    persistent_into(g, r, s, alpha, beta, out);
    return out;
}

TransitionDistribution persistent_inverse_degree_kernel(const Graph& g, NodeId r, NodeId s, double alpha,
                                                        DegreeConvention conv) {
    require_arc(g, r, s);
    StrategySpec{StrategyKind::PersistentInverseDegree, alpha}.validate();
    TransitionDistribution out;
    persistent_inverse_degree_into(g, r, s, alpha, conv, out);
    return out;
}

TransitionModel::TransitionModel(const Graph& g, StrategySpec spec) : graph_(&g), spec_(spec) {
    spec_.validate();
    if (spec_.kind == StrategyKind::TwoHop) two_hop_ = two_hop_counts(g);
}

void TransitionModel::distribution(std::optional<NodeId> previous, NodeId current,
                                   TransitionDistribution& out) const {
    const Graph& g = *graph_;
    switch (spec_.kind) {
        case StrategyKind::Uniform: return uniform_into(g, current, out);
        case StrategyKind::InverseDegree: return inverse_degree_into(g, current, spec_.degree, out);
        default: break;
    }
    if (!previous) return uniform_into(g, current, out);
    const NodeId r = *previous;
    switch (spec_.kind) {
        case StrategyKind::Forward:
            return non_backtracking_into(g, r, current, [](NodeId) { return 1.0; }, out);
        case StrategyKind::InverseDegreeMemory:
            return non_backtracking_into(
                g, r, current, [&](NodeId t) { return inverse_degree(g, t, spec_.degree); }, out);
        case StrategyKind::TwoHop: return two_hop_into(g, r, current, *two_hop_, out);
        case StrategyKind::Persistent:
            return persistent_into(g, r, current, spec_.alpha, spec_.beta, out);
        case StrategyKind::PersistentInverseDegree:
            return persistent_inverse_degree_into(g, r, current, spec_.alpha, spec_.degree, out);
        default: break;
    }
}

TransitionDistribution TransitionModel::distribution(std::optional<NodeId> previous, NodeId current) const {
    TransitionDistribution out;
    distribution(previous, current, out);
    return out;
}

}  // namespace walkmem
