// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
#include "stablewalk/walk_engine.hpp"

#include <cmath>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <thread>

#include "stablewalk/errors.hpp"
#include "stablewalk/parallel.hpp"
#include "stablewalk/text.hpp"

namespace stablewalk {

// ---------------------------------------------------------------------------
// Initial distributions

InitialDistribution InitialDistribution::point(double v) {
    if (!std::isfinite(v)) throw ValidationError("point-mass start must be finite");
    return InitialDistribution(PointMass{v});
}

InitialDistribution InitialDistribution::uniform(double a, double b) {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b))
        throw ValidationError("uniform start interval needs finite a < b");
    return InitialDistribution(UniformInterval{a, b});
}

InitialDistribution InitialDistribution::gaussian(double mean, double sd) {
    if (!(std::isfinite(mean) && sd > 0.0 && std::isfinite(sd)))
        throw ValidationError("gaussian start needs finite mean and sd > 0");
    return InitialDistribution(GaussianShift{mean, sd});
}

InitialDistribution InitialDistribution::parse(std::string_view descriptor) {
    const auto parts = split(trim(descriptor), ':');
    const std::string_view head = parts.front();
    if (head == "point" && parts.size() == 2) return point(parse_double(parts[1], "point start"));
    if (head == "uniform" && parts.size() == 3)
        return uniform(parse_double(parts[1], "uniform start a"), parse_double(parts[2], "uniform start b"));
    if (head == "gaussian" && parts.size() == 3)
        return gaussian(parse_double(parts[1], "gaussian start mean"), parse_double(parts[2], "gaussian start sd"));
    throw ValidationError("unknown initial distribution descriptor '" + std::string(descriptor) +
                          "' (expected point:v, uniform:a:b or gaussian:mean:sd)");
}

std::string InitialDistribution::descriptor() const {
    return std::visit(
        [](const auto& k) -> std::string {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, PointMass>) return "point:" + format_double(k.value);
            else if constexpr (std::is_same_v<K, UniformInterval>)
                return "uniform:" + format_double(k.a) + ":" + format_double(k.b);
            else return "gaussian:" + format_double(k.mean) + ":" + format_double(k.sd);
        },
        kind_);
}

double InitialDistribution::sample(RngState& rng) const {
    return std::visit(
        [&rng](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, PointMass>) return k.value;
            else if constexpr (std::is_same_v<K, UniformInterval>) return k.a + (k.b - k.a) * uniform_open(rng);
            else return k.mean + k.sd * standard_normal(rng);
        },
        kind_);
}

// ---------------------------------------------------------------------------
// Single trials

void WalkConfig::validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ValidationError("epsilon must be positive");
    if (cap < 1) throw ValidationError("cap must be at least 1");
    if (!std::isfinite(x)) throw ValidationError("target x must be finite");
}

bool WalkConfig::detects_exact_hits() const {
    const auto* point = std::get_if<PointMass>(&initial.kind());
    return model.has_zero_atom() && point != nullptr && point->value == x;
}

std::uint64_t HittingSample::steps() const noexcept {
    if (const auto* h = std::get_if<Hit>(&outcome)) return h->steps;
    return std::get<Censored>(outcome).cap;
}

std::uint64_t SampleSet::censored_count() const {
    std::uint64_t n = 0;
    for (const auto& s : samples) n += s.is_hit() ? 0 : 1;
    return n;
}

std::uint64_t SampleSet::excluded_count() const {
    std::uint64_t n = 0;
    for (const auto& s : samples) n += s.excluded ? 1 : 0;
    return n;
}

WalkerState WalkerState::start(const WalkConfig& config, std::uint64_t trial_index) {
    WalkerState state{RngState::for_trial(config.master_seed, trial_index)};
    state.position = config.initial.sample(state.rng);
    return state;
}

namespace {

template <class Sampler>
void advance_impl(const Sampler jump, const double x, const double eps, const bool detect_exact,
                  WalkerState& state, const std::uint64_t horizon) {
    RngState rng = state.rng;
    double pos = state.position;
    std::uint64_t n = state.steps;
    bool excluded = state.excluded;
    bool hit = false;
    while (n < horizon) {
        pos += jump(rng);
        ++n;
        if (detect_exact && pos == x) excluded = true;
        if (std::fabs(pos - x) < eps) {
            hit = true;
            break;
        }
    }
    state.rng = rng;
    state.position = pos;
    state.steps = n;
    state.excluded = excluded;
    state.hit = hit;
}

HittingSample to_sample(const WalkerState& state, std::uint64_t cap) {
    if (state.hit) return HittingSample{Hit{state.steps}, state.excluded};
    return HittingSample{Censored{cap}, state.excluded};
}

}  // namespace

void advance_walker(const WalkConfig& config, WalkerState& state, std::uint64_t horizon) {
    if (state.hit) return;
    const bool exact = config.detects_exact_hits();
    visit_sampler(config.model, [&](auto sampler) {
        advance_impl(sampler, config.x, config.epsilon, exact, state, horizon);
    });
}

HittingSample hitting_time(const WalkConfig& config, std::uint64_t trial_index) {
    config.validate();
    WalkerState state = WalkerState::start(config, trial_index);
    advance_walker(config, state, config.cap);
    return to_sample(state, config.cap);
}

unsigned default_workers() {
    if (const char* env = std::getenv("STABLEWALK_WORKERS")) {
        const auto n = parse_count(env, "STABLEWALK_WORKERS");
        if (n < 1 || n > 4096) throw ValidationError("STABLEWALK_WORKERS must lie in [1, 4096]");
        return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SampleSet run_batch(const WalkConfig& config, unsigned workers) {
    config.validate();
    if (workers == 0) workers = default_workers();
    SampleSet set{config, std::vector<HittingSample>(config.trials, HittingSample{Censored{config.cap}, false})};
    const bool exact = config.detects_exact_hits();
    visit_sampler(config.model, [&](auto sampler) {
        detail::parallel_for(
            config.trials, workers,
            [&](std::uint64_t begin, std::uint64_t end) {
                for (std::uint64_t i = begin; i < end; ++i) {
                    WalkerState state = WalkerState::start(config, i);
                    advance_impl(sampler, config.x, config.epsilon, exact, state, config.cap);
                    set.samples[i] = to_sample(state, config.cap);
                }
            },
            16);
    });
    return set;
}

// ---------------------------------------------------------------------------
// Rate experiment

SlopeInput rate_experiment(const JumpModel& model, double x, std::span<const double> eps_ladder, std::uint64_t cap,
                           std::uint64_t trials_per_eps, std::uint64_t master_seed, const RateOptions& options) {
    if (eps_ladder.empty()) throw ValidationError("epsilon ladder is empty");
    for (std::size_t i = 0; i < eps_ladder.size(); ++i) {
        if (!(eps_ladder[i] > 0.0)) throw ValidationError("epsilon ladder entries must be positive");
        if (i > 0 && !(eps_ladder[i] < eps_ladder[i - 1]))
            throw ValidationError("epsilon ladder must be strictly decreasing");
    }
    const unsigned workers = options.workers == 0 ? default_workers() : options.workers;

    SlopeInput result;
    result.eps_ladder.assign(eps_ladder.begin(), eps_ladder.end());
    result.cap = cap;
    for (std::size_t level = 0; level < eps_ladder.size(); ++level) {
        WalkConfig config;
        config.model = model;
        config.x = x;
        config.epsilon = eps_ladder[level];
        config.initial = InitialDistribution::point(0.0);
        config.cap = cap;
        config.trials = trials_per_eps;
        config.master_seed = split_seed(master_seed, level);
        config.validate();

        std::vector<WalkerState> states;
        states.reserve(trials_per_eps);
        for (std::uint64_t i = 0; i < trials_per_eps; ++i) states.push_back(WalkerState::start(config, i));

        std::uint64_t horizon = options.stop_at_median ? std::min(cap, options.first_horizon) : cap;
        for (;;) {
            detail::parallel_for(
                trials_per_eps, workers,
                [&](std::uint64_t begin, std::uint64_t end) {
                    for (std::uint64_t i = begin; i < end; ++i) advance_walker(config, states[i], horizon);
                },
                4);
            std::uint64_t kept = 0;
            std::uint64_t finished = 0;
            for (const auto& s : states) {
                if (s.excluded) continue;
                ++kept;
                finished += s.hit ? 1 : 0;
            }
            if (horizon >= cap || finished >= kept / 2 + 1) break;
            horizon = std::min(cap, horizon * 4);
        }

        const double log_eps = std::log(config.epsilon);
        for (const auto& s : states) {
            if (s.excluded) {
                ++result.excluded;
                continue;
            }
            result.points.push_back(
                SlopePoint{log_eps, std::log(static_cast<double>(s.hit ? s.steps : horizon)), !s.hit});
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Local limit probe

LocalLimitEstimate local_limit_probe(const JumpModel& model, std::uint64_t n, double half_width, std::uint64_t trials,
                                     std::uint64_t master_seed, unsigned workers) {
    if (n < 1) throw ValidationError("local limit probe needs n >= 1");
    if (!(half_width >= 0.0)) throw ValidationError("half_width must be non-negative");
    if (trials < 1) throw ValidationError("local limit probe needs at least one trial");
    if (workers == 0) workers = default_workers();

    const double a_n = model.norming()(static_cast<double>(n));
    const double bound = half_width * a_n;
    constexpr std::uint64_t kBlock = 256;
    const std::uint64_t blocks = (trials + kBlock - 1) / kBlock;
    std::vector<std::uint64_t> block_hits(blocks, 0);
    visit_sampler(model, [&](auto jump) {
        detail::parallel_for(
            blocks, workers,
            [&](std::uint64_t begin, std::uint64_t end) {
                for (std::uint64_t b = begin; b < end; ++b) {
                    std::uint64_t count = 0;
                    const std::uint64_t last = std::min(trials, (b + 1) * kBlock);
                    for (std::uint64_t i = b * kBlock; i < last; ++i) {
                        RngState rng = RngState::for_trial(master_seed, i);
                        double sum = 0.0;
                        for (std::uint64_t k = 0; k < n; ++k) sum += jump(rng);
                        count += std::fabs(sum) < bound ? 1 : 0;
                    }
                    block_hits[b] = count;
                }
            },
            1);
    });
    std::uint64_t hits = 0;
    for (const auto h : block_hits) hits += h;
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    return LocalLimitEstimate{p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)),
                              2.0 * half_width * limit_density_at_zero(model), hits, trials};
}

// ---------------------------------------------------------------------------
// CSV

void write_sample_csv(std::ostream& out, const SampleSet& set) {
    const WalkConfig& c = set.config;
    out << "# stablewalk sample set\n";
    out << "# model = " << c.model.descriptor() << '\n';
    out << "# x = " << format_double(c.x) << '\n';
    out << "# epsilon = " << format_double(c.epsilon) << '\n';
    out << "# initial = " << c.initial.descriptor() << '\n';
    out << "# cap = " << c.cap << '\n';
    out << "# trials = " << c.trials << '\n';
    out << "# seed = " << c.master_seed << '\n';
    out << "# seed_derivation = " << set.seed_derivation << '\n';
    out << "# censored = " << set.censored_count() << '\n';
    out << "# excluded = " << set.excluded_count() << '\n';
    out << "trial,outcome,steps,excluded\n";
    std::uint64_t i = 0;
    for (const auto& s : set.samples) {
        out << i++ << ',' << (s.is_hit() ? "hit" : "censored") << ',' << s.steps() << ',' << (s.excluded ? 1 : 0)
            << '\n';
    }
    if (!out) throw IoError("failed writing sample CSV");
}

SampleSet read_sample_csv(std::istream& in) {
    std::map<std::string, std::string, std::less<>> meta;
    std::string line;
    bool header_seen = false;
    SampleSet set;
    std::uint64_t expected_index = 0;
    while (std::getline(in, line)) {
        const std::string_view view = trim(line);
        if (view.empty()) continue;
        if (view.front() == '#') {
            const auto eq = view.find('=');
            if (eq != std::string_view::npos)
                meta[std::string(trim(view.substr(1, eq - 1)))] = std::string(trim(view.substr(eq + 1)));
            continue;
        }
        if (!header_seen) {
            if (view != "trial,outcome,steps,excluded") throw ValidationError("sample CSV: unexpected column header");
            header_seen = true;
            continue;
        }
        const auto fields = split(view, ',');
        if (fields.size() != 4) throw ValidationError("sample CSV: expected 4 fields per row");
        if (parse_count(fields[0], "trial") != expected_index++) throw ValidationError("sample CSV: trial index gap");
        const auto steps = parse_count(fields[2], "steps");
        const auto excluded = parse_count(fields[3], "excluded");
        if (excluded > 1) throw ValidationError("sample CSV: excluded must be 0 or 1");
        if (fields[1] == "hit") set.samples.push_back(HittingSample{Hit{steps}, excluded == 1});
        else if (fields[1] == "censored") set.samples.push_back(HittingSample{Censored{steps}, excluded == 1});
        else throw ValidationError("sample CSV: outcome must be hit or censored");
    }
    if (!header_seen) throw ValidationError("sample CSV is empty or lacks the column header");

    auto require = [&](const char* key) -> const std::string& {
        const auto it = meta.find(key);
        if (it == meta.end()) throw ValidationError(std::string("sample CSV metadata lacks '") + key + "'");
        return it->second;
    };
    WalkConfig& c = set.config;
    c.model = JumpModel::parse(require("model"));
    c.x = parse_double(require("x"), "x");
    c.epsilon = parse_double(require("epsilon"), "epsilon");
    c.initial = InitialDistribution::parse(require("initial"));
    c.cap = parse_count(require("cap"), "cap");
    c.trials = parse_count(require("trials"), "trials");
    c.master_seed = parse_count(require("seed"), "seed");
    if (const auto it = meta.find("seed_derivation"); it != meta.end()) set.seed_derivation = it->second;
    c.validate();
    if (c.trials != set.samples.size()) throw ValidationError("sample CSV: row count does not match trials");
    for (const auto& s : set.samples) {
        if (s.is_hit() && (s.steps() < 1 || s.steps() > c.cap))
            throw ValidationError("sample CSV: hit steps outside [1, cap]");
    }
    return set;
}

}  // namespace stablewalk
