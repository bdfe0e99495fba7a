#include "shiftset/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

namespace shiftset {

namespace {

std::vector<uint64_t> clean_k0_list(std::vector<uint64_t> k0_list, uint64_t N) {
    if (k0_list.empty()) k0_list = default_k0_list(N);
    std::sort(k0_list.begin(), k0_list.end());
    k0_list.erase(std::unique(k0_list.begin(), k0_list.end()), k0_list.end());
    if (k0_list.front() < 1 || k0_list.back() > N) {
        throw InputError("window checkpoints must satisfy 1 <= k0 <= N");
    }
    return k0_list;
}

// First N values of the realized sequence, 1-based rank indexing.
std::vector<double> ranked_values(const SequenceSpec& spec, uint64_t N,
                                  const std::string& label) {
    const auto elements = realize(spec).elements();
    if (elements.size() < N) {
        throw InputError("sequence " + label + " (" + spec.to_string() + ") has only " +
                         std::to_string(elements.size()) + " elements; achievable N = " +
                         std::to_string(elements.size()));
    }
    std::vector<double> values(N);
    for (uint64_t n = 0; n < N; ++n) values[n] = double(elements[n]);
    return values;
}

struct TailExtremum {
    double value;
    uint64_t arg;  // 1-based rank, least among exact attainers
};

// sup over n in [k0, N] of series[n-1], for each k0 (suffix maxima).
std::vector<TailExtremum> tail_sups(const std::vector<double>& series,
                                    const std::vector<uint64_t>& k0_list) {
    std::vector<TailExtremum> out(k0_list.size());
    const uint64_t N = series.size();
    size_t which = k0_list.size();
    TailExtremum running{-1.0, 0};
    for (uint64_t n = N; n-- > 0;) {
        if (running.arg == 0 || series[n] >= running.value) {
            running = {series[n], n + 1};
        }
        while (which > 0 && k0_list[which - 1] == n + 1) {
            out[--which] = running;
        }
    }
    return out;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::GateOpen: return "gate-open";
        case Verdict::GateClosed: return "gate-closed";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::vector<uint64_t> default_k0_list(uint64_t N) {
    std::vector<uint64_t> out{1, (N + 3) / 4, (N + 1) / 2, (3 * N + 3) / 4};
    for (uint64_t& v : out) v = std::clamp<uint64_t>(v, 1, N);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

GateReport liminf_gate(const SequenceSpec& A_spec, const SequenceSpec& B_spec, uint64_t k,
                       uint64_t h, uint64_t N, std::vector<uint64_t> k0_list, double margin,
                       unsigned workers) {
    if (k < 1) throw InputError("k must be at least 1");
    if (h < 2) throw InputError("tuple size h must be at least 2");
    if (N < 1) throw InputError("window size N must be at least 1");
    k0_list = clean_k0_list(std::move(k0_list), N);

    const auto a = ranked_values(A_spec, N, "A");
    const auto b = ranked_values(B_spec, N, "B");
    std::vector<double> m_root(N + 1);
    for (uint64_t m = 1; m <= N; ++m) m_root[m] = std::pow(double(m), 1.0 / double(k));

    GateReport report;
    report.kind = "liminf";
    report.k = k;
    report.h = h;
    report.N = N;
    report.k0_list = k0_list;
    report.threshold = std::pow(double(h - 1), -1.0 / double(k));
    report.margin = margin;

    std::vector<double> argmin_n, argmin_m;
    for (uint64_t k0 : k0_list) {
        // Grid minimum of (a_n + b_m) / (n * m^(1/k)) over [k0, N]^2.
        // Ties are broken toward the lexicographically least (n, m), which
        // makes the row-sharded reduction independent of the worker count.
        struct Cell {
            double value;
            uint64_t n, m;
        };
        auto row_min = [&](uint64_t n_lo, uint64_t n_hi) {
            Cell best{std::numeric_limits<double>::infinity(), 0, 0};
            for (uint64_t n = n_lo; n < n_hi; ++n) {
                for (uint64_t m = k0; m <= N; ++m) {
                    const double c = (a[n - 1] + b[m - 1]) / (double(n) * m_root[m]);
                    if (c < best.value ||
                        (c == best.value && std::pair(n, m) < std::pair(best.n, best.m))) {
                        best = {c, n, m};
                    }
                }
            }
            return best;
        };

        Cell best{std::numeric_limits<double>::infinity(), 0, 0};
        const unsigned n_workers =
            std::max<unsigned>(1, std::min<uint64_t>(workers, N - k0 + 1));
        if (n_workers <= 1) {
            best = row_min(k0, N + 1);
        } else {
            std::vector<Cell> partial(n_workers, best);
            std::vector<std::thread> pool;
            const uint64_t rows = N - k0 + 1;
            for (unsigned w = 0; w < n_workers; ++w) {
                const uint64_t lo = k0 + rows * w / n_workers;
                const uint64_t hi = k0 + rows * (w + 1) / n_workers;
                pool.emplace_back([&partial, &row_min, w, lo, hi]() {
                    partial[w] = row_min(lo, hi);
                });
            }
            for (auto& t : pool) t.join();
            for (const auto& cell : partial) {
                if (cell.value < best.value ||
                    (cell.value == best.value &&
                     std::pair(cell.n, cell.m) < std::pair(best.n, best.m))) {
                    best = cell;
                }
            }
        }
        report.series.push_back(best.value);
        argmin_n.push_back(double(best.n));
        argmin_m.push_back(double(best.m));
        report.arg = {best.n, best.m};  // ends at the last (tightest) window
    }
    report.diagnostics.emplace_back("argmin_n", std::move(argmin_n));
    report.diagnostics.emplace_back("argmin_m", std::move(argmin_m));

    bool non_decreasing = true;
    for (size_t i = 1; i < report.series.size(); ++i) {
        non_decreasing = non_decreasing && report.series[i - 1] <= report.series[i];
    }
    const double last = report.series.back();
    if (last < report.threshold - margin) {
        report.verdict = Verdict::GateOpen;
    } else if (non_decreasing && last > report.threshold + margin) {
        report.verdict = Verdict::GateClosed;
    } else {
        report.verdict = Verdict::Inconclusive;
    }
    return report;
}

double GrowthFunction::operator()(double x) const {
    switch (kind) {
        case GrowthKind::LogSquared: {
            const double l = std::log(std::max(x, 2.0));
            return l * l;
        }
        case GrowthKind::Sqrt: return std::sqrt(x);
        case GrowthKind::Identity: return x;
        case GrowthKind::Power: return std::pow(x, exponent);
    }
    return x;
}

GrowthFunction GrowthFunction::parse(std::string_view name) {
    if (name == "logsq") return {GrowthKind::LogSquared, 0.0};
    if (name == "sqrt") return {GrowthKind::Sqrt, 0.0};
    if (name == "identity") return {GrowthKind::Identity, 0.0};
    if (name.starts_with("pow=")) {
        try {
            return {GrowthKind::Power, std::stod(std::string(name.substr(4)))};
        } catch (const std::exception&) {
            throw InputError("bad growth exponent in '" + std::string(name) + "'");
        }
    }
    throw InputError("unknown growth function '" + std::string(name) +
                     "' (expected logsq, sqrt, identity, or pow=<p>)");
}

std::string GrowthFunction::name() const {
    switch (kind) {
        case GrowthKind::LogSquared: return "logsq";
        case GrowthKind::Sqrt: return "sqrt";
        case GrowthKind::Identity: return "identity";
        case GrowthKind::Power: return "pow=" + std::to_string(exponent);
    }
    return "identity";
}

GateReport corollary_f_gate(const SequenceSpec& A_spec, const SequenceSpec& B_spec,
                            const GrowthFunction& f, uint64_t k, uint64_t N,
                            std::vector<uint64_t> k0_list, double decay_ratio) {
    if (k < 1) throw InputError("k must be at least 1");
    if (N < 1) throw InputError("window size N must be at least 1");
    k0_list = clean_k0_list(std::move(k0_list), N);

    const auto a = ranked_values(A_spec, N, "A");
    const auto b = ranked_values(B_spec, N, "B");

    // Boundedness proxy for a_n / (n f(n)): the running maximum must stop
    // growing before the tail checkpoint.
    std::vector<double> growth(N), tail(N);
    uint64_t last_new_max = 1;
    double running_max = -1.0;
    for (uint64_t n = 1; n <= N; ++n) {
        growth[n - 1] = a[n - 1] / (double(n) * f(double(n)));
        if (growth[n - 1] > running_max) {
            running_max = growth[n - 1];
            last_new_max = n;
        }
        tail[n - 1] = f(b[n - 1]) / std::pow(double(n), 1.0 / double(k));
    }
    const auto growth_sups = tail_sups(growth, k0_list);
    const auto decay_sups = tail_sups(tail, k0_list);

    GateReport report;
    report.kind = "corollary";
    report.k = k;
    report.N = N;
    report.k0_list = k0_list;
    report.threshold = decay_ratio;
    for (const auto& e : decay_sups) report.series.push_back(e.value);
    std::vector<double> growth_series;
    for (const auto& e : growth_sups) growth_series.push_back(e.value);
    report.diagnostics.emplace_back("a_over_nf_sup", std::move(growth_series));
    report.diagnostics.emplace_back("last_new_max_at", std::vector<double>{
                                                           double(last_new_max)});
    report.arg = {decay_sups.back().arg, 0};

    const bool bounded = last_new_max <= k0_list.back();
    const double s_first = report.series.front();
    const double s_last = report.series.back();
    if (bounded && s_last <= decay_ratio * s_first) {
        report.verdict = Verdict::GateOpen;
    } else if (!bounded || s_last == s_first) {
        report.verdict = Verdict::GateClosed;
    } else {
        report.verdict = Verdict::Inconclusive;
    }
    return report;
}

GateReport thm2_gate(const SequenceSpec& A_spec, uint64_t k, uint64_t N,
                     std::vector<uint64_t> k0_list, double epsilon) {
    if (k < 2) {
        throw InputError("the gate needs k >= 2 (for k = 1 the recurrence set is the "
                         "distance set and there is nothing to gate)");
    }
    if (N < 1) throw InputError("window size N must be at least 1");
    k0_list = clean_k0_list(std::move(k0_list), N);

    const auto a = ranked_values(A_spec, N, "A");
    const double exponent = double(k) / double(k - 1);
    std::vector<double> ratio(N), diagonal(N);
    for (uint64_t n = 1; n <= N; ++n) {
        ratio[n - 1] = a[n - 1] / std::pow(double(n), exponent);
        diagonal[n - 1] =
            a[n - 1] > 0.0
                ? 2.0 * a[n - 1] / (double(n) * std::pow(a[n - 1], 1.0 / double(k)))
                : 0.0;
    }
    const auto ratio_sups = tail_sups(ratio, k0_list);
    const auto diagonal_sups = tail_sups(diagonal, k0_list);

    GateReport report;
    report.kind = "thm2";
    report.k = k;
    report.N = N;
    report.k0_list = k0_list;
    report.threshold = epsilon;
    for (const auto& e : ratio_sups) report.series.push_back(e.value);
    std::vector<double> diag_series;
    for (const auto& e : diagonal_sups) diag_series.push_back(e.value);
    report.diagnostics.emplace_back("diagonal_sup", std::move(diag_series));
    report.arg = {ratio_sups.back().arg, 0};

    const double s_last = report.series.back();
    if (s_last < epsilon) {
        report.verdict = Verdict::GateOpen;
    } else if (s_last >= 1.0) {
        report.verdict = Verdict::GateClosed;
    } else {
        report.verdict = Verdict::Inconclusive;
    }
    return report;
}

}  // namespace shiftset
