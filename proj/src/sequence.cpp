#include "shiftset/sequence.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

namespace shiftset {

namespace {

uint64_t parse_nat(std::string_view text, const std::string& what) {
    uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.begin(), text.end(), value);
    if (ec != std::errc{} || ptr != text.end() || text.empty()) {
        throw InputError("expected a natural number for " + what + ", got '" +
                         std::string(text) + "'");
    }
    return value;
}

// Accepts "3", "6/5", and decimals like "1.2" (exactly: 12/10 reduced).
mpq_class parse_rational(std::string_view text, const std::string& what) {
    try {
        const std::string s(text);
        if (s.empty()) throw InputError("empty rational");
        if (auto dot = s.find('.'); dot != std::string::npos) {
            const std::string whole = s.substr(0, dot);
            const std::string frac = s.substr(dot + 1);
            if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos ||
                (!whole.empty() && whole.find_first_not_of("0123456789") != std::string::npos)) {
                throw InputError("bad decimal");
            }
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
            mpz_class num = mpz_class(whole.empty() ? "0" : whole) * scale + mpz_class(frac);
            mpq_class q(num, scale);
            q.canonicalize();
            return q;
        }
        mpq_class q(s);
        q.canonicalize();
        if (q.get_den() <= 0) throw InputError("bad rational");
        return q;
    } catch (const std::invalid_argument&) {
        throw InputError("expected a rational for " + what + ", got '" + std::string(text) +
                         "'");
    } catch (const InputError&) {
        throw InputError("expected a rational for " + what + ", got '" + std::string(text) +
                         "'");
    }
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    while (true) {
        const size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

// "c=1,p=6/5" -> {{"c","1"},{"p","6/5"}}, order preserved.
std::vector<std::pair<std::string_view, std::string_view>> parse_kv(std::string_view params) {
    std::vector<std::pair<std::string_view, std::string_view>> out;
    for (std::string_view part : split(params, ',')) {
        const size_t eq = part.find('=');
        if (eq == std::string_view::npos) {
            throw InputError("expected key=value in spec parameters, got '" +
                             std::string(part) + "'");
        }
        out.emplace_back(part.substr(0, eq), part.substr(eq + 1));
    }
    return out;
}

NatSet sieve_primes(uint64_t horizon) {
    NatSet out(horizon);
    if (horizon <= 2) return out;
    std::vector<bool> composite(horizon, false);
    for (uint64_t p = 2; p < horizon; ++p) {
        if (composite[p]) continue;
        out.insert(p);
        for (uint64_t q = p * p; q < horizon; q += p) composite[q] = true;
    }
    return out;
}

// floor(c * n^p) computed exactly: with c = cn/cd and p = a/b, the value
// is the b-th root of floor(cn^b * n^a / cd^b), rounded down.
uint64_t power_term(const mpz_class& cn_pow, const mpz_class& cd_pow, uint64_t n,
                    unsigned long a, unsigned long b) {
    mpz_class n_pow;
    mpz_ui_pow_ui(n_pow.get_mpz_t(), n, a);
    mpz_class q = cn_pow * n_pow / cd_pow;
    mpz_class root;
    mpz_root(root.get_mpz_t(), q.get_mpz_t(), b);
    if (!root.fits_ulong_p()) throw CapacityError("power sequence term overflows");
    return root.get_ui();
}

NatSet realize_power(const SequenceSpec& spec) {
    if (spec.power_c <= 0 || spec.power_p <= 0) {
        throw InputError("power spec needs c > 0 and p > 0");
    }
    const mpz_class a_z = spec.power_p.get_num();
    const mpz_class b_z = spec.power_p.get_den();
    if (a_z > 1024 || b_z > 1024) {
        throw InputError("power exponent numerator/denominator capped at 1024");
    }
    const auto a = static_cast<unsigned long>(a_z.get_ui());
    const auto b = static_cast<unsigned long>(b_z.get_ui());
    mpz_class cn_pow, cd_pow;
    mpz_pow_ui(cn_pow.get_mpz_t(), spec.power_c.get_num().get_mpz_t(), b);
    mpz_pow_ui(cd_pow.get_mpz_t(), spec.power_c.get_den().get_mpz_t(), b);

    NatSet out(spec.horizon);
    for (uint64_t n = 1;; ++n) {
        const uint64_t value = power_term(cn_pow, cd_pow, n, a, b);
        if (value >= spec.horizon) {
            // c * n^p is strictly increasing in n, so no later term fits.
            break;
        }
        out.insert(value);  // duplicates collapse in the bit vector
    }
    return out;
}

NatSet realize_random(const SequenceSpec& spec) {
    if (spec.density <= 0 || spec.density > 1) {
        throw InputError("random spec needs density in (0, 1]");
    }
    NatSet out(spec.horizon);
    std::mt19937_64 rng(spec.seed);
    if (spec.density == 1) {
        for (uint64_t x = 0; x < spec.horizon; ++x) out.insert(x);
        return out;
    }
    // Keep x iff the next draw lands below floor(density * 2^64); this is
    // a pure function of (spec, seed), independent of platform.
    mpz_class threshold_z = spec.density.get_num();
    threshold_z <<= 64;
    threshold_z /= spec.density.get_den();
    uint64_t threshold = 0;
    mpz_export(&threshold, nullptr, -1, sizeof(threshold), 0, 0, threshold_z.get_mpz_t());
    for (uint64_t x = 0; x < spec.horizon; ++x) {
        if (rng() < threshold) out.insert(x);
    }
    return out;
}

NatSet realize_ladder(const SequenceSpec& spec) {
    NatSet out(spec.horizon);
    const auto bases = ladder_bases(spec.horizon);
    for (size_t block = 0; block < bases.size(); ++block) {
        // Block n holds the first n multiples of a_n; emit those that fit.
        const uint64_t n = block + 1;
        for (uint64_t i = 1; i <= n; ++i) {
            const uint64_t value = bases[block] * i;
            if (value >= spec.horizon) break;
            out.insert(value);
        }
    }
    return out;
}

}  // namespace

std::vector<uint64_t> ladder_bases(uint64_t horizon) {
    std::vector<uint64_t> bases;
    uint64_t a = 2;
    for (uint64_t n = 1; a < horizon; ++n) {
        bases.push_back(a);
        if (n > 0 && a > (UINT64_MAX - 1) / n) break;  // overflow guard
        a = a * n + 1;
    }
    return bases;
}

SequenceSpec SequenceSpec::parse(std::string_view text) {
    SequenceSpec spec;
    std::string_view body = text;
    std::optional<uint64_t> horizon;
    if (const size_t at = text.rfind('@'); at != std::string_view::npos) {
        horizon = parse_nat(text.substr(at + 1), "horizon");
        body = text.substr(0, at);
    }
    std::string_view kind = body;
    std::string_view params;
    if (const size_t colon = body.find(':'); colon != std::string_view::npos) {
        kind = body.substr(0, colon);
        params = body.substr(colon + 1);
    }

    auto require_params = [&](bool want) {
        if (want && params.empty()) {
            throw InputError("spec kind '" + std::string(kind) + "' needs parameters");
        }
        if (!want && !params.empty()) {
            throw InputError("spec kind '" + std::string(kind) + "' takes no parameters");
        }
    };
    auto require_horizon = [&]() {
        if (!horizon) {
            throw InputError("spec kind '" + std::string(kind) + "' needs an @horizon");
        }
        spec.horizon = *horizon;
    };

    if (kind == "explicit") {
        spec.kind = SequenceKind::ExplicitList;
        if (!params.empty()) {
            for (std::string_view part : split(params, ',')) {
                spec.values.push_back(parse_nat(part, "set element"));
            }
            for (size_t i = 1; i < spec.values.size(); ++i) {
                if (spec.values[i - 1] >= spec.values[i]) {
                    throw InputError("explicit spec elements must be strictly increasing");
                }
            }
        }
        spec.horizon = horizon.value_or(spec.values.empty() ? 1 : spec.values.back() + 1);
    } else if (kind == "file") {
        spec.kind = SequenceKind::ExplicitFile;
        require_params(true);
        spec.path = std::string(params);
        spec.horizon = horizon.value_or(0);  // 0: derive from file contents
    } else if (kind == "primes") {
        spec.kind = SequenceKind::Primes;
        require_params(false);
        require_horizon();
    } else if (kind == "power") {
        spec.kind = SequenceKind::Power;
        require_params(true);
        require_horizon();
        bool saw_c = false, saw_p = false;
        for (const auto& [key, value] : parse_kv(params)) {
            if (key == "c") {
                spec.power_c = parse_rational(value, "power c");
                saw_c = true;
            } else if (key == "p") {
                spec.power_p = parse_rational(value, "power p");
                saw_p = true;
            } else {
                throw InputError("unknown power parameter '" + std::string(key) + "'");
            }
        }
        if (!saw_c || !saw_p) throw InputError("power spec needs both c= and p=");
    } else if (kind == "random") {
        spec.kind = SequenceKind::Random;
        require_params(true);
        require_horizon();
        bool saw_d = false, saw_seed = false;
        for (const auto& [key, value] : parse_kv(params)) {
            if (key == "d") {
                spec.density = parse_rational(value, "random density");
                saw_d = true;
            } else if (key == "seed") {
                spec.seed = parse_nat(value, "random seed");
                saw_seed = true;
            } else {
                throw InputError("unknown random parameter '" + std::string(key) + "'");
            }
        }
        if (!saw_d || !saw_seed) throw InputError("random spec needs both d= and seed=");
    } else if (kind == "ladder") {
        spec.kind = SequenceKind::Ladder;
        require_params(false);
        require_horizon();
    } else if (kind == "naturals") {
        spec.kind = SequenceKind::Naturals;
        require_params(false);
        require_horizon();
    } else if (kind == "odds") {
        spec.kind = SequenceKind::Odds;
        require_params(false);
        require_horizon();
    } else {
        throw InputError("unknown sequence kind '" + std::string(kind) + "'");
    }
    return spec;
}

std::string SequenceSpec::to_string() const {
    std::ostringstream out;
    const auto rat = [](const mpq_class& q) { return q.get_str(); };
    switch (kind) {
        case SequenceKind::ExplicitList: {
            out << "explicit:";
            for (size_t i = 0; i < values.size(); ++i) {
                if (i) out << ',';
                out << values[i];
            }
            out << '@' << horizon;
            break;
        }
        case SequenceKind::ExplicitFile:
            out << "file:" << path;
            if (horizon) out << '@' << horizon;
            break;
        case SequenceKind::Primes:
            out << "primes@" << horizon;
            break;
        case SequenceKind::Power:
            out << "power:c=" << rat(power_c) << ",p=" << rat(power_p) << '@' << horizon;
            break;
        case SequenceKind::Random:
            out << "random:d=" << rat(density) << ",seed=" << seed << '@' << horizon;
            break;
        case SequenceKind::Ladder:
            out << "ladder@" << horizon;
            break;
        case SequenceKind::Naturals:
            out << "naturals@" << horizon;
            break;
        case SequenceKind::Odds:
            out << "odds@" << horizon;
            break;
    }
    return out.str();
}

NatSet realize(const SequenceSpec& spec) {
    if (spec.kind != SequenceKind::ExplicitFile && spec.horizon < 1) {
        throw InputError("sequence horizon must be at least 1");
    }
    switch (spec.kind) {
        case SequenceKind::ExplicitList: {
            NatSet out(spec.horizon);
            for (uint64_t v : spec.values) {
                if (v < spec.horizon) out.insert(v);
            }
            return out;
        }
        case SequenceKind::ExplicitFile:
            return read_set_file(spec.path, spec.horizon ? std::optional(spec.horizon)
                                                         : std::nullopt);
        case SequenceKind::Primes:
            return sieve_primes(spec.horizon);
        case SequenceKind::Power:
            return realize_power(spec);
        case SequenceKind::Random:
            return realize_random(spec);
        case SequenceKind::Ladder:
            return realize_ladder(spec);
        case SequenceKind::Naturals: {
            NatSet out(spec.horizon);
            for (uint64_t x = 0; x < spec.horizon; ++x) out.insert(x);
            return out;
        }
        case SequenceKind::Odds: {
            NatSet out(spec.horizon);
            for (uint64_t x = 1; x < spec.horizon; x += 2) out.insert(x);
            return out;
        }
    }
    throw InputError("unhandled sequence kind");
}

NatSet read_set_file(const std::string& path, std::optional<uint64_t> horizon) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open set file '" + path + "'");
    std::vector<uint64_t> values;
    std::string line;
    uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;  // blank
        if (line[start] == '#') continue;          // comment
        const size_t end = line.find_last_not_of(" \t\r");
        uint64_t value = 0;
        const char* first = line.data() + start;
        const char* last = line.data() + end + 1;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) {
            throw InputError("set file '" + path + "' line " + std::to_string(line_no) +
                             ": expected a single natural number");
        }
        if (!values.empty() && values.back() >= value) {
            throw InputError("set file '" + path + "' line " + std::to_string(line_no) +
                             ": elements must be strictly increasing");
        }
        values.push_back(value);
    }
    const uint64_t cap = horizon.value_or(values.empty() ? 1 : values.back() + 1);
    NatSet out(cap);
    for (uint64_t v : values) {
        if (v < cap) out.insert(v);
    }
    return out;
}

}  // namespace shiftset
