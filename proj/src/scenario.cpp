#include "seadiag/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace seadiag {

int Scenario::decimation() const
{
    return static_cast<int>(std::lround(1.0 / (dt * sensor_rate)));
}

std::size_t Scenario::sample_count() const
{
    // Guard against duration * rate landing a hair below an integer.
    return static_cast<std::size_t>(std::floor(duration * sensor_rate + 1e-9)) + 1;
}

void validate(const Scenario& s)
{
    if (!(s.duration > 0.0) || !std::isfinite(s.duration)) {
        throw ConfigError("duration", "must be finite and > 0");
    }
    if (!(s.dt > 0.0) || !std::isfinite(s.dt)) {
        throw ConfigError("dt", "must be finite and > 0");
    }
    if (!(s.sensor_rate > 0.0) || !std::isfinite(s.sensor_rate)) {
        throw ConfigError("sensor_rate", "must be finite and > 0");
    }
    if (s.sensor_rate * s.dt > 1.0 + 1e-12) {
        throw ConfigError("sensor_rate", "must not exceed 1/dt");
    }
    const double steps = 1.0 / (s.dt * s.sensor_rate);
    if (std::abs(steps - std::round(steps)) > 1e-9 * steps) {
        throw ConfigError("sensor_rate", "1/(dt * sensor_rate) must be an integer");
    }
    if (!(s.cutoff_hz > 0.0) || !(s.cutoff_hz < 0.5 * s.sensor_rate)) {
        throw ConfigError("cutoff_hz", "must satisfy 0 < cutoff_hz < sensor_rate/2");
    }
    validate(s.params);
    validate(s.excitation);
    validate(s.noise, s.sensor_rate);
    validate(s.thresholds);
    std::set<Channel> seen;
    for (const FaultSpec& f : s.faults) {
        validate(f);
        if (!seen.insert(f.channel).second) {
            throw ConfigError("fault.channel",
                              fmt::format("more than one fault on {}", to_string(f.channel)));
        }
    }
}

bool uses_reference_parameters(const Scenario& s)
{
    const JointParams& p = s.params;
    return p.k1 == 100.0 && p.k2 == 0.02 && p.g1 == 105.05 && p.gr == 105.0 && p.k_eq == 80.0
        && s.cutoff_hz == 5.0;
}

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? fmt::format("line {}: {}", line, what) : what), line_(line)
{
}

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

struct Section {
    std::string name;
    int line = 0;
    std::map<std::string, Entry> entries;
};

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

const std::set<std::string, std::less<>> kSectionNames{
    "", "params", "excitation", "noise", "thresholds", "fault"};

std::vector<Section> tokenize(std::string_view text)
{
    std::vector<Section> sections{Section{"", 0, {}}};
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        const std::string_view line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ParseError(line_no, "unterminated section header");
            }
            const std::string name(trim(line.substr(1, line.size() - 2)));
            if (name.empty() || !kSectionNames.contains(name)) {
                throw ParseError(line_no, fmt::format("unknown section [{}]", name));
            }
            const bool repeatable = name == "fault";
            if (!repeatable) {
                for (const Section& s : sections) {
                    if (s.name == name) {
                        throw ParseError(line_no, fmt::format("duplicate section [{}]", name));
                    }
                }
            }
            sections.push_back(Section{name, line_no, {}});
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(line_no, "expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) {
            throw ParseError(line_no, "missing key");
        }
        auto [it, inserted] = sections.back().entries.emplace(key, Entry{value, line_no});
        if (!inserted) {
            throw ParseError(line_no, fmt::format("duplicate key '{}'", key));
        }
    }
    return sections;
}

void apply_override(std::vector<Section>& sections, const std::string& spec)
{
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
        throw ParseError(0, fmt::format("override '{}' is not key=value", spec));
    }
    const std::string path(trim(std::string_view(spec).substr(0, eq)));
    const std::string value(trim(std::string_view(spec).substr(eq + 1)));
    const auto dot = path.find('.');
    const std::string section = dot == std::string::npos ? "" : path.substr(0, dot);
    const std::string key = dot == std::string::npos ? path : path.substr(dot + 1);
    if (!kSectionNames.contains(section) || key.empty()) {
        throw ParseError(0, fmt::format("override '{}' names no known section", spec));
    }

    std::vector<Section*> matches;
    for (Section& s : sections) {
        if (s.name == section) matches.push_back(&s);
    }
    if (matches.size() > 1) {
        throw ParseError(0, fmt::format("override '{}' is ambiguous: several [{}] sections",
                                        spec, section));
    }
    if (matches.empty()) {
        sections.push_back(Section{section, 0, {}});
        matches.push_back(&sections.back());
    }
    matches.front()->entries[key] = Entry{value, 0};
}

/// Pulls typed values out of one section and rejects anything left over.
class Reader {
public:
    explicit Reader(Section& section) : section_(section) {}

    ~Reader() noexcept(false)
    {
        if (std::uncaught_exceptions() == 0 && !section_.entries.empty()) {
            const auto& [key, entry] = *section_.entries.begin();
            throw ParseError(entry.line, fmt::format("unknown key '{}'", qualified(key)));
        }
    }

    std::optional<Entry> take(const std::string& key)
    {
        auto it = section_.entries.find(key);
        if (it == section_.entries.end()) return std::nullopt;
        Entry e = it->second;
        section_.entries.erase(it);
        return e;
    }

    Entry require(const std::string& key)
    {
        auto e = take(key);
        if (!e) {
            throw ParseError(section_.line, fmt::format("missing key '{}'", qualified(key)));
        }
        return *e;
    }

    double number(const std::string& key) { return to_number(key, require(key)); }

    void number(const std::string& key, double& out)
    {
        if (auto e = take(key)) out = to_number(key, *e);
    }

    std::string qualified(const std::string& key) const
    {
        return section_.name.empty() ? key : section_.name + "." + key;
    }

    double to_number(const std::string& key, const Entry& e) const
    {
        double v = 0.0;
        const char* first = e.value.data();
        const char* last = first + e.value.size();
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) {
            throw ParseError(e.line, fmt::format("'{}' is not a number for '{}'", e.value,
                                                 qualified(key)));
        }
        return v;
    }

    std::uint64_t unsigned_integer(const std::string& key, const Entry& e) const
    {
        std::uint64_t v = 0;
        const char* first = e.value.data();
        const char* last = first + e.value.size();
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) {
            throw ParseError(e.line, fmt::format("'{}' is not an unsigned integer for '{}'",
                                                 e.value, qualified(key)));
        }
        return v;
    }

private:
    Section& section_;
};

void read_top(Section& section, Scenario& s)
{
    Reader r(section);
    if (auto e = r.take("label")) s.label = e->value;
    r.number("duration", s.duration);
    r.number("dt", s.dt);
    r.number("sensor_rate", s.sensor_rate);
    r.number("cutoff_hz", s.cutoff_hz);
    if (auto e = r.take("seed")) s.seed = r.unsigned_integer("seed", *e);
}

void read_params(Section& section, JointParams& p)
{
    Reader r(section);
    r.number("k1", p.k1);
    r.number("k2", p.k2);
    r.number("g1", p.g1);
    r.number("gr", p.gr);
    r.number("k_eq", p.k_eq);
    auto k_sea = r.take("k_sea");
    auto k_gear = r.take("k_gear");
    if (k_sea.has_value() != k_gear.has_value()) {
        const Entry& e = k_sea ? *k_sea : *k_gear;
        throw ParseError(e.line, "params.k_sea and params.k_gear must be given together");
    }
    if (k_sea) {
        p.k_sea = r.to_number("k_sea", *k_sea);
        p.k_gear = r.to_number("k_gear", *k_gear);
    } else {
        derive_series_stiffness(p);
    }
    r.number("j_gear", p.j_gear);
    r.number("b_gear", p.b_gear);
    r.number("j_load", p.j_load);
    r.number("k_t", p.k_t);
    r.number("k_e", p.k_e);
    r.number("r_motor", p.r_motor);
    r.number("l_motor", p.l_motor);
}

void read_excitation(Section& section, Excitation& e)
{
    Reader r(section);
    if (auto kind = r.take("kind")) {
        if (kind->value == "open_loop_voltage") {
            e.kind = ExcitationKind::open_loop_voltage;
        } else if (kind->value == "open_loop_current") {
            e.kind = ExcitationKind::open_loop_current;
        } else {
            throw ParseError(kind->line, fmt::format("unknown excitation kind '{}'", kind->value));
        }
    }
    r.number("amplitude", e.amplitude);
    r.number("frequency", e.frequency);
    r.number("offset", e.offset);
}

void read_noise(Section& section, NoiseSpec& n)
{
    Reader r(section);
    r.number("bandwidth", n.bandwidth);
    for (Channel c : kAllChannels) {
        r.number(fmt::format("std_{}", to_string(c)), n.std_per_channel[static_cast<std::size_t>(c)]);
    }
}

void read_thresholds(Section& section, Thresholds& th)
{
    Reader r(section);
    for (Constraint c : kAllConstraints) {
        r.number(std::string(to_string(c)), th.of(c));
    }
    r.number("settling", th.settling);
}

FaultSpec read_fault(Section& section)
{
    Reader r(section);
    FaultSpec f;
    const Entry channel = r.require("channel");
    if (auto c = parse_channel(channel.value)) {
        f.channel = *c;
    } else {
        throw ParseError(channel.line, fmt::format("unknown channel '{}'", channel.value));
    }
    const Entry kind = r.require("kind");
    if (auto k = parse_fault_kind(kind.value)) {
        f.kind = *k;
    } else {
        throw ParseError(kind.line, fmt::format("unknown fault kind '{}'", kind.value));
    }
    f.onset = r.number("onset");
    r.number("bias_magnitude", f.bias_magnitude);
    return f;
}

} // namespace

Scenario parse_scenario(std::string_view text, std::span<const std::string> overrides)
{
    std::vector<Section> sections = tokenize(text);
    for (const std::string& o : overrides) {
        apply_override(sections, o);
    }

    Scenario s;
    bool have_params = false;
    for (Section& section : sections) {
        if (section.name.empty()) {
            read_top(section, s);
        } else if (section.name == "params") {
            read_params(section, s.params);
            have_params = true;
        } else if (section.name == "excitation") {
            read_excitation(section, s.excitation);
        } else if (section.name == "noise") {
            read_noise(section, s.noise);
        } else if (section.name == "thresholds") {
            read_thresholds(section, s.thresholds);
        } else if (section.name == "fault") {
            s.faults.push_back(read_fault(section));
        }
    }
    if (!have_params) {
        derive_series_stiffness(s.params);
    }
    s.noise.seed = s.seed;
    validate(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path, std::span<const std::string> overrides)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open scenario file '{}'", path.string()));
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_scenario(buffer.str(), overrides);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), fmt::format("{}: {}", path.string(), e.what()));
    }
}

std::string to_text(const Scenario& s)
{
    std::string out;
    auto kv = [&out](std::string_view key, auto value) {
        out += fmt::format("{} = {}\n", key, value);
    };

    kv("label", s.label);
    kv("duration", s.duration);
    kv("dt", s.dt);
    kv("sensor_rate", s.sensor_rate);
    kv("cutoff_hz", s.cutoff_hz);
    kv("seed", s.seed);

    const JointParams& p = s.params;
    out += "\n[params]\n";
    kv("k1", p.k1);
    kv("k2", p.k2);
    kv("g1", p.g1);
    kv("gr", p.gr);
    kv("k_eq", p.k_eq);
    kv("k_sea", p.k_sea);
    kv("k_gear", p.k_gear);
    kv("j_gear", p.j_gear);
    kv("b_gear", p.b_gear);
    kv("j_load", p.j_load);
    kv("k_t", p.k_t);
    kv("k_e", p.k_e);
    kv("r_motor", p.r_motor);
    kv("l_motor", p.l_motor);

    out += "\n[excitation]\n";
    kv("kind", s.excitation.kind == ExcitationKind::open_loop_voltage ? "open_loop_voltage"
                                                                       : "open_loop_current");
    kv("amplitude", s.excitation.amplitude);
    kv("frequency", s.excitation.frequency);
    kv("offset", s.excitation.offset);

    out += "\n[noise]\n";
    kv("bandwidth", s.noise.bandwidth);
    for (Channel c : kAllChannels) {
        kv(fmt::format("std_{}", to_string(c)), s.noise.std_of(c));
    }

    out += "\n[thresholds]\n";
    for (Constraint c : kAllConstraints) {
        kv(to_string(c), s.thresholds.of(c));
    }
    kv("settling", s.thresholds.settling);

    for (const FaultSpec& f : s.faults) {
        out += "\n[fault]\n";
        kv("channel", to_string(f.channel));
        kv("kind", to_string(f.kind));
        kv("onset", f.onset);
        kv("bias_magnitude", f.bias_magnitude);
    }
    return out;
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write scenario file '{}'", path.string()));
    }
    out << to_text(scenario);
    if (!out) {
        throw std::runtime_error(fmt::format("write failed for '{}'", path.string()));
    }
}

} // namespace seadiag
