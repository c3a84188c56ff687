#include "zpotfs/config.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "zpotfs/version.hpp"

namespace zpotfs {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    auto end = s.find_last_not_of(" \t\r");
    return begin == std::string::npos ? std::string() : s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    if (value == "inf" || value == "+inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("config key '" + key + "': not a number: " + value);
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("config key '" + key + "': not an integer: " + value);
    }
}

std::vector<double> parse_snr_list(const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double("snr_db", item));
    }
    if (out.empty()) throw std::invalid_argument("config key 'snr_db': empty list");
    return out;
}

const std::vector<std::string> kKnownKeys = {
    "preset",    "m",        "n",       "delta_f_khz", "fc_ghz",  "speed_kmh",
    "snr_db",    "frames",   "seed",    "scheme",      "out",     "profile",
    "l_max",     "k_max",    "l_zp",    "q",           "nu_max_hz", "pilot_only",
};

}  // namespace

KeyValues read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    KeyValues kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected key=value");
        kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return kv;
}

KeyValues preset_values(const std::string& name) {
    if (name == "paper-fig2")
        return {{"m", "64"},         {"n", "64"},     {"delta_f_khz", "15"},
                {"fc_ghz", "4"},     {"speed_kmh", "500"},
                {"snr_db", "0,5,10,15,20"}, {"frames", "200"}};
    if (name == "paper-fig3")
        return {{"m", "64"},         {"n", "64"},     {"delta_f_khz", "15"},
                {"fc_ghz", "4"},     {"speed_kmh", "500"},
                {"snr_db", "15"},    {"frames", "2000"}};
    throw std::invalid_argument("unknown preset: " + name);
}

std::string RunManifest::to_text() const {
    std::ostringstream os;
    os << "# zpotfs run manifest (resolves back to the same experiment)\n";
    if (!timestamp.empty()) os << "# generated " << timestamp << "\n";
    for (const auto& [key, value] : entries) os << key << "=" << value << "\n";
    return os.str();
}

ResolvedConfig resolve_config(const KeyValues& file_kv, const KeyValues& flag_kv) {
    // Defaults mirror the paper's operating point.
    std::map<std::string, std::string> kv = {
        {"m", "64"},           {"n", "64"},      {"delta_f_khz", "15"},
        {"fc_ghz", "4"},       {"speed_kmh", "500"}, {"snr_db", "0,5,10,15,20"},
        {"frames", "100"},     {"seed", "1"},    {"scheme", "proposed"},
        {"out", ""},           {"profile", ""},
    };

    // preset < file < flags; a preset named in either source applies first.
    std::string preset;
    for (const auto& [key, value] : file_kv)
        if (key == "preset") preset = value;
    for (const auto& [key, value] : flag_kv)
        if (key == "preset") preset = value;
    if (!preset.empty())
        for (const auto& [key, value] : preset_values(preset)) kv[key] = value;
    for (const auto& source : {file_kv, flag_kv}) {
        for (const auto& [key, value] : source) {
            if (key == "preset") continue;
            if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
                throw std::invalid_argument("unknown config key: " + key);
            kv[key] = value;
        }
    }

    ResolvedConfig rc;
    ExperimentConfig& cfg = rc.experiment;

    const int m = static_cast<int>(parse_long("m", kv["m"]));
    const int n = static_cast<int>(parse_long("n", kv["n"]));
    const double delta_f = parse_double("delta_f_khz", kv["delta_f_khz"]) * 1e3;
    const double fc = parse_double("fc_ghz", kv["fc_ghz"]) * 1e9;
    const double speed = parse_double("speed_kmh", kv["speed_kmh"]);

    if (!kv["profile"].empty()) cfg.profile = load_profile(kv["profile"]);
    cfg.nu_max_hz = max_doppler_hz(fc, speed);
    const int l_max = max_delay_bin(cfg.profile, m, delta_f);
    const int k_max = max_doppler_bin(cfg.nu_max_hz, n, delta_f);
    cfg.grid = make_grid(m, n, delta_f, fc, l_max, k_max);

    // A manifest round trip carries the derived values; reject edits that
    // contradict the physics they were derived from.
    const std::map<std::string, long> derived = {
        {"l_max", l_max}, {"k_max", k_max}, {"l_zp", l_max + 1}, {"q", cfg.grid.q()}};
    for (const auto& [key, expect] : derived) {
        if (!kv.count(key) || kv[key].empty()) continue;
        if (parse_long(key, kv[key]) != expect)
            throw std::invalid_argument("config key '" + key + "': inconsistent with derived value " +
                                        std::to_string(expect));
    }
    if (kv.count("nu_max_hz") && !kv["nu_max_hz"].empty()) {
        if (std::abs(parse_double("nu_max_hz", kv["nu_max_hz"]) - cfg.nu_max_hz) >
            1e-6 * std::max(1.0, cfg.nu_max_hz))
            throw std::invalid_argument("config key 'nu_max_hz': inconsistent with fc and speed");
    }

    cfg.snr_db = parse_snr_list(kv["snr_db"]);
    cfg.frames = static_cast<int>(parse_long("frames", kv["frames"]));
    if (cfg.frames < 1) throw std::invalid_argument("config key 'frames': must be >= 1");
    cfg.base_seed = static_cast<std::uint64_t>(parse_long("seed", kv["seed"]));
    cfg.scheme = scheme_from_string(kv["scheme"]);
    if (kv.count("pilot_only") && !kv["pilot_only"].empty())
        cfg.pilot_only = parse_long("pilot_only", kv["pilot_only"]) != 0;
    cfg.workers = workers_from_env();
    rc.out_path = kv["out"];

    RunManifest& manifest = rc.manifest;
    manifest.entries = {
        {"m", kv["m"]},
        {"n", kv["n"]},
        {"delta_f_khz", kv["delta_f_khz"]},
        {"fc_ghz", kv["fc_ghz"]},
        {"speed_kmh", kv["speed_kmh"]},
        {"snr_db", kv["snr_db"]},
        {"frames", kv["frames"]},
        {"seed", kv["seed"]},
        {"scheme", kv["scheme"]},
        {"profile", kv["profile"]},
        {"pilot_only", cfg.pilot_only ? "1" : "0"},
        {"l_max", std::to_string(l_max)},
        {"k_max", std::to_string(k_max)},
        {"l_zp", std::to_string(l_max + 1)},
        {"q", std::to_string(cfg.grid.q())},
    };
    {
        std::ostringstream nu;
        nu.precision(12);
        nu << cfg.nu_max_hz;
        manifest.entries.emplace_back("nu_max_hz", nu.str());
    }
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char ts[32];
    std::strftime(ts, sizeof(ts), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    manifest.timestamp = ts;
    return rc;
}

}  // namespace zpotfs
