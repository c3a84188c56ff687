#include "zpotfs/channel.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace zpotfs {

namespace {
constexpr double kSpeedOfLight = 2.9979e8;  // m/s
}

LkPair index_to_lk(int i, const GridParams& p) {
    if (i < 1 || i > p.q())
        throw std::invalid_argument("index_to_lk: index outside 1..Q");
    const int span = p.l_max + 1;
    const int l = (i - 1) % span;
    const int fold = (i - 1) / span;
    const int k = fold <= p.k_max ? fold : fold - (2 * p.k_max + 1);
    return {l, k};
}

int lk_to_index(int l, int k, const GridParams& p) {
    if (l < 0 || l > p.l_max)
        throw std::invalid_argument("lk_to_index: delay bin outside 0..l_max");
    if (k < -p.k_max || k > p.k_max)
        throw std::invalid_argument("lk_to_index: Doppler bin outside -k_max..k_max");
    const int fold = k >= 0 ? k : k + (2 * p.k_max + 1);
    return fold * (p.l_max + 1) + l + 1;
}

const std::vector<PathSpec>& eva_profile() {
    static const std::vector<PathSpec> eva = {
        {0.0, 0.0},     {30.0, -1.5},   {150.0, -1.4},
        {310.0, -3.6},  {370.0, -0.6},  {710.0, -9.1},
        {1090.0, -7.0}, {1730.0, -12.0}, {2510.0, -16.9},
    };
    return eva;
}

std::vector<PathSpec> load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_profile: cannot open " + path);
    std::vector<PathSpec> profile;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double delay_ns = 0.0, power_db = 0.0;
        if (ls >> delay_ns >> power_db) profile.push_back({delay_ns, power_db});
    }
    if (profile.empty())
        throw std::runtime_error("load_profile: no paths in " + path);
    return profile;
}

double max_doppler_hz(double fc_hz, double speed_kmh) {
    return fc_hz * (speed_kmh / 3.6) / kSpeedOfLight;
}

int max_delay_bin(const std::vector<PathSpec>& profile, int m, double delta_f) {
    int l = 0;
    for (const auto& path : profile)
        l = std::max(l, static_cast<int>(std::lround(path.delay_ns * 1e-9 * m * delta_f)));
    return l;
}

int max_doppler_bin(double nu_max_hz, int n, double delta_f) {
    return static_cast<int>(std::lround(nu_max_hz * n / delta_f));
}

ChannelVector generate_sparse_channel(const GridParams& p, const ChannelModel& model, Rng& rng) {
    if (model.profile.empty())
        throw std::invalid_argument("generate_sparse_channel: empty profile");
    double total = 0.0;
    for (const auto& path : model.profile) total += std::pow(10.0, path.power_db / 10.0);

    ChannelVector h = ChannelVector::Zero(p.q());
    for (const auto& path : model.profile) {
        const double var = std::pow(10.0, path.power_db / 10.0) / total;
        const cplx gain = std::sqrt(var) * rng.cgauss();
        const double theta = rng.angle();
        const int l = static_cast<int>(std::lround(path.delay_ns * 1e-9 * p.m * p.delta_f));
        const int k = static_cast<int>(
            std::lround(model.nu_max_hz * std::cos(theta) * p.n / p.delta_f));
        if (l > p.l_max)
            throw std::invalid_argument("generate_sparse_channel: path delay exceeds l_max");
        if (std::abs(k) > p.k_max)
            throw std::invalid_argument("generate_sparse_channel: path Doppler exceeds k_max");
        h(lk_to_index(l, k, p) - 1) += gain;
    }
    return h;
}

ChannelVector generate_eva_jakes(const GridParams& p, double nu_max_hz, Rng& rng) {
    return generate_sparse_channel(p, {eva_profile(), nu_max_hz}, rng);
}

Eigen::VectorXcd unit_root_table(int mn) {
    Eigen::VectorXcd z(mn);
    for (int t = 0; t < mn; ++t) {
        const double arg = 2.0 * std::numbers::pi * t / mn;
        z(t) = cplx{std::cos(arg), std::sin(arg)};
    }
    return z;
}

TimeVector apply_channel(const Eigen::Ref<const TimeVector>& s,
                         const Eigen::Ref<const ChannelVector>& h, const GridParams& p) {
    const int mn = p.frame_len();
    if (s.size() != mn) throw std::invalid_argument("apply_channel: sample count mismatch");
    if (h.size() != p.q()) throw std::invalid_argument("apply_channel: channel vector length mismatch");

    const Eigen::VectorXcd z = unit_root_table(mn);
    TimeVector r = TimeVector::Zero(mn);
    for (int i = 1; i <= p.q(); ++i) {
        const cplx gain = h(i - 1);
        if (gain == cplx{0.0, 0.0}) continue;
        const auto [l, k] = index_to_lk(i, p);
        for (int q = 0; q < mn; ++q) {
            const int src = mod_index(q - l, mn);
            r(q) += gain * z(mod_index(static_cast<long long>(k) * (q - l), mn)) * s(src);
        }
    }
    return r;
}

Eigen::MatrixXcd build_dense_H(const Eigen::Ref<const ChannelVector>& h, const GridParams& p,
                               int size_cap) {
    const int mn = p.frame_len();
    if (mn > size_cap)
        throw std::length_error("build_dense_H: frame length exceeds the size cap");
    if (h.size() != p.q()) throw std::invalid_argument("build_dense_H: channel vector length mismatch");

    const Eigen::VectorXcd z = unit_root_table(mn);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(mn, mn);
    for (int i = 1; i <= p.q(); ++i) {
        const cplx gain = h(i - 1);
        if (gain == cplx{0.0, 0.0}) continue;
        const auto [l, k] = index_to_lk(i, p);
        // Row q of Pi^l Delta^k picks column (q - l) mod mn with weight z^{k (q - l)}.
        for (int q = 0; q < mn; ++q) {
            const int col = mod_index(q - l, mn);
            H(q, col) += gain * z(mod_index(static_cast<long long>(k) * (q - l), mn));
        }
    }
    return H;
}

std::pair<TimeVector, double> add_awgn(const Eigen::Ref<const TimeVector>& r, double snr_db,
                                       Rng& rng) {
    if (std::isinf(snr_db) && snr_db > 0.0) return {r, 0.0};
    const double variance = std::pow(10.0, -snr_db / 10.0);
    const double scale = std::sqrt(variance);
    TimeVector out(r.size());
    for (Eigen::Index q = 0; q < r.size(); ++q) out(q) = r(q) + scale * rng.cgauss();
    return {out, variance};
}

}  // namespace zpotfs
