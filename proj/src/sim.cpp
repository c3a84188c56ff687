#include "zpotfs/sim.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include "zpotfs/metrics.hpp"
#include "zpotfs/version.hpp"
#include "zpotfs/zak.hpp"

namespace zpotfs {

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::proposed: return "proposed";
        case Scheme::ep: return "ep";
        case Scheme::known_csi: return "known-csi";
    }
    return "?";
}

Scheme scheme_from_string(const std::string& name) {
    if (name == "proposed") return Scheme::proposed;
    if (name == "ep") return Scheme::ep;
    if (name == "known-csi" || name == "known_csi") return Scheme::known_csi;
    throw std::invalid_argument("unknown scheme: " + name);
}

std::uint64_t trial_seed(std::uint64_t base_seed, int snr_index, int frame_index,
                         std::uint64_t stream_tag) {
    std::uint64_t s = splitmix64(base_seed ^ stream_tag);
    s = splitmix64(s + static_cast<std::uint64_t>(snr_index));
    return splitmix64(s + static_cast<std::uint64_t>(frame_index));
}

namespace {

BitVector random_bits(int count, Rng& rng) {
    BitVector bits(static_cast<std::size_t>(count));
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
    return bits;
}

double bit_error_rate(const BitVector& sent, const BitVector& decided) {
    if (sent.size() != decided.size() || sent.empty())
        throw std::invalid_argument("bit_error_rate: size mismatch");
    long errors = 0;
    for (std::size_t i = 0; i < sent.size(); ++i) errors += sent[i] != decided[i];
    return static_cast<double>(errors) / static_cast<double>(sent.size());
}

// Data symbols in frame fill order (column-major over the data rows).
BitVector dd_data_bits(const DDFrame& x_dd, const GridParams& p) {
    const int rows = p.data_rows();
    Eigen::VectorXcd symbols(static_cast<Eigen::Index>(rows) * p.n);
    for (int k = 0; k < p.n; ++k)
        for (int l = 0; l < rows; ++l)
            symbols(static_cast<Eigen::Index>(k) * rows + l) = x_dd(l, k);
    return qam4_demod(symbols);
}

BitVector ep_data_bits_of(const DDFrame& x_dd, const EpFrame& frame) {
    Eigen::VectorXcd symbols(static_cast<Eigen::Index>(frame.data_bins.size()));
    for (std::size_t i = 0; i < frame.data_bins.size(); ++i) {
        const auto [l, k] = frame.data_bins[i];
        symbols(static_cast<Eigen::Index>(i)) = x_dd(l, k);
    }
    return qam4_demod(symbols);
}

int nonzero_count(const ChannelVector& h) {
    int count = 0;
    for (Eigen::Index i = 0; i < h.size(); ++i)
        if (h(i) != cplx{0.0, 0.0}) ++count;
    return count;
}

}  // namespace

TrialRecord run_trial(const ExperimentConfig& cfg, int snr_index, int frame_index) {
    const GridParams& p = cfg.grid;
    TrialRecord rec;
    rec.scheme = cfg.scheme;
    rec.m = p.m;
    rec.n = p.n;
    rec.snr_db = cfg.snr_db.at(static_cast<std::size_t>(snr_index));
    rec.seed = trial_seed(cfg.base_seed, snr_index, frame_index, kChannelStream);

    try {
        Rng data_rng(trial_seed(cfg.base_seed, snr_index, frame_index, kDataStream));
        Rng chan_rng(rec.seed);

        const bool is_ep = cfg.scheme == Scheme::ep;
        BitVector bits;
        TimeVector s, s_p;
        EpFrame ep_frame;
        if (is_ep) {
            bits = random_bits(ep_data_bits(p, cfg.ep), data_rng);
            ep_frame = ep_build_frame(bits, p, cfg.ep);
            s = idzt(ep_frame.x, p);
            s_p = idzt(ep_frame.x_pilot, p);
        } else {
            bits = random_bits(data_bits_per_frame(p), data_rng);
            const TxFrame frame = assemble_frame(bits, p, cfg.pilot);
            s = idzt(frame.x, p);
            s_p = idzt(frame.x_pilot, p);
        }
        rec.papr_db = papr_db(cfg.pilot_only ? s_p : s);
        if (cfg.tx_only) return rec;

        const ChannelVector h = generate_sparse_channel(p, {cfg.profile, cfg.nu_max_hz}, chan_rng);
        const TimeVector faded = apply_channel(s, h, p);
        const auto [r, noise_var] = add_awgn(faded, rec.snr_db, chan_rng);

        switch (cfg.scheme) {
            case Scheme::proposed: {
                ReceiverConfig rx = default_receiver_config(p, noise_var);
                rx.detector = cfg.detector;
                rx.omp_step1.residual_tol_factor = cfg.omp_tol_factor;
                rx.omp_step2.residual_tol_factor = cfg.omp_tol_factor;
                if (cfg.omp_max_taps > 0) {
                    rx.omp_step1.max_taps = cfg.omp_max_taps;
                    rx.omp_step2.max_taps = cfg.omp_max_taps;
                }
                const ReceiverOutput out = run_receiver(r, s_p, p, rx);
                rec.nmse1 = nmse(out.h_step1, h);
                rec.nmse2 = nmse(out.h_step2, h);
                rec.ber1 = bit_error_rate(bits, dd_data_bits(out.x_dd_step1, p));
                rec.ber2 = bit_error_rate(bits, dd_data_bits(out.x_dd_final, p));
                rec.support1 = out.support_step1;
                rec.support2 = out.support_step2;
                break;
            }
            case Scheme::known_csi: {
                const TimeVector r_d = cancel_pilot(r, h, s_p, p);
                const MrcResult det = mrc_detect(r_d, h, p, cfg.detector);
                const double ber = bit_error_rate(bits, dd_data_bits(det.x_dd_hard, p));
                rec.ber1 = rec.ber2 = ber;
                rec.support1 = rec.support2 = nonzero_count(h);
                break;
            }
            case Scheme::ep: {
                const DDFrame y_dd = dzt(r, p);
                const ChannelVector h_hat = ep_estimate(y_dd, p, cfg.ep, noise_var);
                rec.nmse1 = rec.nmse2 = nmse(h_hat, h);
                rec.support1 = rec.support2 = nonzero_count(h_hat);
                const TimeVector r_d = cancel_pilot(r, h_hat, s_p, p);
                const MrcResult det = mrc_detect(r_d, h_hat, p, cfg.detector);
                const double ber = bit_error_rate(bits, ep_data_bits_of(det.x_dd_hard, ep_frame));
                rec.ber1 = rec.ber2 = ber;
                break;
            }
        }
    } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
    }
    return rec;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg) {
    cfg.grid.validate();
    if (cfg.frames < 1) throw std::invalid_argument("run_experiment: frames must be at least 1");
    if (cfg.snr_db.empty()) throw std::invalid_argument("run_experiment: SNR list is empty");

    const int total = static_cast<int>(cfg.snr_db.size()) * cfg.frames;
    std::vector<TrialRecord> records(static_cast<std::size_t>(total));
    const int workers = std::max(1, cfg.workers);

    std::atomic<int> next{0};
    auto work = [&]() {
        for (int t = next.fetch_add(1); t < total; t = next.fetch_add(1)) {
            const int snr_index = t / cfg.frames;
            const int frame_index = t % cfg.frames;
            records[static_cast<std::size_t>(t)] = run_trial(cfg, snr_index, frame_index);
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return records;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> manifest_entries(const ExperimentConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("version", std::string(kVersion));
    kv.emplace_back("rng", kRngName);
    kv.emplace_back("seed_split", "splitmix64(base^tag, snr_index, frame_index)");
    kv.emplace_back("scheme", to_string(cfg.scheme));
    kv.emplace_back("m", std::to_string(cfg.grid.m));
    kv.emplace_back("n", std::to_string(cfg.grid.n));
    kv.emplace_back("delta_f_hz", fmt(cfg.grid.delta_f));
    kv.emplace_back("fc_hz", fmt(cfg.grid.fc));
    kv.emplace_back("l_max", std::to_string(cfg.grid.l_max));
    kv.emplace_back("k_max", std::to_string(cfg.grid.k_max));
    kv.emplace_back("l_zp", std::to_string(cfg.grid.l_zp));
    kv.emplace_back("q", std::to_string(cfg.grid.q()));
    kv.emplace_back("t_s_s", fmt(cfg.grid.t_s()));
    kv.emplace_back("nu_max_hz", fmt(cfg.nu_max_hz));
    std::string snrs;
    for (double v : cfg.snr_db) {
        if (!snrs.empty()) snrs += ',';
        snrs += fmt(v);
    }
    kv.emplace_back("snr_db", snrs);
    kv.emplace_back("frames", std::to_string(cfg.frames));
    kv.emplace_back("seed", std::to_string(cfg.base_seed));
    kv.emplace_back("paths", std::to_string(cfg.profile.size()));
    kv.emplace_back("pilot_amplitude", fmt(cfg.pilot.pilot_amplitude));
    kv.emplace_back("zc_root", std::to_string(cfg.pilot.root));
    kv.emplace_back("ep_threshold_factor", fmt(cfg.ep.threshold_factor));
    kv.emplace_back("tx_only", cfg.tx_only ? "1" : "0");
    kv.emplace_back("pilot_only", cfg.pilot_only ? "1" : "0");
    return kv;
}

void write_csv(std::ostream& os, const ExperimentConfig& cfg,
               const std::vector<TrialRecord>& records) {
    for (const auto& [key, value] : manifest_entries(cfg))
        os << "# " << key << "=" << value << "\n";
    os << "seed,scheme,M,N,snr_db,nmse1,nmse2,ber1,ber2,papr_db,support1,support2\n";
    for (const auto& r : records) {
        if (r.failed) {
            os << "# trial-error seed=" << r.seed << " snr_db=" << fmt(r.snr_db)
               << " what=" << r.error << "\n";
            continue;
        }
        os << r.seed << ',' << to_string(r.scheme) << ',' << r.m << ',' << r.n << ','
           << fmt(r.snr_db) << ',' << fmt(r.nmse1) << ',' << fmt(r.nmse2) << ',' << fmt(r.ber1)
           << ',' << fmt(r.ber2) << ',' << fmt(r.papr_db) << ',' << r.support1 << ','
           << r.support2 << "\n";
    }
}

std::string csv_string(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records) {
    std::ostringstream os;
    write_csv(os, cfg, records);
    return os.str();
}

int workers_from_env() {
    const char* env = std::getenv("ZPOTFS_WORKERS");
    if (env == nullptr || *env == '\0') return 1;
    const int workers = std::atoi(env);
    if (workers < 1) throw std::invalid_argument("ZPOTFS_WORKERS must be a positive integer");
    return workers;
}

}  // namespace zpotfs
