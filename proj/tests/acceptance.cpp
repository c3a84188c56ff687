// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Sections are independent and use fixed seeds.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "zpotfs/config.hpp"
#include "zpotfs/dictionary.hpp"
#include "zpotfs/metrics.hpp"
#include "zpotfs/receiver.hpp"
#include "zpotfs/sim.hpp"
#include "zpotfs/zak.hpp"

using namespace zpotfs;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* f, auto... v) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, v...);
    return buf;
}

DDFrame random_frame(int m, int n, Rng& rng) {
    DDFrame x(m, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < m; ++l) x(l, k) = rng.cgauss();
    return x;
}

BitVector random_bits(int count, Rng& rng) {
    BitVector bits(static_cast<std::size_t>(count));
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
    return bits;
}

ChannelVector random_channel(const GridParams& p, int taps, Rng& rng) {
    ChannelVector h = ChannelVector::Zero(p.q());
    int placed = 0;
    while (placed < taps) {
        const int idx = static_cast<int>(rng.raw() % static_cast<std::uint64_t>(p.q()));
        if (h(idx) != cplx{0.0, 0.0}) continue;
        h(idx) = rng.cgauss();
        ++placed;
    }
    return h;
}

GridParams paper_grid(int m, int n) {
    const double nu = max_doppler_hz(4e9, 500.0);
    return make_grid(m, n, 15e3, 4e9, max_delay_bin(eva_profile(), m, 15e3),
                     max_doppler_bin(nu, n, 15e3));
}

ExperimentConfig sweep_config(int size, std::vector<double> snrs, int frames, std::uint64_t seed,
                              Scheme scheme) {
    ExperimentConfig cfg;
    cfg.grid = paper_grid(size, size);
    cfg.nu_max_hz = max_doppler_hz(4e9, 500.0);
    cfg.snr_db = std::move(snrs);
    cfg.frames = frames;
    cfg.base_seed = seed;
    cfg.scheme = scheme;
    cfg.workers = workers_from_env();
    return cfg;
}

// Percentile-bootstrap confidence interval for the mean of a sample.
std::pair<double, double> bootstrap_mean_ci(const std::vector<double>& sample, Rng& rng) {
    const int resamples = 2000;
    std::vector<double> means(resamples);
    for (int b = 0; b < resamples; ++b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < sample.size(); ++i)
            acc += sample[rng.raw() % sample.size()];
        means[b] = acc / static_cast<double>(sample.size());
    }
    std::sort(means.begin(), means.end());
    return {means[static_cast<int>(0.025 * resamples)], means[static_cast<int>(0.975 * resamples)]};
}

void criterion1_transforms() {
    Rng rng(101);
    double worst_roundtrip = 0.0, worst_oracle = 0.0;
    for (int size : {2, 4, 8, 16}) {
        const auto p = make_grid(size, size, 15e3, 4e9, 0, 0);
        const Eigen::MatrixXcd f = dft_matrix(size);
        Eigen::MatrixXcd kron = Eigen::MatrixXcd::Zero(p.frame_len(), p.frame_len());
        for (int a = 0; a < size; ++a)
            for (int b = 0; b < size; ++b)
                kron.block(a * size, b * size, size, size) =
                    std::conj(f(b, a)) * Eigen::MatrixXcd::Identity(size, size);
        for (int t = 0; t < 5; ++t) {
            const DDFrame x = random_frame(size, size, rng);
            const TimeVector s = idzt(x, p);
            worst_roundtrip = std::max(worst_roundtrip, (dzt(s, p) - x).cwiseAbs().maxCoeff());
            Eigen::VectorXcd vec_x(p.frame_len());
            for (int k = 0; k < size; ++k)
                for (int m = 0; m < size; ++m) vec_x(k * size + m) = x(m, k);
            worst_oracle =
                std::max(worst_oracle, (s - TimeVector(kron * vec_x)).cwiseAbs().maxCoeff());
        }
    }
    report(1, worst_roundtrip < 1e-12 && worst_oracle < 1e-12,
           "dzt(idzt) identity and Kronecker oracle, M,N in {2,4,8,16}",
           fmt("max roundtrip %.2e, max oracle %.2e", worst_roundtrip, worst_oracle));
}

void criterion2_channel_equivalence() {
    const auto p = make_grid(8, 8, 15e3, 4e9, 2, 3);
    Rng rng(202);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        TimeVector s(p.frame_len());
        for (int q = 0; q < p.frame_len(); ++q) s(q) = rng.cgauss();
        ChannelVector h(p.q());
        for (int i = 0; i < p.q(); ++i) h(i) = rng.cgauss();
        const TimeVector direct = apply_channel(s, h, p);
        const TimeVector dense = build_dense_H(h, p) * s;
        const TimeVector dict = build_dictionary(s, p).atoms * h;
        worst = std::max({worst, (direct - dense).cwiseAbs().maxCoeff(),
                          (direct - dict).cwiseAbs().maxCoeff()});
    }
    report(2, worst < 1e-10, "apply_channel vs dense matrix vs dictionary, 100 draws at M=N=8",
           fmt("max abs error %.2e", worst));
}

void criterion3_pilot_row_freedom() {
    const auto p = make_grid(8, 8, 15e3, 4e9, 2, 3);
    Rng rng(303);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const TxFrame f = assemble_frame(random_bits(data_bits_per_frame(p), rng), p, {});
        const ChannelVector h = random_channel(p, 1 + static_cast<int>(rng.raw() % 8), rng);
        const TimeVector r_data = apply_channel(idzt(f.x_data, p), h, p);
        for (int row : pilot_rows(p)) worst = std::max(worst, std::abs(r_data(row)));
    }
    report(3, worst < 1e-12, "pilot rows free of data interference, 100 frames",
           fmt("max |data leakage| %.2e", worst));
}

void criterion4_noiseless_recovery() {
    const auto p = paper_grid(32, 32);
    const double nu = max_doppler_hz(4e9, 500.0);
    int exact = 0;
    for (int t = 0; t < 100; ++t) {
        Rng rng(400 + t);
        const TxFrame f = assemble_frame(random_bits(data_bits_per_frame(p), rng), p, {});
        const ChannelVector h = generate_eva_jakes(p, nu, rng);
        const TimeVector r = apply_channel(idzt(f.x, p), h, p);
        const OmpResult est = step1_estimate(r, idzt(f.x_pilot, p), p, default_omp_config(p, 0.0));
        if (nmse(est.h_hat, h) >= 1e-10) continue;
        bool support_ok = true;
        for (int i = 0; i < p.q(); ++i) {
            const bool truly_on = std::abs(h(i)) > 1e-8;
            const bool estimated_on = std::abs(est.h_hat(i)) > 1e-8;
            if (truly_on != estimated_on) support_ok = false;
        }
        exact += support_ok;
    }
    report(4, exact >= 99, "noiseless step-1 exact recovery of EVA channels at M=N=32",
           fmt("%d/100 trials exact (support and gains, NMSE < 1e-10)", exact));
}

void criterion5_step_ordering() {
    const std::vector<double> snrs = {10.0, 15.0, 20.0};
    const auto cfg = sweep_config(32, snrs, 500, 500, Scheme::proposed);
    const auto records = run_experiment(cfg);
    Rng boot_rng(505);
    bool pass = true;
    std::string detail;
    for (double snr : snrs) {
        std::vector<double> diff;
        Welford m1, m2;
        for (const auto& rec : records) {
            if (rec.failed || rec.snr_db != snr) continue;
            diff.push_back(rec.nmse1 - rec.nmse2);
            m1.add(rec.nmse1);
            m2.add(rec.nmse2);
        }
        const auto [lo, hi] = bootstrap_mean_ci(diff, boot_rng);
        const bool point_ok = m2.mean < m1.mean && lo > 0.0;
        pass = pass && point_ok;
        detail += fmt("%g dB: %.3g vs %.3g, CI[%.2g,%.2g]; ", snr, m1.mean, m2.mean, lo, hi);
    }
    report(5, pass, "step-2 NMSE below step-1 at 10/15/20 dB with bootstrap CI", detail);
}

void criterion6_ep_crossover() {
    const std::vector<double> snrs = {0.0, 5.0, 15.0, 20.0};
    const auto base = sweep_config(32, snrs, 500, 600, Scheme::proposed);
    const auto prop = run_experiment(base);
    auto ep_cfg = base;
    ep_cfg.scheme = Scheme::ep;
    const auto ep = run_experiment(ep_cfg);

    // The exact crossover SNR is not asserted, only the sign flip between the
    // low region (0-5 dB) and the high region (15+ dB).
    std::string detail;
    Welford low_step2, low_ep, high_step2, high_ep;
    for (std::size_t s = 0; s < snrs.size(); ++s) {
        Welford step2, baseline;
        for (std::size_t i = 0; i < prop.size(); ++i) {
            if (prop[i].snr_db != snrs[s] || prop[i].failed || ep[i].failed) continue;
            step2.add(prop[i].nmse2);
            baseline.add(ep[i].nmse1);
        }
        if (snrs[s] <= 5.0) {
            low_step2.add(step2.mean);
            low_ep.add(baseline.mean);
        } else {
            high_step2.add(step2.mean);
            high_ep.add(baseline.mean);
        }
        detail += fmt("%g dB: step2 %.3g, ep %.3g; ", snrs[s], step2.mean, baseline.mean);
    }
    const bool pass = low_step2.mean > low_ep.mean && high_step2.mean < high_ep.mean;
    detail += fmt("regions: low %.3g vs %.3g, high %.3g vs %.3g", low_step2.mean, low_ep.mean,
                  high_step2.mean, high_ep.mean);
    report(6, pass, "EP crossover sign flip: worse than EP over 0-5 dB, better over 15+ dB",
           detail);
}

void criterion7_ber_behavior() {
    // 60 frames x 1920 bits = 115200 information bits.
    const auto cfg = sweep_config(32, {15.0}, 60, 700, Scheme::proposed);
    const auto prop = run_experiment(cfg);
    auto known_cfg = cfg;
    known_cfg.scheme = Scheme::known_csi;
    const auto known = run_experiment(known_cfg);

    Welford b1, b2, bc;
    for (std::size_t i = 0; i < prop.size(); ++i) {
        if (prop[i].failed || known[i].failed) continue;
        b1.add(prop[i].ber1);
        b2.add(prop[i].ber2);
        bc.add(known[i].ber1);
    }
    const bool pass = bc.mean <= b2.mean && b2.mean <= 2.0 * bc.mean && b2.mean <= b1.mean;
    report(7, pass, "BER at 15 dB: known-CSI <= step2 <= 2x known-CSI and step2 <= step1",
           fmt("step1 %.3g, step2 %.3g, known-CSI %.3g over %ld bits", b1.mean, b2.mean, bc.mean,
               b1.count * 1920L));
}

void criterion8_papr() {
    auto papr_level = [](int size, Scheme scheme) {
        auto cfg = sweep_config(size, {15.0}, 2000, 800, scheme);
        cfg.tx_only = true;
        std::vector<double> values;
        for (const auto& rec : run_experiment(cfg))
            if (!rec.failed) values.push_back(rec.papr_db);
        return ccdf_level(values, 1e-2);
    };
    const double prop64 = papr_level(64, Scheme::proposed);
    const double ep64 = papr_level(64, Scheme::ep);
    const double prop32 = papr_level(32, Scheme::proposed);
    const bool gap_ok = prop64 <= ep64 - 3.0;
    const bool stable_ok = std::abs(prop64 - prop32) <= 1.5;
    report(8, gap_ok && stable_ok,
           "PAPR at CCDF 1e-2: proposed 3 dB below EP; stable between 32x32 and 64x64",
           fmt("proposed64 %.2f dB, ep64 %.2f dB (gap %.2f), proposed32 %.2f dB (drift %.2f)",
               prop64, ep64, ep64 - prop64, prop32, std::abs(prop64 - prop32)));
}

void criterion9_overhead() {
    bool pass = true;
    std::string detail;
    for (int size : {16, 32, 64, 128}) {
        const auto p = paper_grid(size, size);
        const long proposed = overhead_proposed(p);
        if (proposed != static_cast<long>(p.l_max + 1) * p.n) pass = false;

        // Oracle: count the pilot bins actually occupied in an assembled frame.
        if (size <= 64) {
            Rng rng(900 + size);
            const TxFrame f = assemble_frame(random_bits(data_bits_per_frame(p), rng), p, {});
            long occupied = 0;
            for (int k = 0; k < p.n; ++k)
                for (int l = 0; l < p.m; ++l) occupied += f.x_pilot(l, k) != cplx{0.0, 0.0};
            if (occupied != proposed) pass = false;
        }

        // The EP scheme deployed in the zero-padded system spends the ZP rows
        // plus its guard box; the proposed design reuses the ZP rows and
        // spends nothing more.
        const long ep_total = proposed + overhead_ep(p);
        if (proposed >= ep_total) pass = false;
        detail += fmt("%d: %ld vs %ld; ", size, proposed, ep_total);
    }
    report(9, pass, "overhead: (l_max+1)*N exact and below the EP total per grid", detail);
}

void criterion10_determinism() {
    auto cfg = sweep_config(16, {10.0, 20.0}, 8, 1000, Scheme::proposed);
    cfg.workers = 1;
    const std::string first = csv_string(cfg, run_experiment(cfg));
    const std::string second = csv_string(cfg, run_experiment(cfg));
    cfg.workers = 4;
    const std::string parallel = csv_string(cfg, run_experiment(cfg));
    report(10, first == second && first == parallel,
           "byte-identical CSV across reruns and worker counts {1,4}",
           fmt("%zu bytes, rerun %s, 4 workers %s", first.size(),
               first == second ? "identical" : "differs",
               first == parallel ? "identical" : "differs"));
}

}  // namespace

int main() {
    criterion1_transforms();
    criterion2_channel_equivalence();
    criterion3_pilot_row_freedom();
    criterion4_noiseless_recovery();
    criterion5_step_ordering();
    criterion6_ep_crossover();
    criterion7_ber_behavior();
    criterion8_papr();
    criterion9_overhead();
    criterion10_determinism();
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
