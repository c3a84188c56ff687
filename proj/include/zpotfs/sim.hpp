#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "zpotfs/channel.hpp"
#include "zpotfs/ep.hpp"
#include "zpotfs/frame.hpp"
#include "zpotfs/receiver.hpp"
#include "zpotfs/types.hpp"

namespace zpotfs {

enum class Scheme { proposed, ep, known_csi };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

struct ExperimentConfig {
    GridParams grid;
    std::vector<double> snr_db;
    int frames = 100;
    std::uint64_t base_seed = 1;
    Scheme scheme = Scheme::proposed;
    double nu_max_hz = 0.0;
    std::vector<PathSpec> profile = eva_profile();
    PilotConfig pilot;
    EpConfig ep;
    DetectorConfig detector;
    double omp_tol_factor = 0.1;
    int omp_max_taps = 0;    // 0 selects the default budget
    bool tx_only = false;    // PAPR runs skip the receiver
    bool pilot_only = false; // measure the pilot waveform alone (PAPR view)
    int workers = 1;
};

struct TrialRecord {
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::proposed;
    int m = 0;
    int n = 0;
    double snr_db = 0.0;
    double nmse1 = 0.0;
    double nmse2 = 0.0;
    double ber1 = 0.0;
    double ber2 = 0.0;
    double papr_db = 0.0;
    int support1 = 0;
    int support2 = 0;
    bool failed = false;
    std::string error;
};

// Per-trial stream seeds. The channel/noise stream depends only on
// (base_seed, snr_index, frame_index), so different schemes see identical
// channels and noise; the payload stream is split off separately because
// schemes draw different bit counts.
std::uint64_t trial_seed(std::uint64_t base_seed, int snr_index, int frame_index,
                         std::uint64_t stream_tag);
inline constexpr std::uint64_t kDataStream = 0xDA7A;
inline constexpr std::uint64_t kChannelStream = 0xC4A2;

TrialRecord run_trial(const ExperimentConfig& cfg, int snr_index, int frame_index);

// All (snr, frame) trials in deterministic order, fanned out over
// cfg.workers threads; the output is independent of the worker count.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg);

// CSV with "# key=value" metadata comments; fixed row schema
// seed,scheme,M,N,snr_db,nmse1,nmse2,ber1,ber2,papr_db,support1,support2.
// Failed trials become "# trial-error ..." comment lines.
void write_csv(std::ostream& os, const ExperimentConfig& cfg,
               const std::vector<TrialRecord>& records);
std::string csv_string(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records);

// Reproducibility metadata embedded in the CSV (worker count and timestamps
// deliberately excluded so identical configs give identical bytes).
std::vector<std::pair<std::string, std::string>> manifest_entries(const ExperimentConfig& cfg);

// Numerically stable streaming mean for the summary printouts.
struct Welford {
    long count = 0;
    double mean = 0.0;
    void add(double x) {
        ++count;
        mean += (x - mean) / static_cast<double>(count);
    }
};

int workers_from_env();

}  // namespace zpotfs
