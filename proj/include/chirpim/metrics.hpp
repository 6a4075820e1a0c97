#ifndef CHIRPIM_METRICS_HPP
#define CHIRPIM_METRICS_HPP

#include "chirpim/channel.hpp"
#include "chirpim/modem.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace chirpim {

enum class ChannelKind { Awgn, Tdl };

const char* channel_kind_name(ChannelKind kind);

/// Full description of one link experiment.
struct LinkConfig {
    Scheme scheme = Scheme::ChirpSinusoidal;
    int m = 384;
    int n = 512;
    int n_cp = 72;
    int h = 4;
    int l = 2;
    double deviation = 300.0;     // D, cycles per symbol
    double ts_seconds = 16.67e-6; // symbol duration
    ChannelKind channel = ChannelKind::Awgn;
    TdlProfile profile;           // used when channel == Tdl
    bool truncate_profile_to_cp = false;
    std::vector<double> snr_grid_db;
    long max_frames = 10000;
    long target_errors = 200; // frame errors per point
    std::uint64_t master_seed = 1;
    int workers = 1;

    double sample_rate() const { return static_cast<double>(n) / ts_seconds; }
    double cp_duration() const { return static_cast<double>(n_cp) / sample_rate(); }
    /// Throws on invariant violations; prints a warning when the fading
    /// profile outlasts the cyclic prefix (the run proceeds, ISI is physical).
    void validate() const;
    /// Profile after the optional CP truncation toggle.
    TdlProfile effective_profile() const;
};

/// One point of a BER/BLER curve.
struct CurvePoint {
    double snr_db = 0.0;
    double ebn0_db = 0.0;
    long frames = 0;
    long bits = 0;
    long frame_errors = 0;
    long bit_errors = 0;
    double ber = 0.0;
    double bler = 0.0;
    double wall_seconds = 0.0;
    double mean_body_power = 0.0; // energy-accounting check
};

/// Monte Carlo error-rate sweep over the configured SNR grid. For each point
/// frames are simulated in fixed-size batches until target_errors frame
/// errors or max_frames; the stopping rule is evaluated only at batch
/// boundaries and every trial owns counter-based RNG streams keyed by
/// (master_seed, trial, purpose, point), so results are identical for any
/// worker count.
std::vector<CurvePoint> run_ber(const LinkConfig& cfg);

/// Empirical PMEPR distribution over random frames.
struct PmeprCcdf {
    std::vector<double> samples_db; // sorted ascending
    double max_db() const;
    double median_db() const;
    /// P(PMEPR > threshold)
    double ccdf_at(double threshold_db) const;
};

PmeprCcdf run_pmepr(const LinkConfig& cfg, long n_frames, int oversampling);

/// Report artifacts. CSV columns are fixed:
/// scheme,channel,l,snr_db,ebn0_db,frames,bits,frame_errors,bit_errors,bler,ber
/// The header comment block echoes the config, seed and version; the
/// timestamp line can be suppressed so repeated runs are byte-identical.
std::string curve_csv(const LinkConfig& cfg, const std::vector<CurvePoint>& points,
                      bool with_time_header);
std::string ccdf_csv(const LinkConfig& cfg, const PmeprCcdf& ccdf, bool with_time_header);
std::string curve_json(const LinkConfig& cfg, const std::vector<CurvePoint>& points);
std::string ccdf_json(const LinkConfig& cfg, const PmeprCcdf& ccdf);

/// Config echo used by every report header (single JSON line).
std::string config_json(const LinkConfig& cfg);

/// Library version string embedded in report headers.
const char* version_string();

} // namespace chirpim

#endif
