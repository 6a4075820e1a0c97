#include "chirpim/metrics.hpp"

#include "chirpim/im_codec.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#ifndef CHIRPIM_VERSION
#define CHIRPIM_VERSION "0.0.0"
#endif

namespace chirpim {

namespace {

constexpr long kBatchFrames = 256; // stopping rule granularity (worker-independent)

struct TrialResult {
    int bit_errors = 0;
    bool frame_error = false;
    double body_power = 0.0;
};

std::vector<std::uint8_t> random_bits(RngStream& rng, int count) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(count));
    std::uint32_t word = 0;
    int have = 0;
    for (int i = 0; i < count; ++i) {
        if (have == 0) {
            word = rng.next_u32();
            have = 32;
        }
        bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(word & 1u);
        word >>= 1;
        --have;
    }
    return bits;
}

TrialResult run_trial(const LinkConfig& cfg, const Modem& modem, const PayloadLayout& layout,
                      const TdlProfile& profile, double noise_var, std::uint32_t point,
                      std::uint32_t trial) {
    RngStream bits_rng(cfg.master_seed, trial, RngStream::kBits, point);
    RngStream chan_rng(cfg.master_seed, trial, RngStream::kChannel, point);
    RngStream noise_rng(cfg.master_seed, trial, RngStream::kNoise, point);

    const auto bits = random_bits(bits_rng, layout.total_bits);
    const ImFrame frame = im_encode(bits, layout);
    TxFrame tx = modem.tx(frame);

    TrialResult res;
    res.body_power = tx.mean_body_power();

    ChannelRealization realization;
    if (cfg.channel == ChannelKind::Tdl) {
        realization = draw_tdl(profile, cfg.sample_rate(), cfg.n, chan_rng);
        tx = apply_channel(realization, tx);
    } else {
        realization = identity_channel(cfg.n);
    }
    awgn(std::span<cplx>(tx.samples), noise_var, noise_rng);

    ImFrame detected;
    if (cfg.scheme == Scheme::OfdmIm) {
        const auto bins = modem.extract_bins(tx);
        const auto chan_bins = modem.channel_at_bins(realization.freq_response);
        detected = ofdm_im_detect(bins, chan_bins, modem.nominal_amplitude(), cfg.h, cfg.l);
    } else {
        const SoftSymbols soft = modem.rx(tx, realization.freq_response, noise_var);
        detected = ml_detect(soft.y, cfg.h, cfg.l);
    }
    const auto decoded = im_decode(detected, layout);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] != decoded[i]) ++res.bit_errors;
    res.frame_error = res.bit_errors > 0;
    return res;
}

// Runs trials [first, first+count) into `out`, split across cfg.workers.
void run_batch(const LinkConfig& cfg, const Modem& modem, const PayloadLayout& layout,
               const TdlProfile& profile, double noise_var, std::uint32_t point, long first,
               long count, std::vector<TrialResult>& out) {
    const int workers = std::max(1, cfg.workers);
    if (workers == 1 || count < 2) {
        for (long i = 0; i < count; ++i)
            out[static_cast<std::size_t>(i)] =
                run_trial(cfg, modem, layout, profile, noise_var, point,
                          static_cast<std::uint32_t>(first + i));
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const long chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const long lo = w * chunk;
        const long hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi]() {
            for (long i = lo; i < hi; ++i)
                out[static_cast<std::size_t>(i)] =
                    run_trial(cfg, modem, layout, profile, noise_var, point,
                              static_cast<std::uint32_t>(first + i));
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace

const char* channel_kind_name(ChannelKind kind) {
    return kind == ChannelKind::Awgn ? "awgn" : "tdl";
}

void LinkConfig::validate() const {
    if (m < 2) throw std::domain_error("LinkConfig: need M >= 2");
    if (n < m) throw std::domain_error("LinkConfig: need N >= M");
    if (n_cp < 0 || n_cp > n) throw std::domain_error("LinkConfig: bad CP length");
    if (l < 1 || l >= m) throw std::domain_error("LinkConfig: need 1 <= l < M");
    if (h < 1 || (h & (h - 1)) != 0)
        throw std::domain_error("LinkConfig: H must be a power of two");
    if (!(ts_seconds > 0.0)) throw std::domain_error("LinkConfig: Ts must be positive");
    if (snr_grid_db.empty()) throw std::domain_error("LinkConfig: empty SNR grid");
    if (max_frames < 1) throw std::domain_error("LinkConfig: max_frames must be positive");
    if (target_errors < 1) throw std::domain_error("LinkConfig: target_errors must be positive");
    if (workers < 1) throw std::domain_error("LinkConfig: workers must be positive");
    const bool chirp_based =
        scheme == Scheme::ChirpSinusoidal || scheme == Scheme::ChirpLinear;
    if (chirp_based) {
        if (!(deviation > 0.0)) throw std::domain_error("LinkConfig: D must be positive");
        if (static_cast<double>(m) <= deviation)
            throw std::domain_error("LinkConfig: chirp schemes need M > D");
        const ChirpKind kind =
            scheme == Scheme::ChirpLinear ? ChirpKind::Linear : ChirpKind::Sinusoidal;
        const int m_ocb = occupied_bandwidth(ChirpSpec{kind, deviation, ts_seconds}, 0.99);
        if (m < m_ocb)
            throw std::domain_error("LinkConfig: M is below the chirp occupied bandwidth");
    }
    if (channel == ChannelKind::Tdl) {
        const TdlProfile p = effective_profile();
        p.validate();
        if (p.max_delay() > cp_duration())
            std::cerr << "warning: channel profile '" << p.name << "' max excess delay "
                      << p.max_delay() * 1e6 << " us exceeds the CP duration "
                      << cp_duration() * 1e6 << " us; residual ISI is simulated physically\n";
    }
}

TdlProfile LinkConfig::effective_profile() const {
    if (channel != ChannelKind::Tdl) return profile;
    return truncate_profile_to_cp ? profile.truncated(cp_duration()) : profile;
}

std::vector<CurvePoint> run_ber(const LinkConfig& cfg) {
    cfg.validate();
    const Modem modem(cfg.scheme, cfg.m, cfg.n, cfg.n_cp, cfg.deviation, cfg.ts_seconds,
                      cfg.h, cfg.l);
    const PayloadLayout layout = PayloadLayout::make(cfg.m, cfg.h, cfg.l);
    const TdlProfile profile = cfg.effective_profile();
    const double offset = ebn0_offset_db(layout.total_bits, cfg.n);

    std::vector<CurvePoint> points;
    points.reserve(cfg.snr_grid_db.size());
    std::vector<TrialResult> batch(static_cast<std::size_t>(kBatchFrames));
    for (std::size_t pi = 0; pi < cfg.snr_grid_db.size(); ++pi) {
        const double snr_db = cfg.snr_grid_db[pi];
        const double noise_var = snr_to_noisevar(snr_db);
        const auto t0 = std::chrono::steady_clock::now();

        CurvePoint pt;
        pt.snr_db = snr_db;
        pt.ebn0_db = snr_db + offset;
        double power_acc = 0.0;
        while (pt.frames < cfg.max_frames && pt.frame_errors < cfg.target_errors) {
            const long count = std::min(kBatchFrames, cfg.max_frames - pt.frames);
            run_batch(cfg, modem, layout, profile, noise_var,
                      static_cast<std::uint32_t>(pi), pt.frames, count, batch);
            for (long i = 0; i < count; ++i) {
                const auto& r = batch[static_cast<std::size_t>(i)];
                pt.bit_errors += r.bit_errors;
                pt.frame_errors += r.frame_error ? 1 : 0;
                power_acc += r.body_power;
            }
            pt.frames += count;
        }
        pt.bits = pt.frames * layout.total_bits;
        pt.ber = pt.bits > 0 ? static_cast<double>(pt.bit_errors) / static_cast<double>(pt.bits)
                             : 0.0;
        pt.bler = pt.frames > 0
                      ? static_cast<double>(pt.frame_errors) / static_cast<double>(pt.frames)
                      : 0.0;
        pt.mean_body_power = pt.frames > 0 ? power_acc / static_cast<double>(pt.frames) : 0.0;
        pt.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        points.push_back(pt);
    }
    return points;
}

double PmeprCcdf::max_db() const {
    return samples_db.empty() ? 0.0 : samples_db.back();
}

double PmeprCcdf::median_db() const {
    if (samples_db.empty()) return 0.0;
    const std::size_t n = samples_db.size();
    return n % 2 ? samples_db[n / 2] : 0.5 * (samples_db[n / 2 - 1] + samples_db[n / 2]);
}

double PmeprCcdf::ccdf_at(double threshold_db) const {
    if (samples_db.empty()) return 0.0;
    const auto it = std::upper_bound(samples_db.begin(), samples_db.end(), threshold_db);
    return static_cast<double>(samples_db.end() - it) / static_cast<double>(samples_db.size());
}

PmeprCcdf run_pmepr(const LinkConfig& cfg, long n_frames, int oversampling) {
    cfg.validate();
    if (n_frames < 1) throw std::domain_error("run_pmepr: need at least one frame");
    const Modem modem(cfg.scheme, cfg.m, cfg.n, cfg.n_cp, cfg.deviation, cfg.ts_seconds,
                      cfg.h, cfg.l);
    const PayloadLayout layout = PayloadLayout::make(cfg.m, cfg.h, cfg.l);
    const double ref = modem.reference_power(cfg.l);

    PmeprCcdf out;
    out.samples_db.resize(static_cast<std::size_t>(n_frames));
    const int workers = std::max(1, cfg.workers);
    std::vector<std::thread> pool;
    const long chunk = (n_frames + workers - 1) / workers;
    auto work = [&](long lo, long hi) {
        for (long f = lo; f < hi; ++f) {
            RngStream bits_rng(cfg.master_seed, static_cast<std::uint32_t>(f),
                               RngStream::kBits, 0);
            const auto bits = random_bits(bits_rng, layout.total_bits);
            const ImFrame frame = im_encode(bits, layout);
            const auto seq = modem.shaped_sequence(frame);
            out.samples_db[static_cast<std::size_t>(f)] = pmepr_db(seq, oversampling, ref);
        }
    };
    if (workers == 1) {
        work(0, n_frames);
    } else {
        for (int w = 0; w < workers; ++w) {
            const long lo = w * chunk;
            const long hi = std::min(n_frames, lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& t : pool) t.join();
    }
    std::sort(out.samples_db.begin(), out.samples_db.end());
    return out;
}

namespace {

std::string scheme_json(const LinkConfig& cfg) {
    nlohmann::json j;
    j["scheme"] = scheme_name(cfg.scheme);
    j["m"] = cfg.m;
    j["n"] = cfg.n;
    j["n_cp"] = cfg.n_cp;
    j["h"] = cfg.h;
    j["l"] = cfg.l;
    j["deviation"] = cfg.deviation;
    j["ts_seconds"] = cfg.ts_seconds;
    j["channel"] = channel_kind_name(cfg.channel);
    if (cfg.channel == ChannelKind::Tdl) {
        j["profile"] = cfg.profile.name;
        j["truncate_profile_to_cp"] = cfg.truncate_profile_to_cp;
    }
    j["snr_grid_db"] = cfg.snr_grid_db;
    j["max_frames"] = cfg.max_frames;
    j["target_errors"] = cfg.target_errors;
    j["master_seed"] = cfg.master_seed;
    return j.dump();
}

void write_header(std::ostringstream& os, const LinkConfig& cfg, bool with_time_header) {
    os << "# chirpim " << version_string() << '\n';
    if (with_time_header) {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[64];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        os << "# generated: " << buf << '\n';
    }
    os << "# config: " << scheme_json(cfg) << '\n';
    os << "# master_seed: " << cfg.master_seed << '\n';
    const PayloadLayout layout = PayloadLayout::make(cfg.m, cfg.h, cfg.l);
    os.precision(10);
    os << "# bits_per_frame: " << layout.total_bits << '\n';
    os << "# ebn0_offset_db: " << ebn0_offset_db(layout.total_bits, cfg.n) << '\n';
}

} // namespace

std::string config_json(const LinkConfig& cfg) { return scheme_json(cfg); }

const char* version_string() { return CHIRPIM_VERSION; }

std::string curve_csv(const LinkConfig& cfg, const std::vector<CurvePoint>& points,
                      bool with_time_header) {
    std::ostringstream os;
    write_header(os, cfg, with_time_header);
    os << "scheme,channel,l,snr_db,ebn0_db,frames,bits,frame_errors,bit_errors,bler,ber\n";
    os.precision(12);
    for (const auto& p : points) {
        os << scheme_name(cfg.scheme) << ',' << channel_kind_name(cfg.channel) << ','
           << cfg.l << ',' << p.snr_db << ',' << p.ebn0_db << ',' << p.frames << ','
           << p.bits << ',' << p.frame_errors << ',' << p.bit_errors << ',' << p.bler
           << ',' << p.ber << '\n';
    }
    return os.str();
}

std::string ccdf_csv(const LinkConfig& cfg, const PmeprCcdf& ccdf, bool with_time_header) {
    std::ostringstream os;
    write_header(os, cfg, with_time_header);
    os << "scheme,l,pmepr_db,ccdf\n";
    os.precision(12);
    const std::size_t n = ccdf.samples_db.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double c = static_cast<double>(n - 1 - i) / static_cast<double>(n);
        os << scheme_name(cfg.scheme) << ',' << cfg.l << ',' << ccdf.samples_db[i] << ','
           << c << '\n';
    }
    return os.str();
}

std::string curve_json(const LinkConfig& cfg, const std::vector<CurvePoint>& points) {
    nlohmann::json j;
    j["version"] = version_string();
    j["config"] = nlohmann::json::parse(scheme_json(cfg));
    auto& arr = j["points"] = nlohmann::json::array();
    for (const auto& p : points) {
        arr.push_back({{"snr_db", p.snr_db},
                       {"ebn0_db", p.ebn0_db},
                       {"frames", p.frames},
                       {"bits", p.bits},
                       {"frame_errors", p.frame_errors},
                       {"bit_errors", p.bit_errors},
                       {"bler", p.bler},
                       {"ber", p.ber},
                       {"wall_seconds", p.wall_seconds},
                       {"mean_body_power", p.mean_body_power}});
    }
    return j.dump(2);
}

std::string ccdf_json(const LinkConfig& cfg, const PmeprCcdf& ccdf) {
    nlohmann::json j;
    j["version"] = version_string();
    j["config"] = nlohmann::json::parse(scheme_json(cfg));
    j["pmepr_db"] = ccdf.samples_db;
    return j.dump(2);
}

} // namespace chirpim
