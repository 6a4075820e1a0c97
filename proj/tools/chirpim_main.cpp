// chirpim: command-line front end for the chirp index-modulation link
// simulator. Every verb emits CSV (or a JSON mirror) with a comment header
// echoing the full configuration and seed, so each artifact is reproducible
// from its own header.
#include "chirpim/channel.hpp"
#include "chirpim/chirp_spectrum.hpp"
#include "chirpim/im_codec.hpp"
#include "chirpim/metrics.hpp"
#include "chirpim/modem.hpp"
#include "chirpim/sequences.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace chirpim;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

Scheme parse_scheme(const std::string& name) {
    if (name == "chirp-sinusoidal") return Scheme::ChirpSinusoidal;
    if (name == "chirp-linear") return Scheme::ChirpLinear;
    if (name == "dfts-ofdm-im") return Scheme::DftsOfdmIm;
    if (name == "ofdm-im") return Scheme::OfdmIm;
    throw std::domain_error("unknown scheme '" + name + "'");
}

ChirpKind parse_chirp_kind(const std::string& name) {
    if (name == "linear") return ChirpKind::Linear;
    if (name == "sinusoidal") return ChirpKind::Sinusoidal;
    throw std::domain_error("unknown chirp kind '" + name + "'");
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (item.key() == k) ok = true;
        if (!ok)
            throw std::domain_error("unknown key '" + item.key() + "' in " + where);
    }
}

// Config file section -> LinkConfig. Unknown keys are rejected so typos never
// silently fall back to defaults.
void apply_config_file(const std::string& path, LinkConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::domain_error("config parse error in '" + path + "': " + e.what());
    }
    reject_unknown_keys(j,
                        {"scheme", "m", "n", "n_cp", "h", "l", "deviation", "ts_us",
                         "channel", "snr_grid_db", "max_frames", "target_errors",
                         "master_seed", "workers"},
                        path);
    if (j.contains("scheme")) cfg.scheme = parse_scheme(j["scheme"].get<std::string>());
    if (j.contains("m")) cfg.m = j["m"].get<int>();
    if (j.contains("n")) cfg.n = j["n"].get<int>();
    if (j.contains("n_cp")) cfg.n_cp = j["n_cp"].get<int>();
    if (j.contains("h")) cfg.h = j["h"].get<int>();
    if (j.contains("l")) cfg.l = j["l"].get<int>();
    if (j.contains("deviation")) cfg.deviation = j["deviation"].get<double>();
    if (j.contains("ts_us")) cfg.ts_seconds = j["ts_us"].get<double>() * 1e-6;
    if (j.contains("snr_grid_db")) cfg.snr_grid_db = j["snr_grid_db"].get<std::vector<double>>();
    if (j.contains("max_frames")) cfg.max_frames = j["max_frames"].get<long>();
    if (j.contains("target_errors")) cfg.target_errors = j["target_errors"].get<long>();
    if (j.contains("master_seed")) cfg.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
    if (j.contains("channel")) {
        const json& c = j["channel"];
        reject_unknown_keys(c, {"type", "profile", "truncate_to_cp", "name", "delays_ns",
                                "powers_db"},
                            path + " channel section");
        const std::string type = c.value("type", "awgn");
        if (type == "awgn") {
            cfg.channel = ChannelKind::Awgn;
        } else if (type == "tdl") {
            cfg.channel = ChannelKind::Tdl;
            if (c.contains("delays_ns")) {
                TdlProfile p;
                p.name = c.value("name", "custom");
                for (const double d : c["delays_ns"].get<std::vector<double>>())
                    p.delays_s.push_back(d * 1e-9);
                p.powers_db = c["powers_db"].get<std::vector<double>>();
                cfg.profile = p;
            } else {
                const std::string prof = c.value("profile", "eva");
                if (prof != "eva")
                    throw std::domain_error("unknown built-in profile '" + prof + "'");
                cfg.profile = eva_profile();
            }
            cfg.truncate_profile_to_cp = c.value("truncate_to_cp", false);
        } else {
            throw std::domain_error("unknown channel type '" + type + "'");
        }
    }
}

struct CommonOpts {
    std::string config_path;
    std::string output_path;
    std::string format = "csv";
    bool no_header_time = false;

    std::string scheme;
    std::string channel;
    std::optional<int> m, n, n_cp, h, l, workers;
    std::optional<double> deviation, ts_us;
    std::vector<double> snr;
    std::optional<long> max_frames, target_errors;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--config", o.config_path, "JSON experiment file");
    sub->add_option("--output", o.output_path, "write to file instead of stdout");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--no-header-time", o.no_header_time,
                  "omit the timestamp header line (byte-identical reruns)");
    sub->add_option("--scheme", o.scheme,
                    "chirp-sinusoidal|chirp-linear|dfts-ofdm-im|ofdm-im");
    sub->add_option("--channel", o.channel, "awgn|eva");
    sub->add_option("--M", o.m, "subcarriers in the spread block");
    sub->add_option("--N", o.n, "IDFT size");
    sub->add_option("--Ncp", o.n_cp, "cyclic prefix samples");
    sub->add_option("--H", o.h, "PSK alphabet size (power of two)");
    sub->add_option("--l", o.l, "active indices per frame");
    sub->add_option("--D", o.deviation, "frequency deviation, cycles per symbol");
    sub->add_option("--ts-us", o.ts_us, "symbol duration in microseconds");
    sub->add_option("--snr", o.snr, "SNR grid in dB")->delimiter(',');
    sub->add_option("--max-frames", o.max_frames, "frame cap per SNR point");
    sub->add_option("--target-errors", o.target_errors, "frame-error stop target");
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--workers", o.workers, "parallel trial workers");
}

// Precedence: flags > SIM_SEED env > config file > defaults.
LinkConfig build_config(const CommonOpts& o) {
    LinkConfig cfg;
    if (!o.config_path.empty()) apply_config_file(o.config_path, cfg);
    if (const char* env = std::getenv("SIM_SEED")) cfg.master_seed = std::stoull(env);
    if (!o.scheme.empty()) cfg.scheme = parse_scheme(o.scheme);
    if (!o.channel.empty()) {
        if (o.channel == "awgn") {
            cfg.channel = ChannelKind::Awgn;
        } else if (o.channel == "eva") {
            cfg.channel = ChannelKind::Tdl;
            cfg.profile = eva_profile();
        } else {
            throw std::domain_error("unknown channel '" + o.channel + "'");
        }
    }
    if (o.m) cfg.m = *o.m;
    if (o.n) cfg.n = *o.n;
    if (o.n_cp) cfg.n_cp = *o.n_cp;
    if (o.h) cfg.h = *o.h;
    if (o.l) cfg.l = *o.l;
    if (o.deviation) cfg.deviation = *o.deviation;
    if (o.ts_us) cfg.ts_seconds = *o.ts_us * 1e-6;
    if (!o.snr.empty()) cfg.snr_grid_db = o.snr;
    if (o.max_frames) cfg.max_frames = *o.max_frames;
    if (o.target_errors) cfg.target_errors = *o.target_errors;
    if (o.seed) cfg.master_seed = *o.seed;
    if (o.workers) cfg.workers = *o.workers;
    return cfg;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path);
    if (!out) throw std::runtime_error("cannot write '" + output_path + "'");
    out << text;
}

cplx parse_unimodular(const std::string& text) {
    // accepts "re" or "re,im"
    const auto comma = text.find(',');
    double re = 0.0, im = 0.0;
    try {
        if (comma == std::string::npos) {
            re = std::stod(text);
        } else {
            re = std::stod(text.substr(0, comma));
            im = std::stod(text.substr(comma + 1));
        }
    } catch (const std::exception&) {
        throw std::domain_error("cannot parse complex value '" + text + "'");
    }
    return {re, im};
}

std::pair<int, int> parse_l_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int l = std::stoi(text);
        return {l, l};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

// ---------------------------------------------------------------------------

int verb_fdss(const std::string& kind, double deviation, int m, const std::string& output) {
    if (m <= deviation)
        throw std::domain_error("fdss: M must exceed the deviation D");
    const int l_up = m / 2;
    const int l_down = l_up - m + 1;
    const auto fdss = make_fdss(ChirpSpec{parse_chirp_kind(kind), deviation, 16.67e-6},
                                l_down, l_up);
    emit(fdss_csv(fdss), output);
    return kExitOk;
}

int verb_gcp_check(const std::string& kind, double deviation, int m, double shift_m,
                   double shift_n, const std::string& cm, const std::string& cn, double tol,
                   const std::string& output) {
    if (shift_m == shift_n)
        throw std::domain_error("gcp-check: shifts must be distinct");
    const int l_up = m / 2;
    const int l_down = l_up - m + 1;
    const auto fdss = make_fdss(ChirpSpec{parse_chirp_kind(kind), deviation, 16.67e-6},
                                l_down, l_up);
    const auto [a, b] =
        synth_cs_pair(fdss, shift_m, shift_n, parse_unimodular(cm), parse_unimodular(cn));
    const GcpVerdict v = is_gcp(a, b, tol);
    std::ostringstream os;
    os.precision(12);
    os << "# is_gcp: " << (v.is_gcp ? "true" : "false") << '\n';
    os << "# residual_normalized: " << v.max_residual << '\n';
    os << "# residual_raw: " << v.max_residual_raw << '\n';
    os << "# peak_bound: " << v.peak_bound << '\n';
    os << "# freq_ripple: " << v.freq_ripple << '\n';
    os << "lag,abs_rho_a,abs_rho_b,abs_rho_sum\n";
    for (int lag = 0; lag < static_cast<int>(a.size()); ++lag) {
        const cplx ra = apac(a, lag);
        const cplx rb = apac(b, lag);
        os << lag << ',' << std::abs(ra) << ',' << std::abs(rb) << ',' << std::abs(ra + rb)
           << '\n';
    }
    emit(os.str(), output);
    return kExitOk;
}

int verb_tradeoff(int m, int h, const std::string& l_range, const std::string& output) {
    const auto [lo, hi] = parse_l_range(l_range);
    const auto rows = tradeoff_table(m, h, lo, hi);
    std::ostringstream os;
    os.precision(12);
    os << "l,bits,rho,max_pmepr_db\n";
    for (const auto& r : rows)
        os << r.l << ',' << r.bits << ',' << r.rho << ',' << r.max_pmepr_db << '\n';
    emit(os.str(), output);
    return kExitOk;
}

int verb_temporal(const CommonOpts& opts) {
    LinkConfig cfg = build_config(opts);
    if (cfg.snr_grid_db.empty()) cfg.snr_grid_db = {0.0}; // unused by this verb
    cfg.validate();
    const PayloadLayout layout = PayloadLayout::make(cfg.m, cfg.h, cfg.l);

    // one frame per scheme, same payload bits
    RngStream bits_rng(cfg.master_seed, 0, RngStream::kBits, 0);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(layout.total_bits));
    for (auto& b : bits) b = static_cast<std::uint8_t>(bits_rng.next_u32() & 1u);
    const ImFrame frame = im_encode(bits, layout);

    std::ostringstream os;
    os.precision(12);
    os << "# chirpim " << version_string() << '\n';
    os << "# config: " << config_json(cfg) << '\n';
    os << "scheme,sample,t_us,inst_power\n";
    for (const Scheme s : {Scheme::ChirpSinusoidal, Scheme::ChirpLinear, Scheme::DftsOfdmIm,
                           Scheme::OfdmIm}) {
        const Modem modem(s, cfg.m, cfg.n, cfg.n_cp, cfg.deviation, cfg.ts_seconds, cfg.h,
                          cfg.l);
        const TxFrame tx = modem.tx(frame);
        const auto body = tx.body();
        const double dt_us = cfg.ts_seconds * 1e6 / cfg.n;
        for (int i = 0; i < tx.n; ++i)
            os << scheme_name(s) << ',' << i << ',' << i * dt_us << ','
               << std::norm(body[static_cast<std::size_t>(i)]) << '\n';
    }
    emit(os.str(), opts.output_path);
    return kExitOk;
}

int verb_pmepr(const CommonOpts& opts, long frames, int oversampling) {
    LinkConfig cfg = build_config(opts);
    if (cfg.snr_grid_db.empty()) cfg.snr_grid_db = {0.0}; // unused by this verb
    const PmeprCcdf ccdf = run_pmepr(cfg, frames, oversampling);
    emit(opts.format == "json" ? ccdf_json(cfg, ccdf)
                               : ccdf_csv(cfg, ccdf, !opts.no_header_time),
         opts.output_path);
    return kExitOk;
}

int verb_ber(const CommonOpts& opts) {
    const LinkConfig cfg = build_config(opts);
    const auto points = run_ber(cfg);
    emit(opts.format == "json" ? curve_json(cfg, points)
                               : curve_csv(cfg, points, !opts.no_header_time),
         opts.output_path);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chirp index-modulation link simulator"};
    app.require_subcommand(1);

    // fdss
    std::string fdss_kind = "sinusoidal", fdss_out;
    double fdss_d = 12.0;
    int fdss_m = 24;
    auto* fdss_cmd = app.add_subcommand("fdss", "emit chirp Fourier coefficients as CSV");
    fdss_cmd->add_option("--chirp", fdss_kind, "linear|sinusoidal");
    fdss_cmd->add_option("--D", fdss_d, "deviation, cycles per symbol")->required();
    fdss_cmd->add_option("--M", fdss_m, "window length")->required();
    fdss_cmd->add_option("--output", fdss_out, "output file");

    // gcp-check
    std::string gcp_kind = "sinusoidal", gcp_cm = "1", gcp_cn = "1", gcp_out;
    double gcp_d = 12.0, gcp_sm = 0.0, gcp_sn = 1.0 / 24.0, gcp_tol = 1e-2;
    int gcp_m = 24;
    auto* gcp_cmd = app.add_subcommand("gcp-check", "Golay-pair verdict and per-lag table");
    gcp_cmd->add_option("--chirp", gcp_kind, "linear|sinusoidal");
    gcp_cmd->add_option("--D", gcp_d, "deviation")->required();
    gcp_cmd->add_option("--M", gcp_m, "sequence length")->required();
    gcp_cmd->add_option("--shift-m", gcp_sm, "first circular shift, fraction of Ts");
    gcp_cmd->add_option("--shift-n", gcp_sn, "second circular shift, fraction of Ts");
    gcp_cmd->add_option("--cm", gcp_cm, "first coefficient, 're' or 're,im'");
    gcp_cmd->add_option("--cn", gcp_cn, "second coefficient");
    gcp_cmd->add_option("--tol", gcp_tol, "normalized residual tolerance");
    gcp_cmd->add_option("--output", gcp_out, "output file");

    // tradeoff
    std::string tr_range = "1..11", tr_out;
    int tr_m = 384, tr_h = 4;
    auto* tr_cmd = app.add_subcommand("tradeoff", "spectral efficiency vs peak power table");
    tr_cmd->add_option("--M", tr_m, "subcarriers");
    tr_cmd->add_option("--H", tr_h, "PSK alphabet size");
    tr_cmd->add_option("--l-range", tr_range, "e.g. 1..11");
    tr_cmd->add_option("--output", tr_out, "output file");

    // temporal / pmepr / ber / bler
    CommonOpts temporal_opts, pmepr_opts, ber_opts, bler_opts;
    auto* temporal_cmd =
        app.add_subcommand("temporal", "instantaneous power of one frame per scheme");
    add_common(temporal_cmd, temporal_opts);

    long pmepr_frames = 10000;
    int pmepr_ovs = 8;
    auto* pmepr_cmd = app.add_subcommand("pmepr", "PMEPR CCDF over random frames");
    add_common(pmepr_cmd, pmepr_opts);
    pmepr_cmd->add_option("--frames", pmepr_frames, "number of random frames");
    pmepr_cmd->add_option("--oversampling", pmepr_ovs, "PMEPR oversampling factor");

    auto* ber_cmd = app.add_subcommand("ber", "BER/BLER curve over the SNR grid");
    add_common(ber_cmd, ber_opts);
    auto* bler_cmd = app.add_subcommand("bler", "alias of ber (same CSV carries both)");
    add_common(bler_cmd, bler_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*fdss_cmd) return verb_fdss(fdss_kind, fdss_d, fdss_m, fdss_out);
        if (*gcp_cmd)
            return verb_gcp_check(gcp_kind, gcp_d, gcp_m, gcp_sm, gcp_sn, gcp_cm, gcp_cn,
                                  gcp_tol, gcp_out);
        if (*tr_cmd) return verb_tradeoff(tr_m, tr_h, tr_range, tr_out);
        if (*temporal_cmd) return verb_temporal(temporal_opts);
        if (*pmepr_cmd) return verb_pmepr(pmepr_opts, pmepr_frames, pmepr_ovs);
        if (*ber_cmd) return verb_ber(ber_opts);
        if (*bler_cmd) return verb_ber(bler_opts);
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}
