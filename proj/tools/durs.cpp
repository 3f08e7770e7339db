// DU-RSMA experiment runner: closed-form and Monte Carlo evaluation of the
// two-user, two-RRH uplink rate-splitting system.
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "durs/config_file.hpp"
#include "durs/ergodic.hpp"
#include "durs/mc.hpp"
#include "durs/outage.hpp"
#include "durs/region.hpp"
#include "durs/validate.hpp"

using namespace durs;

namespace {

struct CommonArgs {
    std::string preset_name;
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_path;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& a, const char* default_out) {
    cmd->add_option("--preset", a.preset_name, "configuration preset (fig2..fig6)");
    cmd->add_option("--config", a.config_path, "key=value configuration file");
    cmd->add_option("--set", a.sets, "override, e.g. --set alpha=0.4")->take_all();
    cmd->add_option("--out", a.out_path, "output CSV path")->default_val(default_out);
    cmd->add_option("--samples", a.samples, "Monte Carlo sample count");
    cmd->add_option("--seed", a.seed, "Monte Carlo seed");
    cmd->add_option("--threads", a.threads, "worker threads (0 = DU_RSMA_THREADS or hardware)");
}

RunConfig build_config(const CommonArgs& a) {
    RunConfig rc;
    if (!a.preset_name.empty()) rc = preset(a.preset_name);
    if (!a.config_path.empty()) {
        std::ifstream in(a.config_path);
        if (!in) throw ConfigError("config error: cannot open '" + a.config_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        rc = parse_config(ss.str(), rc);
    }
    for (const std::string& kv : a.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config error: --set expects key=value, got '" + kv + "'");
        apply_key(rc, config_detail::trim(kv.substr(0, eq)),
                  config_detail::trim(kv.substr(eq + 1)));
    }
    if (a.samples) rc.samples = *a.samples;
    if (a.seed) rc.seed = *a.seed;
    return rc;
}

std::string header_comment(const char* subcommand, const RunConfig& rc) {
    std::string out = std::string("# du_rsma ") + subcommand + "\n";
    std::istringstream echo(echo_config(rc));
    for (std::string line; std::getline(echo, line);) out += "# " + line + "\n";
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("config error: cannot write '" + path + "'");
    out << content;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int cmd_ergodic_sweep(const CommonArgs& a, double from, double to, double step) {
    RunConfig rc = build_config(a);
    std::string csv = header_comment("ergodic-sweep", rc);
    csv += "snr_db,er_a_analytic,er_b_analytic,er_sum_analytic,er_a_mc,er_b_mc,er_sum_mc,"
           "se_a,se_b\n";
    for (double snr = from; snr <= to + 1e-9; snr += step) {
        RunConfig point = rc;
        point.snr_db = snr;
        point.snr_a_db.reset();
        point.snr_b_db.reset();
        const SystemConfig cfg = resolve(point);
        const ErBreakdown br = er_breakdown(cfg);
        const McErgodicReport mc = mc_ergodic(cfg, rc.samples, rc.seed, a.threads);
        csv += fmt(snr) + "," + fmt(br.er_user_a) + "," + fmt(br.er_user_b) + "," +
               fmt(br.er_sum) + "," + fmt(mc.er_user_a.mean) + "," + fmt(mc.er_user_b.mean) +
               "," + fmt(mc.er_sum.mean) + "," + fmt(mc.er_user_a.std_error) + "," +
               fmt(mc.er_user_b.std_error) + "\n";
    }
    write_file(a.out_path, csv);
    std::printf("wrote %s\n", a.out_path.c_str());
    return 0;
}

int cmd_outage_sweep(const CommonArgs& a, const std::string& sweep, double sf, double st,
                     double ss, double af, double at, double as, const std::string& rates_arg) {
    RunConfig rc = build_config(a);
    std::vector<double> rates;
    if (!rates_arg.empty()) {
        std::stringstream ss_r(rates_arg);
        for (std::string tok; std::getline(ss_r, tok, ',');)
            rates.push_back(config_detail::parse_number(config_detail::trim(tok), "rates", 0));
    } else {
        rates.push_back(rc.rate_a);
    }
    std::string csv = header_comment("outage-sweep", rc);
    for (const char* scheme : {"du_rsma", "du_noma"}) {
        for (double rate : rates) {
            csv += "\n# scheme=" + std::string(scheme) + " rate_a=" + fmt(rate) +
                   " rate_b=" + fmt(rate) + "\n";
            csv += std::string(sweep == "alpha" ? "alpha" : "snr_db") +
                   ",op_a_analytic,op_b_analytic,op_a_mc,op_b_mc,se_a,se_b\n";
            const double from = sweep == "alpha" ? af : sf;
            const double to = sweep == "alpha" ? at : st;
            const double step = sweep == "alpha" ? as : ss;
            for (double x = from; x <= to + 1e-9; x += step) {
                RunConfig point = rc;
                point.rate_a = point.rate_b = rate;
                if (sweep == "alpha") {
                    point.alpha = x;
                } else {
                    point.snr_db = x;
                    point.snr_a_db.reset();
                    point.snr_b_db.reset();
                }
                const SystemConfig cfg = resolve(point);
                const OutageContext ctx = make_outage_context(cfg);
                const McOutageReport mc = mc_outage(cfg, rc.samples, rc.seed, a.threads);
                double pa, pb, ma, mb, sa, sb;
                if (std::string(scheme) == "du_rsma") {
                    pa = outage_a(ctx);
                    pb = outage_b(ctx);
                    ma = mc.op_a.mean;
                    mb = mc.op_b.mean;
                    sa = mc.op_a.std_error;
                    sb = mc.op_b.std_error;
                } else {
                    const auto nb = outage_noma_baseline(ctx);
                    pa = nb.first;
                    pb = nb.second;
                    ma = mc.noma_a.mean;
                    mb = mc.noma_b.mean;
                    sa = mc.noma_a.std_error;
                    sb = mc.noma_b.std_error;
                }
                csv += fmt(x) + "," + fmt(pa) + "," + fmt(pb) + "," + fmt(ma) + "," + fmt(mb) +
                       "," + fmt(sa) + "," + fmt(sb) + "\n";
            }
        }
    }
    write_file(a.out_path, csv);
    std::printf("wrote %s\n", a.out_path.c_str());
    return 0;
}

void append_curve(std::string& csv, const RegionCurve& c, const char* scheme) {
    for (std::size_t k = 0; k < c.points.size(); ++k)
        csv += fmt(c.alphas[k]) + "," + fmt(c.points[k].r_a) + "," + fmt(c.points[k].r_b) +
               "," + scheme + "\n";
}

int cmd_region(const CommonArgs& a) {
    RunConfig rc = build_config(a);
    std::string csv = header_comment("region", rc);
    csv += "alpha,r_a,r_b,scheme\n";
    if (const auto gains = fixed_channel(rc)) {
        const SystemConfig cfg = resolve(rc);
        const RegionCurve rsma = deterministic_region(cfg, *gains, rc.alpha_grid);
        const RegionCurve ci = deterministic_region(cfg, *gains, rc.alpha_grid,
                                                    RegionMode::force_i);
        const RegionCurve cj = deterministic_region(cfg, *gains, rc.alpha_grid,
                                                    RegionMode::force_j);
        const auto [cb, ca] = noma_corners(cfg, *gains);
        const RegionCurve ts = ts_noma_region(cb, ca, rsma.denom_a, rsma.denom_b);
        append_curve(csv, rsma, "du_rsma");
        append_curve(csv, ci, "rrh_i");
        append_curve(csv, cj, "rrh_j");
        append_curve(csv, ts, "ts_noma");
        csv += "# denom_a=" + fmt(rsma.denom_a) + " denom_b=" + fmt(rsma.denom_b) + "\n";
        for (int q = 0; q <= 2; ++q) {
            const FillFactor fr = fill_factor_refined(cfg, *gains, q, rc.alpha_grid);
            const FillFactor fn = fill_factor(ts, q);
            csv += "# ff" + std::to_string(q) + "_du_rsma=" + fmt(fr.value) + "\n";
            csv += "# ff" + std::to_string(q) + "_ts_noma=" + fmt(fn.value) + "\n";
        }
    } else {
        const SystemConfig cfg = resolve(rc);
        const RegionCurve rsma =
            ergodic_region(cfg, rc.alpha_grid, rc.samples, rc.seed, RegionMode::select,
                           a.threads);
        const RegionCurve ci = ergodic_region(cfg, rc.alpha_grid, rc.samples, rc.seed,
                                              RegionMode::force_i, a.threads);
        const RegionCurve cj = ergodic_region(cfg, rc.alpha_grid, rc.samples, rc.seed,
                                              RegionMode::force_j, a.threads);
        append_curve(csv, rsma, "du_rsma");
        append_curve(csv, ci, "rrh_i");
        append_curve(csv, cj, "rrh_j");
        csv += "# denom_a=" + fmt(rsma.denom_a) + " denom_b=" + fmt(rsma.denom_b) + "\n";
        for (int q = 0; q <= 2; ++q)
            csv += "# eff" + std::to_string(q) + "_du_rsma=" +
                   fmt(fill_factor(rsma, q).value) + "\n";
    }
    write_file(a.out_path, csv);
    std::printf("wrote %s\n", a.out_path.c_str());
    return 0;
}

int cmd_fill_factor(const CommonArgs& a) {
    RunConfig rc = build_config(a);
    std::string csv = header_comment("fill-factor", rc);
    csv += "scheme,q,value,r_a,r_b,alpha\n";
    if (const auto gains = fixed_channel(rc)) {
        const SystemConfig cfg = resolve(rc);
        for (int q = 0; q <= 2; ++q) {
            const FillFactor ff = fill_factor_refined(cfg, *gains, q, rc.alpha_grid);
            csv += "du_rsma," + std::to_string(q) + "," + fmt(ff.value) + "," +
                   fmt(ff.argmax.r_a) + "," + fmt(ff.argmax.r_b) + "," + fmt(ff.alpha) + "\n";
        }
        const auto su_curve = deterministic_region(cfg, *gains, 2);
        const auto [cb, ca] = noma_corners(cfg, *gains);
        const RegionCurve ts = ts_noma_region(cb, ca, su_curve.denom_a, su_curve.denom_b);
        for (int q = 0; q <= 2; ++q) {
            const FillFactor ff = fill_factor(ts, q);
            csv += "ts_noma," + std::to_string(q) + "," + fmt(ff.value) + "," +
                   fmt(ff.argmax.r_a) + "," + fmt(ff.argmax.r_b) + "," + fmt(ff.alpha) + "\n";
        }
    } else {
        const SystemConfig cfg = resolve(rc);
        for (int q = 0; q <= 2; ++q) {
            const FillFactor ff = ergodic_fill_factor(cfg, q, rc.alpha_grid, rc.samples,
                                                      rc.seed, RegionMode::select, a.threads);
            csv += "du_rsma," + std::to_string(q) + "," + fmt(ff.value) + "," +
                   fmt(ff.argmax.r_a) + "," + fmt(ff.argmax.r_b) + "," + fmt(ff.alpha) + "\n";
        }
    }
    write_file(a.out_path, csv);
    std::printf("%s", csv.c_str());
    return 0;
}

int cmd_validate(const CommonArgs& a, const std::string& grid) {
    RunConfig rc = build_config(a);  // validates overrides even though grid drives the runs
    ValidateOptions opt;
    opt.full = (grid == "full");
    opt.threads = a.threads;
    opt.seed = rc.seed;
    const ValidateResult res = run_validation(opt);
    write_file(a.out_path, res.report_csv);
    std::printf("validate: %d checks, %d failures -> %s\n", res.checks, res.failures,
                a.out_path.c_str());
    return res.failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DU-RSMA uplink analysis: closed forms with Monte Carlo verification"};
    app.require_subcommand(1);

    CommonArgs erg, out, reg, ff, val;
    double snr_from = 50, snr_to = 90, snr_step = 5;
    double o_snr_from = 50, o_snr_to = 90, o_snr_step = 10;
    double alpha_from = 0.1, alpha_to = 0.9, alpha_step = 0.1;
    std::string sweep = "snr", rates, grid = "small";

    auto* c1 = app.add_subcommand("ergodic-sweep", "ergodic rates vs transmit SNR");
    add_common(c1, erg, "ergodic_sweep.csv");
    c1->add_option("--snr-from", snr_from);
    c1->add_option("--snr-to", snr_to);
    c1->add_option("--snr-step", snr_step);

    auto* c2 = app.add_subcommand("outage-sweep", "outage probability vs SNR or alpha");
    add_common(c2, out, "outage_sweep.csv");
    c2->add_option("--sweep", sweep, "snr or alpha")->check(CLI::IsMember({"snr", "alpha"}));
    c2->add_option("--snr-from", o_snr_from);
    c2->add_option("--snr-to", o_snr_to);
    c2->add_option("--snr-step", o_snr_step);
    c2->add_option("--alpha-from", alpha_from);
    c2->add_option("--alpha-to", alpha_to);
    c2->add_option("--alpha-step", alpha_step);
    c2->add_option("--rates", rates, "comma list of equal target rates, e.g. 1,2");

    auto* c3 = app.add_subcommand("region", "capacity region curves and fill factors");
    add_common(c3, reg, "region.csv");

    auto* c4 = app.add_subcommand("fill-factor", "fill factors only");
    add_common(c4, ff, "fill_factor.csv");

    auto* c5 = app.add_subcommand("validate", "closed forms vs quadrature and Monte Carlo");
    add_common(c5, val, "validate_report.csv");
    c5->add_option("--grid", grid, "small or full")->check(CLI::IsMember({"small", "full"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (c1->parsed()) return cmd_ergodic_sweep(erg, snr_from, snr_to, snr_step);
        if (c2->parsed())
            return cmd_outage_sweep(out, sweep, o_snr_from, o_snr_to, o_snr_step, alpha_from,
                                    alpha_to, alpha_step, rates);
        if (c3->parsed()) return cmd_region(reg);
        if (c4->parsed()) return cmd_fill_factor(ff);
        if (c5->parsed()) return cmd_validate(val, grid);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
