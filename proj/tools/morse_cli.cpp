// Command-line front end: pole tables, S-matrix samples, phase-shift
// curves, |S| grids, wavefunction samples and verification reports as
// CSV/JSON. Exit codes: 0 ok, 1 verification failure, 2 usage error.

#include <cstdio>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "morse/io.hpp"
#include "morse/ladder.hpp"
#include "morse/scattering.hpp"
#include "morse/states.hpp"
#include "morse/verify.hpp"

namespace {

struct Range {
    double lo = 0.0, hi = 0.0;
};

Range parse_range(const std::string& text) {
    const auto pos = text.find(':');
    if (pos == std::string::npos) throw morse::InvalidParams("range must be lo:hi: " + text);
    std::size_t used = 0;
    Range r;
    try {
        r.lo = std::stod(text.substr(0, pos), &used);
        if (used != pos) throw std::invalid_argument("");
        const std::string hi = text.substr(pos + 1);
        r.hi = std::stod(hi, &used);
        if (used != hi.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw morse::InvalidParams("cannot parse range: " + text);
    }
    if (!(r.lo < r.hi)) throw morse::InvalidParams("degenerate range: " + text);
    return r;
}

std::vector<double> sample_range(const Range& r, double step) {
    if (!(step > 0.0)) throw morse::InvalidParams("step must be > 0");
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double v = r.lo + i * step;
        if (v > r.hi + 1e-9) break;
        out.push_back(v);
    }
    return out;
}

void emit(const morse::Table& table, const std::string& format, const std::string& out_path) {
    const std::string text = (format == "json") ? table.to_json() : table.to_csv();
    if (out_path.empty())
        std::cout << text;
    else
        morse::atomic_write(out_path, text);
}

morse::Table base_table(const morse::PotentialParams& p, const std::string& command) {
    morse::Table t;
    t.add_meta("tool_version", std::string(morse::tool_version));
    t.add_meta("command", command);
    t.add_meta("A", p.A);
    t.add_meta("regime", std::string(morse::regime_name(p.regime)));
    return t;
}

std::string factor_note(const morse::PoleRecord& rec) {
    std::string note;
    for (const auto& [factor, sgn] : rec.contributing_factors) {
        note += (sgn > 0) ? '+' : '-';
        switch (factor) {
            case morse::GammaFactor::Num1: note += "num1"; break;
            case morse::GammaFactor::Num2: note += "num2"; break;
            case morse::GammaFactor::Den1: note += "den1"; break;
            case morse::GammaFactor::Den2: note += "den2"; break;
        }
    }
    if (rec.net_order == 0) note += " (cancels: regular point)";
    else if (static_cast<int>(rec.contributing_factors.size()) > rec.net_order)
        note += " (partial cancellation)";
    return note;
}

int cmd_poles(const morse::PotentialParams& p, const Range& im_range,
              const std::string& format, const std::string& out_path) {
    morse::Table t = base_table(p, "poles");
    t.add_meta("im_min", im_range.lo);
    t.add_meta("im_max", im_range.hi);
    t.columns = {"class", "series_index", "im_k", "energy", "net_order",
                 "residue_re", "residue_im", "cancellation_note"};
    for (const auto& rec : morse::enumerate_poles(p, im_range.lo, im_range.hi)) {
        morse::cplx res = 0.0;
        if (rec.net_order == 1) res = morse::residue(p, rec);
        t.add_row({std::string(morse::pole_class_name(rec.cls)),
                   static_cast<long long>(rec.series_index), rec.im_k, rec.energy,
                   static_cast<long long>(rec.net_order), res.real(), res.imag(),
                   factor_note(rec)});
    }
    emit(t, format, out_path);
    return 0;
}

int cmd_smatrix(const morse::PotentialParams& p, const Range& k_range, double step,
                const std::string& format, const std::string& out_path) {
    morse::Table t = base_table(p, "smatrix");
    t.add_meta("k_min", k_range.lo);
    t.add_meta("k_max", k_range.hi);
    t.add_meta("step", step);
    t.columns = {"k", "re_s", "im_s", "abs_s"};
    for (double k : sample_range(k_range, step)) {
        const morse::cplx s = morse::s_matrix_unchecked(p, morse::cplx(k, 0.0));
        t.add_row({k, s.real(), s.imag(), std::abs(s)});
    }
    emit(t, format, out_path);
    return 0;
}

int cmd_phase(const morse::PotentialParams& p, const Range& k_range, double step,
              const std::string& format, const std::string& out_path) {
    if (!(k_range.lo > 0.0)) throw morse::InvalidParams("phase: k-range must be within (0, inf)");
    const std::vector<double> ks = sample_range(k_range, step);
    const std::vector<double> delta = morse::phase_shift_curve(p, ks);
    morse::Table t = base_table(p, "phase");
    t.add_meta("k_min", k_range.lo);
    t.add_meta("k_max", k_range.hi);
    t.add_meta("step", step);
    t.columns = {"k", "delta", "Delta"};
    for (std::size_t i = 0; i < ks.size(); ++i)
        t.add_row({ks[i], delta[i], morse::phase_shift_derivative(p, ks[i])});
    emit(t, format, out_path);
    return 0;
}

int cmd_grid(const morse::PotentialParams& p, const Range& re, const Range& im, double step,
             double cap, const std::string& format, const std::string& out_path) {
    const morse::ComplexGrid g = morse::s_matrix_grid(p, {re.lo, re.hi, im.lo, im.hi, step, cap});
    if (format == "json") {
        nlohmann::json j;
        j["meta"] = {{"tool_version", morse::tool_version},
                     {"command", "grid"},
                     {"A", p.A},
                     {"regime", morse::regime_name(p.regime)},
                     {"re_min", re.lo},
                     {"re_max", re.hi},
                     {"im_min", im.lo},
                     {"im_max", im.hi},
                     {"step", step},
                     {"cap", cap},
                     {"n_re", g.n_re},
                     {"n_im", g.n_im}};
        auto rows = nlohmann::json::array();
        for (std::size_t r = 0; r < g.n_im; ++r) {
            auto row = nlohmann::json::array();
            for (std::size_t c = 0; c < g.n_re; ++c) row.push_back(g.at(r, c));
            rows.push_back(std::move(row));
        }
        j["data"] = std::move(rows);
        const std::string text = j.dump(2) + "\n";
        if (out_path.empty()) std::cout << text;
        else morse::atomic_write(out_path, text);
        return 0;
    }
    // CSV matrix: meta comments, one row per Im k (ascending), columns by Re k
    std::string text;
    text += "# tool_version = " + std::string(morse::tool_version) + "\n";
    text += "# command = grid\n";
    text += "# A = " + morse::format_real(p.A) + "\n";
    text += "# regime = " + std::string(morse::regime_name(p.regime)) + "\n";
    text += "# re_min = " + morse::format_real(re.lo) + "\n";
    text += "# re_max = " + morse::format_real(re.hi) + "\n";
    text += "# im_min = " + morse::format_real(im.lo) + "\n";
    text += "# im_max = " + morse::format_real(im.hi) + "\n";
    text += "# step = " + morse::format_real(step) + "\n";
    text += "# cap = " + morse::format_real(cap) + "\n";
    text += "# rows = im_k ascending, columns = re_k ascending\n";
    for (std::size_t r = 0; r < g.n_im; ++r) {
        for (std::size_t c = 0; c < g.n_re; ++c) {
            if (c) text += ',';
            text += morse::format_real(g.at(r, c));
        }
        text += '\n';
    }
    if (out_path.empty()) std::cout << text;
    else morse::atomic_write(out_path, text);
    return 0;
}

morse::Family family_from_name(const std::string& name) {
    if (name == "psi1") return morse::Family::Psi1;
    if (name == "psi2") return morse::Family::Psi2;
    if (name == "bound") return morse::Family::Bound;
    if (name == "redundant") return morse::Family::RedundantGeneric;
    if (name == "redundant-even") return morse::Family::RedundantEvenInt;
    if (name == "redundant-odd") return morse::Family::RedundantOddHalf;
    if (name == "semibound") return morse::Family::SemiBound;
    if (name == "tilde-bound") return morse::Family::TildeBoundInt;
    if (name == "tilde-even") return morse::Family::TildeRedundantEven;
    if (name == "even-chain") return morse::Family::RedundantEvenChain;
    if (name == "odd-chain") return morse::Family::RedundantOddChain;
    throw morse::InvalidParams("unknown family: " + name);
}

int cmd_wavefunction(const morse::PotentialParams& p, const std::string& family, int n,
                     double energy, const Range& x_range, double step,
                     const std::string& format, const std::string& out_path) {
    const morse::Family fam = family_from_name(family);
    const morse::WaveFunctionSpec spec = morse::make_spec(fam, p, n, morse::cplx(energy, 0.0));
    morse::Table t = base_table(p, "wavefunction");
    t.add_meta("family", family);
    t.add_meta("n", static_cast<long long>(n));
    t.add_meta("energy_re", spec.energy.real());
    t.add_meta("energy_im", spec.energy.imag());
    t.add_meta("x_min", x_range.lo);
    t.add_meta("x_max", x_range.hi);
    t.add_meta("step", step);
    t.columns = {"x", "re_psi", "im_psi", "log_abs_psi"};
    for (double x : sample_range(x_range, step)) {
        const morse::cplx v = morse::evaluate(spec, x);
        const morse::cplx lg = morse::evaluate_log(spec, x);
        t.add_row({x, v.real(), v.imag(), lg.real()});
    }
    emit(t, format, out_path);
    return 0;
}

int emit_report(const morse::PotentialParams& p, const std::string& command,
                const std::set<std::string>& keep, const std::string& format,
                const std::string& out_path) {
    const morse::VerifyReport full = morse::run_verification(p);
    morse::Table t = base_table(p, command);
    t.columns = {"check", "max_residual", "tolerance", "pass"};
    bool ok = true;
    for (const auto& c : full.checks) {
        if (!keep.empty() && !keep.count(c.name)) continue;
        t.add_row({c.name, c.max_residual, c.tolerance, std::string(c.pass ? "true" : "false")});
        ok = ok && c.pass;
    }
    emit(t, format, out_path);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analytic S-matrix, poles and ladder structure of the 1-D Morse potential"};
    app.require_subcommand(1);

    double A = 0.0;
    std::string format = "csv";
    std::string out_path;
    std::string im_range_s, k_range_s, x_range_s, re_range_s;
    double step = 0.01;
    double cap = 1e6;
    std::string family = "bound";
    int n = 0;
    double energy = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--A", A, "potential strength A > 0")->required();
        sub->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_path, "output path (default: stdout)");
    };

    auto* poles = app.add_subcommand("poles", "enumerate and classify S-matrix poles");
    add_common(poles);
    poles->add_option("--im-range", im_range_s, "Im k window lo:hi")->required();

    auto* smatrix = app.add_subcommand("smatrix", "sample S(k) on the real axis");
    add_common(smatrix);
    smatrix->add_option("--k-range", k_range_s, "k window lo:hi")->required();
    smatrix->add_option("--step", step, "sample spacing");

    auto* phase = app.add_subcommand("phase", "phase shift delta(k) and derivative");
    add_common(phase);
    phase->add_option("--k-range", k_range_s, "k window lo:hi, lo > 0")->required();
    phase->add_option("--step", step, "sample spacing");

    auto* grid = app.add_subcommand("grid", "|S(k)| on a complex-plane grid");
    add_common(grid);
    grid->add_option("--re", re_range_s, "Re k window lo:hi")->required();
    grid->add_option("--im", im_range_s, "Im k window lo:hi")->required();
    grid->add_option("--step", step, "grid spacing");
    grid->add_option("--cap", cap, "|S| saturation value");

    auto* wf = app.add_subcommand("wavefunction", "sample a wavefunction family");
    add_common(wf);
    wf->add_option("--family", family,
                   "psi1|psi2|bound|redundant|redundant-even|redundant-odd|semibound|"
                   "tilde-bound|tilde-even|even-chain|odd-chain")
        ->required();
    wf->add_option("--n", n, "family index");
    wf->add_option("--energy", energy, "E for psi1/psi2 families");
    wf->add_option("--x", x_range_s, "x window lo:hi")->required();
    wf->add_option("--step", step, "sample spacing");

    auto* lverify = app.add_subcommand("ladder-verify", "run the ladder-algebra checks");
    add_common(lverify);

    auto* vall = app.add_subcommand("verify-all", "run every invariant suite");
    add_common(vall);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        const morse::PotentialParams p = morse::PotentialParams::make(A);
        if (poles->parsed()) return cmd_poles(p, parse_range(im_range_s), format, out_path);
        if (smatrix->parsed())
            return cmd_smatrix(p, parse_range(k_range_s), step, format, out_path);
        if (phase->parsed()) return cmd_phase(p, parse_range(k_range_s), step, format, out_path);
        if (grid->parsed())
            return cmd_grid(p, parse_range(re_range_s), parse_range(im_range_s), step, cap,
                            format, out_path);
        if (wf->parsed())
            return cmd_wavefunction(p, family, n, energy, parse_range(x_range_s), step, format,
                                    out_path);
        if (lverify->parsed())
            return emit_report(p, "ladder-verify",
                               {"factorization", "intertwining", "chain_step_defect",
                                "ground_annihilation", "eigenvalue_consistency"},
                               format, out_path);
        if (vall->parsed()) return emit_report(p, "verify-all", {}, format, out_path);
    } catch (const morse::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
