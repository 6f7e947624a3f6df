#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swarmlift/analysis.hpp"
#include "swarmlift/experiments.hpp"
#include "swarmlift/scenario_io.hpp"

namespace {

using namespace swarmlift;

struct TuneOpts {
    double payload_mass = 0.03;
    double cable_length = 0.6;
    int agents = 3;
    double side = 0.6;
    double robot_mass = 0.027;
    double zeta = 1.0;
    double gravity = 9.81;
};

void cmd_tune(const TuneOpts& o) {
    PayloadModel payload;
    payload.mass_kg = o.payload_mass;
    payload.cable_length_m = o.cable_length;
    payload.agent_count = o.agents;
    payload.gravity = o.gravity;
    TunedGains g = tune_for_polygon(payload, o.side, o.robot_mass, o.zeta);
    std::printf("x0 = %.10g\n", g.x0);
    std::printf("T_z = %.10g\n", vertical_tension(payload));
    std::printf("T_x = %.10g\n", horizontal_tension(payload, g.x0));
    std::printf("k_p = %.10g\n", g.k_p);
    std::printf("k = %.10g\n", g.k);
    std::printf("B = %.10g\n", g.B);
    std::printf("zeta_x = %.10g\n", g.zeta_x);
    std::printf("zeta_y = %.10g\n", g.zeta_y);
}

struct RunOpts {
    std::string config;
    bool suite = false;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int reps = 1;
};

void run_one(Scenario sc, const std::filesystem::path& dir, int reps) {
    for (int rep = 0; rep < reps; ++rep) {
        Scenario variant = sc;
        if (rep > 0) {
            variant.name = sc.name + "_r" + std::to_string(rep + 1);
            variant.seed = sc.seed + static_cast<std::uint64_t>(rep);
        }
        TrajectoryLog log = run(variant);
        RunPaths paths = write_run(log, variant, dir);
        std::printf("wrote %s\n", paths.csv.string().c_str());
    }
}

void cmd_run(const RunOpts& o) {
    std::filesystem::path dir = o.out_dir;
    if (o.suite) {
        SuiteConfig cfg;
        if (o.seed_set) cfg.base_seed = o.seed;
        for (Scenario& sc : default_suite(cfg)) run_one(std::move(sc), dir, o.reps);
        return;
    }
    if (o.config.empty()) throw std::runtime_error("run needs --config FILE or --suite");
    Scenario sc = load_scenario(o.config);
    if (o.seed_set) sc.seed = o.seed;
    run_one(std::move(sc), dir, o.reps);
}

struct AnalyzeOpts {
    std::vector<std::string> logs;
    double window_start = 4.0;
    double window_end = 35.0;
    std::string label = "runs";
    std::string out;
};

std::vector<CorrelationReport> report_files(const std::vector<std::string>& files, double t0,
                                            double t1) {
    std::vector<CorrelationReport> rows;
    for (const std::string& f : files) rows.push_back(synchronicity(read_csv(f), t0, t1));
    return rows;
}

void emit(const std::vector<ReportSection>& sections, const std::string& out) {
    if (out.empty()) {
        write_report_text(std::cout, sections);
        return;
    }
    std::ofstream txt(out + ".txt");
    std::ofstream csv(out + ".csv");
    if (!txt || !csv) throw std::runtime_error("cannot write report files at " + out);
    write_report_text(txt, sections);
    write_report_csv(csv, sections);
    std::printf("wrote %s.txt\nwrote %s.csv\n", out.c_str(), out.c_str());
}

void cmd_analyze(const AnalyzeOpts& o) {
    std::vector<ReportSection> sections;
    sections.push_back({o.label, report_files(o.logs, o.window_start, o.window_end)});
    emit(sections, o.out);
}

struct CompareOpts {
    std::vector<std::string> a;
    std::vector<std::string> b;
    std::vector<std::string> baseline;
    std::string label_a = "group_a";
    std::string label_b = "group_b";
    double window_start = 4.0;
    double window_end = 35.0;
    std::string out;
};

void cmd_compare(const CompareOpts& o) {
    std::vector<ReportSection> sections;
    if (!o.baseline.empty())
        sections.push_back({"baseline", report_files(o.baseline, o.window_start, o.window_end)});
    sections.push_back({o.label_a, report_files(o.a, o.window_start, o.window_end)});
    sections.push_back({o.label_b, report_files(o.b, o.window_start, o.window_end)});
    emit(sections, o.out);
    GroupSummary sa = summarize(sections[sections.size() - 2].rows);
    GroupSummary sb = summarize(sections.back().rows);
    std::printf("delta mean (%s - %s) = %.3f\n", o.label_a.c_str(), o.label_b.c_str(),
                sa.mean - sb.mean);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic sandbox for cable-slung collaborative transport"};
    app.require_subcommand(1);

    TuneOpts tune_opts;
    CLI::App* tune = app.add_subcommand("tune", "derive formation gains from the cable model");
    tune->add_option("--payload-mass", tune_opts.payload_mass, "payload mass (kg)");
    tune->add_option("--cable-length", tune_opts.cable_length, "cable length (m)");
    tune->add_option("--agents", tune_opts.agents, "number of carriers");
    tune->add_option("--side", tune_opts.side, "formation side length (m)");
    tune->add_option("--robot-mass", tune_opts.robot_mass, "robot mass (kg)");
    tune->add_option("--zeta", tune_opts.zeta, "target damping ratio");
    tune->add_option("--gravity", tune_opts.gravity, "gravity (m/s^2)");
    tune->callback([&] { cmd_tune(tune_opts); });

    RunOpts run_opts;
    CLI::App* runc = app.add_subcommand("run", "simulate a scenario file or the stock suite");
    runc->add_option("--config", run_opts.config, "scenario file");
    runc->add_flag("--suite", run_opts.suite, "run the stock comparison suite");
    runc->add_option("--out", run_opts.out_dir, "output directory");
    runc->add_option("--seed", run_opts.seed, "override the scenario seed")
        ->each([&](const std::string&) { run_opts.seed_set = true; });
    runc->add_option("--reps", run_opts.reps, "repetitions with consecutive seeds")
        ->check(CLI::PositiveNumber);
    runc->callback([&] { cmd_run(run_opts); });

    AnalyzeOpts analyze_opts;
    CLI::App* analyze = app.add_subcommand("analyze", "synchronicity report for trajectory logs");
    analyze->add_option("logs", analyze_opts.logs, "trajectory CSV files")->required();
    analyze->add_option("--window-start", analyze_opts.window_start, "analysis window start (s)");
    analyze->add_option("--window-end", analyze_opts.window_end, "analysis window end (s)");
    analyze->add_option("--label", analyze_opts.label, "section label");
    analyze->add_option("--out", analyze_opts.out, "write <out>.txt and <out>.csv");
    analyze->callback([&] { cmd_analyze(analyze_opts); });

    CompareOpts compare_opts;
    CLI::App* compare = app.add_subcommand("compare", "side-by-side report for two run groups");
    compare->add_option("--a", compare_opts.a, "group A CSV files")->required();
    compare->add_option("--b", compare_opts.b, "group B CSV files")->required();
    compare->add_option("--baseline", compare_opts.baseline, "baseline CSV files");
    compare->add_option("--label-a", compare_opts.label_a, "group A label");
    compare->add_option("--label-b", compare_opts.label_b, "group B label");
    compare->add_option("--window-start", compare_opts.window_start, "analysis window start (s)");
    compare->add_option("--window-end", compare_opts.window_end, "analysis window end (s)");
    compare->add_option("--out", compare_opts.out, "write <out>.txt and <out>.csv");
    compare->callback([&] { cmd_compare(compare_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
