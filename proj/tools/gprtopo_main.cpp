// gprtopo: topological feature maps for GPR B-scans.
//
// Subcommands: synth, preprocess, topo, export, eval, pipeline.

#include "gprtopo/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

using namespace gprtopo;

namespace {

void add_common(CLI::App* cmd, PipelineConfig& cfg) {
    cmd->add_option("--seed", cfg.seed, "Base seed; all randomness derives from it");
    cmd->add_option("--threads", cfg.threads, "Worker threads (also capped by GPRTOPO_THREADS)")
        ->check(CLI::PositiveNumber);
}

void add_scene(CLI::App* cmd, PipelineConfig& cfg) {
    SceneSpec& s = cfg.dataset.scene;
    cmd->add_option("--n-traces", s.n_traces)->check(CLI::PositiveNumber);
    cmd->add_option("--n-samples", s.n_samples)->check(CLI::PositiveNumber);
    cmd->add_option("--dt", s.dt, "Sample interval [s]");
    cmd->add_option("--trace-spacing", s.trace_spacing, "Antenna step [m]");
    cmd->add_option("--freq", s.center_freq, "Ricker center frequency [Hz]");
    cmd->add_option("--eps-r", s.rel_permittivity, "Relative permittivity");
    cmd->add_option("--scene-width", s.width, "Scene width [m]");
    cmd->add_option("--scene-depth", s.depth, "Scene depth [m]");
    cmd->add_option("--noise-rms", s.noise_rms);
    cmd->add_option("--clutter-bands", s.clutter_bands);
    cmd->add_option("--diameters", cfg.dataset.diameters, "Pipe diameter choices [m]");
    cmd->add_option("--x-min", cfg.dataset.x_min);
    cmd->add_option("--x-max", cfg.dataset.x_max);
    cmd->add_option("--y-min", cfg.dataset.y_min);
    cmd->add_option("--y-max", cfg.dataset.y_max);
    cmd->add_option("--pipes-min", cfg.dataset.pipes_min);
    cmd->add_option("--pipes-max", cfg.dataset.pipes_max);
}

void add_preproc(CLI::App* cmd, PipelineConfig& cfg) {
    cmd->add_flag("!--no-background-removal", cfg.background_removal, "Disable mean-trace removal");
    cmd->add_flag("!--no-bandpass", cfg.use_bandpass, "Disable band-pass filtering");
    cmd->add_option("--f-lo", cfg.f_lo, "Band-pass low edge [Hz]");
    cmd->add_option("--f-hi", cfg.f_hi, "Band-pass high edge [Hz]");
    cmd->add_option("--taper", cfg.taper_frac, "Raised-cosine taper fraction");
    cmd->add_option("--agc-windows", cfg.agc_windows, "AGC window lengths [samples]; empty = off");
    cmd->add_option("--agc-target", cfg.agc_target, "AGC target RMS");
    cmd->add_option("--clip-pct", cfg.clip_pct, "Amplitude clip percentile for imaging");
}

void add_topo(CLI::App* cmd, PipelineConfig& cfg) {
    cmd->add_flag("--invert", cfg.topo.invert, "Invert intensities before the filtration");
    cmd->add_option("--levels", cfg.topo.quantize_levels, "Quantization levels")
        ->check(CLI::Range(2, 65536));
    cmd->add_option("--min-lifetime", cfg.topo.min_lifetime, "Drop generators below this lifetime");
    cmd->add_option("--mode", cfg.topo.mode, "Generator rendering: boundary|filled")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, RenderMode>{{"boundary", RenderMode::boundary},
                                              {"filled", RenderMode::filled}},
            CLI::ignore_case));
    cmd->add_option("--alpha", cfg.topo.alpha, "Blend weight of the raw image")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--reduction", cfg.topo.variant, "Matrix reduction variant: standard|twist")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, ReductionVariant>{{"standard", ReductionVariant::standard},
                                                    {"twist", ReductionVariant::twist}},
            CLI::ignore_case));
    cmd->add_flag("--luma", cfg.luma, "Convert color PNG input via BT.601 luma");
    cmd->add_flag("--blend-only", cfg.blend_only, "Write single-channel blend instead of RGB");
    cmd->add_flag("--dump-cycles", cfg.dump_cycles, "Write representative-cycle CSVs");
    cmd->add_flag("--dump-cells", cfg.dump_cells, "Write filtration cell CSVs");
    cmd->add_flag("--sidecar", cfg.sidecar, "Write per-generator side-car CSVs");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lifetime-weighted topological feature maps for GPR B-scans"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Read options from a key=value file (give before the subcommand; "
                   "keys are namespaced, e.g. synth.out)");
    app.allow_config_extras(false);

    PipelineConfig cfg;
    std::string dump_config_path;
    app.add_option("--dump-config", dump_config_path,
                   "Write the effective configuration to a file and continue");

    std::vector<std::string> inputs;
    std::string sim_manifest, field_manifest, preds_csv, labels_dir;
    double csv_dt = 0.25e-9, csv_spacing = 0.024;
    bool emit_image = false;

    CLI::App* synth = app.add_subcommand("synth", "Generate a labeled synthetic B-scan dataset");
    synth->add_option("--out", cfg.out_dir, "Output directory")->required();
    synth->add_option("--n", cfg.n_items, "Number of scenes")->required()->check(CLI::PositiveNumber);
    add_common(synth, cfg);
    add_scene(synth, cfg);
    synth->add_option("--clip-pct", cfg.dataset.clip_pct, "Amplitude clip percentile for imaging");

    CLI::App* preproc = app.add_subcommand("preprocess", "Background removal, band-pass, AGC");
    preproc->add_option("--input", inputs, "GPRB containers or CSV fixtures")->required();
    preproc->add_option("--out", cfg.out_dir, "Output directory")->required();
    preproc->add_option("--csv-dt", csv_dt, "dt for CSV inputs [s]");
    preproc->add_option("--csv-spacing", csv_spacing, "trace spacing for CSV inputs [m]");
    preproc->add_flag("--emit-image", emit_image, "Also write a PNG per output");
    add_common(preproc, cfg);
    add_preproc(preproc, cfg);

    CLI::App* topo = app.add_subcommand("topo", "Topological feature extraction and fusion");
    topo->add_option("--input", inputs, "PGM/PNG grayscale images")->required();
    topo->add_option("--out", cfg.out_dir, "Output directory")->required();
    add_common(topo, cfg);
    add_topo(topo, cfg);

    CLI::App* exp = app.add_subcommand("export", "Detector-ready YOLO export with 70/30 split");
    exp->add_option("--sim-manifest", sim_manifest, "Manifest of simulated items");
    exp->add_option("--field-manifest", field_manifest, "Manifest of field items");
    exp->add_option("--out", cfg.out_dir, "Output directory")->required();
    exp->add_option("--train-frac", cfg.train_frac, "Training fraction")
        ->check(CLI::Range(0.0, 1.0));
    add_common(exp, cfg);

    CLI::App* eval = app.add_subcommand("eval", "Detection metrics against ground truth");
    eval->add_option("--preds", preds_csv, "Predictions CSV")->required();
    eval->add_option("--labels", labels_dir, "YOLO label directory")->required();
    eval->add_option("--out", cfg.out_dir, "Optional report directory");
    add_common(eval, cfg);

    CLI::App* pipe = app.add_subcommand("pipeline", "synth -> preprocess -> topo -> export");
    pipe->add_option("--out", cfg.out_dir, "Output directory")->required();
    pipe->add_option("--n", cfg.n_items, "Number of scenes")->required()->check(CLI::PositiveNumber);
    add_common(pipe, cfg);
    add_scene(pipe, cfg);
    add_preproc(pipe, cfg);
    add_topo(pipe, cfg);
    pipe->add_option("--train-frac", cfg.train_frac)->check(CLI::Range(0.0, 1.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (!dump_config_path.empty()) {
        std::ofstream out(dump_config_path);
        out << app.config_to_str(false, true); // only options that were set
    }

    if (synth->parsed()) return cmd_synth(cfg, std::cout, std::cerr);
    if (preproc->parsed())
        return cmd_preprocess(cfg, inputs, csv_dt, csv_spacing, emit_image, std::cout, std::cerr);
    if (topo->parsed()) return cmd_topo(cfg, inputs, std::cout, std::cerr);
    if (exp->parsed()) return cmd_export(cfg, sim_manifest, field_manifest, std::cout, std::cerr);
    if (eval->parsed()) return cmd_eval(cfg, preds_csv, labels_dir, std::cout, std::cerr);
    if (pipe->parsed()) return cmd_pipeline(cfg, std::cout, std::cerr);
    return 2;
}
