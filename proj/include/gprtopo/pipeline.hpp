#pragma once

#include "gprtopo/dataset.hpp"
#include "gprtopo/metrics.hpp"
#include "gprtopo/shape_map.hpp"
#include "gprtopo/synth.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace gprtopo {

/// Everything the CLI subcommands need. Field defaults are the effective
/// defaults of the tool.
struct PipelineConfig {
    std::string out_dir;
    std::uint64_t seed = 0;
    int threads = 1;

    // synth
    int n_items = 8;
    DatasetConfig dataset;

    // preprocessing
    bool background_removal = true;
    bool use_bandpass = true;
    double f_lo = 100e6;
    double f_hi = 1900e6;
    double taper_frac = 0.1;
    std::vector<double> agc_windows; // window lengths in samples; empty = AGC off
    double agc_target = 1.0;
    double clip_pct = 99.0;

    // topo
    TopoConfig topo;
    bool luma = false;
    bool blend_only = false;
    bool dump_cycles = false;
    bool dump_cells = false;
    bool sidecar = false;

    // export
    double train_frac = 0.7;
};

/// Worker count after clamping by the GPRTOPO_THREADS environment variable
/// and the job count.
int effective_threads(int requested, int jobs);

/// Runs fn(0..n-1) on up to `threads` workers. Callers make outputs
/// per-index, so scheduling cannot affect results.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

int cmd_synth(const PipelineConfig& cfg, std::ostream& log, std::ostream& err);
int cmd_preprocess(const PipelineConfig& cfg, const std::vector<std::string>& inputs,
                   double csv_dt, double csv_spacing, bool emit_image, std::ostream& log,
                   std::ostream& err);
int cmd_topo(const PipelineConfig& cfg, const std::vector<std::string>& inputs, std::ostream& log,
             std::ostream& err);
int cmd_export(const PipelineConfig& cfg, const std::string& sim_manifest,
               const std::string& field_manifest, std::ostream& log, std::ostream& err);
int cmd_eval(const PipelineConfig& cfg, const std::string& preds_csv, const std::string& labels_dir,
             std::ostream& log, std::ostream& err);
int cmd_pipeline(const PipelineConfig& cfg, std::ostream& log, std::ostream& err);

/// Reads a synth-style manifest ("image<TAB>label" per line, paths relative
/// to the manifest directory) into annotated items.
std::vector<AnnotatedItem> load_manifest_items(const std::string& manifest_path, Origin origin);

} // namespace gprtopo
