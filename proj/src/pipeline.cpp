#include "gprtopo/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;

namespace gprtopo {

int effective_threads(int requested, int jobs) {
    int limit = requested;
    if (const char* env = std::getenv("GPRTOPO_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) limit = std::min(limit, cap);
    }
    return std::max(1, std::min(limit, jobs));
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (std::thread& t : pool) t.join();
}

int cmd_synth(const PipelineConfig& cfg, std::ostream& log, std::ostream& err) {
    try {
        const std::string manifest = generate_dataset(cfg.dataset, cfg.n_items, cfg.seed, cfg.out_dir);
        log << manifest << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "synth: " << e.what() << "\n";
        return 1;
    }
}

namespace {

Bscan preprocess_bscan(const PipelineConfig& cfg, Bscan b, double agc_window_samples) {
    if (cfg.background_removal) b = background_removal(b);
    if (cfg.use_bandpass) b = bandpass(b, cfg.f_lo, cfg.f_hi, cfg.taper_frac);
    if (agc_window_samples > 0.0) b = agc(b, agc_window_samples * b.dt, cfg.agc_target);
    return b;
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

} // namespace

int cmd_preprocess(const PipelineConfig& cfg, const std::vector<std::string>& inputs,
                   double csv_dt, double csv_spacing, bool emit_image, std::ostream& log,
                   std::ostream& err) {
    if (inputs.empty()) {
        err << "preprocess: no inputs\n";
        return 2;
    }
    fs::create_directories(cfg.out_dir);
    std::vector<std::string> failures(inputs.size());
    std::vector<std::string> notes(inputs.size());

    const int threads = effective_threads(cfg.threads, static_cast<int>(inputs.size()));
    parallel_for(static_cast<int>(inputs.size()), threads, [&](int i) {
        try {
            const std::string& path = inputs[i];
            Bscan raw = (fs::path(path).extension() == ".csv")
                            ? bscan_from_csv(path, csv_dt, csv_spacing)
                            : read_bscan(path);
            std::vector<double> windows = cfg.agc_windows;
            if (windows.empty()) windows.push_back(0.0); // AGC off
            std::ostringstream note;
            for (std::size_t k = 0; k < windows.size(); ++k) {
                Bscan processed = preprocess_bscan(cfg, raw, windows[k]);
                std::string name = stem_of(path);
                if (windows.size() > 1) name += "_agc" + std::to_string(k);
                const std::string out_base = (fs::path(cfg.out_dir) / name).string();
                write_bscan(processed, out_base + ".gprb");
                if (emit_image) save_png(to_image(processed, cfg.clip_pct), out_base + ".png");
                note << out_base << ".gprb\n";
            }
            notes[i] = note.str();
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });

    int rc = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (failures[i].empty()) {
            log << notes[i];
        } else {
            err << "preprocess: " << inputs[i] << ": " << failures[i] << "\n";
            rc = 1;
        }
    }
    return rc;
}

int cmd_topo(const PipelineConfig& cfg, const std::vector<std::string>& inputs, std::ostream& log,
             std::ostream& err) {
    if (inputs.empty()) {
        err << "topo: no inputs\n";
        return 2;
    }
    fs::create_directories(cfg.out_dir);
    std::vector<std::string> failures(inputs.size());

    const int threads = effective_threads(cfg.threads, static_cast<int>(inputs.size()));
    parallel_for(static_cast<int>(inputs.size()), threads, [&](int i) {
        try {
            const std::string& path = inputs[i];
            const GrayImage img = load_image(path, cfg.luma);
            const TopoResult result = topo_extract(img, cfg.topo);
            const std::string base = (fs::path(cfg.out_dir) / stem_of(path)).string();
            write_fused_png(result.fused, base + "_fused.png", cfg.blend_only);
            std::ofstream csv(base + "_diagram.csv");
            write_diagram_csv(result.diagram, csv);
            if (cfg.dump_cycles || cfg.dump_cells) {
                GrayImage work = cfg.topo.invert ? invert(img) : img;
                work = quantize(work, cfg.topo.quantize_levels);
                const FilteredComplex complex = build_sublevel_complex(work);
                if (cfg.dump_cycles) {
                    std::ofstream cyc(base + "_cycles.csv");
                    write_cycles_csv(result.diagram, complex, cyc);
                }
                if (cfg.dump_cells) {
                    std::ofstream cells(base + "_cells.csv");
                    dump_cells_csv(complex, cells);
                }
            }
            if (cfg.sidecar) {
                std::ofstream gen(base + "_generators.csv");
                write_generators_csv(result.generators, gen);
            }
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });

    int rc = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (failures[i].empty()) {
            log << inputs[i] << ": ok\n";
        } else {
            err << "topo: " << inputs[i] << ": " << failures[i] << "\n";
            rc = 1;
        }
    }
    return rc;
}

std::vector<AnnotatedItem> load_manifest_items(const std::string& manifest_path, Origin origin) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("cannot open " + manifest_path);
    const fs::path root = fs::path(manifest_path).parent_path();
    std::vector<AnnotatedItem> items;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("malformed manifest line in " + manifest_path);
        AnnotatedItem item;
        item.image_path = (root / line.substr(0, tab)).string();
        item.id = fs::path(item.image_path).stem().string();
        item.origin = origin;
        const std::string label_path = (root / line.substr(tab + 1)).string();
        std::ifstream lbl(label_path);
        if (!lbl) throw std::runtime_error("cannot open label " + label_path);
        std::string lbl_line;
        while (std::getline(lbl, lbl_line)) {
            if (lbl_line.empty()) continue;
            GroundTruthBox b;
            std::stringstream ss(lbl_line);
            if (!(ss >> b.class_id >> b.cx >> b.cy >> b.w >> b.h))
                throw std::runtime_error("malformed label in " + label_path);
            item.boxes.push_back(b);
        }
        items.push_back(std::move(item));
    }
    return items;
}

int cmd_export(const PipelineConfig& cfg, const std::string& sim_manifest,
               const std::string& field_manifest, std::ostream& log, std::ostream& err) {
    try {
        std::vector<AnnotatedItem> items;
        if (!sim_manifest.empty()) {
            auto sim = load_manifest_items(sim_manifest, Origin::simulated);
            items.insert(items.end(), std::make_move_iterator(sim.begin()),
                         std::make_move_iterator(sim.end()));
        }
        if (!field_manifest.empty()) {
            auto field = load_manifest_items(field_manifest, Origin::field);
            items.insert(items.end(), std::make_move_iterator(field.begin()),
                         std::make_move_iterator(field.end()));
        }
        ExportCounts counts;
        const std::string manifest = export_yolo(items, cfg.out_dir, cfg.train_frac, cfg.seed, &counts);
        log << manifest << "\n";
        log << "train simulated=" << counts.train_simulated << " field=" << counts.train_field
            << "; val simulated=" << counts.val_simulated << " field=" << counts.val_field << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "export: " << e.what() << "\n";
        return 1;
    }
}

int cmd_eval(const PipelineConfig& cfg, const std::string& preds_csv, const std::string& labels_dir,
             std::ostream& log, std::ostream& err) {
    try {
        const std::vector<Detection> preds = read_predictions_csv(preds_csv);
        const GroundTruthMap gts = read_labels_dir(labels_dir);
        const MapScores scores = map_range(preds, gts);
        write_metrics_text(scores, log);
        if (!cfg.out_dir.empty()) {
            fs::create_directories(cfg.out_dir);
            std::ofstream txt((fs::path(cfg.out_dir) / "metrics.txt").string());
            write_metrics_text(scores, txt);
            std::ofstream csv((fs::path(cfg.out_dir) / "metrics.csv").string());
            write_metrics_csv(scores, csv);
        }
        return 0;
    } catch (const std::exception& e) {
        err << "eval: " << e.what() << "\n";
        return 1;
    }
}

int cmd_pipeline(const PipelineConfig& cfg, std::ostream& log, std::ostream& err) {
    try {
        const fs::path out(cfg.out_dir);
        PipelineConfig synth_cfg = cfg;
        synth_cfg.out_dir = (out / "synth").string();
        synth_cfg.dataset.clip_pct = cfg.clip_pct; // one clip setting per run
        if (int rc = cmd_synth(synth_cfg, log, err); rc != 0) return rc;

        // one dataset item per scene and AGC variant
        struct Job {
            int scene_index;
            double agc_window; // samples; 0 = no AGC
            std::string name;
        };
        std::vector<double> windows = cfg.agc_windows;
        if (windows.empty()) windows.push_back(0.0);
        std::vector<Job> jobs;
        for (int i = 0; i < cfg.n_items; ++i) {
            char base[32];
            std::snprintf(base, sizeof(base), "item_%05d", i);
            for (std::size_t k = 0; k < windows.size(); ++k) {
                Job job{i, windows[k], base};
                if (windows.size() > 1) job.name += "_agc" + std::to_string(k);
                jobs.push_back(std::move(job));
            }
        }

        fs::create_directories(out / "processed");
        fs::create_directories(out / "fused");
        fs::create_directories(out / "diagrams");

        std::vector<std::string> failures(jobs.size());
        const int threads = effective_threads(cfg.threads, static_cast<int>(jobs.size()));
        parallel_for(static_cast<int>(jobs.size()), threads, [&](int j) {
            try {
                const Job& job = jobs[j];
                char scene_name[32];
                std::snprintf(scene_name, sizeof(scene_name), "item_%05d", job.scene_index);
                const Bscan raw =
                    read_bscan((out / "synth" / "bscans" / (std::string(scene_name) + ".gprb")).string());
                const Bscan processed = preprocess_bscan(cfg, raw, job.agc_window);
                write_bscan(processed, (out / "processed" / (job.name + ".gprb")).string());
                const GrayImage img = to_image(processed, cfg.clip_pct);
                save_png(img, (out / "processed" / (job.name + ".png")).string());
                const TopoResult result = topo_extract(img, cfg.topo);
                write_fused_png(result.fused, (out / "fused" / (job.name + ".png")).string(),
                                cfg.blend_only);
                std::ofstream csv((out / "diagrams" / (job.name + ".csv")).string());
                write_diagram_csv(result.diagram, csv);
            } catch (const std::exception& e) {
                failures[j] = e.what();
            }
        });
        for (std::size_t j = 0; j < jobs.size(); ++j)
            if (!failures[j].empty()) {
                err << "pipeline: " << jobs[j].name << ": " << failures[j] << "\n";
                return 1;
            }

        // detector-ready export of the fused images with the synth labels
        std::vector<AnnotatedItem> items;
        for (const Job& job : jobs) {
            char scene_name[32];
            std::snprintf(scene_name, sizeof(scene_name), "item_%05d", job.scene_index);
            AnnotatedItem item;
            item.id = job.name;
            item.image_path = (out / "fused" / (job.name + ".png")).string();
            item.origin = Origin::simulated;
            std::ifstream lbl((out / "synth" / "labels" / (std::string(scene_name) + ".txt")).string());
            std::string line;
            while (std::getline(lbl, line)) {
                if (line.empty()) continue;
                GroundTruthBox b;
                std::stringstream ss(line);
                ss >> b.class_id >> b.cx >> b.cy >> b.w >> b.h;
                item.boxes.push_back(b);
            }
            items.push_back(std::move(item));
        }
        const std::string manifest =
            export_yolo(items, (out / "dataset").string(), cfg.train_frac, cfg.seed);
        log << manifest << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "pipeline: " << e.what() << "\n";
        return 1;
    }
}

} // namespace gprtopo
