// Python bindings for the gprtopo core: images, B-scan preprocessing,
// synthetic scenes, the persistence engine, shape maps, and metrics.

#include "gprtopo/dataset.hpp"
#include "gprtopo/metrics.hpp"
#include "gprtopo/pipeline.hpp"
#include "gprtopo/shape_map.hpp"
#include "gprtopo/synth.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace gprtopo;

namespace {

py::array_t<double> grid_to_numpy(int width, int height, const std::vector<double>& values) {
    py::array_t<double> out({height, width});
    std::copy(values.begin(), values.end(), out.mutable_data());
    return out;
}

GrayImage image_from_numpy(py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
    if (arr.ndim() != 2) throw std::invalid_argument("expected a 2D array");
    GrayImage img(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)));
    std::copy(arr.data(), arr.data() + arr.size(), img.pixels.begin());
    require_valid(img);
    return img;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Lifetime-weighted topological feature maps for GPR B-scans";

    py::class_<GrayImage>(m, "GrayImage")
        .def(py::init<int, int, double>(), py::arg("width"), py::arg("height"),
             py::arg("fill") = 0.0)
        .def_readonly("width", &GrayImage::width)
        .def_readonly("height", &GrayImage::height)
        .def("to_numpy", [](const GrayImage& img) {
            return grid_to_numpy(img.width, img.height, img.pixels);
        })
        .def_static("from_numpy", &image_from_numpy, py::arg("array"))
        .def("__repr__", [](const GrayImage& img) {
            return "<GrayImage " + std::to_string(img.width) + "x" + std::to_string(img.height) +
                   ">";
        });

    py::enum_<NormalizeMode>(m, "NormalizeMode")
        .value("minmax", NormalizeMode::minmax)
        .value("none", NormalizeMode::none);

    m.def("load_image", &load_image, py::arg("path"), py::arg("allow_color") = false);
    m.def("save_pgm", &save_pgm, py::arg("image"), py::arg("path"), py::arg("bitdepth") = 8,
          py::arg("ascii") = false);
    m.def("save_png", &save_png, py::arg("image"), py::arg("path"), py::arg("bitdepth") = 8);
    m.def("normalize", &normalize, py::arg("image"), py::arg("mode") = NormalizeMode::minmax);
    m.def("invert", &invert, py::arg("image"));
    m.def("quantize", &quantize, py::arg("image"), py::arg("levels"));

    py::class_<Bscan>(m, "Bscan")
        .def(py::init<int, int, double, double>(), py::arg("n_samples"), py::arg("n_traces"),
             py::arg("dt"), py::arg("trace_spacing"))
        .def_readonly("n_samples", &Bscan::n_samples)
        .def_readonly("n_traces", &Bscan::n_traces)
        .def_readonly("dt", &Bscan::dt)
        .def_readonly("trace_spacing", &Bscan::trace_spacing)
        .def("to_numpy",
             [](const Bscan& b) { return grid_to_numpy(b.n_traces, b.n_samples, b.data); })
        .def_static(
            "from_numpy",
            [](py::array_t<double, py::array::c_style | py::array::forcecast> arr, double dt,
               double spacing) {
                if (arr.ndim() != 2) throw std::invalid_argument("expected a 2D array");
                Bscan b(static_cast<int>(arr.shape(0)), static_cast<int>(arr.shape(1)), dt,
                        spacing);
                std::copy(arr.data(), arr.data() + arr.size(), b.data.begin());
                require_valid(b);
                return b;
            },
            py::arg("array"), py::arg("dt"), py::arg("trace_spacing"));

    m.def("background_removal", &background_removal, py::arg("bscan"));
    m.def("bandpass", &bandpass, py::arg("bscan"), py::arg("f_lo") = 100e6,
          py::arg("f_hi") = 1900e6, py::arg("taper_frac") = 0.1);
    m.def("agc", &agc, py::arg("bscan"), py::arg("window_s"), py::arg("target_rms") = 1.0);
    m.def("agc_variants", &agc_variants, py::arg("bscan"), py::arg("windows_s"));
    m.def("to_image", &to_image, py::arg("bscan"), py::arg("clip_pct") = 99.0);
    m.def("write_bscan", &write_bscan, py::arg("bscan"), py::arg("path"));
    m.def("read_bscan", &read_bscan, py::arg("path"));

    py::class_<PipeSpec>(m, "PipeSpec")
        .def(py::init([](double x_c, double y_c, double diameter, double reflectivity) {
                 return PipeSpec{x_c, y_c, diameter, reflectivity};
             }),
             py::arg("x_c"), py::arg("y_c"), py::arg("diameter"), py::arg("reflectivity") = 1.0)
        .def_readwrite("x_c", &PipeSpec::x_c)
        .def_readwrite("y_c", &PipeSpec::y_c)
        .def_readwrite("diameter", &PipeSpec::diameter)
        .def_readwrite("reflectivity", &PipeSpec::reflectivity);

    py::class_<SceneSpec>(m, "SceneSpec")
        .def(py::init<>())
        .def_readwrite("width", &SceneSpec::width)
        .def_readwrite("depth", &SceneSpec::depth)
        .def_readwrite("n_traces", &SceneSpec::n_traces)
        .def_readwrite("trace_spacing", &SceneSpec::trace_spacing)
        .def_readwrite("center_freq", &SceneSpec::center_freq)
        .def_readwrite("rel_permittivity", &SceneSpec::rel_permittivity)
        .def_readwrite("dt", &SceneSpec::dt)
        .def_readwrite("n_samples", &SceneSpec::n_samples)
        .def_readwrite("noise_rms", &SceneSpec::noise_rms)
        .def_readwrite("clutter_bands", &SceneSpec::clutter_bands)
        .def_readwrite("pipes", &SceneSpec::pipes)
        .def("velocity", &SceneSpec::velocity);

    py::class_<GroundTruthBox>(m, "GroundTruthBox")
        .def(py::init([](int class_id, double cx, double cy, double w, double h) {
                 return GroundTruthBox{class_id, cx, cy, w, h};
             }),
             py::arg("class_id"), py::arg("cx"), py::arg("cy"), py::arg("w"), py::arg("h"))
        .def_readwrite("class_id", &GroundTruthBox::class_id)
        .def_readwrite("cx", &GroundTruthBox::cx)
        .def_readwrite("cy", &GroundTruthBox::cy)
        .def_readwrite("w", &GroundTruthBox::w)
        .def_readwrite("h", &GroundTruthBox::h);

    m.def("ricker", &ricker, py::arg("f"), py::arg("t"));
    m.def("hyperbola_traveltime", &hyperbola_traveltime, py::arg("pipe"), py::arg("x"),
          py::arg("v"));
    m.def(
        "render_scene",
        [](const SceneSpec& scene, std::uint64_t seed) {
            RenderResult r = render_scene(scene, seed);
            return py::make_tuple(std::move(r.bscan), std::move(r.boxes));
        },
        py::arg("scene"), py::arg("seed"));

    py::enum_<ReductionVariant>(m, "ReductionVariant")
        .value("standard", ReductionVariant::standard)
        .value("twist", ReductionVariant::twist);

    py::class_<PersistencePair>(m, "PersistencePair")
        .def_readonly("dim", &PersistencePair::dim)
        .def_readonly("birth", &PersistencePair::birth)
        .def_readonly("death", &PersistencePair::death)
        .def_readonly("birth_cell", &PersistencePair::birth_cell)
        .def_readonly("death_cell", &PersistencePair::death_cell)
        .def_readonly("rep_cycle", &PersistencePair::rep_cycle)
        .def("essential", &PersistencePair::essential)
        .def("lifetime", [](const PersistencePair& p) { return lifetime(p); })
        .def("__repr__", [](const PersistencePair& p) {
            return "<PersistencePair dim=" + std::to_string(p.dim) + " birth=" +
                   std::to_string(p.birth) + " death=" +
                   (p.essential() ? std::string("inf") : std::to_string(p.death)) + ">";
        });

    py::class_<PersistenceDiagram>(m, "PersistenceDiagram")
        .def_readonly("width", &PersistenceDiagram::width)
        .def_readonly("height", &PersistenceDiagram::height)
        .def_readwrite("includes_zero_persistence",
                       &PersistenceDiagram::includes_zero_persistence)
        .def_readonly("pairs", &PersistenceDiagram::pairs)
        .def("visible_pairs", [](const PersistenceDiagram& d) {
            std::vector<PersistencePair> out;
            for (const PersistencePair* p : d.visible_pairs()) out.push_back(*p);
            return out;
        });

    m.def(
        "compute_persistence",
        [](const GrayImage& img, ReductionVariant variant) {
            return compute_persistence(build_sublevel_complex(img), variant);
        },
        py::arg("image"), py::arg("variant") = ReductionVariant::standard,
        "Persistent homology of the image's sublevel-set cubical filtration");
    m.def("filter_by_lifetime", &filter_by_lifetime, py::arg("diagram"), py::arg("min_lifetime"));
    m.def("betti_curve", &betti_curve, py::arg("diagram"), py::arg("dim"), py::arg("eps"));
    m.def(
        "betti_numbers",
        [](const GrayImage& img, double eps) {
            const BettiPair b = betti_oracle(build_sublevel_complex(img), eps);
            return py::make_tuple(b.b0, b.b1);
        },
        py::arg("image"), py::arg("eps"),
        "Brute-force (beta0, beta1) of the sublevel set at eps");

    py::enum_<RenderMode>(m, "RenderMode")
        .value("boundary", RenderMode::boundary)
        .value("filled", RenderMode::filled);

    py::class_<ShapeMap>(m, "ShapeMap")
        .def_readonly("width", &ShapeMap::width)
        .def_readonly("height", &ShapeMap::height)
        .def("to_numpy",
             [](const ShapeMap& s) { return grid_to_numpy(s.width, s.height, s.values); });

    py::class_<FusedImage>(m, "FusedImage")
        .def_readonly("width", &FusedImage::width)
        .def_readonly("height", &FusedImage::height)
        .def_readonly("alpha", &FusedImage::alpha)
        .def("raw", [](const FusedImage& f) { return grid_to_numpy(f.width, f.height, f.raw); })
        .def("topo", [](const FusedImage& f) { return grid_to_numpy(f.width, f.height, f.topo); })
        .def("blend",
             [](const FusedImage& f) { return grid_to_numpy(f.width, f.height, f.blend); });

    py::class_<TopoConfig>(m, "TopoConfig")
        .def(py::init<>())
        .def_readwrite("invert", &TopoConfig::invert)
        .def_readwrite("quantize_levels", &TopoConfig::quantize_levels)
        .def_readwrite("min_lifetime", &TopoConfig::min_lifetime)
        .def_readwrite("mode", &TopoConfig::mode)
        .def_readwrite("alpha", &TopoConfig::alpha)
        .def_readwrite("variant", &TopoConfig::variant);

    m.def(
        "render_shape_map",
        [](const PersistenceDiagram& d, int width, int height, RenderMode mode,
           double min_lifetime) { return render_shape_map(d, width, height, mode, min_lifetime); },
        py::arg("diagram"), py::arg("width"), py::arg("height"),
        py::arg("mode") = RenderMode::boundary, py::arg("min_lifetime") = 0.0);
    m.def("fuse", &fuse, py::arg("raw"), py::arg("topo"), py::arg("alpha") = 0.5);
    m.def("topo_pipeline", &topo_pipeline, py::arg("image"), py::arg("config") = TopoConfig{});
    m.def("write_fused_png", &write_fused_png, py::arg("fused"), py::arg("path"),
          py::arg("blend_only") = false);

    py::class_<Detection>(m, "Detection")
        .def(py::init([](const std::string& image_id, int class_id, double cx, double cy, double w,
                         double h, double confidence) {
                 return Detection{image_id, class_id, cx, cy, w, h, confidence};
             }),
             py::arg("image_id"), py::arg("class_id"), py::arg("cx"), py::arg("cy"), py::arg("w"),
             py::arg("h"), py::arg("confidence"))
        .def_readwrite("image_id", &Detection::image_id)
        .def_readwrite("confidence", &Detection::confidence);

    m.def("iou", &iou, py::arg("a"), py::arg("b"));
    m.def("average_precision", &average_precision, py::arg("predictions"),
          py::arg("ground_truths"), py::arg("iou_thresh"));
    m.def(
        "map_range",
        [](const std::vector<Detection>& preds, const GroundTruthMap& gts) {
            const MapScores s = map_range(preds, gts);
            return py::make_tuple(s.map50, s.map50_95);
        },
        py::arg("predictions"), py::arg("ground_truths"),
        "Returns (mAP@0.5, mAP@0.5:0.95)");

    m.attr("__version__") = "0.1.0";
}
