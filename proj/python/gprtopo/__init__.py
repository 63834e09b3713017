"""Lifetime-weighted topological feature maps for GPR B-scans.

The heavy lifting lives in the compiled ``_core`` extension: sublevel-set
cubical persistence, B-scan preprocessing, synthetic hyperbola scenes,
shape-map rendering, and detection metrics.
"""

from gprtopo._core import (  # noqa: F401
    Bscan,
    Detection,
    FusedImage,
    GrayImage,
    GroundTruthBox,
    NormalizeMode,
    PersistenceDiagram,
    PersistencePair,
    PipeSpec,
    ReductionVariant,
    RenderMode,
    SceneSpec,
    ShapeMap,
    TopoConfig,
    __version__,
    agc,
    agc_variants,
    average_precision,
    background_removal,
    bandpass,
    betti_curve,
    betti_numbers,
    compute_persistence,
    filter_by_lifetime,
    fuse,
    hyperbola_traveltime,
    invert,
    iou,
    load_image,
    map_range,
    normalize,
    quantize,
    read_bscan,
    render_scene,
    render_shape_map,
    ricker,
    save_pgm,
    save_png,
    to_image,
    topo_pipeline,
    write_bscan,
    write_fused_png,
)
