// Pipeline CLI: dataset conversion, filtering, segmentation, regionwise
// dimensionality reduction, classification, decision fusion, evaluation, and
// the end-to-end multiscale pipeline.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "superpca/classify.hpp"
#include "superpca/cube.hpp"
#include "superpca/filter.hpp"
#include "superpca/io.hpp"
#include "superpca/linalg.hpp"
#include "superpca/metrics.hpp"
#include "superpca/multiscale.hpp"
#include "superpca/parallel.hpp"
#include "superpca/segmentation.hpp"
#include "superpca/superpca.hpp"

using namespace superpca;

namespace {

std::optional<double> parse_auto(const std::string& raw, const char* flag) {
    if (raw == "auto") return std::nullopt;
    try {
        return std::stod(raw);
    } catch (const std::exception&) {
        throw CLI::ValidationError(std::string(flag) + ": expected a number or 'auto'");
    }
}

double parse_sigma_f(const std::string& raw) {
    if (raw == "inf") return std::numeric_limits<double>::infinity();
    try {
        return std::stod(raw);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--sigma-f: expected a number, 'inf' or 'auto'");
    }
}

ProjectionMode parse_projection(const std::string& raw) {
    if (raw == "raw") return ProjectionMode::Raw;
    if (raw == "centered") return ProjectionMode::Centered;
    throw CLI::ValidationError("--projection: expected 'raw' or 'centered'");
}

PixelMatrix features_of(const ReducedCube& red) {
    PixelMatrix feats(red.channels, static_cast<std::size_t>(red.rows) * red.cols);
    const std::size_t plane = static_cast<std::size_t>(red.rows) * red.cols;
    for (std::size_t p = 0; p < plane; ++p)
        for (int ch = 0; ch < red.channels; ++ch) feats.at(ch, p) = red.data[plane * ch + p];
    return feats;
}

PixelMatrix gather_columns(const PixelMatrix& all, const std::vector<std::size_t>& idx) {
    PixelMatrix out(all.bands, idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        std::copy_n(all.col(idx[i]), all.bands, out.col(i));
    return out;
}

struct ClassifierConfig {
    std::string kind = "nn";  // nn | linear
    double c_reg = 1.0;
    int epochs = 300;
    std::uint64_t seed = 0;
};

std::vector<int> run_classifier(const ClassifierConfig& cfg, const PixelMatrix& train,
                                const std::vector<int>& train_labels, const PixelMatrix& test) {
    if (cfg.kind == "nn") return nn_classify(train, train_labels, test);
    const LinearMarginModel model =
        train_linear_margin(train, train_labels, cfg.c_reg, cfg.epochs, cfg.seed);
    return classify_linear(model, test);
}

struct Stats {
    double mean = 0.0;
    double stddev = 0.0;
};

Stats stats_of(const std::vector<double>& xs) {
    Stats s;
    for (double x : xs) s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double var = 0.0;
        for (double x : xs) var += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(var / static_cast<double>(xs.size() - 1));
    }
    return s;
}

void check_gt_matches(const HsiCube& cube, const LabelMap& gt) {
    if (gt.rows != cube.rows || gt.cols != cube.cols)
        throw FormatError("ground truth dimensions (" + std::to_string(gt.rows) + "x" +
                          std::to_string(gt.cols) + ") do not match the cube (" +
                          std::to_string(cube.rows) + "x" + std::to_string(cube.cols) + ")");
}

// compacts class ids of the evaluated samples to 1..G so gaps in the original
// numbering cannot produce empty confusion rows
struct CompactClasses {
    std::vector<int> truth, pred;
    std::vector<int> original;  // original id per compact id (1-based index - 1)
};

CompactClasses compact_classes(const std::vector<int>& truth, const std::vector<int>& pred) {
    CompactClasses out;
    std::map<int, int> remap;
    for (int v : truth) remap.emplace(v, 0);
    for (int v : pred) remap.emplace(v, 0);
    for (auto& [orig, compact] : remap) {
        out.original.push_back(orig);
        compact = static_cast<int>(out.original.size());
    }
    out.truth.reserve(truth.size());
    out.pred.reserve(pred.size());
    for (int v : truth) out.truth.push_back(remap[v]);
    for (int v : pred) out.pred.push_back(remap[v]);
    return out;
}

int cmd_convert(const std::string& input, const std::string& output, bool to_text) {
    if (to_text)
        write_text_cube(read_hsif(input), output);
    else
        write_hsif(read_text_cube(input), output);
    return 0;
}

int cmd_filter(const std::string& input, const std::string& output, int radius,
               const std::string& sigma_raw) {
    const HsiCube cube = read_hsif(input);
    const double sigma = sigma_raw == "auto" ? auto_filter_sigma(cube, radius)
                                             : parse_sigma_f(sigma_raw);
    write_hsif(weighted_mean_filter(cube, radius, sigma), output);
    return 0;
}

int cmd_segment(const std::string& input, const std::string& output, const std::string& method,
                int regions, const std::string& sigma_raw, const std::string& alpha_raw,
                std::uint64_t seed) {
    const HsiCube cube = read_hsif(input);
    RegionMap map;
    if (method == "ers") {
        const GuideImage guide = first_pc_image(cube);
        const SegmentationGraph graph = build_graph(guide, parse_auto(sigma_raw, "--sigma-g"));
        map = ers_segment(graph, regions, parse_auto(alpha_raw, "--alpha"));
    } else if (method == "square") {
        map = square_partition(cube.rows, cube.cols, regions);
    } else {
        map = kmeans_cluster(reshape_cube(cube), cube.rows, cube.cols, regions, seed);
    }
    write_labels(to_label_map(map), output);
    std::printf("segmented %dx%d into %d regions (%s)\n", map.rows, map.cols, map.region_count,
                method.c_str());
    return 0;
}

int cmd_reduce(const std::string& input, const std::string& output, const std::string& method,
               int dim, const std::string& map_path, int regions, std::uint64_t seed,
               ProjectionMode mode) {
    const HsiCube cube = read_hsif(input);
    ReducedCube red;
    if (method == "superpca") {
        if (map_path.empty()) throw FormatError("reduce --method superpca requires --map");
        const RegionMap map = region_map_from_labels(read_labels(map_path), true);
        if (map.rows != cube.rows || map.cols != cube.cols)
            throw FormatError("region map dimensions do not match the cube");
        red = superpca_reduce(cube, map, dim, mode);
    } else if (method == "global") {
        red = global_pca_reduce(cube, dim, mode);
    } else if (method == "square") {
        red = superpca_reduce(cube, square_partition(cube.rows, cube.cols, regions), dim, mode,
                              "square");
    } else {  // cluster
        const RegionMap map = kmeans_cluster(reshape_cube(cube), cube.rows, cube.cols, regions, seed);
        red = superpca_reduce(cube, map, dim, mode, "cluster");
    }
    write_hsif(to_cube(red), output);
    std::printf("reduced to %d channels via %s over %d region(s)\n", red.channels,
                red.method.c_str(), red.region_count);
    return 0;
}

int cmd_multiscale(const std::string& input, const std::string& outdir, int s_f, int half_width,
                   int dim, const std::string& alpha_raw, ProjectionMode mode) {
    const HsiCube cube = read_hsif(input);
    const ScaleSchedule schedule =
        scale_schedule(s_f, half_width, static_cast<long long>(cube.pixel_count()));
    std::printf("schedule: [");
    for (std::size_t i = 0; i < schedule.counts.size(); ++i)
        std::printf("%s%d", i ? ", " : "", schedule.counts[i]);
    std::printf("]\n");
    const ScaleEnsemble ensemble =
        run_multiscale(cube, schedule, dim, parse_auto(alpha_raw, "--alpha"), mode);
    for (std::size_t s = 0; s < ensemble.cubes.size(); ++s) {
        const int c = static_cast<int>(s) - half_width;
        char suffix[32];
        std::snprintf(suffix, sizeof suffix, "c%+03d", c);
        write_labels(to_label_map(ensemble.maps[s]), outdir + "/map_" + suffix + ".labels");
        write_hsif(to_cube(ensemble.cubes[s]), outdir + "/reduced_" + suffix + ".hsif");
    }
    std::printf("wrote %zu per-scale maps and reduced cubes to %s\n", ensemble.cubes.size(),
                outdir.c_str());
    return 0;
}

int cmd_classify(const std::string& features_path, const std::string& gt_path,
                 const std::string& output, int train_count, std::uint64_t seed,
                 ClassifierConfig cfg) {
    const HsiCube feats_cube = read_hsif(features_path);
    const LabelMap gt = read_labels(gt_path);
    check_gt_matches(feats_cube, gt);

    const PixelMatrix all = reshape_cube(feats_cube);
    const SampleSplit split = split_samples(gt, train_count, seed);
    for (int cls : split.excluded_classes)
        std::fprintf(stderr, "warning: class %d has fewer than two labeled pixels, excluded\n",
                     cls);
    std::vector<int> train_labels;
    for (std::size_t p : split.train) train_labels.push_back(gt.labels[p]);
    cfg.seed = seed;
    const std::vector<int> pred =
        run_classifier(cfg, gather_columns(all, split.train), train_labels, all);

    LabelMap out(gt.rows, gt.cols);
    out.labels.assign(pred.begin(), pred.end());
    write_labels(out, output);
    std::printf("classified %zu pixels (%zu train, %zu test, %s)\n", all.pixels,
                split.train.size(), split.test.size(), cfg.kind.c_str());
    return 0;
}

int cmd_fuse(const std::vector<std::string>& pred_paths, const std::string& output) {
    if (pred_paths.empty()) throw FormatError("fuse requires at least one --pred");
    std::vector<LabelMap> maps;
    for (const std::string& path : pred_paths) maps.push_back(read_labels(path));
    for (const LabelMap& m : maps)
        if (m.rows != maps[0].rows || m.cols != maps[0].cols)
            throw FormatError("prediction maps disagree on dimensions");
    LabelMap fused(maps[0].rows, maps[0].cols);
    for (std::size_t p = 0; p < fused.labels.size(); ++p) {
        std::vector<int> votes;
        votes.reserve(maps.size());
        for (const LabelMap& m : maps) votes.push_back(m.labels[p]);
        fused.labels[p] = majority_vote(VoteProfile::equal(votes));
    }
    write_labels(fused, output);
    std::printf("fused %zu prediction maps\n", maps.size());
    return 0;
}

int cmd_evaluate(const std::string& pred_path, const std::string& gt_path, int train_count,
                 std::uint64_t seed, const std::string& csv_path) {
    const LabelMap pred = read_labels(pred_path);
    const LabelMap gt = read_labels(gt_path);
    if (pred.rows != gt.rows || pred.cols != gt.cols)
        throw FormatError("prediction and ground truth dimensions disagree");

    std::vector<std::size_t> eval_pixels;
    if (train_count > 0) {
        const SampleSplit split = split_samples(gt, train_count, seed);
        eval_pixels = split.test;
    } else {
        for (std::size_t p = 0; p < gt.labels.size(); ++p)
            if (gt.labels[p] > 0) eval_pixels.push_back(p);
    }
    std::vector<int> truth, guessed;
    for (std::size_t p : eval_pixels) {
        truth.push_back(gt.labels[p]);
        guessed.push_back(pred.labels[p]);
    }
    if (truth.empty()) throw FormatError("no labeled pixels to evaluate");

    const CompactClasses compact = compact_classes(truth, guessed);
    const ConfusionMatrix cm = confusion(compact.truth, compact.pred);
    const double oa_v = oa(cm), aa_v = aa(cm), kappa_v = kappa(cm);
    const std::vector<double> recall = per_class_recall(cm);

    std::printf("evaluated %zu pixels over %d classes\n", truth.size(), cm.order);
    std::printf("%-10s %10s\n", "metric", "value");
    std::printf("%-10s %10.4f\n", "oa", oa_v);
    std::printf("%-10s %10.4f\n", "aa", aa_v);
    std::printf("%-10s %10.4f\n", "kappa", kappa_v);
    std::printf("per-class recall:\n");
    for (std::size_t i = 0; i < recall.size(); ++i)
        std::printf("  class %-4d %8.4f\n", compact.original[i], recall[i]);

    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw FormatError(csv_path + ": cannot open for writing");
        csv << "metric,class,value\n";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", oa_v);
        csv << "oa,," << buf << "\n";
        std::snprintf(buf, sizeof buf, "%.6f", aa_v);
        csv << "aa,," << buf << "\n";
        std::snprintf(buf, sizeof buf, "%.6f", kappa_v);
        csv << "kappa,," << buf << "\n";
        for (std::size_t i = 0; i < recall.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.6f", recall[i]);
            csv << "recall," << compact.original[i] << ',' << buf << "\n";
        }
    }
    return 0;
}

int cmd_ratios(const std::string& input, const std::string& map_path,
               const std::string& csv_path) {
    const HsiCube cube = read_hsif(input);
    const RegionMap map = region_map_from_labels(read_labels(map_path), false);
    if (map.rows != cube.rows || map.cols != cube.cols)
        throw FormatError("region map dimensions do not match the cube");
    const RegionRatioReport report = region_eigen_ratios(cube, map);
    std::printf("global lambda1/lambda2: %.6f\n", report.global_ratio);
    std::printf("mean region lambda1/lambda2: %.6f (%zu regions with a defined ratio)\n",
                report.mean_region_ratio, report.regions.size());
    for (const RegionRatio& r : report.regions)
        std::printf("  region %-5d %12.6f\n", r.region, r.ratio);
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw FormatError(csv_path + ": cannot open for writing");
        csv << "region,ratio\n";
        csv << "global," << report.global_ratio << "\n";
        csv << "mean," << report.mean_region_ratio << "\n";
        for (const RegionRatio& r : report.regions) csv << r.region << ',' << r.ratio << "\n";
    }
    return 0;
}

int cmd_render(const std::string& input, const std::string& output) {
    render_map(read_labels(input), output);
    std::printf("rendered %s\n", output.c_str());
    return 0;
}

int cmd_pipeline(const std::string& input, const std::string& gt_path, int s_f, int half_width,
                 int dim, int train_count, std::uint64_t seed, int repeats, ClassifierConfig cfg,
                 int filter_radius, const std::string& sigma_f_raw, const std::string& alpha_raw,
                 double noise_sigma, ProjectionMode mode, const std::string& csv_path) {
    HsiCube cube = read_hsif(input);
    const LabelMap gt = read_labels(gt_path);
    check_gt_matches(cube, gt);

    if (noise_sigma > 0.0) {
        cube = add_awgn(cube, noise_sigma, seed ^ 0xa5a5a5a5u);
        std::printf("added awgn sigma=%g\n", noise_sigma);
    }
    if (filter_radius > 0) {
        const double sigma_f = sigma_f_raw == "auto" ? auto_filter_sigma(cube, filter_radius)
                                                     : parse_sigma_f(sigma_f_raw);
        cube = weighted_mean_filter(cube, filter_radius, sigma_f);
        std::printf("filtered with radius %d window, sigma_f %g\n", filter_radius, sigma_f);
    }

    const ScaleSchedule schedule =
        scale_schedule(s_f, half_width, static_cast<long long>(cube.pixel_count()));
    std::printf("schedule: [");
    for (std::size_t i = 0; i < schedule.counts.size(); ++i)
        std::printf("%s%d", i ? ", " : "", schedule.counts[i]);
    std::printf("]\n");

    ScaleEnsemble ensemble =
        run_multiscale(cube, schedule, dim, parse_auto(alpha_raw, "--alpha"), mode);
    const int scales = static_cast<int>(schedule.counts.size());
    std::vector<PixelMatrix> scale_feats;
    scale_feats.reserve(scales);
    for (const ReducedCube& red : ensemble.cubes) scale_feats.push_back(features_of(red));

    std::vector<std::vector<double>> scale_oas(scales);
    std::vector<double> fused_oas, fused_aas, fused_kappas;
    ensemble.predictions.assign(scales, LabelMap(cube.rows, cube.cols));

    for (int rep = 0; rep < repeats; ++rep) {
        const std::uint64_t rep_seed = seed + static_cast<std::uint64_t>(rep);
        const SampleSplit split = split_samples(gt, train_count, rep_seed);
        if (rep == 0)
            for (int cls : split.excluded_classes)
                std::fprintf(stderr,
                             "warning: class %d has fewer than two labeled pixels, excluded\n",
                             cls);
        std::vector<int> train_labels, test_labels;
        for (std::size_t p : split.train) train_labels.push_back(gt.labels[p]);
        for (std::size_t p : split.test) test_labels.push_back(gt.labels[p]);

        std::vector<std::vector<int>> preds(scales);
        for (int s = 0; s < scales; ++s) {
            cfg.seed = rep_seed;
            preds[s] = run_classifier(cfg, gather_columns(scale_feats[s], split.train),
                                      train_labels, gather_columns(scale_feats[s], split.test));
            const CompactClasses c = compact_classes(test_labels, preds[s]);
            scale_oas[s].push_back(oa(confusion(c.truth, c.pred)));
            for (std::size_t i = 0; i < split.test.size(); ++i)
                ensemble.predictions[s].labels[split.test[i]] = preds[s][i];
        }
        std::vector<int> fused(test_labels.size());
        for (std::size_t i = 0; i < fused.size(); ++i) {
            std::vector<int> votes(scales);
            for (int s = 0; s < scales; ++s) votes[s] = preds[s][i];
            fused[i] = majority_vote(VoteProfile::equal(votes));
        }
        const CompactClasses c = compact_classes(test_labels, fused);
        const ConfusionMatrix cm = confusion(c.truth, c.pred);
        fused_oas.push_back(oa(cm));
        fused_aas.push_back(aa(cm));
        fused_kappas.push_back(kappa(cm));
    }

    std::printf("\n%-12s %-10s %12s %10s\n", "metric", "scale", "mean", "std");
    std::vector<std::pair<std::string, Stats>> rows;
    for (int s = 0; s < scales; ++s) {
        char name[16];
        std::snprintf(name, sizeof name, "c=%+d", s - half_width);
        const Stats st = stats_of(scale_oas[s]);
        rows.emplace_back(std::string("oa,") + name, st);
        std::printf("%-12s %-10s %12.4f %10.4f\n", "oa", name, st.mean, st.stddev);
    }
    const Stats f_oa = stats_of(fused_oas), f_aa = stats_of(fused_aas),
                f_kappa = stats_of(fused_kappas);
    rows.emplace_back("oa,fused", f_oa);
    rows.emplace_back("aa,fused", f_aa);
    rows.emplace_back("kappa,fused", f_kappa);
    std::printf("%-12s %-10s %12.4f %10.4f\n", "oa", "fused", f_oa.mean, f_oa.stddev);
    std::printf("%-12s %-10s %12.4f %10.4f\n", "aa", "fused", f_aa.mean, f_aa.stddev);
    std::printf("%-12s %-10s %12.4f %10.4f\n", "kappa", "fused", f_kappa.mean, f_kappa.stddev);

    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw FormatError(csv_path + ": cannot open for writing");
        csv << "metric,scale,mean,std\n";
        for (const auto& [key, st] : rows) {
            char buf[80];
            std::snprintf(buf, sizeof buf, "%.6f,%.6f", st.mean, st.stddev);
            csv << key << ',' << buf << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"superpixelwise PCA toolkit for hyperspectral image classification"};
    app.require_subcommand(1);

    // convert
    auto* convert = app.add_subcommand("convert", "convert between text cubes and HSIF");
    std::string conv_in, conv_out;
    bool conv_to_text = false;
    convert->add_option("--input", conv_in, "input file")->required();
    convert->add_option("--output", conv_out, "output file")->required();
    convert->add_flag("--to-text", conv_to_text, "convert HSIF to text instead of text to HSIF");

    // filter
    auto* filter = app.add_subcommand("filter", "spectral-similarity weighted mean filter");
    std::string fil_in, fil_out, fil_sigma = "auto";
    int fil_radius = 2;
    filter->add_option("--input", fil_in, "input HSIF cube")->required();
    filter->add_option("--output", fil_out, "output HSIF cube")->required();
    filter->add_option("--radius", fil_radius, "window radius (2 = 5x5)")
        ->check(CLI::NonNegativeNumber);
    filter->add_option("--sigma-f", fil_sigma, "similarity sigma, a number, 'inf' or 'auto'");

    // segment
    auto* segment = app.add_subcommand("segment", "produce a region map");
    std::string seg_in, seg_out, seg_method = "ers", seg_sigma = "auto", seg_alpha = "auto";
    int seg_regions = 0;
    std::uint64_t seg_seed = 0;
    segment->add_option("--input", seg_in, "input HSIF cube")->required();
    segment->add_option("--output", seg_out, "output region map (label grid)")->required();
    segment->add_option("--regions", seg_regions, "region count")
        ->required()
        ->check(CLI::PositiveNumber);
    segment->add_option("--method", seg_method, "ers | square | kmeans")
        ->check(CLI::IsMember({"ers", "square", "kmeans"}));
    segment->add_option("--sigma-g", seg_sigma, "graph similarity sigma or 'auto' (ers)");
    segment->add_option("--alpha", seg_alpha, "balancing weight or 'auto' (ers)");
    segment->add_option("--seed", seg_seed, "seed (kmeans)");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "regionwise or global PCA reduction");
    std::string red_in, red_out, red_method, red_map, red_proj = "raw";
    int red_dim = 30, red_regions = 100;
    std::uint64_t red_seed = 0;
    reduce->add_option("--input", red_in, "input HSIF cube")->required();
    reduce->add_option("--output", red_out, "output HSIF feature cube")->required();
    reduce->add_option("--method", red_method, "superpca | global | square | cluster")
        ->required()
        ->check(CLI::IsMember({"superpca", "global", "square", "cluster"}));
    reduce->add_option("--dim", red_dim, "channels to keep")->check(CLI::PositiveNumber);
    reduce->add_option("--map", red_map, "region map (superpca)");
    reduce->add_option("--regions", red_regions, "region count (square) or clusters (cluster)")
        ->check(CLI::PositiveNumber);
    reduce->add_option("--seed", red_seed, "seed (cluster)");
    reduce->add_option("--projection", red_proj, "raw | centered");

    // multiscale
    auto* multiscale = app.add_subcommand("multiscale", "per-scale segmentation and reduction");
    std::string ms_in, ms_outdir, ms_alpha = "auto", ms_proj = "raw";
    int ms_sf = 100, ms_scales = 4, ms_dim = 30;
    multiscale->add_option("--input", ms_in, "input HSIF cube")->required();
    multiscale->add_option("--outdir", ms_outdir, "output directory")->required();
    multiscale->add_option("--sf", ms_sf, "fundamental superpixel count")
        ->check(CLI::PositiveNumber);
    multiscale->add_option("--scales", ms_scales, "half-width C (2C+1 scales)")
        ->check(CLI::NonNegativeNumber);
    multiscale->add_option("--dim", ms_dim, "channels to keep")->check(CLI::PositiveNumber);
    multiscale->add_option("--alpha", ms_alpha, "ers balancing weight or 'auto'");
    multiscale->add_option("--projection", ms_proj, "raw | centered");

    // classify
    auto* classify = app.add_subcommand("classify", "train on a split and predict every pixel");
    std::string cls_feats, cls_gt, cls_out, cls_kind = "nn";
    int cls_train = 30, cls_epochs = 300;
    double cls_creg = 1.0;
    std::uint64_t cls_seed = 0;
    classify->add_option("--features", cls_feats, "feature cube (HSIF)")->required();
    classify->add_option("--gt", cls_gt, "ground truth label grid")->required();
    classify->add_option("--output", cls_out, "predicted label grid")->required();
    classify->add_option("--train", cls_train, "training pixels per class")
        ->check(CLI::PositiveNumber);
    classify->add_option("--seed", cls_seed, "split seed");
    classify->add_option("--classifier", cls_kind, "nn | linear")
        ->check(CLI::IsMember({"nn", "linear"}));
    classify->add_option("--creg", cls_creg, "linear margin regularization")
        ->check(CLI::PositiveNumber);
    classify->add_option("--epochs", cls_epochs, "linear margin epochs")
        ->check(CLI::PositiveNumber);

    // fuse
    auto* fuse = app.add_subcommand("fuse", "majority-vote fusion of prediction maps");
    std::vector<std::string> fuse_preds;
    std::string fuse_out;
    fuse->add_option("--pred", fuse_preds, "prediction map (repeatable)")->required();
    fuse->add_option("--output", fuse_out, "fused label grid")->required();

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "OA/AA/Kappa and per-class recall");
    std::string ev_pred, ev_gt, ev_csv;
    int ev_train = 0;
    std::uint64_t ev_seed = 0;
    evaluate->add_option("--pred", ev_pred, "predicted label grid")->required();
    evaluate->add_option("--gt", ev_gt, "ground truth label grid")->required();
    evaluate->add_option("--train", ev_train,
                         "per-class training count; evaluates the held-out test split")
        ->check(CLI::NonNegativeNumber);
    evaluate->add_option("--seed", ev_seed, "split seed");
    evaluate->add_option("--csv", ev_csv, "also write metrics as CSV");

    // ratios
    auto* ratios = app.add_subcommand("ratios", "eigenvalue-ratio diagnostic per region");
    std::string rat_in, rat_map, rat_csv;
    ratios->add_option("--input", rat_in, "input HSIF cube")->required();
    ratios->add_option("--map", rat_map, "region map")->required();
    ratios->add_option("--csv", rat_csv, "also write ratios as CSV");

    // render
    auto* render = app.add_subcommand("render", "render a label map to PPM");
    std::string ren_in, ren_out;
    render->add_option("--input", ren_in, "label grid")->required();
    render->add_option("--output", ren_out, "PPM (P6) output")->required();

    // pipeline
    auto* pipeline = app.add_subcommand("pipeline", "filter, multiscale reduce, classify, fuse, "
                                                    "evaluate");
    std::string pl_in, pl_gt, pl_kind = "nn", pl_sigma_f = "auto", pl_alpha = "auto",
                pl_proj = "raw", pl_csv, pl_preset;
    int pl_sf = 100, pl_scales = 4, pl_dim = 30, pl_train = 30, pl_repeats = 10,
        pl_radius = 2, pl_epochs = 300;
    double pl_creg = 1.0, pl_noise = 0.0;
    std::uint64_t pl_seed = 0;
    pipeline->add_option("--input", pl_in, "input HSIF cube")->required();
    pipeline->add_option("--gt", pl_gt, "ground truth label grid")->required();
    auto* pl_sf_opt = pipeline->add_option("--sf", pl_sf, "fundamental superpixel count")
                          ->check(CLI::PositiveNumber);
    auto* pl_scales_opt = pipeline->add_option("--scales", pl_scales, "half-width C (2C+1 scales)")
                              ->check(CLI::NonNegativeNumber);
    pipeline->add_option("--dim", pl_dim, "channels to keep")->check(CLI::PositiveNumber);
    pipeline->add_option("--train", pl_train, "training pixels per class")
        ->check(CLI::PositiveNumber);
    pipeline->add_option("--seed", pl_seed, "base split seed");
    pipeline->add_option("--repeats", pl_repeats, "seeded repeats")->check(CLI::PositiveNumber);
    pipeline->add_option("--classifier", pl_kind, "nn | linear")
        ->check(CLI::IsMember({"nn", "linear"}));
    pipeline->add_option("--creg", pl_creg, "linear margin regularization")
        ->check(CLI::PositiveNumber);
    pipeline->add_option("--epochs", pl_epochs, "linear margin epochs")
        ->check(CLI::PositiveNumber);
    pipeline->add_option("--filter-radius", pl_radius, "mean filter radius, 0 disables")
        ->check(CLI::NonNegativeNumber);
    pipeline->add_option("--sigma-f", pl_sigma_f, "filter sigma, a number, 'inf' or 'auto'");
    pipeline->add_option("--alpha", pl_alpha, "ers balancing weight or 'auto'");
    pipeline->add_option("--noise-sigma", pl_noise, "add AWGN before filtering")
        ->check(CLI::NonNegativeNumber);
    pipeline->add_option("--projection", pl_proj, "raw | centered");
    pipeline->add_option("--csv", pl_csv, "write the results table as CSV");
    pipeline->add_option("--preset", pl_preset,
                         "scene preset: indian-pines (sf=100,C=4), pavia (sf=20,C=6), "
                         "salinas (sf=100,C=4)")
        ->check(CLI::IsMember({"indian-pines", "pavia", "salinas"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::fprintf(stderr, "%s\n", e.what());
        const CLI::App* failed = app.get_subcommands().empty()
                                     ? &app
                                     : app.get_subcommands().front();
        std::fprintf(stderr, "%s", failed->help().c_str());
        return 2;
    }

    try {
        if (convert->parsed()) return cmd_convert(conv_in, conv_out, conv_to_text);
        if (filter->parsed()) return cmd_filter(fil_in, fil_out, fil_radius, fil_sigma);
        if (segment->parsed())
            return cmd_segment(seg_in, seg_out, seg_method, seg_regions, seg_sigma, seg_alpha,
                               seg_seed);
        if (reduce->parsed())
            return cmd_reduce(red_in, red_out, red_method, red_dim, red_map, red_regions,
                              red_seed, parse_projection(red_proj));
        if (multiscale->parsed())
            return cmd_multiscale(ms_in, ms_outdir, ms_sf, ms_scales, ms_dim, ms_alpha,
                                  parse_projection(ms_proj));
        if (classify->parsed())
            return cmd_classify(cls_feats, cls_gt, cls_out, cls_train, cls_seed,
                                {cls_kind, cls_creg, cls_epochs, cls_seed});
        if (fuse->parsed()) return cmd_fuse(fuse_preds, fuse_out);
        if (evaluate->parsed()) return cmd_evaluate(ev_pred, ev_gt, ev_train, ev_seed, ev_csv);
        if (ratios->parsed()) return cmd_ratios(rat_in, rat_map, rat_csv);
        if (render->parsed()) return cmd_render(ren_in, ren_out);
        if (pipeline->parsed()) {
            // presets fill in sf/C unless given explicitly
            if (!pl_preset.empty()) {
                const int preset_sf = pl_preset == "pavia" ? 20 : 100;
                const int preset_c = pl_preset == "pavia" ? 6 : 4;
                if (pl_sf_opt->count() == 0) pl_sf = preset_sf;
                if (pl_scales_opt->count() == 0) pl_scales = preset_c;
            }
            return cmd_pipeline(pl_in, pl_gt, pl_sf, pl_scales, pl_dim, pl_train, pl_seed,
                                pl_repeats, {pl_kind, pl_creg, pl_epochs, pl_seed}, pl_radius,
                                pl_sigma_f, pl_alpha, pl_noise, parse_projection(pl_proj),
                                pl_csv);
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
