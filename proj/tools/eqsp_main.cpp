// eqsp: build equal-area sphere partitions, emit point codes, run
// point-to-region lookups, compute quality metrics, and produce
// comparison tables.  Data goes to stdout (or --output), diagnostics to
// stderr.  Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqsp/eqsp.hpp"

namespace {

// Errors caused by input files rather than flags.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& data) {
    if (path.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << data;
}

eqsp::RegionTree load_tree(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw DataError("'" + path + "': " + e.what());
    }
    try {
        return eqsp::tree_from_json(j);
    } catch (const std::exception& e) {
        throw DataError("'" + path + "': " + e.what());
    }
}

std::vector<eqsp::CartesianPoint> load_points(const std::string& path, int dim) {
    try {
        return eqsp::points_from_csv(read_file(path), dim);
    } catch (const std::invalid_argument& e) {
        throw DataError("'" + path + "': " + e.what());
    }
}

eqsp::CodeSet code_from_points(int dim, const std::vector<eqsp::CartesianPoint>& points) {
    eqsp::CodeSet code;
    code.dim = dim;
    code.coords.reserve(points.size() * (dim + 1));
    for (const auto& p : points) {
        if (std::fabs(eqsp::norm(p) - 1.0) > 1e-9)
            throw DataError("input point is not a unit vector");
        code.push_back(p);
    }
    return code;
}

// Closed boundary polyline of one region of a d=2 tree: the four edges
// of the colatitude-azimuth rectangle, `resolution` vertices per edge.
void append_boundary_rows(std::string& out, const eqsp::Region& region, long long index,
                          int resolution) {
    const eqsp::Interval& colat = region.intervals[0];
    const eqsp::Interval& az = region.intervals[1];
    std::vector<std::pair<double, double>> vertices;
    for (int i = 0; i < resolution; ++i) {
        const double t = static_cast<double>(i) / resolution;
        vertices.emplace_back(colat.lo + colat.width() * t, az.lo);
    }
    for (int i = 0; i < resolution; ++i) {
        const double t = static_cast<double>(i) / resolution;
        vertices.emplace_back(colat.hi, az.lo + az.width() * t);
    }
    for (int i = 0; i < resolution; ++i) {
        const double t = static_cast<double>(i) / resolution;
        vertices.emplace_back(colat.hi - colat.width() * t, az.hi);
    }
    for (int i = 0; i < resolution; ++i) {
        const double t = static_cast<double>(i) / resolution;
        vertices.emplace_back(colat.lo, az.hi - az.width() * t);
    }
    long long v = 0;
    for (const auto& [theta, phi] : vertices) {
        const auto x = eqsp::to_cartesian(2, {theta, phi});
        out += std::to_string(index) + ',' + std::to_string(v++);
        for (double c : x) {
            out += ',';
            out += eqsp::format_double(c);
        }
        out += '\n';
    }
}

int run(int argc, char** argv) {
    CLI::App app{"recursive zonal equal-area sphere partitions and spherical codes"};
    app.require_subcommand(1);

    int dim = 2;
    long long n = 1;
    std::string offsets = "none";
    std::string centre = "midpoint";
    double tolerance = 1e-12;
    std::string generator = "eqp";
    std::uint64_t seed = 0;
    std::string partition_format = "json";
    std::string points_format = "csv";
    std::string metrics_format = "json";
    std::string compare_format = "csv";
    std::string output_path;
    std::string tree_path;
    std::string points_path;
    std::vector<double> s_values{1.0};
    long long trials = 10000;
    int resolution = 64;
    std::vector<std::string> generators{"eqp"};
    std::vector<long long> sweep{100};
    std::vector<std::string> metric_names{"min_distance", "log_energy"};

    auto* cmd_partition = app.add_subcommand("partition", "build EQ(d,N) and write it as JSON");
    cmd_partition->add_option("-d,--dim", dim, "sphere dimension d >= 1")->required();
    cmd_partition->add_option("-n,--regions", n, "number of regions N >= 1")->required();
    cmd_partition->add_option("--offsets", offsets, "collar offset scheme: none|stagger")
        ->check(CLI::IsMember({"none", "stagger"}));
    cmd_partition->add_option("--tolerance", tolerance, "construction tolerance");
    cmd_partition->add_option("--out", partition_format, "output format: json")
        ->check(CLI::IsMember({"json"}));
    cmd_partition->add_option("-o,--output", output_path, "write to file instead of stdout");

    auto* cmd_points = app.add_subcommand("points", "generate a spherical code");
    cmd_points->add_option("-d,--dim", dim, "sphere dimension")->required();
    cmd_points->add_option("-n,--points", n, "number of points")->required();
    cmd_points->add_option("-g,--generator", generator,
                           "eqp|random_uniform|spiral|fibonacci|halton")
        ->check(CLI::IsMember({"eqp", "random_uniform", "spiral", "fibonacci", "halton"}));
    cmd_points->add_option("--seed", seed, "seed for randomized generators");
    cmd_points->add_option("--offsets", offsets, "eqp collar offsets: none|stagger")
        ->check(CLI::IsMember({"none", "stagger"}));
    cmd_points->add_option("--centre", centre, "eqp collar colatitude rule: midpoint|area_median")
        ->check(CLI::IsMember({"midpoint", "area_median"}));
    cmd_points->add_option("--out", points_format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd_points->add_option("-o,--output", output_path, "write to file instead of stdout");

    auto* cmd_metrics = app.add_subcommand("metrics", "compute the quality metrics report");
    cmd_metrics->add_option("-d,--dim", dim, "sphere dimension")->required();
    auto* opt_n = cmd_metrics->add_option("-n,--points", n, "number of points (spec mode)");
    cmd_metrics->add_option("-g,--generator", generator,
                            "eqp|random_uniform|spiral|fibonacci|halton (spec mode)")
        ->check(CLI::IsMember({"eqp", "random_uniform", "spiral", "fibonacci", "halton"}));
    auto* opt_points_file =
        cmd_metrics->add_option("--points-file", points_path, "CSV of points (file mode)");
    opt_points_file->excludes(opt_n);
    cmd_metrics->add_option("--s-values", s_values, "Riesz energy exponents")->delimiter(',');
    cmd_metrics->add_option("--trials", trials, "Monte-Carlo budget for estimators");
    cmd_metrics->add_option("--seed", seed, "estimator seed");
    cmd_metrics->add_option("--offsets", offsets, "eqp collar offsets: none|stagger")
        ->check(CLI::IsMember({"none", "stagger"}));
    cmd_metrics->add_option("--centre", centre, "eqp collar colatitude rule: midpoint|area_median")
        ->check(CLI::IsMember({"midpoint", "area_median"}));
    cmd_metrics->add_option("--out", metrics_format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd_metrics->add_option("-o,--output", output_path, "write to file instead of stdout");

    auto* cmd_lookup = app.add_subcommand("lookup", "map points to region indices");
    cmd_lookup->add_option("--tree", tree_path, "partition JSON from 'partition'")->required();
    cmd_lookup->add_option("--points", points_path, "CSV of points")->required();
    cmd_lookup->add_option("-o,--output", output_path, "write to file instead of stdout");

    auto* cmd_boundaries =
        app.add_subcommand("boundaries", "region boundary polylines for plotting (d = 2)");
    cmd_boundaries->add_option("--tree", tree_path, "partition JSON from 'partition'")->required();
    cmd_boundaries->add_option("--resolution", resolution, "vertices per rectangle edge")
        ->check(CLI::PositiveNumber);
    cmd_boundaries->add_option("-o,--output", output_path, "write to file instead of stdout");

    auto* cmd_compare = app.add_subcommand("compare", "side-by-side metric table");
    cmd_compare->add_option("-d,--dim", dim, "sphere dimension");
    cmd_compare->add_option("--generators", generators, "comma list of generators")->delimiter(',');
    cmd_compare->add_option("--sweep", sweep, "comma list of N values")->delimiter(',');
    cmd_compare->add_option("--metrics", metric_names, "comma list of metrics")->delimiter(',');
    cmd_compare->add_option("--seed", seed, "seed for randomized generators/estimators");
    cmd_compare->add_option("--trials", trials, "Monte-Carlo budget for estimators");
    cmd_compare->add_option("--out", compare_format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd_compare->add_option("-o,--output", output_path, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    const auto scheme = eqsp::offset_scheme_from_name(offsets);
    const auto centre_rule = (centre == "area_median") ? eqsp::CentreRule::area_median
                                                       : eqsp::CentreRule::angular_midpoint;

    if (cmd_partition->parsed()) {
        const eqsp::RegionTree tree = eqsp::eq_partition({dim, n, scheme, tolerance});
        write_output(output_path, eqsp::to_json(tree).dump(2) + "\n");
        std::cerr << "partition d=" << dim << " n=" << n << " regions=" << tree.regions.size()
                  << "\n";
        return 0;
    }

    if (cmd_points->parsed()) {
        eqsp::CodeSet code;
        if (generator == "eqp")
            code = eqsp::eq_points(eqsp::eq_partition({dim, n, scheme, tolerance}), centre_rule);
        else
            code = eqsp::make_code(generator, dim, n, seed);
        if (points_format == "csv")
            write_output(output_path, eqsp::to_csv(code));
        else
            write_output(output_path, eqsp::to_json(code).dump(2) + "\n");
        std::cerr << "points generator=" << generator << " n=" << code.size() << " seed=" << seed
                  << "\n";
        return 0;
    }

    if (cmd_metrics->parsed()) {
        eqsp::CodeSet code;
        const eqsp::RegionTree* tree_ptr = nullptr;
        eqsp::RegionTree tree;
        std::string label;
        if (!points_path.empty()) {
            code = code_from_points(dim, load_points(points_path, dim));
            label = "file";
        } else {
            if (opt_n->count() == 0) throw CLI::ValidationError("metrics", "need -n or --points-file");
            if (generator == "eqp") {
                tree = eqsp::eq_partition({dim, n, scheme, tolerance});
                tree_ptr = &tree;
                code = eqsp::eq_points(tree, centre_rule);
            } else {
                code = eqsp::make_code(generator, dim, n, seed);
            }
            label = generator;
        }
        eqsp::MetricsReport report = eqsp::compute_metrics(code, tree_ptr, s_values, trials, seed);
        report.generator = label;
        if (metrics_format == "csv")
            write_output(output_path, eqsp::to_csv(report));
        else
            write_output(output_path, eqsp::to_json(report).dump(2) + "\n");
        return 0;
    }

    if (cmd_lookup->parsed()) {
        const eqsp::RegionTree tree = load_tree(tree_path);
        const auto points = load_points(points_path, tree.spec.dim);
        std::string out = "region\n";
        for (const auto& x : points) {
            if (std::fabs(eqsp::norm(x) - 1.0) > 1e-9)
                throw DataError("input point is not a unit vector");
            out += std::to_string(eqsp::lookup(tree, x)) + '\n';
        }
        write_output(output_path, out);
        return 0;
    }

    if (cmd_boundaries->parsed()) {
        const eqsp::RegionTree tree = load_tree(tree_path);
        if (tree.spec.dim != 2)
            throw CLI::ValidationError("boundaries", "only d = 2 trees can be rendered");
        std::string out = "region,vertex,x0,x1,x2\n";
        for (std::size_t i = 0; i < tree.regions.size(); ++i)
            append_boundary_rows(out, tree.regions[i], static_cast<long long>(i), resolution);
        write_output(output_path, out);
        return 0;
    }

    if (cmd_compare->parsed()) {
        eqsp::CompareOptions opts;
        opts.mc_samples = trials;
        const auto rows = eqsp::compare(dim, generators, sweep, metric_names, seed, opts);
        if (compare_format == "json")
            write_output(output_path, eqsp::to_json(rows).dump(2) + "\n");
        else
            write_output(output_path, eqsp::to_csv(rows));
        return 0;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
