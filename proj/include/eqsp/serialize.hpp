// JSON and CSV serialization for partitions, point sets, metric reports
// and comparison tables.  JSON doubles use the library's shortest
// round-trip representation, CSV floats are printed with 17 significant
// digits; both reproduce binary64 values exactly, so a rerun with the
// same seeds is byte identical and files round-trip losslessly.

#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqsp/compare.hpp"
#include "eqsp/eq_partition.hpp"
#include "eqsp/eq_points.hpp"
#include "eqsp/quality_metrics.hpp"

namespace eqsp {

inline constexpr int schema_version = 1;

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline const char* offset_scheme_name(OffsetScheme s) {
    return s == OffsetScheme::stagger ? "stagger" : "none";
}

inline OffsetScheme offset_scheme_from_name(const std::string& name) {
    if (name == "none") return OffsetScheme::none;
    if (name == "stagger") return OffsetScheme::stagger;
    throw std::invalid_argument("unknown offset scheme '" + name + "'");
}

inline const char* region_kind_name(RegionKind k) {
    switch (k) {
        case RegionKind::cap_north: return "cap_north";
        case RegionKind::cap_south: return "cap_south";
        case RegionKind::zonal: return "zonal";
        case RegionKind::whole_sphere: return "whole_sphere";
        case RegionKind::circle_segment: return "circle_segment";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// RegionTree <-> JSON

namespace detail {

inline nlohmann::json tree_to_json_inner(const RegionTree& tree) {
    nlohmann::json j;
    j["spec"] = {{"d", tree.spec.dim},
                 {"n", tree.spec.n},
                 {"offset_scheme", offset_scheme_name(tree.spec.offset_scheme)},
                 {"tolerance", tree.spec.tolerance}};
    j["cap_colatitude"] = tree.cap_colatitude;
    nlohmann::json collars = nlohmann::json::array();
    for (const CollarNode& c : tree.collars) {
        collars.push_back({{"colatitude", {c.colatitude.lo, c.colatitude.hi}},
                           {"count", c.count},
                           {"azimuth_offset", c.azimuth_offset},
                           {"sub", tree_to_json_inner(c.sub)}});
    }
    j["collars"] = std::move(collars);
    return j;
}

// Rebuild a tree (including the flat region list) from serialized
// boundaries; mirrors the construction in eq_partition but takes every
// double from the file instead of recomputing it.
inline RegionTree tree_from_json_inner(const nlohmann::json& j) {
    RegionTree tree;
    const auto& spec = j.at("spec");
    tree.spec.dim = spec.at("d").get<int>();
    tree.spec.n = spec.at("n").get<long long>();
    tree.spec.offset_scheme = offset_scheme_from_name(spec.at("offset_scheme").get<std::string>());
    tree.spec.tolerance = spec.at("tolerance").get<double>();
    tree.cap_colatitude = j.at("cap_colatitude").get<double>();
    require_dimension(tree.spec.dim);
    if (tree.spec.n < 1) throw std::invalid_argument("tree json: N must be positive");

    const int dim = tree.spec.dim;
    const long long n = tree.spec.n;
    if (n == 1) {
        tree.regions.push_back({full_intervals(dim), RegionKind::whole_sphere});
        return tree;
    }
    if (dim == 1) {
        for (long long k = 0; k < n; ++k) {
            const double lo = two_pi * static_cast<double>(k) / static_cast<double>(n);
            const double hi = two_pi * static_cast<double>(k + 1) / static_cast<double>(n);
            tree.regions.push_back({{{lo, hi}}, RegionKind::circle_segment});
        }
        return tree;
    }

    Region north{full_intervals(dim), RegionKind::cap_north};
    north.intervals[0] = {0.0, tree.cap_colatitude};
    tree.regions.push_back(std::move(north));
    double south_lo = tree.cap_colatitude;

    long long total = 1;
    for (const auto& cj : j.at("collars")) {
        CollarNode collar;
        collar.colatitude = {cj.at("colatitude")[0].get<double>(), cj.at("colatitude")[1].get<double>()};
        collar.count = cj.at("count").get<long long>();
        collar.azimuth_offset = cj.at("azimuth_offset").get<double>();
        collar.first_region = static_cast<long long>(tree.regions.size());
        collar.sub = tree_from_json_inner(cj.at("sub"));
        if (static_cast<long long>(collar.sub.regions.size()) != collar.count)
            throw std::invalid_argument("tree json: collar count does not match its sub-partition");
        for (const Region& sub_region : collar.sub.regions) {
            Region region;
            region.kind = RegionKind::zonal;
            region.intervals.reserve(dim);
            region.intervals.push_back(collar.colatitude);
            region.intervals.insert(region.intervals.end(),
                                    sub_region.intervals.begin(), sub_region.intervals.end());
            if (collar.azimuth_offset != 0.0) {
                Interval& az = region.intervals.back();
                az = {az.lo + collar.azimuth_offset, az.hi + collar.azimuth_offset};
            }
            tree.regions.push_back(std::move(region));
        }
        total += collar.count;
        south_lo = collar.colatitude.hi;
        tree.collars.push_back(std::move(collar));
    }

    Region south{full_intervals(dim), RegionKind::cap_south};
    south.intervals[0] = {south_lo, pi};
    tree.regions.push_back(std::move(south));
    if (total + 1 != n) throw std::invalid_argument("tree json: collar counts do not sum to N - 2");
    return tree;
}

}  // namespace detail

inline nlohmann::json to_json(const RegionTree& tree) {
    nlohmann::json j = detail::tree_to_json_inner(tree);
    j["schema_version"] = schema_version;
    nlohmann::json regions = nlohmann::json::array();
    for (const Region& r : tree.regions) {
        nlohmann::json intervals = nlohmann::json::array();
        for (const Interval& iv : r.intervals) intervals.push_back({iv.lo, iv.hi});
        regions.push_back({{"kind", region_kind_name(r.kind)}, {"intervals", std::move(intervals)}});
    }
    j["regions"] = std::move(regions);
    return j;
}

inline RegionTree tree_from_json(const nlohmann::json& j) {
    return detail::tree_from_json_inner(j);  // flat regions are rebuilt, "regions" is advisory
}

// ---------------------------------------------------------------------------
// CodeSet <-> JSON / CSV

inline nlohmann::json to_json(const CodeSet& code) {
    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["d"] = code.dim;
    j["n"] = code.size();
    j["generator"] = generator_name(code.generator);
    j["params"] = code.params;
    nlohmann::json pts = nlohmann::json::array();
    for (std::size_t i = 0; i < code.size(); ++i) {
        const auto p = code[i];
        pts.push_back(std::vector<double>(p.begin(), p.end()));
    }
    j["points"] = std::move(pts);
    return j;
}

inline std::string to_csv(const CodeSet& code) {
    std::string out = "index";
    for (int k = 0; k <= code.dim; ++k) out += ",x" + std::to_string(k);
    out += "\n";
    for (std::size_t i = 0; i < code.size(); ++i) {
        out += std::to_string(i);
        for (double v : code[i]) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

// Points from CSV: rows of d+1 coordinates, or index plus d+1
// coordinates (the format written by to_csv); a leading header row is
// skipped.  Throws with a 1-based line number on malformed input.
inline std::vector<CartesianPoint> points_from_csv(const std::string& text, int dim) {
    std::vector<CartesianPoint> points;
    std::size_t pos = 0;
    long long line_no = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (line_no == 1 && !fields.empty() && fields.front() == "index") continue;  // header

        const int want = dim + 1;
        std::size_t first = 0;
        if (static_cast<int>(fields.size()) == want + 1) first = 1;  // leading index column
        else if (static_cast<int>(fields.size()) != want)
            throw std::invalid_argument("points csv: line " + std::to_string(line_no) +
                                        ": expected " + std::to_string(want) + " coordinates");
        CartesianPoint x(want);
        for (int k = 0; k < want; ++k) {
            try {
                std::size_t used = 0;
                x[k] = std::stod(fields[first + k], &used);
                if (used != fields[first + k].size()) throw std::invalid_argument("trailing junk");
            } catch (const std::exception&) {
                throw std::invalid_argument("points csv: line " + std::to_string(line_no) +
                                            ": bad number '" + fields[first + k] + "'");
            }
        }
        points.push_back(std::move(x));
    }
    return points;
}

// ---------------------------------------------------------------------------
// MetricsReport <-> JSON / CSV

namespace detail {

inline nlohmann::json json_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

}  // namespace detail

inline nlohmann::json to_json(const MetricsReport& r) {
    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["d"] = r.dim;
    j["n"] = r.n;
    j["generator"] = r.generator;
    j["max_region_diameter"] = detail::json_or_null(r.max_region_diameter);
    j["diameter_ratio"] = detail::json_or_null(r.diameter_ratio);
    j["min_distance"] = detail::json_or_null(r.min_distance);
    j["min_distance_ratio"] = detail::json_or_null(r.min_distance_ratio);
    j["packing_density"] = detail::json_or_null(r.packing_density);
    j["covering_radius_estimate"] = detail::json_or_null(r.covering_radius_estimate);
    nlohmann::json riesz = nlohmann::json::object();
    for (const auto& [s, v] : r.riesz_energy) riesz[format_double(s)] = v;
    j["riesz_energy"] = std::move(riesz);
    j["log_energy"] = detail::json_or_null(r.log_energy);
    j["cap_discrepancy_estimate"] = detail::json_or_null(r.cap_discrepancy_estimate);
    j["mc_samples"] = r.mc_samples;
    j["seed"] = r.seed;
    return j;
}

// One header row plus one value row; missing values are empty fields.
inline std::string to_csv(const MetricsReport& r) {
    std::string header = "d,n,generator,max_region_diameter,diameter_ratio,min_distance,"
                         "min_distance_ratio,packing_density,covering_radius_estimate,log_energy,"
                         "cap_discrepancy_estimate,mc_samples,seed";
    std::string row = std::to_string(r.dim) + "," + std::to_string(r.n) + "," + r.generator;
    auto push = [&row](double v) {
        row += ',';
        if (!std::isnan(v)) row += format_double(v);
    };
    push(r.max_region_diameter);
    push(r.diameter_ratio);
    push(r.min_distance);
    push(r.min_distance_ratio);
    push(r.packing_density);
    push(r.covering_radius_estimate);
    push(r.log_energy);
    push(r.cap_discrepancy_estimate);
    row += ',' + std::to_string(r.mc_samples) + ',' + std::to_string(r.seed);
    for (const auto& [s, v] : r.riesz_energy) {
        header += ",riesz_" + format_double(s);
        push(v);
    }
    return header + "\n" + row + "\n";
}

// ---------------------------------------------------------------------------
// Comparison table <-> CSV / JSON

inline std::string to_csv(std::span<const CompareRow> rows) {
    std::string out = "generator,n,metric,value,seed\n";
    for (const CompareRow& r : rows) {
        out += r.generator + ',' + std::to_string(r.n) + ',' + r.metric + ',' +
               format_double(r.value) + ',' + std::to_string(r.seed) + '\n';
    }
    return out;
}

inline nlohmann::json to_json(std::span<const CompareRow> rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CompareRow& r : rows)
        arr.push_back({{"generator", r.generator},
                       {"n", r.n},
                       {"metric", r.metric},
                       {"value", r.value},
                       {"seed", r.seed}});
    return {{"schema_version", schema_version}, {"rows", std::move(arr)}};
}

}  // namespace eqsp
