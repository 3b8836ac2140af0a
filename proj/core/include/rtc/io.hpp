#pragma once

#include "rtc/cocycle.hpp"
#include "rtc/manifold.hpp"
#include "rtc/optimize.hpp"

#include <filesystem>
#include <string>

namespace rtc {

/// Loaders for the JSON artifact formats. Referenced files are resolved
/// relative to the referring file. Every error message starts with the file
/// name: malformed JSON and missing or mistyped fields raise ParseError, map
/// bodies raise the map DSL errors, failed invariants raise InvariantViolation
/// with the invariant name kept, and unreadable files raise IoError.
///
/// Box bounds are numbers or the strings "inf" and "-inf".

/// {"name"?, "dim", "charts": [{"id", "box"}], "transitions": [{"from", "to", "map", "overlap_box"?}]}
/// The atlas checks run before the value is returned.
AtlasPtr load_atlas(const std::filesystem::path& path);

/// {"name"?, "source", "target", "representatives": [{"source_chart", "target_chart", "map", "box"?}]}
/// with source and target naming atlas files.
ManifoldMap load_manifold_map(const std::filesystem::path& path);

/// {"atlas", "components": [{"chart", "map"}]}, each map R^n -> R^n. Overlap
/// compatibility is checked on load.
CovectorField load_covector_field(const std::filesystem::path& path);

/// {"atlas", "components": [{"chart", "map"}]}, each map R^n -> R^{n*n}
/// row-major. Symmetry and positive definiteness are checked on load.
MetricField load_metric(const std::filesystem::path& path);

/// {"name"?, "base", "fibre_dim", "transitions": [{"from", "to", "matrix", "overlap_box"?}]}
/// The bundle axioms are checked on load.
CocycleBundle load_cocycle_bundle(const std::filesystem::path& path);

}  // namespace rtc
