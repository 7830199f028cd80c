#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spinbath/cli/envelope.hpp"

namespace spinbath::cli {

/// Columns drawn when none are named: the `abs_*` columns if present, otherwise every
/// numeric column after the first.
std::vector<std::string> default_plot_columns(const ResultEnvelope& envelope);

/// Self-contained SVG line plot of `y_columns` against the first column. Identical input
/// gives identical bytes. Throws InvalidArgument for envelopes without numeric data.
std::string render_svg(const ResultEnvelope& envelope, std::vector<std::string> y_columns = {});

void emit_plot(const ResultEnvelope& envelope, const std::filesystem::path& path,
               std::vector<std::string> y_columns = {});

}  // namespace spinbath::cli
