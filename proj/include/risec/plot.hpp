#pragma once

#include <string>

#include "risec/sweep.hpp"

namespace risec {

/// Self-contained SVG line chart of a sweep table. The first column is the
/// x axis (log-scaled for the QoS sweep); every column whose name starts
/// with "ec" becomes one polyline; oracle, delta and flag columns stay in
/// the CSV only. Output bytes are a pure function of the table, so a chart
/// regenerated from the CSV on disk is identical to the one produced in the
/// original run. Throws ConfigError when the table has no rows or no
/// plottable series.
std::string render_svg(const SweepTable& table);

} // namespace risec
