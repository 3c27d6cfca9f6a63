#pragma once

#include <string>
#include <vector>

#include "c2flow/config.hpp"
#include "c2flow/diagnostics.hpp"
#include "c2flow/nshj.hpp"

namespace c2flow {

/// Round-trip-safe decimal formatting (17 significant digits).
std::string fmt_g17(double v);

/// One probe CSV row group per series:
/// header `time,quantity,probe_x,probe_y,solver,value`.
struct LabeledSeries {
    std::string solver;
    ProbeSeries series;
};

std::string probe_csv(const std::vector<LabeledSeries>& series);

/// Plain-text snapshot `ix,iy,rho,chi,ax,ay` with a '#' metadata preamble.
std::string snapshot_csv(const FluidState& s, const RunConfig& cfg, int step);

/// Writes text to path, throwing std::ios_base::failure on I/O problems.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// Token-wise comparison: numeric tokens must agree within rtol (relative)
/// or atol (absolute), everything else byte-for-byte. Returns an empty string
/// on match, otherwise a short description of the first difference.
std::string compare_numeric_text(const std::string& got, const std::string& want, double rtol,
                                 double atol);

} // namespace c2flow
