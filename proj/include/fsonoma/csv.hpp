#pragma once

// Sweep output as CSV. Numbers are written with std::to_chars in shortest
// round-trip scientific form, so output is locale-independent and parses
// back to the identical double.

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fsonoma/montecarlo.hpp"

namespace fsonoma::csv {

inline constexpr std::string_view kHeader = "power_dbm,scheme,sic,bs,p_out_mc,stderr,p_out_quad,p_out_asym,flag";

std::string format_number(double v);
std::string format_optional(const std::optional<double>& v);

/// Header plus one line per row. Rows flagged tail_floor leave the MC
/// fields empty and carry flag mc_tail_floor.
void write_sweep(std::ostream& out, const std::vector<montecarlo::SweepRow>& rows);

/// Splits one CSV line at commas (no quoting is ever emitted).
std::vector<std::string> split_line(std::string_view line);

}  // namespace fsonoma::csv
