#include "fsonoma/csv.hpp"

#include <charconv>
#include <system_error>

#include "fsonoma/errors.hpp"

namespace fsonoma::csv {

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
    if (res.ec != std::errc()) throw OverflowError("csv: number formatting failed");
    return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

void write_sweep(std::ostream& out, const std::vector<montecarlo::SweepRow>& rows) {
    out << kHeader << '\n';
    for (const auto& r : rows) {
        out << format_number(r.power_dbm) << ',' << noma::to_string(r.spec.scheme) << ','
            << noma::to_string(r.spec.sic) << ',' << r.bs << ',';
        if (r.tail_floor) {
            out << ',';
        } else {
            out << format_number(r.mc.p_hat) << ',' << format_number(r.mc.std_error);
        }
        out << ',' << format_optional(r.quad) << ',' << format_optional(r.asymptotic) << ','
            << (r.tail_floor ? "mc_tail_floor" : "") << '\n';
    }
}

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace fsonoma::csv
