#include "invlindley/datasets.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "invlindley/errors.hpp"
#include "invlindley/numeric.hpp"

namespace invlindley {
namespace {

// Radiotherapy arm in source order; the run 146..165 appears twice.
constexpr std::array<double, 58> kRtPrinted = {
    6.53, 7,   10.42, 14.48, 16.10, 22.70, 34,  41.55, 42,  45.28, 49.40, 53.62, 63,   64,   83,
    84,   91,  108,   112,   129,   133,   133, 139,   140, 140,   146,   149,   154,  157,  160,
    160,  165, 146,   149,   154,   157,   160, 160,   165, 173,   176,   218,   225,  241,  248,
    273,  277, 297,   405,   417,   420,   440, 523,   583, 594,   1101,  1146,  1417};
constexpr std::size_t kRepeatBegin = 32;
constexpr std::size_t kRepeatLength = 7;

// Chemo + radiotherapy arm in source order (78.26 precedes 74.47).
constexpr std::array<double, 44> kCtrt = {
    12.20, 23.56, 23.74, 25.87, 31.98, 37,  41.35, 47.38, 55.46, 58.36, 63.47, 68.46, 78.26, 74.47, 81.43,
    84,    92,    94,    110,   112,   119, 127,   130,   133,   140,   146,   155,   159,   173,   179,
    194,   195,   209,   249,   281,   319, 339,   432,   469,   519,   633,   725,   817,   1776};

struct Checksum {
    std::size_t n;
    double sum;
    double reciprocal_sum;
};

void verify(const Dataset& d, Checksum expected) {
    CompensatedSum sum;
    CompensatedSum rsum;
    for (double v : d.values) {
        sum += v;
        rsum += 1.0 / v;
    }
    const bool ok = d.values.size() == expected.n && std::abs(sum.value() - expected.sum) <= 1e-9 * expected.sum &&
                    std::abs(rsum.value() - expected.reciprocal_sum) <= 1e-12 * expected.reciprocal_sum;
    if (!ok) throw InputError("bundled dataset '" + d.name + "' failed its checksum");
}

}  // namespace

std::vector<std::string> builtin_names() { return {"headneck_rt", "headneck_ctrt"}; }

DatasetVariant parse_variant(std::string_view text) {
    if (text == "corrected") return DatasetVariant::corrected;
    if (text == "as_printed" || text == "as-printed") return DatasetVariant::as_printed;
    throw InputError("unknown dataset variant '" + std::string(text) + "' (expected corrected or as_printed)");
}

Dataset load_builtin(std::string_view name, DatasetVariant variant) {
    if (name == "headneck_rt") {
        Dataset d{std::string(name), {kRtPrinted.begin(), kRtPrinted.end()}, variant};
        if (variant == DatasetVariant::corrected) {
            const auto first = d.values.begin() + static_cast<std::ptrdiff_t>(kRepeatBegin);
            d.values.erase(first, first + static_cast<std::ptrdiff_t>(kRepeatLength));
            verify(d, {51, 12027.08, 0.935972758599609});
        } else {
            verify(d, {58, 13118.08, 0.9809570223697802});
        }
        return d;
    }
    if (name == "headneck_ctrt") {
        // Only one variant exists; the tag is echoed back.
        Dataset d{std::string(name), {kCtrt.begin(), kCtrt.end()}, variant};
        verify(d, {44, 9832.99, 0.5736589005705518});
        return d;
    }
    throw InputError("unknown builtin dataset '" + std::string(name) + "'");
}

Dataset parse_dataset(std::istream& in, std::string name) {
    Dataset d{std::move(name), {}, DatasetVariant::as_printed};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::stringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) {
            const auto b = field.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            const auto e = field.find_last_not_of(" \t\r");
            const std::string_view token(field.data() + b, e - b + 1);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
            if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
                throw InputError(d.name + ":" + std::to_string(lineno) + ": cannot parse '" + std::string(token) +
                                 "' as a number");
            }
            if (!(v > 0.0)) {
                throw InputError(d.name + ":" + std::to_string(lineno) + ": value " + std::string(token) +
                                 " is not positive");
            }
            d.values.push_back(v);
        }
    }
    if (d.values.empty()) throw InputError(d.name + ": no data values");
    return d;
}

Dataset load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open data file '" + path.string() + "'");
    return parse_dataset(in, path.string());
}

}  // namespace invlindley
