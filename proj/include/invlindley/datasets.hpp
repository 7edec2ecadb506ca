#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace invlindley {

enum class DatasetVariant { as_printed, corrected };

struct Dataset {
    std::string name;
    std::vector<double> values;
    DatasetVariant variant;
};

/// Bundled head-and-neck cancer survival times: "headneck_rt" (radiotherapy
/// arm) and "headneck_ctrt" (chemo + radiotherapy arm). The as-printed RT arm
/// repeats the run 146..165 once; `corrected` drops the repeat (51 values).
/// Recorded sums are verified on every load.
Dataset load_builtin(std::string_view name, DatasetVariant variant = DatasetVariant::corrected);

std::vector<std::string> builtin_names();

/// Newline- and/or comma-separated decimals, `#` starts a comment.
/// Throws InputError with the line number on malformed or non-positive values.
Dataset parse_dataset(std::istream& in, std::string name);
Dataset load_file(const std::filesystem::path& path);

DatasetVariant parse_variant(std::string_view text);

}  // namespace invlindley
