#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "adiosaa/attributor.hpp"
#include "adiosaa/config.hpp"
#include "adiosaa/datasets.hpp"
#include "adiosaa/eval.hpp"

namespace adiosaa {

// Stable exit-code contract for scripting.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;   // usage or config error
inline constexpr int kExitData = 2;    // data error (incl. exhausted budgets)
inline constexpr int kExitRemote = 3;  // remote service error

struct PredictionRecord {
    std::string question_id;
    std::string answer_id;
    std::vector<AttributionList> lists;

    bool operator==(const PredictionRecord&) const = default;
};

void write_predictions(const std::vector<PredictionRecord>& predictions,
                       const std::filesystem::path& path);
std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path);

int cmd_reformat(const std::string& source, const std::filesystem::path& raw_dir,
                 const std::filesystem::path& out_path);

int cmd_stats(const std::filesystem::path& dataset_path, const std::string& format);

int cmd_run(const std::filesystem::path& config_path, const std::filesystem::path& dataset_path,
            const std::filesystem::path& out_path, std::optional<int> workers_override = {},
            std::optional<std::size_t> limit_override = {});

int cmd_eval(const std::filesystem::path& dataset_path,
             const std::filesystem::path& predictions_path, const std::string& format);

int cmd_run_eval(const std::filesystem::path& config_path,
                 const std::filesystem::path& dataset_path,
                 const std::filesystem::path& out_path, const std::string& format,
                 std::optional<int> workers_override = {},
                 std::optional<std::size_t> limit_override = {});

}  // namespace adiosaa
