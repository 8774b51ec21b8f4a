#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pmis/frame_io.hpp"
#include "pmis/score_pipeline.hpp"
#include "pmis/selector.hpp"

namespace pmis {

inline constexpr int kReportSchemaVersion = 1;

// What was read and how, echoed into every report.
struct InputEcho {
  std::string path;
  std::size_t frames = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;
  IngestOptions ingest;
};

InputEcho describe_input(const std::string& path, const FrameSequence& seq,
                         const IngestOptions& ingest);

nlohmann::json to_json(const ScoreConfig& config);
nlohmann::json to_json(const ScoreSeries& scores);
nlohmann::json to_json(const Segmentation& segmentation);
nlohmann::json to_json(const SelectionReport& report);
nlohmann::json to_json(const InputEcho& input);

// Arrays of length T, config echo and per-pair timing.
nlohmann::json score_report(const InputEcho& input, const ScoreConfig& config,
                            const ScoreSeries& scores, const PairTiming& timing);

// Contains no timing or thread count, so identical inputs give identical bytes.
nlohmann::json selection_report(const InputEcho& input, const SelectionReport& report);

nlohmann::json compare_report(const InputEcho& input, const ScoreConfig& base,
                              const std::vector<MetricComparison>& rows);

// Header "t,raw,normalized,remapped,cdf" then one row per frame.
std::string scores_csv(const ScoreSeries& scores);

// Two-space indented JSON with a trailing newline.
std::string dump_report(const nlohmann::json& report);

}  // namespace pmis
