#include "pmis/report.hpp"

#include <cstdio>

#include "pmis/buffer_api.hpp"

namespace pmis {

using nlohmann::json;

namespace {

json header(std::string_view kind) {
  return json{{"schema", kReportSchemaVersion},
              {"tool", "pmisampler"},
              {"version", std::string(version())},
              {"kind", std::string(kind)}};
}

}  // namespace

InputEcho describe_input(const std::string& path, const FrameSequence& seq,
                         const IngestOptions& ingest) {
  return InputEcho{path, seq.size(), seq.height(), seq.width(), seq.channels(), ingest};
}

json to_json(const InputEcho& input) {
  json j{{"path", input.path},
         {"frames", input.frames},
         {"height", input.height},
         {"width", input.width},
         {"channels", input.channels},
         {"grayscale", input.ingest.grayscale}};
  j["resize"] = input.ingest.resize_to
                    ? json::array({input.ingest.resize_to->height, input.ingest.resize_to->width})
                    : json(nullptr);
  return j;
}

json to_json(const ScoreConfig& config) {
  return json{{"metric", std::string(metric_name(config.metric))},
              {"direction", direction(config.metric) == MetricDirection::kSimilarity
                                ? "similarity"
                                : "distance"},
              {"patch_size", config.patch_size},
              {"alpha", config.alpha},
              {"histogram_bins", config.histogram_bins},
              {"exclude_t0_mass", config.exclude_t0_mass}};
}

json to_json(const ScoreSeries& scores) {
  return json{{"raw", scores.raw},
              {"normalized", scores.normalized},
              {"remapped", scores.remapped},
              {"cdf", scores.cdf},
              {"degenerate", scores.degenerate},
              {"mean", scores.mean},
              {"alpha", scores.alpha}};
}

json to_json(const Segmentation& segmentation) {
  json segments = json::array();
  for (const auto& s : segmentation.segments) segments.push_back({s.first, s.last});
  return json{{"boundaries", segmentation.boundaries}, {"segments", segments}};
}

json to_json(const SelectionReport& report) {
  json config = to_json(report.config.scoring);
  config["num_frames"] = report.config.num_frames;
  config["mode"] = std::string(mode_name(report.config.mode));
  config["seed"] = report.config.seed;
  config["clips"] = report.config.clips;
  config["allow_repeat"] = report.config.allow_repeat;

  json clips = json::array();
  for (const auto& clip : report.clips) {
    json c{{"first", clip.range.first},
           {"count", clip.range.count},
           {"padded", clip.padded},
           {"indices", clip.indices}};
    c["segmentation"] = clip.segmentation ? to_json(*clip.segmentation) : json(nullptr);
    c["scores"] = clip.scores ? to_json(*clip.scores) : json(nullptr);
    clips.push_back(std::move(c));
  }
  return json{{"config", config}, {"indices", report.indices}, {"clips", clips}};
}

json score_report(const InputEcho& input, const ScoreConfig& config, const ScoreSeries& scores,
                  const PairTiming& timing) {
  json j = header("score");
  j["input"] = to_json(input);
  j["config"] = to_json(config);
  j["scores"] = to_json(scores);
  j["timing"] = json{{"pairs", timing.pairs},
                     {"total_ms", timing.total_ms},
                     {"mean_pair_ms", timing.mean_ms}};
  return j;
}

json selection_report(const InputEcho& input, const SelectionReport& report) {
  json j = header("selection");
  j["input"] = to_json(input);
  j.update(to_json(report));
  return j;
}

json compare_report(const InputEcho& input, const ScoreConfig& base,
                    const std::vector<MetricComparison>& rows) {
  json j = header("compare");
  j["input"] = to_json(input);
  json config = to_json(base);
  config.erase("metric");
  config.erase("direction");
  j["config"] = config;
  json metrics = json::array();
  for (const auto& row : rows) {
    metrics.push_back(json{{"metric", std::string(metric_name(row.metric))},
                           {"direction", direction(row.metric) == MetricDirection::kSimilarity
                                             ? "similarity"
                                             : "distance"},
                           {"pairs", row.timing.pairs},
                           {"total_ms", row.timing.total_ms},
                           {"mean_pair_ms", row.timing.mean_ms},
                           {"scores", to_json(row.scores)}});
  }
  j["metrics"] = metrics;
  return j;
}

std::string scores_csv(const ScoreSeries& scores) {
  std::string out = "t,raw,normalized,remapped,cdf\n";
  char line[160];
  for (std::size_t t = 0; t < scores.raw.size(); ++t) {
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g,%.17g\n", t, scores.raw[t],
                  scores.normalized[t], scores.remapped[t], scores.cdf[t]);
    out += line;
  }
  return out;
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

}  // namespace pmis
