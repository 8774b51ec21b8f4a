// pmisampler: motion-salience frame scoring and selection.
//
//   pmisampler score   <input> [-o out.json] [--format csv] ...
//   pmisampler select  <input> -n 8 [--seed 7] [--mode random] ...
//   pmisampler compare <input> --metrics pmi,euclidean,cosine,psnr,histogram_mi
//   pmisampler synth   -o burst.pmis [--preset burst] ...
//
// <input> is a directory of frame images or a PMIS container.
// Exit codes: 1 input/IO, 2 configuration, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pmis/pmis.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kIngest = 1, kConfig = 2, kNumerical = 3 };

struct CommonArgs {
  std::string input;
  std::string output;
  std::string metric = "pmi";
  std::size_t patch_size = pmis::kDefaultPatchSize;
  double alpha = pmis::kDefaultAlpha;
  std::size_t bins = pmis::kDefaultHistogramBins;
  std::string resize;
  bool grayscale = false;
  bool exclude_t0_mass = false;
  std::size_t threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_metric = true) {
  cmd->add_option("input", args.input, "Frame directory or PMIS container")->required();
  cmd->add_option("-o,--output", args.output, "Output file (default: stdout)");
  if (with_metric) {
    cmd->add_option("--metric", args.metric,
                    "Similarity metric: pmi, euclidean, cosine, psnr, histogram_mi");
  }
  cmd->add_option("--patch-size", args.patch_size, "PMI patch side length r")
      ->capture_default_str();
  cmd->add_option("--alpha", args.alpha, "Shifted leaky ReLU slope, in [0, 1]")
      ->capture_default_str();
  cmd->add_option("--bins", args.bins, "Histogram bins for histogram_mi")->capture_default_str();
  cmd->add_option("--resize", args.resize, "Resize frames to HxW before scoring");
  cmd->add_flag("--grayscale", args.grayscale, "Convert frames to luma before scoring");
  cmd->add_flag("--exclude-t0-mass", args.exclude_t0_mass,
                "Give frame 0 no motion mass instead of the M_0 = 0 convention");
  cmd->add_option("--threads", args.threads,
                  "Worker threads for pairwise scoring (default: PMI_THREADS or all cores)");
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& text, char sep,
                                               const std::string& what) {
  const auto pos = text.find(sep);
  try {
    if (pos == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const auto a_str = text.substr(0, pos);
    const auto b_str = text.substr(pos + 1);
    const long long a = std::stoll(a_str, &used_a);
    const long long b = std::stoll(b_str, &used_b);
    if (used_a != a_str.size() || used_b != b_str.size() || a < 0 || b < 0) {
      throw std::invalid_argument(text);
    }
    return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
  } catch (const std::logic_error&) {
    throw pmis::ConfigError(what + ": expected two integers separated by '" + sep + "', got '" +
                            text + "'");
  }
}

pmis::IngestOptions ingest_options(const CommonArgs& args) {
  pmis::IngestOptions opts;
  opts.grayscale = args.grayscale;
  if (!args.resize.empty()) {
    const auto [h, w] = parse_pair(args.resize, 'x', "--resize");
    if (h == 0 || w == 0) throw pmis::ConfigError("--resize: target must be positive");
    opts.resize_to = pmis::ResizeTarget{h, w};
  }
  return opts;
}

pmis::ScoreConfig score_config(const CommonArgs& args) {
  pmis::ScoreConfig config;
  config.metric = pmis::parse_metric(args.metric);
  config.patch_size = args.patch_size;
  config.alpha = args.alpha;
  config.histogram_bins = args.bins;
  config.exclude_t0_mass = args.exclude_t0_mass;
  config.threads = pmis::resolve_threads(args.threads);
  pmis::validate(config);
  return config;
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(output, std::ios::binary | std::ios::trunc);
  if (!out) throw pmis::IngestError("cannot write " + output);
  out << text;
  if (!out) throw pmis::IngestError("write failed: " + output);
}

void export_frames(const CommonArgs& args, const pmis::FrameSequence& seq,
                   const std::vector<std::size_t>& indices, const fs::path& dir) {
  fs::create_directories(dir);
  const bool from_dir = fs::is_directory(args.input);
  const auto files = from_dir ? pmis::list_frame_files(args.input) : std::vector<fs::path>{};
  for (std::size_t k = 0; k < indices.size(); ++k) {
    char prefix[32];
    std::snprintf(prefix, sizeof prefix, "%03zu_", k);
    const auto i = indices[k];
    if (from_dir && !args.grayscale && args.resize.empty()) {
      fs::copy_file(files[i], dir / (prefix + files[i].filename().string()),
                    fs::copy_options::overwrite_existing);
    } else {
      char name[64];
      std::snprintf(name, sizeof name, "%sframe_%06zu.png", prefix, i);
      pmis::write_image(seq[i], dir / name);
    }
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Motion-salience frame scoring and selection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pmis::version()));

  CommonArgs score_args;
  std::string format = "json";
  auto* score = app.add_subcommand("score", "Per-frame motion scores and cumulative distribution");
  add_common(score, score_args);
  score->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  CommonArgs select_args;
  std::size_t num_frames = 0;
  std::uint64_t seed = 0;
  std::string mode = "center";
  std::size_t clips = 1;
  bool allow_repeat = false;
  std::string export_dir;
  auto* select = app.add_subcommand("select", "Pick N frames, one per motion segment");
  add_common(select, select_args);
  select->add_option("-n,--num-frames", num_frames, "Frames to select (per clip)")->required();
  select->add_option("--seed", seed, "Seed for random mode")->capture_default_str();
  select->add_option("--mode", mode, "random or center")->capture_default_str();
  select->add_option("--clips", clips, "Split into K uniform clips and select inside each")
      ->capture_default_str();
  select->add_flag("--allow-repeat", allow_repeat, "Repeat frames when the video is shorter than N");
  select->add_option("--export-frames", export_dir, "Copy the chosen frames into this directory");

  CommonArgs compare_args;
  std::string metric_list = "pmi,euclidean,cosine,psnr,histogram_mi";
  auto* compare = app.add_subcommand("compare", "Score with several metrics and time each");
  add_common(compare, compare_args, false);
  compare->add_option("--metrics", metric_list, "Comma separated metric names")
      ->capture_default_str();

  std::string synth_out;
  std::string preset = "burst";
  std::size_t synth_frames = 0;
  std::string synth_size;
  std::size_t synth_channels = 1;
  std::string background;
  std::size_t sprite_size = 0;
  double sprite_intensity = 1.0;
  std::string sprite_pos;
  std::string velocity;
  std::string window;
  std::size_t jitter = 0;
  std::uint64_t synth_seed = 0;
  auto* synth = app.add_subcommand("synth", "Render a synthetic test video to a PMIS container");
  synth->add_option("-o,--output", synth_out, "Output container")->required();
  synth->add_option("--preset", preset, "burst, static or uniform")
      ->check(CLI::IsMember({"burst", "static", "uniform"}))
      ->capture_default_str();
  auto* o_frames = synth->add_option("--frames", synth_frames, "Number of frames T");
  auto* o_size = synth->add_option("--size", synth_size, "Frame size HxW");
  auto* o_channels = synth->add_option("--channels", synth_channels, "1 or 3");
  auto* o_background = synth->add_option("--background", background, "constant, gradient or noise")
                           ->check(CLI::IsMember({"constant", "gradient", "noise"}));
  auto* o_sprite = synth->add_option("--sprite-size", sprite_size, "Sprite side length (0: none)");
  auto* o_intensity = synth->add_option("--sprite-intensity", sprite_intensity, "Sprite intensity");
  auto* o_pos = synth->add_option("--sprite-pos", sprite_pos, "Sprite start X,Y");
  auto* o_velocity = synth->add_option("--velocity", velocity, "Sprite velocity DX,DY");
  auto* o_window = synth->add_option("--window", window, "Motion window START,END (inclusive)");
  auto* o_jitter = synth->add_option("--jitter", jitter, "Max camera translation per frame");
  auto* o_seed = synth->add_option("--seed", synth_seed, "Seed for background and jitter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  if (*score) {
    const auto config = score_config(score_args);
    const auto ingest = ingest_options(score_args);
    const auto seq = pmis::load_frames(score_args.input, ingest);
    const auto raw = pmis::raw_scores(seq, config);
    const auto scores = pmis::finish_scores(raw, config);
    if (format == "csv") {
      emit(pmis::scores_csv(scores), score_args.output);
    } else {
      const auto input = pmis::describe_input(score_args.input, seq, ingest);
      emit(pmis::dump_report(pmis::score_report(input, config, scores, raw.timing)),
           score_args.output);
    }
  } else if (*select) {
    pmis::SelectConfig config;
    config.scoring = score_config(select_args);
    config.num_frames = num_frames;
    config.mode = pmis::parse_mode(mode);
    config.seed = seed;
    config.clips = clips;
    config.allow_repeat = allow_repeat;
    pmis::validate(config);
    const auto ingest = ingest_options(select_args);
    const auto seq = pmis::load_frames(select_args.input, ingest);
    const auto report = pmis::select_video(seq, config);
    const auto input = pmis::describe_input(select_args.input, seq, ingest);
    emit(pmis::dump_report(pmis::selection_report(input, report)), select_args.output);
    if (!export_dir.empty()) export_frames(select_args, seq, report.indices, export_dir);
  } else if (*compare) {
    const auto metrics = pmis::parse_metric_list(metric_list);
    const auto base = score_config(compare_args);
    const auto ingest = ingest_options(compare_args);
    const auto seq = pmis::load_frames(compare_args.input, ingest);
    const auto rows = pmis::compare_metrics(seq, metrics, base);
    const auto input = pmis::describe_input(compare_args.input, seq, ingest);
    emit(pmis::dump_report(pmis::compare_report(input, base, rows)), compare_args.output);
  } else if (*synth) {
    pmis::SceneSpec spec = preset == "uniform"  ? pmis::uniform_scene()
                           : preset == "static" ? pmis::static_scene()
                                                : pmis::burst_scene();
    if (o_frames->count()) spec.frames = synth_frames;
    if (o_size->count()) std::tie(spec.height, spec.width) = parse_pair(synth_size, 'x', "--size");
    if (o_channels->count()) spec.channels = synth_channels;
    if (o_background->count()) {
      spec.background = background == "constant"   ? pmis::Background::kConstant
                        : background == "gradient" ? pmis::Background::kGradient
                                                   : pmis::Background::kNoise;
    }
    if (o_sprite->count()) spec.sprite_size = sprite_size;
    if (o_intensity->count()) spec.sprite_intensity = sprite_intensity;
    if (o_pos->count()) {
      const auto [x, y] = parse_pair(sprite_pos, ',', "--sprite-pos");
      spec.sprite_x = static_cast<std::int64_t>(x);
      spec.sprite_y = static_cast<std::int64_t>(y);
    }
    if (o_velocity->count()) {
      // velocities may be negative
      const auto pos = velocity.find(',');
      try {
        if (pos == std::string::npos) throw std::invalid_argument(velocity);
        spec.velocity_x = std::stoll(velocity.substr(0, pos));
        spec.velocity_y = std::stoll(velocity.substr(pos + 1));
      } catch (const std::logic_error&) {
        throw pmis::ConfigError("--velocity: expected DX,DY, got '" + velocity + "'");
      }
    }
    if (o_window->count()) {
      const auto [a, b] = parse_pair(window, ',', "--window");
      spec.motion_window = pmis::MotionWindow{a, b};
    }
    if (o_jitter->count()) spec.camera_jitter = jitter;
    if (o_seed->count()) spec.seed = synth_seed;
    pmis::write_container(pmis::render(spec), synth_out);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pmis::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const pmis::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const pmis::IngestError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kIngest;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIngest;
  }
}
