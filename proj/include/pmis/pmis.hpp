#pragma once

#include "pmis/buffer_api.hpp"
#include "pmis/entropy.hpp"
#include "pmis/error.hpp"
#include "pmis/frame_io.hpp"
#include "pmis/image.hpp"
#include "pmis/metrics.hpp"
#include "pmis/parallel.hpp"
#include "pmis/patch_embed.hpp"
#include "pmis/report.hpp"
#include "pmis/score_pipeline.hpp"
#include "pmis/selector.hpp"
#include "pmis/synth.hpp"
