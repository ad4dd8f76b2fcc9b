#pragma once

#include "gpt2d/boundary_frame.hpp"
#include "gpt2d/contrast.hpp"
#include "gpt2d/curve_metrics.hpp"
#include "gpt2d/experiments.hpp"
#include "gpt2d/exterior_map.hpp"
#include "gpt2d/faber.hpp"
#include "gpt2d/fpt.hpp"
#include "gpt2d/gpt.hpp"
#include "gpt2d/grunsky.hpp"
#include "gpt2d/io.hpp"
#include "gpt2d/np_operator.hpp"
#include "gpt2d/recover.hpp"
#include "gpt2d/shapes.hpp"
#include "gpt2d/spectral.hpp"
#include "gpt2d/types.hpp"
