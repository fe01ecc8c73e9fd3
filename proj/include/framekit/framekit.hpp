#pragma once

#include "framekit/angle_table.hpp"
#include "framekit/canonical.hpp"
#include "framekit/construct.hpp"
#include "framekit/diagnostics.hpp"
#include "framekit/errors.hpp"
#include "framekit/frame_io.hpp"
#include "framekit/frame_matrix.hpp"
#include "framekit/random_frames.hpp"
#include "framekit/scaling.hpp"
#include "framekit/tightness.hpp"
