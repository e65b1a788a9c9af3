#pragma once

#include "bgshrink/bounds.hpp"
#include "bgshrink/dict.hpp"
#include "bgshrink/estimate.hpp"
#include "bgshrink/exact.hpp"
#include "bgshrink/model.hpp"
#include "bgshrink/risk.hpp"
#include "bgshrink/rng.hpp"
#include "bgshrink/shrink.hpp"
#include "bgshrink/types.hpp"
#include "bgshrink/wavelet.hpp"
