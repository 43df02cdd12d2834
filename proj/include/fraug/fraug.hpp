#pragma once

#include "fraug/adf.hpp"
#include "fraug/densify.hpp"
#include "fraug/error.hpp"
#include "fraug/fif.hpp"
#include "fraug/hurst.hpp"
#include "fraug/io/csv.hpp"
#include "fraug/io/json.hpp"
#include "fraug/io/svg.hpp"
#include "fraug/log.hpp"
#include "fraug/metrics.hpp"
#include "fraug/optimizer.hpp"
#include "fraug/pipeline/ar_baseline.hpp"
#include "fraug/pipeline/forecast.hpp"
#include "fraug/pipeline/forecaster.hpp"
#include "fraug/pipeline/lstm.hpp"
#include "fraug/pipeline/normalize.hpp"
#include "fraug/pipeline/transform.hpp"
#include "fraug/pipeline/tuning.hpp"
#include "fraug/pipeline/windows.hpp"
#include "fraug/regression.hpp"
#include "fraug/rng.hpp"
#include "fraug/segmentation.hpp"
#include "fraug/strategies.hpp"
#include "fraug/synthetic.hpp"
#include "fraug/time_series.hpp"
